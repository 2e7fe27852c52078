#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "savings/asymptotics.hpp"
#include "savings/model.hpp"
#include "savings/policy.hpp"
#include "savings/simulation.hpp"
#include "savings/spectral.hpp"
#include "savings/time_iteration.hpp"

namespace savings {

// All exported numbers use 17 significant digits, enough to round-trip a
// double exactly, so identical runs write identical bytes. JSON has no
// literal for non-finite values; they are emitted as the strings "inf",
// "-inf" and "nan".
std::string format_double(double v);        // bare %.17g token, inf/nan spelled out
std::string json_number(double v);          // same, but non-finite values quoted

std::string to_json(const AssumptionReport& rep);
std::string to_json(const SolveDiagnostics& diag, double r_K1);
std::string to_json(const AsymptoticReport& rep);
std::string moment_matrix_json(const MomentMatrix& m, bool irreducible,
                               double radius);

// CSV, header "w,z,c,s,constrained". A node is constrained when
// w - c <= 1e-9 * max(1, w).
void write_policy_csv(std::ostream& os, const ConsumptionPolicy& pol);

// CSV, header "path,t,z,w,c,discount_product".
void write_panel_csv(std::ostream& os, const SimulationPanel& panel);

}  // namespace savings
