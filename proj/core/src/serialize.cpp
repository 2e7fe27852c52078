#include "savings/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace savings {

namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

std::string json_bool(bool v) { return v ? "true" : "false"; }

std::string number_array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += json_number(xs[i]);
  }
  out += ']';
  return out;
}

std::string string_array(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += json_string(xs[i]);
  }
  out += ']';
  return out;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? json_number(*v) : "null";
}

std::string optional_array(const std::optional<std::vector<double>>& v) {
  return v ? number_array(*v) : "null";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_number(double v) {
  if (std::isnan(v) || std::isinf(v)) return "\"" + format_double(v) + "\"";
  return format_double(v);
}

std::string to_json(const AssumptionReport& rep) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"a1_ok\": " << json_bool(rep.a1_ok) << ",\n";
  os << "  \"a2i_ok\": " << json_bool(rep.a2i_ok) << ",\n";
  os << "  \"a2ii_ok\": " << json_bool(rep.a2ii_ok) << ",\n";
  os << "  \"a4_ok\": " << json_bool(rep.a4_ok) << ",\n";
  os << "  \"positive_betaR_ok\": " << json_bool(rep.positive_betaR_ok) << ",\n";
  os << "  \"r_K1\": " << json_number(rep.r_K1) << ",\n";
  os << "  \"r_K1mg\": " << json_number(rep.r_K1mg) << ",\n";
  os << "  \"m1\": " << optional_number(rep.m1) << ",\n";
  os << "  \"m2\": " << optional_number(rep.m2) << ",\n";
  os << "  \"messages\": " << string_array(rep.messages) << "\n";
  os << "}";
  return os.str();
}

std::string to_json(const SolveDiagnostics& diag, double r_K1) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"iterations\": " << diag.iterations << ",\n";
  os << "  \"rho_history\": " << number_array(diag.rho_history) << ",\n";
  os << "  \"contraction_estimate\": " << json_number(diag.contraction_estimate) << ",\n";
  os << "  \"r_K1\": " << json_number(r_K1) << ",\n";
  os << "  \"euler_residual_max\": " << json_number(diag.euler_residual_max) << ",\n";
  os << "  \"threshold\": " << number_array(diag.threshold) << "\n";
  os << "}";
  return os.str();
}

std::string to_json(const AsymptoticReport& rep) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"regime\": " << json_string(regime_name(rep.regime)) << ",\n";
  os << "  \"r_K1mg\": " << json_number(rep.r_K1mg) << ",\n";
  os << "  \"irreducible\": " << json_bool(rep.irreducible) << ",\n";
  os << "  \"x_star\": " << number_array(rep.x_star) << ",\n";
  os << "  \"predicted_mpc\": " << number_array(rep.predicted_mpc) << ",\n";
  os << "  \"g_fixed_point\": " << optional_array(rep.g_fixed_point) << ",\n";
  os << "  \"power_bound\": " << optional_array(rep.power_bound) << ",\n";
  os << "  \"measured_mpc\": " << optional_array(rep.measured_mpc) << ",\n";
  os << "  \"message\": " << json_string(rep.message) << "\n";
  os << "}";
  return os.str();
}

std::string moment_matrix_json(const MomentMatrix& m, bool irreducible, double radius) {
  std::ostringstream os;
  const std::size_t n = m.entries.size();
  os << "{\n";
  os << "  \"theta\": " << json_number(m.theta) << ",\n";
  os << "  \"entries\": [";
  for (std::size_t z = 0; z < n; ++z) {
    if (z) os << ", ";
    os << '[';
    for (std::size_t zh = 0; zh < n; ++zh) {
      if (zh) os << ", ";
      os << json_number(m.entries(z, zh));
    }
    os << ']';
  }
  os << "],\n";
  os << "  \"conventions_applied\": " << json_bool(m.conventions_applied) << ",\n";
  os << "  \"irreducible\": " << json_bool(irreducible) << ",\n";
  os << "  \"spectral_radius\": " << json_number(radius) << "\n";
  os << "}";
  return os.str();
}

void write_policy_csv(std::ostream& os, const ConsumptionPolicy& pol) {
  os << "w,z,c,s,constrained\n";
  for (std::size_t i = 0; i < pol.grid.size(); ++i)
    for (std::size_t z = 0; z < pol.num_states; ++z) {
      const double w = pol.grid.points[i];
      const double c = pol.value(i, z);
      const double s = w - c;
      const bool constrained = s <= 1e-9 * std::max(1.0, w);
      os << format_double(w) << ',' << z << ',' << format_double(c) << ','
         << format_double(s) << ',' << (constrained ? 1 : 0) << '\n';
    }
}

void write_panel_csv(std::ostream& os, const SimulationPanel& panel) {
  os << "path,t,z,w,c,discount_product\n";
  for (std::size_t p = 0; p < panel.n_paths; ++p)
    for (std::size_t t = 0; t <= panel.horizon; ++t) {
      const std::size_t at = panel.idx(p, t);
      os << p << ',' << t << ',' << panel.state[at] << ','
         << format_double(panel.wealth[at]) << ',' << format_double(panel.consumption[at])
         << ',' << format_double(panel.discount_product[at]) << '\n';
    }
}

}  // namespace savings
