#pragma once

#include <filesystem>
#include <string>

#include "savings/model.hpp"

namespace savings {

struct LoadedModel {
  StochasticPrimitives prims;
  Preferences prefs;
};

// Model document layout:
// {
//   "states": Z,
//   "P": [..],                      // flat row-major, Z*Z entries
//   "shocks": {"weights": [..]},    // K entries
//   "beta": [[[..]]],               // nested [z][zhat][k]
//   "R":    [[[..]]],
//   "Y":    [[[..]]],
//   "preferences": {"gamma": g, "delta": d, "psi": p}
// }
// Any dimension mismatch is a load error; the loaded primitives and
// preferences are fully validated before being returned.
LoadedModel parse_model_json(const std::string& text);
LoadedModel load_model(const std::filesystem::path& path);

}  // namespace savings
