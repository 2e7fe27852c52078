#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "savings/grid.hpp"
#include "savings/model_io.hpp"
#include "savings/serialize.hpp"
#include "savings/simulation.hpp"
#include "savings/time_iteration.hpp"

using namespace savings;

namespace {

const char* kScalarModel = R"({
  "states": 1,
  "P": [1.0],
  "shocks": {"weights": [1.0]},
  "beta": [[[0.25]]],
  "R": [[[1.0]]],
  "Y": [[[1.0]]],
  "preferences": {"gamma": 1.0, "delta": 2.0, "psi": 1.0}
})";

const char* kTwoStateModel = R"({
  "states": 2,
  "P": [0.9, 0.1, 0.4, 0.6],
  "shocks": {"weights": [0.5, 0.5]},
  "beta": [[[0.9, 0.9], [0.9, 0.9]], [[0.9, 0.9], [0.9, 0.9]]],
  "R": [[[1.0, 1.04], [1.0, 1.04]], [[1.0, 1.04], [1.0, 1.04]]],
  "Y": [[[1.0, 1.0], [1.5, 1.5]], [[1.0, 1.0], [1.5, 1.5]]],
  "preferences": {"gamma": 2.0, "delta": 3.0, "psi": 0.5}
})";

}  // namespace

TEST_CASE("scalar model document parses into validated primitives") {
  auto loaded = parse_model_json(kScalarModel);
  CHECK(loaded.prims.num_states == 1);
  CHECK(loaded.prims.P(0, 0) == 1.0);
  CHECK(loaded.prims.beta_tab(0, 0, 0) == 0.25);
  CHECK(loaded.prefs.gamma == 1.0);
  CHECK(loaded.prefs.delta == 2.0);
  CHECK(loaded.prefs.psi == 1.0);
}

TEST_CASE("two-state model document round-trips the fixture") {
  auto loaded = parse_model_json(kTwoStateModel);
  auto expected = fixtures::two_state();
  CHECK(loaded.prims.num_states == 2);
  CHECK(loaded.prims.P == expected.P);
  for (std::size_t z = 0; z < 2; ++z)
    for (std::size_t zh = 0; zh < 2; ++zh)
      for (std::size_t k = 0; k < 2; ++k) {
        CHECK(loaded.prims.R_tab(z, zh, k) == expected.R_tab(z, zh, k));
        CHECK(loaded.prims.Y_tab(z, zh, k) == expected.Y_tab(z, zh, k));
      }
}

TEST_CASE("malformed model documents are load errors") {
  SUBCASE("unparsable text") {
    CHECK_THROWS_AS(parse_model_json("{not json"), std::runtime_error);
  }
  SUBCASE("transition matrix of the wrong length") {
    std::string doc = kScalarModel;
    doc.replace(doc.find("[1.0]"), 5, "[1.0, 0.0]");
    CHECK_THROWS_AS(parse_model_json(doc), std::runtime_error);
  }
  SUBCASE("ragged shock dimension") {
    std::string doc = kTwoStateModel;
    doc.replace(doc.find("[0.9, 0.9]"), 10, "[0.9]");
    CHECK_THROWS_AS(parse_model_json(doc), std::runtime_error);
  }
  SUBCASE("missing preferences") {
    std::string doc = kScalarModel;
    doc.replace(doc.find("preferences"), 11, "preference_");
    CHECK_THROWS_AS(parse_model_json(doc), std::runtime_error);
  }
  SUBCASE("invalid economics still fails validation") {
    std::string doc = kScalarModel;
    doc.replace(doc.find("\"P\": [1.0]"), 10, "\"P\": [0.7]");
    CHECK_THROWS_AS(parse_model_json(doc), std::invalid_argument);
  }
}

TEST_CASE("model files load from disk") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "savings_io_test_model.json";
  {
    std::ofstream out(path);
    out << kScalarModel;
  }
  auto loaded = load_model(path.string());
  CHECK(loaded.prims.num_states == 1);
  fs::remove(path);
  CHECK_THROWS_AS(load_model(path.string()), std::runtime_error);
}

TEST_CASE("floating-point serialization is round-trip exact") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678900000001, 0.0, 1e17}) {
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  // JSON has no non-finite literals; they are emitted as strings.
  CHECK(json_number(std::numeric_limits<double>::infinity()) == "\"inf\"");
  CHECK(json_number(0.5) == "0.5");
}

TEST_CASE("assumption report serialization carries the pinned keys") {
  auto prims = fixtures::single_state(0.95, 1.02, 1.0);
  auto report = validate_assumptions(prims, fixtures::prefs(2.0, 3.0, 1.0));
  const std::string json = to_json(report);
  CHECK(json.find("\"a1_ok\": true") != std::string::npos);
  CHECK(json.find("\"a2i_ok\": true") != std::string::npos);
  CHECK(json.find("\"a2ii_ok\": true") != std::string::npos);
  CHECK(json.find("\"a4_ok\": true") != std::string::npos);
  CHECK(json.find("\"positive_betaR_ok\": true") != std::string::npos);
  CHECK(json.find("\"r_K1\": 0.96899999999999") != std::string::npos);
  CHECK(json.find("\"m1\": 1.02") != std::string::npos);
  CHECK(to_json(report) == json);  // deterministic bytes
}

TEST_CASE("policy CSV export") {
  auto prims = fixtures::single_state(0.95, 1.02, 1.0);
  auto prefs = fixtures::prefs(2.0, 3.0, 1.0);
  auto grid = WealthGrid::log_spaced(1e-3, 100.0, 120);
  auto result = solve_policy(prims, prefs, grid, 1e-10, 2000);
  std::ostringstream out;
  write_policy_csv(out, result.policy);
  const std::string text = out.str();

  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "w,z,c,s,constrained");
  std::size_t rows = 0, constrained = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.back() == '1') ++constrained;
  }
  CHECK(rows == 120);
  CHECK(constrained > 0);       // the borrowing-constrained region exists
  CHECK(constrained < rows);    // and so does the interior
}

TEST_CASE("panel CSV export") {
  auto prims = fixtures::single_state(0.95, 1.02, 1.0);
  auto prefs = fixtures::prefs(2.0, 3.0, 1.0);
  auto grid = WealthGrid::log_spaced(1e-3, 100.0, 120);
  auto pol = solve_policy(prims, prefs, grid, 1e-10, 2000).policy;
  auto panel = simulate_paths(pol, prims, 2.0, 0, 3, 2, 11u);
  std::ostringstream out;
  write_panel_csv(out, panel);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "path,t,z,w,c,discount_product");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2 * 4);  // n_paths * (horizon + 1)
}
