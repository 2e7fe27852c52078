// Command-line front end: loads a model document, dispatches to the solver,
// the asymptotic classifier, the simulator, or the two-period toy, and writes
// byte-stable CSV/JSON artifacts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "savings/asymptotics.hpp"
#include "savings/grid.hpp"
#include "savings/model.hpp"
#include "savings/model_io.hpp"
#include "savings/policy.hpp"
#include "savings/serialize.hpp"
#include "savings/simulation.hpp"
#include "savings/spectral.hpp"
#include "savings/time_iteration.hpp"
#include "savings/two_period.hpp"

namespace {

struct SolveOptions {
  std::string model_path;
  double w_min = 0.0;  // 0 means "scale from the median income"
  double w_max = 0.0;
  std::size_t grid_n = 1000;
  double tol = 1e-10;
  std::size_t max_iter = 2000;
  std::string out_dir = ".";
};

void add_grid_flags(CLI::App* cmd, SolveOptions& opt) {
  cmd->add_option("--model", opt.model_path, "model JSON document")->required();
  cmd->add_option("--wmin", opt.w_min, "grid lower end (default: 1e-3 x median income)");
  cmd->add_option("--wmax", opt.w_max, "grid upper end (default: 1e4 x median income)");
  cmd->add_option("--gridn", opt.grid_n, "number of grid nodes");
  cmd->add_option("--tol", opt.tol, "convergence tolerance in marginal-utility distance");
  cmd->add_option("--max-iter", opt.max_iter, "iteration budget");
}

savings::WealthGrid build_grid(const savings::StochasticPrimitives& prims,
                               const SolveOptions& opt) {
  double median = 1.0;
  if (opt.w_min <= 0.0 || opt.w_max <= 0.0) {
    std::vector<double> incomes = prims.Y_tab.data();
    std::sort(incomes.begin(), incomes.end());
    median = incomes.empty() ? 1.0 : incomes[(incomes.size() - 1) / 2];
    if (!(median > 0.0))
      throw std::invalid_argument("median income is not positive; pass --wmin/--wmax explicitly");
  }
  const double lo = opt.w_min > 0.0 ? opt.w_min : 1e-3 * median;
  const double hi = opt.w_max > 0.0 ? opt.w_max : 1e4 * median;
  return savings::WealthGrid::log_spaced(lo, hi, opt.grid_n);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write output file: " + path.string());
}

// Runs the assumption gate: prints the report when it fails (or when asked)
// and tells the caller whether the command may proceed.
bool assumptions_pass(const savings::AssumptionReport& report, bool always_print) {
  if (always_print || !report.solvable())
    std::cout << savings::to_json(report) << "\n";
  return report.solvable();
}

int run_validate(const std::string& model_path) {
  const savings::LoadedModel model = savings::load_model(model_path);
  const savings::AssumptionReport report =
      savings::validate_assumptions(model.prims, model.prefs);
  return assumptions_pass(report, true) ? 0 : 2;
}

int run_solve(const SolveOptions& opt) {
  const savings::LoadedModel model = savings::load_model(opt.model_path);
  const savings::AssumptionReport report =
      savings::validate_assumptions(model.prims, model.prefs);
  if (!assumptions_pass(report, false)) return 2;
  const savings::WealthGrid grid = build_grid(model.prims, opt);
  const savings::SolveResult result =
      savings::solve_policy(model.prims, model.prefs, grid, opt.tol, opt.max_iter);

  const std::filesystem::path out_dir(opt.out_dir);
  std::ostringstream policy;
  savings::write_policy_csv(policy, result.policy);
  write_text_file(out_dir / "policy.csv", policy.str());
  write_text_file(out_dir / "diagnostics.json",
                  savings::to_json(result.diagnostics, report.r_K1) + "\n");
  return 0;
}

int run_asymptotics(const SolveOptions& opt, bool write_out) {
  const savings::LoadedModel model = savings::load_model(opt.model_path);
  if (!assumptions_pass(savings::validate_assumptions(model.prims, model.prefs), false))
    return 2;
  const savings::AsymptoticReport report =
      savings::classify_asymptotics(model.prims, model.prefs);
  const std::string json = savings::to_json(report);
  std::cout << json << "\n";
  if (write_out)
    write_text_file(std::filesystem::path(opt.out_dir) / "asymptotics.json", json + "\n");
  return 0;
}

int run_compare(const SolveOptions& opt) {
  const savings::LoadedModel model = savings::load_model(opt.model_path);
  if (!assumptions_pass(savings::validate_assumptions(model.prims, model.prefs), false))
    return 2;
  const savings::WealthGrid grid = build_grid(model.prims, opt);
  const savings::SolveResult result =
      savings::solve_policy(model.prims, model.prefs, grid, opt.tol, opt.max_iter);
  savings::AsymptoticReport report = savings::classify_asymptotics(model.prims, model.prefs);

  std::string message = report.message;
  std::optional<std::vector<double>> measured;
  std::optional<std::vector<double>> gaps;
  try {
    std::vector<double> slopes(model.prims.num_states, 0.0);
    for (std::size_t z = 0; z < model.prims.num_states; ++z)
      slopes[z] = savings::measured_slope(result.policy, z, 3.0).slope;
    measured = std::move(slopes);
    std::vector<double> g(model.prims.num_states, 0.0);
    for (std::size_t z = 0; z < model.prims.num_states; ++z)
      g[z] = std::abs(report.predicted_mpc[z] - (*measured)[z]);
    gaps = std::move(g);
  } catch (const std::runtime_error& e) {
    // Not enough unconstrained decades: refuse the measurement rather than
    // publish a truncation artifact.
    measured.reset();
    gaps.reset();
    if (!message.empty()) message += "; ";
    message += e.what();
  }

  std::ostringstream os;
  os << "{\n";
  os << "  \"regime\": \"" << savings::regime_name(report.regime) << "\",\n";
  os << "  \"predicted_mpc\": [";
  for (std::size_t z = 0; z < report.predicted_mpc.size(); ++z) {
    if (z) os << ", ";
    os << savings::json_number(report.predicted_mpc[z]);
  }
  os << "],\n";
  const auto emit_opt = [&os](const char* key, const std::optional<std::vector<double>>& v) {
    os << "  \"" << key << "\": ";
    if (!v) {
      os << "null";
      return;
    }
    os << '[';
    for (std::size_t z = 0; z < v->size(); ++z) {
      if (z) os << ", ";
      os << savings::json_number((*v)[z]);
    }
    os << ']';
  };
  emit_opt("measured_mpc", measured);
  os << ",\n";
  emit_opt("abs_gap", gaps);
  os << ",\n";
  os << "  \"message\": \"" << message << "\"\n";
  os << "}";
  std::cout << os.str() << "\n";
  return 0;
}

int run_simulate(const SolveOptions& opt, double w0, std::size_t z0, std::size_t horizon,
                 std::size_t paths, std::uint64_t seed) {
  const savings::LoadedModel model = savings::load_model(opt.model_path);
  if (!assumptions_pass(savings::validate_assumptions(model.prims, model.prefs), false))
    return 2;
  const savings::WealthGrid grid = build_grid(model.prims, opt);
  const savings::SolveResult result =
      savings::solve_policy(model.prims, model.prefs, grid, opt.tol, opt.max_iter);
  const savings::SimulationPanel panel =
      savings::simulate_paths(result.policy, model.prims, w0, z0, horizon, paths, seed);
  std::ostringstream csv;
  savings::write_panel_csv(csv, panel);
  write_text_file(std::filesystem::path(opt.out_dir) / "panel.csv", csv.str());
  return 0;
}

int run_spectral(const std::string& model_path, double theta) {
  const savings::LoadedModel model = savings::load_model(model_path);
  const savings::MomentMatrix m = savings::discount_return_moments(model.prims, theta);
  const bool irreducible = savings::is_irreducible(m.entries);
  const double radius = m.finite() ? savings::spectral_radius(m.entries)
                                   : std::numeric_limits<double>::infinity();
  std::cout << savings::moment_matrix_json(m, irreducible, radius) << "\n";
  return 0;
}

int run_two_period(double gamma, double delta, double psi, double beta, double gross_return,
                   const std::vector<double>& w_list) {
  savings::two_period::Model m;
  m.prefs.gamma = gamma;
  m.prefs.delta = delta;
  m.prefs.psi = psi;
  m.beta = beta;
  m.gross_return = gross_return;
  m.validate();
  std::cout << "w,c,c_over_w\n";
  for (double w : w_list) {
    const double c = savings::two_period::optimal_consumption(m, w);
    std::cout << savings::format_double(w) << ',' << savings::format_double(c) << ','
              << savings::format_double(c / w) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal savings with wealth in the utility function: solver, asymptotic MPC classifier, and diagnostics"};
  app.require_subcommand(1);

  std::string validate_model;
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "check model assumptions and print the report");
  cmd_validate->add_option("--model", validate_model, "model JSON document")->required();

  SolveOptions solve_opt;
  CLI::App* cmd_solve = app.add_subcommand("solve", "solve the policy by time iteration");
  add_grid_flags(cmd_solve, solve_opt);
  cmd_solve->add_option("--out", solve_opt.out_dir, "output directory for policy.csv and diagnostics.json");

  SolveOptions asym_opt;
  CLI::App* cmd_asym =
      app.add_subcommand("asymptotics", "classify the large-wealth MPC regime");
  cmd_asym->add_option("--model", asym_opt.model_path, "model JSON document")->required();
  CLI::Option* asym_out =
      cmd_asym->add_option("--out", asym_opt.out_dir, "also write asymptotics.json here");

  SolveOptions cmp_opt;
  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "solve, classify, and compare predicted vs measured MPC");
  add_grid_flags(cmd_compare, cmp_opt);

  SolveOptions sim_opt;
  double sim_w0 = 1.0;
  std::size_t sim_z0 = 0;
  std::size_t sim_horizon = 100;
  std::size_t sim_paths = 1;
  std::uint64_t sim_seed = 12345;
  CLI::App* cmd_sim =
      app.add_subcommand("simulate", "solve, then forward-simulate wealth paths");
  add_grid_flags(cmd_sim, sim_opt);
  cmd_sim->add_option("--w0", sim_w0, "initial wealth");
  cmd_sim->add_option("--z0", sim_z0, "initial exogenous state");
  cmd_sim->add_option("--horizon", sim_horizon, "number of simulated periods");
  cmd_sim->add_option("--paths", sim_paths, "number of independent paths");
  cmd_sim->add_option("--seed", sim_seed, "base seed; each path derives its own stream");
  cmd_sim->add_option("--out", sim_opt.out_dir, "output directory for panel.csv");

  std::string spectral_model;
  double spectral_theta = 1.0;
  CLI::App* cmd_spectral =
      app.add_subcommand("spectral", "print the discounted-return moment matrix as JSON");
  cmd_spectral->add_option("--model", spectral_model, "model JSON document")->required();
  cmd_spectral->add_option("--theta", spectral_theta, "moment exponent");

  double tp_gamma = 2.0, tp_delta = 2.0, tp_psi = 1.0, tp_beta = 1.0, tp_return = 1.0;
  std::vector<double> tp_wlist;
  CLI::App* cmd_tp = app.add_subcommand(
      "two-period", "closed-form sanity model: print c and c/w for a wealth list");
  cmd_tp->add_option("--gamma", tp_gamma, "consumption curvature");
  cmd_tp->add_option("--delta", tp_delta, "wealth curvature");
  cmd_tp->add_option("--psi", tp_psi, "wealth weight");
  cmd_tp->add_option("--beta", tp_beta, "discount factor");
  cmd_tp->add_option("--R", tp_return, "gross return");
  cmd_tp->add_option("--wlist", tp_wlist, "comma-separated wealth levels")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (*cmd_validate) return run_validate(validate_model);
    if (*cmd_solve) return run_solve(solve_opt);
    if (*cmd_asym) return run_asymptotics(asym_opt, asym_out->count() > 0);
    if (*cmd_compare) return run_compare(cmp_opt);
    if (*cmd_sim) return run_simulate(sim_opt, sim_w0, sim_z0, sim_horizon, sim_paths, sim_seed);
    if (*cmd_spectral) return run_spectral(spectral_model, spectral_theta);
    if (*cmd_tp) return run_two_period(tp_gamma, tp_delta, tp_psi, tp_beta, tp_return, tp_wlist);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
