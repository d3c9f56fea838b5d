// Command line front end: run Monte Carlo experiments, validate configs,
// and certify the analytic solvers against brute-force search.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "secofdma/allocation.hpp"
#include "secofdma/channel.hpp"
#include "secofdma/config.hpp"
#include "secofdma/harness.hpp"
#include "secofdma/oracle.hpp"
#include "secofdma/pairing.hpp"
#include "secofdma/power_af.hpp"
#include "secofdma/power_df.hpp"
#include "secofdma/rates.hpp"
#include "secofdma/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitCheckFailed = 2;

struct CommonArgs {
  std::string config_path;
  std::optional<std::string> mode;
  std::optional<std::string> sweep;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> out;
};

secofdma::ExperimentSpec load_spec(const CommonArgs& args) {
  secofdma::ExperimentSpec spec = secofdma::load_config(args.config_path);
  if (args.mode) {
    if (*args.mode == "af")
      spec.mode = secofdma::Mode::AF;
    else if (*args.mode == "df")
      spec.mode = secofdma::Mode::DF;
    else
      throw std::invalid_argument("--mode must be af or df");
  }
  if (args.sweep) {
    if (*args.sweep == "ps")
      spec.sweep_axis = secofdma::SweepAxis::SourcePower;
    else if (*args.sweep == "pr")
      spec.sweep_axis = secofdma::SweepAxis::RelayPower;
    else
      throw std::invalid_argument("--sweep must be ps or pr");
  }
  if (args.seed) spec.system.rng_seed = *args.seed;
  if (args.trials) spec.trials = *args.trials;
  if (args.out) spec.output_path = *args.out;
  spec.validate();
  return spec;
}

int cmd_run(const CommonArgs& args, bool plot) {
  const secofdma::ExperimentSpec spec = load_spec(args);
  secofdma::ResultTable table;
  try {
    table = secofdma::run_experiment(spec);
  } catch (const secofdma::SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  auto emit = [&](std::ostream& out) {
    if (plot)
      secofdma::emit_plotdata(table, out);
    else
      secofdma::emit_csv(table, out);
  };
  if (spec.output_path.empty() || spec.output_path == "-") {
    emit(std::cout);
  } else {
    std::ofstream out(spec.output_path);
    if (!out) {
      std::cerr << "error: cannot open output file '" << spec.output_path
                << "'\n";
      return kExitConfigError;
    }
    emit(out);
    std::cerr << "wrote " << table.rows.size() << " rows to "
              << spec.output_path << '\n';
  }
  if (table.total_failures > 0)
    std::cerr << "note: " << table.total_failures
              << " solver failures within budget\n";
  return kExitOk;
}

int cmd_validate(const CommonArgs& args) {
  const secofdma::ExperimentSpec spec = load_spec(args);
  std::cout << "config ok: " << spec.system.num_subcarriers
            << " subcarriers, " << spec.system.num_users << " users, mode "
            << secofdma::to_string(spec.mode) << ", sweep "
            << secofdma::to_string(spec.sweep_axis) << " over "
            << spec.sweep_db.size() << " points, " << spec.trials
            << " trials, " << spec.schemes.size() << " schemes\n";
  return kExitOk;
}

// Certifies the closed-form solvers on small instances: for a handful of
// trials and budget points, the per-pairing analytic optimum must dominate
// a multistart projected grid search to within `tol`, and the pairing
// chosen by the optimized heuristic is reported against the exhaustive one.
int cmd_oracle(const CommonArgs& args, double tol) {
  secofdma::ExperimentSpec spec = load_spec(args);
  if (spec.system.num_subcarriers > 4) {
    std::cerr << "error: oracle certification needs at most 4 subcarriers "
                 "(got "
              << spec.system.num_subcarriers << ")\n";
    return kExitConfigError;
  }
  const int trials = args.trials ? *args.trials : 10;

  // First, middle, and last sweep points keep the run short.
  std::vector<double> points = {spec.sweep_db.front()};
  if (spec.sweep_db.size() > 2)
    points.push_back(spec.sweep_db[spec.sweep_db.size() / 2]);
  if (spec.sweep_db.size() > 1) points.push_back(spec.sweep_db.back());

  int checked = 0;
  int power_failures = 0;
  double worst_power_gap = 0.0;
  double worst_pairing_gap = 0.0;
  for (int t = 0; t < trials; ++t) {
    secofdma::SystemConfig cfg = spec.system;
    cfg.rng_seed = secofdma::derive_seed(spec.system.rng_seed,
                                         static_cast<std::uint64_t>(t));
    const secofdma::ChannelRealization r = secofdma::generate_realization(cfg);
    const secofdma::Assignment a = secofdma::allocate(r);
    for (double db : points) {
      secofdma::Budgets budgets{
          spec.sweep_axis == secofdma::SweepAxis::SourcePower
              ? secofdma::db_to_linear(db)
              : secofdma::db_to_linear(spec.fixed_source_db),
          spec.sweep_axis == secofdma::SweepAxis::RelayPower
              ? secofdma::db_to_linear(db)
              : secofdma::db_to_linear(spec.fixed_relay_db)};

      secofdma::Pairing pairing;
      secofdma::PowerAllocation power;
      if (spec.mode == secofdma::Mode::AF) {
        pairing = secofdma::pair_af(r, a);
        power = secofdma::solve_af(r, a, pairing, budgets);
      } else {
        secofdma::DfPlan plan = secofdma::plan_df(r, a, budgets);
        pairing = std::move(plan.pairing);
        power = std::move(plan.power);
      }
      const double analytic =
          secofdma::sum_secure_rate(r, a, pairing, power, spec.mode).sum;
      const secofdma::PowerAllocation searched =
          secofdma::solve_power_bruteforce(r, a, pairing, budgets, spec.mode);
      const double grid =
          secofdma::sum_secure_rate(r, a, pairing, searched, spec.mode).sum;
      const double power_gap = grid - analytic;
      worst_power_gap = std::max(worst_power_gap, power_gap);
      if (power_gap > tol) {
        ++power_failures;
        std::cerr << "power gap " << power_gap << " bits at trial " << t
                  << ", sweep point " << db << " dB\n";
      }

      const secofdma::OracleResult exhaustive =
          secofdma::brute_force_scp(r, a, budgets, spec.mode);
      worst_pairing_gap =
          std::max(worst_pairing_gap, exhaustive.rate - analytic);
      ++checked;
    }
  }
  std::cout << "checked " << checked << " instances: worst power gap "
            << worst_power_gap << " bits, worst pairing gap "
            << worst_pairing_gap << " bits\n";
  if (power_failures > 0) {
    std::cerr << "certification failed: " << power_failures
              << " instances exceeded the power gap tolerance " << tol << '\n';
    return kExitCheckFailed;
  }
  std::cout << "certification passed (tolerance " << tol << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure OFDMA relay allocation experiments"};
  app.require_subcommand(1);

  CommonArgs args;
  bool plot = false;
  double oracle_tol = 1e-4;

  auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("--config", args.config_path, "experiment config file")
        ->required();
    cmd->add_option("--mode", args.mode, "override mode: af | df");
    cmd->add_option("--sweep", args.sweep, "override sweep axis: ps | pr");
    cmd->add_option("--seed", args.seed, "override master seed");
    cmd->add_option("--trials", args.trials, "override trial count");
    if (with_out)
      cmd->add_option("--out", args.out,
                      "output path ('-' for stdout, default from config)");
  };

  CLI::App* run = app.add_subcommand("run", "run the configured experiment");
  add_common(run, true);
  run->add_flag("--plot", plot, "emit gnuplot blocks instead of CSV");

  CLI::App* validate =
      app.add_subcommand("validate", "parse and check a config file");
  add_common(validate, false);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "certify analytic solvers against brute-force search");
  add_common(oracle, false);
  oracle->add_option("--tol", oracle_tol, "power gap tolerance in bits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(args, plot);
    if (validate->parsed()) return cmd_validate(args);
    if (oracle->parsed()) return cmd_oracle(args, oracle_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}
