#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "secofdma/types.hpp"

namespace secofdma {

/// Power allocation strategy used by a scheme.
enum class PowerScheme {
  OPA,  ///< optimized power allocation (KKT / secure water-filling)
  EPA,  ///< equal power allocation: budget split uniformly over subcarriers
};

/// Subcarrier pairing strategy used by a scheme.
enum class PairingScheme {
  Default,     ///< identity pairing (subcarrier n relays on n)
  Optimized,   ///< mode-specific effective-gain matching
  Ordered,     ///< ordered pairing on raw gains only
  BruteForce,  ///< exhaustive pairing search (small instances only)
};

/// A (power, pairing) strategy combination evaluated per trial.
struct SchemeSpec {
  PowerScheme power = PowerScheme::OPA;
  PairingScheme pairing = PairingScheme::Default;

  /// Stable short label used in CSV output, e.g. "opa:opt".
  std::string label() const;
};

/// Which budget the experiment sweeps; the other stays fixed.
enum class SweepAxis { SourcePower, RelayPower };

std::string to_string(SweepAxis axis);

/// Full description of a Monte Carlo experiment.
struct ExperimentSpec {
  SystemConfig system;
  Mode mode = Mode::AF;
  std::vector<SchemeSpec> schemes;
  SweepAxis sweep_axis = SweepAxis::SourcePower;
  std::vector<double> sweep_db;      ///< swept budget grid, dB
  double fixed_source_db = 6.0;      ///< source budget when sweeping relay
  double fixed_relay_db = 6.0;       ///< relay budget when sweeping source
  int trials = 100;
  int max_solver_failures = 0;       ///< abort threshold across the whole run
  int threads = 1;
  std::string output_path;

  /// Rejects empty scheme lists, empty sweeps, non-positive trial counts,
  /// EPA paired with BruteForce pairing, and brute-force pairing on systems
  /// with more than 8 subcarriers.
  void validate() const;
};

/// One (scheme, sweep point) aggregate.
struct ResultRow {
  std::string scheme;
  Mode mode;
  SweepAxis axis;
  double sweep_db = 0.0;
  double mean_rate = 0.0;   ///< bits/symbol/subcarrier, averaged over trials
  double std_error = 0.0;   ///< standard error of the mean
  int trials = 0;           ///< trials included in the mean
  int failures = 0;         ///< solver failures at this point
};

struct ResultTable {
  std::vector<ResultRow> rows;
  int total_failures = 0;
};

/// 10^(dB/10).
double db_to_linear(double db);

/// Runs the Monte Carlo experiment.
///
/// Each trial draws one channel realization from a seed derived from the
/// system seed and the trial index, so every scheme and every sweep point
/// sees the same channels (common random numbers). Solver failures on a
/// trial drop that trial from the affected point's mean; the run aborts
/// with SolverError once total failures exceed spec.max_solver_failures.
ResultTable run_experiment(const ExperimentSpec& spec);

/// Writes rows as CSV with header
/// `scheme,mode,sweep_axis,sweep_db,mean_rate,stderr,trials`.
void emit_csv(const ResultTable& table, std::ostream& out);

/// Writes gnuplot-friendly blocks: one block per scheme, blank-line
/// separated, columns `sweep_db mean_rate stderr`.
void emit_plotdata(const ResultTable& table, std::ostream& out);

}  // namespace secofdma
