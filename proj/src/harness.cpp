#include "secofdma/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "secofdma/allocation.hpp"
#include "secofdma/channel.hpp"
#include "secofdma/oracle.hpp"
#include "secofdma/pairing.hpp"
#include "secofdma/power_af.hpp"
#include "secofdma/power_df.hpp"
#include "secofdma/rates.hpp"
#include "secofdma/rng.hpp"

namespace secofdma {

std::string SchemeSpec::label() const {
  std::string out = power == PowerScheme::OPA ? "opa:" : "epa:";
  switch (pairing) {
    case PairingScheme::Default:
      out += "def";
      break;
    case PairingScheme::Optimized:
      out += "opt";
      break;
    case PairingScheme::Ordered:
      out += "op";
      break;
    case PairingScheme::BruteForce:
      out += "brute";
      break;
  }
  return out;
}

std::string to_string(SweepAxis axis) {
  return axis == SweepAxis::SourcePower ? "ps" : "pr";
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void ExperimentSpec::validate() const {
  system.validate();
  if (schemes.empty())
    throw std::invalid_argument("experiment: at least one scheme required");
  if (sweep_db.empty())
    throw std::invalid_argument("experiment: empty sweep grid");
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (max_solver_failures < 0)
    throw std::invalid_argument("experiment: max_solver_failures must be >= 0");
  if (threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
  for (double db : sweep_db)
    if (!std::isfinite(db))
      throw std::invalid_argument("experiment: non-finite sweep point");
  if (!std::isfinite(fixed_source_db) || !std::isfinite(fixed_relay_db))
    throw std::invalid_argument("experiment: non-finite fixed budget");
  for (const SchemeSpec& s : schemes) {
    if (s.power == PowerScheme::EPA && s.pairing == PairingScheme::BruteForce)
      throw std::invalid_argument(
          "experiment: brute-force pairing requires optimized power");
    if (s.pairing == PairingScheme::BruteForce && system.num_subcarriers > 8)
      throw std::invalid_argument(
          "experiment: brute-force pairing capped at 8 subcarriers");
  }
}

namespace {

Pairing identity_pairing(int n) {
  Pairing p{std::vector<int>(n)};
  std::iota(p.perm.begin(), p.perm.end(), 0);
  return p;
}

PowerAllocation equal_power(int n, const Budgets& budgets) {
  PowerAllocation p;
  p.ps.assign(n, budgets.source / n);
  p.pr.assign(n, budgets.relay / n);
  return p;
}

// One trial's rate for one scheme at one budget point, bits/symbol/subcarrier.
double scheme_rate(const ChannelRealization& r, const Assignment& a,
                   const SchemeSpec& scheme, Mode mode, const Budgets& budgets,
                   const Pairing* cached_pairing) {
  const int n = r.num_subcarriers;

  if (scheme.pairing == PairingScheme::BruteForce) {
    OracleResult best = brute_force_scp(r, a, budgets, mode);
    return best.rate / n;
  }

  Pairing pairing;
  PowerAllocation power;
  bool have_power = false;
  if (cached_pairing != nullptr) {
    pairing = *cached_pairing;
  } else {
    // Only the DF optimized pairing depends on the budgets.
    DfPlan plan = plan_df(r, a, budgets);
    pairing = std::move(plan.pairing);
    if (scheme.power == PowerScheme::OPA) {
      power = std::move(plan.power);
      have_power = true;
    }
  }

  if (!have_power) {
    if (scheme.power == PowerScheme::EPA) {
      power = equal_power(n, budgets);
    } else {
      power = mode == Mode::AF ? solve_af(r, a, pairing, budgets)
                               : solve_df(r, a, pairing, budgets).power;
    }
  }
  return sum_secure_rate(r, a, pairing, power, mode).sum / n;
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

ResultTable run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const int n_schemes = static_cast<int>(spec.schemes.size());
  const int n_points = static_cast<int>(spec.sweep_db.size());
  const int n_cells = n_schemes * n_points;

  std::vector<Budgets> budgets(n_points);
  for (int p = 0; p < n_points; ++p) {
    const double swept = db_to_linear(spec.sweep_db[p]);
    if (spec.sweep_axis == SweepAxis::SourcePower)
      budgets[p] = {swept, db_to_linear(spec.fixed_relay_db)};
    else
      budgets[p] = {db_to_linear(spec.fixed_source_db), swept};
  }

  // rate[t * n_cells + s * n_points + p]; NaN marks a solver failure.
  std::vector<double> rate(static_cast<size_t>(spec.trials) * n_cells);

  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&](int thread_index) {
    try {
      for (int t = thread_index; t < spec.trials; t += spec.threads) {
        SystemConfig cfg = spec.system;
        cfg.rng_seed = derive_seed(spec.system.rng_seed,
                                   static_cast<std::uint64_t>(t));
        const ChannelRealization r = generate_realization(cfg);
        const Assignment a = allocate(r);

        // Budget-independent pairings computed once per trial.
        std::vector<Pairing> cache(n_schemes);
        std::vector<bool> cached(n_schemes, false);
        for (int s = 0; s < n_schemes; ++s) {
          const SchemeSpec& scheme = spec.schemes[s];
          switch (scheme.pairing) {
            case PairingScheme::Default:
              cache[s] = identity_pairing(r.num_subcarriers);
              cached[s] = true;
              break;
            case PairingScheme::Ordered:
              cache[s] = pair_ordered(r, a);
              cached[s] = true;
              break;
            case PairingScheme::Optimized:
              if (spec.mode == Mode::AF) {
                cache[s] = pair_af(r, a);
                cached[s] = true;
              }
              break;
            case PairingScheme::BruteForce:
              break;
          }
        }

        for (int s = 0; s < n_schemes; ++s) {
          for (int p = 0; p < n_points; ++p) {
            double value;
            try {
              value = scheme_rate(r, a, spec.schemes[s], spec.mode, budgets[p],
                                  cached[s] ? &cache[s] : nullptr);
            } catch (const SolverError&) {
              value = std::numeric_limits<double>::quiet_NaN();
            }
            rate[static_cast<size_t>(t) * n_cells + s * n_points + p] = value;
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (spec.threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(spec.threads);
    for (int i = 0; i < spec.threads; ++i) pool.emplace_back(worker, i);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ResultTable table;
  table.rows.reserve(n_cells);
  for (int s = 0; s < n_schemes; ++s) {
    for (int p = 0; p < n_points; ++p) {
      ResultRow row;
      row.scheme = spec.schemes[s].label();
      row.mode = spec.mode;
      row.axis = spec.sweep_axis;
      row.sweep_db = spec.sweep_db[p];

      // Trial-ordered reduction keeps results independent of thread count.
      KahanSum mean_sum;
      int included = 0;
      for (int t = 0; t < spec.trials; ++t) {
        const double x = rate[static_cast<size_t>(t) * n_cells + s * n_points + p];
        if (std::isnan(x)) {
          ++row.failures;
        } else {
          mean_sum.add(x);
          ++included;
        }
      }
      row.trials = included;
      row.mean_rate = included > 0 ? mean_sum.sum / included : 0.0;
      if (included > 1) {
        KahanSum var_sum;
        for (int t = 0; t < spec.trials; ++t) {
          const double x =
              rate[static_cast<size_t>(t) * n_cells + s * n_points + p];
          if (!std::isnan(x)) {
            const double d = x - row.mean_rate;
            var_sum.add(d * d);
          }
        }
        row.std_error = std::sqrt(var_sum.sum /
                                  (static_cast<double>(included) * (included - 1)));
      }
      table.total_failures += row.failures;
      table.rows.push_back(std::move(row));
    }
  }

  if (table.total_failures > spec.max_solver_failures)
    throw SolverError("experiment: solver failure budget exceeded (" +
                          std::to_string(table.total_failures) + " > " +
                          std::to_string(spec.max_solver_failures) + ")",
                      0.0, 0.0);
  return table;
}

namespace {

std::string format_g(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
  return buf;
}

}  // namespace

void emit_csv(const ResultTable& table, std::ostream& out) {
  out << "scheme,mode,sweep_axis,sweep_db,mean_rate,stderr,trials\n";
  for (const ResultRow& row : table.rows) {
    out << row.scheme << ',' << to_string(row.mode) << ','
        << to_string(row.axis) << ',' << format_g(row.sweep_db, 6) << ','
        << format_g(row.mean_rate, 12) << ',' << format_g(row.std_error, 12)
        << ',' << row.trials << '\n';
  }
}

void emit_plotdata(const ResultTable& table, std::ostream& out) {
  std::string current;
  bool first = true;
  for (const ResultRow& row : table.rows) {
    if (row.scheme != current) {
      if (!first) out << "\n\n";
      out << "# scheme=" << row.scheme << " mode=" << to_string(row.mode)
          << " axis=" << to_string(row.axis) << '\n';
      current = row.scheme;
      first = false;
    }
    out << format_g(row.sweep_db, 6) << ' ' << format_g(row.mean_rate, 12)
        << ' ' << format_g(row.std_error, 12) << '\n';
  }
}

}  // namespace secofdma
