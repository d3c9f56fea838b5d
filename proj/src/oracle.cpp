#include "secofdma/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "secofdma/power_af.hpp"
#include "secofdma/power_df.hpp"
#include "secofdma/rates.hpp"
#include "secofdma/rng.hpp"

namespace secofdma {

OracleResult brute_force_scp(const ChannelRealization& r, const Assignment& a,
                             const Budgets& budgets, Mode mode) {
  r.validate();
  budgets.validate();
  if (r.num_subcarriers > 8)
    throw std::invalid_argument(
        "brute_force_scp: permutation enumeration capped at 8 subcarriers");

  OracleResult best;
  best.rate = -1.0;
  Pairing p = {std::vector<int>(r.num_subcarriers)};
  std::iota(p.perm.begin(), p.perm.end(), 0);
  do {
    PowerAllocation power =
        mode == Mode::AF ? solve_af(r, a, p, budgets)
                         : solve_df(r, a, p, budgets).power;
    const double rate = sum_secure_rate(r, a, p, power, mode).sum;
    ++best.evaluations;
    if (rate > best.rate) {
      best.rate = rate;
      best.pairing = p;
      best.power = std::move(power);
    }
  } while (std::next_permutation(p.perm.begin(), p.perm.end()));
  return best;
}

namespace {

struct BoxObjective {
  const ChannelRealization* r;
  const Assignment* a;
  const Pairing* pairing;
  Mode mode;

  double operator()(const std::vector<double>& ps,
                    const std::vector<double>& pr) const {
    double nats = 0.0;
    for (int i = 0; i < r->num_subcarriers; ++i) {
      const int o = pairing->perm[i];
      nats += mode == Mode::AF
                  ? detail::af_rate_nats(ps[i], pr[i], r->gain_sr[i],
                                         a->gain_rm[o], a->gain_re[o],
                                         r->noise_variance)
                  : detail::df_rate_nats(ps[i], pr[i], r->gain_sr[i],
                                         a->gain_rm[o], a->gain_re[o],
                                         r->noise_variance);
    }
    return nats / detail::kLn2;
  }
};

// Shrinking-grid scan of f over [lo, hi]: robust against the kinks the
// clamped/min objectives introduce, needs no derivatives.
template <class F>
double line_search(F&& f, double lo, double hi, int points) {
  if (!(hi > lo)) return lo;
  double best_x = lo, best_f = f(lo);
  for (int round = 0; round < 40; ++round) {
    const double step = (hi - lo) / (points - 1);
    for (int k = 0; k < points; ++k) {
      const double x = lo + step * k;
      const double v = f(x);
      if (v > best_f) {
        best_f = v;
        best_x = x;
      }
    }
    const double new_lo = std::max(lo, best_x - step);
    const double new_hi = std::min(hi, best_x + step);
    lo = new_lo;
    hi = new_hi;
    if (hi - lo <= 1e-11 * std::max(1.0, std::abs(best_x))) break;
  }
  return best_x;
}

}  // namespace

PowerAllocation solve_power_bruteforce(const ChannelRealization& r,
                                       const Assignment& a,
                                       const Pairing& pairing,
                                       const Budgets& budgets, Mode mode,
                                       int grid_resolution, std::uint64_t seed,
                                       std::vector<PowerAllocation>* trace) {
  r.validate();
  budgets.validate();
  const int n = r.num_subcarriers;
  if (n > 4)
    throw std::invalid_argument(
        "solve_power_bruteforce: power search capped at 4 subcarriers");
  if (static_cast<int>(pairing.perm.size()) != n || !pairing.is_permutation())
    throw std::invalid_argument("solve_power_bruteforce: bad pairing");
  if (grid_resolution < 9)
    throw std::invalid_argument(
        "solve_power_bruteforce: grid_resolution below documented minimum 9");

  const BoxObjective obj{&r, &a, &pairing, mode};
  const double ps_budget = budgets.source;
  const double pr_budget = budgets.relay;

  // Deterministic start set: equal split, per-subcarrier corners, then
  // random simplex points to reach at least 8 starts.
  std::vector<std::pair<std::vector<double>, std::vector<double>>> starts;
  starts.push_back({std::vector<double>(n, ps_budget / n),
                    std::vector<double>(n, pr_budget / n)});
  for (int k = 0; k < n; ++k) {
    std::vector<double> ps(n, 0.0), pr(n, 0.0);
    ps[k] = ps_budget;
    pr[k] = pr_budget;
    starts.push_back({ps, pr});
  }
  Rng rng(seed);
  while (starts.size() < 8 + static_cast<size_t>(n)) {
    std::vector<double> ps(n), pr(n);
    double ws = 0.0, wr = 0.0;
    for (int i = 0; i < n; ++i) {
      ps[i] = rng.exp_unit();
      pr[i] = rng.exp_unit();
      ws += ps[i];
      wr += pr[i];
    }
    const double scale_r = rng.uniform01();  // interior relay points too
    for (int i = 0; i < n; ++i) {
      ps[i] *= ps_budget / ws;
      pr[i] *= pr_budget * scale_r / wr;
    }
    starts.push_back({std::move(ps), std::move(pr)});
  }

  std::vector<double> best_ps(n, 0.0), best_pr(n, 0.0);
  double best_rate = -1.0;

  for (auto& [ps, pr] : starts) {
    double current = obj(ps, pr);
    for (int sweep = 0; sweep < 60; ++sweep) {
      const double before = current;

      double slack_s = ps_budget - std::accumulate(ps.begin(), ps.end(), 0.0);
      for (int i = 0; i < n; ++i) {
        const double hi = ps[i] + std::max(0.0, slack_s);
        const double old = ps[i];
        ps[i] = line_search(
            [&](double x) {
              ps[i] = x;
              return obj(ps, pr);
            },
            0.0, hi, grid_resolution);
        slack_s += old - ps[i];
      }
      double slack_r = pr_budget - std::accumulate(pr.begin(), pr.end(), 0.0);
      for (int i = 0; i < n; ++i) {
        const double hi = pr[i] + std::max(0.0, slack_r);
        const double old = pr[i];
        pr[i] = line_search(
            [&](double x) {
              pr[i] = x;
              return obj(ps, pr);
            },
            0.0, hi, grid_resolution);
        slack_r += old - pr[i];
      }
      // Pairwise transfers walk along the budget faces.
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double pi = ps[i], pj = ps[j];
          const double t = line_search(
              [&](double x) {
                ps[i] = pi + x;
                ps[j] = pj - x;
                return obj(ps, pr);
              },
              -pi, pj, grid_resolution);
          ps[i] = std::max(0.0, pi + t);
          ps[j] = std::max(0.0, pj - t);
          const double qi = pr[i], qj = pr[j];
          const double u = line_search(
              [&](double x) {
                pr[i] = qi + x;
                pr[j] = qj - x;
                return obj(ps, pr);
              },
              -qi, qj, grid_resolution);
          pr[i] = std::max(0.0, qi + u);
          pr[j] = std::max(0.0, qj - u);
        }
      }

      current = obj(ps, pr);
      if (trace) {
        PowerAllocation snap;
        snap.ps = ps;
        snap.pr = pr;
        snap.mode = mode;
        trace->push_back(std::move(snap));
      }
      if (current - before < 1e-8) break;
    }
    if (current > best_rate) {
      best_rate = current;
      best_ps = ps;
      best_pr = pr;
    }
  }

  PowerAllocation out;
  out.ps = std::move(best_ps);
  out.pr = std::move(best_pr);
  out.mode = mode;
  return out;
}

}  // namespace secofdma
