// Acceptance gate: nine numbered end-to-end checks, one pass/fail line each.
// Usage: acceptance [n]   (n in 1..9; no argument runs all nine)
// Exit 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

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

using namespace secofdma;

namespace {

// Pinned tolerances. Loosening any of these is a contract change.
constexpr double kOracleRelTol = 1e-4;    // analytic vs reference-search rate
constexpr double kKktTol = 1e-6;          // scaled stationarity residual
constexpr double kEqualizeTol = 1e-8;     // df hop-SNR equalization
constexpr double kNearOptFrac = 0.95;     // heuristic pairing vs exhaustive
// Calibrated win-rate floors for the variance heuristic, two sigma below the
// oracle-backed reference run (0.788 AF, 0.724 DF at 500 trials); the
// correspondence is asymptotic, so near-ties flip a fraction of trials.
constexpr double kVarianceWinFracAf = 0.75;
constexpr double kVarianceWinFracDf = 0.68;
constexpr double kSaturationStep = 0.01;  // max relative gain per 3 dB step
constexpr double kSaturationFrac = 0.95;  // trials with affordable relay peaks
constexpr double kBudgetRelTol = 1e-6;    // source budget spend
constexpr double kDetFloor = -1e-9;       // curvature determinant rounding

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

Pairing identity(int n) {
  Pairing p{std::vector<int>(n)};
  std::iota(p.perm.begin(), p.perm.end(), 0);
  return p;
}

ChannelRealization desk(int n, int users, std::uint64_t seed) {
  SystemConfig cfg = desk_scale(n);
  cfg.num_users = users;
  cfg.rng_seed = seed;
  return generate_realization(cfg);
}

double total(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : total(v) / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const auto k = static_cast<double>(v.size());
  return std::sqrt(ss / (k * (k - 1.0)));
}

// Spearman rank correlation, average ranks on ties.
std::vector<double> ranks_of(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return v[i] < v[j]; });
  std::vector<double> rank(n, 0.0);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * (i + j) + 1.0;
    for (int k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const std::vector<double> rx = ranks_of(x), ry = ranks_of(y);
  const double mx = mean_of(rx), my = mean_of(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// Largest scaled first-order residual over powered subcarriers, plus
// feasibility of the budget spends.
double kkt_residual(const ChannelRealization& r, const Assignment& a,
                    const Pairing& p, const PowerAllocation& w,
                    const Budgets& b) {
  const double s2 = r.noise_variance;
  double worst = 0.0;
  for (int i = 0; i < r.num_subcarriers; ++i) {
    if (w.ps[i] <= 0.0) continue;
    const int o = p.perm[i];
    const double gsr = r.gain_sr[i], grm = a.gain_rm[o], gre = a.gain_re[o];
    const double rs =
        std::abs(af::marginal_rate_ps(w.ps[i], w.pr[i], gsr, grm, gre, s2) -
                 w.lambda) /
        std::max(1.0, w.lambda);
    const double rr =
        std::abs(af::marginal_rate_pr(w.ps[i], w.pr[i], gsr, grm, gre, s2) -
                 w.mu) /
        std::max(1.0, w.mu);
    worst = std::max({worst, rs, rr});
  }
  const double over_s = (total(w.ps) - b.source) / std::max(1.0, b.source);
  const double over_r = (total(w.pr) - b.relay) / std::max(1.0, b.relay);
  return std::max({worst, over_s, over_r});
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

// 1/2: the closed-form allocators match a derivative-free reference search
// on random small instances, and satisfy their own optimality certificates.
Verdict power_vs_reference(Mode mode) {
  Timer timer;
  Rng draws(mode == Mode::AF ? 0xACC1 : 0xACC2);
  double worst_gap = 0.0, worst_cert = 0.0;
  int failures = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const ChannelRealization r = desk(3, 2, draws.next_u64());
    const Assignment a = allocate(r);
    const Budgets b{db_to_linear(draws.uniform(0.0, 18.0)),
                    db_to_linear(draws.uniform(0.0, 18.0))};
    const Pairing p = identity(3);

    PowerAllocation w;
    double cert = 0.0;
    double cert_tol = kKktTol;
    if (mode == Mode::AF) {
      w = solve_af(r, a, p, b);
      cert = kkt_residual(r, a, p, w, b);
    } else {
      const DfSolution sol = solve_df(r, a, p, b);
      w = sol.power;
      cert_tol = kEqualizeTol;
      for (int i = 0; i < 3; ++i) {
        if (w.ps[i] <= 0.0 || w.pr[i] <= 0.0) continue;
        const double lhs = w.ps[i] * r.gain_sr[i];
        const double rhs = w.pr[i] * a.gain_rm[p.perm[i]];
        cert = std::max(cert, std::abs(lhs - rhs) / std::max(1.0, lhs));
      }
    }
    const double rate = sum_secure_rate(r, a, p, w, mode).sum;
    const double ref = sum_secure_rate(
        r, a, p, solve_power_bruteforce(r, a, p, b, mode), mode).sum;
    const double gap = (ref - rate) / std::max(ref, 1e-12);
    worst_gap = std::max(worst_gap, gap);
    worst_cert = std::max(worst_cert, cert);
    if (gap > kOracleRelTol || cert > cert_tol) ++failures;
  }
  const double secs = timer.seconds();
  std::ostringstream d;
  d << "worst rate gap " << worst_gap << ", worst certificate residual "
    << worst_cert << ", " << secs << " s";
  return {failures == 0 && secs < 60.0, d.str()};
}

// 3: the analytic pairing stays within 5% of the exhaustive pairing search,
// and the gap shrinks as the source budget grows.
Verdict pairing_vs_exhaustive() {
  Timer timer;
  const int trials = 500;
  const std::uint64_t master = 0xACC3;
  std::vector<double> sweep;
  for (int db = 0; db <= 20; db += 2) sweep.push_back(db);
  bool pass = true;
  std::ostringstream d;
  for (Mode mode : {Mode::AF, Mode::DF}) {
    std::vector<double> opt(sweep.size(), 0.0), ref(sweep.size(), 0.0);
    for (int t = 0; t < trials; ++t) {
      const ChannelRealization r = desk(3, 2, derive_seed(master, t));
      const Assignment a = allocate(r);
      for (std::size_t k = 0; k < sweep.size(); ++k) {
        const Budgets b{db_to_linear(sweep[k]), db_to_linear(6.0)};
        double fast;
        if (mode == Mode::AF) {
          const Pairing p = pair_af(r, a);
          fast = sum_secure_rate(r, a, p, solve_af(r, a, p, b), mode).sum;
        } else {
          const DfPlan plan = plan_df(r, a, b);
          fast = sum_secure_rate(r, a, plan.pairing, plan.power, mode).sum;
        }
        opt[k] += fast / trials;
        ref[k] += brute_force_scp(r, a, b, mode).rate / trials;
      }
    }
    double worst_frac = 1.0;
    std::vector<double> gap(sweep.size());
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      // Relative shortfall: the absolute inter-curve gap necessarily starts
      // near zero with the rates themselves, so the shrinking-gap trend is
      // meaningful on the same ratio scale as the 95% floor.
      gap[k] = ref[k] > 0.0 ? 1.0 - opt[k] / ref[k] : 0.0;
      if (ref[k] > 0.0) worst_frac = std::min(worst_frac, opt[k] / ref[k]);
    }
    const double rho = spearman(sweep, gap);
    pass = pass && worst_frac >= kNearOptFrac && rho < 0.0;
    d << to_string(mode) << ": min ratio " << worst_frac << ", gap trend rho "
      << rho << "; ";
  }
  const double secs = timer.seconds();
  d << secs << " s";
  return {pass && secs < 300.0, d.str()};
}

// 4: the permutation minimizing effective-gain variance is the rate-optimal
// permutation in at least the calibrated fraction of trials, per mode.
Verdict variance_picks_winner() {
  const int trials = 500;
  const std::uint64_t master = 0xACC4;
  const Budgets b{db_to_linear(15.0), db_to_linear(15.0)};
  std::ostringstream d;
  bool pass = true;
  for (Mode mode : {Mode::AF, Mode::DF}) {
    int wins = 0;
    for (int t = 0; t < trials; ++t) {
      const ChannelRealization r = desk(3, 2, derive_seed(master, t));
      const Assignment a = allocate(r);
      Pairing p = identity(3);
      double best_rate = -1.0, min_var = 0.0, rate_at_min_var = -1.0;
      do {
        const PowerAllocation w = mode == Mode::AF
                                      ? solve_af(r, a, p, b)
                                      : solve_df(r, a, p, b).power;
        const double rate = sum_secure_rate(r, a, p, w, mode).sum;
        const double var = gain_variance(effective_gains(r, a, p, mode));
        best_rate = std::max(best_rate, rate);
        if (rate_at_min_var < 0.0 || var < min_var) {
          min_var = var;
          rate_at_min_var = rate;
        }
      } while (std::next_permutation(p.perm.begin(), p.perm.end()));
      if (rate_at_min_var >= best_rate - 1e-9 * std::max(1.0, best_rate))
        ++wins;
    }
    const double frac = static_cast<double>(wins) / trials;
    const double floor =
        mode == Mode::AF ? kVarianceWinFracAf : kVarianceWinFracDf;
    pass = pass && frac >= floor;
    d << to_string(mode) << ": min-variance wins " << frac << " (floor "
      << floor << "); ";
  }
  return {pass, d.str()};
}

// 5: under DF the pairing gain is decisive when the relay budget dwarfs the
// source budget, and vanishes within the Monte Carlo resolution of the rate
// curves themselves in the opposite regime. The resolution yardstick is the
// std error of the plotted per-scheme means: pairing can never hurt, so a
// paired-difference test would flag any nonzero residual at some trial
// count no matter how negligible against the rates.
Verdict df_role_switch() {
  const int trials = 500;
  const std::uint64_t master = 0xACC5;
  SystemConfig cfg = table_defaults();
  struct Regime {
    std::vector<double> gaps, opt;
  };
  auto paired_gap = [&](double ps_db, double pr_db) {
    Regime out;
    out.gaps.resize(trials);
    out.opt.resize(trials);
    const Budgets b{db_to_linear(ps_db), db_to_linear(pr_db)};
    for (int t = 0; t < trials; ++t) {
      cfg.rng_seed = derive_seed(master, t);
      const ChannelRealization r = generate_realization(cfg);
      const Assignment a = allocate(r);
      const DfPlan plan = plan_df(r, a, b);
      const double opt =
          sum_secure_rate(r, a, plan.pairing, plan.power, Mode::DF).sum;
      const Pairing p = identity(cfg.num_subcarriers);
      const double def =
          sum_secure_rate(r, a, p, solve_df(r, a, p, b).power, Mode::DF).sum;
      out.gaps[t] = (opt - def) / cfg.num_subcarriers;
      out.opt[t] = opt / cfg.num_subcarriers;
    }
    return out;
  };

  const Regime loud_relay = paired_gap(6.0, 18.0);
  const Regime loud_source = paired_gap(18.0, 0.0);
  const double g1 = mean_of(loud_relay.gaps), s1 = stderr_of(loud_relay.gaps);
  const double g2 = mean_of(loud_source.gaps);
  const double curve_se = stderr_of(loud_source.opt);
  const bool pass = g1 > 0.0 && std::abs(g2) <= 2.0 * curve_se;
  std::ostringstream d;
  d << "gap(ps=6,pr=18) " << g1 << " (se " << s1 << "), gap(ps=18,pr=0) "
    << g2 << " vs curve se " << curve_se;
  return {pass, d.str()};
}

// 6: with the source budget fixed, the optimized AF rate never falls as the
// relay budget grows, and stops growing once the per-subcarrier relay peaks
// are affordable in nearly every trial.
Verdict af_saturation() {
  const int trials = 300;
  const std::uint64_t master = 0xACC6;
  SystemConfig cfg = table_defaults();
  const int n = cfg.num_subcarriers;
  std::vector<double> sweep;
  for (int db = 0; db <= 24; db += 3) sweep.push_back(db);
  const double ps_budget = db_to_linear(6.0);

  std::vector<double> mean(sweep.size(), 0.0);
  std::vector<int> affordable(sweep.size(), 0);
  for (int t = 0; t < trials; ++t) {
    cfg.rng_seed = derive_seed(master, t);
    const ChannelRealization r = generate_realization(cfg);
    const Assignment a = allocate(r);
    const Pairing p = identity(n);
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      const Budgets b{ps_budget, db_to_linear(sweep[k])};
      const PowerAllocation w = solve_af(r, a, p, b);
      mean[k] += sum_secure_rate(r, a, p, w, Mode::AF).sum / trials;
      double peaks = 0.0;
      for (int i = 0; i < n; ++i) {
        if (a.gain_rm[i] <= a.gain_re[i]) continue;  // never powered
        peaks += af::optimal_relay_power(w.ps[i], r.gain_sr[i], a.gain_rm[i],
                                         a.gain_re[i], r.noise_variance);
      }
      if (peaks <= b.relay) ++affordable[k];
    }
  }

  bool monotone = true;
  for (std::size_t k = 1; k < sweep.size(); ++k)
    monotone = monotone && mean[k] >= mean[k - 1] - 1e-9;
  int sat_at = -1;
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    if (static_cast<double>(affordable[k]) / trials >= kSaturationFrac) {
      sat_at = static_cast<int>(k);
      break;
    }
  }
  bool flat_after = sat_at >= 0;
  double worst_step = 0.0;
  if (sat_at >= 0) {
    for (std::size_t k = sat_at; k + 1 < sweep.size(); ++k) {
      const double step = (mean[k + 1] - mean[k]) / std::max(mean[k], 1e-12);
      worst_step = std::max(worst_step, step);
      flat_after = flat_after && step < kSaturationStep;
    }
  }
  std::ostringstream d;
  d << "monotone " << (monotone ? "yes" : "NO") << ", peaks affordable from "
    << (sat_at >= 0 ? std::to_string(static_cast<int>(sweep[sat_at]))
                    : std::string("never"))
    << " dB, max step after " << worst_step;
  return {monotone && flat_after, d.str()};
}

// 7: scheme ordering at a high-power operating point, and the dead
// equal-power regime under DF with a loud relay.
Verdict scheme_ordering() {
  const int trials = 500;
  const std::uint64_t master = 0xACC7;
  SystemConfig cfg = desk_scale(8);
  cfg.num_users = 4;
  const Budgets b{db_to_linear(18.0), db_to_linear(18.0)};
  const int n = cfg.num_subcarriers;

  double opa_opt = 0.0, opa_op = 0.0, opa_def = 0.0;
  double epa_best = 0.0;
  std::vector<double> epa(3, 0.0);  // def, opt, op
  for (int t = 0; t < trials; ++t) {
    cfg.rng_seed = derive_seed(master, t);
    const ChannelRealization r = generate_realization(cfg);
    const Assignment a = allocate(r);

    const Pairing p_opt = pair_af(r, a), p_op = pair_ordered(r, a),
                  p_def = identity(n);
    opa_opt +=
        sum_secure_rate(r, a, p_opt, solve_af(r, a, p_opt, b), Mode::AF).sum /
        trials;
    opa_op +=
        sum_secure_rate(r, a, p_op, solve_af(r, a, p_op, b), Mode::AF).sum /
        trials;
    opa_def +=
        sum_secure_rate(r, a, p_def, solve_af(r, a, p_def, b), Mode::AF).sum /
        trials;

    PowerAllocation eq;
    eq.ps.assign(n, b.source / n);
    eq.pr.assign(n, b.relay / n);
    epa[0] += sum_secure_rate(r, a, p_def, eq, Mode::AF).sum / trials;
    epa[1] += sum_secure_rate(r, a, p_opt, eq, Mode::AF).sum / trials;
    epa[2] += sum_secure_rate(r, a, p_op, eq, Mode::AF).sum / trials;
  }
  epa_best = std::max({epa[0], epa[1], epa[2]});
  const bool af_order =
      opa_opt > opa_op && opa_op >= opa_def && opa_def > epa_best;

  // equal power under DF, relay 18 dB vs source 6 dB: the uniform relay
  // power hands the strongest non-intended user more than the bottleneck
  // rate on every subcarrier, so the mean is exactly zero.
  SystemConfig big = table_defaults();
  double epa_df = 0.0;
  const Budgets bdf{db_to_linear(6.0), db_to_linear(18.0)};
  const Pairing pid = identity(big.num_subcarriers);
  for (int t = 0; t < trials; ++t) {
    big.rng_seed = derive_seed(master ^ 0xdf, t);
    const ChannelRealization r = generate_realization(big);
    const Assignment a = allocate(r);
    PowerAllocation eq;
    eq.ps.assign(big.num_subcarriers, bdf.source / big.num_subcarriers);
    eq.pr.assign(big.num_subcarriers, bdf.relay / big.num_subcarriers);
    epa_df += sum_secure_rate(r, a, pid, eq, Mode::DF).sum;
  }

  std::ostringstream d;
  d << "af means opt " << opa_opt / n << " / op " << opa_op / n << " / def "
    << opa_def / n << " / epa " << epa_best / n << " (bits/symb/subcarrier), "
    << "ratios opt/def " << opa_opt / opa_def << ", op/def "
    << opa_op / opa_def << ", def/epa " << opa_def / std::max(epa_best, 1e-12)
    << "; df epa sum " << epa_df;
  return {af_order && epa_df == 0.0, d.str()};
}

// 8: solver invariants, zero violations allowed.
Verdict invariants() {
  Rng draws(0xACC8);
  std::ostringstream d;

  // (a) the AF rate in relay power rises to its stationary point, then falls
  int viol_unimodal = 0;
  for (int i = 0; i < 10000; ++i) {
    const double ps = draws.uniform(0.01, 30.0);
    double grm = draws.exp_unit(), gre = draws.exp_unit();
    if (grm < gre) std::swap(grm, gre);
    if (grm == gre) grm += 1.0;
    const double gsr = draws.exp_unit();
    const double s2 = draws.uniform(0.3, 3.0);
    const double peak = af::optimal_relay_power(ps, gsr, grm, gre, s2);
    double prev = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double rate =
          secure_rate_af(ps, peak * k / 50.0, gsr, grm, gre, s2);
      if (rate < prev - 1e-12) ++viol_unimodal;
      prev = rate;
    }
    for (int k = 1; k <= 50; ++k) {
      const double rate =
          secure_rate_af(ps, peak * (1.0 + k / 10.0), gsr, grm, gre, s2);
      if (rate > prev + 1e-12) ++viol_unimodal;
      prev = rate;
    }
  }

  // (b) the source budget is always spent; relay power never passes the peak
  int viol_budget = 0;
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + i % 3;
    const ChannelRealization r = desk(n, 2, draws.next_u64());
    const Assignment a = allocate(r);
    bool all_degenerate = true;
    for (int j = 0; j < n; ++j)
      all_degenerate = all_degenerate && a.gain_rm[j] <= a.gain_re[j];
    if (all_degenerate) continue;
    const Budgets b{db_to_linear(draws.uniform(0.0, 20.0)),
                    db_to_linear(draws.uniform(0.0, 20.0))};
    const PowerAllocation w = solve_af(r, a, identity(n), b);
    if (std::abs(total(w.ps) - b.source) > kBudgetRelTol * b.source)
      ++viol_budget;
    for (int j = 0; j < n; ++j) {
      const double peak =
          af::optimal_relay_power(w.ps[j], r.gain_sr[j], a.gain_rm[j],
                                  a.gain_re[j], r.noise_variance);
      if (w.pr[j] > peak * (1.0 + 1e-9) + 1e-12) ++viol_budget;
    }
  }

  // (c) curvature signs of the log operand wherever the preconditions hold:
  // relay power at or below the peak, winner gain at or above the
  // eavesdropper gain, and pr*sqrt(grm*gre) >= noise
  int viol_sign = 0, accepted = 0;
  while (accepted < 20000) {
    const double ps = draws.uniform(0.0, 20.0);
    double grm = draws.exp_unit(), gre = draws.exp_unit();
    if (grm < gre) std::swap(grm, gre);
    const double gsr = draws.exp_unit();
    const double s2 = draws.uniform(0.3, 3.0);
    const double peak = af::optimal_relay_power(ps, gsr, grm, gre, s2);
    const double pr = draws.uniform(0.0, peak);
    if (pr * std::sqrt(grm * gre) < s2) continue;
    ++accepted;
    const af::OperandCurvature c =
        af::operand_curvature(ps, pr, gsr, grm, gre, s2);
    if (c.d2_ps > 0.0 || c.d2_pr > 0.0 || c.det < kDetFloor) ++viol_sign;
  }

  // (d) widening the gap between two water-filled gains reduces the two-user
  // sum rate whenever the source budget clears the closed-form floor
  int viol_widen = 0;
  for (int i = 0; i < 10000; ++i) {
    double g1 = draws.exp_unit(), g2 = draws.exp_unit();
    if (g1 < g2) std::swap(g1, g2);
    if (g1 == g2) g1 += 1.0;
    const double delta = g2 * draws.uniform(0.05, 0.95);
    const double s2 = draws.uniform(0.5, 2.0);
    const double wide1 = g1 + delta, wide2 = g2 - delta;
    const double floor_ps = s2 * (g1 + g2) / std::sqrt(g1 * g2 * wide1 * wide2);
    const double ps = floor_ps * (1.0 + std::pow(10.0, draws.uniform(-3.0, 3.0)));
    const double base = s2 * (g1 + g2) + ps * g1 * g2;
    const double wide = s2 * (g1 + g2) + ps * wide1 * wide2;
    if (!(wide1 * wide2 * base * base > g1 * g2 * wide * wide)) ++viol_widen;
    const double rate_n = std::log2(base * base / (4.0 * s2 * s2 * g1 * g2));
    const double rate_w =
        std::log2(wide * wide / (4.0 * s2 * s2 * wide1 * wide2));
    if (!(rate_n > rate_w - 1e-12)) ++viol_widen;
  }

  d << "unimodality " << viol_unimodal << ", budget activity " << viol_budget
    << ", curvature signs " << viol_sign << ", widening " << viol_widen
    << " violations";
  const bool pass =
      viol_unimodal == 0 && viol_budget == 0 && viol_sign == 0 &&
      viol_widen == 0;
  return {pass, d.str()};
}

// 9: the experiment runner is bit-reproducible, thread count included.
Verdict deterministic_csv() {
  auto run_csv = [](Mode mode, int threads) {
    ExperimentSpec spec;
    spec.system = desk_scale(4);
    spec.system.rng_seed = 99;
    spec.mode = mode;
    spec.schemes = {parse_scheme("opa:opt"), parse_scheme("opa:def"),
                    parse_scheme("epa:def")};
    spec.sweep_db = {0.0, 6.0, 12.0};
    spec.trials = 60;
    spec.threads = threads;
    std::ostringstream out;
    emit_csv(run_experiment(spec), out);
    return out.str();
  };
  bool pass = true;
  for (Mode mode : {Mode::AF, Mode::DF}) {
    const std::string base = run_csv(mode, 1);
    pass = pass && run_csv(mode, 1) == base && run_csv(mode, 3) == base;
  }
  return {pass, pass ? "byte-identical across reruns and thread counts"
                     : "csv output differs between runs"};
}

Verdict run_criterion(int n) {
  switch (n) {
    case 1: return power_vs_reference(Mode::AF);
    case 2: return power_vs_reference(Mode::DF);
    case 3: return pairing_vs_exhaustive();
    case 4: return variance_picks_winner();
    case 5: return df_role_switch();
    case 6: return af_saturation();
    case 7: return scheme_ordering();
    case 8: return invariants();
    case 9: return deterministic_csv();
    default: return {false, "unknown criterion"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  int lo = 1, hi = 9;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 9) {
      std::fprintf(stderr, "usage: %s [1..9]\n", argv[0]);
      return 2;
    }
    lo = hi = n;
  }
  bool all_pass = true;
  for (int n = lo; n <= hi; ++n) {
    const Verdict v = run_criterion(n);
    std::printf("criterion %d: %s  %s\n", n, v.pass ? "PASS" : "FAIL",
                v.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && v.pass;
  }
  return all_pass ? 0 : 1;
}
