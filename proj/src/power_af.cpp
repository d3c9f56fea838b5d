#include "secofdma/power_af.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "secofdma/rates.hpp"
#include "secofdma/rootfind.hpp"

namespace secofdma {

namespace {

using af::marginal_rate_pr;
using af::marginal_rate_ps;
using af::optimal_relay_power;

constexpr double kLambdaFloor = 1e-12;
constexpr int kMultiplierCap = 200;

struct Link {
  double gsr = 0.0;
  double grm = 0.0;
  double gre = 0.0;
  bool active = false;  // grm > gre; degenerate subcarriers carry no power
};

// Relay budget slack: pr = optimal_relay_power(ps) folds the source
// stationarity condition into u(u+a)(u+b) = c with u = sqrt(s2 + ps*gsr),
// strictly increasing in u, solved by safeguarded Newton from above.
double source_power_unconstrained_relay(const Link& l, double s2,
                                        double lambda) {
  const double sigma = std::sqrt(s2);
  const double a = sigma * std::sqrt(l.grm / l.gre);
  const double b = sigma * std::sqrt(l.gre / l.grm);
  const double c =
      0.5 * sigma * l.gsr * (l.grm - l.gre) /
      (std::sqrt(l.grm * l.gre) * lambda);
  if (c <= sigma * (sigma + a) * (sigma + b)) return 0.0;  // priced out
  double u = std::max(std::cbrt(c), sigma);
  for (int it = 0; it < 80; ++it) {
    const double p = ((u + a + b) * u + a * b) * u - c;
    const double dp = (3.0 * u + 2.0 * (a + b)) * u + a * b;
    const double step = p / dp;
    u -= step;
    if (std::abs(step) <= 1e-15 * u) break;
  }
  return std::max(0.0, (u * u - s2) / l.gsr);
}

// ps maximizing the per-subcarrier Lagrangian at fixed pr: the source
// stationarity condition is a quadratic in the source-side sum term.
double best_ps_given_pr(const Link& l, double s2, double lambda, double pr) {
  if (pr <= 0.0) return 0.0;
  if (marginal_rate_ps(0.0, pr, l.gsr, l.grm, l.gre, s2) <= lambda) return 0.0;
  const double delta = l.grm - l.gre;
  const double k = pr * l.gsr * delta / (2.0 * lambda);
  const double beta = pr * (l.grm + l.gre);
  const double root = std::sqrt(pr * pr * delta * delta + 4.0 * k);
  const double a = 0.5 * (root - beta);
  return std::max(0.0, (a - s2) / l.gsr);
}

// pr maximizing the per-subcarrier Lagrangian at fixed ps: the relay
// marginal is strictly decreasing on [0, optimal_relay_power], so the
// stationarity root there is unique.
double best_pr_given_ps(const Link& l, double s2, double mu, double ps) {
  if (ps <= 0.0) return 0.0;
  const double pr_max = optimal_relay_power(ps, l.gsr, l.grm, l.gre, s2);
  if (mu <= 0.0) return pr_max;
  const double h0 = marginal_rate_pr(ps, 0.0, l.gsr, l.grm, l.gre, s2) - mu;
  if (h0 <= 0.0) return 0.0;
  auto h = [&](double pr) {
    return marginal_rate_pr(ps, pr, l.gsr, l.grm, l.gre, s2) - mu;
  };
  return brent_root(h, 0.0, pr_max, h0, -mu, 1e-12 * std::max(1.0, pr_max),
                    1e-8 * std::max(1.0, mu), 200)
      .x;
}

struct PsPr {
  double ps = 0.0;
  double pr = 0.0;
};

// Newton refinement of the stationarity system marginal_ps = lambda,
// marginal_pr = mu. The alternating solve below converges only linearly and
// can stall when the two coordinates couple strongly; a few Newton steps on
// the 2x2 system push the residual to machine precision. The Hessian of
// 0.5*ln O follows from the operand curvature via
//   d2(0.5 ln O) = 0.5*d2O/O - 2*(d(0.5 ln O))^2 (and the mixed analogue).
void polish_stationarity(const Link& l, double s2, double lambda, double mu,
                         double& ps, double& pr) {
  for (int it = 0; it < 40; ++it) {
    const double ms = marginal_rate_ps(ps, pr, l.gsr, l.grm, l.gre, s2);
    const double mr = marginal_rate_pr(ps, pr, l.gsr, l.grm, l.gre, s2);
    const double fs = ms - lambda;
    const double fr = mr - mu;
    if (std::abs(fs) <= 1e-13 * std::max(1.0, lambda) &&
        std::abs(fr) <= 1e-13 * std::max(1.0, mu))
      return;
    const double o = detail::af_operand(ps, pr, l.gsr, l.grm, l.gre, s2);
    const af::OperandCurvature c =
        af::operand_curvature(ps, pr, l.gsr, l.grm, l.gre, s2);
    const double hss = 0.5 * c.d2_ps / o - 2.0 * ms * ms;
    const double hsr = 0.5 * c.d_ps_pr / o - 2.0 * ms * mr;
    const double hrr = 0.5 * c.d2_pr / o - 2.0 * mr * mr;
    const double det = hss * hrr - hsr * hsr;
    if (det == 0.0 || !std::isfinite(det)) return;
    const double dps = (-fs * hrr + fr * hsr) / det;
    const double dpr = (-fr * hss + fs * hsr) / det;
    const double ps_new = ps + dps;
    const double pr_new = pr + dpr;
    if (!(ps_new > 0.0) || !(pr_new > 0.0)) return;
    if (pr_new > optimal_relay_power(ps_new, l.gsr, l.grm, l.gre, s2) *
                     (1.0 + 1e-12))
      return;
    ps = ps_new;
    pr = pr_new;
  }
}

// Joint Newton solve of the fixed-active-set optimality system: marginal_ps
// = lambda and marginal_pr = mu on every powered subcarrier plus both budget
// equalities, with (lambda, mu) among the unknowns. The nested multiplier
// searches can stall a few percent short of the budgets when a subcarrier's
// interior branch folds away right at the crossing; from their last iterate
// this converges quadratically and meets the budget audits to machine
// precision. Eliminating the per-subcarrier blocks reduces the Newton step
// to a 2x2 system in (dlambda, dmu). Commits the refined point only on
// convergence and keeps every iterate interior with pr at or below the
// relay stationary point.
bool refine_budget_kkt(const std::vector<Link>& links, double s2,
                       const std::vector<char>& powered,
                       const Budgets& budgets, double& lambda, double& mu,
                       std::vector<double>& ps, std::vector<double>& pr) {
  const int n = static_cast<int>(links.size());
  std::vector<double> cps = ps, cpr = pr;
  double lam = lambda, m = mu;
  std::vector<double> i11(n), i12(n), i22(n), rs(n), rr(n), dps(n), dpr(n);
  for (int it = 0; it < 80; ++it) {
    double res_s = -budgets.source;
    double res_r = -budgets.relay;
    double worst = 0.0;
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!powered[i]) continue;
      const Link& l = links[i];
      const double ms =
          marginal_rate_ps(cps[i], cpr[i], l.gsr, l.grm, l.gre, s2);
      const double mr =
          marginal_rate_pr(cps[i], cpr[i], l.gsr, l.grm, l.gre, s2);
      rs[i] = ms - lam;
      rr[i] = mr - m;
      worst = std::max(worst, std::abs(rs[i]) / std::max(1.0, lam));
      worst = std::max(worst, std::abs(rr[i]) / std::max(1.0, m));
      res_s += cps[i];
      res_r += cpr[i];
      const double o =
          detail::af_operand(cps[i], cpr[i], l.gsr, l.grm, l.gre, s2);
      const af::OperandCurvature c =
          af::operand_curvature(cps[i], cpr[i], l.gsr, l.grm, l.gre, s2);
      const double hss = 0.5 * c.d2_ps / o - 2.0 * ms * ms;
      const double hsr = 0.5 * c.d_ps_pr / o - 2.0 * ms * mr;
      const double hrr = 0.5 * c.d2_pr / o - 2.0 * mr * mr;
      const double det = hss * hrr - hsr * hsr;
      if (det == 0.0 || !std::isfinite(det)) return false;
      i11[i] = hrr / det;
      i12[i] = -hsr / det;
      i22[i] = hss / det;
      a11 += i11[i];
      a12 += i12[i];
      a22 += i22[i];
      b1 += i11[i] * rs[i] + i12[i] * rr[i];
      b2 += i12[i] * rs[i] + i22[i] * rr[i];
    }
    if (worst <= 1e-11 && std::abs(res_s) <= 1e-11 * budgets.source &&
        std::abs(res_r) <= 1e-11 * budgets.relay) {
      lambda = lam;
      mu = m;
      ps = cps;
      pr = cpr;
      return true;
    }
    const double adet = a11 * a22 - a12 * a12;
    if (adet == 0.0 || !std::isfinite(adet)) return false;
    const double rhs1 = -res_s + b1;
    const double rhs2 = -res_r + b2;
    const double dl = (rhs1 * a22 - rhs2 * a12) / adet;
    const double dm = (rhs2 * a11 - rhs1 * a12) / adet;
    for (int i = 0; i < n; ++i) {
      if (!powered[i]) continue;
      const double q1 = dl - rs[i];
      const double q2 = dm - rr[i];
      dps[i] = i11[i] * q1 + i12[i] * q2;
      dpr[i] = i12[i] * q1 + i22[i] * q2;
    }
    double t = 1.0;
    bool ok = false;
    for (int guard = 0; guard < 60 && !ok; ++guard) {
      ok = lam + t * dl > 0.0 && m + t * dm >= 0.0;
      for (int i = 0; ok && i < n; ++i) {
        if (!powered[i]) continue;
        const double nps = cps[i] + t * dps[i];
        const double npr = cpr[i] + t * dpr[i];
        ok = nps > 0.0 && npr > 0.0 &&
             npr <= optimal_relay_power(nps, links[i].gsr, links[i].grm,
                                        links[i].gre, s2) *
                        (1.0 + 1e-12);
      }
      if (!ok) t *= 0.5;
    }
    if (!ok) return false;
    lam += t * dl;
    m += t * dm;
    for (int i = 0; i < n; ++i) {
      if (!powered[i]) continue;
      cps[i] += t * dps[i];
      cpr[i] += t * dpr[i];
    }
  }
  return false;
}

// Per-subcarrier stationarity solve at fixed multipliers: exact alternating
// maximization of 0.5*ln O - lambda*ps - mu*pr. Keeps pr inside
// [0, optimal_relay_power]. With allow_drop, a converged point worth less
// than spending nothing is discarded in favor of (0, 0); without it the
// interior stationary point is kept, which keeps the budget-spend curves
// continuous in the multipliers.
PsPr subcarrier_power(const Link& l, double s2, double lambda, double mu,
                      double ps_cap, bool allow_drop) {
  double ps = ps_cap;
  double pr = 0.0;
  // A loose settle suffices: the Newton polish below converges quadratically
  // from anywhere the alternation has contracted to.
  for (int it = 0; it < 100; ++it) {
    pr = best_pr_given_ps(l, s2, mu, ps);
    if (pr <= 0.0) return {};
    const double ps_new = best_ps_given_pr(l, s2, lambda, pr);
    if (ps_new <= 0.0) return {};
    const bool settled = std::abs(ps_new - ps) <= 1e-9 * std::max(1.0, ps);
    ps = ps_new;
    if (settled) break;
  }
  polish_stationarity(l, s2, lambda, mu, ps, pr);
  if (allow_drop) {
    const double value =
        0.5 * std::log(detail::af_operand(ps, pr, l.gsr, l.grm, l.gre, s2)) -
        lambda * ps - mu * pr;
    if (value < 0.0) return {};
  }
  return {ps, pr};
}

struct DualOutcome {
  PowerAllocation power;
  double sum_ps = 0.0;
  double sum_pr = 0.0;
  bool budgets_met = false;
};

// Two-level multiplier search over the subcarriers selected by `mask`.
// Greedy per-subcarrier Lagrangian maximization (allow_drop) yields the
// true dual function but its spend curves jump wherever a subcarrier's
// best response switches between an interior point and (0, 0); with
// allow_drop off the interior branch is followed unconditionally so the
// searches can meet the budgets exactly on a fixed active set.
DualOutcome dual_solve(const std::vector<Link>& links, double s2,
                       const Budgets& budgets, const std::vector<char>& mask,
                       bool allow_drop) {
  const int n = static_cast<int>(links.size());
  DualOutcome res;
  res.power.mode = Mode::AF;
  res.power.ps.assign(n, 0.0);
  res.power.pr.assign(n, 0.0);

  auto in_play = [&](int i) { return links[i].active && mask[i]; };

  // Multiplier ceiling: the source marginal at ps = 0 is maximized over pr
  // exactly at optimal_relay_power(0), so above this every subcarrier idles.
  double lam_hi = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!in_play(i)) continue;
    const Link& l = links[i];
    const double pr0 = optimal_relay_power(0.0, l.gsr, l.grm, l.gre, s2);
    lam_hi = std::max(lam_hi,
                      marginal_rate_ps(0.0, pr0, l.gsr, l.grm, l.gre, s2));
  }
  if (lam_hi <= 0.0) {
    res.budgets_met = false;  // nothing to spend on
    return res;
  }

  const double ps_tol = 1e-8 * budgets.source;
  const double pr_tol = 1e-8 * budgets.relay;

  // Phase 1: assume the relay budget is slack, pr = optimal_relay_power(ps).
  auto phase1_sum = [&](double lambda) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      if (in_play(i))
        s += source_power_unconstrained_relay(links[i], s2, lambda);
    return s;
  };
  double lam_lo = kLambdaFloor;
  double g_lo = phase1_sum(lam_lo) - budgets.source;
  for (int guard = 0; g_lo < 0.0 && guard < 40; ++guard) {
    lam_lo *= 0.125;
    g_lo = phase1_sum(lam_lo) - budgets.source;
  }
  if (g_lo < 0.0)
    throw SolverError("solve_af: source budget unreachable", g_lo, 0.0);

  const RootResult p1 = brent_root(
      [&](double lambda) { return phase1_sum(lambda) - budgets.source; },
      lam_lo, lam_hi, g_lo, -budgets.source, 1e-30 * lam_hi, ps_tol,
      kMultiplierCap);
  if (!p1.converged)
    throw SolverError("solve_af: phase-1 multiplier search hit iteration cap",
                      p1.fx, 0.0);

  double relay_spend = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!in_play(i)) continue;
    res.power.ps[i] = source_power_unconstrained_relay(links[i], s2, p1.x);
    res.power.pr[i] = res.power.ps[i] > 0.0
                          ? optimal_relay_power(res.power.ps[i], links[i].gsr,
                                                links[i].grm, links[i].gre, s2)
                          : 0.0;
    res.sum_ps += res.power.ps[i];
    relay_spend += res.power.pr[i];
  }
  res.sum_pr = relay_spend;
  if (relay_spend <= budgets.relay * (1.0 + 1e-9)) {
    res.power.lambda = p1.x;
    res.power.mu = 0.0;
    res.budgets_met = std::abs(res.sum_ps - budgets.source) <= 64.0 * ps_tol;
    return res;
  }

  // Phase 2: relay budget binds too. Outer search on mu, inner on lambda;
  // per-subcarrier powers from the alternating stationarity solve.
  struct Totals {
    double ps = 0.0;
    double pr = 0.0;
  };
  auto consume = [&](double lambda, double mu) {
    Totals t;
    for (int i = 0; i < n; ++i) {
      if (!in_play(i)) continue;
      const PsPr bp = subcarrier_power(links[i], s2, lambda, mu,
                                       budgets.source, allow_drop);
      t.ps += bp.ps;
      t.pr += bp.pr;
    }
    return t;
  };
  auto solve_lambda = [&](double mu) -> std::pair<double, Totals> {
    const Totals at_floor = consume(kLambdaFloor, mu);
    if (at_floor.ps < budgets.source) return {kLambdaFloor, at_floor};
    const RootResult rt = brent_root(
        [&](double lambda) { return consume(lambda, mu).ps - budgets.source; },
        kLambdaFloor, lam_hi, at_floor.ps - budgets.source, -budgets.source,
        1e-30 * lam_hi, ps_tol, kMultiplierCap);
    if (!rt.converged)
      throw SolverError("solve_af: source multiplier search hit iteration cap",
                        rt.fx, 0.0);
    return {rt.x, consume(rt.x, mu)};
  };

  double mu_hi = 0.0;  // relay marginal at pr = 0 never exceeds delta/(2 s2)
  for (int i = 0; i < n; ++i)
    if (in_play(i))
      mu_hi = std::max(mu_hi, 0.5 * (links[i].grm - links[i].gre) / s2);

  const RootResult p2 = brent_root(
      [&](double mu) { return solve_lambda(mu).second.pr - budgets.relay; },
      0.0, mu_hi, relay_spend - budgets.relay, -budgets.relay, 1e-30 * mu_hi,
      pr_tol, kMultiplierCap);
  if (!p2.converged)
    throw SolverError("solve_af: relay multiplier search hit iteration cap",
                      relay_spend - budgets.relay, p2.fx);

  const auto [lambda_star, totals] = solve_lambda(p2.x);
  res.sum_ps = totals.ps;
  res.sum_pr = totals.pr;
  for (int i = 0; i < n; ++i) {
    if (!in_play(i)) {
      res.power.ps[i] = 0.0;
      res.power.pr[i] = 0.0;
      continue;
    }
    const PsPr bp = subcarrier_power(links[i], s2, lambda_star, p2.x,
                                     budgets.source, allow_drop);
    res.power.ps[i] = bp.ps;
    res.power.pr[i] = bp.pr;
  }
  res.power.lambda = lambda_star;
  res.power.mu = p2.x;
  std::vector<char> refined(n, 0);
  bool any_powered = false;
  for (int i = 0; i < n; ++i) {
    refined[i] =
        (in_play(i) && res.power.ps[i] > 0.0 && res.power.pr[i] > 0.0) ? 1 : 0;
    any_powered |= refined[i];
  }
  if (any_powered &&
      refine_budget_kkt(links, s2, refined, budgets, res.power.lambda,
                        res.power.mu, res.power.ps, res.power.pr)) {
    res.sum_ps = 0.0;
    res.sum_pr = 0.0;
    for (int i = 0; i < n; ++i) {
      res.sum_ps += res.power.ps[i];
      res.sum_pr += res.power.pr[i];
    }
  }
  // The rate is strictly increasing in ps, so the source budget must bind at
  // an optimum; the relay budget binds by the phase-2 entry condition.
  res.budgets_met =
      std::abs(res.sum_ps - budgets.source) <= 64.0 * ps_tol &&
      std::abs(res.sum_pr - budgets.relay) <= 64.0 * pr_tol;
  return res;
}

}  // namespace

PowerAllocation solve_af(const ChannelRealization& r, const Assignment& a,
                         const Pairing& pairing, const Budgets& budgets) {
  r.validate();
  budgets.validate();
  const int n = r.num_subcarriers;
  if (static_cast<int>(pairing.perm.size()) != n || !pairing.is_permutation())
    throw std::invalid_argument("solve_af: pairing is not a permutation");
  if (static_cast<int>(a.gain_rm.size()) != n ||
      static_cast<int>(a.gain_re.size()) != n)
    throw std::invalid_argument("solve_af: assignment dimension mismatch");

  const double s2 = r.noise_variance;
  std::vector<Link> links(n);
  bool any_active = false;
  for (int i = 0; i < n; ++i) {
    const int o = pairing.perm[i];
    links[i] = {r.gain_sr[i], a.gain_rm[o], a.gain_re[o],
                a.gain_rm[o] > a.gain_re[o]};
    any_active |= links[i].active;
  }

  if (!any_active) {  // every pair degenerate: spending yields zero rate
    PowerAllocation out;
    out.mode = Mode::AF;
    out.ps.assign(n, 0.0);
    out.pr.assign(n, 0.0);
    return out;
  }

  const std::vector<char> all(n, 1);
  DualOutcome greedy = dual_solve(links, s2, budgets, all, true);
  if (greedy.budgets_met) return greedy.power;

  // The greedy dual landed on a spend discontinuity: some subcarrier's best
  // response flips between an interior point and idle right where the budget
  // curves cross. The optimum then uses one of the nearby active sets, so
  // re-solve with each of those held fixed and keep the best feasible rate.
  std::vector<char> base(n, 0);
  for (int i = 0; i < n; ++i)
    base[i] = (links[i].active && greedy.power.ps[i] > 0.0) ? 1 : 0;
  std::vector<std::vector<char>> candidates;
  candidates.push_back(base);
  for (int j = 0; j < n; ++j) {
    if (!links[j].active) continue;
    std::vector<char> c = base;
    c[j] = c[j] ? 0 : 1;
    candidates.push_back(std::move(c));
  }
  candidates.push_back(all);

  PowerAllocation best;
  double best_rate = -1.0;
  for (const std::vector<char>& mask : candidates) {
    bool any = false;
    for (int i = 0; i < n; ++i) any |= (mask[i] && links[i].active);
    if (!any) continue;
    DualOutcome fixed;
    try {
      fixed = dual_solve(links, s2, budgets, mask, false);
    } catch (const SolverError&) {
      continue;
    }
    if (!fixed.budgets_met) continue;
    double rate = 0.0;
    for (int i = 0; i < n; ++i)
      if (links[i].active)
        rate += detail::af_rate_nats(fixed.power.ps[i], fixed.power.pr[i],
                                     links[i].gsr, links[i].grm, links[i].gre,
                                     s2);
    if (rate > best_rate) {
      best_rate = rate;
      best = std::move(fixed.power);
    }
  }
  if (best_rate < 0.0)
    throw SolverError("solve_af: no active set meets both budget residuals",
                      greedy.sum_ps - budgets.source,
                      greedy.sum_pr - budgets.relay);
  return best;
}

}  // namespace secofdma
