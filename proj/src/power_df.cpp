#include "secofdma/power_df.hpp"

#include <algorithm>
#include <cmath>

#include "secofdma/rootfind.hpp"

namespace secofdma {

namespace {

constexpr int kMultiplierCap = 200;

// Stationary power at multiplier m: positive root of
//   2m(s2 + p*gm)(s2 + p*ge) = s2(gm - ge),
// via the numerically stable quadratic branch; nonpositive roots clamp to 0.
double waterfill_power(double gm, double ge, double s2, double m) {
  const double delta = gm - ge;
  if (delta <= 0.0) return 0.0;
  const double c = 2.0 * m * s2 * s2 - s2 * delta;
  if (c >= 0.0) return 0.0;
  const double a = 2.0 * m * gm * ge;
  const double b = 2.0 * m * s2 * (gm + ge);
  const double q = -0.5 * (b + std::sqrt(b * b - 4.0 * a * c));
  return c / q;
}

double spend(const std::vector<double>& gm, const std::vector<double>& ge,
             double s2, double m, std::vector<double>* out) {
  double sum = 0.0;
  for (size_t i = 0; i < gm.size(); ++i) {
    const double p = waterfill_power(gm[i], ge[i], s2, m);
    if (out) (*out)[i] = p;
    sum += p;
  }
  return sum;
}

}  // namespace

WaterfillResult secure_waterfill(const std::vector<double>& gain_m,
                                 const std::vector<double>& gain_e,
                                 double budget, double s2) {
  if (gain_m.size() != gain_e.size() || gain_m.empty())
    throw std::invalid_argument("secure_waterfill: gain arrays mismatch");
  if (!(budget > 0.0) || !(s2 > 0.0))
    throw std::invalid_argument("secure_waterfill: budget and noise must be positive");
  for (size_t i = 0; i < gain_m.size(); ++i)
    if (!(gain_m[i] > 0.0) || !(gain_e[i] > 0.0) ||
        !std::isfinite(gain_m[i]) || !std::isfinite(gain_e[i]))
      throw std::invalid_argument("secure_waterfill: gains must be positive finite");

  WaterfillResult res;
  res.power.assign(gain_m.size(), 0.0);

  double m_hi = 0.0;
  for (size_t i = 0; i < gain_m.size(); ++i)
    m_hi = std::max(m_hi, 0.5 * (gain_m[i] - gain_e[i]) / s2);
  if (m_hi <= 0.0) {
    res.all_degenerate = true;
    return res;
  }

  double m_lo = m_hi;
  double f_lo = spend(gain_m, gain_e, s2, m_lo, nullptr) - budget;
  for (int guard = 0; f_lo < 0.0 && guard < 1100; ++guard) {
    m_lo *= 0.5;
    f_lo = spend(gain_m, gain_e, s2, m_lo, nullptr) - budget;
  }
  if (f_lo < 0.0)
    throw SolverError("secure_waterfill: budget unreachable", f_lo, f_lo);

  const RootResult rt = brent_root(
      [&](double m) { return spend(gain_m, gain_e, s2, m, nullptr) - budget; },
      m_lo, m_hi, f_lo, -budget, 1e-30 * m_hi, 1e-8 * budget, kMultiplierCap);
  if (!rt.converged)
    throw SolverError("secure_waterfill: multiplier search hit iteration cap",
                      rt.fx, rt.fx);

  spend(gain_m, gain_e, s2, rt.x, &res.power);
  res.multiplier = rt.x;
  return res;
}

DfSolution solve_df(const ChannelRealization& r, const Assignment& a,
                    const Pairing& pairing, const Budgets& budgets) {
  r.validate();
  budgets.validate();
  const int n = r.num_subcarriers;
  if (static_cast<int>(pairing.perm.size()) != n || !pairing.is_permutation())
    throw std::invalid_argument("solve_df: pairing is not a permutation");
  if (static_cast<int>(a.gain_rm.size()) != n ||
      static_cast<int>(a.gain_re.size()) != n)
    throw std::invalid_argument("solve_df: assignment dimension mismatch");

  const double s2 = r.noise_variance;
  // Gains in pair order: pair i couples first-slot subcarrier i with
  // second-slot subcarrier pairing.perm[i].
  std::vector<double> gsr(n), grm(n), gre(n);
  for (int i = 0; i < n; ++i) {
    const int o = pairing.perm[i];
    gsr[i] = r.gain_sr[i];
    grm[i] = a.gain_rm[o];
    gre[i] = a.gain_re[o];
  }

  DfSolution sol;
  sol.power.mode = Mode::DF;
  sol.power.ps.assign(n, 0.0);
  sol.power.pr.assign(n, 0.0);

  auto equalized_ps = [&](const std::vector<double>& pr) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sol.power.pr[i] = pr[i];
      sol.power.ps[i] = pr[i] > 0.0 ? pr[i] * grm[i] / gsr[i] : 0.0;
      sum += sol.power.ps[i];
    }
    return sum;
  };

  // (a) relay budget binding alone.
  const WaterfillResult relay_wf = secure_waterfill(grm, gre, budgets.relay, s2);
  if (relay_wf.all_degenerate) {
    sol.df_case = {DfCaseKind::RelayLimited, 0.0, 0.0};
    return sol;
  }
  const double source_spend = equalized_ps(relay_wf.power);
  if (source_spend <= budgets.source * (1.0 + 1e-9)) {
    sol.power.lambda = 0.0;
    sol.power.mu = relay_wf.multiplier;
    sol.df_case = {DfCaseKind::RelayLimited, 0.0, relay_wf.multiplier};
    return sol;
  }

  // (b) source budget binding alone: water-fill the first hop against the
  // effective eavesdropper gains gsr*gre/grm seen through equalization.
  std::vector<double> ge_eff(n);
  for (int i = 0; i < n; ++i) ge_eff[i] = gsr[i] * gre[i] / grm[i];
  const WaterfillResult source_wf =
      secure_waterfill(gsr, ge_eff, budgets.source, s2);
  double relay_spend = 0.0;
  for (int i = 0; i < n; ++i) {
    sol.power.ps[i] = source_wf.power[i];
    sol.power.pr[i] =
        source_wf.power[i] > 0.0 ? source_wf.power[i] * gsr[i] / grm[i] : 0.0;
    relay_spend += sol.power.pr[i];
  }
  if (relay_spend <= budgets.relay * (1.0 + 1e-9)) {
    sol.power.lambda = source_wf.multiplier;
    sol.power.mu = 0.0;
    sol.df_case = {DfCaseKind::SourceLimited, source_wf.multiplier, 0.0};
    return sol;
  }

  // (c) both budgets tight: per-pair multiplier mu + lambda*grm/gsr in the
  // relay-side stationarity condition; inner search meets the relay budget,
  // outer search meets the source budget.
  double mu_hi = 0.0;
  for (int i = 0; i < n; ++i)
    mu_hi = std::max(mu_hi, 0.5 * (grm[i] - gre[i]) / s2);

  std::vector<double> pr_work(n, 0.0);
  auto relay_spend_at = [&](double lambda, double mu) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double m = mu + lambda * grm[i] / gsr[i];
      pr_work[i] = waterfill_power(grm[i], gre[i], s2, m);
      sum += pr_work[i];
    }
    return sum;
  };
  auto inner_mu = [&](double lambda) -> double {
    const double at_zero = relay_spend_at(lambda, 0.0);
    if (at_zero <= budgets.relay) return 0.0;
    const RootResult rt = brent_root(
        [&](double mu) { return relay_spend_at(lambda, mu) - budgets.relay; },
        0.0, mu_hi, at_zero - budgets.relay, -budgets.relay, 1e-30 * mu_hi,
        1e-8 * budgets.relay, kMultiplierCap);
    if (!rt.converged)
      throw SolverError("solve_df: relay multiplier search hit iteration cap",
                        0.0, rt.fx);
    return rt.x;
  };
  auto source_spend_at = [&](double lambda) {
    const double mu = inner_mu(lambda);
    relay_spend_at(lambda, mu);
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      sum += pr_work[i] > 0.0 ? pr_work[i] * grm[i] / gsr[i] : 0.0;
    return sum;
  };

  double lambda_hi = 0.0;
  for (int i = 0; i < n; ++i)
    lambda_hi = std::max(lambda_hi,
                         0.5 * (grm[i] - gre[i]) * gsr[i] / (s2 * grm[i]));

  const RootResult rt = brent_root(
      [&](double lambda) { return source_spend_at(lambda) - budgets.source; },
      0.0, lambda_hi, source_spend - budgets.source, -budgets.source,
      1e-30 * lambda_hi, 1e-8 * budgets.source, kMultiplierCap);
  if (!rt.converged)
    throw SolverError("solve_df: source multiplier search hit iteration cap",
                      rt.fx, 0.0);

  const double lambda_star = rt.x;
  const double mu_star = inner_mu(lambda_star);
  relay_spend_at(lambda_star, mu_star);
  equalized_ps(pr_work);
  sol.power.lambda = lambda_star;
  sol.power.mu = mu_star;
  sol.df_case = {DfCaseKind::BothTight, lambda_star, mu_star};
  return sol;
}

}  // namespace secofdma
