#pragma once

#include <cmath>

#include "secofdma/types.hpp"

namespace secofdma {

namespace af {

/// Relay power maximizing the AF secure rate at fixed source power:
/// sqrt((s2^2 + ps*gsr*s2)/(grm*gre)). Interior stationary point of the rate
/// in pr; the rate rises before it and falls after.
inline double optimal_relay_power(double ps, double gsr, double grm,
                                  double gre, double s2) {
  return std::sqrt((s2 * s2 + ps * gsr * s2) / (grm * gre));
}

/// d/dps of the natural-log AF secure rate (no clamp). Strictly decreasing
/// in ps at fixed pr; the source-budget multiplier matches it on every
/// powered subcarrier.
inline double marginal_rate_ps(double ps, double pr, double gsr, double grm,
                               double gre, double s2) {
  const double a = s2 + ps * gsr;
  return 0.5 * pr * gsr * (grm - gre) / ((a + pr * grm) * (a + pr * gre));
}

/// d/dpr of the natural-log AF secure rate (no clamp). Positive below
/// optimal_relay_power(ps), zero at it, negative beyond; strictly decreasing
/// on [0, optimal_relay_power].
inline double marginal_rate_pr(double ps, double pr, double gsr, double grm,
                               double gre, double s2) {
  const double a = s2 + ps * gsr;
  const double lead =
      0.5 * ps * gsr * (grm - gre) / ((a + pr * grm) * (a + pr * gre));
  const double num = s2 * s2 + gsr * ps * s2 - grm * gre * pr * pr;
  return lead * num / ((s2 + pr * grm) * (s2 + pr * gre));
}

/// Second derivatives of the AF log operand (the ratio inside the log, not
/// the log itself), in closed form. Used for numerical convexity audits:
/// with grm >= gre, d2_ps is nonpositive everywhere; d2_pr and det keep
/// their concavity signs whenever pr <= optimal_relay_power and
/// pr*sqrt(grm*gre) >= s2.
struct OperandCurvature {
  double d2_ps = 0.0;   // d^2 O / d ps^2
  double d_ps_pr = 0.0; // d^2 O / d ps d pr
  double d2_pr = 0.0;   // d^2 O / d pr^2
  double det = 0.0;     // Hessian determinant
};

inline OperandCurvature operand_curvature(double ps, double pr, double gsr,
                                          double grm, double gre, double s2) {
  const double delta = grm - gre;
  const double d1 = gre * pr + s2;                  // eavesdropper first-hop term
  const double d2 = grm * pr + gsr * ps + s2;       // destination sum term
  const double b = grm * pr + s2;
  const double d2_3 = d2 * d2 * d2;

  OperandCurvature c;
  c.d2_ps = -2.0 * gsr * gsr * pr * delta * b / (d1 * d2_3);

  const double cross_num =
      gsr * ps * (grm * gre * pr * pr + 2.0 * grm * pr * s2 + s2 * s2) -
      b * (grm * gre * pr * pr - s2 * s2);
  c.d_ps_pr = gsr * delta * cross_num / (d1 * d1 * d2_3);

  const double asum = gsr * ps + s2;
  const double prr_num =
      grm * gre * pr * (3.0 * s2 * asum - grm * gre * pr * pr) +
      s2 * asum * (grm * s2 + gre * asum);
  c.d2_pr = -2.0 * gsr * ps * delta * prr_num / (d1 * d1 * d1 * d2_3);

  const double q = grm * gre * pr * pr - s2 * s2;
  const double det_num =
      q * (-q + 4.0 * gsr * ps * s2) + 4.0 * gsr * ps * s2 * s2 * d1;
  const double d1_4 = d1 * d1 * d1 * d1;
  c.det = gsr * gsr * delta * delta * det_num / (d1_4 * d2_3 * d2);
  return c;
}

}  // namespace af

/// Joint AF power allocation maximizing the secure sum rate subject to
/// Sum ps <= source budget and Sum pr <= relay budget. The source budget is
/// always spent in full; relay power never exceeds optimal_relay_power per
/// subcarrier. Degenerate subcarriers (gain_rm == gain_re) get zero power.
/// Throws SolverError if the multiplier search exhausts its iteration cap.
PowerAllocation solve_af(const ChannelRealization& r, const Assignment& a,
                         const Pairing& pairing, const Budgets& budgets);

}  // namespace secofdma
