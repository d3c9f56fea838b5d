#pragma once

#include <cmath>

#include "secofdma/types.hpp"

namespace secofdma {

namespace detail {

// Operand of the AF secure-rate log: the ratio of destination to
// eavesdropper post-combining SNR terms in product form,
//   ((s2 + pr*grm)(s2 + ps*gsr + pr*gre)) /
//   ((s2 + pr*gre)(s2 + ps*gsr + pr*grm)).
// Equals 1 when pr = 0 or grm = gre.
inline double af_operand(double ps, double pr, double gsr, double grm,
                         double gre, double s2) {
  const double a = s2 + ps * gsr;
  return ((s2 + pr * grm) * (a + pr * gre)) /
         ((s2 + pr * gre) * (a + pr * grm));
}

// Natural-log halves; bits only at the boundary.
inline double af_rate_nats(double ps, double pr, double gsr, double grm,
                           double gre, double s2) {
  const double v = 0.5 * std::log(af_operand(ps, pr, gsr, grm, gre, s2));
  return v > 0.0 ? v : 0.0;
}

inline double df_rate_nats(double ps, double pr, double gsr, double grm,
                           double gre, double s2) {
  const double relay_in = std::log1p(ps * gsr / s2);
  const double dest = std::log1p(pr * grm / s2);
  const double eav = std::log1p(pr * gre / s2);
  const double v = 0.5 * (std::min(relay_in, dest) - eav);
  return v > 0.0 ? v : 0.0;
}

constexpr double kLn2 = 0.6931471805599453;

inline void check_rate_args(double ps, double pr, double gsr, double grm,
                            double gre, double s2) {
  if (!(std::isfinite(ps) && std::isfinite(pr) && std::isfinite(gsr) &&
        std::isfinite(grm) && std::isfinite(gre) && std::isfinite(s2)))
    throw std::invalid_argument("rate: non-finite input");
  if (ps < 0.0 || pr < 0.0 || gsr <= 0.0 || grm <= 0.0 || gre <= 0.0 ||
      s2 <= 0.0)
    throw std::invalid_argument("rate: powers must be >= 0, gains/noise > 0");
}

}  // namespace detail

/// Half-duplex AF secure rate for one subcarrier pair, bits/OFDM symbol.
/// Zero (clamped) whenever grm <= gre or pr = 0.
inline double secure_rate_af(double ps, double pr, double gsr, double grm,
                             double gre, double s2) {
  detail::check_rate_args(ps, pr, gsr, grm, gre, s2);
  return detail::af_rate_nats(ps, pr, gsr, grm, gre, s2) / detail::kLn2;
}

/// Half-duplex DF secure rate for one subcarrier pair, bits/OFDM symbol:
/// min of the two hop rates minus the eavesdropper rate, clamped at zero.
inline double secure_rate_df(double ps, double pr, double gsr, double grm,
                             double gre, double s2) {
  detail::check_rate_args(ps, pr, gsr, grm, gre, s2);
  return detail::df_rate_nats(ps, pr, gsr, grm, gre, s2) / detail::kLn2;
}

/// Sum of per-pair secure rates under a pairing; the clamp applies per
/// subcarrier, not to the sum. Rejects non-permutation pairings and
/// dimension mismatches.
RateReport sum_secure_rate(const ChannelRealization& r, const Assignment& a,
                           const Pairing& pairing, const PowerAllocation& p,
                           Mode mode);

}  // namespace secofdma
