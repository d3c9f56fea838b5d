#pragma once

#include <vector>

#include "secofdma/types.hpp"

namespace secofdma {

struct WaterfillResult {
  std::vector<double> power;
  double multiplier = 0.0;  // natural-log convention, 0 if nothing powered
  bool all_degenerate = false;
};

/// Secrecy-aware water-filling: spend `budget` across entries so that
///   s2 * (gain_m - gain_e) = 2 * multiplier * (s2 + p*gain_m) * (s2 + p*gain_e)
/// holds on every powered entry. Entries whose stationary power is
/// nonpositive at the final multiplier (including every gain_m <= gain_e
/// entry) get zero. All entries degenerate returns all-zero, flagged.
WaterfillResult secure_waterfill(const std::vector<double>& gain_m,
                                 const std::vector<double>& gain_e,
                                 double budget, double s2);

struct DfSolution {
  PowerAllocation power;
  DfCase df_case;
};

/// Joint DF power allocation. Hop SNRs are equalized on every powered pair
/// (ps*gsr = pr*grm), which reduces the joint problem to one water-fill:
/// relay-side when only the relay budget binds, source-side against
/// effective eavesdropper gains gsr*gre/grm when only the source budget
/// binds, and a nested multiplier search when both bind. The returned case
/// matches the complementary slackness of the allocation.
DfSolution solve_df(const ChannelRealization& r, const Assignment& a,
                    const Pairing& pairing, const Budgets& budgets);

}  // namespace secofdma
