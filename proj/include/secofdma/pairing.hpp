#pragma once

#include <utility>

#include "secofdma/power_df.hpp"
#include "secofdma/types.hpp"

namespace secofdma {

/// Identity pairing: first-slot subcarrier n forwards on second-slot
/// subcarrier n.
Pairing pair_default(int num_subcarriers);

/// Rank matching: k-th strongest source->relay subcarrier forwards on the
/// k-th strongest relay->user subcarrier (winner gain). Sort ties break by
/// subcarrier index.
Pairing pair_ordered(const ChannelRealization& r, const Assignment& a);

/// AF-tailored rank matching: source->relay gains against the secrecy ratio
/// (grm - gre)/sqrt(grm*gre) of the second slot.
Pairing pair_af(const ChannelRealization& r, const Assignment& a);

/// DF-tailored pairing with the budget-case decision folded in. When the
/// relay-side water-fill alone fits the source budget, strong first-hop
/// subcarriers take the pairs that are expensive to feed (key pr*grm),
/// minimizing total source spend; otherwise the key is the secrecy ratio
/// grm/gre. Returns the detected case (multipliers filled in by solve_df).
std::pair<Pairing, DfCase> pair_df(const ChannelRealization& r,
                                   const Assignment& a, const Budgets& budgets);

struct DfPlan {
  Pairing pairing;
  PowerAllocation power;
  DfCase df_case;
};

/// pair_df followed by solve_df; if the solver lands in the other budget
/// family than the pairing assumed (boundary instances), one re-pairing pass
/// runs and the loop stops. BothTight pairs with the relay-limited keys.
DfPlan plan_df(const ChannelRealization& r, const Assignment& a,
               const Budgets& budgets);

/// Scalar pairing-quality gain per pair: (grm/gre - 1)/gsr for DF,
/// (grm - gre)/sqrt(gsr*grm*gre) for AF. Degenerate pairs contribute zero.
EffectiveGains effective_gains(const ChannelRealization& r,
                               const Assignment& a, const Pairing& pairing,
                               Mode mode);

/// Population variance of the effective gains; the best pairing drives this
/// spread down.
double gain_variance(const EffectiveGains& g);

}  // namespace secofdma
