#include "secofdma/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace secofdma {

namespace {

std::vector<int> order_desc(const std::vector<double>& key) {
  std::vector<int> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    if (key[i] != key[j]) return key[i] > key[j];
    return i < j;
  });
  return idx;
}

// Rank matching: k-th largest first key pairs with k-th largest second key.
Pairing match_sorted(const std::vector<double>& key_first,
                     const std::vector<double>& key_second) {
  const auto a = order_desc(key_first);
  const auto b = order_desc(key_second);
  Pairing p;
  p.perm.resize(key_first.size());
  for (size_t k = 0; k < a.size(); ++k) p.perm[a[k]] = b[k];
  return p;
}

void check_inputs(const ChannelRealization& r, const Assignment& a) {
  r.validate();
  if (static_cast<int>(a.gain_rm.size()) != r.num_subcarriers ||
      static_cast<int>(a.gain_re.size()) != r.num_subcarriers)
    throw std::invalid_argument("pairing: assignment dimension mismatch");
}

Pairing pair_df_energy(const ChannelRealization& r, const Assignment& a,
                       const WaterfillResult& relay_wf) {
  std::vector<double> key(r.num_subcarriers);
  for (int o = 0; o < r.num_subcarriers; ++o)
    key[o] = relay_wf.power[o] * a.gain_rm[o];
  return match_sorted(r.gain_sr, key);
}

Pairing pair_df_ratio(const ChannelRealization& r, const Assignment& a) {
  std::vector<double> key(r.num_subcarriers);
  for (int o = 0; o < r.num_subcarriers; ++o)
    key[o] = a.gain_rm[o] / a.gain_re[o];
  return match_sorted(r.gain_sr, key);
}

double source_spend(const ChannelRealization& r, const Assignment& a,
                    const Pairing& p, const WaterfillResult& relay_wf) {
  double sum = 0.0;
  for (int i = 0; i < r.num_subcarriers; ++i) {
    const int o = p.perm[i];
    if (relay_wf.power[o] > 0.0)
      sum += relay_wf.power[o] * a.gain_rm[o] / r.gain_sr[i];
  }
  return sum;
}

}  // namespace

Pairing pair_default(int num_subcarriers) {
  Pairing p;
  p.perm.resize(num_subcarriers);
  std::iota(p.perm.begin(), p.perm.end(), 0);
  return p;
}

Pairing pair_ordered(const ChannelRealization& r, const Assignment& a) {
  check_inputs(r, a);
  return match_sorted(r.gain_sr, a.gain_rm);
}

Pairing pair_af(const ChannelRealization& r, const Assignment& a) {
  check_inputs(r, a);
  std::vector<double> key(r.num_subcarriers);
  for (int o = 0; o < r.num_subcarriers; ++o)
    key[o] = (a.gain_rm[o] - a.gain_re[o]) /
             std::sqrt(a.gain_rm[o] * a.gain_re[o]);
  return match_sorted(r.gain_sr, key);
}

std::pair<Pairing, DfCase> pair_df(const ChannelRealization& r,
                                   const Assignment& a,
                                   const Budgets& budgets) {
  check_inputs(r, a);
  budgets.validate();
  const WaterfillResult relay_wf =
      secure_waterfill(a.gain_rm, a.gain_re, budgets.relay, r.noise_variance);
  if (relay_wf.all_degenerate)
    return {pair_default(r.num_subcarriers),
            DfCase{DfCaseKind::RelayLimited, 0.0, 0.0}};

  Pairing energy = pair_df_energy(r, a, relay_wf);
  if (source_spend(r, a, energy, relay_wf) <=
      budgets.source * (1.0 + 1e-9))
    return {std::move(energy),
            DfCase{DfCaseKind::RelayLimited, 0.0, relay_wf.multiplier}};
  return {pair_df_ratio(r, a), DfCase{DfCaseKind::SourceLimited, 0.0, 0.0}};
}

DfPlan plan_df(const ChannelRealization& r, const Assignment& a,
               const Budgets& budgets) {
  auto [pairing, guess] = pair_df(r, a, budgets);
  DfSolution sol = solve_df(r, a, pairing, budgets);
  const auto family = [](DfCaseKind k) {
    return k == DfCaseKind::SourceLimited ? 1 : 0;
  };
  if (family(sol.df_case.kind) != family(guess.kind)) {
    if (family(sol.df_case.kind) == 1) {
      pairing = pair_df_ratio(r, a);
    } else {
      const WaterfillResult relay_wf = secure_waterfill(
          a.gain_rm, a.gain_re, budgets.relay, r.noise_variance);
      pairing = pair_df_energy(r, a, relay_wf);
    }
    sol = solve_df(r, a, pairing, budgets);
  }
  return {std::move(pairing), std::move(sol.power), sol.df_case};
}

EffectiveGains effective_gains(const ChannelRealization& r,
                               const Assignment& a, const Pairing& pairing,
                               Mode mode) {
  check_inputs(r, a);
  if (static_cast<int>(pairing.perm.size()) != r.num_subcarriers ||
      !pairing.is_permutation())
    throw std::invalid_argument("effective_gains: pairing is not a permutation");
  EffectiveGains g;
  g.mode = mode;
  g.value.resize(r.num_subcarriers);
  for (int i = 0; i < r.num_subcarriers; ++i) {
    const int o = pairing.perm[i];
    const double gsr = r.gain_sr[i];
    const double grm = a.gain_rm[o];
    const double gre = a.gain_re[o];
    g.value[i] = mode == Mode::DF
                     ? (grm / gre - 1.0) / gsr
                     : (grm - gre) / std::sqrt(gsr * grm * gre);
  }
  return g;
}

double gain_variance(const EffectiveGains& g) {
  if (g.value.empty()) return 0.0;
  const double n = static_cast<double>(g.value.size());
  double mean = 0.0;
  for (double v : g.value) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : g.value) var += (v - mean) * (v - mean);
  return var / n;
}

}  // namespace secofdma
