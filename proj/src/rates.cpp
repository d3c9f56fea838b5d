#include "secofdma/rates.hpp"

namespace secofdma {

RateReport sum_secure_rate(const ChannelRealization& r, const Assignment& a,
                           const Pairing& pairing, const PowerAllocation& p,
                           Mode mode) {
  const int n = r.num_subcarriers;
  if (static_cast<int>(pairing.perm.size()) != n || !pairing.is_permutation())
    throw std::invalid_argument("sum_secure_rate: pairing is not a permutation");
  if (static_cast<int>(a.gain_rm.size()) != n ||
      static_cast<int>(a.gain_re.size()) != n)
    throw std::invalid_argument("sum_secure_rate: assignment dimension mismatch");
  if (static_cast<int>(p.ps.size()) != n || static_cast<int>(p.pr.size()) != n)
    throw std::invalid_argument("sum_secure_rate: power dimension mismatch");

  RateReport rep;
  rep.mode = mode;
  rep.per_subcarrier.resize(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const int o = pairing.perm[i];
    const double rate =
        mode == Mode::AF
            ? secure_rate_af(p.ps[i], p.pr[i], r.gain_sr[i], a.gain_rm[o],
                             a.gain_re[o], r.noise_variance)
            : secure_rate_df(p.ps[i], p.pr[i], r.gain_sr[i], a.gain_rm[o],
                             a.gain_re[o], r.noise_variance);
    rep.per_subcarrier[i] = rate;
    sum += rate;
  }
  rep.sum = sum;
  return rep;
}

}  // namespace secofdma
