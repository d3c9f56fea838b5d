#include "secofdma/allocation.hpp"

namespace secofdma {

Assignment allocate(const ChannelRealization& r) {
  r.validate();
  const int n = r.num_subcarriers;
  const int m = r.num_users;

  Assignment a;
  a.user.resize(n);
  a.eav.resize(n);
  a.gain_rm.resize(n);
  a.gain_re.resize(n);

  for (int o = 0; o < n; ++o) {
    int best = 0;
    for (int u = 1; u < m; ++u)
      if (r.gain_ru[u][o] > r.gain_ru[best][o]) best = u;

    int second = best == 0 ? 1 : 0;
    for (int u = 0; u < m; ++u) {
      if (u == best) continue;
      if (r.gain_ru[u][o] > r.gain_ru[second][o]) second = u;
    }

    a.user[o] = best;
    a.eav[o] = second;
    a.gain_rm[o] = r.gain_ru[best][o];
    a.gain_re[o] = r.gain_ru[second][o];
  }
  return a;
}

}  // namespace secofdma
