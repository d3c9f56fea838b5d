#pragma once

#include <string>
#include <string_view>

#include "secofdma/types.hpp"

namespace secofdma {

/// Draw one quasi-static channel realization: gain = d^-alpha * E with E a
/// unit-mean exponential (Rayleigh amplitude squared). User positions are
/// drawn uniformly in the configured square, then per-link fading. Pure
/// function of the config: identical config (seeds included) gives a
/// bit-identical realization.
ChannelRealization generate_realization(const SystemConfig& cfg);

/// Serialize to the line-oriented text format below; load_realization parses
/// and validates it (dimensions, positivity, trailing sentinel).
///
///   secofdma-channel v1
///   subcarriers <N>
///   users <M>
///   noise_variance <sigma2>
///   gain_sr <N values>
///   gain_ru <m> <N values>     (one line per user, m = 0..M-1)
///   end
std::string save_realization(const ChannelRealization& r);
ChannelRealization load_realization(std::string_view text);

}  // namespace secofdma
