#pragma once

#include "secofdma/types.hpp"

namespace secofdma {

/// Per relay->user subcarrier, assign the strongest user; the runner-up gain
/// is the equivalent eavesdropper level. Ties go to the lowest user index,
/// leaving gain_rm == gain_re (zero secure rate on that subcarrier). This
/// argmax rule is rate-optimal for every power allocation: any other winner
/// is out-eavesdropped by the true maximum.
Assignment allocate(const ChannelRealization& r);

}  // namespace secofdma
