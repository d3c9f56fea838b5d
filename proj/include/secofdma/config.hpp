#pragma once

#include <iosfwd>
#include <string>

#include "secofdma/harness.hpp"

namespace secofdma {

/// System defaults matching the reference table setup: 64 subcarriers,
/// 8 users, unit noise, path-loss exponent 3, source at the origin, relay
/// at (1, 0), users uniform in a unit square centered at (2, 0).
SystemConfig table_defaults();

/// Small instance suited to exhaustive checks: `subcarriers` in [1, 8],
/// two users, otherwise the table geometry.
SystemConfig desk_scale(int subcarriers);

/// Parses a scheme label like "opa:opt" or "epa:def".
SchemeSpec parse_scheme(const std::string& label);

/// Parses an INI-style experiment description.
///
/// ```
/// [system]
/// subcarriers = 64        ; int >= 1
/// users = 8               ; int >= 2
/// noise_db = 0            ; noise variance, dB
/// path_loss_exponent = 3
/// source = 0 0            ; x y
/// relay = 1 0
/// user_center = 2 0
/// user_side = 1
/// seed = 1
/// placement_seed = 7      ; optional: freeze user positions across trials
/// unit_fading = false
///
/// [experiment]
/// mode = af               ; af | df
/// trials = 100
/// sweep = ps              ; ps | pr
/// sweep_db = 0 2 4 6 8 10
/// fixed_ps_db = 6         ; source budget while sweeping pr
/// fixed_pr_db = 6         ; relay budget while sweeping ps
/// schemes = opa:opt, opa:def, epa:def
/// out = results.csv
/// max_solver_failures = 0
/// threads = 1
/// ```
///
/// Comments start with `;` or `#`. Unknown sections or keys are errors,
/// as are malformed values. Missing keys keep the defaults shown above.
ExperimentSpec parse_config(std::istream& in);

/// parse_config on the named file; throws std::runtime_error if unreadable.
ExperimentSpec load_config(const std::string& path);

}  // namespace secofdma
