#pragma once

#include <cstdint>
#include <vector>

#include "secofdma/types.hpp"

namespace secofdma {

struct OracleResult {
  Pairing pairing;
  PowerAllocation power;
  double rate = 0.0;  // bits/OFDM symbol (sum over subcarriers)
  long long evaluations = 0;
};

/// Exhaustive subcarrier-pairing search: every permutation, optimally
/// powered, lexicographic enumeration, exact-rate ties keep the earliest
/// (lexicographically smallest) permutation. Capped at 8 subcarriers.
OracleResult brute_force_scp(const ChannelRealization& r, const Assignment& a,
                             const Budgets& budgets, Mode mode);

/// Derivative-free reference power search for a fixed pairing: multi-start
/// projected coordinate ascent (single-coordinate moves plus pairwise budget
/// transfers), each line search a shrinking grid of `grid_resolution` points.
/// Stops when a full sweep improves the rate by less than 1e-8 bits.
/// Deterministic given (seed, grid_resolution). Capped at 4 subcarriers;
/// grid_resolution below 9 is rejected. `trace`, when given, records the
/// iterate after every sweep of every start.
PowerAllocation solve_power_bruteforce(
    const ChannelRealization& r, const Assignment& a, const Pairing& pairing,
    const Budgets& budgets, Mode mode, int grid_resolution = 17,
    std::uint64_t seed = 0x0bac1e5eedULL,
    std::vector<PowerAllocation>* trace = nullptr);

}  // namespace secofdma
