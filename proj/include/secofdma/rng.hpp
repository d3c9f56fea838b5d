#pragma once

#include <cmath>
#include <cstdint>

namespace secofdma {

// splitmix64 step. Used both as a seed mixer and as the simulation generator
// so realizations are bit-identical across platforms and standard libraries
// (std::<random> distributions are not portable at the bit level).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unit-mean exponential, strictly positive (low bit forced so u > 0).
  double exp_unit() {
    double u = static_cast<double>((next_u64() >> 11) | 1ULL) * 0x1.0p-53;
    return -std::log(u);
  }

 private:
  std::uint64_t state_;
};

// Decorrelated child seed for (master, index); used for per-trial streams so
// results depend only on the master seed and the trial index, never on
// scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x632be59bd9b4e019ULL * (index + 1));
  return splitmix64(s);
}

}  // namespace secofdma
