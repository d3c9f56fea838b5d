#include "secofdma/types.hpp"

#include <cmath>

namespace secofdma {

const char* to_string(Mode m) { return m == Mode::AF ? "af" : "df"; }

const char* to_string(DfCaseKind k) {
  switch (k) {
    case DfCaseKind::RelayLimited: return "relay-limited";
    case DfCaseKind::SourceLimited: return "source-limited";
    case DfCaseKind::BothTight: return "both-tight";
  }
  return "?";
}

double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void SystemConfig::validate() const {
  if (num_subcarriers < 1)
    throw std::invalid_argument("config: num_subcarriers must be >= 1");
  if (num_users < 2)
    throw std::invalid_argument("config: num_users must be >= 2");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
    throw std::invalid_argument("config: noise_variance must be positive");
  if (!(path_loss_exponent >= 2.0) || !std::isfinite(path_loss_exponent))
    throw std::invalid_argument("config: path_loss_exponent must be >= 2");
  if (!(user_region_side >= 0.0) || !std::isfinite(user_region_side))
    throw std::invalid_argument("config: user_region_side must be >= 0");
  if (distance(source_pos, relay_pos) <= 0.0)
    throw std::invalid_argument("config: relay must be distinct from source");
}

void ChannelRealization::validate() const {
  if (num_subcarriers < 1)
    throw std::invalid_argument("realization: num_subcarriers must be >= 1");
  if (num_users < 2)
    throw std::invalid_argument("realization: num_users must be >= 2");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
    throw std::invalid_argument("realization: noise_variance must be positive");
  if (static_cast<int>(gain_sr.size()) != num_subcarriers)
    throw std::invalid_argument("realization: gain_sr dimension mismatch");
  if (static_cast<int>(gain_ru.size()) != num_users)
    throw std::invalid_argument("realization: gain_ru dimension mismatch");
  for (double g : gain_sr)
    if (!(g > 0.0) || !std::isfinite(g))
      throw std::invalid_argument("realization: gains must be positive finite");
  for (const auto& row : gain_ru) {
    if (static_cast<int>(row.size()) != num_subcarriers)
      throw std::invalid_argument("realization: gain_ru row length mismatch");
    for (double g : row)
      if (!(g > 0.0) || !std::isfinite(g))
        throw std::invalid_argument(
            "realization: gains must be positive finite");
  }
}

bool Pairing::is_permutation() const {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

void Budgets::validate() const {
  if (!(source > 0.0) || !std::isfinite(source))
    throw std::invalid_argument("budgets: source budget must be positive");
  if (!(relay > 0.0) || !std::isfinite(relay))
    throw std::invalid_argument("budgets: relay budget must be positive");
}

SolverError::SolverError(const std::string& what, double source_residual,
                         double relay_residual)
    : std::runtime_error(what),
      source_residual_(source_residual),
      relay_residual_(relay_residual) {}

}  // namespace secofdma
