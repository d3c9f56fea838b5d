#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace secofdma {

enum class Mode { AF, DF };

const char* to_string(Mode m);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

/// Static system parameters. All gain/power/noise quantities are linear;
/// dB conversion happens at the CLI/config boundary only.
struct SystemConfig {
  int num_subcarriers = 64;
  int num_users = 8;
  double noise_variance = 1.0;       // sigma^2
  double path_loss_exponent = 3.0;   // alpha >= 2
  Vec2 source_pos{0.0, 0.0};
  Vec2 relay_pos{1.0, 0.0};
  Vec2 user_region_center{2.0, 0.0}; // users drawn uniformly in a square
  double user_region_side = 1.0;     // side 0 pins all users to the center
  std::uint64_t rng_seed = 1;
  // When set, user placement is drawn from this seed instead of the fading
  // stream, so one drop can be reused across independent fading realizations.
  std::optional<std::uint64_t> placement_seed{};
  // Replaces every small-scale fading draw with 1.0 (path loss only).
  bool unit_fading = false;

  void validate() const;  // throws std::invalid_argument
};

/// Per-subcarrier link gains for one quasi-static frame. gain_sr[n] is the
/// source->relay gain on first-slot subcarrier n; gain_ru[m][n] is the
/// relay->user-m gain on second-slot subcarrier n.
struct ChannelRealization {
  int num_subcarriers = 0;
  int num_users = 0;
  double noise_variance = 1.0;
  std::vector<double> gain_sr;
  std::vector<std::vector<double>> gain_ru;

  void validate() const;  // throws std::invalid_argument
};

/// Winner user and equivalent eavesdropper per relay->user subcarrier.
/// gain_re[o] is the strongest non-intended user's gain on subcarrier o, so
/// gain_rm[o] >= gain_re[o] always; equality marks a degenerate subcarrier
/// whose secure rate is zero for any power pair.
struct Assignment {
  std::vector<int> user;       // winner index per subcarrier
  std::vector<int> eav;        // runner-up (equivalent eavesdropper)
  std::vector<double> gain_rm; // winner gain
  std::vector<double> gain_re; // eavesdropper gain
};

/// Subcarrier pairing: first-slot subcarrier n carries on over second-slot
/// subcarrier perm[n].
struct Pairing {
  std::vector<int> perm;
  bool is_permutation() const;
};

struct Budgets {
  double source = 1.0;  // P_S
  double relay = 1.0;   // P_R
  void validate() const;  // throws std::invalid_argument
};

/// Joint power allocation; ps[n] is source power on first-slot subcarrier n,
/// pr[n] is relay power on the paired second-slot subcarrier perm[n].
/// lambda/mu are the source/relay budget multipliers in the natural-log rate
/// convention (zero when the corresponding budget is slack).
struct PowerAllocation {
  std::vector<double> ps;
  std::vector<double> pr;
  double lambda = 0.0;
  double mu = 0.0;
  Mode mode = Mode::AF;
};

/// Which budget binds a decode-and-forward allocation.
enum class DfCaseKind { RelayLimited, SourceLimited, BothTight };

const char* to_string(DfCaseKind k);

struct DfCase {
  DfCaseKind kind = DfCaseKind::RelayLimited;
  double lambda = 0.0;  // source-budget multiplier
  double mu = 0.0;      // relay-budget multiplier
};

/// Secure sum rate, bits per OFDM symbol; per_subcarrier is indexed by the
/// first-slot subcarrier of each pair.
struct RateReport {
  std::vector<double> per_subcarrier;
  double sum = 0.0;
  Mode mode = Mode::AF;
};

/// Scalar pairing-quality gain per pair (n, perm[n]); smaller spread across
/// pairs predicts a better pairing.
struct EffectiveGains {
  std::vector<double> value;
  Mode mode = Mode::AF;
};

/// Thrown when an iterative solver exhausts its iteration cap. Carries the
/// budget residuals at the last iterate for diagnostics.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double source_residual,
              double relay_residual);
  double source_residual() const { return source_residual_; }
  double relay_residual() const { return relay_residual_; }

 private:
  double source_residual_;
  double relay_residual_;
};

}  // namespace secofdma
