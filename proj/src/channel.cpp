#include "secofdma/channel.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "secofdma/rng.hpp"

namespace secofdma {

namespace {

// Stream tags keep placement and fading decorrelated under one master seed.
constexpr std::uint64_t kPlacementStream = 0x706c6163;  // "plac"
constexpr std::uint64_t kFadingStream = 0x66616465;     // "fade"

double path_gain(double dist, double alpha) {
  return std::pow(dist, -alpha);
}

}  // namespace

ChannelRealization generate_realization(const SystemConfig& cfg) {
  cfg.validate();

  Rng placement(cfg.placement_seed ? *cfg.placement_seed
                                   : derive_seed(cfg.rng_seed, kPlacementStream));
  Rng fading(derive_seed(cfg.rng_seed, kFadingStream));

  const int n = cfg.num_subcarriers;
  const int m = cfg.num_users;
  const double alpha = cfg.path_loss_exponent;
  const double half = 0.5 * cfg.user_region_side;

  std::vector<Vec2> users(m);
  for (auto& u : users) {
    u.x = cfg.user_region_center.x + placement.uniform(-half, half);
    u.y = cfg.user_region_center.y + placement.uniform(-half, half);
  }

  ChannelRealization r;
  r.num_subcarriers = n;
  r.num_users = m;
  r.noise_variance = cfg.noise_variance;

  const double d_sr = distance(cfg.source_pos, cfg.relay_pos);
  const double g_sr = path_gain(d_sr, alpha);
  r.gain_sr.resize(n);
  for (int i = 0; i < n; ++i)
    r.gain_sr[i] = g_sr * (cfg.unit_fading ? 1.0 : fading.exp_unit());

  r.gain_ru.resize(m);
  for (int u = 0; u < m; ++u) {
    const double d = distance(cfg.relay_pos, users[u]);
    if (!(d > 0.0))
      throw std::invalid_argument("channel: user placed on top of the relay");
    const double g = path_gain(d, alpha);
    r.gain_ru[u].resize(n);
    for (int i = 0; i < n; ++i)
      r.gain_ru[u][i] = g * (cfg.unit_fading ? 1.0 : fading.exp_unit());
  }

  r.validate();
  return r;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string save_realization(const ChannelRealization& r) {
  r.validate();
  std::string out = "secofdma-channel v1\n";
  out += "subcarriers " + std::to_string(r.num_subcarriers) + "\n";
  out += "users " + std::to_string(r.num_users) + "\n";
  out += "noise_variance ";
  append_double(out, r.noise_variance);
  out += "\n";
  out += "gain_sr";
  for (double g : r.gain_sr) {
    out += ' ';
    append_double(out, g);
  }
  out += "\n";
  for (int u = 0; u < r.num_users; ++u) {
    out += "gain_ru " + std::to_string(u);
    for (double g : r.gain_ru[u]) {
      out += ' ';
      append_double(out, g);
    }
    out += "\n";
  }
  out += "end\n";
  return out;
}

ChannelRealization load_realization(std::string_view text) {
  std::istringstream in{std::string(text)};
  auto fail = [](const std::string& why) -> ChannelRealization {
    throw std::invalid_argument("channel document: " + why);
  };

  std::string word, version;
  if (!(in >> word >> version) || word != "secofdma-channel" ||
      version != "v1")
    return fail("bad header");

  ChannelRealization r;
  if (!(in >> word >> r.num_subcarriers) || word != "subcarriers")
    return fail("missing subcarriers");
  if (!(in >> word >> r.num_users) || word != "users")
    return fail("missing users");
  if (!(in >> word >> r.noise_variance) || word != "noise_variance")
    return fail("missing noise_variance");
  if (r.num_subcarriers < 1 || r.num_users < 2)
    return fail("bad dimensions");

  if (!(in >> word) || word != "gain_sr") return fail("missing gain_sr");
  r.gain_sr.resize(r.num_subcarriers);
  for (double& g : r.gain_sr)
    if (!(in >> g)) return fail("truncated gain_sr row");

  r.gain_ru.resize(r.num_users);
  for (int u = 0; u < r.num_users; ++u) {
    int idx = -1;
    if (!(in >> word >> idx) || word != "gain_ru" || idx != u)
      return fail("missing gain_ru row " + std::to_string(u));
    r.gain_ru[u].resize(r.num_subcarriers);
    for (double& g : r.gain_ru[u])
      if (!(in >> g)) return fail("truncated gain_ru row");
  }
  if (!(in >> word) || word != "end") return fail("missing end sentinel");

  r.validate();
  return r;
}

}  // namespace secofdma
