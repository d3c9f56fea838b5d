#include "secofdma/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace secofdma {

SystemConfig table_defaults() {
  SystemConfig cfg;
  cfg.num_subcarriers = 64;
  cfg.num_users = 8;
  cfg.noise_variance = 1.0;
  cfg.path_loss_exponent = 3.0;
  cfg.source_pos = {0.0, 0.0};
  cfg.relay_pos = {1.0, 0.0};
  cfg.user_region_center = {2.0, 0.0};
  cfg.user_region_side = 1.0;
  cfg.rng_seed = 1;
  return cfg;
}

SystemConfig desk_scale(int subcarriers) {
  if (subcarriers < 1 || subcarriers > 8)
    throw std::invalid_argument("desk_scale: subcarriers must be in [1, 8]");
  SystemConfig cfg = table_defaults();
  cfg.num_subcarriers = subcarriers;
  cfg.num_users = 2;
  return cfg;
}

SchemeSpec parse_scheme(const std::string& label) {
  const auto colon = label.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("scheme label needs power:pairing, got '" +
                                label + "'");
  const std::string power = label.substr(0, colon);
  const std::string pairing = label.substr(colon + 1);
  SchemeSpec s;
  if (power == "opa")
    s.power = PowerScheme::OPA;
  else if (power == "epa")
    s.power = PowerScheme::EPA;
  else
    throw std::invalid_argument("unknown power scheme '" + power + "'");
  if (pairing == "def")
    s.pairing = PairingScheme::Default;
  else if (pairing == "opt")
    s.pairing = PairingScheme::Optimized;
  else if (pairing == "op")
    s.pairing = PairingScheme::Ordered;
  else if (pairing == "brute")
    s.pairing = PairingScheme::BruteForce;
  else
    throw std::invalid_argument("unknown pairing scheme '" + pairing + "'");
  return s;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " +
                              message);
}

double parse_double(const std::string& value, int line) {
  try {
    size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(x))
      fail(line, "bad number '" + value + "'");
    return x;
  } catch (const std::invalid_argument&) {
    fail(line, "bad number '" + value + "'");
  } catch (const std::out_of_range&) {
    fail(line, "number out of range '" + value + "'");
  }
}

int parse_int(const std::string& value, int line) {
  try {
    size_t used = 0;
    const long x = std::stol(value, &used);
    if (used != value.size() || x < INT32_MIN || x > INT32_MAX)
      fail(line, "bad integer '" + value + "'");
    return static_cast<int>(x);
  } catch (const std::invalid_argument&) {
    fail(line, "bad integer '" + value + "'");
  } catch (const std::out_of_range&) {
    fail(line, "integer out of range '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& value, int line) {
  try {
    size_t used = 0;
    const unsigned long long x = std::stoull(value, &used);
    if (used != value.size()) fail(line, "bad seed '" + value + "'");
    return x;
  } catch (const std::invalid_argument&) {
    fail(line, "bad seed '" + value + "'");
  } catch (const std::out_of_range&) {
    fail(line, "seed out of range '" + value + "'");
  }
}

bool parse_bool(const std::string& value, int line) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  fail(line, "bad boolean '" + value + "'");
}

std::vector<std::string> split_items(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  for (char c : value) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty()) items.push_back(item);
      item.clear();
    } else {
      item.push_back(c);
    }
  }
  if (!item.empty()) items.push_back(item);
  return items;
}

Vec2 parse_vec2(const std::string& value, int line) {
  const auto items = split_items(value);
  if (items.size() != 2) fail(line, "expected two coordinates, got '" + value + "'");
  return {parse_double(items[0], line), parse_double(items[1], line)};
}

}  // namespace

ExperimentSpec parse_config(std::istream& in) {
  ExperimentSpec spec;
  spec.system = table_defaults();
  spec.schemes = {parse_scheme("opa:opt"), parse_scheme("opa:def"),
                  parse_scheme("epa:def")};
  spec.sweep_db = {0, 2, 4, 6, 8, 10};

  std::string section;
  std::string raw;
  int line = 0;
  bool saw_noise_db = false;
  double noise_db = 0.0;
  while (std::getline(in, raw)) {
    ++line;
    const auto comment = raw.find_first_of(";#");
    if (comment != std::string::npos) raw.erase(comment);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail(line, "unterminated section header");
      section = trim(text.substr(1, text.size() - 2));
      if (section != "system" && section != "experiment")
        fail(line, "unknown section '" + section + "'");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (value.empty()) fail(line, "empty value for '" + key + "'");

    if (section == "system") {
      if (key == "subcarriers")
        spec.system.num_subcarriers = parse_int(value, line);
      else if (key == "users")
        spec.system.num_users = parse_int(value, line);
      else if (key == "noise_db") {
        noise_db = parse_double(value, line);
        saw_noise_db = true;
      } else if (key == "path_loss_exponent")
        spec.system.path_loss_exponent = parse_double(value, line);
      else if (key == "source")
        spec.system.source_pos = parse_vec2(value, line);
      else if (key == "relay")
        spec.system.relay_pos = parse_vec2(value, line);
      else if (key == "user_center")
        spec.system.user_region_center = parse_vec2(value, line);
      else if (key == "user_side")
        spec.system.user_region_side = parse_double(value, line);
      else if (key == "seed")
        spec.system.rng_seed = parse_u64(value, line);
      else if (key == "placement_seed")
        spec.system.placement_seed = parse_u64(value, line);
      else if (key == "unit_fading")
        spec.system.unit_fading = parse_bool(value, line);
      else
        fail(line, "unknown system key '" + key + "'");
    } else if (section == "experiment") {
      if (key == "mode") {
        if (value == "af")
          spec.mode = Mode::AF;
        else if (value == "df")
          spec.mode = Mode::DF;
        else
          fail(line, "mode must be af or df, got '" + value + "'");
      } else if (key == "trials")
        spec.trials = parse_int(value, line);
      else if (key == "sweep") {
        if (value == "ps")
          spec.sweep_axis = SweepAxis::SourcePower;
        else if (value == "pr")
          spec.sweep_axis = SweepAxis::RelayPower;
        else
          fail(line, "sweep must be ps or pr, got '" + value + "'");
      } else if (key == "sweep_db") {
        spec.sweep_db.clear();
        for (const std::string& item : split_items(value))
          spec.sweep_db.push_back(parse_double(item, line));
        if (spec.sweep_db.empty()) fail(line, "empty sweep_db");
      } else if (key == "fixed_ps_db")
        spec.fixed_source_db = parse_double(value, line);
      else if (key == "fixed_pr_db")
        spec.fixed_relay_db = parse_double(value, line);
      else if (key == "schemes") {
        spec.schemes.clear();
        for (const std::string& item : split_items(value)) {
          try {
            spec.schemes.push_back(parse_scheme(item));
          } catch (const std::invalid_argument& e) {
            fail(line, e.what());
          }
        }
        if (spec.schemes.empty()) fail(line, "empty scheme list");
      } else if (key == "out")
        spec.output_path = value;
      else if (key == "max_solver_failures")
        spec.max_solver_failures = parse_int(value, line);
      else if (key == "threads")
        spec.threads = parse_int(value, line);
      else
        fail(line, "unknown experiment key '" + key + "'");
    } else {
      fail(line, "key '" + key + "' outside any section");
    }
  }
  if (saw_noise_db) spec.system.noise_variance = std::pow(10.0, noise_db / 10.0);
  spec.validate();
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace secofdma
