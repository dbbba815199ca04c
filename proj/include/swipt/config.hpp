#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swipt/errors.hpp"
#include "swipt/scheme.hpp"

namespace swipt {

/// Scalar parameters of one simulation run. Powers are W/Hz, energies J
/// (e_p is converted to J/Hz through the bandwidth unless e_p_per_hz is set).
struct SimConfig {
  std::size_t n_secondary = 50;
  std::size_t slots = 4000;
  double slot_duration = 1e-3;  // s
  double bandwidth = 1e6;       // Hz
  double eta = 0.8;
  double kappa = 1e-8;
  double p_s = 1e-7;
  std::optional<double> p_c;  // defaults to p_s
  double e_p = 50e-6;
  bool e_p_per_hz = false;
  std::size_t k_r = 5;
  std::optional<std::size_t> k_beam;  // defaults to N - 2
  double alpha = 0.5;
  SchemeId scheme = SchemeId::First;
  std::uint64_t seed = 1;
  double mean_gain = 1.0;
  bool omp_normalized = true;
  double omp_tolerance = 1e-12;
  // Model variants, all off by default:
  // Second-PSA interference from each interferer's own link gain,
  bool interference_own_link_gain = false;
  // sqrt(P_p) in place of P_p in the relay covariance,
  bool relay_cov_sqrt_power = false;
  // relay-branch SNR without the P_p factor.
  bool relay_snr_omit_power = false;

  double cooperation_power() const { return p_c.value_or(p_s); }

  /// Constant PT energy supply per slot, J/Hz.
  double e_p_joule_per_hz() const { return e_p_per_hz ? e_p : e_p / bandwidth; }

  /// Requested beamforming set size before clamping.
  std::size_t requested_beam_size() const { return k_beam.value_or(n_secondary - 2); }

  /// Beamforming set size actually usable once a data pair is excluded.
  std::size_t beam_size() const { return std::min(requested_beam_size(), n_secondary - 2); }
  bool beam_clamped() const { return requested_beam_size() > n_secondary - 2; }

  void validate() const {
    auto positive = [](const char* key, double v) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be positive");
    };
    if (n_secondary < 2 || n_secondary % 2 != 0)
      throw ConfigError("n_secondary", "must be an even integer >= 2");
    if (slots < 1) throw ConfigError("slots", "must be >= 1");
    positive("slot_duration", slot_duration);
    positive("bandwidth", bandwidth);
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta", "must lie in [0, 1]");
    positive("kappa", kappa);
    positive("p_s", p_s);
    if (p_c) positive("p_c", *p_c);
    if (!(e_p >= 0.0) || !std::isfinite(e_p)) throw ConfigError("e_p", "must be non-negative");
    if (k_r > n_secondary) throw ConfigError("k_r", "must not exceed n_secondary");
    if (k_beam && *k_beam < 1) throw ConfigError("k_beam", "must be >= 1");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("alpha", "must lie in [0, 1)");
    positive("mean_gain", mean_gain);
    positive("omp_tolerance", omp_tolerance);
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "'");
  return value;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(std::string(key), "expected true/false, got '" + std::string(text) + "'");
}

using Setter = std::function<void(SimConfig&, std::string_view key, std::string_view value)>;

inline const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto size_field = [](std::size_t SimConfig::*f) {
      return [f](SimConfig& c, std::string_view k, std::string_view v) {
        c.*f = parse_number<std::size_t>(k, v);
      };
    };
    auto real_field = [](double SimConfig::*f) {
      return [f](SimConfig& c, std::string_view k, std::string_view v) {
        c.*f = parse_number<double>(k, v);
      };
    };
    auto bool_field = [](bool SimConfig::*f) {
      return [f](SimConfig& c, std::string_view k, std::string_view v) { c.*f = parse_bool(k, v); };
    };
    t["n_secondary"] = size_field(&SimConfig::n_secondary);
    t["slots"] = size_field(&SimConfig::slots);
    t["slot_duration"] = real_field(&SimConfig::slot_duration);
    t["bandwidth"] = real_field(&SimConfig::bandwidth);
    t["eta"] = real_field(&SimConfig::eta);
    t["kappa"] = real_field(&SimConfig::kappa);
    t["p_s"] = real_field(&SimConfig::p_s);
    t["p_c"] = [](SimConfig& c, std::string_view k, std::string_view v) {
      c.p_c = parse_number<double>(k, v);
    };
    t["e_p"] = real_field(&SimConfig::e_p);
    t["e_p_per_hz"] = bool_field(&SimConfig::e_p_per_hz);
    t["k_r"] = size_field(&SimConfig::k_r);
    t["k_beam"] = [](SimConfig& c, std::string_view k, std::string_view v) {
      if (v == "auto")
        c.k_beam.reset();
      else
        c.k_beam = parse_number<std::size_t>(k, v);
    };
    t["alpha"] = real_field(&SimConfig::alpha);
    t["scheme"] = [](SimConfig& c, std::string_view k, std::string_view v) {
      const auto id = scheme_from_name(v);
      if (!id) throw ConfigError(std::string(k), "unknown scheme '" + std::string(v) + "'");
      c.scheme = *id;
    };
    t["seed"] = [](SimConfig& c, std::string_view k, std::string_view v) {
      c.seed = parse_number<std::uint64_t>(k, v);
    };
    t["mean_gain"] = real_field(&SimConfig::mean_gain);
    t["omp_normalized"] = bool_field(&SimConfig::omp_normalized);
    t["omp_tolerance"] = real_field(&SimConfig::omp_tolerance);
    t["interference_own_link_gain"] = bool_field(&SimConfig::interference_own_link_gain);
    t["relay_cov_sqrt_power"] = bool_field(&SimConfig::relay_cov_sqrt_power);
    t["relay_snr_omit_power"] = bool_field(&SimConfig::relay_snr_omit_power);
    return t;
  }();
  return table;
}

}  // namespace detail

/// Every key accepted in a config file or as a --key flag.
inline std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : detail::setters()) keys.push_back(k);
  return keys;
}

/// Applies one key/value pair; unknown keys are rejected.
inline void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value) {
  const auto& table = detail::setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError(std::string(key), "unknown key");
  it->second(cfg, key, detail::trim(value));
}

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Builds a validated config from `key = value` text (`#` starts a comment)
/// and flag overrides. Precedence: overrides, then file, then defaults.
inline SimConfig parse_config(std::string_view text, const Overrides& overrides = {}) {
  SimConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError(line_no, "expected 'key = value'");
    if (!detail::setters().contains(key))
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    apply_setting(cfg, key, value);
  }
  for (const auto& [key, value] : overrides) apply_setting(cfg, key, value);
  cfg.validate();
  return cfg;
}

}  // namespace swipt
