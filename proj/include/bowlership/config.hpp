#pragma once

// Run configuration with flat key=value config files. Precedence is
// command-line flags over file values over defaults; t_i/t_p default per
// format when not set explicitly.

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include "bowlership/classify.hpp"
#include "bowlership/errors.hpp"
#include "bowlership/pairing.hpp"
#include "bowlership/types.hpp"

namespace bowlership {

struct RunConfig {
  std::string corpus_dir;
  MatchFormat format = MatchFormat::ODI;
  std::optional<int> t_i;  // per-format default when unset
  std::optional<int> t_p;
  double alpha = 0.05;
  int exact_cutoff = 20;
  IndividualSet individual_set = IndividualSet::AllOvers;
  bool charge_extras = true;
  std::optional<int> battery_min_overs;  // defaults to the resolved t_i
  uint64_t seed = 1;
  std::string output_dir = "out";

  PairingConfig resolved_pairing() const {
    PairingConfig cfg = PairingConfig::defaults_for(format);
    if (t_i) cfg.t_i = *t_i;
    if (t_p) cfg.t_p = *t_p;
    cfg.validate();
    return cfg;
  }

  int resolved_battery_floor() const {
    return battery_min_overs ? *battery_min_overs : resolved_pairing().t_i;
  }

  void validate() const {
    resolved_pairing();
    if (!(alpha > 0.0 && alpha < 1.0)) raise(errc::bad_config, "alpha must be in (0,1)");
    if (exact_cutoff < 2) raise(errc::bad_config, "exact_cutoff must be at least 2");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  raise(errc::bad_config, key + " wants a boolean, got '" + v + "'");
}

}  // namespace detail

inline IndividualSet parse_individual_set(const std::string& v) {
  if (v == "all_overs") return IndividualSet::AllOvers;
  if (v == "exclude_pair") return IndividualSet::ExcludePair;
  raise(errc::bad_config, "individual_set must be all_overs or exclude_pair, got '" + v + "'");
}

inline void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "corpus_dir") cfg.corpus_dir = value;
    else if (key == "format") cfg.format = parse_format(value);
    else if (key == "ti") cfg.t_i = std::stoi(value);
    else if (key == "tp") cfg.t_p = std::stoi(value);
    else if (key == "alpha") cfg.alpha = std::stod(value);
    else if (key == "exact_cutoff") cfg.exact_cutoff = std::stoi(value);
    else if (key == "individual_set") cfg.individual_set = parse_individual_set(value);
    else if (key == "charge_extras") cfg.charge_extras = detail::parse_bool(value, key);
    else if (key == "battery_min_overs") cfg.battery_min_overs = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "out") cfg.output_dir = value;
    else raise(errc::bad_config, "unknown config key '" + key + "'");
  } catch (const std::invalid_argument&) {
    raise(errc::bad_config, "bad value for '" + key + "': " + value);
  } catch (const std::out_of_range&) {
    raise(errc::bad_config, "value out of range for '" + key + "': " + value);
  }
}

// Lines are key=value; blank lines and #-comments are skipped.
inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot read config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      raise(errc::bad_config, path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_config_entry(cfg, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
  }
}

}  // namespace bowlership
