#pragma once

#include <array>
#include <string>
#include <vector>

#include "bowlership/errors.hpp"

namespace bowlership {

enum class MatchFormat { Test, ODI, T20I };

inline const char* format_name(MatchFormat f) {
  switch (f) {
    case MatchFormat::Test: return "Test";
    case MatchFormat::ODI: return "ODI";
    case MatchFormat::T20I: return "T20I";
  }
  return "?";
}

// Lowercase tag used in file names (deliveries_odi.csv etc.).
inline std::string format_tag(MatchFormat f) {
  switch (f) {
    case MatchFormat::Test: return "test";
    case MatchFormat::ODI: return "odi";
    case MatchFormat::T20I: return "t20i";
  }
  return "?";
}

// Accepts the canonical names plus the cricsheet match_type spellings
// ("Test", "ODI", "T20").
inline MatchFormat parse_format(const std::string& s) {
  if (s == "Test" || s == "TEST" || s == "test") return MatchFormat::Test;
  if (s == "ODI" || s == "odi") return MatchFormat::ODI;
  if (s == "T20" || s == "T20I" || s == "t20" || s == "t20i") return MatchFormat::T20I;
  raise(errc::unknown_format, "match_type '" + s + "' is not Test/ODI/T20");
}

struct Extras {
  int wides = 0;
  int noballs = 0;
  int byes = 0;
  int legbyes = 0;
  int penalty = 0;

  int total() const { return wides + noballs + byes + legbyes + penalty; }
  bool operator==(const Extras&) const = default;
};

struct WicketEvent {
  std::string player_out;
  std::string kind;  // cricsheet dismissal kind, verbatim

  bool operator==(const WicketEvent&) const = default;
};

// One ball. ball_seq counts every delivery in the over, legal or not.
struct Delivery {
  std::string match_id;
  int innings = 1;   // 1-based
  int over_idx = 0;  // 0-based over number within the innings
  int ball_seq = 1;  // 1-based delivery order within the over
  std::string bowler;
  std::string striker;
  int batter_runs = 0;
  Extras extras;
  std::vector<WicketEvent> wickets;  // at most 2
  bool super_over = false;           // ingested but excluded downstream

  // A wide or no-ball does not count towards the six balls of the over.
  bool is_legal() const { return extras.wides == 0 && extras.noballs == 0; }
  int total_runs() const { return batter_runs + extras.total(); }

  bool operator==(const Delivery&) const = default;
};

struct MatchMeta {
  std::string match_id;  // file stem
  MatchFormat format = MatchFormat::ODI;
  std::array<std::string, 2> teams;
  std::string date;   // ISO-8601, first match day
  std::string venue;  // optional
  // Batting team per innings, in innings order. The fielding side of
  // innings i is the other entry of `teams`.
  std::vector<std::string> innings_batting;

  std::string fielding_team(int innings) const {
    if (innings < 1 || innings > static_cast<int>(innings_batting.size())) return {};
    const std::string& batting = innings_batting[static_cast<size_t>(innings - 1)];
    if (batting == teams[0]) return teams[1];
    if (batting == teams[1]) return teams[0];
    return {};
  }

  bool operator==(const MatchMeta&) const = default;
};

// A parsed, format-filtered collection of matches. Deliveries of one match
// are contiguous and ordered by (innings, over_idx, ball_seq); matches are
// ordered by match_id.
struct Corpus {
  MatchFormat format = MatchFormat::ODI;
  std::vector<MatchMeta> matches;
  std::vector<Delivery> deliveries;

  const MatchMeta* find_match(const std::string& match_id) const {
    for (const auto& m : matches)
      if (m.match_id == match_id) return &m;
    return nullptr;
  }
};

}  // namespace bowlership
