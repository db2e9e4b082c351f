#pragma once

// Bowling-pair detection. A pair's alternation runs are the maximal
// stretches of contiguous overs within one innings bowled by exactly two
// bowlers in strict alternation; a pair qualifies when both careers clear
// t_i overs and the accumulated run length clears t_p.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bowlership/csv.hpp"
#include "bowlership/errors.hpp"
#include "bowlership/overs.hpp"

namespace bowlership {

struct PairingConfig {
  int t_i = 300;  // minimum career overs per bowler
  int t_p = 60;   // minimum accumulated alternating overs per pair

  static PairingConfig defaults_for(MatchFormat f) {
    switch (f) {
      case MatchFormat::Test: return {300, 60};
      case MatchFormat::ODI: return {300, 60};
      case MatchFormat::T20I: return {80, 16};
    }
    return {};
  }

  void validate() const {
    if (t_i <= 0) raise(errc::bad_config, "t_i must be positive");
    if (t_p < 2) raise(errc::bad_config, "t_p must be at least 2 (alternation needs two overs)");
  }
};

struct AlternationRun {
  std::string match_id;
  int innings = 1;
  int start_over = 0;
  int length = 0;                            // >= 2
  std::pair<std::string, std::string> bowlers;  // normalized, first < second
};

struct BowlingPair {
  std::string a;  // a < b lexicographically
  std::string b;
  int pair_overs = 0;  // sum of run lengths
  int run_count = 0;
  std::vector<OverRecord> overs_of_a;  // a's overs inside runs
  std::vector<OverRecord> overs_of_b;
};

// One innings as an ordered over sequence. An over shared by two bowlers
// (injury mid-over) gets an empty bowler name, which breaks alternation.
struct OverSeqEntry {
  int over_idx = 0;
  std::string bowler;
};

namespace detail {

inline bool alternation_link(const OverSeqEntry& x, const OverSeqEntry& y) {
  return y.over_idx == x.over_idx + 1 && !x.bowler.empty() && !y.bowler.empty() &&
         x.bowler != y.bowler;
}

}  // namespace detail

// Maximal alternation runs of one specific pair within one innings
// sequence. Gaps in over numbering and third bowlers terminate runs.
inline std::vector<AlternationRun> find_alternation_runs(const std::vector<OverSeqEntry>& seq,
                                                         const std::string& bowler_a,
                                                         const std::string& bowler_b) {
  std::vector<AlternationRun> runs;
  auto in_pair = [&](const std::string& name) { return name == bowler_a || name == bowler_b; };
  auto link = [&](size_t i) {
    return detail::alternation_link(seq[i], seq[i + 1]) && in_pair(seq[i].bowler) &&
           in_pair(seq[i + 1].bowler);
  };
  size_t s = 0;
  while (s + 1 < seq.size()) {
    if (!link(s)) {
      ++s;
      continue;
    }
    size_t e = s + 1;
    while (e + 1 < seq.size() && link(e)) ++e;
    AlternationRun run;
    run.start_over = seq[s].over_idx;
    run.length = static_cast<int>(e - s + 1);
    run.bowlers = std::minmax(bowler_a, bowler_b);
    runs.push_back(std::move(run));
    s = e + 1;
  }
  return runs;
}

namespace detail {

struct InningsGroup {
  std::string match_id;
  int innings = 1;
  std::vector<OverSeqEntry> seq;
  // records per sequence position; empty-bowler entries carry none
  std::vector<const OverRecord*> record_at;
};

// Records arrive grouped by (match, innings) and ordered by over; split
// overs appear as consecutive records sharing over_idx.
inline std::vector<InningsGroup> group_by_innings(const std::vector<OverRecord>& records) {
  std::vector<InningsGroup> groups;
  for (const auto& r : records) {
    if (groups.empty() || groups.back().match_id != r.match_id ||
        groups.back().innings != r.innings) {
      groups.push_back({r.match_id, r.innings, {}, {}});
    }
    auto& g = groups.back();
    if (!g.seq.empty() && g.seq.back().over_idx == r.over_idx) {
      g.seq.back().bowler.clear();  // multi-bowler over: alternation breaker
      g.record_at.back() = nullptr;
    } else {
      g.seq.push_back({r.over_idx, r.bowler});
      g.record_at.push_back(&r);
    }
  }
  return groups;
}

}  // namespace detail

// All bowling pairs with at least one alternation run anywhere in the
// corpus, accumulated across innings and matches. Overs on a run boundary
// may be shared by two different pairs; runs of one pair never overlap.
inline std::vector<BowlingPair> accumulate_pairs(const std::vector<OverRecord>& records) {
  std::map<std::pair<std::string, std::string>, BowlingPair> pairs;

  for (const auto& g : detail::group_by_innings(records)) {
    const auto& seq = g.seq;
    auto link = [&](size_t i) { return detail::alternation_link(seq[i], seq[i + 1]); };
    size_t s = 0;
    while (s + 1 < seq.size()) {
      if (!link(s)) {
        ++s;
        continue;
      }
      // strict alternation means every second bowler repeats
      size_t e = s + 1;
      while (e + 1 < seq.size() && link(e) && seq[e + 1].bowler == seq[e - 1].bowler) ++e;

      const auto key = std::minmax(seq[s].bowler, seq[s + 1].bowler);
      auto& pair = pairs[key];
      if (pair.a.empty()) {
        pair.a = key.first;
        pair.b = key.second;
      }
      pair.pair_overs += static_cast<int>(e - s + 1);
      ++pair.run_count;
      for (size_t i = s; i <= e; ++i) {
        const OverRecord* rec = g.record_at[i];
        if (rec->bowler == pair.a) pair.overs_of_a.push_back(*rec);
        else pair.overs_of_b.push_back(*rec);
      }
      s = e;  // the boundary over may open the next pair's run
    }
  }

  std::vector<BowlingPair> out;
  out.reserve(pairs.size());
  for (auto& [key, p] : pairs) out.push_back(std::move(p));
  return out;
}

// Applies the career threshold t_i (both bowlers) and the pairing
// threshold t_p, both inclusive.
inline std::vector<BowlingPair> filter_pairs(const std::vector<BowlingPair>& pairs,
                                             const std::map<std::string, double>& career_overs,
                                             const PairingConfig& cfg) {
  cfg.validate();
  std::vector<BowlingPair> out;
  for (const auto& p : pairs) {
    auto ia = career_overs.find(p.a);
    auto ib = career_overs.find(p.b);
    if (ia == career_overs.end() || ib == career_overs.end()) continue;
    if (ia->second >= cfg.t_i && ib->second >= cfg.t_i && p.pair_overs >= cfg.t_p)
      out.push_back(p);
  }
  return out;
}

inline void write_pairs_csv(const std::vector<BowlingPair>& pairs, const std::string& path) {
  csv::Writer w(path);
  w.row({"bowler_a", "bowler_b", "pair_overs", "runs_count"});
  for (const auto& p : pairs)
    w.row({p.a, p.b, std::to_string(p.pair_overs), std::to_string(p.run_count)});
}

}  // namespace bowlership
