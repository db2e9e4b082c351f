#pragma once

// Per-bowler over records with standard scoring attribution: wides and
// no-balls are charged to the bowler, byes/leg-byes/penalty runs are not;
// only bowler-credited dismissal kinds count as wickets.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bowlership/csv.hpp"
#include "bowlership/errors.hpp"
#include "bowlership/types.hpp"

namespace bowlership {

struct OverRecord {
  std::string match_id;
  int innings = 1;
  int over_idx = 0;
  std::string bowler;
  std::string fielding_team;  // bowler's side for this innings, may be empty
  int legal_balls = 0;
  int runs_charged = 0;
  int wickets_credited = 0;
  bool complete = false;  // legal_balls == 6

  bool operator==(const OverRecord&) const = default;
};

inline bool is_bowler_credited(const std::string& kind) {
  return kind == "bowled" || kind == "caught" || kind == "lbw" || kind == "stumped" ||
         kind == "hit wicket" || kind == "caught and bowled";
}

// One record per (match, innings, over, bowler), in corpus order. Overs
// with zero legal balls are dropped. charge_extras=false is a diagnostic
// toggle that stops charging wide/no-ball runs to the bowler.
inline std::vector<OverRecord> build_over_records(const Corpus& corpus,
                                                  bool charge_extras = true) {
  std::vector<OverRecord> out;
  std::map<std::string, const MatchMeta*> meta_by_id;
  for (const auto& m : corpus.matches) meta_by_id[m.match_id] = &m;

  // per-over accumulation keyed by bowler, in order of first appearance,
  // so a split over yields one record per bowler
  std::vector<OverRecord> over_recs;
  auto flush_over = [&] {
    for (auto& rec : over_recs) {
      if (rec.legal_balls == 0) continue;  // degenerate all-wides fragment
      rec.complete = rec.legal_balls == 6;
      out.push_back(rec);
    }
    over_recs.clear();
  };

  std::string cur_over_key;
  for (const auto& d : corpus.deliveries) {
    if (d.super_over) continue;
    const std::string over_key =
        d.match_id + '\x1f' + std::to_string(d.innings) + '\x1f' + std::to_string(d.over_idx);
    if (over_key != cur_over_key) {
      flush_over();
      cur_over_key = over_key;
    }
    OverRecord* rec = nullptr;
    for (auto& r : over_recs)
      if (r.bowler == d.bowler) rec = &r;
    if (!rec) {
      OverRecord fresh;
      fresh.match_id = d.match_id;
      fresh.innings = d.innings;
      fresh.over_idx = d.over_idx;
      fresh.bowler = d.bowler;
      if (auto it = meta_by_id.find(d.match_id); it != meta_by_id.end())
        fresh.fielding_team = it->second->fielding_team(d.innings);
      over_recs.push_back(std::move(fresh));
      rec = &over_recs.back();
    }
    if (d.is_legal()) ++rec->legal_balls;
    rec->runs_charged += d.batter_runs;
    if (charge_extras) rec->runs_charged += d.extras.wides + d.extras.noballs;
    for (const auto& ev : d.wickets)
      if (is_bowler_credited(ev.kind)) ++rec->wickets_credited;
  }
  flush_over();
  return out;
}

struct BowlerSeries {
  std::string bowler;
  std::vector<OverRecord> overs;
  double total_overs = 0.0;  // sum of legal_balls / 6
  int total_runs = 0;
  int total_wickets = 0;
};

inline BowlerSeries bowler_series(const std::vector<OverRecord>& records,
                                  const std::string& bowler) {
  BowlerSeries s;
  s.bowler = bowler;
  for (const auto& r : records) {
    if (r.bowler != bowler) continue;
    s.overs.push_back(r);
    s.total_overs += r.legal_balls / 6.0;
    s.total_runs += r.runs_charged;
    s.total_wickets += r.wickets_credited;
  }
  if (s.overs.empty()) raise(errc::unknown_bowler, bowler + " appears in no over record");
  return s;
}

struct MetricSummary {
  double economy = 0.0;
  double hitrate = 0.0;
  std::optional<double> bowling_index;  // absent when no wickets taken
  double n_overs = 0.0;
};

// economy = runs per over, hitrate = wickets per over; the bowling index
// (Croucher 2000) is bowling average times strike rate.
inline MetricSummary summarize(const BowlerSeries& series) {
  if (series.total_overs <= 0.0) raise(errc::no_overs, series.bowler + " has no overs");
  MetricSummary m;
  m.n_overs = series.total_overs;
  m.economy = series.total_runs / series.total_overs;
  m.hitrate = series.total_wickets / series.total_overs;
  if (series.total_wickets > 0) {
    const double avg = static_cast<double>(series.total_runs) / series.total_wickets;
    const double strike_rate = 6.0 * series.total_overs / series.total_wickets;
    m.bowling_index = avg * strike_rate;
  }
  return m;
}

// Exact integer histograms over complete overs only.
struct OverHistograms {
  std::map<int, long> runs;
  std::map<int, long> wickets;
};

inline OverHistograms over_histograms(const std::vector<OverRecord>& records) {
  OverHistograms h;
  for (const auto& r : records) {
    if (!r.complete) continue;
    ++h.runs[r.runs_charged];
    ++h.wickets[r.wickets_credited];
  }
  return h;
}

inline void write_histogram_csv(const std::map<int, long>& hist, const std::string& path) {
  csv::Writer w(path);
  w.row({"value", "count"});
  for (const auto& [value, count] : hist)
    w.row({std::to_string(value), std::to_string(count)});
}

// Per-bowler summary table (the economy/hitrate scatter data).
inline void write_bowler_summary_csv(const std::vector<OverRecord>& records,
                                     const std::string& path) {
  struct Tally {
    long balls = 0;
    long runs = 0;
    long wickets = 0;
  };
  std::map<std::string, Tally> tallies;
  for (const auto& r : records) {
    auto& t = tallies[r.bowler];
    t.balls += r.legal_balls;
    t.runs += r.runs_charged;
    t.wickets += r.wickets_credited;
  }
  csv::Writer w(path);
  w.row({"bowler", "n_overs", "economy", "hitrate"});
  for (const auto& [name, t] : tallies) {
    if (t.balls == 0) continue;
    const double overs = t.balls / 6.0;
    w.row({name, csv::format_double(overs), csv::format_double(t.runs / overs),
           csv::format_double(t.wickets / overs)});
  }
}

}  // namespace bowlership
