#pragma once

// The full analysis pipeline: over records -> career summaries -> pair
// detection -> three-test classification per direction and metric ->
// per-team networks -> report files. Results persist as one JSON state
// file plus the audit CSVs, so select/export runs can rebuild the graphs
// without re-reading the corpus.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bowlership/classify.hpp"
#include "bowlership/config.hpp"
#include "bowlership/graph.hpp"
#include "bowlership/normality.hpp"
#include "bowlership/overs.hpp"
#include "bowlership/pairing.hpp"

namespace bowlership {

struct AnalysisOptions {
  PairingConfig pairing;
  double alpha = 0.05;
  int exact_cutoff = 20;
  IndividualSet individual_set = IndividualSet::AllOvers;
  bool charge_extras = true;
  int battery_min_overs = 300;
  uint64_t seed = 1;

  static AnalysisOptions from_config(const RunConfig& cfg) {
    AnalysisOptions o;
    o.pairing = cfg.resolved_pairing();
    o.alpha = cfg.alpha;
    o.exact_cutoff = cfg.exact_cutoff;
    o.individual_set = cfg.individual_set;
    o.charge_extras = cfg.charge_extras;
    o.battery_min_overs = cfg.resolved_battery_floor();
    o.seed = cfg.seed;
    return o;
  }
};

struct TeamNetwork {
  std::string team;
  DirectedSignedGraph directed_economy;
  DirectedSignedGraph directed_hitrate;
  WeightedGraph weighted_economy;
  WeightedGraph weighted_hitrate;

  const DirectedSignedGraph& directed(Metric m) const {
    return m == Metric::Economy ? directed_economy : directed_hitrate;
  }
  const WeightedGraph& weighted(Metric m) const {
    return m == Metric::Economy ? weighted_economy : weighted_hitrate;
  }
};

struct AnalysisResult {
  MatchFormat format = MatchFormat::ODI;
  AnalysisOptions options;
  std::vector<OverRecord> over_records;
  std::map<std::string, double> career_overs;      // fractional overs per bowler
  std::map<std::string, std::string> bowler_team;  // majority fielding side
  std::vector<BowlingPair> qualifying_pairs;
  std::map<std::pair<std::string, std::string>, std::string> pair_team;
  std::vector<BowlershipEdge> edges;  // both metrics, whole corpus
  std::map<std::string, TeamNetwork> teams;
  std::array<BatteryRow, 3> battery{};
  OverHistograms histograms;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string majority_team(const std::map<std::string, int>& counts) {
  std::string best;
  int best_n = -1;
  for (const auto& [team, n] : counts) {
    if (team.empty()) continue;
    if (n > best_n) {  // map order makes ties lexicographic
      best = team;
      best_n = n;
    }
  }
  return best;
}

}  // namespace detail

inline AnalysisResult run_analysis(const Corpus& corpus, const AnalysisOptions& opts) {
  AnalysisResult res;
  res.format = corpus.format;
  res.options = opts;
  res.over_records = build_over_records(corpus, opts.charge_extras);

  // careers
  std::map<std::string, std::vector<OverRecord>> career;
  std::map<std::string, std::map<std::string, int>> team_counts;
  for (const auto& r : res.over_records) {
    career[r.bowler].push_back(r);
    res.career_overs[r.bowler] += r.legal_balls / 6.0;
    ++team_counts[r.bowler][r.fielding_team];
  }
  for (const auto& [bowler, counts] : team_counts)
    res.bowler_team[bowler] = detail::majority_team(counts);

  // pairs
  const auto all_pairs = accumulate_pairs(res.over_records);
  res.qualifying_pairs = filter_pairs(all_pairs, res.career_overs, opts.pairing);
  for (const auto& p : res.qualifying_pairs) {
    std::map<std::string, int> counts;
    for (const auto& r : p.overs_of_a) ++counts[r.fielding_team];
    for (const auto& r : p.overs_of_b) ++counts[r.fielding_team];
    res.pair_team[{p.a, p.b}] = detail::majority_team(counts);
  }

  // classification, both metrics and directions
  ClassifyOptions copts{opts.alpha, opts.exact_cutoff, opts.individual_set};
  for (const auto& p : res.qualifying_pairs) {
    for (Metric metric : {Metric::Economy, Metric::Hitrate}) {
      try {
        auto cls = classify_pair(p, career[p.a], career[p.b], metric, copts);
        if (cls.a_to_b) res.edges.push_back(*cls.a_to_b);
        if (cls.b_to_a) res.edges.push_back(*cls.b_to_a);
      } catch (const error& e) {
        res.warnings.push_back(std::string(metric_name(metric)) + " " + p.a + "/" + p.b + ": " +
                               e.what());
      }
    }
  }

  // per-team networks: vertices are every bowler in a qualifying pair of
  // that team, so non-bowlership pairs still contribute isolated vertices
  for (const auto& p : res.qualifying_pairs) {
    const std::string& team = res.pair_team.at({p.a, p.b});
    if (team.empty()) continue;
    auto& net = res.teams[team];
    net.team = team;
    for (auto* g : {&net.directed_economy, &net.directed_hitrate}) {
      g->vertices.insert(p.a);
      g->vertices.insert(p.b);
    }
  }
  for (const auto& e : res.edges) {
    const auto key = std::minmax(e.from, e.to);
    const std::string& team = res.pair_team.at(key);
    if (team.empty()) continue;
    auto& net = res.teams.at(team);
    (e.metric == Metric::Economy ? net.directed_economy : net.directed_hitrate).add_edge(e);
  }
  for (auto& [team, net] : res.teams) {
    (void)team;
    net.weighted_economy = create_weighted_graph(net.directed_economy);
    net.weighted_hitrate = create_weighted_graph(net.directed_hitrate);
  }

  // normality battery over per-bowler runs-per-over samples
  std::map<std::string, std::vector<double>> battery_samples;
  for (const auto& [bowler, overs] : career) {
    if (res.career_overs[bowler] < opts.battery_min_overs) continue;
    auto& sample = battery_samples[bowler];
    for (const auto& r : overs)
      if (r.complete) sample.push_back(static_cast<double>(r.runs_charged));
  }
  res.battery = normality_battery(battery_samples, opts.alpha, opts.seed);

  res.histograms = over_histograms(res.over_records);
  return res;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

inline void write_table1_csv(const AnalysisResult& res, const std::string& path) {
  csv::Writer w(path);
  w.row({"format", "test", "fail_count", "pass_count"});
  for (const auto& row : res.battery)
    w.row({format_name(res.format), normality_test_name(row.test), std::to_string(row.fail),
           std::to_string(row.pass)});
}

// The flat edge table across all teams; weight is taken from the owning
// team's weighted graph for the edge's metric.
inline void write_all_edges_csv(const AnalysisResult& res, const std::string& path) {
  csv::Writer w(path);
  w.row({"from", "to", "metric", "sign", "p_greater", "p_two", "p_less", "weight"});
  std::vector<const BowlershipEdge*> edges;
  for (const auto& e : res.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const BowlershipEdge* a, const BowlershipEdge* b) {
    return std::tie(a->from, a->to, a->metric) < std::tie(b->from, b->to, b->metric);
  });
  for (const auto* e : edges) {
    const auto key = std::minmax(e->from, e->to);
    const std::string& team = res.pair_team.at(key);
    int weight = 0;
    if (!team.empty()) weight = res.teams.at(team).weighted(e->metric).weight(e->from, e->to);
    w.row({e->from, e->to, metric_name(e->metric), sign_name(e->sign),
           csv::format_double(e->mw.p_greater), csv::format_double(e->mw.p_two_sided),
           csv::format_double(e->mw.p_less), std::to_string(weight)});
  }
}

inline std::string analysis_json_path(const std::string& out_dir, MatchFormat f) {
  return out_dir + "/analysis_" + format_tag(f) + ".json";
}

inline nlohmann::json edge_to_json(const BowlershipEdge& e, const std::string& team) {
  return {{"from", e.from},
          {"to", e.to},
          {"team", team},
          {"metric", metric_name(e.metric)},
          {"sign", sign_name(e.sign)},
          {"u", e.mw.u_statistic},
          {"p_greater", e.mw.p_greater},
          {"p_two_sided", e.mw.p_two_sided},
          {"p_less", e.mw.p_less},
          {"method", mw_method_name(e.mw.method)},
          {"n1", e.mw.n1},
          {"n2", e.mw.n2},
          {"pair_overs", e.pair_overs}};
}

inline void write_analysis_json(const AnalysisResult& res, const std::string& path) {
  nlohmann::json j;
  j["format"] = format_name(res.format);
  j["options"] = {{"ti", res.options.pairing.t_i},
                  {"tp", res.options.pairing.t_p},
                  {"alpha", res.options.alpha},
                  {"exact_cutoff", res.options.exact_cutoff},
                  {"individual_set", individual_set_name(res.options.individual_set)},
                  {"charge_extras", res.options.charge_extras},
                  {"battery_min_overs", res.options.battery_min_overs},
                  {"seed", res.options.seed}};

  nlohmann::json bowlers = nlohmann::json::object();
  for (const auto& [name, overs] : res.career_overs) {
    nlohmann::json b;
    b["total_overs"] = overs;
    b["team"] = res.bowler_team.at(name);
    bowlers[name] = b;
  }
  j["bowlers"] = bowlers;

  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : res.qualifying_pairs)
    pairs.push_back({{"a", p.a},
                     {"b", p.b},
                     {"team", res.pair_team.at({p.a, p.b})},
                     {"pair_overs", p.pair_overs},
                     {"run_count", p.run_count}});
  j["pairs"] = pairs;

  nlohmann::json edges = nlohmann::json::array();
  std::vector<const BowlershipEdge*> sorted;
  for (const auto& e : res.edges) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const BowlershipEdge* a, const BowlershipEdge* b) {
    return std::tie(a->from, a->to, a->metric) < std::tie(b->from, b->to, b->metric);
  });
  for (const auto* e : sorted) edges.push_back(edge_to_json(*e, res.pair_team.at(std::minmax(e->from, e->to))));
  j["edges"] = edges;

  j["warnings"] = res.warnings;

  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot write " + path);
  out << j.dump(2) << '\n';
}

// The slice of analysis state select/export need: per-team graphs.
struct LoadedAnalysis {
  MatchFormat format = MatchFormat::ODI;
  std::map<std::string, TeamNetwork> teams;
};

inline LoadedAnalysis load_analysis(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot read analysis state: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    raise(errc::malformed_file, path + ": " + e.what());
  }

  LoadedAnalysis out;
  out.format = parse_format(j.at("format").get<std::string>());
  for (const auto& p : j.at("pairs")) {
    const std::string team = p.at("team").get<std::string>();
    if (team.empty()) continue;
    auto& net = out.teams[team];
    net.team = team;
    for (auto* g : {&net.directed_economy, &net.directed_hitrate}) {
      g->vertices.insert(p.at("a").get<std::string>());
      g->vertices.insert(p.at("b").get<std::string>());
    }
  }
  for (const auto& e : j.at("edges")) {
    const std::string team = e.at("team").get<std::string>();
    if (team.empty()) continue;
    BowlershipEdge edge;
    edge.from = e.at("from").get<std::string>();
    edge.to = e.at("to").get<std::string>();
    edge.metric = e.at("metric").get<std::string>() == "economy" ? Metric::Economy : Metric::Hitrate;
    edge.sign = e.at("sign").get<std::string>() == "positive" ? EdgeSign::Positive : EdgeSign::Negative;
    edge.mw.u_statistic = e.at("u").get<double>();
    edge.mw.p_greater = e.at("p_greater").get<double>();
    edge.mw.p_two_sided = e.at("p_two_sided").get<double>();
    edge.mw.p_less = e.at("p_less").get<double>();
    edge.mw.method = e.at("method").get<std::string>() == "EXACT" ? MWMethod::Exact
                                                                  : MWMethod::NormalApprox;
    edge.mw.n1 = e.at("n1").get<int>();
    edge.mw.n2 = e.at("n2").get<int>();
    edge.pair_overs = e.at("pair_overs").get<int>();
    auto& net = out.teams.at(team);
    (edge.metric == Metric::Economy ? net.directed_economy : net.directed_hitrate).add_edge(edge);
  }
  for (auto& [team, net] : out.teams) {
    (void)team;
    net.weighted_economy = create_weighted_graph(net.directed_economy);
    net.weighted_hitrate = create_weighted_graph(net.directed_hitrate);
  }
  return out;
}

// Writes every analyze artifact into out_dir. Returns the number of
// qualifying pairs so the caller can flag an empty analysis.
inline size_t write_reports(const AnalysisResult& res, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string tag = format_tag(res.format);
  write_pairs_csv(res.qualifying_pairs, out_dir + "/pairs_" + tag + ".csv");
  write_all_edges_csv(res, out_dir + "/edges_" + tag + ".csv");
  write_table1_csv(res, out_dir + "/table1_" + tag + ".csv");
  write_histogram_csv(res.histograms.runs, out_dir + "/hist_runs_" + tag + ".csv");
  write_histogram_csv(res.histograms.wickets, out_dir + "/hist_wickets_" + tag + ".csv");
  write_bowler_summary_csv(res.over_records, out_dir + "/scatter_" + tag + ".csv");
  write_analysis_json(res, analysis_json_path(out_dir, res.format));
  return res.qualifying_pairs.size();
}

}  // namespace bowlership
