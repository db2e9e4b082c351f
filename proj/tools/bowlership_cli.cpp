// Command-line driver: ingest raw match files, run the synergy analysis,
// select squads, and export networks. Exit codes: 0 success, 1 domain
// error, 2 I/O error.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bowlership/bowlership.hpp"

namespace bs = bowlership;

namespace {

struct CliState {
  bs::RunConfig cfg;
  std::string config_file;
  std::string format_flag;
  std::optional<int> ti_flag, tp_flag;
  std::optional<double> alpha_flag;
  std::optional<uint64_t> seed_flag;
  std::string individual_set_flag;
  std::string out_flag;
};

// flags > config file > defaults
void resolve_config(CliState& st) {
  if (!st.config_file.empty()) bs::apply_config_file(st.cfg, st.config_file);
  if (!st.format_flag.empty()) st.cfg.format = bs::parse_format(st.format_flag);
  if (st.ti_flag) st.cfg.t_i = *st.ti_flag;
  if (st.tp_flag) st.cfg.t_p = *st.tp_flag;
  if (st.alpha_flag) st.cfg.alpha = *st.alpha_flag;
  if (st.seed_flag) st.cfg.seed = *st.seed_flag;
  if (!st.individual_set_flag.empty())
    st.cfg.individual_set = bs::parse_individual_set(st.individual_set_flag);
  if (!st.out_flag.empty()) st.cfg.output_dir = st.out_flag;
  st.cfg.validate();
}

void add_common_flags(CLI::App* cmd, CliState& st) {
  cmd->add_option("--format", st.format_flag, "Match format: Test, ODI or T20I");
  cmd->add_option("--ti", st.ti_flag, "Career overs threshold (T1)");
  cmd->add_option("--tp", st.tp_flag, "Pair alternating-overs threshold (T2)");
  cmd->add_option("--alpha", st.alpha_flag, "Significance level");
  cmd->add_option("--seed", st.seed_flag, "RNG seed for reproducible runs");
  cmd->add_option("--individual-set", st.individual_set_flag,
                  "Reference sample: all_overs or exclude_pair");
  cmd->add_option("--out", st.out_flag, "Output directory");
  cmd->add_option("--config", st.config_file, "key=value config file");
}

std::string team_slug(const std::string& team) {
  std::string s;
  for (char c : team) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (!s.empty() && s.back() != '_')
      s += '_';
  }
  while (!s.empty() && s.back() == '_') s.pop_back();
  return s.empty() ? "team" : s;
}

bs::Metric parse_metric(const std::string& m) {
  if (m == "economy") return bs::Metric::Economy;
  if (m == "hitrate") return bs::Metric::Hitrate;
  bs::raise(bs::errc::bad_config, "metric must be economy or hitrate, got '" + m + "'");
}

int cmd_ingest(CliState& st, const std::string& corpus_dir) {
  if (!corpus_dir.empty()) st.cfg.corpus_dir = corpus_dir;
  if (st.cfg.corpus_dir.empty()) bs::raise(bs::errc::bad_config, "no corpus directory given");

  bs::IngestReport report;
  const bs::Corpus corpus = bs::ingest_corpus(st.cfg.corpus_dir, st.cfg.format, &report);
  for (const auto& issue : report.issues)
    std::cerr << "skipped " << issue.file << ": " << issue.reason << '\n';
  bs::persist_corpus(corpus, st.cfg.output_dir);

  size_t written = 0;
  for (const auto& d : corpus.deliveries)
    if (!d.super_over) ++written;
  std::cout << "matches=" << corpus.matches.size() << " deliveries=" << written << '\n';
  return 0;
}

int cmd_analyze(CliState& st) {
  const bs::Corpus corpus = bs::load_corpus(st.cfg.output_dir, st.cfg.format);
  const auto opts = bs::AnalysisOptions::from_config(st.cfg);
  const bs::AnalysisResult res = bs::run_analysis(corpus, opts);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
  bs::write_reports(res, st.cfg.output_dir);
  std::cout << "bowlers=" << res.career_overs.size() << " qualifying_pairs="
            << res.qualifying_pairs.size() << " edges=" << res.edges.size() << '\n';
  if (res.qualifying_pairs.empty()) {
    std::cerr << "no qualifying pairs at ti=" << opts.pairing.t_i << " tp=" << opts.pairing.t_p
              << '\n';
    return 1;
  }
  return 0;
}

int cmd_select(CliState& st, const std::string& team, int k, const std::string& metric_name) {
  const auto loaded =
      bs::load_analysis(bs::analysis_json_path(st.cfg.output_dir, st.cfg.format));
  auto it = loaded.teams.find(team);
  if (it == loaded.teams.end()) {
    std::cerr << "unknown team: " << team << '\n';
    return 1;
  }
  const bs::Metric metric = parse_metric(metric_name);
  const bs::SelectionResult sel = bs::bowler_select(it->second.weighted(metric), k);

  nlohmann::json j;
  j["team"] = team;
  j["metric"] = metric_name;
  j["k"] = k;
  j["selected"] = sel.selected;
  j["union"] = sel.union_vertices;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& step : sel.trace)
    trace.push_back({{"chosen", step.chosen},
                     {"avg_weighted_degree", step.avg_weighted_degree},
                     {"cross_weight", step.cross_weight},
                     {"total_score", step.total_score}});
  j["trace"] = trace;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_export_graph(CliState& st, const std::string& team, const std::string& metric_name,
                     const std::string& layout) {
  const auto loaded =
      bs::load_analysis(bs::analysis_json_path(st.cfg.output_dir, st.cfg.format));
  auto it = loaded.teams.find(team);
  if (it == loaded.teams.end()) {
    std::cerr << "unknown team: " << team << '\n';
    return 1;
  }
  const bs::Metric metric = parse_metric(metric_name);
  const auto& net = it->second;
  const std::string base = st.cfg.output_dir + "/graph_" + team_slug(team) + "_" + metric_name +
                           "_" + bs::format_tag(st.cfg.format);
  if (layout == "dot") {
    const std::string directed_path = base + ".dot";
    const std::string weighted_path = base + "_weighted.dot";
    std::ofstream directed_out(directed_path, std::ios::binary);
    if (!directed_out) bs::raise(bs::errc::io_error, "cannot write " + directed_path);
    directed_out << bs::directed_graph_dot(net.directed(metric), team + " " + metric_name);
    std::ofstream weighted_out(weighted_path, std::ios::binary);
    if (!weighted_out) bs::raise(bs::errc::io_error, "cannot write " + weighted_path);
    weighted_out << bs::weighted_graph_dot(net.weighted(metric),
                                           team + " " + metric_name + " weighted");
    std::cout << directed_path << '\n' << weighted_path << '\n';
  } else if (layout == "csv") {
    const std::string path = base + ".csv";
    bs::write_edges_csv(net.directed(metric), net.weighted(metric), path);
    std::cout << path << '\n';
  } else {
    bs::raise(bs::errc::bad_config, "layout must be dot or csv, got '" + layout + "'");
  }
  return 0;
}

int cmd_report(CliState& st) {
  const bs::Corpus corpus = bs::load_corpus(st.cfg.output_dir, st.cfg.format);
  std::cout << "format: " << bs::format_name(st.cfg.format) << '\n'
            << "matches: " << corpus.matches.size() << '\n'
            << "deliveries: " << corpus.deliveries.size() << '\n';

  const std::string path = bs::analysis_json_path(st.cfg.output_dir, st.cfg.format);
  if (!std::filesystem::exists(path)) {
    std::cout << "analysis: not run yet\n";
    return 0;
  }
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  std::cout << "bowlers: " << j["bowlers"].size() << '\n'
            << "qualifying pairs: " << j["pairs"].size() << '\n';
  int pos = 0, neg = 0, hit_pos = 0;
  for (const auto& e : j["edges"]) {
    const bool economy = e["metric"] == "economy";
    if (e["sign"] == "positive") {
      if (economy) ++pos;
      else ++hit_pos;
    } else {
      ++neg;
    }
  }
  std::cout << "positive economy edges: " << pos << '\n'
            << "positive hitrate edges: " << hit_pos << '\n'
            << "negative edges: " << neg << '\n';

  const auto loaded = bs::load_analysis(path);
  std::cout << "teams:\n";
  for (const auto& [team, net] : loaded.teams)
    std::cout << "  " << team << ": vertices=" << net.directed_economy.vertices.size()
              << " economy_edges=" << net.directed_economy.edges.size()
              << " hitrate_edges=" << net.directed_hitrate.edges.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bowler-pair synergy analysis over ball-by-ball cricket data"};
  app.require_subcommand(1);

  CliState st;
  std::string corpus_dir, team, metric = "economy", layout = "dot";
  int k = 5;

  auto* ingest = app.add_subcommand("ingest", "Parse match YAML files into the corpus CSVs");
  ingest->add_option("corpus_dir", corpus_dir, "Directory of cricsheet-style YAML files");
  add_common_flags(ingest, st);

  auto* analyze = app.add_subcommand("analyze", "Detect pairs, classify bowlerships, emit reports");
  add_common_flags(analyze, st);

  auto* select = app.add_subcommand("select", "Pick a k-bowler squad from a team network");
  select->add_option("--team", team, "Team name")->required();
  select->add_option("--k", k, "Number of bowlers")->required();
  select->add_option("--metric", metric, "economy or hitrate");
  add_common_flags(select, st);

  auto* export_graph = app.add_subcommand("export-graph", "Write a team network as DOT or CSV");
  export_graph->add_option("--team", team, "Team name")->required();
  export_graph->add_option("--metric", metric, "economy or hitrate");
  export_graph->add_option("--layout", layout, "dot or csv");
  add_common_flags(export_graph, st);

  auto* report = app.add_subcommand("report", "Summarize an ingested and analyzed corpus");
  add_common_flags(report, st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    resolve_config(st);
    if (ingest->parsed()) return cmd_ingest(st, corpus_dir);
    if (analyze->parsed()) return cmd_analyze(st);
    if (select->parsed()) return cmd_select(st, team, k, metric);
    if (export_graph->parsed()) return cmd_export_graph(st, team, metric, layout);
    if (report->parsed()) return cmd_report(st);
  } catch (const bs::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == bs::errc::io_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
