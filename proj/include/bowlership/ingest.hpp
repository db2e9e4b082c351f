#pragma once

// Cricsheet-style YAML ingestion. parse_match turns one match file into a
// validated delivery stream; ingest_corpus walks a directory, filters by
// format, and persists the corpus as two CSV files (deliveries + match
// metadata) that the analysis stages read back.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "bowlership/csv.hpp"
#include "bowlership/errors.hpp"
#include "bowlership/types.hpp"

namespace bowlership {

namespace detail {

inline int node_int(const YAML::Node& n, const char* what) {
  try {
    int v = n.as<int>();
    if (v < 0) raise(errc::schema_violation, std::string(what) + " is negative");
    return v;
  } catch (const YAML::Exception&) {
    raise(errc::schema_violation, std::string("bad integer field: ") + what);
  }
}

inline Extras parse_extras(const YAML::Node& node) {
  Extras e;
  if (!node) return e;
  if (!node.IsMap()) raise(errc::schema_violation, "extras is not a map");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    const int v = node_int(kv.second, key.c_str());
    if (key == "wides") e.wides = v;
    else if (key == "noballs") e.noballs = v;
    else if (key == "byes") e.byes = v;
    else if (key == "legbyes") e.legbyes = v;
    else if (key == "penalty") e.penalty = v;
    else raise(errc::schema_violation, "unknown extras kind: " + key);
  }
  return e;
}

inline std::vector<WicketEvent> parse_wickets(const YAML::Node& del) {
  std::vector<WicketEvent> out;
  YAML::Node w = del["wickets"];
  if (!w && del["wicket"]) {
    // tolerate the older single-record spelling
    w = YAML::Node(YAML::NodeType::Sequence);
    w.push_back(del["wicket"]);
  }
  if (!w) return out;
  if (!w.IsSequence()) raise(errc::schema_violation, "wickets is not a sequence");
  for (const auto& rec : w) {
    WicketEvent ev;
    if (!rec["kind"]) raise(errc::schema_violation, "wicket record missing kind");
    ev.kind = rec["kind"].as<std::string>();
    if (rec["player_out"]) ev.player_out = rec["player_out"].as<std::string>();
    out.push_back(std::move(ev));
  }
  if (out.size() > 2) raise(errc::schema_violation, "more than 2 wicket records on one delivery");
  return out;
}

}  // namespace detail

inline std::pair<MatchMeta, std::vector<Delivery>> parse_match(const std::string& file_bytes,
                                                               const std::string& match_id) {
  YAML::Node root;
  try {
    root = YAML::Load(file_bytes);
  } catch (const YAML::Exception& e) {
    raise(errc::malformed_file, match_id + ": " + e.what());
  }
  if (!root.IsMap() || !root["info"]) raise(errc::schema_violation, match_id + ": missing info");
  const YAML::Node info = root["info"];

  MatchMeta meta;
  meta.match_id = match_id;
  if (!info["match_type"]) raise(errc::schema_violation, match_id + ": missing match_type");
  meta.format = parse_format(info["match_type"].as<std::string>());

  const YAML::Node teams = info["teams"];
  if (!teams || !teams.IsSequence() || teams.size() != 2)
    raise(errc::schema_violation, match_id + ": teams must list exactly 2 teams");
  meta.teams = {teams[0].as<std::string>(), teams[1].as<std::string>()};
  if (info["dates"] && info["dates"].IsSequence() && info["dates"].size() > 0)
    meta.date = info["dates"][0].as<std::string>();
  if (info["venue"]) meta.venue = info["venue"].as<std::string>();

  const YAML::Node innings = root["innings"];
  if (!innings || !innings.IsSequence())
    raise(errc::schema_violation, match_id + ": missing innings");

  std::vector<Delivery> deliveries;
  int innings_no = 0;
  for (const auto& inn : innings) {
    ++innings_no;
    if (!inn.IsMap() || !inn["team"])
      raise(errc::schema_violation, match_id + ": innings missing team");
    meta.innings_batting.push_back(inn["team"].as<std::string>());
    const bool super_over = inn["super_over"] && inn["super_over"].as<bool>();

    const YAML::Node overs = inn["overs"];
    if (!overs) continue;  // declared but not played
    if (!overs.IsSequence()) raise(errc::schema_violation, match_id + ": overs is not a list");
    int prev_over = -1;
    for (const auto& over : overs) {
      if (!over["over"]) raise(errc::schema_violation, match_id + ": over missing number");
      const int over_idx = detail::node_int(over["over"], "over");
      if (over_idx <= prev_over)
        raise(errc::schema_violation, match_id + ": over numbers must increase");
      prev_over = over_idx;

      const YAML::Node dels = over["deliveries"];
      if (!dels || !dels.IsSequence())
        raise(errc::schema_violation, match_id + ": over missing deliveries");
      int ball_seq = 0;
      for (const auto& del : dels) {
        Delivery d;
        d.match_id = match_id;
        d.innings = innings_no;
        d.over_idx = over_idx;
        d.ball_seq = ++ball_seq;
        d.super_over = super_over;
        if (!del["bowler"]) raise(errc::schema_violation, match_id + ": delivery missing bowler");
        d.bowler = del["bowler"].as<std::string>();
        if (del["batter"]) d.striker = del["batter"].as<std::string>();
        else if (del["batsman"]) d.striker = del["batsman"].as<std::string>();

        const YAML::Node runs = del["runs"];
        if (!runs || !runs.IsMap())
          raise(errc::schema_violation, match_id + ": delivery missing runs");
        if (runs["batter"]) d.batter_runs = detail::node_int(runs["batter"], "runs.batter");
        else if (runs["batsman"]) d.batter_runs = detail::node_int(runs["batsman"], "runs.batsman");
        else raise(errc::schema_violation, match_id + ": runs missing batter");

        d.extras = detail::parse_extras(del["extras"]);
        if (runs["extras"] && detail::node_int(runs["extras"], "runs.extras") != d.extras.total())
          raise(errc::schema_violation, match_id + ": extras breakdown does not match runs.extras");
        d.wickets = detail::parse_wickets(del);
        deliveries.push_back(std::move(d));
      }
    }
  }
  return {std::move(meta), std::move(deliveries)};
}

struct FileIssue {
  std::string file;
  std::string reason;
};

struct IngestReport {
  int files_seen = 0;
  int files_parsed = 0;      // parsed OK, any format
  int files_in_format = 0;   // retained after the format filter
  std::vector<FileIssue> issues;
};

// Parses every .yaml/.yml file in `dir`, keeps matches of `format`, and
// returns them ordered by match_id. Files that fail schema checks are
// reported and skipped. Throws EMPTY_CORPUS if nothing survives the filter.
inline Corpus ingest_corpus(const std::filesystem::path& dir, MatchFormat format,
                            IngestReport* report = nullptr) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    raise(errc::io_error, "not a readable directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".yaml" || ext == ".yml") files.push_back(entry.path());
  }
  if (ec) raise(errc::io_error, "cannot list directory: " + dir.string());
  std::sort(files.begin(), files.end());

  IngestReport local;
  IngestReport& rep = report ? *report : local;
  std::vector<std::pair<MatchMeta, std::vector<Delivery>>> parsed;
  for (const auto& path : files) {
    ++rep.files_seen;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      rep.issues.push_back({path.filename().string(), "unreadable"});
      continue;
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      auto match = parse_match(bytes, path.stem().string());
      ++rep.files_parsed;
      if (match.first.format != format) continue;
      ++rep.files_in_format;
      parsed.push_back(std::move(match));
    } catch (const error& e) {
      rep.issues.push_back({path.filename().string(), e.what()});
    }
  }
  if (parsed.empty())
    raise(errc::empty_corpus, "no valid " + std::string(format_name(format)) + " matches in " +
                                  dir.string());

  // chronological corpus order; match_id disambiguates same-day matches
  std::sort(parsed.begin(), parsed.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.date, x.first.match_id) < std::tie(y.first.date, y.first.match_id);
  });
  Corpus corpus;
  corpus.format = format;
  for (auto& [meta, dels] : parsed) {
    corpus.matches.push_back(std::move(meta));
    corpus.deliveries.insert(corpus.deliveries.end(), dels.begin(), dels.end());
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Intermediate columnar format
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& deliveries_csv_header() {
  static const std::vector<std::string> h = {
      "match_id", "format",  "innings", "over_idx", "ball_seq",
      "bowler",   "striker", "batter_runs", "wides", "noballs",
      "byes",     "legbyes", "penalty", "wicket_kind", "player_out"};
  return h;
}

inline std::string join_semicolon(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ';';
    out += parts[i];
  }
  return out;
}

inline std::vector<std::string> split_semicolon(const std::string& s) {
  std::vector<std::string> parts;
  if (s.empty()) return parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(';', start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

// Super-over deliveries are flagged at parse time and dropped here, so the
// analysis stages never see them.
inline void write_deliveries_csv(const Corpus& corpus, const std::string& path) {
  csv::Writer w(path);
  w.row(deliveries_csv_header());
  for (const auto& d : corpus.deliveries) {
    if (d.super_over) continue;
    std::vector<std::string> kinds, outs;
    for (const auto& ev : d.wickets) {
      kinds.push_back(ev.kind);
      outs.push_back(ev.player_out);
    }
    w.row({d.match_id, format_name(corpus.format), std::to_string(d.innings),
           std::to_string(d.over_idx), std::to_string(d.ball_seq), d.bowler, d.striker,
           std::to_string(d.batter_runs), std::to_string(d.extras.wides),
           std::to_string(d.extras.noballs), std::to_string(d.extras.byes),
           std::to_string(d.extras.legbyes), std::to_string(d.extras.penalty),
           join_semicolon(kinds), join_semicolon(outs)});
  }
}

inline void write_matches_csv(const Corpus& corpus, const std::string& path) {
  csv::Writer w(path);
  w.row({"match_id", "format", "team1", "team2", "date", "venue", "batting_teams"});
  for (const auto& m : corpus.matches)
    w.row({m.match_id, format_name(m.format), m.teams[0], m.teams[1], m.date, m.venue,
           join_semicolon(m.innings_batting)});
}

inline std::string deliveries_csv_path(const std::string& out_dir, MatchFormat f) {
  return out_dir + "/deliveries_" + format_tag(f) + ".csv";
}

inline std::string matches_csv_path(const std::string& out_dir, MatchFormat f) {
  return out_dir + "/matches_" + format_tag(f) + ".csv";
}

// Writes both intermediate files; rewrites replace previous content.
inline void persist_corpus(const Corpus& corpus, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_deliveries_csv(corpus, deliveries_csv_path(out_dir, corpus.format));
  write_matches_csv(corpus, matches_csv_path(out_dir, corpus.format));
}

inline Corpus load_corpus(const std::string& out_dir, MatchFormat format) {
  Corpus corpus;
  corpus.format = format;

  const auto matches = csv::read_file(matches_csv_path(out_dir, format));
  for (const auto& r : matches.rows) {
    if (r.size() != 7) raise(errc::malformed_file, "bad matches csv row");
    MatchMeta m;
    m.match_id = r[0];
    m.format = parse_format(r[1]);
    m.teams = {r[2], r[3]};
    m.date = r[4];
    m.venue = r[5];
    m.innings_batting = split_semicolon(r[6]);
    corpus.matches.push_back(std::move(m));
  }

  std::set<std::string> known_ids;
  for (const auto& m : corpus.matches) known_ids.insert(m.match_id);

  const auto dels = csv::read_file(deliveries_csv_path(out_dir, format));
  if (dels.header != deliveries_csv_header())
    raise(errc::malformed_file, "unexpected deliveries csv header");
  for (const auto& r : dels.rows) {
    if (r.size() != 15) raise(errc::malformed_file, "bad deliveries csv row");
    if (!known_ids.count(r[0]))
      raise(errc::malformed_file, "delivery references unknown match " + r[0]);
    Delivery d;
    d.match_id = r[0];
    d.innings = std::stoi(r[2]);
    d.over_idx = std::stoi(r[3]);
    d.ball_seq = std::stoi(r[4]);
    d.bowler = r[5];
    d.striker = r[6];
    d.batter_runs = std::stoi(r[7]);
    d.extras.wides = std::stoi(r[8]);
    d.extras.noballs = std::stoi(r[9]);
    d.extras.byes = std::stoi(r[10]);
    d.extras.legbyes = std::stoi(r[11]);
    d.extras.penalty = std::stoi(r[12]);
    auto kinds = split_semicolon(r[13]);
    auto outs = split_semicolon(r[14]);
    for (size_t i = 0; i < kinds.size(); ++i) {
      WicketEvent ev;
      ev.kind = kinds[i];
      ev.player_out = i < outs.size() ? outs[i] : "";
      d.wickets.push_back(std::move(ev));
    }
    corpus.deliveries.push_back(std::move(d));
  }
  return corpus;
}

}  // namespace bowlership
