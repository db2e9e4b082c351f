#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "bowlership/ingest.hpp"
#include "support/synthetic.hpp"

using namespace bowlership;
namespace ts = testsupport;

namespace {

ts::MatchSpec one_over_match(const std::string& type = "ODI") {
  ts::MatchSpec m;
  m.match_type = type;
  ts::InningsSpec inn;
  inn.batting_team = m.team2;
  inn.overs.push_back(ts::flat_over(0, "Bowler.X", 0));
  m.innings.push_back(inn);
  return m;
}

}  // namespace

TEST_CASE("a single over of dot balls parses into six deliveries") {
  const auto [meta, dels] = parse_match(ts::to_yaml(one_over_match()), "m0001");
  CHECK(meta.match_id == "m0001");
  CHECK(meta.format == MatchFormat::ODI);
  CHECK(meta.teams[0] == "Alpha");
  CHECK(meta.teams[1] == "Beta");
  CHECK(meta.date == "2016-01-01");
  CHECK(meta.innings_batting == std::vector<std::string>{"Beta"});
  REQUIRE(dels.size() == 6);
  for (size_t i = 0; i < dels.size(); ++i) {
    CHECK(dels[i].batter_runs == 0);
    CHECK(dels[i].ball_seq == static_cast<int>(i) + 1);
    CHECK(dels[i].bowler == "Bowler.X");
    CHECK(dels[i].is_legal());
  }
}

TEST_CASE("a wide extends the over to seven deliveries") {
  ts::MatchSpec m = one_over_match();
  ts::BallSpec wide;
  wide.bowler = "Bowler.X";
  wide.wides = 1;
  auto& balls = m.innings[0].overs[0].balls;
  balls.insert(balls.begin() + 2, wide);

  const auto [meta, dels] = parse_match(ts::to_yaml(m), "m0002");
  REQUIRE(dels.size() == 7);
  for (size_t i = 0; i < dels.size(); ++i) CHECK(dels[i].ball_seq == static_cast<int>(i) + 1);
  CHECK(dels[2].extras.wides == 1);
  CHECK_FALSE(dels[2].is_legal());
  int legal = 0;
  for (const auto& d : dels) legal += d.is_legal() ? 1 : 0;
  CHECK(legal == 6);
}

TEST_CASE("delivery count equals the file's ball-entry count") {
  // a fuller T20I-style match; the oracle is a plain text scan
  ts::MatchSpec m;
  m.match_type = "T20";
  ts::InningsSpec inn1 = ts::innings_of("Beta", {{"P1", 1}, {"P2", 0}, {"P1", 2}, {"P2", 1}});
  ts::BallSpec wicket_ball;
  wicket_ball.bowler = "P1";
  wicket_ball.wicket_kind = "bowled";
  inn1.overs[2].balls[4] = wicket_ball;
  ts::InningsSpec inn2 = ts::innings_of("Alpha", {{"Q1", 0}, {"Q2", 3}, {"Q1", 1}});
  ts::BallSpec nb;
  nb.bowler = "Q2";
  nb.noballs = 1;
  nb.batter_runs = 2;
  inn2.overs[1].balls.push_back(nb);
  m.innings = {inn1, inn2};

  const std::string yaml = ts::to_yaml(m);
  size_t oracle_count = 0;
  for (size_t pos = yaml.find("bowler:"); pos != std::string::npos;
       pos = yaml.find("bowler:", pos + 1))
    ++oracle_count;

  const auto [meta, dels] = parse_match(yaml, "t20_0001");
  CHECK(meta.format == MatchFormat::T20I);
  CHECK(dels.size() == oracle_count);
  CHECK(dels.size() == 6u * 7u + 1u);
}

TEST_CASE("parse errors carry the spec'd codes") {
  SECTION("unparseable yaml") {
    try {
      parse_match(": : :\n\t bad", "x");
      FAIL("expected throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::malformed_file);
    }
  }
  SECTION("missing bowler") {
    std::string yaml = ts::to_yaml(one_over_match());
    const auto pos = yaml.find("            bowler: Bowler.X\n");
    REQUIRE(pos != std::string::npos);
    yaml.erase(pos, std::string("            bowler: Bowler.X\n").size());
    try {
      parse_match(yaml, "x");
      FAIL("expected throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::schema_violation);
    }
  }
  SECTION("missing runs") {
    ts::MatchSpec m = one_over_match();
    std::string yaml = ts::to_yaml(m);
    // strip every runs block field
    for (const std::string needle :
         {"            runs:\n", "              batter: 0\n", "              extras: 0\n",
          "              total: 0\n"}) {
      for (auto pos = yaml.find(needle); pos != std::string::npos; pos = yaml.find(needle))
        yaml.erase(pos, needle.size());
    }
    try {
      parse_match(yaml, "x");
      FAIL("expected throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::schema_violation);
    }
  }
  SECTION("unknown match format") {
    auto m = one_over_match("IT20");
    try {
      parse_match(ts::to_yaml(m), "x");
      FAIL("expected throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::unknown_format);
    }
  }
  SECTION("over numbers going backwards") {
    ts::MatchSpec m = one_over_match();
    m.innings[0].overs.push_back(ts::flat_over(5, "Bowler.Y", 0));
    m.innings[0].overs.push_back(ts::flat_over(4, "Bowler.X", 0));
    try {
      parse_match(ts::to_yaml(m), "x");
      FAIL("expected throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::schema_violation);
    }
  }
  SECTION("extras breakdown inconsistent with runs.extras") {
    std::string yaml = ts::to_yaml(one_over_match());
    const std::string needle = "              extras: 0\n";
    const auto pos = yaml.find(needle);
    REQUIRE(pos != std::string::npos);
    yaml.replace(pos, needle.size(), "              extras: 3\n");
    CHECK_THROWS_AS(parse_match(yaml, "x"), error);
  }
}

TEST_CASE("wicket kinds are preserved verbatim and capped at two") {
  ts::MatchSpec m = one_over_match();
  auto& ball = m.innings[0].overs[0].balls[3];
  ball.wicket_kind = "caught and bowled";
  const auto [meta, dels] = parse_match(ts::to_yaml(m), "x");
  REQUIRE(dels[3].wickets.size() == 1);
  CHECK(dels[3].wickets[0].kind == "caught and bowled");
  CHECK(dels[3].wickets[0].player_out == "Bat.A");
}

TEST_CASE("super-over innings are flagged and kept out of the persisted corpus") {
  ts::MatchSpec m = one_over_match();
  ts::InningsSpec super;
  super.batting_team = "Alpha";
  super.super_over = true;
  super.overs.push_back(ts::flat_over(0, "Bowler.Z", 1));
  m.innings.push_back(super);

  const auto [meta, dels] = parse_match(ts::to_yaml(m), "x");
  REQUIRE(dels.size() == 12);
  CHECK(dels[11].super_over);

  ts::TempDir dir("ingest_super");
  ts::write_file(dir.path() / "x.yaml", ts::to_yaml(m));
  ts::TempDir out("ingest_super_out");
  const Corpus corpus = ingest_corpus(dir.path(), MatchFormat::ODI);
  persist_corpus(corpus, out.str());
  const Corpus reread = load_corpus(out.str(), MatchFormat::ODI);
  CHECK(reread.deliveries.size() == 6);
  for (const auto& d : reread.deliveries) CHECK(d.bowler == "Bowler.X");
}

TEST_CASE("ingest_corpus filters by format and reports stragglers") {
  ts::TempDir dir("ingest_mixed");
  auto odi1 = one_over_match();
  auto odi2 = one_over_match();
  odi2.date = "2016-02-01";
  auto test_match = one_over_match("Test");
  ts::write_file(dir.path() / "1001.yaml", ts::to_yaml(odi1));
  ts::write_file(dir.path() / "1002.yaml", ts::to_yaml(odi2));
  ts::write_file(dir.path() / "1003.yaml", ts::to_yaml(test_match));
  ts::write_file(dir.path() / "notes.txt", "not a match file");
  ts::write_file(dir.path() / "broken.yaml", "::: nope [[[");

  IngestReport report;
  const Corpus corpus = ingest_corpus(dir.path(), MatchFormat::ODI, &report);
  CHECK(corpus.matches.size() == 2);
  CHECK(report.files_seen == 4);  // .txt is not considered
  CHECK(report.files_parsed == 3);
  CHECK(report.files_in_format == 2);
  REQUIRE(report.issues.size() == 1);
  CHECK(report.issues[0].file == "broken.yaml");

  SECTION("empty after filtering is EMPTY_CORPUS") {
    try {
      ingest_corpus(dir.path(), MatchFormat::T20I);
      FAIL("expected throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::empty_corpus);
    }
  }
  SECTION("missing directory is an I/O error") {
    try {
      ingest_corpus(dir.path() / "nope", MatchFormat::ODI);
      FAIL("expected throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::io_error);
    }
  }
}

TEST_CASE("corpus ordering is chronological by date then match id") {
  ts::TempDir dir("ingest_order");
  auto later = one_over_match();
  later.date = "2017-05-01";
  auto earlier = one_over_match();
  earlier.date = "2015-03-01";
  ts::write_file(dir.path() / "0001.yaml", ts::to_yaml(later));
  ts::write_file(dir.path() / "0002.yaml", ts::to_yaml(earlier));
  const Corpus corpus = ingest_corpus(dir.path(), MatchFormat::ODI);
  REQUIRE(corpus.matches.size() == 2);
  CHECK(corpus.matches[0].match_id == "0002");
  CHECK(corpus.matches[1].match_id == "0001");
  CHECK(corpus.deliveries.front().match_id == "0002");
}

TEST_CASE("intermediate round-trip preserves every delivery field") {
  ts::TempDir dir("ingest_rt");
  ts::MatchSpec m = one_over_match();
  // spice up the deliveries: extras of every kind, two wickets, quoting
  auto& over = m.innings[0].overs[0];
  over.balls[0].batter_runs = 4;
  over.balls[1].wides = 2;
  over.balls[2].noballs = 1;
  over.balls[2].batter_runs = 1;
  over.balls[3].byes = 4;
  over.balls[4].legbyes = 1;
  over.balls[5].penalty = 5;
  over.balls[5].wicket_kind = "run out";
  ts::BallSpec extra_ball;
  extra_ball.bowler = "Bowler.X";
  extra_ball.wicket_kind = "caught";
  over.balls.push_back(extra_ball);
  m.innings.push_back(ts::innings_of("Alpha", {{"R1", 2}, {"R2", 3}}));
  ts::write_file(dir.path() / "m1.yaml", ts::to_yaml(m));

  ts::TempDir out("ingest_rt_out");
  const Corpus corpus = ingest_corpus(dir.path(), MatchFormat::ODI);
  persist_corpus(corpus, out.str());
  const Corpus reread = load_corpus(out.str(), MatchFormat::ODI);

  REQUIRE(reread.deliveries.size() == corpus.deliveries.size());
  for (size_t i = 0; i < corpus.deliveries.size(); ++i)
    CHECK(reread.deliveries[i] == corpus.deliveries[i]);
  REQUIRE(reread.matches.size() == corpus.matches.size());
  for (size_t i = 0; i < corpus.matches.size(); ++i)
    CHECK(reread.matches[i] == corpus.matches[i]);
}

TEST_CASE("planted run totals survive ingestion") {
  ts::TempDir dir("ingest_totals");
  ts::MatchSpec m = one_over_match();
  auto& over = m.innings[0].overs[0];
  over.balls[0].batter_runs = 4;
  over.balls[1].wides = 1;
  over.balls[2].byes = 2;
  over.balls[4].batter_runs = 6;
  // planted: 4 + 6 batter, 1 wide, 2 byes = 13
  ts::write_file(dir.path() / "m1.yaml", ts::to_yaml(m));
  const Corpus corpus = ingest_corpus(dir.path(), MatchFormat::ODI);
  int total = 0;
  for (const auto& d : corpus.deliveries) total += d.total_runs();
  CHECK(total == 13);
}

TEST_CASE("re-ingestion is deterministic and replaces prior output") {
  ts::TempDir dir("ingest_det");
  for (int i = 0; i < 3; ++i) {
    auto m = one_over_match();
    m.date = "2016-0" + std::to_string(i + 1) + "-01";
    ts::write_file(dir.path() / (std::to_string(9000 + i) + ".yaml"), ts::to_yaml(m));
  }
  ts::TempDir out("ingest_det_out");
  persist_corpus(ingest_corpus(dir.path(), MatchFormat::ODI), out.str());
  const std::string first = ts::read_file(deliveries_csv_path(out.str(), MatchFormat::ODI));
  const std::string first_matches = ts::read_file(matches_csv_path(out.str(), MatchFormat::ODI));
  persist_corpus(ingest_corpus(dir.path(), MatchFormat::ODI), out.str());
  CHECK(ts::read_file(deliveries_csv_path(out.str(), MatchFormat::ODI)) == first);
  CHECK(ts::read_file(matches_csv_path(out.str(), MatchFormat::ODI)) == first_matches);
  CHECK(first.substr(0, first.find('\n')) ==
        "match_id,format,innings,over_idx,ball_seq,bowler,striker,batter_runs,wides,noballs,"
        "byes,legbyes,penalty,wicket_kind,player_out");
}
