#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bowlership/select.hpp"
#include "support/rng.hpp"

using namespace bowlership;

namespace {

WeightedGraph graph_of(const std::vector<std::string>& vertices,
                       const std::map<std::pair<std::string, std::string>, int>& edges) {
  WeightedGraph g;
  g.vertices.insert(vertices.begin(), vertices.end());
  for (const auto& [key, w] : edges) g.edges.emplace(std::minmax(key.first, key.second), w);
  return g;
}

WeightedGraph random_graph(testsupport::Rng& rng, int n, double density) {
  std::vector<std::string> verts;
  for (int i = 0; i < n; ++i) verts.push_back("v" + std::to_string(i));
  std::map<std::pair<std::string, std::string>, int> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < density) {
        const int mag = rng.int_in(1, 2);
        edges[{verts[static_cast<size_t>(i)], verts[static_cast<size_t>(j)]}] =
            rng.uniform() < 0.75 ? mag : -mag;
      }
  return graph_of(verts, edges);
}

long induced(const WeightedGraph& g, const std::vector<std::string>& s) {
  long sum = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) sum += g.weight(s[i], s[j]);
  return sum;
}

}  // namespace

TEST_CASE("the denser end of a path wins at k=2") {
  const auto g = graph_of({"A", "B", "C"}, {{{"A", "B"}, 2}, {{"B", "C"}, 1}});
  const auto res = bowler_select(g, 2);
  REQUIRE(res.selected.size() == 1);
  CHECK(res.selected[0] == std::vector<std::string>{"A", "B"});
  CHECK(res.union_vertices == std::vector<std::string>{"A", "B"});
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].avg_weighted_degree == Catch::Approx(1.0));
}

TEST_CASE("an edgeless graph falls back to lexicographic singles") {
  const auto g = graph_of({"Delta", "Alpha", "Charlie", "Bravo"}, {});
  const auto res = bowler_select(g, 2);
  CHECK(res.union_vertices == std::vector<std::string>{"Alpha", "Bravo"});
  REQUIRE(res.selected.size() == 2);
  CHECK(res.selected[0] == std::vector<std::string>{"Alpha"});
  for (const auto& step : res.trace) CHECK(step.total_score == 0.0);
}

TEST_CASE("k bounds are validated") {
  const auto g = graph_of({"A", "B"}, {{{"A", "B"}, 1}});
  try {
    bowler_select(g, 0);
    FAIL("expected throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::k_nonpositive);
  }
  try {
    bowler_select(g, 3);
    FAIL("expected throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::k_too_large);
  }
}

TEST_CASE("a full component is selected when its average degree dominates") {
  const auto g = graph_of({"A", "B", "C", "D"},
                          {{{"A", "B"}, 2}, {{"B", "C"}, 2}, {{"A", "C"}, 2}, {{"C", "D"}, 2}});
  const auto res = bowler_select(g, 4);
  CHECK(res.union_vertices == std::vector<std::string>{"A", "B", "C", "D"});
  // whole graph: w=8 over 4 vertices = 2.0; triangle: 6/3 = 2.0; tie goes
  // to the larger subgraph
  REQUIRE(res.selected.size() == 1);
  CHECK(res.selected[0].size() == 4);
}

TEST_CASE("fillers prefer strong cross edges to the seed subgraph") {
  // S_max is the +5 pair {A,B} (the {A,B,D} triangle averages lower);
  // filler D attaches with cross weight 2 while the disconnected pair
  // {E,F} only carries 1 internally
  const auto g = graph_of({"A", "B", "D", "E", "F"},
                          {{{"A", "B"}, 5}, {{"B", "D"}, 2}, {{"E", "F"}, 1}});
  const auto res = bowler_select(g, 3);
  REQUIRE(res.selected.size() == 2);
  CHECK(res.selected[0] == std::vector<std::string>{"A", "B"});
  CHECK(res.selected[1] == std::vector<std::string>{"D"});
  REQUIRE(res.trace.size() == 2);
  CHECK(res.trace[1].cross_weight == 2);
  CHECK(res.trace[1].total_score == Catch::Approx(2.0));
}

TEST_CASE("cross edges count against every previously selected vertex") {
  // {A,B} at weight 5 beats every triangle on average degree; the filler
  // race is then C (cross 1+1=2 via both selected vertices) against D
  // (cross 2-1=1), so C must win
  const auto g = graph_of({"A", "B", "C", "D"}, {{{"A", "B"}, 5},
                                                 {{"A", "C"}, 1},
                                                 {{"B", "C"}, 1},
                                                 {{"A", "D"}, 2},
                                                 {{"B", "D"}, -1}});
  const auto res = bowler_select(g, 3);
  REQUIRE(res.selected.size() == 2);
  CHECK(res.selected[0] == std::vector<std::string>{"A", "B"});
  CHECK(res.selected[1] == std::vector<std::string>{"C"});
  CHECK(res.trace[1].cross_weight == 2);
}

TEST_CASE("selection output is deterministic and exactly k distinct names") {
  testsupport::Rng rng(13579);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = rng.int_in(3, 10);
    const auto g = random_graph(rng, n, 0.45);
    const int k = rng.int_in(1, n);
    const auto first = bowler_select(g, k);
    const auto second = bowler_select(g, k);
    CHECK(first.union_vertices == second.union_vertices);
    CHECK(first.selected == second.selected);
    const std::set<std::string> unique(first.union_vertices.begin(),
                                       first.union_vertices.end());
    CHECK(unique.size() == static_cast<size_t>(k));
    for (const auto& v : unique) CHECK(g.vertices.count(v) == 1);
  }
}

TEST_CASE("exhaustive_select fixtures") {
  SECTION("whole component at k = component size") {
    const auto g = graph_of({"A", "B", "C", "D"},
                            {{{"A", "B"}, 1}, {{"B", "C"}, 1}, {{"C", "D"}, 1}});
    CHECK(exhaustive_select(g, 4) == std::vector<std::string>{"A", "B", "C", "D"});
  }
  SECTION("star center plus the lexicographically smallest leaf") {
    const auto g = graph_of({"M", "P", "Q", "R"},
                            {{{"M", "P"}, 1}, {{"M", "Q"}, 1}, {{"M", "R"}, 1}});
    CHECK(exhaustive_select(g, 2) == std::vector<std::string>{"M", "P"});
  }
  SECTION("bounds") {
    const auto g = graph_of({"A", "B"}, {});
    CHECK_THROWS_AS(exhaustive_select(g, 0), error);
    CHECK_THROWS_AS(exhaustive_select(g, 3), error);
    WeightedGraph big;
    for (int i = 0; i < 21; ++i) big.vertices.insert("v" + std::to_string(i));
    try {
      exhaustive_select(big, 2);
      FAIL("expected throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::too_many_vertices);
    }
  }
}

TEST_CASE("the oracle never scores below the greedy choice") {
  testsupport::Rng rng(24680);
  for (int iter = 0; iter < 50; ++iter) {
    const auto g = random_graph(rng, 8, 0.5);
    const int k = rng.int_in(2, 5);
    const auto greedy = bowler_select(g, k);
    const auto best = exhaustive_select(g, k);
    CHECK(induced(g, best) >= induced(g, greedy.union_vertices));
  }
}
