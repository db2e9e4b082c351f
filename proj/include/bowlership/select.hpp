#pragma once

// Squad selection over the weighted bowlership network. The greedy
// routine first takes the connected subgraph of size 2..k with the best
// average weighted degree, then repeatedly adds the disjoint connected
// subgraph (sizes shrinking from what remains) with the best combined
// score of average weighted degree plus cross-edge weight to everything
// selected so far. An exhaustive best-k-subset search doubles as the
// reference the greedy result is measured against.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bowlership/errors.hpp"
#include "bowlership/graph.hpp"

namespace bowlership {

struct SelectionStep {
  std::vector<std::string> chosen;  // sorted
  double avg_weighted_degree = 0.0;
  long cross_weight = 0;   // to the previously selected vertices
  double total_score = 0.0;  // W(S) + cross
};

struct SelectionResult {
  std::vector<std::vector<std::string>> selected;  // first entry is S_max when one exists
  std::vector<std::string> union_vertices;         // sorted, exactly k names
  std::vector<SelectionStep> trace;
};

namespace detail {

// Scores are rationals (weight sums over subset sizes); comparing with
// cross-multiplication keeps ties exact.
struct Score {
  long num = 0;
  long den = 1;
};

inline bool score_less(const Score& a, const Score& b) { return a.num * b.den < b.num * a.den; }

struct Candidate {
  std::vector<std::string> names;  // sorted
  Score score;
  long induced = 0;
  long cross = 0;
};

// best = highest score, then larger subgraph, then lexicographically
// smallest name tuple
inline bool candidate_better(const Candidate& a, const Candidate& b) {
  if (score_less(b.score, a.score)) return true;
  if (score_less(a.score, b.score)) return false;
  if (a.names.size() != b.names.size()) return a.names.size() > b.names.size();
  return a.names < b.names;
}

}  // namespace detail

inline SelectionResult bowler_select(const WeightedGraph& g, int k) {
  if (k < 1) raise(errc::k_nonpositive, "k must be at least 1");
  const int n = static_cast<int>(g.vertices.size());
  if (k > n) raise(errc::k_too_large, "k exceeds the vertex count");

  std::vector<std::string> all(g.vertices.begin(), g.vertices.end());

  SelectionResult result;
  std::set<std::string> chosen_set;

  // S_max: best average weighted degree among connected subgraphs of
  // size 2..k (none exist on an edgeless graph; fillers then do it all)
  {
    std::vector<detail::Candidate> cands;
    for (auto& names : detail::connected_subgraphs(g, all, 2, k)) {
      detail::Candidate c;
      c.induced = detail::induced_weight(g, names);
      c.score = {c.induced, static_cast<long>(names.size())};
      c.names = std::move(names);
      cands.push_back(std::move(c));
    }
    const detail::Candidate* best = nullptr;
    for (const auto& c : cands)
      if (!best || detail::candidate_better(c, *best)) best = &c;
    if (best) {
      SelectionStep step;
      step.chosen = best->names;
      step.avg_weighted_degree =
          static_cast<double>(best->induced) / static_cast<double>(best->names.size());
      step.total_score = step.avg_weighted_degree;
      result.trace.push_back(step);
      result.selected.push_back(best->names);
      chosen_set.insert(best->names.begin(), best->names.end());
    }
  }

  int remain = k - static_cast<int>(chosen_set.size());
  int size = remain;
  while (remain > 0) {
    if (size > remain) size = remain;
    std::vector<std::string> unselected;
    for (const auto& v : all)
      if (!chosen_set.count(v)) unselected.push_back(v);

    std::vector<detail::Candidate> cands;
    for (auto& names : detail::connected_subgraphs(g, unselected, size, size)) {
      detail::Candidate c;
      c.induced = detail::induced_weight(g, names);
      for (const auto& v : names)
        for (const auto& s : chosen_set) c.cross += g.weight(v, s);
      // WT = W(S) + w(cross): num/den with den = |S|
      c.score = {c.induced + c.cross * static_cast<long>(names.size()),
                 static_cast<long>(names.size())};
      c.names = std::move(names);
      cands.push_back(std::move(c));
    }
    if (cands.empty()) {
      --size;
      continue;
    }
    const detail::Candidate* best = &cands.front();
    for (const auto& c : cands)
      if (detail::candidate_better(c, *best)) best = &c;

    SelectionStep step;
    step.chosen = best->names;
    step.avg_weighted_degree =
        static_cast<double>(best->induced) / static_cast<double>(best->names.size());
    step.cross_weight = best->cross;
    step.total_score = step.avg_weighted_degree + static_cast<double>(best->cross);
    result.trace.push_back(step);
    result.selected.push_back(best->names);
    chosen_set.insert(best->names.begin(), best->names.end());
    remain -= static_cast<int>(best->names.size());
  }

  result.union_vertices.assign(chosen_set.begin(), chosen_set.end());
  return result;
}

// Best k-subset by total induced weight, ties broken by the smallest
// sorted name tuple. Only meant for small graphs.
inline std::vector<std::string> exhaustive_select(const WeightedGraph& g, int k) {
  if (k < 1) raise(errc::k_nonpositive, "k must be at least 1");
  const int n = static_cast<int>(g.vertices.size());
  if (k > n) raise(errc::k_too_large, "k exceeds the vertex count");
  if (n > 20) raise(errc::too_many_vertices, "exhaustive_select is capped at 20 vertices");

  std::vector<std::string> verts(g.vertices.begin(), g.vertices.end());
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;

  std::vector<std::string> best;
  long best_weight = 0;
  bool have_best = false;
  while (true) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(k));
    for (int i : idx) names.push_back(verts[static_cast<size_t>(i)]);
    const long w = detail::induced_weight(g, names);
    if (!have_best || w > best_weight) {  // lex order of enumeration breaks ties
      best = names;
      best_weight = w;
      have_best = true;
    }
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }
  return best;
}

}  // namespace bowlership
