#pragma once

// Bowlership networks: the directed signed graph of classified edges and
// its undirected weighted conversion. Each directed edge contributes +1
// (positive) or -1 (negative) to its unordered pair; a pair summing to
// zero keeps no edge, so an opposing pair of edges cancels out.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bowlership/classify.hpp"
#include "bowlership/csv.hpp"
#include "bowlership/errors.hpp"

namespace bowlership {

struct DirectedSignedGraph {
  std::set<std::string> vertices;
  std::vector<BowlershipEdge> edges;  // at most one per (from, to, metric)

  void add_edge(const BowlershipEdge& e) {
    if (e.from == e.to) raise(errc::schema_violation, "self-loop edge " + e.from);
    for (const auto& existing : edges)
      if (existing.from == e.from && existing.to == e.to && existing.metric == e.metric)
        raise(errc::schema_violation, "duplicate edge " + e.from + "->" + e.to);
    vertices.insert(e.from);
    vertices.insert(e.to);
    edges.push_back(e);
  }
};

struct WeightedGraph {
  std::set<std::string> vertices;
  std::map<std::pair<std::string, std::string>, int> edges;  // key.first < key.second, weight != 0

  int weight(const std::string& a, const std::string& b) const {
    auto it = edges.find(std::minmax(a, b));
    return it == edges.end() ? 0 : it->second;
  }
};

inline WeightedGraph create_weighted_graph(const DirectedSignedGraph& g) {
  WeightedGraph out;
  out.vertices = g.vertices;
  std::map<std::pair<std::string, std::string>, int> sums;
  for (const auto& e : g.edges)
    sums[std::minmax(e.from, e.to)] += e.sign == EdgeSign::Positive ? 1 : -1;
  for (const auto& [key, w] : sums)
    if (w != 0) out.edges.emplace(key, w);
  return out;
}

// W(S): sum of weights of edges with both endpoints in S, over |S|.
inline double average_weighted_degree(const std::set<std::string>& s, const WeightedGraph& g) {
  if (s.empty()) raise(errc::empty_set, "average_weighted_degree of empty set");
  for (const auto& v : s)
    if (!g.vertices.count(v)) raise(errc::unknown_vertex, v);
  long sum = 0;
  for (const auto& [key, w] : g.edges)
    if (s.count(key.first) && s.count(key.second)) sum += w;
  return static_cast<double>(sum) / static_cast<double>(s.size());
}

// Connected components, each sorted, in order of smallest vertex.
inline std::vector<std::vector<std::string>> components(const WeightedGraph& g) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& v : g.vertices) adj[v];
  for (const auto& [key, w] : g.edges) {
    (void)w;
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  std::set<std::string> seen;
  std::vector<std::vector<std::string>> comps;
  for (const auto& [v, nbrs] : adj) {
    (void)nbrs;
    if (seen.count(v)) continue;
    std::vector<std::string> comp, stack = {v};
    seen.insert(v);
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      comp.push_back(cur);
      for (const auto& nb : adj[cur])
        if (seen.insert(nb).second) stack.push_back(nb);
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

namespace detail {

// Enumerates connected induced subgraphs with size in [min_size, max_size]
// among `allowed` vertices. Subsets come out as sorted name vectors in a
// deterministic order. Component sizes in this domain are tiny, so a
// subset scan with a connectivity check is plenty.
inline std::vector<std::vector<std::string>> connected_subgraphs(
    const WeightedGraph& g, const std::vector<std::string>& allowed, int min_size, int max_size) {
  std::vector<std::string> verts = allowed;
  std::sort(verts.begin(), verts.end());
  const int n = static_cast<int>(verts.size());

  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.weight(verts[static_cast<size_t>(i)], verts[static_cast<size_t>(j)]) != 0) {
        adj[static_cast<size_t>(i)].push_back(j);
        adj[static_cast<size_t>(j)].push_back(i);
      }

  auto connected = [&](const std::vector<int>& subset) {
    if (subset.size() <= 1) return true;
    std::set<int> in(subset.begin(), subset.end());
    std::set<int> seen = {subset[0]};
    std::vector<int> stack = {subset[0]};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int nb : adj[static_cast<size_t>(cur)])
        if (in.count(nb) && seen.insert(nb).second) stack.push_back(nb);
    }
    return seen.size() == subset.size();
  };

  std::vector<std::vector<std::string>> out;
  std::vector<int> subset;
  for (int size = std::max(1, min_size); size <= std::min(max_size, n); ++size) {
    subset.assign(static_cast<size_t>(size), 0);
    // lexicographic combinations of indices
    for (int i = 0; i < size; ++i) subset[static_cast<size_t>(i)] = i;
    while (true) {
      if (connected(subset)) {
        std::vector<std::string> names;
        names.reserve(subset.size());
        for (int idx : subset) names.push_back(verts[static_cast<size_t>(idx)]);
        out.push_back(std::move(names));
      }
      int pos = size - 1;
      while (pos >= 0 && subset[static_cast<size_t>(pos)] == n - size + pos) --pos;
      if (pos < 0) break;
      ++subset[static_cast<size_t>(pos)];
      for (int i = pos + 1; i < size; ++i)
        subset[static_cast<size_t>(i)] = subset[static_cast<size_t>(i - 1)] + 1;
    }
  }
  return out;
}

inline long induced_weight(const WeightedGraph& g, const std::vector<std::string>& s) {
  long sum = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) sum += g.weight(s[i], s[j]);
  return sum;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------------

inline std::string quote_dot(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string directed_graph_dot(const DirectedSignedGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quote_dot(name) << " {\n";
  for (const auto& v : g.vertices) os << "  " << quote_dot(v) << ";\n";
  std::vector<const BowlershipEdge*> edges;
  for (const auto& e : g.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const BowlershipEdge* a, const BowlershipEdge* b) {
    return std::tie(a->from, a->to, a->metric) < std::tie(b->from, b->to, b->metric);
  });
  for (const auto* e : edges)
    os << "  " << quote_dot(e->from) << " -> " << quote_dot(e->to) << " [label=\""
       << (e->sign == EdgeSign::Positive ? "+" : "-") << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string weighted_graph_dot(const WeightedGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "graph " << quote_dot(name) << " {\n";
  for (const auto& v : g.vertices) os << "  " << quote_dot(v) << ";\n";
  for (const auto& [key, w] : g.edges)
    os << "  " << quote_dot(key.first) << " -- " << quote_dot(key.second) << " [label=\"" << w
       << "\", weight=" << w << "];\n";
  os << "}\n";
  return os.str();
}

// Flat edge listing; the weight column is the undirected pair weight the
// directed edge contributes to.
inline void write_edges_csv(const DirectedSignedGraph& g, const WeightedGraph& weighted,
                            const std::string& path) {
  csv::Writer w(path);
  w.row({"from", "to", "metric", "sign", "p_greater", "p_two", "p_less", "weight"});
  std::vector<const BowlershipEdge*> edges;
  for (const auto& e : g.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const BowlershipEdge* a, const BowlershipEdge* b) {
    return std::tie(a->from, a->to, a->metric) < std::tie(b->from, b->to, b->metric);
  });
  for (const auto* e : edges)
    w.row({e->from, e->to, metric_name(e->metric), sign_name(e->sign),
           csv::format_double(e->mw.p_greater), csv::format_double(e->mw.p_two_sided),
           csv::format_double(e->mw.p_less), std::to_string(weighted.weight(e->from, e->to))});
}

}  // namespace bowlership
