#pragma once

// Brute-force oracles, written independently of the library code they check.

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gexplore/graph.hpp"

namespace gx::testing {

inline Instance triangle() {
  // c(0,1)=1, c(1,2)=1, c(0,2)=3
  return make_instance(Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 3}}), 0, "triangle");
}

inline Instance path_graph(std::vector<Cost> costs) {
  std::vector<Edge> es;
  for (Vertex i = 0; i < costs.size(); ++i) es.push_back({i, i + 1, costs[i]});
  return make_instance(Graph(costs.size() + 1, es), 0, "path");
}

inline std::string fixture(const std::string& name) { return std::string(GEXPLORE_FIXTURES) + "/" + name; }

inline std::vector<std::vector<Cost>> floyd(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<std::vector<Cost>> d(n, std::vector<Cost>(n, kInfinity));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = std::min(d[e.u][e.v], e.cost);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != kInfinity && d[k][j] != kInfinity) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Cheapest closed walk from s through all vertices: every order of the other
/// vertices, costed on the metric closure.
inline Cost brute_opt(const Graph& g, Vertex s) {
  auto d = floyd(g);
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < g.n(); ++v)
    if (v != s) rest.push_back(v);
  Cost best = kInfinity;
  do {
    Cost c = 0;
    Vertex at = s;
    for (Vertex v : rest) c += d[at][v], at = v;
    best = std::min(best, c + d[at][s]);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

/// Every labeled spanning tree of K_n, decoded from all Pruefer sequences.
inline std::vector<std::vector<Edge>> all_trees(std::size_t n) {
  std::vector<std::vector<Edge>> out;
  if (n == 1) return {{}};
  if (n == 2) return {{{0, 1, 0}}};
  std::vector<Vertex> seq(n - 2, 0);
  while (true) {
    std::vector<int> degree(n, 1);
    for (Vertex x : seq) ++degree[x];
    std::vector<Edge> tree;
    for (Vertex x : seq) {
      Vertex leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      tree.push_back({std::min(leaf, x), std::max(leaf, x), 0});
      --degree[leaf];
      --degree[x];
    }
    Vertex a = 0;
    while (degree[a] != 1) ++a;
    Vertex b = a + 1;
    while (degree[b] != 1) ++b;
    tree.push_back({a, b, 0});
    out.push_back(tree);
    std::size_t k = 0;
    while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
    if (k == seq.size()) break;
  }
  return out;
}

/// Every ordering of the vertices beginning with start (both directions).
inline std::vector<std::vector<Vertex>> all_orders(std::size_t n, Vertex start) {
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (v != start) rest.push_back(v);
  std::vector<std::vector<Vertex>> out;
  do {
    std::vector<Vertex> o{start};
    o.insert(o.end(), rest.begin(), rest.end());
    out.push_back(o);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

/// Minimum spanning tree cost over all edge subsets of size n-1 that connect.
inline Cost brute_mst(const Graph& g) {
  const auto& es = g.edges();
  const std::size_t n = g.n();
  if (n == 1) return 0;
  Cost best = kInfinity;
  std::vector<char> pick(es.size(), 0);
  std::fill(pick.end() - static_cast<long>(n - 1), pick.end(), 1);
  do {
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    Cost c = 0;
    bool acyclic = true;
    for (std::size_t k = 0; k < es.size(); ++k)
      if (pick[k]) {
        Vertex a = find(es[k].u), b = find(es[k].v);
        if (a == b) acyclic = false;
        parent[a] = b;
        c += es[k].cost;
      }
    if (acyclic) best = std::min(best, c);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace gx::testing
