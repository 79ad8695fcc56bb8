#include "gexplore/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "gexplore/errors.hpp"

namespace gx {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges)), adjacency_(n) {
  for (Edge& e : edges_) {
    if (e.u >= n || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + " " +
                                  std::to_string(e.v));
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw std::invalid_argument("repeated edge " + std::to_string(edges_[i].u) + " " +
                                  std::to_string(edges_[i].v));
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back({e.v, e.cost});
    adjacency_[e.v].push_back({e.u, e.cost});
  }
  for (auto& adj : adjacency_)
    std::sort(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
}

std::optional<Cost> Graph::cost(Vertex a, Vertex b) const {
  const auto& adj = adjacency_.at(a);
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Neighbor& nb, Vertex x) { return nb.to < x; });
  if (it == adj.end() || it->to != b) return std::nullopt;
  return it->cost;
}

bool Graph::connected() const {
  if (n() == 0) return true;
  std::vector<char> seen(n(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : adjacency_[v])
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        ++count;
        stack.push_back(nb.to);
      }
  }
  return count == n();
}

Instance make_instance(Graph graph, Vertex start, std::string id) {
  if (graph.n() == 0) throw std::invalid_argument("instance needs at least one vertex");
  if (start >= graph.n()) throw std::invalid_argument("start vertex out of range");
  if (!graph.connected()) throw Disconnected();
  return Instance{std::move(id), std::move(graph), start};
}

// ---------------------------------------------------------------------------

ExplorationState::ExplorationState(const Instance& instance)
    : instance_(&instance),
      explored_(instance.graph.n(), 0),
      labeled_(instance.graph.n(), 0),
      position_(instance.start) {
  labeled_.at(position_) = 1;
  reveal(position_);
  walk_.push_back(position_);
}

std::span<const Neighbor> ExplorationState::incident(Vertex v) const {
  if (!explored(v)) throw std::logic_error("edges of an unexplored vertex are not all known");
  return instance_->graph.neighbors(v);
}

std::optional<Cost> ExplorationState::known_cost(Vertex a, Vertex b) const {
  if (!explored(a) && !explored(b)) return std::nullopt;
  return instance_->graph.cost(a, b);
}

std::vector<Edge> ExplorationState::known_edges() const {
  std::vector<Edge> out;
  for (const Edge& e : instance_->graph.edges())
    if (explored_[e.u] || explored_[e.v]) out.push_back(e);
  return out;
}

void ExplorationState::reveal(Vertex v) {
  if (explored_.at(v)) return;
  if (!labeled_[v]) throw Stuck("vertex " + std::to_string(v) + " is not known yet");
  explored_[v] = 1;
  ++explored_count_;
  for (const Neighbor& nb : instance_->graph.neighbors(v)) labeled_[nb.to] = 1;
}

void ExplorationState::traverse(const Path& path) {
  for (Vertex next : path.steps) {
    auto c = known_cost(position_, next);
    if (!c) throw Stuck("edge " + std::to_string(position_) + "-" + std::to_string(next) + " is not known");
    total_cost_ += *c;
    position_ = next;
    walk_.push_back(next);
    reveal(next);
  }
}

void ExplorationState::visit_without_cost(Vertex v) {
  reveal(v);
  position_ = v;
}

// ---------------------------------------------------------------------------

namespace {

struct Label {
  Cost dist = kInfinity;
  std::uint32_t hops = std::numeric_limits<std::uint32_t>::max();
};

bool better(Cost d, std::uint32_t h, const Label& l) { return d < l.dist || (d == l.dist && h < l.hops); }

// Lexicographic (cost, hops) Dijkstra. Vertices other than src are relaxed
// through only when expand(v) holds; they still receive labels. An edge is
// used only when known(from, to) holds.
template <class Expand, class Known>
std::vector<Label> dijkstra(const Graph& g, Vertex src, Expand&& expand, Known&& known) {
  std::vector<Label> lab(g.n());
  using Item = std::tuple<Cost, std::uint32_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  lab[src] = {0, 0};
  pq.emplace(0, 0, src);
  while (!pq.empty()) {
    auto [d, h, v] = pq.top();
    pq.pop();
    if (d != lab[v].dist || h != lab[v].hops) continue;
    if (v != src && !expand(v)) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!known(v, nb.to)) continue;
      Cost nd = d + nb.cost;
      if (better(nd, h + 1, lab[nb.to])) {
        lab[nb.to] = {nd, h + 1};
        pq.emplace(nd, h + 1, nb.to);
      }
    }
  }
  return lab;
}

constexpr auto kAll = [](Vertex) { return true; };
constexpr auto kAllEdges = [](Vertex, Vertex) { return true; };

template <class Passable, class Known>
Path restricted_path(const Graph& g, Vertex a, Vertex b, Passable&& passable, Known&& known) {
  if (a == b) return {};
  auto lab = dijkstra(g, b, passable, known);
  if (lab[a].dist == kInfinity)
    throw NoPath("no path from " + std::to_string(a) + " to " + std::to_string(b));
  Path p;
  p.cost = lab[a].dist;
  Vertex cur = a;
  while (cur != b) {
    Vertex chosen = cur;
    for (const Neighbor& nb : g.neighbors(cur)) {
      if ((nb.to != b && !passable(nb.to)) || !known(cur, nb.to)) continue;
      const Label& l = lab[nb.to];
      if (l.dist == kInfinity) continue;
      if (l.dist + nb.cost == lab[cur].dist && l.hops + 1 == lab[cur].hops) {
        chosen = nb.to;
        break;
      }
    }
    if (chosen == cur) throw std::logic_error("shortest path reconstruction failed");
    p.steps.push_back(chosen);
    cur = chosen;
  }
  return p;
}

std::vector<Cost> dist_only(const std::vector<Label>& lab) {
  std::vector<Cost> d(lab.size());
  for (std::size_t i = 0; i < lab.size(); ++i) d[i] = lab[i].dist;
  return d;
}

}  // namespace

Path shortest_path(const Graph& graph, Vertex a, Vertex b) {
  if (a >= graph.n() || b >= graph.n()) throw std::invalid_argument("vertex out of range");
  return restricted_path(graph, a, b, kAll, kAllEdges);
}

Path shortest_path(const ExplorationState& state, Vertex a, Vertex b) {
  if (!state.labeled(a)) throw NoPath("source " + std::to_string(a) + " is not known");
  if (!state.labeled(b)) throw NoPath("target " + std::to_string(b) + " is not known");
  auto explored = [&](Vertex v) { return state.explored(v); };
  auto known = [&](Vertex x, Vertex y) { return state.explored(x) || state.explored(y); };
  return restricted_path(state.instance().graph, a, b, explored, known);
}

std::vector<Cost> known_distances(const ExplorationState& state, Vertex a) {
  if (!state.labeled(a)) throw NoPath("source " + std::to_string(a) + " is not known");
  auto explored = [&](Vertex v) { return state.explored(v); };
  auto known = [&](Vertex x, Vertex y) { return state.explored(x) || state.explored(y); };
  auto d = dist_only(dijkstra(state.instance().graph, a, explored, known));
  for (Vertex v = 0; v < d.size(); ++v)
    if (!state.labeled(v)) d[v] = kInfinity;
  return d;
}

std::vector<Cost> distances(const Graph& graph, Vertex a) {
  return dist_only(dijkstra(graph, a, kAll, kAllEdges));
}

std::vector<std::vector<Cost>> all_pairs(const Graph& graph) {
  std::vector<std::vector<Cost>> d(graph.n());
  for (Vertex v = 0; v < graph.n(); ++v) d[v] = distances(graph, v);
  return d;
}

SpanningTree mst(const Graph& graph) {
  std::vector<Edge> es = graph.edges();
  std::stable_sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.cost, a.u, a.v) < std::tie(b.cost, b.u, b.v);
  });
  std::vector<Vertex> parent(graph.n());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  SpanningTree t;
  for (const Edge& e : es) {
    Vertex a = find(e.u), b = find(e.v);
    if (a == b) continue;
    parent[std::max(a, b)] = std::min(a, b);
    t.edges.push_back(e);
    t.cost += e.cost;
  }
  if (graph.n() > 0 && t.edges.size() + 1 != graph.n()) throw Disconnected();
  return t;
}

namespace {

struct HeldKarp {
  Cost cost = 0;
  std::vector<Vertex> order;  // Hamiltonian order on the closure, starting at start
};

HeldKarp held_karp(const Graph& graph, Vertex start) {
  const std::size_t n = graph.n();
  if (n > kExactOptLimit)
    throw TooLarge("exact oracle supports at most " + std::to_string(kExactOptLimit) + " vertices, got " +
                   std::to_string(n));
  if (start >= n) throw std::invalid_argument("start vertex out of range");
  if (n == 1) return {0, {start}};
  auto d = all_pairs(graph);
  std::vector<Vertex> others;
  for (Vertex v = 0; v < n; ++v)
    if (v != start) others.push_back(v);
  for (Vertex v : others)
    if (d[start][v] == kInfinity) throw Disconnected();
  const std::size_t k = others.size();
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<Cost> dp((full + 1) * k, kInfinity);
  std::vector<std::uint8_t> par((full + 1) * k, 0xff);
  for (std::size_t j = 0; j < k; ++j) dp[(std::size_t{1} << j) * k + j] = d[start][others[j]];
  for (std::size_t mask = 1; mask <= full; ++mask)
    for (std::size_t j = 0; j < k; ++j) {
      Cost cur = dp[mask * k + j];
      if (cur == kInfinity || !(mask >> j & 1)) continue;
      for (std::size_t l = 0; l < k; ++l) {
        if (mask >> l & 1) continue;
        std::size_t nm = mask | (std::size_t{1} << l);
        Cost cand = cur + d[others[j]][others[l]];
        if (cand < dp[nm * k + l]) {
          dp[nm * k + l] = cand;
          par[nm * k + l] = static_cast<std::uint8_t>(j);
        }
      }
    }
  Cost best = kInfinity;
  std::size_t last = 0;
  for (std::size_t j = 0; j < k; ++j) {
    Cost c = dp[full * k + j] + d[others[j]][start];
    if (c < best) {
      best = c;
      last = j;
    }
  }
  std::vector<Vertex> rev;
  std::size_t mask = full, j = last;
  while (true) {
    rev.push_back(others[j]);
    std::uint8_t p = par[mask * k + j];
    mask &= ~(std::size_t{1} << j);
    if (p == 0xff) break;
    j = p;
  }
  HeldKarp out{best, {start}};
  out.order.insert(out.order.end(), rev.rbegin(), rev.rend());
  return out;
}

}  // namespace

Cost exact_opt(const Graph& graph, Vertex start) { return held_karp(graph, start).cost; }

std::vector<Vertex> exact_tour(const Graph& graph, Vertex start) {
  HeldKarp hk = held_karp(graph, start);
  std::vector<char> seen(graph.n(), 0);
  std::vector<Vertex> order{start};
  seen[start] = 1;
  for (std::size_t i = 1; i < hk.order.size(); ++i)
    for (Vertex v : shortest_path(graph, hk.order[i - 1], hk.order[i]).steps)
      if (!seen[v]) {
        seen[v] = 1;
        order.push_back(v);
      }
  return order;
}

// ---------------------------------------------------------------------------

namespace {

bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

template <class... T>
bool parse_exact(const std::string& line, T&... out) {
  std::istringstream ss(line);
  ((ss >> out) && ...);
  if (!ss) return false;
  std::string rest;
  return !(ss >> rest);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long n = 0, m = 0;
  if (!next_data_line(in, line, lineno)) throw ParseError("missing 'n m' header", lineno + 1);
  if (!parse_exact(line, n, m) || n <= 0 || m < 0) throw ParseError("expected 'n m' header", lineno);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<std::pair<Vertex, Vertex>> seen;
  std::vector<std::size_t> lines;
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line, lineno))
      throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(i), lineno + 1);
    long long u = 0, v = 0;
    unsigned long long c = 0;
    if (!parse_exact(line, u, v, c) || line.find('-') != std::string::npos)
      throw ParseError("expected 'u v c' with non-negative integers", lineno);
    if (u >= n || v >= n) throw ParseError("vertex out of range", lineno);
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), lineno);
    std::pair<Vertex, Vertex> key = std::minmax(static_cast<Vertex>(u), static_cast<Vertex>(v));
    seen.emplace_back(key.first, key.second);
    lines.push_back(lineno);
    edges.push_back({key.first, key.second, c});
  }
  if (next_data_line(in, line, lineno)) throw ParseError("trailing data after edge list", lineno);
  std::vector<std::size_t> idx(seen.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return seen[a] < seen[b]; });
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (seen[idx[i]] == seen[idx[i - 1]])
      throw ParseError("repeated edge " + std::to_string(seen[idx[i]].first) + " " +
                           std::to_string(seen[idx[i]].second),
                       lines[idx[i]]);
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << graph.n() << ' ' << graph.m() << '\n';
  for (const Edge& e : graph.edges()) out << e.u << ' ' << e.v << ' ' << e.cost << '\n';
}

unsigned ceil_log2(std::size_t n) {
  unsigned k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace gx
