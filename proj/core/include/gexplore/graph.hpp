#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gx {

using Vertex = std::uint32_t;
using Cost = std::uint64_t;

inline constexpr Cost kInfinity = std::numeric_limits<Cost>::max();

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Cost cost = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex to = 0;
  Cost cost = 0;
};

/// Ground truth. Vertices are 0..n-1; the index doubles as the label that
/// breaks every tie in the library.
class Graph {
 public:
  Graph() = default;

  /// Rejects out-of-range endpoints, self-loops and repeated pairs.
  /// Connectivity is not required here (see make_instance).
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const noexcept { return adjacency_.size(); }
  std::size_t m() const noexcept { return edges_.size(); }

  /// Sorted by (u, v).
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Sorted by neighbor index.
  std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_.at(v); }

  std::optional<Cost> cost(Vertex a, Vertex b) const;
  bool connected() const;

  /// Complete graph on n vertices, cost(u, v) = weight(u, v) for u < v.
  template <class F>
  static Graph complete(std::size_t n, F&& weight) {
    std::vector<Edge> es;
    es.reserve(n * (n - 1) / 2);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) es.push_back({u, v, weight(u, v)});
    return Graph(n, std::move(es));
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

struct Instance {
  std::string id;
  Graph graph;
  Vertex start = 0;
};

/// Throws Disconnected, or std::invalid_argument for a bad start vertex.
Instance make_instance(Graph graph, Vertex start = 0, std::string id = {});

/// Vertices after the source, ending at the target. Empty when source == target.
struct Path {
  std::vector<Vertex> steps;
  Cost cost = 0;
};

/// What the searcher knows. Holds a pointer to the instance, which must
/// outlive the state.
///
/// Known edges are never stored: an edge is known exactly when one of its
/// endpoints is explored, so the explored set determines the known subgraph.
class ExplorationState {
 public:
  explicit ExplorationState(const Instance& instance);

  std::size_t n() const noexcept { return explored_.size(); }
  Vertex start() const noexcept { return instance_->start; }
  Vertex position() const noexcept { return position_; }
  Cost total_cost() const noexcept { return total_cost_; }

  /// Vertex sequence of every move, beginning at the start vertex.
  const std::vector<Vertex>& walk() const noexcept { return walk_; }

  bool explored(Vertex v) const { return explored_.at(v); }
  /// Explored, or adjacent to an explored vertex.
  bool labeled(Vertex v) const { return labeled_.at(v); }
  std::size_t explored_count() const noexcept { return explored_count_; }
  bool complete() const noexcept { return explored_count_ == explored_.size(); }

  /// All incident edges of an explored vertex. Throws std::logic_error on
  /// an unexplored one, whose edge set is only partly known.
  std::span<const Neighbor> incident(Vertex v) const;

  std::optional<Cost> known_cost(Vertex a, Vertex b) const;
  std::vector<Edge> known_edges() const;

  /// Marks v explored. v must be labeled. Idempotent.
  void reveal(Vertex v);

  /// Walks the path from the current position, paying for every edge and
  /// revealing each vertex on arrival. Every edge must be known when used.
  void traverse(const Path& path);

  /// Moves the position to v and reveals it without paying or logging.
  /// Only for the simulated view handed to a wrapped explorer.
  void visit_without_cost(Vertex v);

  const Instance& instance() const noexcept { return *instance_; }

 private:
  const Instance* instance_;
  std::vector<char> explored_;
  std::vector<char> labeled_;
  std::size_t explored_count_ = 0;
  Vertex position_;
  Cost total_cost_ = 0;
  std::vector<Vertex> walk_;
};

/// Minimum-cost path in the full graph. Among equal costs the fewest hops
/// win, then the lexicographically smallest vertex sequence.
Path shortest_path(const Graph& graph, Vertex a, Vertex b);

/// Same rule over the known subgraph, restricted to paths whose interior
/// vertices are explored: passing a vertex means visiting it, and a visit
/// explores it. Both endpoints must be labeled. Throws NoPath.
Path shortest_path(const ExplorationState& state, Vertex a, Vertex b);

/// Distances from a labeled vertex to every labeled vertex under the same
/// rule; kInfinity elsewhere.
std::vector<Cost> known_distances(const ExplorationState& state, Vertex a);

/// Distances in the full graph from one vertex.
std::vector<Cost> distances(const Graph& graph, Vertex a);

/// Metric closure.
std::vector<std::vector<Cost>> all_pairs(const Graph& graph);

struct SpanningTree {
  std::vector<Edge> edges;
  Cost cost = 0;
};

/// Kruskal, edges ordered by (cost, u, v). Throws Disconnected.
SpanningTree mst(const Graph& graph);

inline constexpr std::size_t kExactOptLimit = 14;

/// Cheapest closed walk from start through every vertex (Held-Karp on the
/// metric closure). Throws TooLarge above kExactOptLimit vertices.
Cost exact_opt(const Graph& graph, Vertex start);

/// Order of first visits along one optimal closed walk. Following it with
/// shortest known paths costs exactly exact_opt.
std::vector<Vertex> exact_tour(const Graph& graph, Vertex start);

/// "n m" header, then m lines "u v c". Throws ParseError.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& graph);

/// ceil(log2(n)) for n >= 1.
unsigned ceil_log2(std::size_t n);

}  // namespace gx
