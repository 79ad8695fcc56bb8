#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gexplore/graph.hpp"
#include "gexplore/rational.hpp"

namespace gx {

/// An online exploration strategy. Each call names the next vertex to visit;
/// the caller walks there along a shortest known path and asks again.
///
/// A target must be unexplored and labeled in the state it was chosen from.
/// Asking twice without the state changing returns the same vertex.
/// Instances are single-run objects.
class Explorer {
 public:
  virtual ~Explorer() = default;
  virtual std::string name() const = 0;
  virtual Vertex next_target(const ExplorationState& state) = 0;
};

using ExplorerFactory = std::function<std::unique_ptr<Explorer>()>;

struct Nearest {
  Vertex vertex = 0;
  Cost distance = 0;
};

/// Unexplored vertex closest to the current position, smallest index on ties.
/// Throws Stuck if none is reachable.
Nearest nn_next(const ExplorationState& state);

class NearestNeighbor final : public Explorer {
 public:
  std::string name() const override { return "nn"; }
  Vertex next_target(const ExplorationState& state) override { return nn_next(state).vertex; }
};

/// DFS that always leaves the top of its stack by the cheapest edge to an
/// unexplored vertex (ties by index), and backtracks when there is none.
class DepthFirst final : public Explorer {
 public:
  std::string name() const override { return "dfs"; }
  Vertex next_target(const ExplorationState& state) override;

 private:
  bool started_ = false;
  std::vector<Vertex> stack_;
  std::optional<Vertex> pending_;
};

/// Hierarchical DFS. Edge costs fall into power-of-two weight classes
/// (class 0 holds costs 0 and 1, class i holds [2^i, 2^(i+1))).
///
/// explore(w, i) first runs explore(w, i-1), then keeps a stack of
/// components: while the top component has a boundary edge of class at most
/// i, the cheapest one leads to a new vertex y whose explore(y, i-1) result
/// is pushed; otherwise the top is popped. It returns the union of everything
/// it explored. explore(w, -1) is {w}; the whole run is explore(start, 64).
/// The recursion is kept as an explicit frame stack so it can pause at every
/// target.
class HierarchicalDfs final : public Explorer {
 public:
  std::string name() const override { return "hdfs"; }
  Vertex next_target(const ExplorationState& state) override;

  static int weight_class(Cost c);

 private:
  struct Frame {
    int level = 0;
    std::vector<std::vector<Vertex>> components;
    std::vector<Vertex> total;
  };
  void descend(Vertex y, int level);

  bool started_ = false;
  std::vector<Frame> frames_;
  std::optional<Vertex> pending_;
};

/// Blocking with parameter delta (default 2).
///
/// A boundary edge e = (u, v), u explored and v not, is blocked when some
/// boundary edge e' = (u', v') has c(e') < c(e) and d(u, v') <= (1 + delta) c(e),
/// with d the known distance. explore(y) considers the boundary edges at y
/// together with B_y, the edges that were blocked by the edge leading into y
/// at the moment it was chosen. The cheapest unblocked candidate (ties by
/// target, then source) is taken and explored recursively; with none left,
/// explore(y) returns. If the outermost call returns early, the globally
/// cheapest boundary edge restarts the search.
class Blocking final : public Explorer {
 public:
  explicit Blocking(Rational delta = Rational(2));
  std::string name() const override { return "blocking"; }
  Vertex next_target(const ExplorationState& state) override;

 private:
  bool blocked(const ExplorationState& state, const Edge& e, const std::vector<Cost>& cheapest_in,
               const std::vector<Cost>& dist_from_u) const;

  Rational delta_;
  bool started_ = false;
  std::vector<Vertex> stack_;
  std::vector<std::vector<Edge>> blocked_into_;
  std::optional<Vertex> pending_;
};

/// Follow the prediction: the first vertex of the order that is still
/// unexplored. If that vertex has no known edge yet (possible only on sparse
/// graphs), the first unexplored vertex of the order that does is taken.
/// Throws PredictionIncomplete if the order is not a permutation of the
/// vertices.
class FollowPrediction final : public Explorer {
 public:
  explicit FollowPrediction(std::vector<Vertex> order);
  std::string name() const override { return "fp"; }
  Vertex next_target(const ExplorationState& state) override;

 private:
  std::vector<Vertex> order_;
  std::size_t cursor_ = 0;
  bool checked_ = false;
};

/// Result of running one explorer standalone.
struct RunResult {
  Cost cost = 0;
  std::vector<Vertex> walk;
  /// First-visit order, beginning with the start vertex.
  std::vector<Vertex> visits;
};

/// Explores every vertex, then returns to the start along a shortest known
/// path. Throws Stuck if the explorer names an illegal vertex.
RunResult run(Explorer& explorer, const Instance& instance);

/// "nn", "dfs", "hdfs", "blocking", or "fp" (which needs an order).
/// Throws std::invalid_argument on unknown names.
ExplorerFactory explorer_factory(std::string_view name, std::vector<Vertex> order = {});

}  // namespace gx
