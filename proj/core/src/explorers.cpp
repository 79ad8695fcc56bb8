#include "gexplore/explorers.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <tuple>

#include "gexplore/errors.hpp"

namespace gx {

Nearest nn_next(const ExplorationState& state) {
  auto dist = known_distances(state, state.position());
  std::optional<Nearest> best;
  for (Vertex v = 0; v < dist.size(); ++v) {
    if (state.explored(v) || dist[v] == kInfinity) continue;
    if (!best || dist[v] < best->distance) best = Nearest{v, dist[v]};
  }
  if (!best) throw Stuck("no reachable unexplored vertex");
  return *best;
}

// ---------------------------------------------------------------------------

Vertex DepthFirst::next_target(const ExplorationState& state) {
  if (!started_) {
    stack_.push_back(state.start());
    started_ = true;
  }
  if (pending_) {
    if (!state.explored(*pending_)) return *pending_;
    stack_.push_back(*pending_);
    pending_.reset();
  }
  while (!stack_.empty()) {
    std::optional<Neighbor> best;
    for (const Neighbor& nb : state.incident(stack_.back())) {
      if (state.explored(nb.to)) continue;
      if (!best || nb.cost < best->cost) best = nb;
    }
    if (best) {
      pending_ = best->to;
      return best->to;
    }
    stack_.pop_back();
  }
  throw Stuck("dfs stack exhausted");
}

// ---------------------------------------------------------------------------

int HierarchicalDfs::weight_class(Cost c) { return c <= 1 ? 0 : std::bit_width(c) - 1; }

void HierarchicalDfs::descend(Vertex y, int level) {
  for (int l = level; l >= 1; --l) frames_.push_back(Frame{l, {}, {}});
  frames_.push_back(Frame{0, {{y}}, {y}});
}

Vertex HierarchicalDfs::next_target(const ExplorationState& state) {
  if (!started_) {
    descend(state.start(), 64);
    started_ = true;
  }
  if (pending_) {
    if (!state.explored(*pending_)) return *pending_;
    pending_.reset();
  }
  while (!frames_.empty()) {
    Frame& f = frames_.back();
    const std::vector<Vertex>& top = f.components.back();
    // cheapest boundary edge of class <= level: (cost, target, source)
    std::optional<std::tuple<Cost, Vertex, Vertex>> best;
    for (Vertex x : top)
      for (const Neighbor& nb : state.incident(x)) {
        if (state.explored(nb.to) || weight_class(nb.cost) > f.level) continue;
        std::tuple<Cost, Vertex, Vertex> key{nb.cost, nb.to, x};
        if (!best || key < *best) best = key;
      }
    if (best) {
      Vertex y = std::get<1>(*best);
      if (f.level == 0) {
        f.components.push_back({y});
        f.total.push_back(y);
      } else {
        descend(y, f.level - 1);
      }
      pending_ = y;
      return y;
    }
    f.components.pop_back();
    if (f.components.empty()) {
      std::vector<Vertex> done = std::move(f.total);
      frames_.pop_back();
      if (!frames_.empty()) {
        Frame& parent = frames_.back();
        parent.total.insert(parent.total.end(), done.begin(), done.end());
        parent.components.push_back(std::move(done));
      }
    }
  }
  throw Stuck("hdfs finished with unexplored vertices left");
}

// ---------------------------------------------------------------------------

Blocking::Blocking(Rational delta) : delta_(delta) {
  if (delta_ < 0) throw std::invalid_argument("blocking parameter must be non-negative");
}

namespace {

// Cheapest known edge into each unexplored labeled vertex; kInfinity elsewhere.
std::vector<Cost> cheapest_boundary_in(const ExplorationState& state) {
  std::vector<Cost> best(state.n(), kInfinity);
  for (Vertex u = 0; u < state.n(); ++u) {
    if (!state.explored(u)) continue;
    for (const Neighbor& nb : state.incident(u))
      if (!state.explored(nb.to)) best[nb.to] = std::min(best[nb.to], nb.cost);
  }
  return best;
}

}  // namespace

bool Blocking::blocked(const ExplorationState& state, const Edge& e, const std::vector<Cost>& cheapest_in,
                       const std::vector<Cost>& dist_from_u) const {
  const Rational reach = Rational(1) + delta_;
  for (Vertex w = 0; w < state.n(); ++w) {
    if (cheapest_in[w] == kInfinity || cheapest_in[w] >= e.cost || dist_from_u[w] == kInfinity) continue;
    if (scaled_less_equal(dist_from_u[w], reach, e.cost)) return true;
  }
  return false;
}

Vertex Blocking::next_target(const ExplorationState& state) {
  if (!started_) {
    stack_.push_back(state.start());
    blocked_into_.assign(state.n(), {});
    started_ = true;
  }
  if (pending_) {
    if (!state.explored(*pending_)) return *pending_;
    stack_.push_back(*pending_);
    pending_.reset();
  }
  const auto cheapest_in = cheapest_boundary_in(state);
  // Known distances per source; the state does not change during this call.
  std::vector<std::vector<Cost>> distances(state.n());

  auto choose = [&](const Edge& chosen) {
    // Record the boundary edges this choice blocks, keyed by its endpoint.
    std::vector<Cost> to_target = known_distances(state, chosen.v);
    for (Vertex u = 0; u < state.n(); ++u) {
      if (!state.explored(u)) continue;
      for (const Neighbor& nb : state.incident(u)) {
        if (state.explored(nb.to) || nb.to == chosen.v || nb.cost <= chosen.cost) continue;
        if (to_target[u] != kInfinity && scaled_less_equal(to_target[u], Rational(1) + delta_, nb.cost))
          blocked_into_[chosen.v].push_back(Edge{u, nb.to, nb.cost});
      }
    }
    pending_ = chosen.v;
    return chosen.v;
  };

  while (!stack_.empty()) {
    Vertex y = stack_.back();
    // Edges are oriented (explored source, unexplored target) here.
    std::vector<Edge> candidates;
    for (const Neighbor& nb : state.incident(y))
      if (!state.explored(nb.to)) candidates.push_back({y, nb.to, nb.cost});
    for (const Edge& e : blocked_into_[y])
      if (!state.explored(e.v)) candidates.push_back(e);
    std::sort(candidates.begin(), candidates.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.cost, a.v, a.u) < std::tie(b.cost, b.v, b.u);
    });
    for (const Edge& e : candidates) {
      if (distances[e.u].empty()) distances[e.u] = known_distances(state, e.u);
      if (!blocked(state, e, cheapest_in, distances[e.u])) return choose(e);
    }
    stack_.pop_back();
  }
  if (state.complete()) throw Stuck("blocking asked for a target on an explored graph");
  std::optional<Edge> best;
  for (Vertex u = 0; u < state.n(); ++u) {
    if (!state.explored(u)) continue;
    for (const Neighbor& nb : state.incident(u)) {
      if (state.explored(nb.to)) continue;
      Edge e{u, nb.to, nb.cost};
      if (!best || std::tie(e.cost, e.v, e.u) < std::tie(best->cost, best->v, best->u)) best = e;
    }
  }
  if (!best) throw Stuck("no boundary edge left");
  return choose(*best);
}

// ---------------------------------------------------------------------------

FollowPrediction::FollowPrediction(std::vector<Vertex> order) : order_(std::move(order)) {}

Vertex FollowPrediction::next_target(const ExplorationState& state) {
  if (!checked_) {
    std::vector<char> seen(state.n(), 0);
    for (Vertex v : order_) {
      if (v >= state.n() || seen[v])
        throw PredictionIncomplete("prediction is not a permutation of the vertices");
      seen[v] = 1;
    }
    if (order_.size() != state.n())
      throw PredictionIncomplete("prediction covers " + std::to_string(order_.size()) + " of " +
                                 std::to_string(state.n()) + " vertices");
    checked_ = true;
  }
  while (cursor_ < order_.size() && state.explored(order_[cursor_])) ++cursor_;
  for (std::size_t i = cursor_; i < order_.size(); ++i)
    if (!state.explored(order_[i]) && state.labeled(order_[i])) return order_[i];
  throw Stuck("prediction has no reachable unexplored vertex");
}

// ---------------------------------------------------------------------------

RunResult run(Explorer& explorer, const Instance& instance) {
  ExplorationState state(instance);
  RunResult out;
  out.visits.push_back(instance.start);
  while (!state.complete()) {
    Vertex t = explorer.next_target(state);
    if (t >= state.n() || state.explored(t) || !state.labeled(t))
      throw Stuck(explorer.name() + " named illegal vertex " + std::to_string(t));
    state.traverse(shortest_path(state, state.position(), t));
    out.visits.push_back(t);
  }
  state.traverse(shortest_path(state, state.position(), instance.start));
  out.cost = state.total_cost();
  out.walk = state.walk();
  return out;
}

ExplorerFactory explorer_factory(std::string_view name, std::vector<Vertex> order) {
  if (name == "nn") return [] { return std::make_unique<NearestNeighbor>(); };
  if (name == "dfs") return [] { return std::make_unique<DepthFirst>(); };
  if (name == "hdfs") return [] { return std::make_unique<HierarchicalDfs>(); };
  if (name == "blocking") return [] { return std::make_unique<Blocking>(); };
  if (name == "fp") return [order = std::move(order)] { return std::make_unique<FollowPrediction>(order); };
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

}  // namespace gx
