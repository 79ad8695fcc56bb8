#include "gexplore/predictions.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gexplore/errors.hpp"
#include "gexplore/explorers.hpp"

namespace gx {

TreePrediction make_tree_prediction(std::size_t n, std::vector<Edge> tree, Vertex start) {
  if (start >= n) throw std::invalid_argument("start vertex out of range");
  if (tree.size() + 1 != n) throw std::invalid_argument("a spanning tree on n vertices has n-1 edges");
  std::vector<std::vector<Vertex>> adj(n);
  for (Edge& e : tree) {
    if (e.u >= n || e.v >= n || e.u == e.v) throw std::invalid_argument("bad tree edge");
    if (e.u > e.v) std::swap(e.u, e.v);
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  TreePrediction p{std::move(tree), {}};
  std::vector<char> seen(n, 0);
  // explicit stack of (vertex, next child index)
  std::vector<std::pair<Vertex, std::size_t>> stack{{start, 0}};
  seen[start] = 1;
  p.order.push_back(start);
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i == adj[v].size()) {
      stack.pop_back();
      continue;
    }
    Vertex w = adj[v][i++];
    if (seen[w]) continue;
    seen[w] = 1;
    p.order.push_back(w);
    stack.emplace_back(w, 0);
  }
  if (p.order.size() != n) throw std::invalid_argument("tree edges do not span the vertices");
  return p;
}

Cost fp_cost(const Instance& instance, const std::vector<Vertex>& order) {
  FollowPrediction fp(order);
  return run(fp, instance).cost;
}

TreePrediction perfect_tree(const Instance& instance) {
  return make_tree_prediction(instance.graph.n(), mst(instance.graph).edges, instance.start);
}

TourPrediction optimal_tour(const Instance& instance) {
  return {exact_tour(instance.graph, instance.start)};
}

namespace {

bool metric_complete(const Graph& g, const std::vector<std::vector<Cost>>& d) {
  const std::size_t n = g.n();
  if (g.m() != n * (n - 1) / 2) return false;
  for (const Edge& e : g.edges())
    if (d[e.u][e.v] != e.cost) return false;
  return true;
}

// Tour objective for (reversed) 2-opt. Either the closure tour cost, updated
// in O(1) per reversal, or an FP rerun per candidate.
class TourObjective {
 public:
  explicit TourObjective(const Instance& instance)
      : instance_(&instance), d_(all_pairs(instance.graph)) {
    metric_ = metric_complete(instance.graph, d_);
    rerun_ = !metric_ && instance.graph.n() <= kExactObjectiveLimit;
  }

  bool exact() const { return metric_ || rerun_; }

  Cost value(const std::vector<Vertex>& order) const {
    if (rerun_) return fp_cost(*instance_, order);
    Cost c = 0;
    for (std::size_t k = 0; k < order.size(); ++k) c += d_[order[k]][order[(k + 1) % order.size()]];
    return c;
  }

  // Objective after reversing order[i..j].
  Cost reversed(std::vector<Vertex>& order, std::size_t i, std::size_t j, Cost current) const {
    if (rerun_) {
      std::reverse(order.begin() + i, order.begin() + j + 1);
      Cost c = fp_cost(*instance_, order);
      std::reverse(order.begin() + i, order.begin() + j + 1);
      return c;
    }
    const std::size_t n = order.size();
    Vertex a = order[i - 1], b = order[i], c = order[j], e = order[(j + 1) % n];
    return current + d_[a][c] + d_[b][e] - d_[a][b] - d_[c][e];
  }

 private:
  const Instance* instance_;
  std::vector<std::vector<Cost>> d_;
  bool metric_ = false;
  bool rerun_ = false;
};

// All reversal windows (i, j), 1 <= i < j < n, drawn in a fresh uniformly
// random order per round by incremental Fisher-Yates.
class ReversalScan {
 public:
  ReversalScan(std::size_t n, std::uint64_t seed) : rng_(seed) {
    for (std::uint32_t i = 1; i + 1 < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
  }

  // Calls accept(i, j) on windows in random order until it returns true.
  template <class F>
  bool first(F&& accept) {
    for (std::size_t t = 0; t < pairs_.size(); ++t) {
      std::uniform_int_distribution<std::size_t> pick(t, pairs_.size() - 1);
      std::swap(pairs_[t], pairs_[pick(rng_)]);
      if (accept(pairs_[t].first, pairs_[t].second)) return true;
    }
    return false;
  }

 private:
  std::mt19937_64 rng_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
};

Rational relative(std::int64_t eta, Cost mst_cost) {
  return mst_cost == 0 ? Rational(eta) : Rational(eta, static_cast<std::int64_t>(mst_cost));
}

bool reached(std::int64_t eta, Cost mst_cost, const Rational& target) {
  using i128 = __int128;
  // eta / mst >= target, with mst = 0 read as 1
  i128 den = mst_cost == 0 ? 1 : static_cast<i128>(mst_cost);
  return i128(eta) * target.denominator() >= i128(target.numerator()) * den;
}

}  // namespace

TourPrediction perfect_tour(const Instance& instance, std::uint64_t seed) {
  TourPrediction p{perfect_tree(instance).order};
  const std::size_t n = p.order.size();
  if (n < 4) return p;
  TourObjective objective(instance);
  ReversalScan scan(n, seed);
  Cost current = objective.value(p.order);
  while (scan.first([&](std::size_t i, std::size_t j) {
    Cost c = objective.reversed(p.order, i, j, current);
    if (c >= current) return false;
    std::reverse(p.order.begin() + i, p.order.begin() + j + 1);
    current = c;
    return true;
  })) {
  }
  return p;
}

TourReference tour_reference(const Instance& instance) {
  if (instance.graph.n() <= kExactOptLimit) return {exact_opt(instance.graph, instance.start), false};
  return {fp_cost(instance, perfect_tour(instance, 0).order), true};
}

PredictionError error_of(const Instance& instance, const TourPrediction& prediction,
                         const TourReference& reference) {
  Cost mst_cost = mst(instance.graph).cost;
  std::int64_t eta = static_cast<std::int64_t>(fp_cost(instance, prediction.order)) -
                     static_cast<std::int64_t>(reference.cost);
  return {eta, relative(eta, mst_cost), reference.heuristic};
}

PredictionError error_of(const Instance& instance, const TourPrediction& prediction) {
  return error_of(instance, prediction, tour_reference(instance));
}

PredictionError error_of(const Instance& instance, const TreePrediction& prediction) {
  Cost mst_cost = mst(instance.graph).cost;
  std::int64_t eta = static_cast<std::int64_t>(fp_cost(instance, prediction.order)) -
                     static_cast<std::int64_t>(fp_cost(instance, perfect_tree(instance).order));
  return {eta, relative(eta, mst_cost), false};
}

DegradeResult degrade(const Instance& instance, const TourPrediction& prediction,
                      std::optional<Rational> target, std::uint64_t seed, const TourReference& reference) {
  if (target && *target < 0) throw std::invalid_argument("target relative error must be non-negative");
  const Cost mst_cost = mst(instance.graph).cost;
  DegradeResult out{prediction, {}, false, 0};
  std::vector<Vertex>& order = out.prediction.order;
  const std::size_t n = order.size();
  TourObjective objective(instance);
  ReversalScan scan(n < 3 ? 0 : n, seed);
  Cost current = objective.value(order);

  auto true_eta = [&] {
    Cost fp = objective.exact() ? current : fp_cost(instance, order);
    return static_cast<std::int64_t>(fp) - static_cast<std::int64_t>(reference.cost);
  };
  auto done = [&] {
    if (!target) return false;
    std::int64_t surrogate = static_cast<std::int64_t>(current) - static_cast<std::int64_t>(reference.cost);
    if (!reached(surrogate, mst_cost, *target)) return false;
    return objective.exact() || reached(true_eta(), mst_cost, *target);
  };

  while (!done()) {
    bool moved = scan.first([&](std::size_t i, std::size_t j) {
      Cost c = objective.reversed(order, i, j, current);
      if (c <= current) return false;
      std::reverse(order.begin() + i, order.begin() + j + 1);
      current = c;
      return true;
    });
    if (!moved) {
      out.saturated = true;
      break;
    }
    ++out.reversals;
  }
  std::int64_t eta = true_eta();
  out.error = {eta, relative(eta, mst_cost), reference.heuristic};
  return out;
}

DegradeResult degrade(const Instance& instance, const TourPrediction& prediction,
                      std::optional<Rational> target, std::uint64_t seed) {
  return degrade(instance, prediction, target, seed, tour_reference(instance));
}

// ---------------------------------------------------------------------------

void write_prediction(std::ostream& out, const TourPrediction& p) {
  for (Vertex v : p.order) out << v << '\n';
}

void write_prediction(std::ostream& out, const TreePrediction& p) {
  out << "TREE\n";
  for (const Edge& e : p.tree) out << e.u << ' ' << e.v << '\n';
}

PredictionFile read_prediction(std::istream& in) {
  PredictionFile f;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (first && tok == "TREE") {
      f.tree.emplace();
      first = false;
      continue;
    }
    first = false;
    auto parse_vertex = [&](const std::string& s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a vertex label, got '" + s + "'", lineno);
      unsigned long long v = std::stoull(s);
      if (v > std::numeric_limits<Vertex>::max()) throw ParseError("vertex label too large", lineno);
      return static_cast<Vertex>(v);
    };
    if (f.tree) {
      std::string second, extra;
      if (!(ss >> second) || (ss >> extra)) throw ParseError("expected 'u v'", lineno);
      f.tree->push_back({parse_vertex(tok), parse_vertex(second), 0});
    } else {
      std::string extra;
      if (ss >> extra) throw ParseError("expected one vertex label per line", lineno);
      f.order.push_back(parse_vertex(tok));
    }
  }
  if (first) throw ParseError("empty prediction", lineno);
  return f;
}

std::vector<Vertex> prediction_order(const Instance& instance, const PredictionFile& file) {
  if (file.tree) return make_tree_prediction(instance.graph.n(), *file.tree, instance.start).order;
  if (file.order.empty() || file.order.front() != instance.start)
    throw PredictionIncomplete("prediction must begin with the start vertex " + std::to_string(instance.start));
  return file.order;
}

}  // namespace gx
