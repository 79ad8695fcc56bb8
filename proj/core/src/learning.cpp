#include "gexplore/learning.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gexplore/errors.hpp"

namespace gx {

std::size_t pair_index(std::size_t n, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  if (u == v || v >= n) throw std::invalid_argument("bad vertex pair");
  // pairs (a, *) for a < u, then the offset inside row u
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

Graph sample_graph(const TrainingSet& set, std::size_t i) {
  const auto& c = set.samples.at(i);
  return Graph::complete(set.n, [&](Vertex u, Vertex v) { return c[pair_index(set.n, u, v)]; });
}

std::uint64_t sample_size(std::size_t n, const ErmConfig& config, Hypotheses kind) {
  if (!(config.epsilon > 0 && config.epsilon < 1) || !(config.delta > 0 && config.delta < 1))
    throw std::invalid_argument("epsilon and delta must lie in (0, 1)");
  if (config.eta_max == 0) throw std::invalid_argument("eta_max must be positive");
  if (n == 0) throw std::invalid_argument("n must be positive");
  const double nn = static_cast<double>(n);
  double log_h = kind == Hypotheses::trees ? (n >= 2 ? (nn - 2) * std::log(nn) : 0.0) : std::lgamma(nn + 1);
  double log_term = std::log(2.0) + log_h - std::log(config.delta);
  double eta = static_cast<double>(config.eta_max);
  return static_cast<std::uint64_t>(std::ceil(2 * log_term * eta * eta / (config.epsilon * config.epsilon)));
}

namespace {

void require_samples(const TrainingSet& set) {
  if (set.samples.empty()) throw EmptyTrainingSet();
  const std::size_t k = set.n * (set.n - (set.n > 0)) / 2;
  for (const auto& s : set.samples)
    if (s.size() != k) throw std::invalid_argument("sample length does not match n(n-1)/2");
}

Cost tree_cost(const TrainingSet& set, std::size_t i, const std::vector<Edge>& tree) {
  Cost c = 0;
  for (const Edge& e : tree) c += set.samples[i][pair_index(set.n, e.u, e.v)];
  return c;
}

Rational mean(std::int64_t total, std::size_t m) { return Rational(total, static_cast<std::int64_t>(m)); }

}  // namespace

TreePrediction erm_tree(const TrainingSet& set, Vertex start) {
  require_samples(set);
  std::vector<Cost> summed(set.samples.front().size(), 0);
  for (const auto& s : set.samples)
    for (std::size_t k = 0; k < s.size(); ++k) summed[k] += s[k];
  Graph g = Graph::complete(set.n, [&](Vertex u, Vertex v) { return summed[pair_index(set.n, u, v)]; });
  return make_tree_prediction(set.n, mst(g).edges, start);
}

Cost cycle_cost(const TrainingSet& set, std::size_t i, const std::vector<Vertex>& order) {
  if (order.size() < 2) return 0;
  Cost c = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    c += set.samples.at(i)[pair_index(set.n, order[k], order[(k + 1) % order.size()])];
  return c;
}

Cost optimal_cycle_cost(const TrainingSet& set, std::size_t i) {
  const std::size_t n = set.n;
  if (n > kErmTourLimit) throw TooLarge("exact cycles are limited to " + std::to_string(kErmTourLimit) + " vertices");
  if (n < 2) return 0;
  const auto& c = set.samples.at(i);
  auto w = [&](std::size_t a, std::size_t b) { return c[pair_index(n, Vertex(a), Vertex(b))]; };
  // dp[mask][v]: cheapest path from 0 through mask (over vertices 1..n-1) ending at v
  const std::size_t full = std::size_t{1} << (n - 1);
  std::vector<std::vector<Cost>> dp(full, std::vector<Cost>(n, kInfinity));
  for (std::size_t v = 1; v < n; ++v) dp[std::size_t{1} << (v - 1)][v] = w(0, v);
  for (std::size_t mask = 1; mask < full; ++mask)
    for (std::size_t v = 1; v < n; ++v) {
      if (dp[mask][v] == kInfinity) continue;
      for (std::size_t x = 1; x < n; ++x) {
        std::size_t bit = std::size_t{1} << (x - 1);
        if (mask & bit) continue;
        dp[mask | bit][x] = std::min(dp[mask | bit][x], dp[mask][v] + w(v, x));
      }
    }
  Cost best = kInfinity;
  for (std::size_t v = 1; v < n; ++v) best = std::min(best, dp[full - 1][v] + w(v, 0));
  return best;
}

TourPrediction erm_tour(const TrainingSet& set, Vertex start) {
  require_samples(set);
  const std::size_t n = set.n;
  if (n > kErmTourLimit) throw TooLarge("tour ERM is limited to " + std::to_string(kErmTourLimit) + " vertices");
  if (start >= n) throw std::invalid_argument("start vertex out of range");
  std::vector<Cost> summed(set.samples.front().size(), 0);
  for (const auto& s : set.samples)
    for (std::size_t k = 0; k < s.size(); ++k) summed[k] += s[k];
  TrainingSet total{n, {summed}};

  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (v != start) rest.push_back(v);
  std::vector<Vertex> best_order, order(n);
  Cost best = kInfinity;
  do {
    // each cycle once: fix the direction by its first and last vertex
    if (rest.size() >= 2 && rest.front() > rest.back()) continue;
    order[0] = start;
    std::copy(rest.begin(), rest.end(), order.begin() + 1);
    Cost c = cycle_cost(total, 0, order);
    if (c < best) best = c, best_order = order;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return {best_order};
}

EmpiricalError::EmpiricalError(const TrainingSet& set) : set_(&set) {
  require_samples(set);
  for (std::size_t i = 0; i < set.samples.size(); ++i) mst_cost_.push_back(mst(sample_graph(set, i)).cost);
}

Rational EmpiricalError::tree(const std::vector<Edge>& tree) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < mst_cost_.size(); ++i)
    total += static_cast<std::int64_t>(tree_cost(*set_, i, tree)) - static_cast<std::int64_t>(mst_cost_[i]);
  return mean(total, mst_cost_.size());
}

Rational EmpiricalError::tour(const std::vector<Vertex>& order) {
  if (tour_opt_.empty())
    for (std::size_t i = 0; i < set_->samples.size(); ++i) tour_opt_.push_back(optimal_cycle_cost(*set_, i));
  std::int64_t total = 0;
  for (std::size_t i = 0; i < tour_opt_.size(); ++i)
    total += static_cast<std::int64_t>(cycle_cost(*set_, i, order)) - static_cast<std::int64_t>(tour_opt_[i]);
  return mean(total, tour_opt_.size());
}

Rational empirical_error(const TrainingSet& set, const std::vector<Edge>& tree) {
  return EmpiricalError(set).tree(tree);
}

Rational empirical_error(const TrainingSet& set, const TourPrediction& tour) {
  return EmpiricalError(set).tour(tour.order);
}

ProductDistribution uniform_distribution(std::size_t n, Cost lo, Cost hi) {
  if (lo > hi) throw std::invalid_argument("empty cost range");
  const std::size_t k = n * (n - (n > 0)) / 2;
  return {n, std::vector<Cost>(k, lo), std::vector<Cost>(k, hi)};
}

TrainingSet sample(const ProductDistribution& dist, std::size_t m, std::uint64_t seed) {
  const std::size_t k = dist.n * (dist.n - (dist.n > 0)) / 2;
  if (dist.lo.size() != k || dist.hi.size() != k) throw std::invalid_argument("distribution does not match n");
  std::mt19937_64 rng(seed);
  TrainingSet set{dist.n, {}};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Cost> c(k);
    for (std::size_t e = 0; e < k; ++e) c[e] = std::uniform_int_distribution<Cost>(dist.lo[e], dist.hi[e])(rng);
    set.samples.push_back(std::move(c));
  }
  return set;
}

TrainingSet read_training_set(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("missing 'n m' header", lineno);
  std::istringstream head(line);
  long long n = -1, m = -1;
  std::string extra;
  if (!(head >> n >> m) || (head >> extra) || n < 1 || m < 0) throw ParseError("expected 'n m' header", lineno);
  TrainingSet set{static_cast<std::size_t>(n), {}};
  const std::size_t k = set.n * (set.n - 1) / 2;
  for (long long i = 0; i < m; ++i) {
    std::vector<Cost> c;
    if (k > 0) {
      if (!next_line()) throw ParseError("expected " + std::to_string(m) + " samples", lineno);
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) {
        if (tok.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("costs must be non-negative integers, got '" + tok + "'", lineno);
        c.push_back(std::stoull(tok));
      }
      if (c.size() != k)
        throw ParseError("expected " + std::to_string(k) + " costs, got " + std::to_string(c.size()), lineno);
    }
    set.samples.push_back(std::move(c));
  }
  if (next_line()) throw ParseError("trailing data after the samples", lineno);
  return set;
}

void write_training_set(std::ostream& out, const TrainingSet& set) {
  out << set.n << ' ' << set.samples.size() << '\n';
  for (const auto& s : set.samples) {
    for (std::size_t k = 0; k < s.size(); ++k) out << (k ? " " : "") << s[k];
    out << '\n';
  }
}

}  // namespace gx
