#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gexplore/graph.hpp"
#include "gexplore/predictions.hpp"
#include "gexplore/rational.hpp"

namespace gx {

/// Cost vectors over the complete graph on n vertices. Each sample has
/// n(n-1)/2 entries, in lexicographic pair order (0,1), (0,2), ..., (n-2,n-1).
struct TrainingSet {
  std::size_t n = 0;
  std::vector<std::vector<Cost>> samples;
};

/// Index of pair (u, v), u != v, in the lexicographic order above.
std::size_t pair_index(std::size_t n, Vertex u, Vertex v);

/// Complete graph carrying one sample's costs.
Graph sample_graph(const TrainingSet& set, std::size_t i);

struct ErmConfig {
  double epsilon = 0.5;
  double delta = 0.5;
  std::uint64_t eta_max = 1;
};

enum class Hypotheses { trees, tours };

/// m = ceil(2 ln(2|H| / delta) eta_max^2 / epsilon^2), natural logarithm,
/// with |H| = n^(n-2) for trees and n! for tours.
std::uint64_t sample_size(std::size_t n, const ErmConfig& config, Hypotheses kind = Hypotheses::trees);

/// eta(T, c) = c(T) - c(MST of c). Its mean over the samples is minimised by
/// the MST under the summed costs, which is what erm_tree returns.
/// Throws EmptyTrainingSet.
TreePrediction erm_tree(const TrainingSet& set, Vertex start = 0);

/// eta(tau, c) = c(tau) - c(optimal tour of c), with c(tau) the cost of the
/// Hamiltonian cycle through the order. Exhaustive over all (n-1)!/2 cycles;
/// among equally good cycles the lexicographically first order wins.
/// Throws EmptyTrainingSet, or TooLarge above kErmTourLimit vertices.
TourPrediction erm_tour(const TrainingSet& set, Vertex start = 0);

inline constexpr std::size_t kErmTourLimit = 10;

/// Cost of the Hamiltonian cycle through the order under one sample.
Cost cycle_cost(const TrainingSet& set, std::size_t i, const std::vector<Vertex>& order);

/// Cheapest Hamiltonian cycle under one sample (Held-Karp, no metric closure).
Cost optimal_cycle_cost(const TrainingSet& set, std::size_t i);

/// Mean per-sample error. The per-sample references (MST cost, optimal cycle
/// cost) are computed once and reused across calls.
class EmpiricalError {
 public:
  explicit EmpiricalError(const TrainingSet& set);

  Rational tree(const std::vector<Edge>& tree) const;
  /// Computes the per-sample optimal cycles on first use. Throws TooLarge
  /// above kErmTourLimit vertices.
  Rational tour(const std::vector<Vertex>& order);

 private:
  const TrainingSet* set_;
  std::vector<Cost> mst_cost_;
  std::vector<Cost> tour_opt_;
};

Rational empirical_error(const TrainingSet& set, const std::vector<Edge>& tree);
Rational empirical_error(const TrainingSet& set, const TourPrediction& tour);

/// Product distribution: edge k costs uniform in [lo[k], hi[k]], independently.
struct ProductDistribution {
  std::size_t n = 0;
  std::vector<Cost> lo;
  std::vector<Cost> hi;
};

/// Every edge uniform in [lo, hi].
ProductDistribution uniform_distribution(std::size_t n, Cost lo, Cost hi);

TrainingSet sample(const ProductDistribution& dist, std::size_t m, std::uint64_t seed);

/// "n m" header, then m lines of n(n-1)/2 costs. Throws ParseError.
TrainingSet read_training_set(std::istream& in);
void write_training_set(std::ostream& out, const TrainingSet& set);

}  // namespace gx
