#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gexplore/graph.hpp"
#include "gexplore/rational.hpp"

namespace gx {

/// A fixed visiting order of all vertices, starting at the start vertex.
struct TourPrediction {
  std::vector<Vertex> order;
};

/// A spanning tree and the order a DFS from the start visits it in
/// (children in ascending index).
struct TreePrediction {
  std::vector<Edge> tree;
  std::vector<Vertex> order;
};

/// eta = c(prediction) - c(reference), where c is the cost of following the
/// order online. It is signed: a tree other than the MST can induce a cheaper
/// walk than the MST does. relative = eta / mst cost (eta itself if the MST
/// costs nothing).
struct PredictionError {
  std::int64_t eta = 0;
  Rational relative{0};
  /// The tour reference was the best heuristic tour, not the exact optimum.
  bool heuristic_reference = false;
};

/// Builds the derived order; throws std::invalid_argument unless the edges
/// form a spanning tree on n vertices.
TreePrediction make_tree_prediction(std::size_t n, std::vector<Edge> tree, Vertex start);

/// Cost of running FP with this order on the instance, return included.
Cost fp_cost(const Instance& instance, const std::vector<Vertex>& order);

/// DFS order of the MST.
TreePrediction perfect_tree(const Instance& instance);

/// DFS order of the MST, improved by 2-opt: reversals of order[i..j]
/// (1 <= i < j < n) are scanned in a seeded random order and the first one
/// that lowers the tour objective is applied, until none does.
///
/// The objective is the cost of following the order with FP. On complete
/// graphs whose costs are already a metric this equals the tour cost under
/// the edge costs and is evaluated per move in O(1); on other graphs up to
/// kExactObjectiveLimit vertices FP is rerun per candidate; beyond that the
/// tour cost over the metric closure stands in for it.
TourPrediction perfect_tour(const Instance& instance, std::uint64_t seed);

inline constexpr std::size_t kExactObjectiveLimit = 32;

/// First-visit order of an optimal closed walk (exact_tour); FP pays OPT.
TourPrediction optimal_tour(const Instance& instance);

/// Cost the tour error is measured against: exact_opt up to kExactOptLimit
/// vertices, else the FP cost of perfect_tour(instance, 0).
struct TourReference {
  Cost cost = 0;
  bool heuristic = false;
};
TourReference tour_reference(const Instance& instance);

PredictionError error_of(const Instance& instance, const TourPrediction& prediction);
PredictionError error_of(const Instance& instance, const TourPrediction& prediction,
                         const TourReference& reference);
/// Reference: the DFS order of the MST.
PredictionError error_of(const Instance& instance, const TreePrediction& prediction);

struct DegradeResult {
  TourPrediction prediction;
  PredictionError error;
  /// No reversal could raise the objective before the target was reached.
  bool saturated = false;
  std::size_t reversals = 0;
};

/// Reversed 2-opt: applies the first reversal in a seeded random scan that
/// raises the objective of perfect_tour, until the relative error reaches
/// the target. With no target it runs to a local maximum.
DegradeResult degrade(const Instance& instance, const TourPrediction& prediction,
                      std::optional<Rational> target_relative_error, std::uint64_t seed);
DegradeResult degrade(const Instance& instance, const TourPrediction& prediction,
                      std::optional<Rational> target_relative_error, std::uint64_t seed,
                      const TourReference& reference);

/// Tour: one label per line, the first being the start vertex.
/// Tree: a "TREE" line, then one "u v" line per edge.
void write_prediction(std::ostream& out, const TourPrediction& p);
void write_prediction(std::ostream& out, const TreePrediction& p);

/// Reads either form. Throws ParseError.
struct PredictionFile {
  std::vector<Vertex> order;       // tour form
  std::optional<std::vector<Edge>> tree;  // tree form, costs zero
};
PredictionFile read_prediction(std::istream& in);

/// Visiting order for an instance from a file in either form.
std::vector<Vertex> prediction_order(const Instance& instance, const PredictionFile& file);

}  // namespace gx
