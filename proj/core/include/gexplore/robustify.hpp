#pragma once

#include <memory>
#include <vector>

#include "gexplore/explorers.hpp"
#include "gexplore/graph.hpp"
#include "gexplore/rational.hpp"

namespace gx {

enum class Variant { basic, modified };

struct RobustifyConfig {
  Rational lambda{1};
  Variant variant = Variant::basic;
};

/// What the wrapped explorer has been shown: its own explored set over the
/// same ground truth. It only ever holds vertices the real state has
/// explored, so its known edges are a subset of the real ones.
class BlackboxView {
 public:
  BlackboxView(const Instance& instance, std::unique_ptr<Explorer> explorer);

  const ExplorationState& state() const noexcept { return view_; }
  Explorer& explorer() noexcept { return *explorer_; }

  /// Asks the explorer for targets. Targets already explored in the real
  /// state are revealed to it without moving; the first one that is not is
  /// returned. Throws Stuck on an illegal target.
  Vertex simulate(const ExplorationState& real);

  /// Tells the explorer it has arrived at v.
  void arrive(Vertex v) { view_.visit_without_cost(v); }

 private:
  std::unique_ptr<Explorer> explorer_;
  ExplorationState view_;
};

/// One pass of the outer loop.
struct Iteration {
  /// c(P) of the path to the explorer's target when the iteration began.
  Cost path_cost = 0;
  /// Cost of the NN traversals (kappa^N_i) and of the traversals on the
  /// explorer's behalf (kappa^A_i).
  Cost kappa_n = 0;
  Cost kappa_a = 0;
  /// NN budget spent (b); for the modified scheme also b_A and the running b_N
  /// after the iteration.
  Cost b = 0;
  Cost b_a = 0;
  Cost b_n = 0;
};

struct CostBreakdown {
  std::vector<Iteration> iterations;
  /// One entry per NN traversal: its cost, charged to the vertex it left.
  std::vector<Cost> nn_steps;
  Cost return_cost = 0;
};

struct RobustResult {
  Cost cost = 0;
  CostBreakdown breakdown;
  std::vector<Vertex> walk;
};

/// Scheme R: before each explorer step to u, NN explores from the current
/// position while b < lambda * c(P_u) and the position is not u; then the
/// searcher walks to u. Returns to the start at the end.
RobustResult run_basic(const ExplorerFactory& explorer, const Instance& instance, const Rational& lambda);

/// Scheme R-bar: the explorer additionally runs on a budget of b_N / lambda
/// per iteration, where b_N is the total NN cost so far, and NN phases are
/// sized against b_A + c(P_u).
RobustResult run_modified(const ExplorerFactory& explorer, const Instance& instance, const Rational& lambda);

RobustResult run_robust(const ExplorerFactory& explorer, const Instance& instance, const RobustifyConfig& config);

/// Sum of kappa^N_i.
Cost nn_phase_cost(const CostBreakdown& breakdown);

}  // namespace gx
