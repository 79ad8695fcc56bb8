#include "gexplore/robustify.hpp"

#include <stdexcept>

#include "gexplore/errors.hpp"

namespace gx {

BlackboxView::BlackboxView(const Instance& instance, std::unique_ptr<Explorer> explorer)
    : explorer_(std::move(explorer)), view_(instance) {}

Vertex BlackboxView::simulate(const ExplorationState& real) {
  while (true) {
    if (view_.complete()) throw Stuck(explorer_->name() + " has nothing left to explore");
    Vertex u = explorer_->next_target(view_);
    if (u >= view_.n() || view_.explored(u) || !view_.labeled(u))
      throw Stuck(explorer_->name() + " named illegal vertex " + std::to_string(u));
    if (!real.explored(u)) return u;
    view_.visit_without_cost(u);
  }
}

namespace {

void check_lambda(const Rational& lambda) {
  if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
}

// One NN traversal from the current position.
Cost nn_step(ExplorationState& state, CostBreakdown& bd) {
  Nearest next = nn_next(state);
  Path p = shortest_path(state, state.position(), next.vertex);
  state.traverse(p);
  bd.nn_steps.push_back(p.cost);
  return p.cost;
}

Cost walk_to(ExplorationState& state, Vertex target) {
  Path p = shortest_path(state, state.position(), target);
  state.traverse(p);
  return p.cost;
}

RobustResult finish(ExplorationState& state, CostBreakdown bd) {
  bd.return_cost = walk_to(state, state.start());
  return {state.total_cost(), std::move(bd), state.walk()};
}

}  // namespace

RobustResult run_basic(const ExplorerFactory& factory, const Instance& instance, const Rational& lambda) {
  check_lambda(lambda);
  ExplorationState state(instance);
  BlackboxView view(instance, factory());
  CostBreakdown bd;
  while (!state.complete()) {
    Iteration it;
    Vertex u = view.simulate(state);
    it.path_cost = shortest_path(state, state.position(), u).cost;
    while (scaled_less(it.b, lambda, it.path_cost) && state.position() != u) {
      Cost c = nn_step(state, bd);
      it.b += c;
      it.kappa_n += c;
    }
    it.kappa_a = walk_to(state, u);
    view.arrive(u);
    bd.iterations.push_back(it);
  }
  return finish(state, std::move(bd));
}

RobustResult run_modified(const ExplorerFactory& factory, const Instance& instance, const Rational& lambda) {
  check_lambda(lambda);
  ExplorationState state(instance);
  BlackboxView view(instance, factory());
  CostBreakdown bd;
  Cost b_n = 0;
  const Rational inv = 1 / lambda;
  while (!state.complete()) {
    Iteration it;
    Vertex u = view.simulate(state);
    Cost c = shortest_path(state, state.position(), u).cost;
    it.path_cost = c;

    // explorer phase on the accumulated NN budget
    while (scaled_less_equal(it.b_a + c, inv, b_n) && !state.complete()) {
      Cost paid = walk_to(state, u);
      view.arrive(u);
      it.b_a += paid;
      it.kappa_a += paid;
      if (!state.complete()) {
        u = view.simulate(state);
        c = shortest_path(state, state.position(), u).cost;
      }
    }

    // NN phase
    auto keep_going = [&] {
      if (state.complete()) return false;
      bool at_u = state.position() == u;
      return (!at_u && scaled_less(it.b, lambda, it.b_a + c)) || (at_u && scaled_less(it.b, lambda, it.b_a));
    };
    while (keep_going()) {
      Cost step = nn_step(state, bd);
      it.b += step;
      it.kappa_n += step;
      if (state.position() == u && scaled_less(it.b, lambda, it.b_a)) {
        view.arrive(u);
        if (!state.complete()) {
          u = view.simulate(state);
          c = shortest_path(state, state.position(), u).cost;
        }
      }
    }
    b_n += it.b;
    it.b_n = b_n;

    if (!state.complete()) {
      it.kappa_a += walk_to(state, u);
      view.arrive(u);
    }
    bd.iterations.push_back(it);
  }
  return finish(state, std::move(bd));
}

RobustResult run_robust(const ExplorerFactory& explorer, const Instance& instance, const RobustifyConfig& config) {
  return config.variant == Variant::basic ? run_basic(explorer, instance, config.lambda)
                                          : run_modified(explorer, instance, config.lambda);
}

Cost nn_phase_cost(const CostBreakdown& breakdown) {
  Cost total = 0;
  for (const Iteration& it : breakdown.iterations) total += it.kappa_n;
  return total;
}

}  // namespace gx
