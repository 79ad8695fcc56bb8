#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gexplore/errors.hpp"
#include "gexplore/explorers.hpp"
#include "gexplore/instances.hpp"
#include "gexplore/predictions.hpp"
#include "support.hpp"

using namespace gx;
using gx::testing::triangle;

namespace {

// A uniformly random labeled spanning tree (random Pruefer sequence).
std::vector<Edge> random_tree(std::size_t n, std::uint64_t seed) {
  auto trees = gx::testing::all_trees(n);
  std::mt19937_64 rng(seed);
  return trees[std::uniform_int_distribution<std::size_t>(0, trees.size() - 1)(rng)];
}

Cost tree_cost(const Graph& g, const std::vector<Edge>& tree) {
  Cost c = 0;
  for (const Edge& e : tree) c += *g.cost(e.u, e.v);
  return c;
}

}  // namespace

TEST(FpCost, TriangleOrders) {
  EXPECT_EQ(fp_cost(triangle(), {0, 1, 2}), 4u);
  // 0-1-2 is not available while 1 is unexplored, so 2 is reached directly
  EXPECT_EQ(fp_cost(triangle(), {0, 2, 1}), 5u);
}

TEST(FpCost, TreeGraphCostsTwiceTheTree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = gen_random(2 + seed % 9, 0.0, 20, seed);  // density 0: a tree
    TreePrediction p = perfect_tree(inst);
    EXPECT_EQ(fp_cost(inst, p.order), 2 * mst(inst.graph).cost);
  }
}

TEST(FpCost, AgreesWithRun) {
  Instance inst = gen_random(8, 0.4, 30, 3);
  std::vector<Vertex> order{0, 5, 2, 7, 1, 3, 6, 4};
  FollowPrediction fp(order);
  EXPECT_EQ(fp_cost(inst, order), run(fp, inst).cost);
}

TEST(TreePrediction, DerivedOrderIsDfsWithAscendingChildren) {
  // 0 - 3, 0 - 1, 1 - 2
  TreePrediction p = make_tree_prediction(4, {{0, 3, 0}, {1, 2, 0}, {0, 1, 0}}, 0);
  EXPECT_EQ(p.order, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(make_tree_prediction(4, {{0, 3, 0}, {1, 2, 0}, {0, 1, 0}}, 2).order,
            (std::vector<Vertex>{2, 1, 0, 3}));
}

TEST(TreePrediction, RejectsNonTrees) {
  EXPECT_THROW(make_tree_prediction(3, {{0, 1, 0}}, 0), std::invalid_argument);
  EXPECT_THROW(make_tree_prediction(3, {{0, 1, 0}, {1, 0, 0}}, 0), std::invalid_argument);
  EXPECT_THROW(make_tree_prediction(4, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}}, 0), std::invalid_argument);
}

TEST(PerfectTree, Triangle) {
  TreePrediction p = perfect_tree(triangle());
  EXPECT_EQ(p.tree, (std::vector<Edge>{{0, 1, 1}, {1, 2, 1}}));
  EXPECT_EQ(p.order, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(error_of(triangle(), p).eta, 0);
}

TEST(PerfectTree, FollowingItCostsAtMostTwiceTheMst) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Instance inst = seed % 2 ? gen_random(2 + seed % 12, 0.3, 40, seed) : gen_outerplanar(3 + seed % 12, 0.5, 40, seed);
    EXPECT_LE(fp_cost(inst, perfect_tree(inst).order), 2 * mst(inst.graph).cost) << "seed " << seed;
  }
}

TEST(PerfectTour, SingleEdge) {
  Instance inst = make_instance(Graph(2, {{0, 1, 4}}));
  EXPECT_EQ(perfect_tour(inst, 0).order, (std::vector<Vertex>{0, 1}));
}

TEST(PerfectTour, WithinTwiceTheOptimum) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::size_t n = 2 + seed % 11;
    Instance inst = seed % 3 ? gen_random(n, 0.4, 50, seed) : gen_rosenkrantz({1 + unsigned(seed % 2), 2});
    TourPrediction p = perfect_tour(inst, seed);
    EXPECT_LE(fp_cost(inst, p.order), 2 * exact_opt(inst.graph, inst.start)) << "seed " << seed;
    EXPECT_EQ(p.order.front(), inst.start);
  }
}

TEST(PerfectTour, UncrossesAMetricFourCycle) {
  // unit square: sides 10, diagonals 14
  Graph g = Graph::complete(4, [](Vertex a, Vertex b) -> Cost { return (a + b) % 2 ? 10 : 14; });
  // 0-1-2-3 around; pairs (0,2) and (1,3) are the diagonals
  Instance inst = make_instance(g);
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_EQ(fp_cost(inst, perfect_tour(inst, seed).order), 40u);
}

TEST(PerfectTour, SeedDeterminesTheResult) {
  Instance inst = gen_random(12, 0.5, 60, 9);
  EXPECT_EQ(perfect_tour(inst, 4).order, perfect_tour(inst, 4).order);
}

TEST(OptimalTour, FollowingItPaysOpt) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = gen_random(2 + seed % 9, 0.3, 40, seed);
    EXPECT_EQ(fp_cost(inst, optimal_tour(inst).order), exact_opt(inst.graph, inst.start));
    EXPECT_EQ(error_of(inst, optimal_tour(inst)).eta, 0);
  }
}

TEST(ErrorOf, TriangleTour) {
  PredictionError e = error_of(triangle(), TourPrediction{{0, 2, 1}});
  EXPECT_EQ(e.eta, 5 - 4);
  EXPECT_EQ(e.relative, Rational(1, 2));
  EXPECT_FALSE(e.heuristic_reference);
}

TEST(ErrorOf, LargeInstancesUseAHeuristicReference) {
  Instance inst = gen_random(kExactOptLimit + 2, 0.3, 20, 1);
  TourReference ref = tour_reference(inst);
  EXPECT_TRUE(ref.heuristic);
  EXPECT_EQ(ref.cost, fp_cost(inst, perfect_tour(inst, 0).order));
  EXPECT_TRUE(error_of(inst, perfect_tour(inst, 0)).heuristic_reference);
  EXPECT_EQ(error_of(inst, perfect_tour(inst, 0)).eta, 0);
}

TEST(ErrorOf, TourIdentity) {
  // following a tour costs OPT + eta
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = gen_random(3 + seed % 8, 0.4, 30, seed);
    for (const auto& order : {perfect_tour(inst, seed).order, degrade(inst, perfect_tour(inst, seed), {}, seed).prediction.order}) {
      PredictionError e = error_of(inst, TourPrediction{order});
      EXPECT_EQ(std::int64_t(fp_cost(inst, order)), std::int64_t(exact_opt(inst.graph, inst.start)) + e.eta);
    }
  }
}

TEST(ErrorOf, FollowingTreesCostsAtMostTwiceOptPlusEta) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    std::size_t n = 2 + seed % 6;
    Instance inst = make_instance(Graph::complete(n, [&](Vertex a, Vertex b) { return Cost(1 + (a * 7 + b * 13 + seed) % 17); }));
    std::vector<Edge> tree = random_tree(n, seed);
    TreePrediction p = make_tree_prediction(n, tree, inst.start);
    PredictionError e = error_of(inst, p);
    EXPECT_LE(std::int64_t(fp_cost(inst, p.order)), 2 * std::int64_t(exact_opt(inst.graph, inst.start)) + e.eta);
    EXPECT_GE(tree_cost(inst.graph, tree), mst(inst.graph).cost);
  }
}

TEST(ErrorOf, DfsOfATreeUsesEachTreeEdgeAtMostTwice) {
  // on the tree graph itself, the walk is exactly twice the tree
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::size_t n = 2 + seed % 6;
    std::vector<Edge> tree = random_tree(n, seed);
    for (Edge& e : tree) e.cost = 1 + seed % 5;
    Instance inst = make_instance(Graph(n, tree));
    RunResult r = [&] {
      FollowPrediction fp(make_tree_prediction(n, tree, 0).order);
      return run(fp, inst);
    }();
    std::map<std::pair<Vertex, Vertex>, int> uses;
    for (std::size_t k = 1; k < r.walk.size(); ++k) ++uses[std::minmax(r.walk[k - 1], r.walk[k])];
    for (const auto& [edge, count] : uses) EXPECT_LE(count, 2);
    EXPECT_EQ(r.cost, 2 * tree_cost(inst.graph, tree));
  }
}

TEST(Degrade, TriangleReachesTheWorseTour) {
  DegradeResult d = degrade(triangle(), TourPrediction{{0, 1, 2}}, {}, 0);
  EXPECT_EQ(d.prediction.order, (std::vector<Vertex>{0, 2, 1}));
  EXPECT_EQ(d.error.eta, 1);
  EXPECT_EQ(d.reversals, 1u);
}

TEST(Degrade, ReachedTargetIsUnchanged) {
  Instance inst = gen_random(9, 0.4, 30, 2);
  TourPrediction p = perfect_tour(inst, 1);
  Rational now = error_of(inst, p).relative;
  DegradeResult d = degrade(inst, p, now, 1);
  EXPECT_EQ(d.prediction.order, p.order);
  EXPECT_EQ(d.reversals, 0u);
}

TEST(Degrade, ReachesTheTargetOrSaturates) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = gen_random(5 + seed % 6, 0.5, 30, seed);
    TourPrediction p = perfect_tour(inst, seed);
    for (Rational target : {Rational(1, 4), Rational(1), Rational(10)}) {
      DegradeResult d = degrade(inst, p, target, seed);
      EXPECT_TRUE(d.saturated || d.error.relative >= target) << "seed " << seed;
      EXPECT_EQ(d.error.eta, error_of(inst, d.prediction).eta);
    }
  }
}

TEST(Degrade, ErrorGrowsWithTheTarget) {
  Instance inst = gen_random(10, 0.6, 40, 7);
  TourPrediction p = perfect_tour(inst, 3);
  std::int64_t last = error_of(inst, p).eta;
  for (int k = 1; k <= 8; ++k) {
    DegradeResult d = degrade(inst, p, Rational(k, 4), 3);
    EXPECT_GE(d.error.eta, last);
    last = d.error.eta;
  }
}

TEST(Degrade, EveryReversalRaisesTheCost) {
  // stopping after k reversals is the same as asking for the error of k
  Instance inst = gen_random(9, 0.5, 40, 11);
  TourPrediction p = perfect_tour(inst, 0);
  DegradeResult full = degrade(inst, p, {}, 0);
  EXPECT_TRUE(full.saturated);
  EXPECT_GT(fp_cost(inst, full.prediction.order), fp_cost(inst, p.order));
  for (std::size_t i = 1; i + 1 < p.order.size(); ++i)
    for (std::size_t j = i + 1; j < p.order.size(); ++j) {
      auto o = full.prediction.order;
      std::reverse(o.begin() + long(i), o.begin() + long(j) + 1);
      EXPECT_LE(fp_cost(inst, o), fp_cost(inst, full.prediction.order));
    }
}

TEST(Degrade, IsDeterministic) {
  Instance inst = gen_random(11, 0.5, 40, 5);
  TourPrediction p = perfect_tour(inst, 2);
  EXPECT_EQ(degrade(inst, p, Rational(1, 2), 2).prediction.order, degrade(inst, p, Rational(1, 2), 2).prediction.order);
}

TEST(PredictionFile, TourRoundTrip) {
  std::stringstream ss;
  write_prediction(ss, TourPrediction{{0, 2, 1}});
  EXPECT_EQ(ss.str(), "0\n2\n1\n");
  PredictionFile f = read_prediction(ss);
  EXPECT_EQ(f.order, (std::vector<Vertex>{0, 2, 1}));
  EXPECT_FALSE(f.tree);
}

TEST(PredictionFile, TreeRoundTrip) {
  std::stringstream ss;
  write_prediction(ss, perfect_tree(triangle()));
  EXPECT_EQ(ss.str(), "TREE\n0 1\n1 2\n");
  PredictionFile f = read_prediction(ss);
  ASSERT_TRUE(f.tree);
  EXPECT_EQ(prediction_order(triangle(), f), (std::vector<Vertex>{0, 1, 2}));
}

TEST(PredictionFile, Malformed) {
  for (const char* text : {"", "x\n", "TREE\n0\n", "TREE\n0 1 2\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_prediction(in), ParseError) << text;
  }
}
