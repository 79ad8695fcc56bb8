#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gexplore/explorers.hpp"
#include "gexplore/instances.hpp"
#include "support.hpp"

using gx::testing::fixture;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = gx::cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gexplore_test_" + name)).string();
}

}  // namespace

TEST(Cli, RunNearestNeighbourOnTheTriangle) {
  Result r = cli({"run", "--instance", fixture("tri.graph"), "--alg", "nn"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "cost 4\nmst 2\nratio 2\nopt 4\n");
}

TEST(Cli, RunTsplib) {
  Result r = cli({"run", "--instance", fixture("tsplib/eil51.tsp"), "--alg", "dfs"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 9), "cost 511\n");
}

TEST(Cli, FollowPredictionThroughTheModifiedScheme) {
  std::string pred = temp_path("tri.pred");
  {
    std::ofstream f(pred);
    f << "0\n2\n1\n";
  }
  Result plain = cli({"run", "--instance", fixture("tri.graph"), "--alg", "fp", "--prediction", pred});
  EXPECT_EQ(plain.code, 0) << plain.err;
  EXPECT_EQ(plain.out.substr(0, 7), "cost 5\n");
  Result robust = cli({"run", "--instance", fixture("tri.graph"), "--alg", "fp", "--prediction", pred, "--robustify",
                       "modified", "--lambda", "1/2"});
  EXPECT_EQ(robust.code, 0) << robust.err;
  EXPECT_EQ(robust.out.substr(0, 5), "cost ");
  std::filesystem::remove(pred);
}

TEST(Cli, FollowPredictionNeedsAFile) {
  Result r = cli({"run", "--instance", fixture("tri.graph"), "--alg", "fp"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, MissingInstanceNamesThePath) {
  Result r = cli({"run", "--instance", "/no/such/file.graph"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/no/such/file.graph"), std::string::npos);
}

TEST(Cli, UnknownFlagsAreUsageErrors) {
  EXPECT_EQ(cli({"run", "--bogus"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"run", "--instance", fixture("tri.graph"), "--alg", "zz"}).code, 2);
}

TEST(Cli, BadLambdaIsALibraryError) {
  Result r = cli({"run", "--instance", fixture("tri.graph"), "--robustify", "basic", "--lambda", "0"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, GridIsByteStable) {
  std::vector<std::string> args{"grid", "--random", "4", "--random-n", "5-8", "--seed", "3", "--algs", "nn,fp",
                                "--variants", "plain,basic", "--lambdas", "1/2", "--errors", "0,1/2", "--seeds", "1,2"};
  Result a = cli(args), b = cli(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("#schema=gexplore.bench.v1\n", 0), 0u);
}

TEST(Cli, GenerateThenRunRosenkrantz) {
  std::string path = temp_path("ros.graph");
  ASSERT_EQ(cli({"gen-rosenkrantz", "--i", "3", "--out", path}).code, 0);
  Result r = cli({"run", "--instance", path, "--alg", "nn"});
  EXPECT_EQ(r.code, 0) << r.err;
  gx::NearestNeighbor nn;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "cost " + std::to_string(gx::run(nn, gx::gen_rosenkrantz({3, 1})).cost));
  std::filesystem::remove(path);
}

TEST(Cli, GeneratePredictionAndFollowIt) {
  std::string pred = temp_path("tree.pred");
  ASSERT_EQ(cli({"gen-prediction", "--instance", fixture("tri.graph"), "--kind", "tree", "--out", pred}).code, 0);
  Result r = cli({"run", "--instance", fixture("tri.graph"), "--alg", "fp", "--prediction", pred});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 7), "cost 4\n");
  std::filesystem::remove(pred);
}

TEST(Cli, LearnATree) {
  std::string train = temp_path("train.txt");
  {
    std::ofstream f(train);
    f << "3 2\n1 5 5\n5 5 1\n";
  }
  Result r = cli({"learn", "--training", train, "--kind", "tree"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "TREE\n0 1\n1 2\n");
  EXPECT_EQ(r.err, "empirical_error 0\n");
  std::filesystem::remove(train);
}

TEST(Cli, AggregateAGrid) {
  std::string csv = temp_path("grid.csv");
  ASSERT_EQ(cli({"grid", "--random", "3", "--random-n", "5-6", "--algs", "nn", "--out", csv}).code, 0);
  Result r = cli({"aggregate", "--in", csv});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("#schema=gexplore.summary.v1\n", 0), 0u);
  std::filesystem::remove(csv);
}
