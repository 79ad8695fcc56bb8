#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gexplore/bench.hpp"
#include "gexplore/errors.hpp"
#include "gexplore/explorers.hpp"
#include "gexplore/instances.hpp"
#include "gexplore/learning.hpp"
#include "gexplore/predictions.hpp"
#include "gexplore/robustify.hpp"

namespace gx {

namespace {

/// Input that cannot be read; reported with exit code 2.
struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open " + path);
  return in;
}

Instance read_instance(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw MissingInput("cannot open " + path);
  return load_instance(path);
}

// Writes to the file if a path is given, else to out.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw MissingInput("cannot write " + path);
  write(file);
}

// "3-8" or "5".
std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  auto dash = text.find('-');
  try {
    if (dash == std::string::npos) {
      unsigned v = static_cast<unsigned>(std::stoul(text));
      return {v, v};
    }
    return {static_cast<unsigned>(std::stoul(text.substr(0, dash))),
            static_cast<unsigned>(std::stoul(text.substr(dash + 1)))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range '" + text + "'");
  }
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  for (const auto& t : texts) out.push_back(parse_rational(t));
  return out;
}

std::string ratio_text(Cost cost, Cost mst_cost) {
  if (mst_cost == 0) return "undefined";
  return to_string(Rational(static_cast<std::int64_t>(cost), static_cast<std::int64_t>(mst_cost)));
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online graph exploration with predictions"};
  app.name("gexplore");
  app.require_subcommand(1);

  // run
  std::string instance_path, alg = "nn", prediction_path, robustify = "none", lambda_text = "1";
  std::uint64_t seed = 0;
  auto* run_cmd = app.add_subcommand("run", "Explore one instance with one algorithm");
  run_cmd->add_option("--instance", instance_path, "Edge-list or .tsp file")->required();
  run_cmd->add_option("--alg", alg, "nn, dfs, hdfs, blocking or fp")
      ->check(CLI::IsMember({"nn", "dfs", "hdfs", "blocking", "fp"}));
  run_cmd->add_option("--prediction", prediction_path, "Prediction file (required for fp)");
  run_cmd->add_option("--robustify", robustify, "none, basic or modified")
      ->check(CLI::IsMember({"none", "basic", "modified"}));
  run_cmd->add_option("--lambda", lambda_text, "Positive rational, e.g. 1/2 or 0.5");
  run_cmd->add_option("--seed", seed, "Accepted for uniformity; run is deterministic");

  // grid
  std::vector<std::string> grid_instances, grid_algs{"nn"}, grid_variants{"plain"}, grid_lambdas{"1"},
      grid_errors{"0"};
  std::vector<std::uint64_t> grid_seeds{0};
  std::string rosenkrantz_range, random_n = "4-10", out_path;
  std::size_t random_count = 0;
  double density = 0.5;
  Cost max_cost = 100;
  bool no_opt = false;
  auto* grid_cmd = app.add_subcommand("grid", "Run an algorithm x instance x prediction grid, write CSV");
  grid_cmd->add_option("--instance", grid_instances, "Instance files");
  grid_cmd->add_option("--rosenkrantz", rosenkrantz_range, "Size parameters, e.g. 3-8");
  grid_cmd->add_option("--random", random_count, "Number of random instances");
  grid_cmd->add_option("--random-n", random_n, "Vertex count range of random instances");
  grid_cmd->add_option("--density", density, "Edge density of random instances");
  grid_cmd->add_option("--max-cost", max_cost, "Largest edge cost of random instances");
  grid_cmd->add_option("--algs", grid_algs, "Algorithms")->delimiter(',');
  grid_cmd->add_option("--variants", grid_variants, "plain, basic, modified")->delimiter(',');
  grid_cmd->add_option("--lambdas", grid_lambdas, "Lambdas for robustified variants")->delimiter(',');
  grid_cmd->add_option("--errors", grid_errors, "Target relative errors for fp")->delimiter(',');
  grid_cmd->add_option("--seeds", grid_seeds, "Prediction seeds for fp")->delimiter(',');
  grid_cmd->add_option("--seed", seed, "Seed for random instances");
  grid_cmd->add_flag("--no-opt", no_opt, "Skip the exact optimum column");
  grid_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  // gen-rosenkrantz
  unsigned ros_i = 1;
  Cost ros_scale = 1;
  auto* ros_cmd = app.add_subcommand("gen-rosenkrantz", "Write a Rosenkrantz instance as an edge list");
  ros_cmd->add_option("--i", ros_i, "Size parameter")->required();
  ros_cmd->add_option("--scale", ros_scale, "Cost multiplier");
  ros_cmd->add_option("--out", out_path, "Output path (default stdout)");

  // gen-prediction
  std::string kind = "tour", error_text = "0";
  auto* pred_cmd = app.add_subcommand("gen-prediction", "Write a perfect or degraded prediction");
  pred_cmd->add_option("--instance", instance_path, "Edge-list or .tsp file")->required();
  pred_cmd->add_option("--kind", kind, "tour or tree")->check(CLI::IsMember({"tour", "tree"}));
  pred_cmd->add_option("--error", error_text, "Target relative error (tours)");
  pred_cmd->add_option("--seed", seed, "Seed for the 2-opt scans");
  pred_cmd->add_option("--out", out_path, "Output path (default stdout)");

  // learn
  std::string training_path;
  Vertex start = 0;
  auto* learn_cmd = app.add_subcommand("learn", "Learn a prediction from a training set");
  learn_cmd->add_option("--training", training_path, "Training-set file")->required();
  learn_cmd->add_option("--kind", kind, "tree or tour")->check(CLI::IsMember({"tour", "tree"}));
  learn_cmd->add_option("--start", start, "Start vertex of the learned order");
  learn_cmd->add_option("--out", out_path, "Output path (default stdout)");

  // aggregate
  std::string in_path, bucket_text = "1";
  unsigned decimals = 6;
  auto* agg_cmd = app.add_subcommand("aggregate", "Bucketed means and standard deviations of a bench CSV");
  agg_cmd->add_option("--in", in_path, "Bench CSV")->required();
  agg_cmd->add_option("--bucket", bucket_text, "Bucket width of the relative error");
  agg_cmd->add_option("--decimals", decimals, "Digits after the point");
  agg_cmd->add_option("--out", out_path, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) {
      Instance inst = read_instance(instance_path);
      std::vector<Vertex> order;
      if (alg == "fp") {
        if (prediction_path.empty()) throw CLI::RequiredError("--prediction is required for fp");
        auto in = open_input(prediction_path);
        order = prediction_order(inst, read_prediction(in));
      }
      ExplorerFactory factory = explorer_factory(alg, order);
      Cost cost = 0;
      if (robustify == "none") {
        auto explorer = factory();
        cost = run(*explorer, inst).cost;
      } else {
        Rational lambda = parse_rational(lambda_text);
        cost = run_robust(factory, inst, {lambda, robustify == "basic" ? Variant::basic : Variant::modified}).cost;
      }
      Cost m = mst(inst.graph).cost;
      out << "cost " << cost << '\n' << "mst " << m << '\n' << "ratio " << ratio_text(cost, m) << '\n';
      if (inst.graph.n() <= kExactOptLimit) out << "opt " << exact_opt(inst.graph, inst.start) << '\n';
      return 0;
    }

    if (*grid_cmd) {
      GridSpec spec;
      for (const auto& p : grid_instances) spec.instances.push_back(read_instance(p));
      if (!rosenkrantz_range.empty()) {
        auto [lo, hi] = parse_range(rosenkrantz_range);
        for (unsigned i = lo; i <= hi; ++i) spec.instances.push_back(gen_rosenkrantz({i, 1}));
      }
      if (random_count > 0) {
        auto [lo, hi] = parse_range(random_n);
        if (lo < 1 || lo > hi) throw std::invalid_argument("bad --random-n range");
        for (std::size_t k = 0; k < random_count; ++k) {
          std::size_t n = lo + k % (hi - lo + 1);
          spec.instances.push_back(gen_random(n, density, max_cost, seed + k));
        }
      }
      spec.algorithms = grid_algs;
      spec.variants = grid_variants;
      spec.lambdas = parse_rationals(grid_lambdas);
      spec.error_targets = parse_rationals(grid_errors);
      spec.seeds = grid_seeds;
      spec.record_opt = !no_opt;
      for (const auto& a : spec.algorithms) explorer_factory(a, {});
      GridResult result = run_grid(spec);
      for (const auto& f : result.failures) err << "cell failed: " << f.cell << ": " << f.message << '\n';
      emit(out_path, out, [&](std::ostream& o) { write_csv(o, result.records); });
      return 0;
    }

    if (*ros_cmd) {
      Instance inst = gen_rosenkrantz({ros_i, ros_scale});
      emit(out_path, out, [&](std::ostream& o) { write_edge_list(o, inst.graph); });
      return 0;
    }

    if (*pred_cmd) {
      Instance inst = read_instance(instance_path);
      if (kind == "tree") {
        if (parse_rational(error_text) != Rational(0)) throw std::invalid_argument("tree predictions are only generated exact");
        TreePrediction p = perfect_tree(inst);
        emit(out_path, out, [&](std::ostream& o) { write_prediction(o, p); });
        return 0;
      }
      DegradeResult d = degrade(inst, perfect_tour(inst, seed), parse_rational(error_text), seed);
      emit(out_path, out, [&](std::ostream& o) { write_prediction(o, d.prediction); });
      err << "relative_error " << to_string(d.error.relative) << (d.saturated ? " (saturated)" : "")
          << (d.error.heuristic_reference ? " (heuristic reference)" : "") << '\n';
      return 0;
    }

    if (*learn_cmd) {
      auto in = open_input(training_path);
      TrainingSet set = read_training_set(in);
      if (kind == "tree") {
        TreePrediction p = erm_tree(set, start);
        emit(out_path, out, [&](std::ostream& o) { write_prediction(o, p); });
        err << "empirical_error " << to_string(empirical_error(set, p.tree)) << '\n';
      } else {
        TourPrediction p = erm_tour(set, start);
        emit(out_path, out, [&](std::ostream& o) { write_prediction(o, p); });
        err << "empirical_error " << to_string(empirical_error(set, p)) << '\n';
      }
      return 0;
    }

    if (*agg_cmd) {
      auto in = open_input(in_path);
      auto rows = aggregate(read_csv(in), parse_rational(bucket_text), decimals);
      emit(out_path, out, [&](std::ostream& o) { write_summary(o, rows); });
      return 0;
    }
  } catch (const MissingInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace gx
