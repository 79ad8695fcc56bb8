#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gexplore/graph.hpp"
#include "gexplore/rational.hpp"

namespace gx {

inline constexpr const char* kBenchSchema = "gexplore.bench.v1";
inline constexpr const char* kSummarySchema = "gexplore.summary.v1";

/// One experiment row. Axes that do not apply to a cell are empty: lambda for
/// plain runs, relative_error and seed for algorithms without a prediction.
struct BenchRecord {
  std::string instance_id;
  std::string algorithm;
  std::string variant;  // "plain", "basic" or "modified"
  std::optional<Rational> lambda;
  /// Achieved relative error of the prediction, not the requested target.
  std::optional<Rational> relative_error;
  Cost cost = 0;
  Cost mst_lb = 0;
  std::optional<Cost> opt;
  /// cost / mst_lb; empty when the MST costs nothing.
  std::optional<Rational> ratio;
  std::optional<std::uint64_t> seed;
  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// Full cross product, expanded in this order: instance, algorithm, variant,
/// lambda, error target, seed. Only "fp" cells expand over error targets and
/// seeds; only robustified cells expand over lambdas. Each fp cell gets a tour
/// prediction built by perfect_tour(instance, seed) and degraded towards its
/// target with the same seed.
struct GridSpec {
  std::vector<Instance> instances;
  std::vector<std::string> algorithms;
  std::vector<std::string> variants{"plain"};
  std::vector<Rational> lambdas{Rational(1)};
  std::vector<Rational> error_targets{Rational(0)};
  std::vector<std::uint64_t> seeds{0};
  /// Record exact_opt for instances up to kExactOptLimit vertices.
  bool record_opt = true;
};

struct CellFailure {
  std::string cell;
  std::string message;
};

struct GridResult {
  std::vector<BenchRecord> records;
  std::vector<CellFailure> failures;
};

/// Runs the cells on GEXPLORE_THREADS worker threads (default: hardware
/// concurrency). A failing cell is reported in failures and left out of
/// records; the rest of the grid continues. Output order is grid order.
GridResult run_grid(const GridSpec& spec);
GridResult run_grid(const GridSpec& spec, unsigned threads);

unsigned bench_threads();

/// Schema line, header line, then one row per record. Rationals are written
/// exactly as "a/b".
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// Throws ParseError, or UnsupportedFormat on a different schema tag.
std::vector<BenchRecord> read_csv(std::istream& in);

/// Statistics of the ratio over one group: records sharing algorithm,
/// variant and lambda whose relative error falls in [lo, hi). Records
/// without a relative error form their own group with no bucket. Records
/// without a ratio are skipped. Every record weighs the same.
struct SummaryRow {
  std::string algorithm;
  std::string variant;
  std::optional<Rational> lambda;
  std::optional<Rational> bucket_lo;
  std::optional<Rational> bucket_hi;
  std::size_t count = 0;
  std::string mean;    // exact, "a/b"
  std::string mean_decimal;
  std::string stddev;  // population, decimal
};

/// Means are exact; the standard deviation is the rounded square root of the
/// exact variance. decimals fixes the rendered precision.
std::vector<SummaryRow> aggregate(const std::vector<BenchRecord>& records, const Rational& bucket_width,
                                  unsigned decimals = 6);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace gx
