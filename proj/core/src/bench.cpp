#include "gexplore/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "gexplore/errors.hpp"
#include "gexplore/explorers.hpp"
#include "gexplore/predictions.hpp"
#include "gexplore/robustify.hpp"

namespace gx {

namespace {

struct Cell {
  std::size_t instance;
  std::string algorithm;
  std::string variant;
  std::optional<Rational> lambda;
  std::optional<std::size_t> prediction;  // index into the prediction jobs
  std::optional<std::uint64_t> seed;
};

struct PredictionJob {
  std::size_t instance;
  Rational target;
  std::uint64_t seed;
};

struct InstanceData {
  Cost mst = 0;
  std::optional<Cost> opt;
  std::optional<TourReference> reference;
};

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < count;) body(k);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

Variant parse_variant(const std::string& v) {
  if (v == "basic") return Variant::basic;
  if (v == "modified") return Variant::modified;
  throw std::invalid_argument("unknown variant '" + v + "'");
}

std::string describe(const GridSpec& spec, const Cell& cell, const std::vector<PredictionJob>& jobs) {
  std::ostringstream s;
  s << spec.instances[cell.instance].id << ' ' << cell.algorithm << ' ' << cell.variant;
  if (cell.lambda) s << " lambda=" << to_string(*cell.lambda);
  if (cell.prediction) s << " target=" << to_string(jobs[*cell.prediction].target);
  if (cell.seed) s << " seed=" << *cell.seed;
  return s.str();
}

}  // namespace

unsigned bench_threads() {
  if (const char* env = std::getenv("GEXPLORE_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t > 0) return static_cast<unsigned>(t);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

GridResult run_grid(const GridSpec& spec) { return run_grid(spec, bench_threads()); }

GridResult run_grid(const GridSpec& spec, unsigned threads) {
  for (const auto& v : spec.variants)
    if (v != "plain") parse_variant(v);

  std::vector<PredictionJob> jobs;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> job_index;
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < spec.instances.size(); ++i)
    for (const auto& alg : spec.algorithms)
      for (const auto& variant : spec.variants) {
        std::vector<std::optional<Rational>> lambdas;
        if (variant == "plain")
          lambdas.push_back(std::nullopt);
        else
          lambdas.assign(spec.lambdas.begin(), spec.lambdas.end());
        for (const auto& lambda : lambdas) {
          if (alg != "fp") {
            cells.push_back({i, alg, variant, lambda, std::nullopt, std::nullopt});
            continue;
          }
          for (std::size_t t = 0; t < spec.error_targets.size(); ++t)
            for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
              auto [it, fresh] = job_index.try_emplace({i, t, s}, jobs.size());
              if (fresh) jobs.push_back({i, spec.error_targets[t], spec.seeds[s]});
              cells.push_back({i, alg, variant, lambda, it->second, spec.seeds[s]});
            }
        }
      }

  std::vector<InstanceData> data(spec.instances.size());
  std::vector<std::string> data_error(spec.instances.size());
  parallel_for(spec.instances.size(), threads, [&](std::size_t i) {
    const Instance& inst = spec.instances[i];
    try {
      data[i].mst = mst(inst.graph).cost;
      if (spec.record_opt && inst.graph.n() <= kExactOptLimit) data[i].opt = exact_opt(inst.graph, inst.start);
      bool needs_reference = std::any_of(jobs.begin(), jobs.end(), [&](const auto& j) { return j.instance == i; });
      if (needs_reference) data[i].reference = tour_reference(inst);
    } catch (const std::exception& e) {
      data_error[i] = e.what();
    }
  });

  std::vector<std::optional<DegradeResult>> predictions(jobs.size());
  std::vector<std::string> prediction_error(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t k) {
    const PredictionJob& job = jobs[k];
    const Instance& inst = spec.instances[job.instance];
    try {
      if (!data_error[job.instance].empty()) throw Error(data_error[job.instance]);
      TourPrediction base = perfect_tour(inst, job.seed);
      predictions[k] = degrade(inst, base, job.target, job.seed, *data[job.instance].reference);
    } catch (const std::exception& e) {
      prediction_error[k] = e.what();
    }
  });

  std::vector<std::optional<BenchRecord>> out(cells.size());
  std::vector<std::string> failure(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t k) {
    const Cell& cell = cells[k];
    const Instance& inst = spec.instances[cell.instance];
    try {
      if (!data_error[cell.instance].empty()) throw Error(data_error[cell.instance]);
      std::vector<Vertex> order;
      std::optional<Rational> rel;
      if (cell.prediction) {
        if (!prediction_error[*cell.prediction].empty()) throw Error(prediction_error[*cell.prediction]);
        order = predictions[*cell.prediction]->prediction.order;
        rel = predictions[*cell.prediction]->error.relative;
      }
      ExplorerFactory factory = explorer_factory(cell.algorithm, order);
      Cost cost = 0;
      if (cell.variant == "plain") {
        auto explorer = factory();
        cost = run(*explorer, inst).cost;
      } else {
        cost = run_robust(factory, inst, {*cell.lambda, parse_variant(cell.variant)}).cost;
      }
      BenchRecord r;
      r.instance_id = inst.id;
      r.algorithm = cell.algorithm;
      r.variant = cell.variant;
      r.lambda = cell.lambda;
      r.relative_error = rel;
      r.cost = cost;
      r.mst_lb = data[cell.instance].mst;
      r.opt = data[cell.instance].opt;
      if (r.mst_lb > 0) r.ratio = Rational(static_cast<std::int64_t>(cost), static_cast<std::int64_t>(r.mst_lb));
      r.seed = cell.seed;
      out[k] = std::move(r);
    } catch (const std::exception& e) {
      failure[k] = e.what();
    }
  });

  GridResult result;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (out[k])
      result.records.push_back(std::move(*out[k]));
    else
      result.failures.push_back({describe(spec, cells[k], jobs), failure[k]});
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

const char* kColumns = "instance_id,algorithm,variant,lambda,relative_error,cost,mst_lb,opt,ratio,seed";

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::vector<std::string> split_row(const std::string& line, std::size_t lineno) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        fields.back() += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote", lineno);
  return fields;
}

template <class T, class F>
std::string opt_str(const std::optional<T>& v, F&& render) {
  return v ? render(*v) : std::string{};
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  auto rat = [](const Rational& r) { return to_string(r); };
  auto num = [](auto v) { return std::to_string(v); };
  out << "#schema=" << kBenchSchema << '\n' << kColumns << '\n';
  for (const BenchRecord& r : records) {
    out << quote(r.instance_id) << ',' << quote(r.algorithm) << ',' << quote(r.variant) << ','
        << opt_str(r.lambda, rat) << ',' << opt_str(r.relative_error, rat) << ',' << r.cost << ',' << r.mst_lb
        << ',' << opt_str(r.opt, num) << ',' << opt_str(r.ratio, rat) << ',' << opt_str(r.seed, num) << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty file", 0);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != std::string("#schema=") + kBenchSchema) throw UnsupportedFormat("expected schema " + std::string(kBenchSchema));
  if (!std::getline(in, line)) throw ParseError("missing column header", lineno + 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kColumns) throw ParseError("unexpected column header", lineno);

  auto integer = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("expected an integer, got '" + s + "'", lineno);
    return std::stoull(s);
  };
  auto rational = [&](const std::string& s) -> std::optional<Rational> {
    if (s.empty()) return std::nullopt;
    try {
      return parse_rational(s);
    } catch (const std::exception&) {
      throw ParseError("expected a rational, got '" + s + "'", lineno);
    }
  };
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = split_row(line, lineno);
    if (f.size() != 10) throw ParseError("expected 10 fields, got " + std::to_string(f.size()), lineno);
    BenchRecord r;
    r.instance_id = f[0];
    r.algorithm = f[1];
    r.variant = f[2];
    r.lambda = rational(f[3]);
    r.relative_error = rational(f[4]);
    r.cost = integer(f[5]);
    r.mst_lb = integer(f[6]);
    if (!f[7].empty()) r.opt = integer(f[7]);
    r.ratio = rational(f[8]);
    if (!f[9].empty()) r.seed = integer(f[9]);
    records.push_back(std::move(r));
  }
  return records;
}

// ---------------------------------------------------------------------------

namespace {

using Big = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigRational big(const Rational& r) { return BigRational(Big(r.numerator()), Big(r.denominator())); }

Big floor_div(const Big& a, const Big& b) {
  Big q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Big pow10(unsigned d) {
  Big p = 1;
  for (unsigned k = 0; k < d; ++k) p *= 10;
  return p;
}

// Integer scaled by 10^-d, as a fixed-point decimal.
std::string fixed(Big scaled, unsigned d) {
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= d) digits.insert(0, d + 1 - digits.size(), '0');
  std::string s = d ? digits.substr(0, digits.size() - d) + "." + digits.substr(digits.size() - d) : digits;
  return neg ? "-" + s : s;
}

std::string decimal(const BigRational& v, unsigned d) {
  BigRational x = v * pow10(d);
  // round half up
  Big twice = boost::multiprecision::numerator(x) * 2 + boost::multiprecision::denominator(x);
  return fixed(floor_div(twice, boost::multiprecision::denominator(x) * 2), d);
}

std::string sqrt_decimal(const BigRational& v, unsigned d) {
  BigRational x = v * pow10(2 * d);
  Big n = boost::multiprecision::numerator(x), q = boost::multiprecision::denominator(x);
  Big s = boost::multiprecision::sqrt(Big(n / q));
  // nearest integer to sqrt(x): step up while (s + 1/2)^2 <= x, i.e. (2s+1)^2 q <= 4n
  while ((2 * s + 1) * (2 * s + 1) * q <= 4 * n) ++s;
  return fixed(s, d);
}

std::string exact(const BigRational& v) {
  Big n = boost::multiprecision::numerator(v), q = boost::multiprecision::denominator(v);
  return q == 1 ? n.str() : n.str() + "/" + q.str();
}

}  // namespace

std::vector<SummaryRow> aggregate(const std::vector<BenchRecord>& records, const Rational& bucket_width,
                                  unsigned decimals) {
  if (bucket_width <= 0) throw std::invalid_argument("bucket width must be positive");
  using Key = std::tuple<std::string, std::string, std::optional<Rational>, std::optional<std::int64_t>>;
  std::map<Key, std::vector<Rational>> groups;
  for (const BenchRecord& r : records) {
    if (!r.ratio) continue;
    std::optional<std::int64_t> bucket;
    if (r.relative_error) {
      Rational q = *r.relative_error / bucket_width;
      bucket = static_cast<std::int64_t>(floor_div(Big(q.numerator()), Big(q.denominator())));
    }
    groups[{r.algorithm, r.variant, r.lambda, bucket}].push_back(*r.ratio);
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, values] : groups) {
    const auto& [alg, variant, lambda, bucket] = key;
    BigRational sum = 0;
    for (const Rational& v : values) sum += big(v);
    BigRational mean = sum / BigRational(values.size());
    BigRational var = 0;
    for (const Rational& v : values) var += (big(v) - mean) * (big(v) - mean);
    var /= BigRational(values.size());
    SummaryRow row{alg, variant, lambda, std::nullopt, std::nullopt, values.size(), exact(mean),
                   decimal(mean, decimals), sqrt_decimal(var, decimals)};
    if (bucket) {
      row.bucket_lo = bucket_width * Rational(*bucket);
      row.bucket_hi = bucket_width * Rational(*bucket + 1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  auto rat = [](const Rational& r) { return to_string(r); };
  out << "#schema=" << kSummarySchema << '\n'
      << "algorithm,variant,lambda,bucket_lo,bucket_hi,count,mean,mean_decimal,stddev\n";
  for (const SummaryRow& r : rows)
    out << quote(r.algorithm) << ',' << quote(r.variant) << ',' << opt_str(r.lambda, rat) << ','
        << opt_str(r.bucket_lo, rat) << ',' << opt_str(r.bucket_hi, rat) << ',' << r.count << ',' << r.mean << ','
        << r.mean_decimal << ',' << r.stddev << '\n';
}

}  // namespace gx
