#include "gexplore/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gexplore/errors.hpp"

namespace gx {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

struct Token {
  std::string text;
  std::size_t line;
};

}  // namespace

Instance parse_tsplib(std::istream& in, std::string id) {
  std::map<std::string, std::string> spec;
  std::vector<Token> coords, weights;
  std::vector<Token>* section = nullptr;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    std::string head = upper(t.substr(0, t.find_first_of(" \t:")));
    if (head == "EOF") break;
    if (head == "NODE_COORD_SECTION") {
      section = &coords;
      continue;
    }
    if (head == "EDGE_WEIGHT_SECTION") {
      section = &weights;
      continue;
    }
    if (head == "DISPLAY_DATA_SECTION" || head == "FIXED_EDGES_SECTION") {
      section = nullptr;
      spec["_skip"] = head;
      continue;
    }
    if (auto colon = t.find(':'); colon != std::string::npos && std::isalpha(static_cast<unsigned char>(t[0]))) {
      spec[upper(trim(t.substr(0, colon)))] = trim(t.substr(colon + 1));
      section = nullptr;
      continue;
    }
    if (!section) {
      if (spec.count("_skip")) continue;
      throw ParseError("unexpected line '" + t + "'", lineno);
    }
    std::istringstream ss(t);
    std::string tok;
    while (ss >> tok) section->push_back({tok, lineno});
  }

  auto field = [&](const std::string& key) -> std::string {
    auto it = spec.find(key);
    return it == spec.end() ? std::string{} : upper(it->second);
  };
  if (id.empty()) id = spec.count("NAME") ? spec["NAME"] : std::string{};
  if (std::string type = field("TYPE"); !type.empty() && type != "TSP")
    throw UnsupportedFormat("TSPLIB TYPE " + type + " is not supported (symmetric TSP only)");
  std::string dim = field("DIMENSION");
  if (dim.empty()) throw ParseError("missing DIMENSION", lineno);
  std::size_t n = 0;
  try {
    n = std::stoul(dim);
  } catch (const std::exception&) {
    throw ParseError("bad DIMENSION '" + dim + "'", lineno);
  }
  if (n == 0) throw ParseError("DIMENSION must be positive", lineno);

  auto number = [](const Token& tok) {
    try {
      std::size_t used = 0;
      double v = std::stod(tok.text, &used);
      if (used != tok.text.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ParseError("bad number '" + tok.text + "'", tok.line);
    }
  };

  const std::string wtype = field("EDGE_WEIGHT_TYPE");
  std::vector<std::vector<Cost>> w(n, std::vector<Cost>(n, 0));
  if (wtype == "EUC_2D") {
    if (coords.size() != 3 * n)
      throw ParseError("NODE_COORD_SECTION needs " + std::to_string(n) + " lines of 'i x y'",
                       coords.empty() ? lineno : coords.back().line);
    std::vector<double> x(n), y(n);
    std::vector<char> seen(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      double idx = number(coords[3 * k]);
      if (idx < 1 || idx > double(n) || idx != std::floor(idx) || seen[std::size_t(idx) - 1])
        throw ParseError("bad node index '" + coords[3 * k].text + "'", coords[3 * k].line);
      std::size_t i = std::size_t(idx) - 1;
      seen[i] = 1;
      x[i] = number(coords[3 * k + 1]);
      y[i] = number(coords[3 * k + 2]);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = x[i] - x[j], dy = y[i] - y[j];
        w[i][j] = w[j][i] = static_cast<Cost>(std::sqrt(dx * dx + dy * dy) + 0.5);
      }
  } else if (wtype == "EXPLICIT") {
    std::string format = field("EDGE_WEIGHT_FORMAT");
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    auto row_major = [&](bool upper_part, bool diag) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          bool keep = upper_part ? (diag ? j >= i : j > i) : (diag ? j <= i : j < i);
          if (keep) cells.emplace_back(i, j);
        }
    };
    if (format == "FULL_MATRIX") {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cells.emplace_back(i, j);
    } else if (format == "UPPER_ROW" || format == "LOWER_COL") {
      row_major(true, false);
    } else if (format == "LOWER_ROW" || format == "UPPER_COL") {
      row_major(false, false);
    } else if (format == "UPPER_DIAG_ROW" || format == "LOWER_DIAG_COL") {
      row_major(true, true);
    } else if (format == "LOWER_DIAG_ROW" || format == "UPPER_DIAG_COL") {
      row_major(false, true);
    } else {
      throw UnsupportedFormat("EDGE_WEIGHT_FORMAT '" + format + "' is not supported");
    }
    if (weights.size() != cells.size())
      throw ParseError("EDGE_WEIGHT_SECTION has " + std::to_string(weights.size()) + " entries, expected " +
                           std::to_string(cells.size()),
                       weights.empty() ? lineno : weights.back().line);
    std::vector<std::vector<char>> set(n, std::vector<char>(n, 0));
    for (std::size_t k = 0; k < cells.size(); ++k) {
      double v = number(weights[k]);
      if (v < 0 || v != std::floor(v)) throw ParseError("weights must be non-negative integers", weights[k].line);
      auto [i, j] = cells[k];
      if (i == j) continue;
      Cost c = static_cast<Cost>(v);
      if (set[i][j] && w[i][j] != c) throw UnsupportedFormat("matrix is not symmetric");
      w[i][j] = w[j][i] = c;
      set[i][j] = set[j][i] = 1;
    }
  } else {
    throw UnsupportedFormat("EDGE_WEIGHT_TYPE '" + wtype + "' is not supported (EUC_2D or EXPLICIT)");
  }
  return make_instance(Graph::complete(n, [&](Vertex a, Vertex b) { return w[a][b]; }), 0, std::move(id));
}

Instance load_tsplib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_tsplib(in, path.stem().string());
}

Instance load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return make_instance(read_edge_list(in), 0, path.stem().string());
}

Instance load_instance(const std::filesystem::path& path) {
  return path.extension() == ".tsp" ? load_tsplib(path) : load_graph_file(path);
}

// ---------------------------------------------------------------------------

std::vector<Vertex> rosenkrantz_nn_order(const RosenkrantzParams& params) {
  if (params.i < 1 || params.i > 24) throw std::invalid_argument("rosenkrantz size parameter must be in 1..24");
  const unsigned k = params.i + 1;
  std::vector<Vertex> points;  // positions x in NN order
  std::function<void(Vertex, unsigned)> order = [&](Vertex centre, unsigned level) {
    if (level > 0) {
      Vertex half = Vertex{1} << (level - 1);
      order(centre - half, level - 1);
      order(centre + half, level - 1);
    }
    points.push_back(centre);
  };
  order(Vertex{1} << (k - 1), k - 1);
  return points;
}

Instance gen_rosenkrantz(const RosenkrantzParams& params) {
  if (params.scale == 0) throw std::invalid_argument("scale must be positive");
  std::vector<Vertex> x = rosenkrantz_nn_order(params);  // label -> position
  auto height = [](Vertex p) -> Cost { return p % 2 == 0 ? 1 : 0; };
  auto cost = [&](Vertex a, Vertex b) {
    Cost span = x[a] > x[b] ? x[a] - x[b] : x[b] - x[a];
    return params.scale * (span + height(x[a]) + height(x[b]));
  };
  return make_instance(Graph::complete(x.size(), cost), 0, "rosenkrantz-i" + std::to_string(params.i));
}

Instance gen_random(std::size_t n, double density, Cost max_cost, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (max_cost == 0) throw std::invalid_argument("max_cost must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::set<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t k = 1; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    Vertex a = perm[k], b = perm[pick(rng)];
    pairs.insert(std::minmax(a, b));
  }
  std::bernoulli_distribution extra(std::clamp(density, 0.0, 1.0));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!pairs.count({u, v}) && extra(rng)) pairs.insert({u, v});
  std::uniform_int_distribution<Cost> cost(1, max_cost);
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, cost(rng)});
  return make_instance(Graph(n, std::move(edges)), 0, "random-n" + std::to_string(n) + "-s" + std::to_string(seed));
}

Instance gen_outerplanar(std::size_t n, double chord_density, Cost max_cost, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (max_cost == 0) throw std::invalid_argument("max_cost must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> ring(n);
  std::iota(ring.begin(), ring.end(), Vertex{0});
  std::shuffle(ring.begin(), ring.end(), rng);
  std::set<std::pair<Vertex, Vertex>> pairs;
  auto add = [&](std::size_t a, std::size_t b) { pairs.insert(std::minmax(ring[a], ring[b])); };
  if (n >= 2)
    for (std::size_t k = 0; k + 1 < n; ++k) add(k, k + 1);
  if (n >= 3) add(n - 1, 0);
  std::bernoulli_distribution keep(std::clamp(chord_density, 0.0, 1.0));
  // Triangulate the polygon ring[a..b], whose side (a, b) already exists.
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  if (n >= 4) todo.emplace_back(0, n - 1);
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    if (b - a < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(a + 1, b - 1);
    std::size_t k = pick(rng);
    if (k - a >= 2) {
      if (keep(rng)) add(a, k);
      todo.emplace_back(a, k);
    }
    if (b - k >= 2) {
      if (keep(rng)) add(k, b);
      todo.emplace_back(k, b);
    }
  }
  std::uniform_int_distribution<Cost> cost(1, max_cost);
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, cost(rng)});
  return make_instance(Graph(n, std::move(edges)), 0,
                       "outerplanar-n" + std::to_string(n) + "-s" + std::to_string(seed));
}

}  // namespace gx
