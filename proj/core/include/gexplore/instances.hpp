#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gexplore/graph.hpp"

namespace gx {

/// Symmetric TSPLIB text files with EDGE_WEIGHT_TYPE EUC_2D (costs are the
/// Euclidean distances rounded to the nearest integer) or EXPLICIT
/// (FULL_MATRIX, UPPER_ROW, LOWER_ROW, UPPER_DIAG_ROW, LOWER_DIAG_ROW).
/// Produces a complete graph with start 0. Throws UnsupportedFormat or
/// ParseError.
Instance load_tsplib(const std::filesystem::path& path);
Instance parse_tsplib(std::istream& in, std::string id = {});

/// Edge-list file; start 0. Throws ParseError or Disconnected.
Instance load_graph_file(const std::filesystem::path& path);

/// Loads by extension: ".tsp" as TSPLIB, anything else as an edge list.
Instance load_instance(const std::filesystem::path& path);

struct RosenkrantzParams {
  unsigned i = 1;
  Cost scale = 1;
};

/// Lower-bound family for nearest neighbor, n = 2^(i+1) - 1.
///
/// Points x = 1 .. 2^(i+1) - 1 sit on a line. Odd points are leaves at height
/// 0 and even points are hubs at height 1; the cost between two points is
/// scale * (|x - y| + h(x) + h(y)). This is a metric: the path metric of a
/// chain of leaves joined by cost-2 edges, each hub hanging off its two
/// neighbouring leaves by cost-2 edges. The instance is the complete graph
/// over it, so every algorithm sees the metric directly.
///
/// NN is driven through the points block by block. A block of level j centred
/// at hub C is visited as: the block of level j-1 centred at C - 2^(j-1), then
/// the one centred at C + 2^(j-1), then C itself; a level-0 block is its single
/// leaf. Every decision along this order is either strictly cheapest or tied,
/// and the vertex labels are the positions in the order, so the ascending-index
/// tie-break resolves each tie in favour of the order. No cost perturbation is
/// needed; the vertex labelled 0 is the leftmost leaf and is the start.
Instance gen_rosenkrantz(const RosenkrantzParams& params);

/// Positions x in the order NN visits them; vertex k sits at position
/// result[k].
std::vector<Vertex> rosenkrantz_nn_order(const RosenkrantzParams& params);

/// Random spanning tree plus every other pair with probability density;
/// costs uniform in [1, max_cost]. Reproducible from the seed.
Instance gen_random(std::size_t n, double density, Cost max_cost, std::uint64_t seed);

/// Outerplanar (hence planar) random graph: a Hamiltonian cycle whose vertex
/// order is shuffled, plus non-crossing chords drawn from a random
/// triangulation, each kept with probability chord_density.
Instance gen_outerplanar(std::size_t n, double chord_density, Cost max_cost, std::uint64_t seed);

}  // namespace gx
