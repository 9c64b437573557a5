#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "tfgm/noise.hpp"
#include "tfgm/tfr.hpp"

namespace tfgm {

struct Pixel {
  std::int32_t bin = 0;   // frequency row
  std::int32_t time = 0;  // time column
};

// One connected component of the pixel graph. Pixels are kept sorted by
// linear index (bin-major: bin * n_cols + time) so equal components compare
// equal regardless of traversal order.
struct Component {
  std::vector<Pixel> pixels;
  std::uint64_t edge_count = 0;
  double energy = 0.0;  // sum of squared modulus over the pixels
};

struct ComponentSet {
  std::vector<Component> components;  // ranked, strongest first
  Eigen::Index rows = 0;              // shape of the analyzed matrix
  Eigen::Index cols = 0;
};

// Pixel-graph construction parameters. Vertices are the cells of a modulus
// matrix; two cells within l_p distance r of each other are joined when the
// threshold criterion accepts their pair of magnitudes.
struct GraphConfig {
  int r = 1;       // neighborhood radius, >= 1
  int p = 2;       // l_p norm: 1, 2, or numeric_limits<int>::max() for l_inf
  ThresholdSpec threshold;
};

inline constexpr int kPInf = std::numeric_limits<int>::max();

// Builds the graph over A (a modulus matrix, typically the nonredundant
// half-spectrum) and returns its connected components, discarding isolated
// vertices, ranked by descending edge count with energy and smallest pixel
// index as tie-breakers.
ComponentSet build_components(const RealMatrix& A, const GraphConfig& cfg);

// Full-height binary mask for one component: each pixel lights its own cell
// and the conjugate-mirror cell (M - bin) mod M, so masked inversion of a
// real signal stays real. `rows` here is the full bin count M.
MaskMatrix component_to_mask(const Component& c, Eigen::Index full_rows,
                             Eigen::Index cols);

// Keep the first top_k components that also have at least min_edges edges
// and at least min_energy_fraction of the summed energy of all components.
// Ordering is preserved; the defaults keep everything.
struct SelectionPolicy {
  std::size_t top_k = std::numeric_limits<std::size_t>::max();
  std::uint64_t min_edges = 0;
  double min_energy_fraction = 0.0;
};

ComponentSet select_components(const ComponentSet& set,
                               const SelectionPolicy& policy);

}  // namespace tfgm
