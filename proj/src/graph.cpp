#include "tfgm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tfgm/util.hpp"

namespace tfgm {

namespace {

// Offsets covering the forward half of the l_p ball of radius r (strictly
// positive row, or zero row and positive column), so every unordered pixel
// pair is visited exactly once.
std::vector<std::pair<int, int>> forward_offsets(int r, int p) {
  if (r < 1) throw invalid_input("graph: radius r must be at least 1");
  if (p != 1 && p != 2 && p != kPInf) {
    throw invalid_input("graph: p must be 1, 2, or infinity");
  }
  std::vector<std::pair<int, int>> offsets;
  for (int di = 0; di <= r; ++di) {
    for (int dj = (di == 0 ? 1 : -r); dj <= r; ++dj) {
      bool inside = false;
      if (p == 1) {
        inside = di + std::abs(dj) <= r;
      } else if (p == 2) {
        inside = di * di + dj * dj <= r * r;
      } else {
        inside = std::max(di, std::abs(dj)) <= r;
      }
      if (inside) offsets.emplace_back(di, dj);
    }
  }
  return offsets;
}

bool edge_accepted(double a, double b, const ThresholdSpec& t) {
  // A pixel pair with a zero magnitude never forms an edge; otherwise a
  // zero threshold would glue the entire silent background into one
  // spurious component.
  if (std::min(a, b) <= 0.0) return false;
  if (t.criterion == EdgeCriterion::kProduct) return a * b >= t.tau;
  return std::min(a, b) >= t.tau;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> size;

  explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];  // path halving
      v = parent[v];
    }
    return v;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

ComponentSet build_components(const RealMatrix& A, const GraphConfig& cfg) {
  const Eigen::Index rows = A.rows();
  const Eigen::Index cols = A.cols();
  const auto offsets = forward_offsets(cfg.r, cfg.p);
  const std::size_t n_px = static_cast<std::size_t>(rows * cols);

  ComponentSet out;
  out.rows = rows;
  out.cols = cols;
  if (n_px == 0) return out;

  const auto index_of = [cols](Eigen::Index m, Eigen::Index n) {
    return static_cast<std::size_t>(m * cols + n);
  };

  UnionFind uf(n_px);
  for (Eigen::Index m = 0; m < rows; ++m) {
    for (Eigen::Index n = 0; n < cols; ++n) {
      const double a = A(m, n);
      for (const auto& [di, dj] : offsets) {
        const Eigen::Index mm = m + di;
        const Eigen::Index nn = n + dj;
        if (mm < 0 || mm >= rows || nn < 0 || nn >= cols) continue;
        if (edge_accepted(a, A(mm, nn), cfg.threshold)) {
          uf.unite(index_of(m, n), index_of(mm, nn));
        }
      }
    }
  }

  // Pixels that were never joined to anything are background, not
  // components. Every member of a multi-pixel set took part in an edge.
  std::vector<std::int64_t> slot(n_px, -1);
  std::vector<Component> components;
  for (Eigen::Index m = 0; m < rows; ++m) {
    for (Eigen::Index n = 0; n < cols; ++n) {
      const std::size_t idx = index_of(m, n);
      const std::size_t root = uf.find(idx);
      if (uf.size[root] < 2) continue;
      if (slot[root] < 0) {
        slot[root] = static_cast<std::int64_t>(components.size());
        components.emplace_back();
      }
      Component& c = components[static_cast<std::size_t>(slot[root])];
      c.pixels.push_back({static_cast<std::int32_t>(m),
                          static_cast<std::int32_t>(n)});
      c.energy += A(m, n) * A(m, n);
    }
  }

  // Second sweep attributes each edge (visited once, thanks to the forward
  // offsets) to its component's count.
  for (Eigen::Index m = 0; m < rows; ++m) {
    for (Eigen::Index n = 0; n < cols; ++n) {
      const double a = A(m, n);
      for (const auto& [di, dj] : offsets) {
        const Eigen::Index mm = m + di;
        const Eigen::Index nn = n + dj;
        if (mm < 0 || mm >= rows || nn < 0 || nn >= cols) continue;
        if (edge_accepted(a, A(mm, nn), cfg.threshold)) {
          const std::size_t root = uf.find(index_of(m, n));
          components[static_cast<std::size_t>(slot[root])].edge_count += 1;
        }
      }
    }
  }

  // Pixel lists come out already sorted by (bin, time) from the row-major
  // sweeps; rank components by edge count, then energy, then first pixel.
  std::sort(components.begin(), components.end(),
            [cols](const Component& x, const Component& y) {
              if (x.edge_count != y.edge_count) {
                return x.edge_count > y.edge_count;
              }
              if (x.energy != y.energy) return x.energy > y.energy;
              const auto key = [cols](const Component& c) {
                return static_cast<std::int64_t>(c.pixels.front().bin) * cols +
                       c.pixels.front().time;
              };
              return key(x) < key(y);
            });
  out.components = std::move(components);
  return out;
}

MaskMatrix component_to_mask(const Component& c, Eigen::Index full_rows,
                             Eigen::Index cols) {
  MaskMatrix mask = MaskMatrix::Constant(full_rows, cols, false);
  for (const Pixel& px : c.pixels) {
    if (px.bin < 0 || px.bin >= full_rows || px.time < 0 || px.time >= cols) {
      throw invalid_input("component_to_mask: pixel outside the matrix");
    }
    mask(px.bin, px.time) = true;
    const Eigen::Index mirror = (full_rows - px.bin) % full_rows;
    mask(mirror, px.time) = true;
  }
  return mask;
}

ComponentSet select_components(const ComponentSet& set,
                               const SelectionPolicy& policy) {
  double total_energy = 0.0;
  for (const Component& c : set.components) total_energy += c.energy;
  const double energy_floor = policy.min_energy_fraction * total_energy;

  ComponentSet out;
  out.rows = set.rows;
  out.cols = set.cols;
  for (const Component& c : set.components) {
    if (out.components.size() >= policy.top_k) break;
    if (c.edge_count < policy.min_edges) continue;
    if (c.energy < energy_floor) continue;
    out.components.push_back(c);
  }
  return out;
}

}  // namespace tfgm
