#pragma once

// Empty region graph construction. build_naive is the cubic-time reference;
// build_grid answers the same emptiness questions through a uniform grid and
// must produce the identical edge list.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include <json.hpp>

#include "erg/geometry.hpp"
#include "erg/regions.hpp"
#include "erg/sampler.hpp"

namespace erg {

inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();

struct Edge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double length = 0.0;
  Point midpoint;
  Direction direction;
};

/// Restrictions applied while enumerating candidate pairs. The resulting edge
/// list is the sub-list of the full graph's edges satisfying all filters.
struct BuildOptions {
  double truncation_length = kNoTruncation;
  double cell_size = 0.0;  // 0 selects the default
  double min_length = 0.0;
  std::optional<Box> midpoint_window;
};

struct Graph {
  PointCloud points;
  RegionFamily family;
  std::vector<Edge> edges;  // sorted by (i, j)
  double truncation_length = kNoTruncation;
  double min_length = 0.0;
  std::optional<Box> midpoint_window;
};

/// Uniform grid over a point cloud with CSR cell storage.
class GridIndex {
 public:
  /// `max_query_radius` sizes the cache of center-outward cell orders.
  GridIndex(const PointCloud& points, double cell_size, double max_query_radius = 0.0);

  double cell_size() const { return cell_size_; }
  std::size_t cell_count() const { return cell_start_.size() - 1; }
  std::size_t cell_of(PointView p) const;
  std::span<const std::uint32_t> cell_points(std::size_t cell) const {
    return {order_.data() + cell_start_[cell], order_.data() + cell_start_[cell + 1]};
  }

  /// Visits every point whose cell meets B(center, radius), nearest cells
  /// first. The radius is inflated by a relative 1e-9 so the candidate set
  /// is a superset of the points in the closed ball despite rounding.
  /// Stops and returns true as soon as `visit(index)` returns true.
  template <typename Visit>
  bool any_in_ball(PointView center, double radius, Visit&& visit) const;

  /// Visits every point whose cell meets B(center, radius), raster order.
  template <typename Visit>
  void for_each_in_ball(PointView center, double radius, Visit&& visit) const;

 private:
  bool cell_range(PointView center, double radius, std::vector<long>& lo, std::vector<long>& hi,
                  std::vector<long>& mid) const;
  double cell_gap2(PointView center, const long* cell) const;
  std::size_t linear(const long* cell) const;

  const PointCloud* points_;
  int d_;
  double cell_size_;
  Point origin_;
  std::vector<long> dims_;
  std::vector<std::size_t> cell_start_;
  std::vector<std::uint32_t> order_;
  // offsets_[k] = offsets with Chebyshev norm <= k sorted by Euclidean norm.
  std::vector<std::vector<int>> offsets_;
};

/// Cubic-time oracle.
Graph build_naive(const PointCloud& points, const RegionFamily& family, double truncation_length = kNoTruncation);
Graph build_naive(const PointCloud& points, const RegionFamily& family, const BuildOptions& options);

Graph build_grid(const PointCloud& points, const RegionFamily& family, double truncation_length = kNoTruncation,
                 double cell_size = 0.0);
Graph build_grid(const PointCloud& points, const RegionFamily& family, const BuildOptions& options);

double default_cell_size(const PointCloud& points, double truncation_length);

struct EdgeStatistics {
  std::size_t edge_count = 0;
  double max_length = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> degrees;           // per vertex
  std::vector<std::size_t> degree_histogram;  // [k] = vertices of degree k
};

EdgeStatistics edge_statistics(const Graph& g);

/// True when the edge lists agree on (i, j).
bool same_edge_set(const std::vector<Edge>& a, const std::vector<Edge>& b);

/// Number of edges in exactly one of the two lists.
std::size_t edge_set_mismatch(const std::vector<Edge>& a, const std::vector<Edge>& b);

/// Edge list CSV: i,j,length,mid_0,...,mid_{d-1},dir_0,...,dir_{d-1}.
void write_edges_csv(std::ostream& os, const Graph& g);

/// {"n", "family", "d", "truncation_length", "seed"}.
nlohmann::json graph_metadata(const Graph& g, std::uint64_t seed);

// ---------------------------------------------------------------------------

template <typename Visit>
bool GridIndex::any_in_ball(PointView center, double radius, Visit&& visit) const {
  thread_local std::vector<long> lo, hi, mid, cell;
  if (order_.empty()) return false;
  // The cell holding the center is the likeliest place for a hit; try it
  // before any range setup. Extra candidates are harmless.
  const std::size_t first = cell_of(center);
  for (std::uint32_t idx : cell_points(first)) {
    if (visit(idx)) return true;
  }
  radius = radius * (1.0 + 1e-9) + 1e-12 * cell_size_;
  if (!cell_range(center, radius, lo, hi, mid)) return false;
  const double r2 = radius * radius;
  long k = 0;
  for (int a = 0; a < d_; ++a) k = std::max({k, mid[a] - lo[a], hi[a] - mid[a]});
  cell.resize(d_);
  if (static_cast<std::size_t>(k) < offsets_.size()) {
    const std::vector<int>& offs = offsets_[k];
    for (std::size_t o = 0; o < offs.size(); o += d_) {
      bool inside = true;
      for (int a = 0; a < d_; ++a) {
        cell[a] = mid[a] + offs[o + a];
        if (cell[a] < lo[a] || cell[a] > hi[a]) {
          inside = false;
          break;
        }
      }
      if (!inside || cell_gap2(center, cell.data()) > r2) continue;
      const std::size_t lin = linear(cell.data());
      if (lin == first) continue;
      for (std::uint32_t idx : cell_points(lin)) {
        if (visit(idx)) return true;
      }
    }
    return false;
  }
  // Raster fallback for very large query balls.
  for (int a = 0; a < d_; ++a) cell[a] = lo[a];
  while (true) {
    const std::size_t lin = linear(cell.data());
    if (lin != first && cell_gap2(center, cell.data()) <= r2) {
      for (std::uint32_t idx : cell_points(lin)) {
        if (visit(idx)) return true;
      }
    }
    int a = 0;
    while (a < d_ && ++cell[a] > hi[a]) {
      cell[a] = lo[a];
      ++a;
    }
    if (a == d_) break;
  }
  return false;
}

template <typename Visit>
void GridIndex::for_each_in_ball(PointView center, double radius, Visit&& visit) const {
  thread_local std::vector<long> lo, hi, mid, cell;
  radius = radius * (1.0 + 1e-9) + 1e-12 * cell_size_;
  if (!cell_range(center, radius, lo, hi, mid)) return;
  const double r2 = radius * radius;
  cell.assign(lo.begin(), lo.end());
  while (true) {
    if (cell_gap2(center, cell.data()) <= r2) {
      for (std::uint32_t idx : cell_points(linear(cell.data()))) visit(idx);
    }
    int a = 0;
    while (a < d_ && ++cell[a] > hi[a]) {
      cell[a] = lo[a];
      ++a;
    }
    if (a == d_) break;
  }
}

}  // namespace erg
