#include "erg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace erg {

namespace {

constexpr std::size_t kMaxOffsetEntries = 200'000;

void check_distinct(const PointCloud& points) {
  const std::size_t n = points.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    const PointView pa = points[a], pb = points[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(idx.begin(), idx.end(), less);
  for (std::size_t k = 1; k < n; ++k) {
    const PointView pa = points[idx[k - 1]], pb = points[idx[k]];
    if (std::equal(pa.begin(), pa.end(), pb.begin())) throw std::invalid_argument("duplicate points");
  }
}

void check_inputs(const PointCloud& points, const RegionFamily& family, const BuildOptions& options) {
  if (!(options.truncation_length > 0.0)) throw std::invalid_argument("truncation_length must be positive");
  if (!(options.min_length >= 0.0)) throw std::invalid_argument("min_length must be non-negative");
  if (points.size() > std::numeric_limits<std::uint32_t>::max()) throw ResourceError("too many points");
  if (!points.empty()) family.check_dimension(points.dim());
  check_distinct(points);
}

// Shared pair filter: the naive and grid builders must agree bit for bit.
struct PairFilter {
  const PointCloud& points;
  const BuildOptions& options;

  bool accept(std::size_t i, std::size_t j, double& length) const {
    length = distance(points[i], points[j]);
    if (!(length <= options.truncation_length) || length < options.min_length) return false;
    if (options.midpoint_window) {
      const PointView a = points[i], b = points[j];
      const Box& w = *options.midpoint_window;
      for (int k = 0; k < points.dim(); ++k) {
        const double m = (a[k] + b[k]) / 2.0;
        if (m < w.lower[k] || m > w.upper[k]) return false;
      }
    }
    return true;
  }
};

Edge make_edge(const PointCloud& points, std::size_t i, std::size_t j, double length) {
  const Point diff = subtract(points[i], points[j]);
  return Edge{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), length, midpoint(points[i], points[j]),
              canonical_direction(diff)};
}

Graph empty_graph(const PointCloud& points, const RegionFamily& family, const BuildOptions& options) {
  return Graph{points, family, {}, options.truncation_length, options.min_length, options.midpoint_window};
}

}  // namespace

// ---------------------------------------------------------------------------
// GridIndex

GridIndex::GridIndex(const PointCloud& points, double cell_size, double max_query_radius)
    : points_(&points), d_(points.dim()), cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw std::invalid_argument("cell_size must be positive");
  const std::size_t n = points.size();
  if (n == 0) {
    d_ = std::max(d_, 1);
    origin_ = Point(d_, 0.0);
    dims_.assign(d_, 1);
    cell_start_.assign(2, 0);
    return;
  }
  Point lo(points[0].begin(), points[0].end()), hi = lo;
  for (std::size_t k = 1; k < n; ++k) {
    const PointView p = points[k];
    for (int a = 0; a < d_; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  origin_ = lo;
  // Keep the dense grid proportional to the number of points.
  const double max_cells = std::max<double>(16.0 * static_cast<double>(n), 65536.0);
  while (true) {
    double total = 1.0;
    dims_.assign(d_, 1);
    for (int a = 0; a < d_; ++a) {
      dims_[a] = static_cast<long>(std::floor((hi[a] - lo[a]) / cell_size_)) + 1;
      total *= static_cast<double>(dims_[a]);
    }
    if (total <= max_cells) break;
    cell_size_ *= 1.5;
  }
  std::size_t cells = 1;
  for (long n_a : dims_) cells *= static_cast<std::size_t>(n_a);

  std::vector<std::size_t> cell_of_point(n);
  cell_start_.assign(cells + 1, 0);
  for (std::size_t k = 0; k < n; ++k) {
    cell_of_point[k] = cell_of(points[k]);
    ++cell_start_[cell_of_point[k] + 1];
  }
  std::partial_sum(cell_start_.begin(), cell_start_.end(), cell_start_.begin());
  order_.resize(n);
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t k = 0; k < n; ++k) order_[fill[cell_of_point[k]]++] = static_cast<std::uint32_t>(k);

  // Center-outward cell orders for each Chebyshev radius up to the largest
  // query we expect, within a memory budget.
  long k_max = 0;
  for (long n_a : dims_) k_max = std::max(k_max, n_a - 1);
  if (max_query_radius > 0.0) {
    k_max = std::min<long>(k_max, static_cast<long>(std::ceil(max_query_radius / cell_size_)) + 1);
  }
  std::size_t budget = 0;
  for (long k = 0; k <= k_max; ++k) {
    const double side = static_cast<double>(2 * k + 1);
    const double count = std::pow(side, d_);
    if (budget + count > kMaxOffsetEntries) break;
    budget += static_cast<std::size_t>(count);
    std::vector<std::vector<int>> offs;
    std::vector<int> cur(d_, -static_cast<int>(k));
    while (true) {
      offs.push_back(cur);
      int a = 0;
      while (a < d_ && ++cur[a] > k) {
        cur[a] = -static_cast<int>(k);
        ++a;
      }
      if (a == d_) break;
    }
    std::stable_sort(offs.begin(), offs.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
      long nx = 0, ny = 0;
      for (std::size_t a = 0; a < x.size(); ++a) {
        nx += static_cast<long>(x[a]) * x[a];
        ny += static_cast<long>(y[a]) * y[a];
      }
      return nx < ny;
    });
    std::vector<int> flat;
    flat.reserve(offs.size() * d_);
    for (const auto& o : offs) flat.insert(flat.end(), o.begin(), o.end());
    offsets_.push_back(std::move(flat));
  }
}

std::size_t GridIndex::cell_of(PointView p) const {
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int a = 0; a < d_; ++a) {
    long c = static_cast<long>(std::floor((p[a] - origin_[a]) / cell_size_));
    c = std::clamp(c, 0L, dims_[a] - 1);
    idx += static_cast<std::size_t>(c) * stride;
    stride *= static_cast<std::size_t>(dims_[a]);
  }
  return idx;
}

std::size_t GridIndex::linear(const long* cell) const {
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int a = 0; a < d_; ++a) {
    idx += static_cast<std::size_t>(cell[a]) * stride;
    stride *= static_cast<std::size_t>(dims_[a]);
  }
  return idx;
}

bool GridIndex::cell_range(PointView center, double radius, std::vector<long>& lo, std::vector<long>& hi,
                           std::vector<long>& mid) const {
  if (order_.empty()) return false;
  lo.resize(d_);
  hi.resize(d_);
  mid.resize(d_);
  for (int a = 0; a < d_; ++a) {
    const double rel = center[a] - origin_[a];
    const double fl = std::floor((rel - radius) / cell_size_);
    const double fh = std::floor((rel + radius) / cell_size_);
    if (fh < 0.0 || fl > static_cast<double>(dims_[a] - 1)) return false;
    lo[a] = std::max(0L, static_cast<long>(fl));
    hi[a] = std::min(dims_[a] - 1, static_cast<long>(fh));
    const double fm = std::floor(rel / cell_size_);
    mid[a] = std::clamp(static_cast<long>(std::clamp(fm, -1.0, static_cast<double>(dims_[a]))), lo[a], hi[a]);
  }
  return true;
}

double GridIndex::cell_gap2(PointView center, const long* cell) const {
  double g2 = 0.0;
  for (int a = 0; a < d_; ++a) {
    const double lo = origin_[a] + static_cast<double>(cell[a]) * cell_size_;
    const double hi = lo + cell_size_;
    double gap = 0.0;
    if (center[a] < lo) {
      gap = lo - center[a];
    } else if (center[a] > hi) {
      gap = center[a] - hi;
    }
    g2 += gap * gap;
  }
  return g2;
}

// ---------------------------------------------------------------------------
// Builders

Graph build_naive(const PointCloud& points, const RegionFamily& family, double truncation_length) {
  BuildOptions options;
  options.truncation_length = truncation_length;
  return build_naive(points, family, options);
}

Graph build_naive(const PointCloud& points, const RegionFamily& family, const BuildOptions& options) {
  check_inputs(points, family, options);
  Graph g = empty_graph(points, family, options);
  const std::size_t n = points.size();
  if (n < 2) return g;
  PairRegion region(family, points.dim());
  const PairFilter filter{points, options};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double length = 0.0;
      if (!filter.accept(i, j, length)) continue;
      region.reset(points[i], points[j]);
      bool empty = true;
      for (std::size_t k = 0; k < n && empty; ++k) {
        if (k != i && k != j && region.contains(points[k])) empty = false;
      }
      if (empty) g.edges.push_back(make_edge(points, i, j, length));
    }
  }
  return g;
}

double default_cell_size(const PointCloud& points, double truncation_length) {
  if (std::isfinite(truncation_length)) return truncation_length / 2.0;
  const std::size_t n = points.size();
  const int d = std::max(points.dim(), 1);
  if (n < 2) return 1.0;
  double vol = 1.0;
  for (int a = 0; a < d; ++a) {
    double lo = points[0][a], hi = lo;
    for (std::size_t k = 1; k < n; ++k) {
      lo = std::min(lo, points[k][a]);
      hi = std::max(hi, points[k][a]);
    }
    vol *= std::max(hi - lo, 1e-12);
  }
  return std::pow(vol / static_cast<double>(n), 1.0 / d);
}

Graph build_grid(const PointCloud& points, const RegionFamily& family, double truncation_length, double cell_size) {
  BuildOptions options;
  options.truncation_length = truncation_length;
  options.cell_size = cell_size;
  return build_grid(points, family, options);
}

Graph build_grid(const PointCloud& points, const RegionFamily& family, const BuildOptions& options) {
  check_inputs(points, family, options);
  Graph g = empty_graph(points, family, options);
  const std::size_t n = points.size();
  if (n < 2) return g;
  const double alpha = alpha_safe(family);
  const bool truncated = std::isfinite(options.truncation_length);
  const double cell = options.cell_size > 0.0 ? options.cell_size : default_cell_size(points, options.truncation_length);
  const double max_query = truncated ? std::max(alpha, 1.0) * options.truncation_length : 0.0;
  const GridIndex grid(points, cell, max_query);

  PairRegion region(family, points.dim());
  const PairFilter filter{points, options};
  auto try_pair = [&](std::size_t i, std::size_t j) {
    double length = 0.0;
    if (!filter.accept(i, j, length)) return;
    region.reset(points[i], points[j]);
    const bool blocked = grid.any_in_ball(region.center(), alpha * length, [&](std::uint32_t k) {
      return k != i && k != j && region.contains(points[k]);
    });
    if (!blocked) g.edges.push_back(make_edge(points, i, j, length));
  };

  if (truncated) {
    std::vector<std::uint32_t> near;
    for (std::size_t i = 0; i < n; ++i) {
      near.clear();
      grid.for_each_in_ball(points[i], options.truncation_length, [&](std::uint32_t j) {
        if (j > i) near.push_back(j);
      });
      for (std::uint32_t j : near) try_pair(i, j);
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) try_pair(i, j);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

EdgeStatistics edge_statistics(const Graph& g) {
  EdgeStatistics s;
  s.edge_count = g.edges.size();
  s.degrees.assign(g.points.size(), 0);
  for (const Edge& e : g.edges) {
    s.max_length = std::max(s.max_length, e.length);
    ++s.degrees[e.i];
    ++s.degrees[e.j];
  }
  for (std::size_t deg : s.degrees) {
    if (deg >= s.degree_histogram.size()) s.degree_histogram.resize(deg + 1, 0);
    ++s.degree_histogram[deg];
  }
  return s;
}

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> keys(const std::vector<Edge>& edges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> k;
  k.reserve(edges.size());
  for (const Edge& e : edges) k.emplace_back(e.i, e.j);
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

bool same_edge_set(const std::vector<Edge>& a, const std::vector<Edge>& b) { return keys(a) == keys(b); }

std::size_t edge_set_mismatch(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  const auto ka = keys(a), kb = keys(b);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> diff;
  std::set_symmetric_difference(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(diff));
  return diff.size();
}

void write_edges_csv(std::ostream& os, const Graph& g) {
  const int d = g.points.dim();
  os << "i,j,length";
  for (int a = 0; a < d; ++a) os << ",mid_" << a;
  for (int a = 0; a < d; ++a) os << ",dir_" << a;
  os << '\n';
  os.precision(17);
  for (const Edge& e : g.edges) {
    os << e.i << ',' << e.j << ',' << e.length;
    for (double c : e.midpoint) os << ',' << c;
    for (double c : e.direction.unit) os << ',' << c;
    os << '\n';
  }
}

nlohmann::json graph_metadata(const Graph& g, std::uint64_t seed) {
  nlohmann::json j;
  j["n"] = g.points.size();
  j["family"] = g.family.to_json();
  j["d"] = g.points.dim();
  j["truncation_length"] = std::isfinite(g.truncation_length) ? nlohmann::json(g.truncation_length) : nlohmann::json();
  j["seed"] = seed;
  return j;
}

}  // namespace erg
