#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "erg/geometry.hpp"
#include "erg/regions.hpp"

namespace erg {

/// Flat storage for n points in R^d.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(int dim) : dim_(dim) {}
  PointCloud(int dim, std::vector<double> coords);
  static PointCloud from_points(const std::vector<Point>& points);

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }
  PointView operator[](std::size_t i) const { return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)}; }
  void push_back(PointView p);
  const std::vector<double>& coords() const { return coords_; }

  /// Returns a copy with points reordered: result[k] = (*this)[order[k]].
  PointCloud permuted(std::span<const std::size_t> order) const;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

struct SampleConfig {
  double t = 2.0;
  Box box;
  std::uint64_t seed = 0;
};

inline constexpr double kMaxExpectedPoints = 1e9;

/// Stationary Poisson process of intensity t restricted to cfg.box.
PointCloud sample_poisson(const SampleConfig& cfg);

/// n i.i.d. uniform points in a box (fixed-size samples for oracle tests).
PointCloud sample_uniform(const Box& box, std::size_t n, std::uint64_t seed);

struct PaddedBox {
  Box sim_box;
  double max_length = 0.0;  // l_max = threshold_length(s_max, ...)
  double pad = 0.0;
  double truncation_prob_bound = 0.0;
};

inline constexpr double kDefaultSMax = 30.0;

/// Simulation box around W such that every edge with midpoint in W and
/// transformed length below s_max, together with its region, lies inside.
PaddedBox padded_box(const Box& window, double t, const RegionFamily& family, int d, double s_max = kDefaultSMax);

/// Point cloud CSV with header x0,x1,...,x{d-1}.
void write_points_csv(std::ostream& os, const PointCloud& points);

}  // namespace erg
