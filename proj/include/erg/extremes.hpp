#pragma once

// The extremes point process xi_t (midpoint, transformed length, direction)
// of a graph, the longest edge L_{t,W}, and the reference laws they are
// compared against.

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "erg/geometry.hpp"
#include "erg/graph.hpp"

namespace erg {

struct ExtremeMark {
  Point midpoint;
  double s = 0.0;
  Direction direction;
};

/// log(kappa_d / (2 gamma)).
double tau(double gamma, int d);

/// gamma t l^d - log t - tau.
double transform_length(double length, double t, double gamma, int d);

/// Inverse of transform_length, clamped to 0 below -log t - tau.
double threshold_length(double s, double t, double gamma, int d);

/// Marks of edges with midpoint in W and transformed length >= b.
/// Throws std::invalid_argument when the graph's truncation or length floor
/// could have dropped qualifying edges.
std::vector<ExtremeMark> extract_xi(const Graph& g, const Box& window, double b, double t, double gamma, int d);

inline constexpr double kNoEdge = -std::numeric_limits<double>::infinity();

/// Longest edge with midpoint in W, or kNoEdge.
double longest_edge(const Graph& g, const Box& window);

/// exp(-vol_W e^{-s}).
double gumbel_cdf(double s, double vol_window);

/// Inverse of gumbel_cdf for p in (0, 1).
double gumbel_quantile(double p, double vol_window);

/// Expected number of xi_t points in A x [a, inf) x D.
double intensity_expected(double vol_a, double a, double nu_d, double t, double gamma, int d);

/// Two-sided Kolmogorov distance between the empirical law of `samples`
/// and `cdf`. Throws std::domain_error on empty input.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

struct CellCountStats {
  double mean = 0.0;
  double variance = 0.0;          // unbiased
  double dispersion = 0.0;        // variance / mean; NaN if mean == 0
  double theoretical_mean = 0.0;
  double tv_poisson = 0.0;        // vs Poisson(theoretical_mean)
};

struct CountReport {
  std::vector<CellCountStats> cells;
  std::vector<std::vector<double>> correlation;  // NaN where a variance vanishes
  double max_abs_correlation = 0.0;               // over off-diagonal pairs
};

/// counts[rep][cell]. `theoretical_means` has one entry per cell.
CountReport count_statistics(const std::vector<std::vector<long long>>& counts,
                             std::span<const double> theoretical_means);

/// Total variation distance between the empirical pmf of `values` and
/// Poisson(mean), the Poisson tail below 1e-12 dropped.
double tv_to_poisson(std::span<const long long> values, double mean);

/// KS statistic of line directions against the rotation invariant law:
/// angle mod pi in the plane, |first coordinate| for d >= 3.
double direction_uniformity(std::span<const Direction> directions, int d);

/// CDF of |X_1| for X uniform on S^{d-1}.
double abs_coordinate_cdf(double x, int d);

}  // namespace erg
