#pragma once

// d-dimensional vector helpers, unit-ball volumes, line representatives and
// the Monte Carlo volume estimator used as the reference oracle for every
// volume in the library.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "erg/rng.hpp"

namespace erg {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Thrown when an operation is well defined in general but not implemented
/// for the requested parameters (e.g. Pacman regions outside the plane).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a request would exceed the configured resource guards.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double dot(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(PointView a) { return dot(a, a); }

inline double norm(PointView a) { return std::sqrt(squared_norm(a)); }

inline double squared_distance(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

inline double distance(PointView a, PointView b) { return std::sqrt(squared_distance(a, b)); }

inline Point midpoint(PointView a, PointView b) {
  Point m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = (a[i] + b[i]) / 2.0;
  return m;
}

inline Point subtract(PointView a, PointView b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

/// Axis-aligned box [lower, upper]. Closed on both sides.
struct Box {
  Point lower;
  Point upper;

  Box() = default;
  Box(Point lo, Point hi);

  static Box unit(int d) { return Box(Point(d, 0.0), Point(d, 1.0)); }
  static Box cube(int d, double half_width) { return Box(Point(d, -half_width), Point(d, half_width)); }

  int dim() const { return static_cast<int>(lower.size()); }
  double volume() const;
  double side(int i) const { return upper[i] - lower[i]; }
  bool contains(PointView p) const;
  Box expanded(double pad) const;
  bool operator==(const Box&) const = default;
};

/// Unit vector representing span{v}; first nonzero coordinate is positive.
struct Direction {
  Point unit;
  bool operator==(const Direction&) const = default;
};

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
};

/// Volume of the d-dimensional unit ball, pi^{d/2} / Gamma(d/2 + 1).
double kappa(int d);

Direction canonical_direction(PointView v);

/// Monte Carlo estimate of vol({z in box : indicator(z)}) from n uniform
/// samples. Deterministic in (box, n, seed).
template <typename Indicator>
  requires std::predicate<Indicator&, PointView>
MCEstimate mc_volume(Indicator&& indicator, const Box& box, std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("mc_volume: n must be positive");
  const double vol = box.volume();
  if (!(vol > 0.0)) return {0.0, 0.0, n};
  const int d = box.dim();
  Rng rng(seed);
  Point z(d);
  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    for (int i = 0; i < d; ++i) z[i] = box.lower[i] + box.side(i) * rng.uniform();
    if (indicator(PointView(z))) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {vol * p, vol * std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

/// Lower estimate of diam(K) as the largest pairwise distance between the
/// first `max_hits` sample points falling in K. Uses the same sample stream
/// as mc_volume, so the estimate is nondecreasing in n.
template <typename Indicator>
  requires std::predicate<Indicator&, PointView>
double diameter_estimate(Indicator&& indicator, const Box& box, std::int64_t n, std::uint64_t seed,
                         std::size_t max_hits = 8192) {
  const int d = box.dim();
  Rng rng(seed);
  std::vector<double> hits;
  Point z(d);
  std::size_t count = 0;
  for (std::int64_t k = 0; k < n && count < max_hits; ++k) {
    for (int i = 0; i < d; ++i) z[i] = box.lower[i] + box.side(i) * rng.uniform();
    if (indicator(PointView(z))) {
      hits.insert(hits.end(), z.begin(), z.end());
      ++count;
    }
  }
  if (count == 0) throw std::domain_error("diameter_estimate: empty region");
  double best = 0.0;
  for (std::size_t a = 0; a < count; ++a) {
    PointView pa(hits.data() + a * d, d);
    for (std::size_t b = a + 1; b < count; ++b) {
      best = std::max(best, squared_distance(pa, PointView(hits.data() + b * d, d)));
    }
  }
  return std::sqrt(best);
}

/// Uniform sample from the unit sphere S^{d-1}.
Point random_unit_vector(Rng& rng, int d);

/// Uniform sample from the ball B(0, radius) in R^d.
Point random_in_ball(Rng& rng, int d, double radius);

}  // namespace erg
