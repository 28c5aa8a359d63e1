#pragma once

// Region maps (x, y) -> S(x, y) for the empty region graph families:
// Gabriel, strong nearest neighbour, relative neighbourhood, beta-skeleton,
// Mastercard, Pacman, truncated slab and generalised Gabriel.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "erg/geometry.hpp"

namespace erg {

enum class RegionKind {
  Gabriel,
  StrongNN,
  RelativeNbhd,
  BetaSkeleton,
  Mastercard,
  Pacman,
  TruncatedSlab,
  GeneralGabriel,
};

/// Compact star-shaped body K used by the generalised Gabriel graph,
/// S(x, y) = (x + y)/2 + |x - y| K.
class StarBody {
 public:
  using Membership = std::function<bool(PointView)>;

  struct Data {
    std::string name;
    int dim = 2;
    Membership membership;
    double bounding_radius = 0.0;  // K within B(0, bounding_radius)
    Point inner_center;            // B(inner_center, inner_radius) within K
    double inner_radius = 0.0;
    double volume = 0.0;
    double diameter = 0.0;  // 0 when unknown
  };

  explicit StarBody(Data data);

  /// Built-in bodies: "square" (the cube [-1/2, 1/2]^d), "ellipse" (semi-axes
  /// 1/2 along the first axis, 3/10 along the others) and "triangle"
  /// (conv{(-1/2, 0), (1/2, 0), (0, 1/2)}, planar only).
  static std::shared_ptr<const StarBody> builtin(std::string_view name, int d);

  bool contains(PointView z) const { return data_.membership(z); }
  const std::string& name() const { return data_.name; }
  int dim() const { return data_.dim; }
  double bounding_radius() const { return data_.bounding_radius; }
  const Point& inner_center() const { return data_.inner_center; }
  double inner_radius() const { return data_.inner_radius; }
  double volume() const { return data_.volume; }
  double diameter() const { return data_.diameter; }
  bool is_builtin() const { return builtin_; }

 private:
  Data data_;
  bool builtin_ = false;
};

/// Convex polygon approximating conv{W(x, u, theta; r) u W(y, -u, theta; r)}
/// in the normalised frame x = (-1/2, 0), y = (1/2, 0), r = 1. Stored as the
/// upper boundary chain over a >= 0; the region is symmetric in both axes.
class PacmanPolygon {
 public:
  PacmanPolygon(double theta, int arc_resolution);

  /// Membership of the normalised point (a, b).
  bool contains(double a, double b) const;
  double half_width(double a) const;  // upper boundary at |a|
  double area() const;
  double inner_radius() const;
  double a_max() const { return chain_a_.back(); }
  double b_max() const;
  const std::vector<double>& chain_a() const { return chain_a_; }
  const std::vector<double>& chain_b() const { return chain_b_; }

 private:
  std::vector<double> chain_a_;  // increasing, starts at 0
  std::vector<double> chain_b_;
};

class RegionFamily {
 public:
  static RegionFamily gabriel();
  static RegionFamily strong_nn();
  static RegionFamily relative_neighbourhood();
  static RegionFamily beta_skeleton(double beta);
  static RegionFamily mastercard();
  static RegionFamily pacman(double theta, int arc_resolution = 512);
  static RegionFamily truncated_slab();
  static RegionFamily general_gabriel(std::shared_ptr<const StarBody> body);

  RegionKind kind() const { return kind_; }
  double beta() const { return beta_; }
  double theta() const { return theta_; }
  int arc_resolution() const { return arc_resolution_; }
  const StarBody* body() const { return body_.get(); }
  const PacmanPolygon* polygon() const { return polygon_.get(); }

  /// Short identifier, also the JSON "kind" string (e.g. "beta-skeleton").
  std::string kind_name() const;
  /// Human readable label including parameters.
  std::string label() const;

  /// Throws UnsupportedError when the family cannot be used in dimension d.
  void check_dimension(int d) const;

  /// z in S(x, y). Exactly symmetric in x and y.
  bool contains(PointView x, PointView y, PointView z) const;

  nlohmann::json to_json() const;
  /// `d` is needed to instantiate built-in bodies for the generalised Gabriel family.
  static RegionFamily from_json(const nlohmann::json& j, int d);

 private:
  RegionFamily() = default;

  RegionKind kind_ = RegionKind::Gabriel;
  double beta_ = 1.0;
  double theta_ = 0.0;
  int arc_resolution_ = 512;
  std::shared_ptr<const StarBody> body_;
  std::shared_ptr<const PacmanPolygon> polygon_;
};

/// Parses a command-line style family name ("gabriel", "rng", ...).
RegionKind parse_region_kind(std::string_view name);

/// S(x, y) prepared for a fixed pair, for repeated membership queries.
class PairRegion {
 public:
  PairRegion(const RegionFamily& family, int d);

  /// Throws std::domain_error when x == y.
  void reset(PointView x, PointView y);
  bool contains(PointView z) const;

  double length() const { return r_; }
  double squared_length() const { return r2_; }
  const Point& center() const { return m_; }
  int dim() const { return d_; }

 private:
  const RegionFamily* family_;
  int d_;
  Point x_, y_, m_, u_, c1_, c2_;
  mutable Point scratch_;
  double r2_ = 0.0;
  double r_ = 0.0;
  double ball_r2_ = 0.0;
};

enum class GammaMethod { ClosedForm, MonteCarlo };

struct GammaValue {
  double value = 0.0;
  double std_error = 0.0;
  GammaMethod method = GammaMethod::ClosedForm;
};

inline constexpr std::int64_t kGammaSamples = 10'000'000;

/// gamma with vol(S(x, y)) = gamma |x - y|^d. Monte Carlo values are cached
/// per (family, d, n).
GammaValue gamma(const RegionFamily& family, int d, std::int64_t mc_samples = kGammaSamples);

/// Monte Carlo gamma regardless of whether a closed form exists.
MCEstimate gamma_monte_carlo(const RegionFamily& family, int d, std::int64_t n, std::uint64_t seed);

struct AlphaInfo {
  double safe = 0.0;
  MCEstimate tight_estimate;
};

/// Closed-form coefficient with S(x, y) in B(m, safe |x - y|).
double alpha_safe(const RegionFamily& family);
/// max(alpha_safe, 1/2 + 1e-6); assumption (ii) needs alpha > 1/2 strictly.
double alpha_effective(const RegionFamily& family);
AlphaInfo alpha(const RegionFamily& family, int d = 2, std::int64_t n = 200'000, std::uint64_t seed = 1);

struct Ball {
  Point center;
  double radius = 0.0;
};

Ball bounding_ball(const RegionFamily& family, PointView x, PointView y);

/// A ball B(offset, radius) inside the normalised region (x = -e1/2,
/// y = e1/2). Validated by sampling; throws std::runtime_error
/// "inner ball not contained" on failure.
Ball inner_ball(const RegionFamily& family, int d, std::int64_t validation_samples = 20'000);

/// Axis-aligned box containing the normalised region S(-e1/2, e1/2).
Box normalized_bounding_box(const RegionFamily& family, int d);

}  // namespace erg
