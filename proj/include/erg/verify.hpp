#pragma once

// Monte Carlo checks of the geometric assumptions behind the limit theorems:
// homogeneity of vol S(x, y), the bounding ball, the volume-difference
// inequality, and the translate / rotation bounds for bodies K. Also the
// explicit constants entering the rate bounds.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "erg/geometry.hpp"
#include "erg/regions.hpp"

namespace erg {

/// A check "fails" a trial when the inequality is violated by more than
/// kViolationSigmas combined Monte Carlo standard errors.
inline constexpr double kViolationSigmas = 4.0;

struct VerificationReport {
  std::string check;
  nlohmann::json family;  // family JSON, or the body description
  int d = 2;
  int trials = 0;
  int violations = 0;
  double worst_ratio = 0.0;  // min over trials of (left side) / (right side)
  std::map<std::string, MCEstimate> estimates;
  nlohmann::json worst_config;  // configuration achieving worst_ratio
  bool passed = false;

  nlohmann::json to_json() const;
};

/// vol S(x, y) / |x - y|^d against gamma for lengths spread over [0.1, 10].
/// `gamma_override` replaces the reference gamma (negative controls).
VerificationReport check_scaling(const RegionFamily& family, int d, int trials, std::int64_t mc_n,
                                 std::uint64_t seed, std::optional<double> gamma_override = std::nullopt,
                                 int threads = 1);

/// Sampled points of the normalised region must lie within alpha_safe.
VerificationReport check_bounding(const RegionFamily& family, int d, std::int64_t n, std::uint64_t seed);

struct VolumeDifferenceOptions {
  double scale = 1.0;           // |x - y| of the larger pair
  double min_shift = 0.02;      // trials with |dm| < min_shift |x - y| are redrawn
  std::int64_t overlap_samples = 100'000;
  int max_redraws = 10'000;
};

/// beta_hat = min over overlapping configurations of
/// vol(S(x, y) \ S(u, v)) / (|dm| |x - y|^{d-1}), |u - v| <= |x - y|.
/// The report carries "beta_hat" in estimates. For generalised Gabriel
/// families every trial is also checked against vol(K) / (2 diam K).
VerificationReport check_volume_difference(const RegionFamily& family, int d, int trials, std::int64_t mc_n,
                                           std::uint64_t seed, const VolumeDifferenceOptions& options = {},
                                           int threads = 1);

/// vol(K \ (K + x)) >= vol(K) |x| / ((c + 1) diam K) for |x| <= c diam K.
VerificationReport check_translate_bound(const StarBody& body, double c, int trials, std::int64_t mc_n,
                                         std::uint64_t seed, int threads = 1);

/// K = {|z_1| <= half_length, |(z_2, ..., z_d)| <= profile(z_1)} with a
/// declared inner ball.
struct RevolutionBody {
  std::string name;
  int d = 2;
  double half_length = 0.0;
  std::function<double(double)> profile;  // even, on [-half_length, half_length]
  Point inner_center;
  double inner_radius = 0.0;

  bool contains(PointView z) const;
  double bounding_radius() const;  // max |z| over K, from the profile

  static RevolutionBody unit_ball(int d);
  static RevolutionBody capped_cylinder(int d, double half_length, double radius);
  /// The normalised region S(-e1/2, e1/2) of a rotation-class family.
  /// Throws UnsupportedError for generalised Gabriel families.
  static RevolutionBody from_family(const RegionFamily& family, int d);
};

struct RotationBoundResult {
  double c_hat = 0.0;
  VerificationReport report;
};

/// c_hat = min over Haar rotations rho and shifts x with K meeting rho K + x
/// of vol(K \ (rho K + x)) / |x|.
RotationBoundResult check_rotation_bound(const RevolutionBody& body, int trials, std::int64_t mc_n,
                                         std::uint64_t seed, int threads = 1);

/// Uniform random rotation of R^d (determinant +1), row-major.
std::vector<double> haar_rotation(Rng& rng, int d);

struct TheoreticalConstants {
  double c2 = 0.0;
  double c3 = 0.0;
  double c41 = 0.0;
  double c42 = 0.0;
  double m = 0.0;  // M_{d-1}

  nlohmann::json to_json() const;
};

/// (2(d - 1)/e)^{d-1}.
double m_constant(int d);

TheoreticalConstants theoretical_constants(int d, double alpha, double beta, double gamma, double vol_window);

/// log(t)^{-max(d - 2, 1/2)}.
double rate_bound(int d, double t);

}  // namespace erg
