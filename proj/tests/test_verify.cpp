#include <doctest.h>

#include <cmath>
#include <numbers>

#include "erg/verify.hpp"

using namespace erg;
using std::numbers::pi;

TEST_CASE("explicit constants") {
  CHECK(m_constant(3) == doctest::Approx(2.165364).epsilon(1e-6));
  CHECK(m_constant(2) == doctest::Approx(2.0 / std::numbers::e));
  const TheoreticalConstants c = theoretical_constants(2, 1.0, 0.5, pi / 4.0, 1.0);
  CHECK(c.c42 == 16.0);
  CHECK(c.c2 == doctest::Approx(32.0));
  CHECK(c.c3 == doctest::Approx(16.0 * std::sqrt(2.0) * std::pow(pi, 2.5) / (0.25 * std::sqrt(pi / 4.0))));
  CHECK(c.m == doctest::Approx(m_constant(2)));
  const TheoreticalConstants c3 = theoretical_constants(3, 1.0, 1.0, 1.0, 2.0);
  CHECK(c3.c42 == 32.0);
  CHECK(c3.c41 == doctest::Approx(128.0 * 3.0 * kappa(3) * m_constant(3) * 2.0));
  CHECK(c3.c3 == doctest::Approx(4.0 * 3.0 * kappa(3) * kappa(3) * m_constant(3) * 2.0));
  const nlohmann::json j = c.to_json();
  CHECK(j["C42"] == 16.0);
  CHECK(j.contains("M"));
  CHECK_THROWS_AS(theoretical_constants(2, 0.5, 1.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(theoretical_constants(1, 1.0, 1.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(theoretical_constants(2, 1.0, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("rate bound") {
  CHECK(rate_bound(2, std::exp(4.0)) == doctest::Approx(0.5));
  CHECK(rate_bound(3, std::exp(2.0)) == doctest::Approx(0.5));
  CHECK(rate_bound(4, std::exp(2.0)) == doctest::Approx(0.25));
  CHECK(rate_bound(2, 1e4) > rate_bound(2, 1e6));
  CHECK_THROWS_AS(rate_bound(2, 1.5), std::domain_error);
}

TEST_CASE("scaling check passes for true gamma and fails for a wrong one") {
  for (const RegionFamily& f : {RegionFamily::gabriel(), RegionFamily::relative_neighbourhood(),
                                RegionFamily::general_gabriel(StarBody::builtin("triangle", 2))}) {
    const VerificationReport ok = check_scaling(f, 2, 40, 20'000, 3);
    CHECK_MESSAGE(ok.passed, f.label());
    CHECK(ok.estimates.at("ratio_mean").value == doctest::Approx(gamma(f, 2).value).epsilon(0.02));
  }
  const double g = gamma(RegionFamily::gabriel(), 3).value;
  const VerificationReport bad = check_scaling(RegionFamily::gabriel(), 3, 40, 20'000, 3, 1.1 * g);
  CHECK_FALSE(bad.passed);
  CHECK(bad.violations > 30);
  CHECK(bad.to_json()["check"] == "scaling");
  CHECK_THROWS_AS(check_scaling(RegionFamily::gabriel(), 2, 0, 10, 1), std::invalid_argument);
}

TEST_CASE("scaling check is thread-count independent") {
  const auto a = check_scaling(RegionFamily::mastercard(), 2, 16, 5000, 9, std::nullopt, 1);
  const auto b = check_scaling(RegionFamily::mastercard(), 2, 16, 5000, 9, std::nullopt, 4);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("bounding check") {
  for (const RegionFamily& f : {RegionFamily::gabriel(), RegionFamily::truncated_slab(), RegionFamily::strong_nn()}) {
    const VerificationReport r = check_bounding(f, 2, 50'000, 1);
    CHECK(r.passed);
    CHECK(r.estimates.at("alpha_tight").value <= r.estimates.at("alpha_safe").value);
  }
}

TEST_CASE("volume difference bound is positive and scale free") {
  const RegionFamily g = RegionFamily::gabriel();
  const VerificationReport r1 = check_volume_difference(g, 2, 24, 20'000, 5);
  CHECK(r1.passed);
  VolumeDifferenceOptions opt;
  opt.scale = 3.0;
  const VerificationReport r3 = check_volume_difference(g, 2, 24, 20'000, 5, opt);
  const MCEstimate a = r1.estimates.at("beta_hat"), b = r3.estimates.at("beta_hat");
  CHECK(std::abs(a.value - b.value) <= 4.0 * std::hypot(a.std_error, b.std_error) + 1e-9);
  CHECK(a.value > 0.0);

  const RegionFamily sq = RegionFamily::general_gabriel(StarBody::builtin("square", 2));
  const VerificationReport rs = check_volume_difference(sq, 2, 24, 20'000, 5);
  CHECK(rs.passed);
  CHECK(rs.estimates.count("body_bound") == 1);
  CHECK(rs.estimates.at("body_bound_violations").value == 0.0);
}

TEST_CASE("translate bound for the square") {
  const auto sq = StarBody::builtin("square", 2);
  const VerificationReport r = check_translate_bound(*sq, 1.0, 40, 20'000, 2);
  CHECK(r.passed);
  // vol(K \ (K + x)) = 1 - (1 - |x1|)(1 - |x2|) for the unit square, at least |x|_inf
  CHECK(r.worst_ratio > 1.0);
  CHECK(r.estimates.at("bound_coefficient").value == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
  CHECK_THROWS_AS(check_translate_bound(*sq, 0.0, 1, 10, 1), std::invalid_argument);
}

TEST_CASE("Haar rotations are orthogonal with determinant one") {
  Rng rng(7);
  for (int d : {2, 3, 4}) {
    for (int k = 0; k < 200; ++k) {
      const std::vector<double> q = haar_rotation(rng, d);
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          double s = 0.0;
          for (int i = 0; i < d; ++i) s += q[i * d + a] * q[i * d + b];
          REQUIRE(s == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
        }
      }
      if (d == 2) REQUIRE(q[0] * q[3] - q[1] * q[2] == doctest::Approx(1.0));
    }
  }
  // the rotation angle in the plane is uniform
  double mean_cos = 0.0;
  for (int k = 0; k < 20'000; ++k) mean_cos += haar_rotation(rng, 2)[0];
  CHECK(std::abs(mean_cos / 20'000) < 0.02);
}

TEST_CASE("rotation bound for the ball and the capped cylinder") {
  const RotationBoundResult ball = check_rotation_bound(RevolutionBody::unit_ball(2), 30, 20'000, 3);
  CHECK(ball.report.passed);
  // vol(B \ (B + x)) / |x| for unit discs lies in [pi/2, 2]
  CHECK(ball.c_hat > 1.45);
  CHECK(ball.c_hat < 2.05);
  const RotationBoundResult cyl = check_rotation_bound(RevolutionBody::capped_cylinder(3, 1.0, 0.3), 30, 20'000, 3);
  CHECK(cyl.report.passed);
  CHECK(cyl.c_hat > 0.0);
  RevolutionBody broken = RevolutionBody::unit_ball(2);
  broken.inner_radius = 0.0;
  CHECK_THROWS_AS(check_rotation_bound(broken, 1, 10, 1), UnsupportedError);
}

TEST_CASE("revolution profiles match region membership") {
  for (int d : {2, 3}) {
    std::vector<RegionFamily> fams = {RegionFamily::gabriel(),
                                      RegionFamily::strong_nn(),
                                      RegionFamily::relative_neighbourhood(),
                                      RegionFamily::beta_skeleton(2.5),
                                      RegionFamily::mastercard(),
                                      RegionFamily::truncated_slab()};
    if (d == 2) fams.push_back(RegionFamily::pacman(pi / 2.0));
    for (const RegionFamily& f : fams) {
      const RevolutionBody body = RevolutionBody::from_family(f, d);
      Point x(d, 0.0), y(d, 0.0);
      x[0] = -0.5;
      y[0] = 0.5;
      PairRegion region(f, d);
      region.reset(x, y);
      Rng rng(1);
      int mismatch = 0;
      double farthest = 0.0;
      for (int k = 0; k < 100'000; ++k) {
        Point z(d);
        for (double& c : z) c = rng.uniform(-2.0, 2.0);
        if (body.contains(z) != region.contains(z)) ++mismatch;
        if (body.contains(z)) farthest = std::max(farthest, norm(z));
      }
      CHECK_MESSAGE(mismatch <= 2, f.label());
      CHECK(body.bounding_radius() >= farthest);
      CHECK(body.bounding_radius() <= alpha_safe(f) * 1.001 + 1e-12);
    }
  }
  CHECK_THROWS_AS(RevolutionBody::from_family(RegionFamily::general_gabriel(StarBody::builtin("square", 2)), 2),
                  UnsupportedError);
}
