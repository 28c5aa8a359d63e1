#include "erg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "erg/parallel.hpp"

namespace erg {

namespace {

nlohmann::json estimate_json(const MCEstimate& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"n_samples", e.n_samples}};
}

nlohmann::json point_json(PointView p) { return nlohmann::json(std::vector<double>(p.begin(), p.end())); }

// Row-major orthonormal basis whose first row is u. Generalised Gabriel
// regions are not rotated with the pair, so they use the identity frame.
std::vector<double> frame_for(const RegionFamily& family, PointView u) {
  const int d = static_cast<int>(u.size());
  std::vector<double> basis(static_cast<std::size_t>(d) * d, 0.0);
  if (family.kind() == RegionKind::GeneralGabriel) {
    for (int i = 0; i < d; ++i) basis[i * d + i] = 1.0;
    return basis;
  }
  std::copy(u.begin(), u.end(), basis.begin());
  int rows = 1;
  for (int e = 0; e < d && rows < d; ++e) {
    Point v(d, 0.0);
    v[e] = 1.0;
    for (int r = 0; r < rows; ++r) {
      const double p = dot(v, PointView(basis.data() + r * d, d));
      for (int i = 0; i < d; ++i) v[i] -= p * basis[r * d + i];
    }
    const double nv = norm(v);
    if (nv < 1e-6) continue;
    for (int i = 0; i < d; ++i) basis[rows * d + i] = v[i] / nv;
    ++rows;
  }
  return basis;
}

// Uniform sampling of a region through its normalised bounding box:
// z = m + scale * B^T w with w uniform in `box`. The map is an isometry up
// to the scale factor, so volumes carry over as scale^d.
struct FrameSampler {
  Point m;
  double scale = 1.0;
  std::vector<double> basis;
  Box box;

  void map(PointView w, Point& z) const {
    const int d = static_cast<int>(m.size());
    for (int i = 0; i < d; ++i) z[i] = m[i];
    for (int k = 0; k < d; ++k) {
      const double c = scale * w[k];
      for (int i = 0; i < d; ++i) z[i] += c * basis[k * d + i];
    }
  }

  template <typename Indicator>
  MCEstimate volume(Indicator&& ind, std::int64_t n, std::uint64_t seed) const {
    Point z(m.size());
    const MCEstimate e = mc_volume(
        [&](PointView w) {
          map(w, z);
          return ind(PointView(z));
        },
        box, n, seed);
    const double f = std::pow(scale, static_cast<double>(m.size()));
    return {e.value * f, e.std_error * f, e.n_samples};
  }

  template <typename Indicator>
  bool any_hit(Indicator&& ind, std::int64_t n, std::uint64_t seed) const {
    const int d = static_cast<int>(m.size());
    Rng rng(seed);
    Point w(d), z(d);
    for (std::int64_t k = 0; k < n; ++k) {
      for (int i = 0; i < d; ++i) w[i] = box.lower[i] + box.side(i) * rng.uniform();
      map(w, z);
      if (ind(PointView(z))) return true;
    }
    return false;
  }
};

FrameSampler region_sampler(const RegionFamily& family, PointView x, PointView y) {
  const int d = static_cast<int>(x.size());
  const double r = distance(x, y);
  Point u = subtract(y, x);
  for (double& c : u) c /= r;
  return {midpoint(x, y), r, frame_for(family, u), normalized_bounding_box(family, d)};
}

Point random_point(Rng& rng, int d, double half_width) {
  Point p(d);
  for (double& c : p) c = rng.uniform(-half_width, half_width);
  return p;
}

Point add_scaled(PointView a, PointView v, double s) {
  Point r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * v[i];
  return r;
}

double determinant(std::vector<double> a, int d) {
  double det = 1.0;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r) {
      if (std::abs(a[r * d + c]) > std::abs(a[piv * d + c])) piv = r;
    }
    if (a[piv * d + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < d; ++k) std::swap(a[c * d + k], a[piv * d + k]);
      det = -det;
    }
    det *= a[c * d + c];
    for (int r = c + 1; r < d; ++r) {
      const double f = a[r * d + c] / a[c * d + c];
      for (int k = c; k < d; ++k) a[r * d + k] -= f * a[c * d + k];
    }
  }
  return det;
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["family"] = family;
  j["d"] = d;
  j["trials"] = trials;
  j["violations"] = violations;
  j["worst_ratio"] = std::isfinite(worst_ratio) ? nlohmann::json(worst_ratio) : nlohmann::json();
  nlohmann::json est = nlohmann::json::object();
  for (const auto& [k, v] : estimates) est[k] = estimate_json(v);
  j["estimates"] = est;
  j["worst_config"] = worst_config;
  j["passed"] = passed;
  return j;
}

// ---------------------------------------------------------------------------

VerificationReport check_scaling(const RegionFamily& family, int d, int trials, std::int64_t mc_n,
                                 std::uint64_t seed, std::optional<double> gamma_override, int threads) {
  if (trials < 1) throw std::invalid_argument("check_scaling: trials must be at least 1");
  family.check_dimension(d);
  const GammaValue ref = gamma(family, d);
  const double g = gamma_override.value_or(ref.value);
  const double g_se = gamma_override ? 0.0 : ref.std_error;

  struct Trial {
    double length, ratio, se;
  };
  std::vector<Trial> out(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    Rng rng(derive_seed(seed, {k}));
    const double length = std::pow(10.0, -1.0 + 2.0 * (static_cast<double>(k) + 0.5) / trials);
    const Point x = random_point(rng, d, 5.0);
    const Point y = add_scaled(x, random_unit_vector(rng, d), length);
    PairRegion region(family, d);
    region.reset(x, y);
    const FrameSampler fs = region_sampler(family, x, y);
    const MCEstimate v =
        fs.volume([&](PointView z) { return region.contains(z); }, mc_n, derive_seed(seed, {k, 1}));
    const double ld = std::pow(length, d);
    out[k] = {length, v.value / ld, v.std_error / ld};
  });

  VerificationReport rep;
  rep.check = "scaling";
  rep.family = family.to_json();
  rep.d = d;
  rep.trials = trials;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Trial& t = out[k];
    sum += t.ratio;
    sum2 += t.ratio * t.ratio;
    if (std::abs(t.ratio - g) > kViolationSigmas * std::hypot(t.se, g_se)) ++rep.violations;
    if (t.ratio / g < rep.worst_ratio) {
      rep.worst_ratio = t.ratio / g;
      rep.worst_config = {{"trial", k}, {"length", t.length}, {"ratio", t.ratio}, {"std_error", t.se}};
    }
  }
  const double mean = sum / trials;
  const double var = trials > 1 ? std::max(0.0, (sum2 - trials * mean * mean) / (trials - 1)) : 0.0;
  rep.estimates["gamma_reference"] = {g, g_se, ref.method == GammaMethod::MonteCarlo ? kGammaSamples : 0};
  rep.estimates["ratio_mean"] = {mean, std::sqrt(var / trials), mc_n * trials};
  rep.estimates["ratio_sd"] = {std::sqrt(var), 0.0, trials};
  rep.passed = rep.violations == 0;
  return rep;
}

VerificationReport check_bounding(const RegionFamily& family, int d, std::int64_t n, std::uint64_t seed) {
  const AlphaInfo a = alpha(family, d, n, seed);
  VerificationReport rep;
  rep.check = "bounding";
  rep.family = family.to_json();
  rep.d = d;
  rep.trials = 1;
  rep.violations = a.tight_estimate.value > a.safe * (1.0 + 1e-9) ? 1 : 0;
  rep.worst_ratio = a.tight_estimate.value > 0.0 ? a.safe / a.tight_estimate.value : 0.0;
  rep.estimates["alpha_safe"] = {a.safe, 0.0, 0};
  rep.estimates["alpha_tight"] = a.tight_estimate;
  rep.worst_config = nlohmann::json::object();
  rep.passed = rep.violations == 0;
  return rep;
}

VerificationReport check_volume_difference(const RegionFamily& family, int d, int trials, std::int64_t mc_n,
                                           std::uint64_t seed, const VolumeDifferenceOptions& options,
                                           int threads) {
  if (trials < 1) throw std::invalid_argument("check_volume_difference: trials must be at least 1");
  family.check_dimension(d);
  const double ell = options.scale;
  const double alpha = alpha_safe(family);
  const bool body_check = family.kind() == RegionKind::GeneralGabriel;
  const double body_coef = body_check ? family.body()->volume() / (2.0 * family.body()->diameter()) : 0.0;

  struct Trial {
    Point x, y, u, v;
    double shift = 0.0, ratio = 0.0, se = 0.0;
    bool violation = false;
    bool body_violation = false;
  };
  std::vector<Trial> out(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    PairRegion s_xy(family, d), s_uv(family, d);
    for (int attempt = 0;; ++attempt) {
      if (attempt >= options.max_redraws) throw std::runtime_error("overlap sampler found no intersecting configuration");
      Rng rng(derive_seed(seed, {k, static_cast<std::uint64_t>(attempt)}));
      Trial t;
      const Point dir = random_unit_vector(rng, d);
      const Point m1 = random_point(rng, d, ell);
      t.x = add_scaled(m1, dir, -ell / 2.0);
      t.y = add_scaled(m1, dir, ell / 2.0);
      // Every fourth trial is a pure translate, the tightest case.
      const bool translate = k % 4 == 0;
      const Point dir2 = translate ? dir : random_unit_vector(rng, d);
      const double ell2 = translate ? ell : ell * rng.uniform(0.25, 1.0);
      const Point shift_dir = random_unit_vector(rng, d);
      t.shift = ell * rng.uniform(options.min_shift, 2.0 * alpha);
      const Point m2 = add_scaled(m1, shift_dir, t.shift);
      t.u = add_scaled(m2, dir2, -ell2 / 2.0);
      t.v = add_scaled(m2, dir2, ell2 / 2.0);
      s_xy.reset(t.x, t.y);
      s_uv.reset(t.u, t.v);
      const FrameSampler fs = region_sampler(family, t.x, t.y);
      const bool overlap = fs.any_hit([&](PointView z) { return s_xy.contains(z) && s_uv.contains(z); },
                                      options.overlap_samples, derive_seed(seed, {k, 1u << 20, static_cast<std::uint64_t>(attempt)}));
      if (!overlap) continue;
      const MCEstimate diff = fs.volume([&](PointView z) { return s_xy.contains(z) && !s_uv.contains(z); }, mc_n,
                                        derive_seed(seed, {k, 1u << 21}));
      const double den = t.shift * std::pow(ell, d - 1);
      t.ratio = diff.value / den;
      t.se = diff.std_error / den;
      t.violation = diff.value - kViolationSigmas * diff.std_error <= 0.0;
      if (body_check && t.shift <= family.body()->diameter() * ell) {
        t.body_violation = diff.value + kViolationSigmas * diff.std_error < body_coef * den;
      }
      out[k] = std::move(t);
      return;
    }
  });

  VerificationReport rep;
  rep.check = "volume_difference";
  rep.family = family.to_json();
  rep.d = d;
  rep.trials = trials;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  int body_bound_violations = 0;
  for (int k = 0; k < trials; ++k) {
    if (out[k].violation) ++rep.violations;
    if (out[k].body_violation) ++body_bound_violations;
    if (out[k].ratio < rep.worst_ratio) {
      rep.worst_ratio = out[k].ratio;
      worst = k;
    }
  }
  const Trial& w = out[worst];
  rep.worst_config = {{"trial", worst}, {"x", point_json(w.x)}, {"y", point_json(w.y)}, {"u", point_json(w.u)},
                      {"v", point_json(w.v)}, {"midpoint_shift", w.shift}, {"ratio", w.ratio}, {"std_error", w.se}};
  rep.estimates["beta_hat"] = {w.ratio, w.se, mc_n};
  if (body_check) {
    rep.estimates["body_bound"] = {body_coef, 0.0, 0};
    rep.estimates["body_bound_violations"] = {static_cast<double>(body_bound_violations), 0.0, trials};
  }
  rep.violations += body_bound_violations;
  rep.passed = rep.violations == 0 && w.ratio - kViolationSigmas * w.se > 0.0;
  return rep;
}

VerificationReport check_translate_bound(const StarBody& body, double c, int trials, std::int64_t mc_n,
                                         std::uint64_t seed, int threads) {
  if (!(c > 0.0)) throw std::invalid_argument("check_translate_bound: c must be positive");
  if (trials < 1) throw std::invalid_argument("check_translate_bound: trials must be at least 1");
  const int d = body.dim();
  const Box box = Box::cube(d, body.bounding_radius() * (1.0 + 1e-9));
  double diam = body.diameter();
  if (!(diam > 0.0)) {
    diam = diameter_estimate([&](PointView z) { return body.contains(z); }, box, 1'000'000, seed);
  }
  double vol = body.volume();
  if (!(vol > 0.0)) vol = mc_volume([&](PointView z) { return body.contains(z); }, box, 1'000'000, seed).value;
  const double coef = vol / ((c + 1.0) * diam);

  struct Trial {
    Point shift;
    double est = 0.0, se = 0.0, rhs = 0.0;
  };
  std::vector<Trial> out(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    Rng rng(derive_seed(seed, {k}));
    Trial t;
    const double len = c * diam * (1.0 - rng.uniform());  // (0, c diam]
    t.shift = random_unit_vector(rng, d);
    for (double& s : t.shift) s *= len;
    Point q(d);
    const MCEstimate e = mc_volume(
        [&](PointView z) {
          if (!body.contains(z)) return false;
          for (int i = 0; i < d; ++i) q[i] = z[i] - t.shift[i];
          return !body.contains(q);
        },
        box, mc_n, derive_seed(seed, {k, 1}));
    t.est = e.value;
    t.se = e.std_error;
    t.rhs = coef * len;
    out[k] = std::move(t);
  });

  VerificationReport rep;
  rep.check = "translate_bound";
  rep.family = {{"body", body.name()}, {"c", c}};
  rep.d = d;
  rep.trials = trials;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  for (int k = 0; k < trials; ++k) {
    const Trial& t = out[k];
    if (t.rhs <= 0.0) continue;
    if (t.est + kViolationSigmas * t.se < t.rhs) ++rep.violations;
    if (t.est / t.rhs < rep.worst_ratio) {
      rep.worst_ratio = t.est / t.rhs;
      worst = k;
    }
  }
  rep.worst_config = {{"trial", worst},          {"shift", point_json(out[worst].shift)},
                      {"volume", out[worst].est}, {"std_error", out[worst].se},
                      {"bound", out[worst].rhs}};
  rep.estimates["bound_coefficient"] = {coef, 0.0, 0};
  rep.estimates["diameter"] = {diam, 0.0, 0};
  rep.passed = rep.violations == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// Bodies of revolution

bool RevolutionBody::contains(PointView z) const {
  if (std::abs(z[0]) > half_length) return false;
  double h2 = 0.0;
  for (int i = 1; i < d; ++i) h2 += z[i] * z[i];
  const double r = profile(z[0]);
  return h2 <= r * r;
}

double RevolutionBody::bounding_radius() const {
  constexpr int kGrid = 10'000;
  double best = 0.0;
  for (int k = 0; k <= kGrid; ++k) {
    const double a = half_length * k / kGrid;
    best = std::max(best, std::hypot(a, profile(a)));
  }
  return best * 1.001;
}

RevolutionBody RevolutionBody::unit_ball(int d) {
  return {"ball", d, 1.0, [](double a) { return std::sqrt(std::max(0.0, 1.0 - a * a)); }, Point(d, 0.0), 1.0};
}

RevolutionBody RevolutionBody::capped_cylinder(int d, double half_length, double radius) {
  return {"capped-cylinder", d, half_length, [radius](double) { return radius; }, Point(d, 0.0),
          std::min(half_length, radius)};
}

RevolutionBody RevolutionBody::from_family(const RegionFamily& family, int d) {
  family.check_dimension(d);
  auto root = [](double v) { return std::sqrt(std::max(0.0, v)); };
  RevolutionBody body;
  body.name = family.label();
  body.d = d;
  switch (family.kind()) {
    case RegionKind::Gabriel:
      body.half_length = 0.5;
      body.profile = [root](double a) { return root(0.25 - a * a); };
      break;
    case RegionKind::StrongNN:
      body.half_length = 1.5;
      body.profile = [root](double a) { return root(1.0 - (std::abs(a) - 0.5) * (std::abs(a) - 0.5)); };
      break;
    case RegionKind::RelativeNbhd:
      body.half_length = 0.5;
      body.profile = [root](double a) { return root(1.0 - (std::abs(a) + 0.5) * (std::abs(a) + 0.5)); };
      break;
    case RegionKind::BetaSkeleton: {
      const double b = family.beta();
      body.half_length = 0.5;
      body.profile = [root, b](double a) {
        const double c = std::abs(a) + (b - 1.0) / 2.0;
        return root(b * b / 4.0 - c * c);
      };
      break;
    }
    case RegionKind::Mastercard:
      body.half_length = 1.5;
      body.profile = [root](double a) {
        const double e = std::abs(a) - 0.5;
        return e <= 0.0 ? 1.0 : root(1.0 - e * e);
      };
      break;
    case RegionKind::Pacman: {
      const auto* poly = family.polygon();
      body.half_length = poly->a_max();
      body.profile = [poly](double a) { return poly->half_width(std::abs(a)); };
      break;
    }
    case RegionKind::TruncatedSlab:
      body.half_length = 0.5;
      body.profile = [root](double a) { return root(4.0 - (std::abs(a) + 0.5) * (std::abs(a) + 0.5)); };
      break;
    case RegionKind::GeneralGabriel:
      throw UnsupportedError("generalised Gabriel bodies are not bodies of revolution");
  }
  const Ball inner = inner_ball(family, d);
  body.inner_center = inner.center;
  body.inner_radius = inner.radius;
  return body;
}

std::vector<double> haar_rotation(Rng& rng, int d) {
  // Gram-Schmidt on a Gaussian frame gives a Haar orthogonal matrix; a sign
  // flip of one column moves it into SO(d) without breaking invariance.
  std::vector<double> q(static_cast<std::size_t>(d) * d);
  for (;;) {
    for (double& c : q) c = rng.normal();
    bool ok = true;
    for (int col = 0; col < d && ok; ++col) {
      for (int prev = 0; prev < col; ++prev) {
        double p = 0.0;
        for (int i = 0; i < d; ++i) p += q[i * d + col] * q[i * d + prev];
        for (int i = 0; i < d; ++i) q[i * d + col] -= p * q[i * d + prev];
      }
      double n2 = 0.0;
      for (int i = 0; i < d; ++i) n2 += q[i * d + col] * q[i * d + col];
      if (n2 < 1e-20) {
        ok = false;
        break;
      }
      const double inv = 1.0 / std::sqrt(n2);
      for (int i = 0; i < d; ++i) q[i * d + col] *= inv;
    }
    if (!ok) continue;
    if (determinant(q, d) < 0.0) {
      for (int i = 0; i < d; ++i) q[i * d] = -q[i * d];
    }
    return q;
  }
}

RotationBoundResult check_rotation_bound(const RevolutionBody& body, int trials, std::int64_t mc_n,
                                         std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("check_rotation_bound: trials must be at least 1");
  if (!body.profile || !(body.half_length > 0.0) || !(body.inner_radius > 0.0)) {
    throw UnsupportedError("check_rotation_bound: body needs a profile and an inner ball");
  }
  const int d = body.d;
  const double big_r = body.bounding_radius();
  const Box box = Box::cube(d, big_r);

  struct Trial {
    Point shift;
    double ratio = 0.0, se = 0.0;
    bool violation = false;
  };
  std::vector<Trial> out(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      if (attempt >= 10'000) throw std::runtime_error("overlap sampler found no intersecting configuration");
      Rng rng(derive_seed(seed, {k, attempt}));
      const std::vector<double> rho = haar_rotation(rng, d);
      Trial t;
      const double len = rng.uniform(0.01, 2.0) * big_r;
      t.shift = random_unit_vector(rng, d);
      for (double& s : t.shift) s *= len;
      // z in rho K + x  <=>  rho^T (z - x) in K
      std::vector<double> rho_t(rho.size());
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) rho_t[i * d + j] = rho[j * d + i];
      }
      Point w(d), q(d);
      auto in_moved = [&](PointView z) {
        for (int i = 0; i < d; ++i) w[i] = z[i] - t.shift[i];
        for (int i = 0; i < d; ++i) {
          q[i] = 0.0;
          for (int j = 0; j < d; ++j) q[i] += rho_t[i * d + j] * w[j];
        }
        return body.contains(q);
      };
      Rng hit_rng(derive_seed(seed, {k, attempt, 1}));
      bool overlap = false;
      Point z(d);
      for (int s = 0; s < 100'000 && !overlap; ++s) {
        for (int i = 0; i < d; ++i) z[i] = box.lower[i] + box.side(i) * hit_rng.uniform();
        overlap = body.contains(z) && in_moved(z);
      }
      if (!overlap) continue;
      const MCEstimate e = mc_volume([&](PointView p) { return body.contains(p) && !in_moved(p); }, box, mc_n,
                                     derive_seed(seed, {k, 2}));
      t.ratio = e.value / len;
      t.se = e.std_error / len;
      t.violation = e.value - kViolationSigmas * e.std_error <= 0.0;
      out[k] = std::move(t);
      return;
    }
  });

  RotationBoundResult res;
  VerificationReport& rep = res.report;
  rep.check = "rotation_bound";
  rep.family = {{"body", body.name}};
  rep.d = d;
  rep.trials = trials;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  for (int k = 0; k < trials; ++k) {
    if (out[k].violation) ++rep.violations;
    if (out[k].ratio < rep.worst_ratio) {
      rep.worst_ratio = out[k].ratio;
      worst = k;
    }
  }
  res.c_hat = out[worst].ratio;
  rep.estimates["c_hat"] = {out[worst].ratio, out[worst].se, mc_n};
  rep.worst_config = {{"trial", worst}, {"shift", point_json(out[worst].shift)}, {"ratio", out[worst].ratio}};
  rep.passed = rep.violations == 0 && res.c_hat - kViolationSigmas * out[worst].se > 0.0;
  return res;
}

// ---------------------------------------------------------------------------

nlohmann::json TheoreticalConstants::to_json() const {
  return {{"C2", c2}, {"C3", c3}, {"C41", c41}, {"C42", c42}, {"M", m}};
}

double m_constant(int d) {
  if (d < 2) throw std::domain_error("m_constant: d must be at least 2");
  return std::pow(2.0 * (d - 1) / std::numbers::e, d - 1);
}

TheoreticalConstants theoretical_constants(int d, double alpha, double beta, double gamma, double vol_window) {
  if (d < 2) throw std::domain_error("theoretical_constants: d must be at least 2");
  if (!(alpha > 0.5)) throw std::domain_error("theoretical_constants: alpha must exceed 1/2");
  if (!(beta > 0.0) || !(gamma > 0.0)) throw std::domain_error("theoretical_constants: beta and gamma must be positive");
  if (!(vol_window >= 0.0)) throw std::domain_error("theoretical_constants: negative window volume");
  const double k = kappa(d);
  const double dd = d;
  TheoreticalConstants c;
  c.m = m_constant(d);
  c.c2 = std::pow(2.0, dd + 1) * k * std::pow(alpha, dd) * vol_window / gamma;
  if (d == 2) {
    c.c3 = 16.0 * std::sqrt(2.0) * std::pow(std::numbers::pi, 2.5) * vol_window / (beta * beta * std::sqrt(gamma));
  } else {
    c.c3 = 4.0 * dd * k * k * c.m * std::pow(gamma, dd - 2) * vol_window / (std::pow(beta, dd) * (dd - 2));
  }
  c.c41 = std::pow(2.0, dd + 4) * dd * k * c.m * std::pow(gamma, dd - 1) * vol_window / std::pow(beta, dd);
  c.c42 = 16.0 * vol_window;
  return c;
}

double rate_bound(int d, double t) {
  if (!(t >= 2.0)) throw std::domain_error("rate_bound: t must be at least 2");
  return std::pow(std::log(t), -std::max(d - 2.0, 0.5));
}

}  // namespace erg
