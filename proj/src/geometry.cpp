#include "erg/geometry.hpp"

#include <numbers>

namespace erg {

Box::Box(Point lo, Point hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) throw std::invalid_argument("Box: dimension mismatch");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) throw std::invalid_argument("Box: lower must not exceed upper");
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) throw std::invalid_argument("Box: non-finite bound");
  }
}

double Box::volume() const {
  if (lower.empty()) return 0.0;
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= side(i);
  return v;
}

bool Box::contains(PointView p) const {
  for (int i = 0; i < dim(); ++i) {
    if (p[i] < lower[i] || p[i] > upper[i]) return false;
  }
  return true;
}

Box Box::expanded(double pad) const {
  Box b = *this;
  for (int i = 0; i < dim(); ++i) {
    b.lower[i] -= pad;
    b.upper[i] += pad;
  }
  return b;
}

double kappa(int d) {
  if (d < 1) throw std::domain_error("kappa: dimension must be at least 1");
  // kappa_d = kappa_{d-2} * 2 pi / d with kappa_0 = 1, kappa_1 = 2.
  double k = (d % 2 == 0) ? 1.0 : 2.0;
  for (int j = (d % 2 == 0) ? 2 : 3; j <= d; j += 2) k *= 2.0 * std::numbers::pi / j;
  return k;
}

Direction canonical_direction(PointView v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw std::domain_error("canonical_direction: zero vector");
  Direction dir{Point(v.begin(), v.end())};
  double sign = 1.0;
  for (double c : v) {
    if (c != 0.0) {
      sign = c > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  // + 0.0 turns -0 into +0 so outputs never print "-0"
  for (double& c : dir.unit) c = sign * c / n + 0.0;
  return dir;
}

Point random_unit_vector(Rng& rng, int d) {
  Point v(d);
  double n2 = 0.0;
  do {
    for (double& c : v) c = rng.normal();
    n2 = squared_norm(v);
  } while (n2 == 0.0);
  const double n = std::sqrt(n2);
  for (double& c : v) c /= n;
  return v;
}

Point random_in_ball(Rng& rng, int d, double radius) {
  Point v = random_unit_vector(rng, d);
  const double r = radius * std::pow(rng.uniform(), 1.0 / d);
  for (double& c : v) c *= r;
  return v;
}

}  // namespace erg
