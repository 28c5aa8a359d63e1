#include "erg/sampler.hpp"

#include <cmath>
#include <ostream>

#include "erg/extremes.hpp"

namespace erg {

PointCloud::PointCloud(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1) throw std::invalid_argument("PointCloud: dimension must be positive");
  if (coords_.size() % dim_ != 0) throw std::invalid_argument("PointCloud: coordinate count not a multiple of d");
}

PointCloud PointCloud::from_points(const std::vector<Point>& points) {
  if (points.empty()) return PointCloud();
  PointCloud cloud(static_cast<int>(points.front().size()));
  for (const Point& p : points) cloud.push_back(p);
  return cloud;
}

void PointCloud::push_back(PointView p) {
  if (static_cast<int>(p.size()) != dim_) throw std::invalid_argument("PointCloud: dimension mismatch");
  for (double c : p) {
    if (!std::isfinite(c)) throw std::invalid_argument("PointCloud: non-finite coordinate");
  }
  coords_.insert(coords_.end(), p.begin(), p.end());
}

PointCloud PointCloud::permuted(std::span<const std::size_t> order) const {
  PointCloud out(dim_);
  out.coords_.reserve(coords_.size());
  for (std::size_t k : order) {
    const PointView p = (*this)[k];
    out.coords_.insert(out.coords_.end(), p.begin(), p.end());
  }
  return out;
}

PointCloud sample_poisson(const SampleConfig& cfg) {
  if (!(cfg.t >= 2.0)) throw std::invalid_argument("sample_poisson: intensity t must be at least 2");
  const int d = cfg.box.dim();
  PointCloud cloud(d);
  const double vol = cfg.box.volume();
  if (!(vol > 0.0)) return cloud;
  const double mean = cfg.t * vol;
  if (mean > kMaxExpectedPoints) throw ResourceError("sample_poisson: more than 1e9 expected points");
  Rng rng(cfg.seed);
  const long long n = rng.poisson(mean);
  std::vector<double> coords(static_cast<std::size_t>(n) * d);
  for (long long k = 0; k < n; ++k) {
    for (int i = 0; i < d; ++i) coords[k * d + i] = cfg.box.lower[i] + cfg.box.side(i) * rng.uniform();
  }
  return PointCloud(d, std::move(coords));
}

PointCloud sample_uniform(const Box& box, std::size_t n, std::uint64_t seed) {
  const int d = box.dim();
  Rng rng(seed);
  std::vector<double> coords(n * d);
  for (std::size_t k = 0; k < n; ++k) {
    for (int i = 0; i < d; ++i) coords[k * d + i] = box.lower[i] + box.side(i) * rng.uniform();
  }
  return PointCloud(d, std::move(coords));
}

PaddedBox padded_box(const Box& window, double t, const RegionFamily& family, int d, double s_max) {
  if (!(t >= 2.0)) throw std::invalid_argument("padded_box: t must be at least 2");
  if (!std::isfinite(s_max)) throw std::invalid_argument("padded_box: s_max must be finite");
  const double g = gamma(family, d).value;
  PaddedBox out;
  out.max_length = threshold_length(s_max, t, g, d);
  out.pad = std::max(alpha_safe(family), 0.5) * out.max_length;
  out.sim_box = window.expanded(out.pad);
  out.truncation_prob_bound = window.volume() * std::exp(-s_max);
  return out;
}

void write_points_csv(std::ostream& os, const PointCloud& points) {
  const int d = points.dim();
  for (int i = 0; i < d; ++i) os << (i ? "," : "") << 'x' << i;
  os << '\n';
  os.precision(17);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const PointView p = points[k];
    for (int i = 0; i < d; ++i) os << (i ? "," : "") << p[i];
    os << '\n';
  }
}

}  // namespace erg
