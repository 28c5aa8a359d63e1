#include "erg/regions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace erg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double cross(double oa, double ob, double aa, double ab, double pa, double pb) {
  return (aa - oa) * (pb - ob) - (ab - ob) * (pa - oa);
}

}  // namespace

// ---------------------------------------------------------------------------
// StarBody

StarBody::StarBody(Data data) : data_(std::move(data)) {
  if (!data_.membership) throw std::invalid_argument("StarBody: membership predicate required");
  if (data_.dim < 1) throw std::invalid_argument("StarBody: dimension must be positive");
  if (!(data_.bounding_radius > 0.0)) throw std::invalid_argument("StarBody: bounding_radius must be positive");
  if (!(data_.inner_radius > 0.0)) throw std::invalid_argument("StarBody: inner_radius must be positive");
  if (!(data_.volume > 0.0)) throw std::invalid_argument("StarBody: volume must be positive");
  if (static_cast<int>(data_.inner_center.size()) != data_.dim) {
    throw std::invalid_argument("StarBody: inner_center dimension mismatch");
  }
}

std::shared_ptr<const StarBody> StarBody::builtin(std::string_view name, int d) {
  if (d < 1) throw std::invalid_argument("StarBody: dimension must be positive");
  Data data;
  data.dim = d;
  data.inner_center = Point(d, 0.0);
  if (name == "square") {
    data.name = "square";
    data.membership = [](PointView z) {
      for (double c : z) {
        if (std::abs(c) > 0.5) return false;
      }
      return true;
    };
    data.bounding_radius = std::sqrt(static_cast<double>(d)) / 2.0;
    data.inner_radius = 0.5;
    data.volume = 1.0;
    data.diameter = std::sqrt(static_cast<double>(d));
  } else if (name == "ellipse") {
    data.name = "ellipse";
    data.membership = [](PointView z) {
      double s = z[0] * z[0] / 0.25;
      for (std::size_t i = 1; i < z.size(); ++i) s += z[i] * z[i] / 0.09;
      return s <= 1.0;
    };
    data.bounding_radius = 0.5;
    data.inner_radius = 0.3;
    data.volume = kappa(d) * 0.5 * std::pow(0.3, d - 1);
    data.diameter = 1.0;
  } else if (name == "triangle") {
    if (d != 2) throw UnsupportedError("triangle body requires d=2");
    data.name = "triangle";
    data.membership = [](PointView z) { return z[1] >= 0.0 && z[1] <= 0.5 - std::abs(z[0]); };
    const double inradius = 0.5 / (1.0 + std::numbers::sqrt2);
    data.bounding_radius = 0.5;
    data.inner_center = {0.0, inradius};
    data.inner_radius = inradius;
    data.volume = 0.25;
    data.diameter = 1.0;
  } else {
    throw std::invalid_argument("unknown built-in body: " + std::string(name));
  }
  auto body = std::make_shared<StarBody>(std::move(data));
  body->builtin_ = true;
  return body;
}

// ---------------------------------------------------------------------------
// PacmanPolygon

PacmanPolygon::PacmanPolygon(double theta, int arc_resolution) {
  if (!(theta > 0.0) || theta > kTwoPi * (1.0 + 1e-12)) throw std::invalid_argument("pacman: theta must lie in (0, 2pi]");
  if (arc_resolution < 2) throw std::invalid_argument("pacman: arc_resolution must be at least 2");

  std::vector<std::pair<double, double>> pts;
  pts.reserve(2 * arc_resolution + 2);
  pts.emplace_back(-0.5, 0.0);
  pts.emplace_back(0.5, 0.0);
  for (int k = 0; k < arc_resolution; ++k) {
    const double phi = -theta / 2.0 + theta * static_cast<double>(k) / (arc_resolution - 1);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    pts.emplace_back(-0.5 + c, s);
    pts.emplace_back(0.5 - c, s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Upper hull, left to right.
  std::vector<std::pair<double, double>> upper;
  for (const auto& p : pts) {
    while (upper.size() >= 2) {
      const auto& o = upper[upper.size() - 2];
      const auto& a = upper.back();
      if (cross(o.first, o.second, a.first, a.second, p.first, p.second) >= 0.0) {
        upper.pop_back();
      } else {
        break;
      }
    }
    upper.push_back(p);
  }

  // Keep the part over a >= 0, starting exactly at a = 0.
  std::size_t first = 0;
  while (first < upper.size() && upper[first].first < 0.0) ++first;
  if (first == upper.size()) throw std::logic_error("pacman: degenerate hull");
  if (upper[first].first > 0.0) {
    const auto& l = upper[first - 1];
    const auto& r = upper[first];
    const double w = (0.0 - l.first) / (r.first - l.first);
    chain_a_.push_back(0.0);
    chain_b_.push_back(l.second + w * (r.second - l.second));
  }
  for (std::size_t i = first; i < upper.size(); ++i) {
    chain_a_.push_back(upper[i].first);
    chain_b_.push_back(upper[i].second);
  }
}

double PacmanPolygon::half_width(double a) const {
  if (a < 0.0 || a > chain_a_.back()) return -1.0;
  auto it = std::upper_bound(chain_a_.begin(), chain_a_.end(), a);
  if (it == chain_a_.end()) return chain_b_.back();
  const std::size_t hi = static_cast<std::size_t>(it - chain_a_.begin());
  const std::size_t lo = hi - 1;
  const double w = (a - chain_a_[lo]) / (chain_a_[hi] - chain_a_[lo]);
  return chain_b_[lo] + w * (chain_b_[hi] - chain_b_[lo]);
}

bool PacmanPolygon::contains(double a, double b) const {
  a = std::abs(a);
  b = std::abs(b);
  if (a > chain_a_.back()) return false;
  return b <= half_width(a);
}

double PacmanPolygon::area() const {
  double quarter = 0.0;
  for (std::size_t i = 1; i < chain_a_.size(); ++i) {
    quarter += (chain_a_[i] - chain_a_[i - 1]) * (chain_b_[i] + chain_b_[i - 1]) / 2.0;
  }
  return 4.0 * quarter;
}

double PacmanPolygon::inner_radius() const {
  double best = chain_a_.back();
  for (std::size_t i = 1; i < chain_a_.size(); ++i) {
    const double ax = chain_a_[i - 1], ay = chain_b_[i - 1];
    const double bx = chain_a_[i], by = chain_b_[i];
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? -(ax * dx + ay * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(ax + t * dx, ay + t * dy));
  }
  return best;
}

double PacmanPolygon::b_max() const { return *std::max_element(chain_b_.begin(), chain_b_.end()); }

// ---------------------------------------------------------------------------
// RegionFamily

RegionFamily RegionFamily::gabriel() {
  RegionFamily f;
  f.kind_ = RegionKind::Gabriel;
  return f;
}

RegionFamily RegionFamily::strong_nn() {
  RegionFamily f;
  f.kind_ = RegionKind::StrongNN;
  return f;
}

RegionFamily RegionFamily::relative_neighbourhood() {
  RegionFamily f;
  f.kind_ = RegionKind::RelativeNbhd;
  return f;
}

RegionFamily RegionFamily::beta_skeleton(double beta) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) throw std::invalid_argument("beta-skeleton requires beta >= 1");
  RegionFamily f;
  f.kind_ = RegionKind::BetaSkeleton;
  f.beta_ = beta;
  return f;
}

RegionFamily RegionFamily::mastercard() {
  RegionFamily f;
  f.kind_ = RegionKind::Mastercard;
  return f;
}

RegionFamily RegionFamily::pacman(double theta, int arc_resolution) {
  RegionFamily f;
  f.kind_ = RegionKind::Pacman;
  f.theta_ = theta;
  f.arc_resolution_ = arc_resolution;
  f.polygon_ = std::make_shared<PacmanPolygon>(theta, arc_resolution);
  return f;
}

RegionFamily RegionFamily::truncated_slab() {
  RegionFamily f;
  f.kind_ = RegionKind::TruncatedSlab;
  return f;
}

RegionFamily RegionFamily::general_gabriel(std::shared_ptr<const StarBody> body) {
  if (!body) throw std::invalid_argument("general-gabriel requires a body");
  RegionFamily f;
  f.kind_ = RegionKind::GeneralGabriel;
  f.body_ = std::move(body);
  return f;
}

std::string RegionFamily::kind_name() const {
  switch (kind_) {
    case RegionKind::Gabriel: return "gabriel";
    case RegionKind::StrongNN: return "strong-nn";
    case RegionKind::RelativeNbhd: return "relative-neighbourhood";
    case RegionKind::BetaSkeleton: return "beta-skeleton";
    case RegionKind::Mastercard: return "mastercard";
    case RegionKind::Pacman: return "pacman";
    case RegionKind::TruncatedSlab: return "truncated-slab";
    case RegionKind::GeneralGabriel: return "general-gabriel";
  }
  return "unknown";
}

std::string RegionFamily::label() const {
  std::ostringstream os;
  os << kind_name();
  if (kind_ == RegionKind::BetaSkeleton) os << "(beta=" << beta_ << ")";
  if (kind_ == RegionKind::Pacman) os << "(theta=" << theta_ << ",res=" << arc_resolution_ << ")";
  if (kind_ == RegionKind::GeneralGabriel) os << "(" << body_->name() << ")";
  return os.str();
}

void RegionFamily::check_dimension(int d) const {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  if (kind_ == RegionKind::Pacman && d != 2) throw UnsupportedError("pacman requires d=2");
  if (kind_ == RegionKind::GeneralGabriel && body_->dim() != d) {
    throw UnsupportedError("general-gabriel body dimension does not match d");
  }
}

bool RegionFamily::contains(PointView x, PointView y, PointView z) const {
  PairRegion region(*this, static_cast<int>(x.size()));
  region.reset(x, y);
  return region.contains(z);
}

RegionKind parse_region_kind(std::string_view name) {
  if (name == "gabriel") return RegionKind::Gabriel;
  if (name == "strong-nn" || name == "snn" || name == "strong-nearest-neighbour") return RegionKind::StrongNN;
  if (name == "relative-neighbourhood" || name == "relative-neighborhood" || name == "rng") {
    return RegionKind::RelativeNbhd;
  }
  if (name == "beta-skeleton" || name == "beta") return RegionKind::BetaSkeleton;
  if (name == "mastercard") return RegionKind::Mastercard;
  if (name == "pacman") return RegionKind::Pacman;
  if (name == "truncated-slab" || name == "slab") return RegionKind::TruncatedSlab;
  if (name == "general-gabriel" || name == "generalised-gabriel" || name == "generalized-gabriel") {
    return RegionKind::GeneralGabriel;
  }
  throw std::invalid_argument("unknown region family: " + std::string(name));
}

nlohmann::json RegionFamily::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name();
  if (kind_ == RegionKind::BetaSkeleton) j["beta"] = beta_;
  if (kind_ == RegionKind::Pacman) {
    j["theta"] = theta_;
    j["arc_resolution"] = arc_resolution_;
  }
  if (kind_ == RegionKind::GeneralGabriel) {
    if (body_->is_builtin()) {
      j["body"] = {{"builtin", body_->name()}};
    } else {
      j["body"] = {{"custom", body_->name()}};
    }
  }
  return j;
}

RegionFamily RegionFamily::from_json(const nlohmann::json& j, int d) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("family: object with \"kind\" required");
  const RegionKind kind = parse_region_kind(j.at("kind").get<std::string>());
  auto forbid = [&](const char* key, bool allowed) {
    if (!allowed && j.contains(key)) {
      throw std::invalid_argument(std::string("family: \"") + key + "\" not valid for this kind");
    }
  };
  forbid("beta", kind == RegionKind::BetaSkeleton);
  forbid("theta", kind == RegionKind::Pacman);
  forbid("arc_resolution", kind == RegionKind::Pacman);
  forbid("body", kind == RegionKind::GeneralGabriel);

  switch (kind) {
    case RegionKind::Gabriel: return gabriel();
    case RegionKind::StrongNN: return strong_nn();
    case RegionKind::RelativeNbhd: return relative_neighbourhood();
    case RegionKind::BetaSkeleton:
      if (!j.contains("beta")) throw std::invalid_argument("beta-skeleton requires \"beta\"");
      return beta_skeleton(j.at("beta").get<double>());
    case RegionKind::Mastercard: return mastercard();
    case RegionKind::Pacman:
      if (d != 2) throw UnsupportedError("pacman requires d=2");
      if (!j.contains("theta")) throw std::invalid_argument("pacman requires \"theta\"");
      return pacman(j.at("theta").get<double>(), j.value("arc_resolution", 512));
    case RegionKind::TruncatedSlab: return truncated_slab();
    case RegionKind::GeneralGabriel: {
      if (!j.contains("body") || !j.at("body").contains("builtin")) {
        throw std::invalid_argument("general-gabriel requires {\"body\": {\"builtin\": name}}");
      }
      return general_gabriel(StarBody::builtin(j.at("body").at("builtin").get<std::string>(), d));
    }
  }
  throw std::invalid_argument("family: unhandled kind");
}

// ---------------------------------------------------------------------------
// PairRegion

PairRegion::PairRegion(const RegionFamily& family, int d)
    : family_(&family), d_(d), x_(d), y_(d), m_(d), u_(d), c1_(d), c2_(d), scratch_(d) {
  family.check_dimension(d);
}

void PairRegion::reset(PointView x, PointView y) {
  if (static_cast<int>(x.size()) != d_ || static_cast<int>(y.size()) != d_) {
    throw std::invalid_argument("PairRegion: dimension mismatch");
  }
  r2_ = squared_distance(x, y);
  if (!(r2_ > 0.0)) throw std::domain_error("region undefined for x == y");
  r_ = std::sqrt(r2_);
  for (int i = 0; i < d_; ++i) {
    x_[i] = x[i];
    y_[i] = y[i];
    m_[i] = (x[i] + y[i]) / 2.0;
    u_[i] = (y[i] - x[i]) / r_;
  }
  switch (family_->kind()) {
    case RegionKind::Gabriel:
      ball_r2_ = 0.25 * r2_;
      break;
    case RegionKind::BetaSkeleton: {
      const double h = family_->beta() / 2.0;
      for (int i = 0; i < d_; ++i) {
        c1_[i] = (1.0 - h) * x[i] + h * y[i];
        c2_[i] = (1.0 - h) * y[i] + h * x[i];
      }
      ball_r2_ = h * h * r2_;
      break;
    }
    case RegionKind::TruncatedSlab:
      ball_r2_ = 4.0 * r2_;
      break;
    default:
      ball_r2_ = r2_;
      break;
  }
}

bool PairRegion::contains(PointView z) const {
  switch (family_->kind()) {
    case RegionKind::Gabriel:
      return squared_distance(z, m_) <= ball_r2_;
    case RegionKind::StrongNN:
      return squared_distance(z, x_) <= r2_ || squared_distance(z, y_) <= r2_;
    case RegionKind::RelativeNbhd:
      return squared_distance(z, x_) <= r2_ && squared_distance(z, y_) <= r2_;
    case RegionKind::BetaSkeleton:
      return squared_distance(z, c1_) <= ball_r2_ && squared_distance(z, c2_) <= ball_r2_;
    case RegionKind::Mastercard: {
      double a = 0.0;
      for (int i = 0; i < d_; ++i) a += (z[i] - m_[i]) * u_[i];
      double h2 = 0.0;
      for (int i = 0; i < d_; ++i) {
        const double w = (z[i] - m_[i]) - a * u_[i];
        h2 += w * w;
      }
      const double excess = std::abs(a) - r_ / 2.0;
      if (excess <= 0.0) return h2 <= r2_;
      return excess * excess + h2 <= r2_;
    }
    case RegionKind::Pacman: {
      const double w0 = z[0] - m_[0];
      const double w1 = z[1] - m_[1];
      const double a = (w0 * u_[0] + w1 * u_[1]) / r_;
      const double b = (w1 * u_[0] - w0 * u_[1]) / r_;
      return family_->polygon()->contains(a, b);
    }
    case RegionKind::TruncatedSlab: {
      double a = 0.0;
      for (int i = 0; i < d_; ++i) a += (z[i] - m_[i]) * u_[i];
      if (std::abs(a) > r_ / 2.0) return false;
      return squared_distance(z, x_) <= ball_r2_ && squared_distance(z, y_) <= ball_r2_;
    }
    case RegionKind::GeneralGabriel: {
      for (int i = 0; i < d_; ++i) scratch_[i] = (z[i] - m_[i]) / r_;
      return family_->body()->contains(scratch_);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Constants

Box normalized_bounding_box(const RegionFamily& family, int d) {
  family.check_dimension(d);
  double axial = 0.5;
  double radial = 0.5;
  switch (family.kind()) {
    case RegionKind::Gabriel: break;
    case RegionKind::StrongNN:
    case RegionKind::Mastercard:
      axial = 1.5;
      radial = 1.0;
      break;
    case RegionKind::RelativeNbhd: radial = std::sqrt(3.0) / 2.0; break;
    case RegionKind::BetaSkeleton: radial = std::sqrt(2.0 * family.beta() - 1.0) / 2.0; break;
    case RegionKind::Pacman:
      axial = family.polygon()->a_max();
      radial = family.polygon()->b_max();
      break;
    case RegionKind::TruncatedSlab: radial = std::sqrt(15.0) / 2.0; break;
    case RegionKind::GeneralGabriel:
      axial = radial = family.body()->bounding_radius();
      break;
  }
  const double slack = 1.0 + 1e-9;
  Point lo(d, -radial * slack), hi(d, radial * slack);
  lo[0] = -axial * slack;
  hi[0] = axial * slack;
  return Box(lo, hi);
}

MCEstimate gamma_monte_carlo(const RegionFamily& family, int d, std::int64_t n, std::uint64_t seed) {
  family.check_dimension(d);
  Point x(d, 0.0), y(d, 0.0);
  x[0] = -0.5;
  y[0] = 0.5;
  PairRegion region(family, d);
  region.reset(x, y);
  return mc_volume([&](PointView z) { return region.contains(z); }, normalized_bounding_box(family, d), n, seed);
}

GammaValue gamma(const RegionFamily& family, int d, std::int64_t mc_samples) {
  if (d < 2) throw std::domain_error("gamma: d must be at least 2");
  family.check_dimension(d);
  switch (family.kind()) {
    case RegionKind::Gabriel: return {kappa(d) / std::pow(2.0, d), 0.0, GammaMethod::ClosedForm};
    case RegionKind::Mastercard: return {kappa(d) + kappa(d - 1), 0.0, GammaMethod::ClosedForm};
    case RegionKind::GeneralGabriel: return {family.body()->volume(), 0.0, GammaMethod::ClosedForm};
    default: break;
  }
  static std::mutex mutex;
  static std::map<std::string, GammaValue> cache;
  const std::string key = family.to_json().dump() + "|" + std::to_string(d) + "|" + std::to_string(mc_samples);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const MCEstimate est = gamma_monte_carlo(family, d, mc_samples, derive_seed(0x6A6D6D61ULL, {fnv1a(key)}));
  GammaValue g{est.value, est.std_error, GammaMethod::MonteCarlo};
  std::lock_guard lock(mutex);
  cache.emplace(key, g);
  return g;
}

double alpha_safe(const RegionFamily& family) {
  switch (family.kind()) {
    case RegionKind::Gabriel: return 0.5;
    case RegionKind::StrongNN: return 1.5;
    case RegionKind::RelativeNbhd: return std::sqrt(3.0) / 2.0;
    case RegionKind::BetaSkeleton: return (2.0 * family.beta() - 1.0) / 2.0;
    case RegionKind::Mastercard: return 1.5;
    case RegionKind::Pacman: return 1.5;
    case RegionKind::TruncatedSlab: return std::sqrt(15.0) / 2.0;
    case RegionKind::GeneralGabriel: return family.body()->bounding_radius();
  }
  return 0.0;
}

double alpha_effective(const RegionFamily& family) { return std::max(alpha_safe(family), 0.5 + 1e-6); }

AlphaInfo alpha(const RegionFamily& family, int d, std::int64_t n, std::uint64_t seed) {
  family.check_dimension(d);
  Point x(d, 0.0), y(d, 0.0);
  x[0] = -0.5;
  y[0] = 0.5;
  PairRegion region(family, d);
  region.reset(x, y);
  const Box box = normalized_bounding_box(family, d);
  Rng rng(seed);
  Point z(d);
  double best = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    for (int i = 0; i < d; ++i) z[i] = box.lower[i] + box.side(i) * rng.uniform();
    if (region.contains(z)) best = std::max(best, norm(z));
  }
  return {alpha_safe(family), MCEstimate{best, 0.0, n}};
}

Ball bounding_ball(const RegionFamily& family, PointView x, PointView y) {
  const double r = distance(x, y);
  if (!(r > 0.0)) throw std::domain_error("bounding_ball: x == y");
  return {midpoint(x, y), alpha_safe(family) * r};
}

Ball inner_ball(const RegionFamily& family, int d, std::int64_t validation_samples) {
  family.check_dimension(d);
  Ball ball{Point(d, 0.0), 0.5};
  switch (family.kind()) {
    case RegionKind::Gabriel:
    case RegionKind::RelativeNbhd:
    case RegionKind::BetaSkeleton:
    case RegionKind::TruncatedSlab:
      break;
    case RegionKind::StrongNN: ball.radius = std::sqrt(3.0) / 2.0; break;
    case RegionKind::Mastercard: ball.radius = 1.0; break;
    case RegionKind::Pacman: ball.radius = family.polygon()->inner_radius() * (1.0 - 1e-9); break;
    case RegionKind::GeneralGabriel:
      ball.center = family.body()->inner_center();
      ball.radius = family.body()->inner_radius();
      break;
  }
  Point x(d, 0.0), y(d, 0.0);
  x[0] = -0.5;
  y[0] = 0.5;
  PairRegion region(family, d);
  region.reset(x, y);
  Rng rng(derive_seed(0x1BBA11ULL, {static_cast<std::uint64_t>(d)}));
  Point z(d);
  for (std::int64_t k = 0; k < validation_samples; ++k) {
    const Point v = random_in_ball(rng, d, ball.radius);
    for (int i = 0; i < d; ++i) z[i] = ball.center[i] + v[i];
    if (!region.contains(z)) throw std::runtime_error("inner ball not contained");
  }
  return ball;
}

}  // namespace erg
