#include "erg/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace erg {

double tau(double gamma, int d) {
  if (!(gamma > 0.0)) throw std::domain_error("tau: gamma must be positive");
  return std::log(kappa(d) / (2.0 * gamma));
}

double transform_length(double length, double t, double gamma, int d) {
  return gamma * t * std::pow(length, d) - std::log(t) - tau(gamma, d);
}

double threshold_length(double s, double t, double gamma, int d) {
  const double base = (std::log(t) + tau(gamma, d) + s) / (gamma * t);
  return std::pow(std::max(base, 0.0), 1.0 / d);
}

namespace {

bool window_covers(const std::optional<Box>& outer, const Box& inner) {
  if (!outer) return true;
  for (int a = 0; a < inner.dim(); ++a) {
    if (inner.lower[a] < outer->lower[a] || inner.upper[a] > outer->upper[a]) return false;
  }
  return true;
}

}  // namespace

std::vector<ExtremeMark> extract_xi(const Graph& g, const Box& window, double b, double t, double gamma, int d) {
  const double need = threshold_length(b, t, gamma, d);
  if (need > g.truncation_length) throw std::invalid_argument("threshold above truncation");
  if (g.min_length > need) throw std::invalid_argument("threshold below the graph's minimum edge length");
  if (!window_covers(g.midpoint_window, window)) {
    throw std::invalid_argument("window not covered by the graph's midpoint filter");
  }
  std::vector<ExtremeMark> marks;
  for (const Edge& e : g.edges) {
    if (!window.contains(e.midpoint)) continue;
    const double s = transform_length(e.length, t, gamma, d);
    if (s >= b) marks.push_back({e.midpoint, s, e.direction});
  }
  return marks;
}

double longest_edge(const Graph& g, const Box& window) {
  double best = kNoEdge;
  for (const Edge& e : g.edges) {
    if (e.length > best && window.contains(e.midpoint)) best = e.length;
  }
  return best;
}

double gumbel_cdf(double s, double vol_window) {
  if (vol_window == 0.0) return 1.0;
  return std::exp(-vol_window * std::exp(-s));
}

double gumbel_quantile(double p, double vol_window) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gumbel_quantile: p must lie in (0, 1)");
  return -std::log(-std::log(p) / vol_window);
}

double intensity_expected(double vol_a, double a, double nu_d, double t, double gamma, int d) {
  if (a > -std::log(t) - tau(gamma, d)) return vol_a * nu_d * std::exp(-a);
  return vol_a * nu_d * kappa(d) * t / (2.0 * gamma);
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("ks_distance: no samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    best = std::max({best, std::abs(static_cast<double>(i + 1) / n - f), std::abs(static_cast<double>(i) / n - f)});
  }
  return best;
}

double tv_to_poisson(std::span<const long long> values, double mean) {
  if (values.empty()) throw std::domain_error("tv_to_poisson: no values");
  std::map<long long, double> emp;
  for (long long v : values) emp[v] += 1.0;
  const double n = static_cast<double>(values.size());
  for (auto& [k, p] : emp) p /= n;

  auto pmf = [mean](long long k) {
    if (mean <= 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(-mean + static_cast<double>(k) * std::log(mean) - std::lgamma(static_cast<double>(k) + 1.0));
  };
  double sum = 0.0;
  double covered = 0.0;
  // Walk k upward until the Poisson tail is negligible and every observed
  // value has been matched.
  const long long k_obs = emp.rbegin()->first;
  for (long long k = 0;; ++k) {
    const double p = pmf(k);
    covered += p;
    const auto it = emp.find(k);
    sum += std::abs((it == emp.end() ? 0.0 : it->second) - p);
    if (k >= k_obs && (1.0 - covered < 1e-12 || (k > mean && p < 1e-12))) break;
  }
  for (const auto& [k, p] : emp) {
    if (k < 0) sum += p;
  }
  return 0.5 * sum;
}

CountReport count_statistics(const std::vector<std::vector<long long>>& counts,
                             std::span<const double> theoretical_means) {
  if (counts.size() < 2) throw std::invalid_argument("count_statistics: need at least two replications");
  const std::size_t cells = counts.front().size();
  if (cells == 0) throw std::invalid_argument("count_statistics: need at least one cell");
  if (theoretical_means.size() != cells) throw std::invalid_argument("count_statistics: one mean per cell");
  for (const auto& row : counts) {
    if (row.size() != cells) throw std::invalid_argument("count_statistics: ragged count matrix");
  }
  const double n = static_cast<double>(counts.size());
  CountReport rep;
  rep.cells.resize(cells);
  std::vector<double> mean(cells, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    double s = 0.0;
    for (const auto& row : counts) s += static_cast<double>(row[c]);
    mean[c] = s / n;
  }
  std::vector<std::vector<double>> cov(cells, std::vector<double>(cells, 0.0));
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = a; b < cells; ++b) {
      double s = 0.0;
      for (const auto& row : counts) s += (row[a] - mean[a]) * (row[b] - mean[b]);
      cov[a][b] = cov[b][a] = s / (n - 1.0);
    }
  }
  std::vector<long long> column(counts.size());
  for (std::size_t c = 0; c < cells; ++c) {
    CellCountStats& st = rep.cells[c];
    st.mean = mean[c];
    st.variance = cov[c][c];
    st.dispersion = mean[c] > 0.0 ? st.variance / mean[c] : std::numeric_limits<double>::quiet_NaN();
    st.theoretical_mean = theoretical_means[c];
    for (std::size_t r = 0; r < counts.size(); ++r) column[r] = counts[r][c];
    st.tv_poisson = tv_to_poisson(column, theoretical_means[c]);
  }
  rep.correlation.assign(cells, std::vector<double>(cells, 0.0));
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = 0; b < cells; ++b) {
      const double den = std::sqrt(cov[a][a] * cov[b][b]);
      rep.correlation[a][b] = den > 0.0 ? cov[a][b] / den : std::numeric_limits<double>::quiet_NaN();
      if (a != b && std::isfinite(rep.correlation[a][b])) {
        rep.max_abs_correlation = std::max(rep.max_abs_correlation, std::abs(rep.correlation[a][b]));
      }
    }
  }
  return rep;
}

double abs_coordinate_cdf(double x, int d) {
  if (d < 2) throw UnsupportedError("abs_coordinate_cdf: d must be at least 2");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (d == 2) return 2.0 / std::numbers::pi * std::asin(x);
  // X_1^2 ~ Beta(1/2, (d-1)/2).
  return boost::math::ibeta(0.5, 0.5 * (d - 1), x * x);
}

double direction_uniformity(std::span<const Direction> directions, int d) {
  if (d < 2) throw UnsupportedError("direction_uniformity: requires d >= 2");
  if (directions.empty()) throw std::domain_error("direction_uniformity: no directions");
  std::vector<double> v;
  v.reserve(directions.size());
  if (d == 2) {
    for (const Direction& u : directions) {
      double a = std::atan2(u.unit[1], u.unit[0]);
      if (a < 0.0) a += std::numbers::pi;
      if (a >= std::numbers::pi) a -= std::numbers::pi;
      v.push_back(a);
    }
    return ks_distance(v, [](double a) { return std::clamp(a / std::numbers::pi, 0.0, 1.0); });
  }
  for (const Direction& u : directions) v.push_back(std::abs(u.unit[0]));
  return ks_distance(v, [d](double x) { return abs_coordinate_cdf(x, d); });
}

}  // namespace erg
