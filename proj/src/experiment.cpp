#include "erg/experiment.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace erg {

Replication simulate(const SimulationSetup& setup, double b, std::uint64_t seed, bool want_longest) {
  const int d = setup.d;
  const double g = setup.gamma > 0.0 ? setup.gamma : gamma(setup.family, d).value;
  const PaddedBox padded = padded_box(setup.window, setup.t, setup.family, d, setup.s_max);
  if (b > setup.s_max) throw std::invalid_argument("threshold above truncation");

  Replication rep;
  rep.seed = seed;
  const PointCloud points = sample_poisson({setup.t, padded.sim_box, seed});
  rep.n_points = points.size();

  BuildOptions options;
  options.truncation_length = padded.max_length;
  options.midpoint_window = setup.window;
  double floor = b;
  for (;;) {
    options.min_length = threshold_length(floor, setup.t, g, d);
    const Graph graph = build_grid(points, setup.family, options);
    ++rep.builds;
    rep.longest = longest_edge(graph, setup.window);
    if (rep.builds == 1) rep.marks = extract_xi(graph, setup.window, b, setup.t, g, d);
    if (!want_longest || rep.longest != kNoEdge || options.min_length == 0.0) break;
    floor -= 3.0;
  }
  return rep;
}

std::uint64_t replication_seed(std::uint64_t master, double t, std::size_t rep) {
  return derive_seed(master, {std::bit_cast<std::uint64_t>(t), static_cast<std::uint64_t>(rep)});
}

double ks_null_stderr(std::size_t n) {
  const double mean = std::sqrt(std::numbers::pi / 2.0) * std::numbers::ln2;
  const double var = std::numbers::pi * std::numbers::pi / 12.0 - mean * mean;
  return std::sqrt(var / static_cast<double>(n));
}

std::vector<Box> split_window(const Box& window) {
  const int d = window.dim();
  std::vector<Box> cells;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Point lo(d), hi(d);
    for (int a = 0; a < d; ++a) {
      const double mid = (window.lower[a] + window.upper[a]) / 2.0;
      if (mask & (1u << a)) {
        lo[a] = mid;
        hi[a] = window.upper[a];
      } else {
        lo[a] = window.lower[a];
        hi[a] = mid;
      }
    }
    cells.emplace_back(lo, hi);
  }
  return cells;
}

}  // namespace erg
