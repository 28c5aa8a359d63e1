#pragma once

// Replicated Poisson simulations feeding the extremes statistics. Shared by
// the command line tool and the acceptance harness.

#include <cstdint>
#include <optional>
#include <vector>

#include "erg/extremes.hpp"
#include "erg/graph.hpp"
#include "erg/regions.hpp"

namespace erg {

struct SimulationSetup {
  RegionFamily family;
  int d = 2;
  double t = 100.0;
  Box window;
  double s_max = kDefaultSMax;
  double gamma = 0.0;  // 0 selects gamma(family, d)
};

struct Replication {
  std::uint64_t seed = 0;
  std::size_t n_points = 0;
  double longest = kNoEdge;       // L_{t,W}
  std::vector<ExtremeMark> marks;  // xi_t restricted to W x [b, inf)
  int builds = 0;                  // graph builds needed to pin down L
};

/// One Poisson realisation on the padded box around W. Only edges with
/// transformed length >= b are materialised; when `want_longest` is set
/// and none has its midpoint in W, the floor is lowered until L_{t,W} is
/// determined (ending with the full truncated graph).
Replication simulate(const SimulationSetup& setup, double b, std::uint64_t seed, bool want_longest = true);

/// Seed of replication `rep` at intensity t.
std::uint64_t replication_seed(std::uint64_t master, double t, std::size_t rep);

/// Standard deviation of the Kolmogorov distribution divided by sqrt(n):
/// the null spread of sqrt(n) times the KS statistic.
double ks_null_stderr(std::size_t n);

/// 2^d congruent sub-boxes of W, in binary order of the lower/upper halves.
std::vector<Box> split_window(const Box& window);

}  // namespace erg
