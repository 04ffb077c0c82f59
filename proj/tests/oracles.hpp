// Test-only reference implementations, written directly from the underlying
// formulas and kept independent of the library code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "d2d/auction.hpp"
#include "d2d/channel_model.hpp"
#include "d2d/power_game.hpp"
#include "d2d/rng.hpp"
#include "d2d/types.hpp"

namespace oracle {

inline double lifetime_s(double p, const d2d::GameParams& gp) {
  return 3600.0 * gp.battery_capacity_ah /
         std::pow((p + gp.circuit_power_w) / gp.operating_voltage_v, gp.peukert_exponent);
}

inline double rate_bps(double p, double alpha, double bw) {
  return bw * std::log(1.0 + p * alpha) / std::log(2.0);
}

inline double utility_bits(double p, double alpha, const d2d::GameParams& gp, double bw) {
  return oracle::rate_bps(p, alpha, bw) * oracle::lifetime_s(p, gp);
}

inline double residual(double p, double alpha, const d2d::GameParams& gp) {
  return (p + gp.circuit_power_w) * alpha / (1.0 + p * alpha) -
         gp.peukert_exponent * std::log(1.0 + p * alpha);
}

/// Textbook bisection for the residual's positive root.
inline double root_by_bisection(double alpha, const d2d::GameParams& gp, double tol = 1e-9) {
  double lo = 0.0, hi = 1.0;
  while (residual(hi, alpha, gp) > 0.0) hi *= 2.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid, alpha, gp) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Argmax of the utility over an n-point grid on [0, p_max].
inline std::pair<double, double> grid_max_utility(double alpha, const d2d::GameParams& gp,
                                                  double bw, int n) {
  double best_p = 0.0, best_u = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = gp.max_tx_power_w * static_cast<double>(i) / (n - 1);
    const double u = oracle::utility_bits(p, alpha, gp, bw);
    if (u > best_u) {
      best_u = u;
      best_p = p;
    }
  }
  return {best_p, best_u};
}

/// Interference and channel quality recomputed from first principles.
inline double game_alpha(const d2d::ChannelGame& g, int i, const std::vector<double>& p) {
  double interference = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    if (j != i) interference += p[j] * g.cross(j, i);
  }
  return g.direct_gain[i] / (interference + g.sigma2_w);
}

/// Alternating best-response equilibrium where each response is an exhaustive
/// scan of a fixed power grid (step-sized, includes p_max).
inline std::vector<double> grid_equilibrium(const d2d::ChannelGame& g, const d2d::GameParams& gp,
                                            double step, int max_sweeps = 500) {
  const int n = g.size();
  const int points = static_cast<int>(std::floor(gp.max_tx_power_w / step)) + 1;
  std::vector<double> p(n, 0.0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      const double alpha = game_alpha(g, i, p);
      double best_p = 0.0, best_u = 0.0;
      for (int t = 0; t < points; ++t) {
        const double cand = std::min(t * step, gp.max_tx_power_w);
        const double u = oracle::utility_bits(cand, alpha, gp, g.bandwidth_hz);
        if (u > best_u) {
          best_u = u;
          best_p = cand;
        }
      }
      if (best_p != p[i]) changed = true;
      p[i] = best_p;
    }
    if (!changed) break;
  }
  return p;
}

/// Optimal winner determination by enumerating every pair-to-channel
/// assignment, with per-(channel, package) valuations memoized.
inline double exhaustive_wdp(const d2d::ChannelEvaluator& evaluator) {
  const int K = evaluator.num_channels();
  const int D = evaluator.num_bidders();
  std::map<std::pair<int, std::uint32_t>, double> memo;
  const auto value = [&](int k, std::uint32_t mask) {
    const auto key = std::make_pair(k, mask);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<int> package;
    for (int d = 0; d < D; ++d) {
      if (mask & (1u << d)) package.push_back(d);
    }
    const double v = evaluator.value_of(k, package).first;
    memo.emplace(key, v);
    return v;
  };

  std::vector<int> assign(D, 0);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    std::vector<std::uint32_t> masks(K, 0);
    for (int d = 0; d < D; ++d) masks[assign[d]] |= 1u << d;
    double total = 0.0;
    for (int k = 0; k < K; ++k) total += value(k, masks[k]);
    best = std::max(best, total);
    int pos = 0;
    while (pos < D && ++assign[pos] == K) assign[pos++] = 0;
    if (pos == D) break;
  }
  return best;
}

/// Library-driven random instance helper (not an oracle; shared fixture).
inline d2d::GainTable make_gains(std::uint64_t seed, int num_cellular, int num_d2d,
                                 double distance_ratio = 0.1) {
  d2d::CellConfig cell;
  cell.num_cellular = num_cellular;
  cell.num_d2d = num_d2d;
  cell.max_d2d_distance_m = distance_ratio * cell.cell_radius_m;
  cell.rng_seed = seed;
  d2d::Rng rng(seed);
  const d2d::Topology topo = d2d::generate_topology(cell, rng);
  return d2d::compute_gains(topo, cell, rng);
}

/// Log-uniform channel quality draw covering noise-limited through
/// interference-limited regimes.
inline double random_alpha(d2d::Rng& rng, double lo = 1e2, double hi = 1e12) {
  return lo * std::pow(hi / lo, rng.uniform01());
}

/// Synthetic co-channel game with physically plausible gain scales.
inline d2d::ChannelGame random_game(d2d::Rng& rng, int players) {
  d2d::ChannelGame g;
  g.sigma2_w = 7.16593e-16;
  g.bandwidth_hz = 180e3;
  g.direct_gain.resize(players);
  g.cross_gain.assign(static_cast<std::size_t>(players) * players, 0.0);
  for (int i = 0; i < players; ++i) {
    g.direct_gain[i] = 1e-8 * std::pow(1e6, rng.uniform01());
    for (int j = 0; j < players; ++j) {
      if (j != i) {
        g.cross_gain[static_cast<std::size_t>(j) * players + i] = 1e-12 * std::pow(1e7, rng.uniform01());
      }
    }
  }
  return g;
}

}  // namespace oracle
