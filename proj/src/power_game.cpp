#include "d2d/power_game.hpp"

#include <cmath>
#include <stdexcept>

namespace d2d {

namespace {

// Bisection width. Tight enough that the residual at the returned root stays
// below 1e-9 even when the residual's slope is ~1e4 per watt.
constexpr double kRootToleranceW = 1e-14;

constexpr double kBracketCeilingW = 1e9;

// Powers below this are reported as zero. Unreachable for interior optima,
// which are bounded away from zero by the circuit power term.
constexpr double kReportFloorW = 1e-12;

// Root of the residual inside [lo, hi], requiring residual(lo) > 0 >= residual(hi).
double bisect_residual(double lo, double hi, double alpha, const GameParams& params) {
  while (hi - lo > kRootToleranceW) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
    if (best_response_residual(mid, alpha, params) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Best response with a caller-supplied lower bracket. Passing the player's
// previous power keeps the iterate sequence exactly non-decreasing: responses
// only grow with interference, so the previous response is a valid lower
// bound up to root tolerance, and we clamp to it when bisection noise would
// dip below.
double best_response_from(const ChannelGame& game, int i, const PowerVector& power,
                          const GameParams& params, double lower_start) {
  const double alpha = channel_quality(game, i, power);
  if (best_response_residual(params.max_tx_power_w, alpha, params) >= 0.0) {
    return params.max_tx_power_w;  // optimum at or beyond the cap
  }
  if (lower_start > 0.0 && best_response_residual(lower_start, alpha, params) <= 0.0) {
    return lower_start;
  }
  return bisect_residual(lower_start, params.max_tx_power_w, alpha, params);
}

}  // namespace

ChannelGame ChannelGame::on_channel(const GainTable& gains, int k, std::span<const int> package) {
  const int n = 1 + static_cast<int>(package.size());
  ChannelGame game;
  game.sigma2_w = gains.sigma2_w;
  game.bandwidth_hz = gains.bandwidth_hz;
  game.direct_gain.resize(n);
  game.cross_gain.assign(static_cast<std::size_t>(n) * n, 0.0);

  game.direct_gain[0] = gains.cell_to_enb[k];
  for (int i = 1; i < n; ++i) {
    const int d = package[i - 1];
    game.direct_gain[i] = gains.intra_pair[d];
    game.cross_gain[static_cast<std::size_t>(i) * n + 0] = gains.d2d_to_enb[d];
    game.cross_gain[static_cast<std::size_t>(0) * n + i] = gains.cell_to_rx_gain(k, d);
    for (int j = 1; j < n; ++j) {
      if (j == i) continue;
      game.cross_gain[static_cast<std::size_t>(j) * n + i] = gains.d2d_to_rx_gain(package[j - 1], d);
    }
  }
  return game;
}

double interference_at(const ChannelGame& game, int i, const PowerVector& power) {
  double total = 0.0;
  for (int j = 0; j < game.size(); ++j) {
    if (j == i) continue;
    total += power[j] * game.cross(j, i);
  }
  return total;
}

double channel_quality(const ChannelGame& game, int i, const PowerVector& power) {
  return game.direct_gain[i] / (interference_at(game, i, power) + game.sigma2_w);
}

double rate_bps(double power_w, double channel_quality, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + power_w * channel_quality);
}

double lifetime_s(double power_w, const GameParams& params) {
  // Capacity in A*h against discharge current in A gives hours.
  const double current_a = (power_w + params.circuit_power_w) / params.operating_voltage_v;
  const double hours = params.battery_capacity_ah / std::pow(current_a, params.peukert_exponent);
  return 3600.0 * hours;
}

double utility_bits(double power_w, double channel_quality, const GameParams& params,
                    double bandwidth_hz) {
  return rate_bps(power_w, channel_quality, bandwidth_hz) * lifetime_s(power_w, params);
}

double best_response_residual(double power_w, double channel_quality, const GameParams& params) {
  const double pa = power_w * channel_quality;
  return (power_w + params.circuit_power_w) * channel_quality / (1.0 + pa) -
         params.peukert_exponent * std::log1p(pa);
}

double unconstrained_optimal_power(double channel_quality, const GameParams& params) {
  double hi = params.max_tx_power_w;
  while (best_response_residual(hi, channel_quality, params) > 0.0) {
    hi *= 2.0;
    if (hi > kBracketCeilingW) {
      throw std::runtime_error("unconstrained_optimal_power: no sign change found");
    }
  }
  return bisect_residual(0.0, hi, channel_quality, params);
}

double best_response(const ChannelGame& game, int i, const PowerVector& power,
                     const GameParams& params) {
  return best_response_from(game, i, power, params, 0.0);
}

EquilibriumResult solve_equilibrium(const ChannelGame& game, const GameParams& params,
                                    SolveStats* stats, std::vector<PowerVector>* trace) {
  const int n = game.size();
  if (n < 1) throw std::invalid_argument("solve_equilibrium: game has no players");

  PowerVector power(n, 0.0);
  PowerVector next(n, 0.0);
  if (trace) {
    trace->clear();
    trace->push_back(power);
  }

  bool converged = false;
  int iterations = 0;
  while (iterations < params.max_iters) {
    ++iterations;
    double max_delta = 0.0;
    for (int i = 0; i < n; ++i) {
      next[i] = best_response_from(game, i, power, params, power[i]);
      max_delta = std::max(max_delta, std::abs(next[i] - power[i]));
    }
    power = next;
    if (trace) trace->push_back(power);
    if (max_delta < params.epsilon_w) {
      converged = true;
      break;
    }
  }

  EquilibriumResult result;
  result.power = power;
  result.iterations = iterations;
  result.converged = converged;
  result.utilities.resize(n);
  for (int i = 0; i < n; ++i) {
    result.utilities[i] = utility_bits(power[i], channel_quality(game, i, power), params,
                                       game.bandwidth_hz);
  }
  result.uniqueness_condition_holds = converged && uniqueness_condition_holds(game, params, power);
  for (double& p : result.power) {
    if (p < kReportFloorW) p = 0.0;
  }
  if (stats) {
    ++stats->solves;
    stats->iterations += iterations;
    if (!converged) ++stats->nonconverged;
  }
  return result;
}

bool uniqueness_condition_holds(const ChannelGame& game, const GameParams& params,
                                const PowerVector& power) {
  for (int i = 0; i < game.size(); ++i) {
    const double interference = interference_at(game, i, power);
    const double alpha = game.direct_gain[i] / (interference + game.sigma2_w);
    const double optimum = unconstrained_optimal_power(alpha, params);
    const double margin = params.circuit_power_w * optimum +
                          (interference - game.sigma2_w) / game.direct_gain[i];
    if (margin <= 0.0) return false;
  }
  return true;
}

}  // namespace d2d
