#pragma once

#include <span>
#include <vector>

#include "d2d/channel_model.hpp"
#include "d2d/types.hpp"

namespace d2d {

using PowerVector = std::vector<double>;

/// Non-cooperative power control game on one uplink channel. Player 0 is the
/// cellular UE (its receiver is the eNB); players 1..N-1 are the D2D pairs
/// sharing the channel (each receiver is the pair's own receiving UE).
struct ChannelGame {
  std::vector<double> direct_gain;  ///< transmitter i -> receiver of i
  std::vector<double> cross_gain;   ///< N x N row-major: transmitter j -> receiver of i; diagonal unused
  double sigma2_w = 0.0;
  double bandwidth_hz = 0.0;

  int size() const { return static_cast<int>(direct_gain.size()); }
  double cross(int tx, int rx) const { return cross_gain[static_cast<std::size_t>(tx) * size() + rx]; }

  /// Game for channel k shared with the given D2D pairs.
  static ChannelGame on_channel(const GainTable& gains, int k, std::span<const int> package);
};

struct EquilibriumResult {
  PowerVector power;
  std::vector<double> utilities;  ///< bits, evaluated at the final power vector
  int iterations = 0;
  bool converged = false;
  bool uniqueness_condition_holds = false;
};

/// Counters shared across equilibrium solves; used for complexity accounting.
struct SolveStats {
  long long solves = 0;
  long long iterations = 0;
  long long nonconverged = 0;
};

/// Total interference power at the receiver of player i.
double interference_at(const ChannelGame& game, int i, const PowerVector& power);

/// Effective channel quality alpha_i = g_ii / (I_i + sigma^2), in 1/W.
double channel_quality(const ChannelGame& game, int i, const PowerVector& power);

/// Shannon rate B * log2(1 + p * alpha) in bit/s.
double rate_bps(double power_w, double channel_quality, double bandwidth_hz);

/// Peukert battery lifetime in seconds at constant draw power_w + circuit power.
double lifetime_s(double power_w, const GameParams& params);

/// Expected data over the battery lifetime, in bits: rate * lifetime.
double utility_bits(double power_w, double channel_quality, const GameParams& params, double bandwidth_hz);

/// Stationarity residual of the utility in transmit power: positive below the
/// optimum, zero at it, negative above. Strictly decreasing for a > 1, with
/// residual(0) = p0 * alpha > 0, so the optimum is its unique positive root.
double best_response_residual(double power_w, double channel_quality, const GameParams& params);

/// Unique positive root of the residual, found by bracketed bisection. May
/// exceed max_tx_power_w; callers clamp.
double unconstrained_optimal_power(double channel_quality, const GameParams& params);

/// Utility-maximizing power for player i over [0, max_tx_power_w], holding the
/// other players' powers fixed.
double best_response(const ChannelGame& game, int i, const PowerVector& power, const GameParams& params);

/// Synchronous best-response iteration from the all-zero power vector. Stops
/// when every player's power moves by less than epsilon_w, or flags
/// non-convergence after max_iters sweeps. The iterate sequence is
/// componentwise non-decreasing. If trace is non-null it receives every
/// iterate including the starting point.
EquilibriumResult solve_equilibrium(const ChannelGame& game, const GameParams& params,
                                    SolveStats* stats = nullptr,
                                    std::vector<PowerVector>* trace = nullptr);

/// Sufficient condition for the equilibrium to be unique, checked at the given
/// power vector: p0 * p~_i + (I_i - sigma^2) / g_ii > 0 for every player.
/// Diagnostic only; nothing branches on it.
bool uniqueness_condition_holds(const ChannelGame& game, const GameParams& params,
                                const PowerVector& power);

}  // namespace d2d
