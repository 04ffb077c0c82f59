#include "d2d/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace d2d {

Allocation greedy_allocate(const GainTable& gains, const GameParams& params, SolveStats* stats,
                           const GreedyOptions& options) {
  const int K = gains.num_cellular;
  const int D = gains.num_d2d;
  if (K < 1) throw std::invalid_argument("greedy_allocate: need at least one channel");

  const EquilibriumEvaluator evaluator(gains, params, stats);

  // Channel service order: decreasing uplink SNR, lowest index on ties.
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> snr(K);
  for (int k = 0; k < K; ++k) {
    snr[k] = params.max_tx_power_w * gains.cell_to_enb[k] / gains.sigma2_w;
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (snr[a] != snr[b]) return snr[a] > snr[b];
    return a < b;
  });

  Allocation state;
  state.num_d2d = D;
  state.channels.resize(K);

  const auto metric = [&](int d) {
    return options.metric == GreedyMetric::d2d_to_enb ? gains.d2d_to_enb[d] : gains.intra_pair[d];
  };

  std::vector<bool> assigned(D, false);
  int remaining = D;
  int cursor = 0;
  while (remaining > 0) {
    const int k = order[cursor % K];  // wraps around when pairs outnumber channels
    ++cursor;
    int best_d = -1;
    for (int d = 0; d < D; ++d) {
      if (assigned[d]) continue;
      if (best_d < 0 || metric(d) < metric(best_d)) best_d = d;
    }
    auto& channel = state.channels[k];
    channel.package.insert(
        std::upper_bound(channel.package.begin(), channel.package.end(), best_d), best_d);
    auto [value, eq] = evaluator.value_of(k, channel.package);
    channel.utility = value;
    channel.equilibrium = std::move(eq);
    assigned[best_d] = true;
    --remaining;
  }

  // Untouched channels still need their solo outcome.
  for (int k = 0; k < K; ++k) {
    if (!state.channels[k].package.empty()) continue;
    auto [value, eq] = evaluator.value_of(k, {});
    state.channels[k].utility = value;
    state.channels[k].equilibrium = std::move(eq);
  }
  return state;
}

Allocation ca_fixed_power_allocate(const GainTable& gains, const GameParams& params,
                                   double fixed_power_w, SolveStats* stats,
                                   const AuctionOptions& options) {
  const FixedPowerEvaluator evaluator(gains, params, fixed_power_w, stats);
  return allocate_with(evaluator, options);
}

}  // namespace d2d
