#pragma once

#include "d2d/auction.hpp"

namespace d2d {

/// Which gain the greedy heuristic minimizes when picking the pair for a
/// channel. Interference to the eNB is the default; the intra-pair variant is
/// kept selectable because the heuristic's source description is ambiguous.
enum class GreedyMetric { d2d_to_enb, intra_pair };

struct GreedyOptions {
  GreedyMetric metric = GreedyMetric::d2d_to_enb;

  bool operator==(const GreedyOptions&) const = default;
};

/// Greedy channel allocator: channels are served in decreasing order of
/// cellular uplink SNR (at max transmit power); each served channel takes the
/// unallocated pair with the smallest metric gain. When a pass over the
/// channels ends with pairs left over, the queue refills in the same order.
/// Every assignment re-solves the power game on the touched channel.
Allocation greedy_allocate(const GainTable& gains, const GameParams& params,
                           SolveStats* stats = nullptr, const GreedyOptions& options = {});

/// The two-round combinatorial auction valued at a constant transmit power for
/// every UE instead of a power-game equilibrium.
Allocation ca_fixed_power_allocate(const GainTable& gains, const GameParams& params,
                                   double fixed_power_w, SolveStats* stats = nullptr,
                                   const AuctionOptions& options = {});

}  // namespace d2d
