#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "d2d/channel_model.hpp"
#include "d2d/power_game.hpp"
#include "d2d/types.hpp"

namespace d2d {

/// One channel's share of an allocation: the D2D pairs riding on it (sorted
/// ascending), the combinatorial utility of the whole co-channel group, and
/// the power-control outcome it was valued at.
struct ChannelAllocation {
  std::vector<int> package;
  double utility = 0.0;
  EquilibriumResult equilibrium;
};

struct Allocation {
  std::vector<ChannelAllocation> channels;
  int num_d2d = 0;

  int num_channels() const { return static_cast<int>(channels.size()); }
  double total_utility() const;
  /// Channel currently holding pair d, or -1.
  int channel_of(int d) const;
  /// Packages pairwise disjoint; with require_coverage, every pair is placed.
  bool partition_valid(bool require_coverage) const;
};

/// Valuation strategy for a channel/package pair. The combinatorial auction is
/// written against this so the same rounds run with equilibrium-based or
/// fixed-power valuations.
class ChannelEvaluator {
 public:
  virtual ~ChannelEvaluator() = default;
  virtual int num_channels() const = 0;
  virtual int num_bidders() const = 0;
  /// Combinatorial utility of channel k carrying the given package, plus the
  /// per-player outcome behind it.
  virtual std::pair<double, EquilibriumResult> value_of(int k, std::span<const int> package) const = 0;
};

/// Values a package at the Nash equilibrium of its power game.
class EquilibriumEvaluator final : public ChannelEvaluator {
 public:
  EquilibriumEvaluator(const GainTable& gains, const GameParams& params, SolveStats* stats = nullptr)
      : gains_(&gains), params_(&params), stats_(stats) {}

  int num_channels() const override { return gains_->num_cellular; }
  int num_bidders() const override { return gains_->num_d2d; }
  std::pair<double, EquilibriumResult> value_of(int k, std::span<const int> package) const override;

 private:
  const GainTable* gains_;
  const GameParams* params_;
  SolveStats* stats_;
};

/// Values a package with every player transmitting the same fixed power.
class FixedPowerEvaluator final : public ChannelEvaluator {
 public:
  FixedPowerEvaluator(const GainTable& gains, const GameParams& params, double fixed_power_w,
                      SolveStats* stats = nullptr);

  int num_channels() const override { return gains_->num_cellular; }
  int num_bidders() const override { return gains_->num_d2d; }
  std::pair<double, EquilibriumResult> value_of(int k, std::span<const int> package) const override;

 private:
  const GainTable* gains_;
  const GameParams* params_;
  double fixed_power_w_;
  SolveStats* stats_;
};

/// Marginal-utility bids of the unassigned bidders. Masked entries can never
/// win; real bids may be negative since every pair must end up on a channel.
struct BidMatrix {
  int num_channels = 0;
  int num_bidders = 0;
  std::vector<double> bids;                       ///< K x D row-major
  std::vector<double> candidate_utility;          ///< K x D: utility of package + bidder
  std::vector<EquilibriumResult> candidate_eq;    ///< K x D cache of candidate outcomes
  std::vector<double> baseline;                   ///< K: current package utilities

  double bid(int k, int d) const { return bids[static_cast<std::size_t>(k) * num_bidders + d]; }
  bool masked(int k, int d) const { return bid(k, d) == kMaskedBid; }

  static constexpr double kMaskedBid = -std::numeric_limits<double>::infinity();
};

struct AuctionOptions {
  /// Keep scanning the remaining never-adjusted pairs after a rejected move
  /// instead of stopping the second round. Off by default.
  bool continue_after_rejected_move = false;

  bool operator==(const AuctionOptions&) const = default;
};

/// Second-round bookkeeping for tests: running total utility after each
/// accepted move, and the order pairs were picked for adjustment.
struct AuctionTrace {
  std::vector<double> utility_after_move;
  std::vector<int> adjustment_order;
};

/// Combinatorial utility of channel k with the given package at equilibrium:
/// the cellular UE's utility plus every package member's.
std::pair<double, EquilibriumResult> combinatorial_utility(int k, std::span<const int> package,
                                                           const GainTable& gains,
                                                           const GameParams& params,
                                                           SolveStats* stats = nullptr);

/// Bids for every unassigned bidder on every channel against the current
/// allocation: bid(k, d) = U_k(package + d) - U_k(package).
BidMatrix compute_bids(const Allocation& state, const std::vector<bool>& assigned,
                       const ChannelEvaluator& evaluator);

/// First round: repeatedly award the highest bid, mask the winner's column,
/// and refresh the sold channel's bids, until every bidder holds a channel.
Allocation round_one(const ChannelEvaluator& evaluator);

/// Second round: kick-and-rebid adjustment. Each never-adjusted pair is
/// scored by its removal gain; the best one is moved to the channel with the
/// largest insertion gain if the combined gain is positive, else the round
/// ends. Every pair is adjusted at most once.
Allocation round_two(Allocation state, const ChannelEvaluator& evaluator,
                     const AuctionOptions& options = {}, AuctionTrace* trace = nullptr);

/// Both rounds against the given evaluator.
Allocation allocate_with(const ChannelEvaluator& evaluator, const AuctionOptions& options = {},
                         AuctionTrace* trace = nullptr);

/// Joint channel and power allocation: two-round combinatorial auction with
/// equilibrium-valued packages.
Allocation allocate(const GainTable& gains, const GameParams& params, SolveStats* stats = nullptr,
                    const AuctionOptions& options = {}, AuctionTrace* trace = nullptr);

}  // namespace d2d
