#include "d2d/auction.hpp"

#include <algorithm>
#include <stdexcept>

namespace d2d {

namespace {

// Package with one extra member, kept sorted.
std::vector<int> with_member(const std::vector<int>& package, int d) {
  std::vector<int> out = package;
  out.insert(std::upper_bound(out.begin(), out.end(), d), d);
  return out;
}

std::vector<int> without_member(const std::vector<int>& package, int d) {
  std::vector<int> out = package;
  out.erase(std::remove(out.begin(), out.end(), d), out.end());
  return out;
}

}  // namespace

double Allocation::total_utility() const {
  double total = 0.0;
  for (const auto& ch : channels) total += ch.utility;
  return total;
}

int Allocation::channel_of(int d) const {
  for (int k = 0; k < num_channels(); ++k) {
    const auto& pkg = channels[k].package;
    if (std::binary_search(pkg.begin(), pkg.end(), d)) return k;
  }
  return -1;
}

bool Allocation::partition_valid(bool require_coverage) const {
  std::vector<int> seen(num_d2d, 0);
  for (const auto& ch : channels) {
    for (int d : ch.package) {
      if (d < 0 || d >= num_d2d) return false;
      if (++seen[d] > 1) return false;  // pair in two packages
    }
  }
  if (require_coverage) {
    for (int count : seen) {
      if (count != 1) return false;
    }
  }
  return true;
}

std::pair<double, EquilibriumResult> EquilibriumEvaluator::value_of(
    int k, std::span<const int> package) const {
  const ChannelGame game = ChannelGame::on_channel(*gains_, k, package);
  EquilibriumResult eq = solve_equilibrium(game, *params_, stats_);
  double total = 0.0;
  for (double u : eq.utilities) total += u;
  return {total, std::move(eq)};
}

FixedPowerEvaluator::FixedPowerEvaluator(const GainTable& gains, const GameParams& params,
                                         double fixed_power_w, SolveStats* stats)
    : gains_(&gains), params_(&params), fixed_power_w_(fixed_power_w), stats_(stats) {
  if (fixed_power_w <= 0.0 || fixed_power_w > params.max_tx_power_w) {
    throw std::invalid_argument("fixed_power_w must be in (0, max_tx_power_w]");
  }
}

std::pair<double, EquilibriumResult> FixedPowerEvaluator::value_of(
    int k, std::span<const int> package) const {
  const ChannelGame game = ChannelGame::on_channel(*gains_, k, package);
  const int n = game.size();
  EquilibriumResult eq;
  eq.power.assign(n, fixed_power_w_);
  eq.converged = true;
  eq.iterations = 0;
  eq.uniqueness_condition_holds = true;  // vacuous: no game is played
  eq.utilities.resize(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    eq.utilities[i] =
        utility_bits(fixed_power_w_, channel_quality(game, i, eq.power), *params_, game.bandwidth_hz);
    total += eq.utilities[i];
  }
  if (stats_) ++stats_->solves;
  return {total, std::move(eq)};
}

std::pair<double, EquilibriumResult> combinatorial_utility(int k, std::span<const int> package,
                                                           const GainTable& gains,
                                                           const GameParams& params,
                                                           SolveStats* stats) {
  return EquilibriumEvaluator(gains, params, stats).value_of(k, package);
}

BidMatrix compute_bids(const Allocation& state, const std::vector<bool>& assigned,
                       const ChannelEvaluator& evaluator) {
  const int K = evaluator.num_channels();
  const int D = evaluator.num_bidders();
  BidMatrix m;
  m.num_channels = K;
  m.num_bidders = D;
  m.bids.assign(static_cast<std::size_t>(K) * D, BidMatrix::kMaskedBid);
  m.candidate_utility.assign(static_cast<std::size_t>(K) * D, 0.0);
  m.candidate_eq.resize(static_cast<std::size_t>(K) * D);
  m.baseline.resize(K);
  for (int k = 0; k < K; ++k) {
    m.baseline[k] = state.channels[k].utility;
  }
  for (int k = 0; k < K; ++k) {
    for (int d = 0; d < D; ++d) {
      if (assigned[d]) continue;
      const std::size_t idx = static_cast<std::size_t>(k) * D + d;
      auto [value, eq] = evaluator.value_of(k, with_member(state.channels[k].package, d));
      m.candidate_utility[idx] = value;
      m.candidate_eq[idx] = std::move(eq);
      m.bids[idx] = value - m.baseline[k];
    }
  }
  return m;
}

Allocation round_one(const ChannelEvaluator& evaluator) {
  const int K = evaluator.num_channels();
  const int D = evaluator.num_bidders();
  if (K < 1) throw std::invalid_argument("round_one: need at least one channel");

  Allocation state;
  state.num_d2d = D;
  state.channels.resize(K);
  for (int k = 0; k < K; ++k) {
    auto [value, eq] = evaluator.value_of(k, {});
    state.channels[k].utility = value;
    state.channels[k].equilibrium = std::move(eq);
  }
  if (D == 0) return state;

  std::vector<bool> assigned(D, false);
  BidMatrix bids = compute_bids(state, assigned, evaluator);

  for (int step = 0; step < D; ++step) {
    // Highest bid wins; ties go to the lowest channel, then lowest bidder.
    int best_k = -1, best_d = -1;
    double best = BidMatrix::kMaskedBid;
    for (int k = 0; k < K; ++k) {
      for (int d = 0; d < D; ++d) {
        if (assigned[d]) continue;
        const double b = bids.bid(k, d);
        if (b > best) {
          best = b;
          best_k = k;
          best_d = d;
        }
      }
    }
    const std::size_t idx = static_cast<std::size_t>(best_k) * D + best_d;
    auto& channel = state.channels[best_k];
    channel.package = with_member(channel.package, best_d);
    channel.utility = bids.candidate_utility[idx];
    channel.equilibrium = bids.candidate_eq[idx];
    assigned[best_d] = true;
    bids.baseline[best_k] = channel.utility;
    // Only the sold channel's valuations changed; refresh its row.
    for (int d = 0; d < D; ++d) {
      const std::size_t row_idx = static_cast<std::size_t>(best_k) * D + d;
      if (assigned[d]) {
        bids.bids[row_idx] = BidMatrix::kMaskedBid;
        continue;
      }
      auto [value, eq] = evaluator.value_of(best_k, with_member(channel.package, d));
      bids.candidate_utility[row_idx] = value;
      bids.candidate_eq[row_idx] = std::move(eq);
      bids.bids[row_idx] = value - bids.baseline[best_k];
    }
    for (int k = 0; k < K; ++k) {
      bids.bids[static_cast<std::size_t>(k) * D + best_d] = BidMatrix::kMaskedBid;
    }
  }
  return state;
}

Allocation round_two(Allocation state, const ChannelEvaluator& evaluator,
                     const AuctionOptions& options, AuctionTrace* trace) {
  const int K = evaluator.num_channels();
  const int D = evaluator.num_bidders();
  std::vector<bool> adjusted(D, false);

  for (;;) {
    // Candidate to kick: the never-adjusted pair whose removal gains the most.
    int kick_d = -1, origin_k = -1;
    double removal_gain = -std::numeric_limits<double>::infinity();
    double origin_utility = 0.0;
    EquilibriumResult origin_eq;
    for (int d = 0; d < D; ++d) {
      if (adjusted[d]) continue;
      const int k = state.channel_of(d);
      auto [value, eq] = evaluator.value_of(k, without_member(state.channels[k].package, d));
      const double gain = value - state.channels[k].utility;
      if (gain > removal_gain) {
        removal_gain = gain;
        kick_d = d;
        origin_k = k;
        origin_utility = value;
        origin_eq = std::move(eq);
      }
    }
    if (kick_d < 0) break;  // every pair has had its adjustment
    adjusted[kick_d] = true;
    if (trace) trace->adjustment_order.push_back(kick_d);

    // Rebid on every channel except the origin.
    int dest_k = -1;
    double insertion_gain = -std::numeric_limits<double>::infinity();
    double dest_utility = 0.0;
    EquilibriumResult dest_eq;
    for (int k = 0; k < K; ++k) {
      if (k == origin_k) continue;
      auto [value, eq] = evaluator.value_of(k, with_member(state.channels[k].package, kick_d));
      const double gain = value - state.channels[k].utility;
      if (gain > insertion_gain) {
        insertion_gain = gain;
        dest_k = k;
        dest_utility = value;
        dest_eq = std::move(eq);
      }
    }

    if (dest_k >= 0 && removal_gain + insertion_gain > 0.0) {
      auto& origin = state.channels[origin_k];
      origin.package = without_member(origin.package, kick_d);
      origin.utility = origin_utility;
      origin.equilibrium = std::move(origin_eq);
      auto& dest = state.channels[dest_k];
      dest.package = with_member(dest.package, kick_d);
      dest.utility = dest_utility;
      dest.equilibrium = std::move(dest_eq);
      if (trace) trace->utility_after_move.push_back(state.total_utility());
    } else if (!options.continue_after_rejected_move) {
      break;
    }
  }
  return state;
}

Allocation allocate_with(const ChannelEvaluator& evaluator, const AuctionOptions& options,
                         AuctionTrace* trace) {
  return round_two(round_one(evaluator), evaluator, options, trace);
}

Allocation allocate(const GainTable& gains, const GameParams& params, SolveStats* stats,
                    const AuctionOptions& options, AuctionTrace* trace) {
  const EquilibriumEvaluator evaluator(gains, params, stats);
  return allocate_with(evaluator, options, trace);
}

}  // namespace d2d
