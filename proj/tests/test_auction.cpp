#include "d2d/auction.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace d2d;

namespace {

const GameParams kParams{};

// Independent reimplementation of the first round for trace checking: rebuild
// the whole bid matrix from scratch after every award instead of patching the
// sold channel's row.
Allocation reference_round_one(const ChannelEvaluator& ev) {
  const int K = ev.num_channels();
  const int D = ev.num_bidders();
  Allocation state;
  state.num_d2d = D;
  state.channels.resize(K);
  for (int k = 0; k < K; ++k) {
    auto [value, eq] = ev.value_of(k, {});
    state.channels[k].utility = value;
    state.channels[k].equilibrium = std::move(eq);
  }
  std::vector<bool> assigned(D, false);
  for (int step = 0; step < D; ++step) {
    int best_k = -1, best_d = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) {
      for (int d = 0; d < D; ++d) {
        if (assigned[d]) continue;
        std::vector<int> pkg = state.channels[k].package;
        pkg.insert(std::lower_bound(pkg.begin(), pkg.end(), d), d);
        const double bid = ev.value_of(k, pkg).first - state.channels[k].utility;
        if (bid > best) {
          best = bid;
          best_k = k;
          best_d = d;
        }
      }
    }
    auto& ch = state.channels[best_k];
    ch.package.insert(std::lower_bound(ch.package.begin(), ch.package.end(), best_d), best_d);
    auto [value, eq] = ev.value_of(best_k, ch.package);
    ch.utility = value;
    ch.equilibrium = std::move(eq);
    assigned[best_d] = true;
  }
  return state;
}

}  // namespace

TEST_CASE("combinatorial utility: empty package is the solo cellular outcome") {
  const GainTable gains = oracle::make_gains(50, 3, 2);
  const auto [value, eq] = combinatorial_utility(0, {}, gains, kParams);
  const ChannelGame solo = ChannelGame::on_channel(gains, 0, {});
  const EquilibriumResult ref = solve_equilibrium(solo, kParams);
  CHECK(eq.power.size() == 1);
  CHECK(value == doctest::Approx(ref.utilities[0]).epsilon(1e-12));
}

TEST_CASE("combinatorial utility: singleton package equals an independent re-solve") {
  const GainTable gains = oracle::make_gains(51, 3, 2);
  const std::vector<int> pkg{1};
  const auto [value, eq] = combinatorial_utility(2, pkg, gains, kParams);
  const EquilibriumResult ref = solve_equilibrium(ChannelGame::on_channel(gains, 2, pkg), kParams);
  REQUIRE(ref.converged);
  CHECK(value == doctest::Approx(ref.utilities[0] + ref.utilities[1]).epsilon(1e-12));
  CHECK(eq.power == ref.power);
}

TEST_CASE("combinatorial utility: interference makes packages sub-additive") {
  for (std::uint64_t seed : {60ull, 61ull, 62ull, 63ull, 64ull}) {
    const GainTable gains = oracle::make_gains(seed, 1, 2);
    const double both = combinatorial_utility(0, std::vector<int>{0, 1}, gains, kParams).first;
    const double first = combinatorial_utility(0, std::vector<int>{0}, gains, kParams).first;
    const auto second_alone = combinatorial_utility(0, std::vector<int>{1}, gains, kParams);
    const double u_second = second_alone.second.utilities[1];
    CHECK(both < first + u_second);
  }
}

TEST_CASE("bids: opening state prices the marginal gain over solo channels") {
  const GainTable gains = oracle::make_gains(52, 3, 2);
  const EquilibriumEvaluator ev(gains, kParams);
  Allocation state;
  state.num_d2d = 2;
  state.channels.resize(3);
  for (int k = 0; k < 3; ++k) {
    auto [value, eq] = ev.value_of(k, {});
    state.channels[k].utility = value;
    state.channels[k].equilibrium = std::move(eq);
  }
  const BidMatrix bids = compute_bids(state, {false, false}, ev);
  for (int k = 0; k < 3; ++k) {
    for (int d = 0; d < 2; ++d) {
      const double direct = combinatorial_utility(k, std::vector<int>{d}, gains, kParams).first -
                            state.channels[k].utility;
      CHECK(bids.bid(k, d) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("bids: an assigned bidder's column is masked out") {
  const GainTable gains = oracle::make_gains(53, 3, 2);
  const EquilibriumEvaluator ev(gains, kParams);
  Allocation state;
  state.num_d2d = 2;
  state.channels.resize(3);
  for (int k = 0; k < 3; ++k) {
    auto [value, eq] = ev.value_of(k, {});
    state.channels[k].utility = value;
    state.channels[k].equilibrium = std::move(eq);
  }
  const BidMatrix bids = compute_bids(state, {true, false}, ev);
  for (int k = 0; k < 3; ++k) {
    CHECK(bids.masked(k, 0));
    CHECK_FALSE(bids.masked(k, 1));
  }
}

TEST_CASE("round one: no bidders leaves every package empty") {
  const GainTable gains = oracle::make_gains(54, 4, 0);
  const EquilibriumEvaluator ev(gains, kParams);
  const Allocation state = round_one(ev);
  for (const auto& ch : state.channels) {
    CHECK(ch.package.empty());
    CHECK(ch.utility > 0.0);
  }
  CHECK(state.partition_valid(true));
}

TEST_CASE("round one: a single bidder lands on its best marginal channel") {
  for (std::uint64_t seed : {70ull, 71ull, 72ull}) {
    const GainTable gains = oracle::make_gains(seed, 5, 1);
    const EquilibriumEvaluator ev(gains, kParams);
    const Allocation state = round_one(ev);
    int chosen = state.channel_of(0);
    REQUIRE(chosen >= 0);
    double best_gain = -std::numeric_limits<double>::infinity();
    int best_k = -1;
    for (int k = 0; k < 5; ++k) {
      const double gain = combinatorial_utility(k, std::vector<int>{0}, gains, kParams).first -
                          combinatorial_utility(k, {}, gains, kParams).first;
      if (gain > best_gain) {
        best_gain = gain;
        best_k = k;
      }
    }
    CHECK(chosen == best_k);
  }
}

TEST_CASE("round one: matches a from-scratch greedy trace") {
  for (std::uint64_t seed : {80ull, 81ull, 82ull, 83ull}) {
    const GainTable gains = oracle::make_gains(seed, 3, 3);
    const EquilibriumEvaluator ev(gains, kParams);
    const Allocation mine = round_one(ev);
    const Allocation ref = reference_round_one(ev);
    for (int k = 0; k < 3; ++k) {
      CHECK(mine.channels[k].package == ref.channels[k].package);
      CHECK(mine.channels[k].utility == doctest::Approx(ref.channels[k].utility).epsilon(1e-12));
    }
    CHECK(mine.partition_valid(true));
  }
}

TEST_CASE("round two: single channel cannot move anything and stops at once") {
  const GainTable gains = oracle::make_gains(55, 1, 2);
  const EquilibriumEvaluator ev(gains, kParams);
  const Allocation before = round_one(ev);
  AuctionTrace trace;
  const Allocation after = round_two(before, ev, {}, &trace);
  CHECK(trace.utility_after_move.empty());
  CHECK(after.channels[0].package == before.channels[0].package);
  CHECK(after.channels[0].utility == before.channels[0].utility);
}

TEST_CASE("round two: every accepted move strictly raises the total utility") {
  for (std::uint64_t seed : {90ull, 91ull, 92ull, 93ull, 94ull}) {
    const GainTable gains = oracle::make_gains(seed, 4, 4);
    const EquilibriumEvaluator ev(gains, kParams);
    const Allocation first = round_one(ev);
    AuctionTrace trace;
    const Allocation second = round_two(first, ev, {}, &trace);
    CHECK(second.partition_valid(true));
    double prev = first.total_utility();
    for (double total : trace.utility_after_move) {
      CHECK(total > prev);
      prev = total;
    }
    CHECK(second.total_utility() >= first.total_utility());
  }
}

TEST_CASE("round two: no pair is adjusted twice") {
  for (std::uint64_t seed : {95ull, 96ull, 97ull}) {
    const GainTable gains = oracle::make_gains(seed, 4, 4);
    const EquilibriumEvaluator ev(gains, kParams);
    AuctionTrace trace;
    round_two(round_one(ev), ev, {}, &trace);
    std::vector<int> order = trace.adjustment_order;
    std::sort(order.begin(), order.end());
    CHECK(std::adjacent_find(order.begin(), order.end()) == order.end());
    CHECK(order.size() <= 4);
  }
}

TEST_CASE("allocate: no pairs yields solo equilibria on every channel") {
  const GainTable gains = oracle::make_gains(56, 6, 0);
  SolveStats stats;
  const Allocation state = allocate(gains, kParams, &stats);
  CHECK(state.partition_valid(true));
  for (const auto& ch : state.channels) {
    CHECK(ch.package.empty());
    CHECK(ch.equilibrium.power.size() == 1);
  }
  CHECK(stats.solves == 6);
}

TEST_CASE("allocate: deterministic for a fixed gain table") {
  const GainTable gains = oracle::make_gains(57, 4, 3);
  const Allocation a = allocate(gains, kParams);
  const Allocation b = allocate(gains, kParams);
  for (int k = 0; k < 4; ++k) {
    CHECK(a.channels[k].package == b.channels[k].package);
    CHECK(a.channels[k].utility == b.channels[k].utility);
    CHECK(a.channels[k].equilibrium.power == b.channels[k].equilibrium.power);
  }
}

TEST_CASE("allocate: coverage holds even when every bid is negative") {
  // At these scales an entering pair always costs its host channel more than
  // it brings, yet the partition constraints force full assignment.
  const GainTable gains = oracle::make_gains(58, 5, 4);
  const EquilibriumEvaluator ev(gains, kParams);
  Allocation solo_state;
  solo_state.num_d2d = 4;
  solo_state.channels.resize(5);
  for (int k = 0; k < 5; ++k) {
    auto [value, eq] = ev.value_of(k, {});
    solo_state.channels[k].utility = value;
    solo_state.channels[k].equilibrium = std::move(eq);
  }
  const BidMatrix bids = compute_bids(solo_state, std::vector<bool>(4, false), ev);
  int negative = 0, total = 0;
  for (int k = 0; k < 5; ++k) {
    for (int d = 0; d < 4; ++d) {
      ++total;
      if (bids.bid(k, d) < 0.0) ++negative;
    }
  }
  CHECK(negative == total);

  const Allocation state = allocate(gains, kParams);
  CHECK(state.partition_valid(true));
}

TEST_CASE("allocate: near-optimal against exhaustive winner determination") {
  double ratio_sum = 0.0;
  const int instances = 20;
  for (int i = 0; i < instances; ++i) {
    const GainTable gains = oracle::make_gains(100 + i, 4, 4);
    const EquilibriumEvaluator ev(gains, kParams);
    const Allocation first = round_one(ev);
    const Allocation final = round_two(first, ev);
    const double optimum = oracle::exhaustive_wdp(ev);
    CHECK(final.total_utility() >= first.total_utility());
    CHECK(final.total_utility() <= optimum * (1.0 + 1e-9));
    ratio_sum += final.total_utility() / optimum;
  }
  CHECK(ratio_sum / instances >= 0.95);
}

TEST_CASE("allocate: equilibrium solve count stays within the quadratic budget") {
  for (int n : {2, 4, 6}) {
    const GainTable gains = oracle::make_gains(200 + n, n, n);
    SolveStats stats;
    allocate(gains, kParams, &stats);
    // Round one: K solos + K*D opening bids + at most D*D refreshes. Round
    // two: at most D removal scans of D pairs plus D insertion scans of K.
    const long long budget = n + n * n + n * n + n * (n + n);
    CHECK(stats.solves <= budget);
  }
}

TEST_CASE("fixed-power valuation: solo channel at 50 mW is the direct formula") {
  const GainTable gains = oracle::make_gains(59, 2, 1);
  const FixedPowerEvaluator ev(gains, kParams, 0.05);
  const auto [value, eq] = ev.value_of(0, {});
  const double alpha = gains.cell_to_enb[0] / gains.sigma2_w;
  CHECK(value == doctest::Approx(utility_bits(0.05, alpha, kParams, gains.bandwidth_hz)).epsilon(1e-12));
  CHECK(eq.power == PowerVector{0.05});
  CHECK(eq.converged);
}

TEST_CASE("fixed-power valuation: rejects powers outside the legal range") {
  const GainTable gains = oracle::make_gains(59, 2, 1);
  CHECK_THROWS_AS(FixedPowerEvaluator(gains, kParams, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FixedPowerEvaluator(gains, kParams, 0.25), std::invalid_argument);
}
