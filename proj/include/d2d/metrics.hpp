#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d2d/auction.hpp"
#include "d2d/baselines.hpp"
#include "d2d/channel_model.hpp"
#include "d2d/types.hpp"

namespace d2d {

enum class Algorithm { ca, greedy, ca_fixed };

enum class SweepParameter { num_d2d, num_channels, max_d2d_distance_ratio };

std::string algorithm_name(Algorithm a);
std::string sweep_parameter_name(SweepParameter p);
std::optional<Algorithm> algorithm_from_name(const std::string& name);
std::optional<SweepParameter> sweep_parameter_from_name(const std::string& name);

/// Uniform within-class averages. Absent when the class is empty (no D2D
/// pairs, or no shared channels); absent values serialize as nulls, never
/// zeros.
struct ClassAverages {
  bool present = false;
  double expected_data_bits = 0.0;
  double rate_bps = 0.0;
  double lifetime_h = 0.0;
};

/// Per-realization system and per-UE statistics of one allocation.
struct MetricsRecord {
  double sum_rate_bps = 0.0;
  double system_tx_power_w = 0.0;     ///< transmit power only
  double system_total_power_w = 0.0;  ///< transmit plus circuit power of every UE
  ClassAverages cellular;             ///< all cellular UEs
  ClassAverages d2d;                  ///< all D2D pairs
  ClassAverages shared_cellular;      ///< only cellular UEs whose channel carries D2D pairs
  double uniqueness_rate = 0.0;       ///< channels whose equilibrium met the uniqueness condition
  // Solver accounting, filled by the caller that ran the allocation.
  long long equilibrium_solves = 0;
  long long power_game_iterations = 0;
  long long nonconverged = 0;
};

/// Rates, lifetimes and expected data of every UE at the allocation's stored
/// power vectors.
MetricsRecord evaluate(const Allocation& allocation, const GainTable& gains,
                       const GameParams& params);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::num_d2d;
  std::vector<double> values;  ///< one sweep point per entry
  int realizations = 1000;
  CellConfig cell;
  GameParams game;
  std::vector<Algorithm> algorithms = {Algorithm::ca, Algorithm::greedy, Algorithm::ca_fixed};
  double ca_fixed_power_w = 0.05;
  GreedyOptions greedy;
  AuctionOptions auction;
  int jobs = 0;  ///< worker threads; 0 = hardware concurrency

  bool operator==(const SweepSpec&) const = default;
  void validate() const;
};

struct AggregateStat {
  bool present = false;
  double mean = 0.0;
  double stderr_mean = 0.0;
};

/// One output row: a sweep point evaluated with one algorithm, averaged over
/// the realizations.
struct SweepRow {
  SweepParameter parameter{};
  double value = 0.0;
  Algorithm algorithm{};
  int realizations = 0;
  AggregateStat sum_rate_bps;
  AggregateStat system_tx_power_w;
  AggregateStat system_total_power_w;
  AggregateStat cell_expected_data_bits;
  AggregateStat d2d_expected_data_bits;
  AggregateStat cell_rate_bps;
  AggregateStat d2d_rate_bps;
  AggregateStat cell_lifetime_h;
  AggregateStat d2d_lifetime_h;
  double mean_pg_iters = 0.0;
  long long eq_solves = 0;
  long long nonconverged = 0;
  double uniqueness_rate = 0.0;
  AggregateStat shared_cell_expected_data_bits;
  AggregateStat shared_cell_rate_bps;
  AggregateStat shared_cell_lifetime_h;
};

/// Cell configuration at one sweep point: the swept parameter applied to the
/// base config.
CellConfig cell_config_at(const SweepSpec& spec, double value);

/// Runs every (point, algorithm) cell of the sweep. Realizations are seeded
/// from (base seed, point index, realization index) so all algorithms see
/// identical channels, and may run on worker threads; aggregation uses
/// fixed-order pairwise summation, so the output is identical for any worker
/// count. Rows are sorted by (value, algorithm name).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Deterministic pairwise sum (order-fixed, parallelism-invariant).
double pairwise_sum(const std::vector<double>& xs);

}  // namespace d2d
