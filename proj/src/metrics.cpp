#include "d2d/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "d2d/rng.hpp"

namespace d2d {

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ca: return "ca";
    case Algorithm::greedy: return "greedy";
    case Algorithm::ca_fixed: return "ca-fixed";
  }
  return "?";
}

std::string sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::num_d2d: return "num_d2d";
    case SweepParameter::num_channels: return "num_channels";
    case SweepParameter::max_d2d_distance_ratio: return "max_d2d_distance_ratio";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
  if (name == "ca") return Algorithm::ca;
  if (name == "greedy") return Algorithm::greedy;
  if (name == "ca-fixed") return Algorithm::ca_fixed;
  return std::nullopt;
}

std::optional<SweepParameter> sweep_parameter_from_name(const std::string& name) {
  if (name == "num_d2d") return SweepParameter::num_d2d;
  if (name == "num_channels") return SweepParameter::num_channels;
  if (name == "max_d2d_distance_ratio") return SweepParameter::max_d2d_distance_ratio;
  return std::nullopt;
}

MetricsRecord evaluate(const Allocation& allocation, const GainTable& gains,
                       const GameParams& params) {
  const int K = allocation.num_channels();
  MetricsRecord rec;

  double cell_data = 0.0, cell_rate = 0.0, cell_life = 0.0;
  double shared_data = 0.0, shared_rate = 0.0, shared_life = 0.0;
  int shared_count = 0;
  double d2d_data = 0.0, d2d_rate = 0.0, d2d_life = 0.0;
  int d2d_count = 0;
  int unique_ok = 0;

  for (int k = 0; k < K; ++k) {
    const auto& channel = allocation.channels[k];
    const ChannelGame game = ChannelGame::on_channel(gains, k, channel.package);
    const PowerVector& p = channel.equilibrium.power;
    const int n = game.size();
    for (int i = 0; i < n; ++i) {
      const double alpha = channel_quality(game, i, p);
      const double rate = rate_bps(p[i], alpha, game.bandwidth_hz);
      const double life_h = lifetime_s(p[i], params) / 3600.0;
      const double data = rate * lifetime_s(p[i], params);
      rec.sum_rate_bps += rate;
      rec.system_tx_power_w += p[i];
      if (i == 0) {
        cell_data += data;
        cell_rate += rate;
        cell_life += life_h;
        if (!channel.package.empty()) {
          shared_data += data;
          shared_rate += rate;
          shared_life += life_h;
          ++shared_count;
        }
      } else {
        d2d_data += data;
        d2d_rate += rate;
        d2d_life += life_h;
        ++d2d_count;
      }
    }
    if (channel.equilibrium.uniqueness_condition_holds) ++unique_ok;
  }

  const int total_ues = K + d2d_count;
  rec.system_total_power_w = rec.system_tx_power_w + total_ues * params.circuit_power_w;
  rec.uniqueness_rate = K > 0 ? static_cast<double>(unique_ok) / K : 0.0;

  rec.cellular.present = K > 0;
  if (rec.cellular.present) {
    rec.cellular.expected_data_bits = cell_data / K;
    rec.cellular.rate_bps = cell_rate / K;
    rec.cellular.lifetime_h = cell_life / K;
  }
  rec.d2d.present = d2d_count > 0;
  if (rec.d2d.present) {
    rec.d2d.expected_data_bits = d2d_data / d2d_count;
    rec.d2d.rate_bps = d2d_rate / d2d_count;
    rec.d2d.lifetime_h = d2d_life / d2d_count;
  }
  rec.shared_cellular.present = shared_count > 0;
  if (rec.shared_cellular.present) {
    rec.shared_cellular.expected_data_bits = shared_data / shared_count;
    rec.shared_cellular.rate_bps = shared_rate / shared_count;
    rec.shared_cellular.lifetime_h = shared_life / shared_count;
  }
  return rec;
}

void SweepSpec::validate() const {
  cell.validate();
  game.validate();
  if (values.empty()) throw std::invalid_argument("sweep values must not be empty");
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("algorithms must not be empty");
  if (ca_fixed_power_w <= 0.0 || ca_fixed_power_w > game.max_tx_power_w) {
    throw std::invalid_argument("ca_fixed_power_w must be in (0, max_tx_power_w]");
  }
  if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
  for (double v : values) {
    cell_config_at(*this, v).validate();
  }
}

CellConfig cell_config_at(const SweepSpec& spec, double value) {
  CellConfig cell = spec.cell;
  switch (spec.parameter) {
    case SweepParameter::num_d2d: {
      const int d = static_cast<int>(std::llround(value));
      if (static_cast<double>(d) != value) {
        throw std::invalid_argument("num_d2d sweep values must be integers");
      }
      cell.num_d2d = d;
      break;
    }
    case SweepParameter::num_channels: {
      const int k = static_cast<int>(std::llround(value));
      if (static_cast<double>(k) != value) {
        throw std::invalid_argument("num_channels sweep values must be integers");
      }
      cell.num_cellular = k;  // one cellular UE per channel
      break;
    }
    case SweepParameter::max_d2d_distance_ratio: {
      if (value <= 0.0 || value > 1.0) {
        throw std::invalid_argument("max_d2d_distance_ratio values must be in (0, 1]");
      }
      cell.max_d2d_distance_m = value * cell.cell_radius_m;
      break;
    }
  }
  return cell;
}

double pairwise_sum(const std::vector<double>& xs) {
  struct Impl {
    static double sum(const double* p, std::size_t n) {
      if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
      }
      const std::size_t half = n / 2;
      return sum(p, half) + sum(p + half, n - half);
    }
  };
  return Impl::sum(xs.data(), xs.size());
}

namespace {

AggregateStat aggregate(const std::vector<double>& xs, bool present) {
  AggregateStat s;
  s.present = present;
  if (!present || xs.empty()) return s;
  const auto n = static_cast<double>(xs.size());
  s.mean = pairwise_sum(xs) / n;
  if (xs.size() > 1) {
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double d = xs[i] - s.mean;
      sq[i] = d * d;
    }
    s.stderr_mean = std::sqrt(pairwise_sum(sq) / (n * (n - 1.0)));
  }
  return s;
}

Allocation run_algorithm(Algorithm alg, const SweepSpec& spec, const GainTable& gains,
                         SolveStats* stats) {
  switch (alg) {
    case Algorithm::ca:
      return allocate(gains, spec.game, stats, spec.auction);
    case Algorithm::greedy:
      return greedy_allocate(gains, spec.game, stats, spec.greedy);
    case Algorithm::ca_fixed:
      return ca_fixed_power_allocate(gains, spec.game, spec.ca_fixed_power_w, stats, spec.auction);
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const int num_points = static_cast<int>(spec.values.size());
  const int num_algs = static_cast<int>(spec.algorithms.size());
  const int reals = spec.realizations;

  // records[point][alg][realization]
  std::vector<std::vector<std::vector<MetricsRecord>>> records(
      num_points, std::vector<std::vector<MetricsRecord>>(num_algs,
                                                          std::vector<MetricsRecord>(reals)));

  const long long num_tasks = static_cast<long long>(num_points) * reals;
  std::atomic<long long> next_task{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto worker = [&]() {
    for (;;) {
      const long long task = next_task.fetch_add(1);
      if (task >= num_tasks) return;
      const int point = static_cast<int>(task / reals);
      const int r = static_cast<int>(task % reals);
      try {
        const CellConfig cell = cell_config_at(spec, spec.values[point]);
        Rng rng(mix_seed(spec.cell.rng_seed, static_cast<std::uint64_t>(point),
                         static_cast<std::uint64_t>(r)));
        const Topology topo = generate_topology(cell, rng);
        const GainTable gains = compute_gains(topo, cell, rng);
        for (int a = 0; a < num_algs; ++a) {
          SolveStats stats;
          const Allocation alloc = run_algorithm(spec.algorithms[a], spec, gains, &stats);
          MetricsRecord rec = evaluate(alloc, gains, spec.game);
          rec.equilibrium_solves = stats.solves;
          rec.power_game_iterations = stats.iterations;
          rec.nonconverged = stats.nonconverged;
          records[point][a][r] = std::move(rec);
        }
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next_task.store(num_tasks);  // drain remaining work
        return;
      }
    }
  };

  unsigned jobs = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned long long>(jobs, static_cast<unsigned long long>(num_tasks));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(num_points) * num_algs);
  for (int point = 0; point < num_points; ++point) {
    for (int a = 0; a < num_algs; ++a) {
      const auto& recs = records[point][a];
      SweepRow row;
      row.parameter = spec.parameter;
      row.value = spec.values[point];
      row.algorithm = spec.algorithms[a];
      row.realizations = reals;

      const auto collect = [&](auto&& get) {
        std::vector<double> xs(recs.size());
        for (std::size_t i = 0; i < recs.size(); ++i) xs[i] = get(recs[i]);
        return xs;
      };
      row.sum_rate_bps = aggregate(collect([](const MetricsRecord& m) { return m.sum_rate_bps; }), true);
      row.system_tx_power_w =
          aggregate(collect([](const MetricsRecord& m) { return m.system_tx_power_w; }), true);
      row.system_total_power_w =
          aggregate(collect([](const MetricsRecord& m) { return m.system_total_power_w; }), true);

      const bool has_cell = !recs.empty() && recs.front().cellular.present;
      const bool has_d2d = !recs.empty() && recs.front().d2d.present;
      const bool has_shared = !recs.empty() && recs.front().shared_cellular.present;
      row.cell_expected_data_bits = aggregate(
          collect([](const MetricsRecord& m) { return m.cellular.expected_data_bits; }), has_cell);
      row.cell_rate_bps =
          aggregate(collect([](const MetricsRecord& m) { return m.cellular.rate_bps; }), has_cell);
      row.cell_lifetime_h =
          aggregate(collect([](const MetricsRecord& m) { return m.cellular.lifetime_h; }), has_cell);
      row.d2d_expected_data_bits = aggregate(
          collect([](const MetricsRecord& m) { return m.d2d.expected_data_bits; }), has_d2d);
      row.d2d_rate_bps =
          aggregate(collect([](const MetricsRecord& m) { return m.d2d.rate_bps; }), has_d2d);
      row.d2d_lifetime_h =
          aggregate(collect([](const MetricsRecord& m) { return m.d2d.lifetime_h; }), has_d2d);
      row.shared_cell_expected_data_bits =
          aggregate(collect([](const MetricsRecord& m) { return m.shared_cellular.expected_data_bits; }),
                    has_shared);
      row.shared_cell_rate_bps = aggregate(
          collect([](const MetricsRecord& m) { return m.shared_cellular.rate_bps; }), has_shared);
      row.shared_cell_lifetime_h = aggregate(
          collect([](const MetricsRecord& m) { return m.shared_cellular.lifetime_h; }), has_shared);

      long long solves = 0, iters = 0, bad = 0;
      for (const auto& m : recs) {
        solves += m.equilibrium_solves;
        iters += m.power_game_iterations;
        bad += m.nonconverged;
      }
      row.eq_solves = solves;
      row.nonconverged = bad;
      row.mean_pg_iters = solves > 0 ? static_cast<double>(iters) / static_cast<double>(solves) : 0.0;
      row.uniqueness_rate =
          aggregate(collect([](const MetricsRecord& m) { return m.uniqueness_rate; }), true).mean;

      rows.push_back(std::move(row));
    }
  }

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.value != b.value) return a.value < b.value;
    return algorithm_name(a.algorithm) < algorithm_name(b.algorithm);
  });
  return rows;
}

}  // namespace d2d
