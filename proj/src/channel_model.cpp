#include "d2d/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2d {

namespace {

// Area-uniform point on a disc: radius grows with sqrt(u).
Vec2 draw_in_disc(Rng& rng, double radius, const Vec2& center = {}) {
  const double r = radius * std::sqrt(rng.uniform01());
  const double theta = 2.0 * std::numbers::pi * rng.uniform01();
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

double norm(const Vec2& p) { return std::hypot(p.x, p.y); }

}  // namespace

double distance_m(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double pathloss_gain(double distance_m, double fading_power) {
  if (distance_m == 0.0) {
    throw std::invalid_argument("pathloss_gain: co-located transmitter and receiver");
  }
  const double d = std::max(distance_m, kMinLinkDistanceM);
  return fading_power / (d * d);
}

double noise_power_w(double noise_psd_dbm_hz, double bandwidth_hz) {
  return dbm_to_watt(noise_psd_dbm_hz) * bandwidth_hz;
}

Topology generate_topology(const CellConfig& config, Rng& rng) {
  config.validate();
  Topology topo;
  topo.cellular.reserve(config.num_cellular);
  for (int k = 0; k < config.num_cellular; ++k) {
    topo.cellular.push_back(draw_in_disc(rng, config.cell_radius_m));
  }
  topo.d2d_tx.reserve(config.num_d2d);
  topo.d2d_rx.reserve(config.num_d2d);
  for (int d = 0; d < config.num_d2d; ++d) {
    const Vec2 tx = draw_in_disc(rng, config.cell_radius_m);
    // Receiver stays inside the cell; the transmitter is inside, so this
    // terminates with probability one.
    Vec2 rx;
    do {
      rx = draw_in_disc(rng, config.max_d2d_distance_m, tx);
    } while (norm(rx) > config.cell_radius_m);
    topo.d2d_tx.push_back(tx);
    topo.d2d_rx.push_back(rx);
  }
  return topo;
}

GainTable compute_gains(const Topology& topology, const CellConfig& config, Rng& rng) {
  const int K = static_cast<int>(topology.cellular.size());
  const int D = static_cast<int>(topology.d2d_tx.size());
  const Vec2 enb{};

  GainTable g;
  g.num_cellular = K;
  g.num_d2d = D;
  g.sigma2_w = noise_power_w(config.noise_psd_dbm_hz, config.bandwidth_hz);
  g.bandwidth_hz = config.bandwidth_hz;

  // Draw order is part of the determinism contract: uplinks, D2D-to-eNB,
  // cellular-to-receiver (k-major), intra-pair, then cross-pair (tx-major).
  g.cell_to_enb.reserve(K);
  for (int k = 0; k < K; ++k) {
    g.cell_to_enb.push_back(pathloss_gain(distance_m(topology.cellular[k], enb), rng.exponential()));
  }
  g.d2d_to_enb.reserve(D);
  for (int d = 0; d < D; ++d) {
    g.d2d_to_enb.push_back(pathloss_gain(distance_m(topology.d2d_tx[d], enb), rng.exponential()));
  }
  g.cell_to_rx.reserve(static_cast<std::size_t>(K) * D);
  for (int k = 0; k < K; ++k) {
    for (int d = 0; d < D; ++d) {
      g.cell_to_rx.push_back(pathloss_gain(distance_m(topology.cellular[k], topology.d2d_rx[d]), rng.exponential()));
    }
  }
  g.intra_pair.reserve(D);
  for (int d = 0; d < D; ++d) {
    g.intra_pair.push_back(pathloss_gain(distance_m(topology.d2d_tx[d], topology.d2d_rx[d]), rng.exponential()));
  }
  g.cross_pair.assign(static_cast<std::size_t>(D) * D, 0.0);
  for (int d_tx = 0; d_tx < D; ++d_tx) {
    for (int d_rx = 0; d_rx < D; ++d_rx) {
      if (d_tx == d_rx) continue;
      g.cross_pair[static_cast<std::size_t>(d_tx) * D + d_rx] =
          pathloss_gain(distance_m(topology.d2d_tx[d_tx], topology.d2d_rx[d_rx]), rng.exponential());
    }
  }
  return g;
}

}  // namespace d2d
