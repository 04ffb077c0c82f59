#pragma once

#include <vector>

#include "d2d/rng.hpp"
#include "d2d/types.hpp"

namespace d2d {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance_m(const Vec2& a, const Vec2& b);

/// One placement draw: cellular UEs and D2D transmitters are area-uniform on
/// the cell disc, each D2D receiver is area-uniform on the disc of radius
/// max_d2d_distance_m around its transmitter (resampled until inside the cell).
struct Topology {
  std::vector<Vec2> cellular;
  std::vector<Vec2> d2d_tx;
  std::vector<Vec2> d2d_rx;
};

/// All link power gains plus the noise power for one block-fading realization.
/// Gains are free-space pathloss times a unit-mean exponential fading term,
/// drawn independently per link and held constant for the whole allocation.
struct GainTable {
  int num_cellular = 0;
  int num_d2d = 0;
  std::vector<double> cell_to_enb;  ///< K
  std::vector<double> d2d_to_enb;   ///< D
  std::vector<double> cell_to_rx;   ///< K x D row-major: cellular k -> receiver of pair d
  std::vector<double> intra_pair;   ///< D: transmitter -> own receiver
  std::vector<double> cross_pair;   ///< D x D row-major: transmitter d' -> receiver of d; diagonal unused
  double sigma2_w = 0.0;
  double bandwidth_hz = 0.0;

  double cell_to_rx_gain(int k, int d) const { return cell_to_rx[static_cast<std::size_t>(k) * num_d2d + d]; }
  double d2d_to_rx_gain(int d_tx, int d_rx) const {
    return d_tx == d_rx ? intra_pair[d_rx] : cross_pair[static_cast<std::size_t>(d_tx) * num_d2d + d_rx];
  }
};

/// Links shorter than this are evaluated at 1 m; the free-space law diverges
/// as the range goes to zero.
inline constexpr double kMinLinkDistanceM = 1.0;

/// distance^-2 * fading_power, with the 1 m floor. A zero distance means a
/// co-located transmitter and receiver and throws std::invalid_argument.
double pathloss_gain(double distance_m, double fading_power);

/// Thermal noise in watts over the given bandwidth.
double noise_power_w(double noise_psd_dbm_hz, double bandwidth_hz);

Topology generate_topology(const CellConfig& config, Rng& rng);

GainTable compute_gains(const Topology& topology, const CellConfig& config, Rng& rng);

}  // namespace d2d
