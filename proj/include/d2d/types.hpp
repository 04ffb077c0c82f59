#pragma once

#include <cstdint>

namespace d2d {

/// Geometry and radio parameters of one simulated cell. The eNB sits at the
/// origin; every cellular UE owns one orthogonal uplink channel.
struct CellConfig {
  double cell_radius_m = 350.0;
  int num_cellular = 30;             ///< K: cellular UEs == uplink channels
  int num_d2d = 4;                   ///< D: device-to-device pairs
  double max_d2d_distance_m = 35.0;  ///< cap on transmitter/receiver separation
  double bandwidth_hz = 180e3;
  double noise_psd_dbm_hz = -174.0;
  std::uint64_t rng_seed = 1;

  bool operator==(const CellConfig&) const = default;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Battery, circuit and power-control constants shared by every UE.
struct GameParams {
  double max_tx_power_w = 0.2;
  double circuit_power_w = 0.05;
  double peukert_exponent = 1.3;     ///< a > 1 in the battery discharge law
  double battery_capacity_ah = 0.8;
  double operating_voltage_v = 4.0;
  double epsilon_w = 1e-3;           ///< per-player power change below which the iteration stops
  int max_iters = 1000;

  bool operator==(const GameParams&) const = default;

  void validate() const;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

}  // namespace d2d
