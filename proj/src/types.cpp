#include "d2d/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace d2d {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void CellConfig::validate() const {
  require(cell_radius_m > 0.0, "cell_radius_m must be > 0");
  require(num_cellular >= 1, "num_cellular must be >= 1");
  require(num_d2d >= 0, "num_d2d must be >= 0");
  require(max_d2d_distance_m > 0.0 && max_d2d_distance_m <= 2.0 * cell_radius_m,
          "max_d2d_distance_m must be in (0, 2 * cell_radius_m]");
  require(bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
  require(std::isfinite(noise_psd_dbm_hz), "noise_psd_dbm_hz must be finite");
}

void GameParams::validate() const {
  require(max_tx_power_w > 0.0, "max_tx_power_w must be > 0");
  require(circuit_power_w > 0.0, "circuit_power_w must be > 0");
  require(peukert_exponent > 1.0, "peukert_exponent must be > 1");
  require(battery_capacity_ah > 0.0, "battery_capacity_ah must be > 0");
  require(operating_voltage_v > 0.0, "operating_voltage_v must be > 0");
  require(epsilon_w > 0.0, "epsilon_w must be > 0");
  require(max_iters >= 1, "max_iters must be >= 1");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

}  // namespace d2d
