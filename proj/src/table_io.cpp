#include "d2d/table_io.hpp"

#include <cstdio>

#include "json.hpp"

namespace d2d {

namespace {

// Mean columns first, then the matching stderr columns, then diagnostics.
const char* const kMeanColumns[] = {
    "sum_rate_bps",       "system_tx_power_w",      "system_total_power_w",
    "cell_expected_data_bits", "d2d_expected_data_bits", "cell_rate_bps",
    "d2d_rate_bps",       "cell_lifetime_h",        "d2d_lifetime_h",
};

const char* const kSharedColumns[] = {
    "shared_cell_expected_data_bits",
    "shared_cell_rate_bps",
    "shared_cell_lifetime_h",
};

std::vector<const AggregateStat*> mean_stats(const SweepRow& row) {
  return {&row.sum_rate_bps,           &row.system_tx_power_w, &row.system_total_power_w,
          &row.cell_expected_data_bits, &row.d2d_expected_data_bits, &row.cell_rate_bps,
          &row.d2d_rate_bps,           &row.cell_lifetime_h,   &row.d2d_lifetime_h};
}

std::vector<const AggregateStat*> shared_stats(const SweepRow& row) {
  return {&row.shared_cell_expected_data_bits, &row.shared_cell_rate_bps,
          &row.shared_cell_lifetime_h};
}

}  // namespace

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "sweep_param,param_value,algorithm,realizations";
  for (const char* name : kMeanColumns) out << ',' << name;
  for (const char* name : kMeanColumns) out << ',' << name << "_stderr";
  out << ",mean_pg_iters,eq_solves,nonconverged,uniqueness_rate";
  for (const char* name : kSharedColumns) out << ',' << name;
  for (const char* name : kSharedColumns) out << ',' << name << "_stderr";
  out << '\n';

  for (const auto& row : rows) {
    out << sweep_parameter_name(row.parameter) << ',' << format_value(row.value) << ','
        << algorithm_name(row.algorithm) << ',' << row.realizations;
    const auto means = mean_stats(row);
    for (const auto* s : means) out << ',' << (s->present ? format_value(s->mean) : "");
    for (const auto* s : means) out << ',' << (s->present ? format_value(s->stderr_mean) : "");
    out << ',' << format_value(row.mean_pg_iters) << ',' << row.eq_solves << ','
        << row.nonconverged << ',' << format_value(row.uniqueness_rate);
    const auto shared = shared_stats(row);
    for (const auto* s : shared) out << ',' << (s->present ? format_value(s->mean) : "");
    for (const auto* s : shared) out << ',' << (s->present ? format_value(s->stderr_mean) : "");
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<SweepRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    obj["sweep_param"] = sweep_parameter_name(row.parameter);
    obj["param_value"] = row.value;
    obj["algorithm"] = algorithm_name(row.algorithm);
    obj["realizations"] = row.realizations;
    const auto means = mean_stats(row);
    const auto shared = shared_stats(row);
    for (std::size_t i = 0; i < means.size(); ++i) {
      const auto* s = means[i];
      obj[kMeanColumns[i]] = s->present ? nlohmann::json(s->mean) : nlohmann::json(nullptr);
      obj[std::string(kMeanColumns[i]) + "_stderr"] =
          s->present ? nlohmann::json(s->stderr_mean) : nlohmann::json(nullptr);
    }
    obj["mean_pg_iters"] = row.mean_pg_iters;
    obj["eq_solves"] = row.eq_solves;
    obj["nonconverged"] = row.nonconverged;
    obj["uniqueness_rate"] = row.uniqueness_rate;
    for (std::size_t i = 0; i < shared.size(); ++i) {
      const auto* s = shared[i];
      obj[kSharedColumns[i]] = s->present ? nlohmann::json(s->mean) : nlohmann::json(nullptr);
      obj[std::string(kSharedColumns[i]) + "_stderr"] =
          s->present ? nlohmann::json(s->stderr_mean) : nlohmann::json(nullptr);
    }
    doc.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace d2d
