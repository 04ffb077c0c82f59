#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "d2d/metrics.hpp"

namespace d2d {

/// Floating-point serialization used in output tables: 12 significant digits.
std::string format_value(double v);

/// Stable column order; absent class averages are written as empty fields.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Same content as the CSV, one object per row; absent values are nulls.
void write_json(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace d2d
