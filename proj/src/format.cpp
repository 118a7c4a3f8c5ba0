#include "tailbound/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tailbound {

namespace {

std::string non_finite(double v) {
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_table_cell(double v) {
  if (!std::isfinite(v)) {
    return non_finite(v);
  }
  char buf[48];
  if (std::abs(v) >= 1e-2) {
    std::snprintf(buf, sizeof buf, "%.3f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.1E", v);
  }
  return buf;
}

std::string format_significant(double v, int digits) {
  if (!std::isfinite(v)) {
    return non_finite(v);
  }
  digits = std::clamp(digits, 1, 17);
  char buf[64];
  if (v != 0.0 && std::abs(v) < 1e-2) {
    std::snprintf(buf, sizeof buf, "%.*E", digits - 1, v);
  } else {
    std::snprintf(buf, sizeof buf, "%#.*G", digits, v);
  }
  return buf;
}

std::string format_value(double v, const NumberFormat& fmt) {
  return fmt.digits ? format_significant(v, *fmt.digits) : format_table_cell(v);
}

std::string format_threshold(double nu) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", nu);
  return buf;
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string render_aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += "  ";
      out.append(widths[i] - row[i].size(), ' ');
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace tailbound
