#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tailbound {

/// How numeric cells are rendered. Without digits the comparison-table rule
/// applies: three decimals at or above 0.01 ("0.017", "1.000"), one-decimal
/// scientific below it ("1.4E-03"). With digits, values keep that many
/// significant figures ("1.14E-03", "0.145").
struct NumberFormat {
  std::optional<int> digits;
};

std::string format_table_cell(double v);
std::string format_significant(double v, int digits);
std::string format_value(double v, const NumberFormat& fmt);

/// Shortest readable rendering of a threshold ("8", "0.05", "6.908").
std::string format_threshold(double nu);

/// Comma-separated values, "\n" terminated lines.
std::string render_csv(const std::vector<std::vector<std::string>>& rows);

/// Right-aligned columns separated by two spaces.
std::string render_aligned(const std::vector<std::vector<std::string>>& rows);

}  // namespace tailbound
