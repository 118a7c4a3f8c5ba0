#include "tailbound/format.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace tailbound {
namespace {

TEST(FormatTest, TableDisplayRule) {
  EXPECT_EQ(format_table_cell(0.42493748), "0.425");
  EXPECT_EQ(format_table_cell(1.0), "1.000");
  EXPECT_EQ(format_table_cell(0.01668149), "0.017");
  EXPECT_EQ(format_table_cell(0.00141517), "1.4E-03");
  EXPECT_EQ(format_table_cell(1.73565e-10), "1.7E-10");
  EXPECT_EQ(format_table_cell(0.0), "0.0E+00");
  EXPECT_EQ(format_table_cell(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_table_cell(std::nan("")), "nan");
}

TEST(FormatTest, SignificantDigits) {
  EXPECT_EQ(format_significant(0.0011444853, 3), "1.14E-03");
  EXPECT_EQ(format_significant(0.14476, 3), "0.145");
  EXPECT_EQ(format_significant(1.0, 3), "1.00");
  EXPECT_EQ(format_significant(12.345, 3), "12.3");
  EXPECT_EQ(format_significant(0.0, 3), "0.00");
  EXPECT_EQ(format_significant(0.40600584970983811, 12), "0.406005849710");
}

TEST(FormatTest, FormatValueSwitchesOnDigits) {
  EXPECT_EQ(format_value(0.00108038, {}), "1.1E-03");
  EXPECT_EQ(format_value(0.00108038, {3}), "1.08E-03");
}

TEST(FormatTest, Thresholds) {
  EXPECT_EQ(format_threshold(8.0), "8");
  EXPECT_EQ(format_threshold(0.05 * 3), "0.15");
  EXPECT_EQ(format_threshold(6.908), "6.908");
}

TEST(FormatTest, Rendering) {
  const std::vector<std::vector<std::string>> rows = {{"nu", "tail"}, {"1", "0.368"}};
  EXPECT_EQ(render_csv(rows), "nu,tail\n1,0.368\n");
  EXPECT_EQ(render_aligned(rows), "nu   tail\n 1  0.368\n");
}

}  // namespace
}  // namespace tailbound
