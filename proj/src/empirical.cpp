#include "tailbound/empirical.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "tailbound/error.hpp"

namespace tailbound {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

void require_threshold(double nu, bool strictly_positive) {
  if (!std::isfinite(nu) || nu < 0.0 || (strictly_positive && nu == 0.0)) {
    throw InvalidInput(strictly_positive ? "threshold nu must be positive"
                                         : "threshold nu must be nonnegative");
  }
}

int count_violations(const ComparisonRow& row, double& worst) {
  int count = 0;
  if (row.tail > row.enhanced) {
    ++count;
    worst = std::max(worst, row.tail - row.enhanced);
  }
  if (row.enhanced > row.traditional) {
    ++count;
    worst = std::max(worst, row.enhanced - row.traditional);
  }
  return count;
}

}  // namespace

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw InvalidInput("sample must contain at least one observation");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("sample values must be finite and nonnegative");
    }
  }
  std::sort(values_.begin(), values_.end());
  suffix_.assign(values_.size() + 1, 0.0);
  for (std::size_t i = values_.size(); i-- > 0;) {
    suffix_[i] = suffix_[i + 1] + values_[i];
  }
}

Sample Sample::parse(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') {
      continue;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw InvalidInput("line " + std::to_string(line_no) + ": cannot parse '" +
                         std::string(text) + "' as a number");
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("line " + std::to_string(line_no) + ": value '" + std::string(text) +
                         "' is not a finite nonnegative number");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw InvalidInput("sample input contains no observations");
  }
  return Sample(std::move(values));
}

Sample Sample::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open sample file '" + path + "'");
  }
  try {
    return parse(in);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::size_t Sample::cut(double nu) const {
  return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), nu) -
                                  values_.begin());
}

double Sample::mean() const { return suffix_[0] / static_cast<double>(values_.size()); }

double empirical_restricted_moment(const Sample& sample, double nu, MomentOrder order) {
  require_threshold(nu, false);
  const std::size_t first = sample.cut(nu);
  const double n = static_cast<double>(sample.size());
  if (order.value() == 1) {
    return sample.suffix_sum(first) / n;
  }
  const auto values = sample.values();
  double sum = 0.0;
  for (std::size_t i = values.size(); i-- > first;) {
    sum += std::pow(values[i], order.value());
  }
  return sum / n;
}

double empirical_tail(const Sample& sample, double nu) {
  require_threshold(nu, false);
  const std::size_t passing = sample.size() - sample.cut(nu);
  return static_cast<double>(passing) / static_cast<double>(sample.size());
}

ComparisonRow empirical_bounds(const Sample& sample, double nu) {
  require_threshold(nu, true);
  const std::size_t first = sample.cut(nu);
  const double n = static_cast<double>(sample.size());
  const double tail = static_cast<double>(sample.size() - first) / n;
  ComparisonRow row{nu, tail, sample.suffix_sum(first) / n / nu, sample.mean() / nu};
  if (row.tail <= row.enhanced && row.enhanced <= row.traditional) {
    return row;
  }

  // The unscaled suffix sum can round below count * nu when observations sit
  // within an ulp or two of nu. Summing x_i / nu instead makes every term
  // >= 1 after rounding, so the partial sums can never drop below the count.
  const auto values = sample.values();
  double scaled = 0.0;
  for (std::size_t i = values.size(); i-- > first;) {
    scaled += values[i] / nu;
  }
  row.enhanced = scaled / n;
  for (std::size_t i = first; i-- > 0;) {
    scaled += values[i] / nu;
  }
  row.traditional = scaled / n;
  return row;
}

double UniformStream::next() {
  // 53 high bits, centred in their cell: never 0, never 1
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> draw(const Distribution& dist, std::size_t n, std::uint64_t seed,
                         const QuadratureConfig& cfg) {
  UniformStream uniform(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(tail_quantile(dist, uniform.next(), cfg));
  }
  return out;
}

bool VerificationReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.violations == 0; });
}

VerificationReport verify_sample(const Sample& sample, std::span<const double> nu_grid) {
  VerificationReport report{sample.size(), 0, {}, 0.0, 0.0};
  report.rows.reserve(nu_grid.size());
  for (double nu : nu_grid) {
    const ComparisonRow row = empirical_bounds(sample, nu);
    const int violations = count_violations(row, report.max_violation);
    report.rows.push_back({nu, row.tail, row.enhanced, row.traditional, std::nullopt, violations});
  }
  return report;
}

VerificationReport monte_carlo_verify(const Distribution& dist, std::size_t n, std::uint64_t seed,
                                      std::span<const double> nu_grid,
                                      const QuadratureConfig& cfg) {
  if (n == 0) {
    throw InvalidInput("sample size n must be at least 1");
  }
  const Sample sample(draw(dist, n, seed, cfg));
  VerificationReport report = verify_sample(sample, nu_grid);
  report.seed = seed;
  for (auto& row : report.rows) {
    row.analytic_tail = tail(dist, row.nu, cfg);
    report.max_tail_deviation =
        std::max(report.max_tail_deviation, std::abs(row.tail - *row.analytic_tail));
  }
  return report;
}

}  // namespace tailbound
