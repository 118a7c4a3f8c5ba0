#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tailbound/bounds.hpp"
#include "tailbound/distributions.hpp"

namespace tailbound {

/// Finite multiset of nonnegative observations, stored in ascending order
/// together with suffix sums so every threshold query is a binary search.
class Sample {
 public:
  /// Throws InvalidInput for an empty sample or a negative/non-finite value.
  explicit Sample(std::vector<double> values);

  /// One number per line; blank lines and lines starting with '#' are
  /// skipped. A parse failure names the 1-based line number.
  static Sample parse(std::istream& in);
  static Sample from_file(const std::string& path);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  /// Index of the first observation strictly greater than nu.
  std::size_t cut(double nu) const;
  /// Sum of values_[i..n), accumulated from the largest value downwards.
  double suffix_sum(std::size_t i) const { return suffix_[i]; }

  double mean() const;

 private:
  std::vector<double> values_;
  std::vector<double> suffix_;
};

/// (1/n) sum x_i^k [x_i > nu].
double empirical_restricted_moment(const Sample& sample, double nu, MomentOrder order);

/// count(x_i > nu) / n.
double empirical_tail(const Sample& sample, double nu);

/// Plug-in Markov comparison. The sandwich holds exactly on the data since
/// x_i [x_i > nu] >= nu [x_i > nu] term by term.
ComparisonRow empirical_bounds(const Sample& sample, double nu);

/// 64-bit Mersenne Twister (std::mt19937_64, whose output sequence is fixed
/// by the C++ standard) mapped to (0, 1) with 53 random bits. Both steps are
/// specified exactly, so a seed reproduces across platforms.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
};

/// n inverse-CDF draws: x = tail_quantile(dist, u) with u from UniformStream.
std::vector<double> draw(const Distribution& dist, std::size_t n, std::uint64_t seed,
                         const QuadratureConfig& cfg = {});

struct VerificationRow {
  double nu;
  double tail;
  double enhanced;
  double traditional;
  std::optional<double> analytic_tail;
  int violations;
};

struct VerificationReport {
  std::size_t n;
  std::uint64_t seed;
  std::vector<VerificationRow> rows;
  /// Largest amount by which tail <= enhanced <= traditional failed (0 if never).
  double max_violation;
  /// max |empirical tail - analytic tail| over the grid; 0 without a model.
  double max_tail_deviation;

  bool passed() const;
};

/// Draws n variates and checks the empirical sandwich at every grid point.
VerificationReport monte_carlo_verify(const Distribution& dist, std::size_t n, std::uint64_t seed,
                                      std::span<const double> nu_grid,
                                      const QuadratureConfig& cfg = {});

/// The same check on observed data; analytic_tail is left empty.
VerificationReport verify_sample(const Sample& sample, std::span<const double> nu_grid);

}  // namespace tailbound
