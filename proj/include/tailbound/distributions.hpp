#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tailbound/numerics.hpp"

namespace tailbound {

/// Exponential law with density rate * exp(-rate * x).
struct Exponential {
  double rate;
};

/// Law of |Y| for Y ~ N(0, sigma^2).
struct HalfNormal {
  double sigma;
};

/// Arbitrary atomless density on [0, inf); every quantity is obtained by
/// quadrature. mean_hint is only validated against the computed mean.
struct Generic {
  RealFunction density;
  std::optional<double> mean_hint;
};

/// Order k >= 1 of a (restricted) moment E(X^k).
class MomentOrder {
 public:
  explicit MomentOrder(int k);
  int value() const { return k_; }

 private:
  int k_;
};

/// A nonnegative random variable. Immutable after construction.
class Distribution {
 public:
  using Variant = std::variant<Exponential, HalfNormal, Generic>;

  static Distribution exponential(double rate);
  static Distribution half_normal(double sigma);
  /// Fails with InvalidInput unless the density integrates to 1 within 1e-6
  /// (and matches mean_hint within 1e-6 relative, when given).
  static Distribution generic(RealFunction density, std::optional<double> mean_hint = {},
                              const QuadratureConfig& cfg = {});

  const Variant& variant() const { return variant_; }
  bool is_generic() const { return std::holds_alternative<Generic>(variant_); }

  /// Short family name: "exponential", "halfnormal" or "generic".
  std::string family() const;
  /// Family with parameters, e.g. "exponential(rate=1)".
  std::string describe() const;

 private:
  explicit Distribution(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// Parses `exponential:rate=R`, `exponential:mean=M`, `halfnormal:sigma=S`
/// or `halfnormal:mean=M`. Throws InvalidInput naming the problem.
Distribution parse_distribution(std::string_view spec);

double density(const Distribution& dist, double x);

/// Pr{X > x}. Exactly 1 at x = 0.
double tail(const Distribution& dist, double x, const QuadratureConfig& cfg = {});

double cdf(const Distribution& dist, double x, const QuadratureConfig& cfg = {});

/// E(X^k 1{X > nu}). Closed forms: every k for the exponential (through the
/// upper incomplete gamma function), k = 1 for the half-normal.
double restricted_moment(const Distribution& dist, double nu, MomentOrder order,
                         const QuadratureConfig& cfg = {});

/// Same quantity, always integrated numerically. Used to cross-check the
/// closed forms.
double restricted_moment_quadrature(const Distribution& dist, double nu, MomentOrder order,
                                    const QuadratureConfig& cfg = {});

/// E(X^k).
double moment(const Distribution& dist, MomentOrder order, const QuadratureConfig& cfg = {});

/// E(exp(tX) 1{X > nu}). At t = 0 this is tail(dist, nu).
/// Throws DomainError for an exponential with t >= rate. May return +inf
/// when the value exceeds the double range.
double restricted_mgf(const Distribution& dist, double nu, double t,
                      const QuadratureConfig& cfg = {});

/// restricted_mgf computed by quadrature for every variant.
double restricted_mgf_quadrature(const Distribution& dist, double nu, double t,
                                 const QuadratureConfig& cfg = {});

/// x with F(x) = p, 0 < p < 1.
double quantile(const Distribution& dist, double p, const QuadratureConfig& cfg = {});

/// x with Pr{X > x} = q, 0 < q < 1. Solving on the tail keeps precision for
/// q near 0, which is where inverse-CDF sampling spends its hardest draws.
double tail_quantile(const Distribution& dist, double q, const QuadratureConfig& cfg = {});

}  // namespace tailbound
