#pragma once

#include <functional>

namespace tailbound {

/// Tolerances for adaptive quadrature. A result is accepted once the summed
/// panel error estimate is at most max(abs_tol, rel_tol * |I|).
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 200;

  /// Throws InvalidInput unless both tolerances are nonnegative, not both
  /// zero, and max_subdivisions >= 1.
  void validate() const;
};

using RealFunction = std::function<double(double)>;

/// Integrates f over [a, inf).
///
/// The half-line is mapped onto [0, 1) with x = a + u / (1 - u) and the
/// transformed integrand is integrated with adaptive 7/15-point
/// Gauss-Kronrod panels, always splitting the panel with the largest error
/// estimate. Kronrod nodes are interior, so u = 1 is never evaluated.
///
/// Throws NonConvergence when max_subdivisions panels do not reach the
/// tolerance, InvalidInput when f is non-finite at an evaluation point.
double integrate_semi_infinite(const RealFunction& f, double a,
                               const QuadratureConfig& cfg = {});

/// Bisection for a monotone g on [lo, hi]. Returns the midpoint of the final
/// bracket, whose width is at most tol (or has collapsed to adjacent doubles).
/// Throws InvalidBracket when g(lo) and g(hi) have the same strict sign.
double find_root_monotone(const RealFunction& g, double lo, double hi, double tol);

struct Minimum {
  double argmin;
  double value;
};

/// Golden-section search for a unimodal g on [lo, hi]. The interior
/// candidate is compared with both endpoints afterwards, so a monotone g
/// returns the endpoint exactly. Non-finite values are treated as +inf.
/// Throws InvalidBracket when lo >= hi.
Minimum minimize_unimodal(const RealFunction& g, double lo, double hi, double tol);

}  // namespace tailbound
