#pragma once

#include <optional>
#include <string>
#include <variant>

#include "tailbound/distributions.hpp"
#include "tailbound/numerics.hpp"

namespace tailbound {

/// One threshold with the exact tail and the two bounds that sandwich it:
/// tail <= enhanced <= traditional. Values are raw; nothing is clamped to 1.
struct ComparisonRow {
  double nu;
  double tail;
  double enhanced;
  double traditional;
};

/// (traditional - tail) / (enhanced - tail): how many times closer the
/// enhanced bound sits to the tail. +inf when the enhanced bound is exact,
/// nan when both bounds are.
double accuracy_ratio(const ComparisonRow& row);

enum class ChernoffVariant { traditional, enhanced };

struct ChernoffResult {
  double t_star;
  double bound;
  ChernoffVariant variant;
  bool at_boundary;
};

// The bound family E(phi(X) [1{X > nu}]) / phi(nu) for phi in {x, x^k, e^{tx}}.
struct TraditionalMarkov {};
struct EnhancedMarkov {};
struct TraditionalMoment {
  MomentOrder order;
};
struct EnhancedMoment {
  MomentOrder order;
};
struct TraditionalChernoff {
  double t;
};
struct EnhancedChernoff {
  double t;
};

using BoundKind = std::variant<TraditionalMarkov, EnhancedMarkov, TraditionalMoment,
                               EnhancedMoment, TraditionalChernoff, EnhancedChernoff>;

/// (tail, E_nu(X) / nu, E(X) / nu). Throws InvalidInput for nu <= 0.
ComparisonRow markov_bounds(const Distribution& dist, double nu, const QuadratureConfig& cfg = {});

/// (tail, E_nu(X^k) / nu^k, E(X^k) / nu^k). k = 1 is markov_bounds.
ComparisonRow moment_bounds(const Distribution& dist, double nu, MomentOrder order,
                            const QuadratureConfig& cfg = {});

/// (tail, E_nu(e^{tX}) e^{-t nu}, E(e^{tX}) e^{-t nu}) for t >= 0 inside the
/// MGF domain; DomainError otherwise.
ComparisonRow chernoff_bounds(const Distribution& dist, double nu, double t,
                              const QuadratureConfig& cfg = {});

/// Evaluates one member of the family.
double evaluate_bound(const Distribution& dist, double nu, const BoundKind& kind,
                      const QuadratureConfig& cfg = {});

std::string bound_name(const BoundKind& kind);

/// Minimizes the chosen Chernoff variant over t by golden-section search.
///
/// The bracket is [0, rate * (1 - 1e-6)] for an exponential and
/// [0, t_max] otherwise, with t_max defaulting to 50 / nu. An exponent at
/// which the objective overflows or cannot be integrated counts as +inf.
ChernoffResult optimize_chernoff(const Distribution& dist, double nu, ChernoffVariant variant,
                                 std::optional<double> t_max = {},
                                 const QuadratureConfig& cfg = {});

}  // namespace tailbound
