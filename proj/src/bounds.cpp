#include "tailbound/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "tailbound/error.hpp"

namespace tailbound {

namespace {

void require_positive_threshold(double nu) {
  if (!std::isfinite(nu) || !(nu > 0.0)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "threshold nu must be positive, got %g", nu);
    throw InvalidInput(buf);
  }
}

void require_nonnegative_exponent(double t) {
  if (!(t >= 0.0)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "Chernoff exponent t must be nonnegative, got %g", t);
    throw DomainError(buf);
  }
}

double enhanced_chernoff(const Distribution& dist, double nu, double t,
                         const QuadratureConfig& cfg) {
  if (t == 0.0) {
    return tail(dist, nu, cfg);
  }
  return restricted_mgf(dist, nu, t, cfg) * std::exp(-t * nu);
}

double traditional_chernoff(const Distribution& dist, double nu, double t,
                            const QuadratureConfig& cfg) {
  return restricted_mgf(dist, 0.0, t, cfg) * std::exp(-t * nu);
}

}  // namespace

double accuracy_ratio(const ComparisonRow& row) {
  const double enhanced_gap = row.enhanced - row.tail;
  const double traditional_gap = row.traditional - row.tail;
  if (enhanced_gap == 0.0) {
    return traditional_gap == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                  : std::numeric_limits<double>::infinity();
  }
  return traditional_gap / enhanced_gap;
}

ComparisonRow moment_bounds(const Distribution& dist, double nu, MomentOrder order,
                            const QuadratureConfig& cfg) {
  require_positive_threshold(nu);
  const double scale = std::pow(nu, order.value());
  return {nu, tail(dist, nu, cfg), restricted_moment(dist, nu, order, cfg) / scale,
          moment(dist, order, cfg) / scale};
}

ComparisonRow markov_bounds(const Distribution& dist, double nu, const QuadratureConfig& cfg) {
  return moment_bounds(dist, nu, MomentOrder(1), cfg);
}

ComparisonRow chernoff_bounds(const Distribution& dist, double nu, double t,
                              const QuadratureConfig& cfg) {
  require_positive_threshold(nu);
  require_nonnegative_exponent(t);
  return {nu, tail(dist, nu, cfg), enhanced_chernoff(dist, nu, t, cfg),
          traditional_chernoff(dist, nu, t, cfg)};
}

double evaluate_bound(const Distribution& dist, double nu, const BoundKind& kind,
                      const QuadratureConfig& cfg) {
  struct Visitor {
    const Distribution& dist;
    double nu;
    const QuadratureConfig& cfg;
    double operator()(const TraditionalMarkov&) const { return markov_bounds(dist, nu, cfg).traditional; }
    double operator()(const EnhancedMarkov&) const { return markov_bounds(dist, nu, cfg).enhanced; }
    double operator()(const TraditionalMoment& m) const {
      return moment_bounds(dist, nu, m.order, cfg).traditional;
    }
    double operator()(const EnhancedMoment& m) const {
      return moment_bounds(dist, nu, m.order, cfg).enhanced;
    }
    double operator()(const TraditionalChernoff& c) const {
      return chernoff_bounds(dist, nu, c.t, cfg).traditional;
    }
    double operator()(const EnhancedChernoff& c) const {
      return chernoff_bounds(dist, nu, c.t, cfg).enhanced;
    }
  };
  return std::visit(Visitor{dist, nu, cfg}, kind);
}

std::string bound_name(const BoundKind& kind) {
  struct Visitor {
    std::string operator()(const TraditionalMarkov&) const { return "markov"; }
    std::string operator()(const EnhancedMarkov&) const { return "enhanced-markov"; }
    std::string operator()(const TraditionalMoment& m) const {
      return "moment:k=" + std::to_string(m.order.value());
    }
    std::string operator()(const EnhancedMoment& m) const {
      return "enhanced-moment:k=" + std::to_string(m.order.value());
    }
    std::string operator()(const TraditionalChernoff& c) const { return "chernoff:t=" + number(c.t); }
    std::string operator()(const EnhancedChernoff& c) const {
      return "enhanced-chernoff:t=" + number(c.t);
    }
    static std::string number(double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.10g", v);
      return buf;
    }
  };
  return std::visit(Visitor{}, kind);
}

ChernoffResult optimize_chernoff(const Distribution& dist, double nu, ChernoffVariant variant,
                                 std::optional<double> t_max, const QuadratureConfig& cfg) {
  require_positive_threshold(nu);
  if (t_max && !(*t_max > 0.0)) {
    throw InvalidInput("t_max must be positive");
  }
  double hi = t_max.value_or(50.0 / nu);
  if (const auto* e = std::get_if<Exponential>(&dist.variant())) {
    const double limit = e->rate * (1.0 - 1e-6);
    hi = t_max ? std::min(*t_max, limit) : limit;
  }
  constexpr double lo = 0.0;

  const auto objective = [&](double t) {
    try {
      const double v = variant == ChernoffVariant::enhanced ? enhanced_chernoff(dist, nu, t, cfg)
                                                            : traditional_chernoff(dist, nu, t, cfg);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const NonConvergence&) {
      return std::numeric_limits<double>::infinity();
    } catch (const InvalidInput&) {
      // integrand overflowed
      return std::numeric_limits<double>::infinity();
    }
  };

  const double tol = 1e-10 * std::max(1.0, hi);
  const Minimum best = minimize_unimodal(objective, lo, hi, tol);
  if (!std::isfinite(best.value)) {
    throw NonConvergence("Chernoff objective is not finite anywhere on the searched bracket");
  }
  const bool at_boundary = best.argmin - lo <= tol || hi - best.argmin <= tol;
  return {best.argmin, best.value, variant, at_boundary};
}

}  // namespace tailbound
