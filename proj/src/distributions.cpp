#include "tailbound/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "tailbound/error.hpp"

namespace tailbound {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void require_threshold(double nu) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw InvalidInput("threshold must be finite and nonnegative, got " + format_param(nu));
  }
}

double half_normal_density(double sigma, double x) {
  return std::sqrt(2.0 / std::numbers::pi) / sigma * std::exp(-0.5 * (x / sigma) * (x / sigma));
}

double checked_generic_density(const Generic& g, double x) {
  const double v = g.density(x);
  if (v < 0.0) {
    throw InvalidInput("generic density is negative at x = " + format_param(x));
  }
  return v;
}

// log(erfc(z)), switching to the asymptotic expansion before erfc underflows.
double log_erfc(double z) {
  if (z < 26.0) {
    return std::log(std::erfc(z));
  }
  const double inv_z2 = 1.0 / (z * z);
  return -z * z - std::log(z) - 0.5 * std::log(std::numbers::pi) +
         std::log1p(-0.5 * inv_z2 + 0.75 * inv_z2 * inv_z2);
}

double power(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) {
    r *= x;
  }
  return r;
}

void require_mgf_domain(const Distribution& dist, double t) {
  if (!std::isfinite(t)) {
    throw DomainError("MGF exponent must be finite");
  }
  if (const auto* e = std::get_if<Exponential>(&dist.variant()); e && t >= e->rate) {
    throw DomainError("t = " + format_param(t) + " is outside the MGF domain t < rate = " +
                      format_param(e->rate) + " of " + dist.describe());
  }
}

double parse_number(std::string_view text, std::string_view spec) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidInput("bad number '" + std::string(text) + "' in distribution spec '" +
                       std::string(spec) + "'");
  }
  return v;
}

}  // namespace

MomentOrder::MomentOrder(int k) : k_(k) {
  if (k < 1) {
    throw InvalidInput("moment order must be at least 1, got " + std::to_string(k));
  }
}

Distribution Distribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidInput("exponential rate must be positive and finite");
  }
  return Distribution(Exponential{rate});
}

Distribution Distribution::half_normal(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidInput("half-normal sigma must be positive and finite");
  }
  return Distribution(HalfNormal{sigma});
}

Distribution Distribution::generic(RealFunction density_fn, std::optional<double> mean_hint,
                                   const QuadratureConfig& cfg) {
  if (!density_fn) {
    throw InvalidInput("generic distribution needs a density");
  }
  if (mean_hint && !(*mean_hint > 0.0)) {
    throw InvalidInput("mean_hint must be positive");
  }
  Distribution dist(Generic{std::move(density_fn), mean_hint});
  const auto& g = std::get<Generic>(dist.variant_);

  const double mass =
      integrate_semi_infinite([&](double x) { return checked_generic_density(g, x); }, 0.0, cfg);
  if (std::abs(mass - 1.0) > 1e-6) {
    throw InvalidInput("generic density integrates to " + format_param(mass) + ", not 1");
  }
  if (mean_hint) {
    const double mean = moment(dist, MomentOrder(1), cfg);
    if (std::abs(mean - *mean_hint) > 1e-6 * std::max(1.0, *mean_hint)) {
      throw InvalidInput("generic density has mean " + format_param(mean) +
                         " but mean_hint is " + format_param(*mean_hint));
    }
  }
  return dist;
}

std::string Distribution::family() const {
  return std::visit(Overloaded{[](const Exponential&) { return std::string("exponential"); },
                               [](const HalfNormal&) { return std::string("halfnormal"); },
                               [](const Generic&) { return std::string("generic"); }},
                    variant_);
}

std::string Distribution::describe() const {
  return std::visit(
      Overloaded{
          [](const Exponential& e) { return "exponential(rate=" + format_param(e.rate) + ")"; },
          [](const HalfNormal& h) { return "halfnormal(sigma=" + format_param(h.sigma) + ")"; },
          [](const Generic& g) {
            return g.mean_hint ? "generic(mean=" + format_param(*g.mean_hint) + ")"
                               : std::string("generic");
          }},
      variant_);
}

Distribution parse_distribution(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto eq = spec.find('=', colon == std::string_view::npos ? 0 : colon);
  if (colon == std::string_view::npos || eq == std::string_view::npos) {
    throw InvalidInput("distribution spec '" + std::string(spec) +
                       "' must look like family:param=value");
  }
  const auto family = spec.substr(0, colon);
  const auto param = spec.substr(colon + 1, eq - colon - 1);
  const double value = parse_number(spec.substr(eq + 1), spec);
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidInput("parameter in distribution spec '" + std::string(spec) +
                       "' must be positive");
  }

  if (family == "exponential") {
    if (param == "rate") return Distribution::exponential(value);
    if (param == "mean") return Distribution::exponential(1.0 / value);
  } else if (family == "halfnormal") {
    if (param == "sigma") return Distribution::half_normal(value);
    // mean = sigma * sqrt(2 / pi)
    if (param == "mean") return Distribution::half_normal(value * std::sqrt(std::numbers::pi / 2.0));
  } else {
    throw InvalidInput("unknown distribution family '" + std::string(family) + "'");
  }
  throw InvalidInput("unknown parameter '" + std::string(param) + "' for " + std::string(family));
}

double density(const Distribution& dist, double x) {
  if (x < 0.0) {
    return 0.0;
  }
  return std::visit(
      Overloaded{[&](const Exponential& e) { return e.rate * std::exp(-e.rate * x); },
                 [&](const HalfNormal& h) { return half_normal_density(h.sigma, x); },
                 [&](const Generic& g) { return checked_generic_density(g, x); }},
      dist.variant());
}

double tail(const Distribution& dist, double x, const QuadratureConfig& cfg) {
  if (!std::isfinite(x) || x < 0.0) {
    throw InvalidInput("tail argument must be finite and nonnegative, got " + format_param(x));
  }
  if (x == 0.0) {
    return 1.0;
  }
  return std::visit(
      Overloaded{[&](const Exponential& e) { return std::exp(-e.rate * x); },
                 [&](const HalfNormal& h) { return std::erfc(x / (h.sigma * std::numbers::sqrt2)); },
                 [&](const Generic& g) {
                   const double upper = integrate_semi_infinite(
                       [&](double y) { return checked_generic_density(g, y); }, x, cfg);
                   return std::clamp(upper, 0.0, 1.0);
                 }},
      dist.variant());
}

double cdf(const Distribution& dist, double x, const QuadratureConfig& cfg) {
  return 1.0 - tail(dist, x, cfg);
}

double restricted_moment(const Distribution& dist, double nu, MomentOrder order,
                         const QuadratureConfig& cfg) {
  require_threshold(nu);
  const int k = order.value();
  if (const auto* e = std::get_if<Exponential>(&dist.variant())) {
    // rate^-k * Gamma(k + 1, rate * nu), with
    // Gamma(k + 1, y) = k! e^-y sum_{j<=k} y^j / j!
    const double y = e->rate * nu;
    double term = 1.0;
    double partial = 1.0;
    double factorial = 1.0;
    for (int j = 1; j <= k; ++j) {
      term *= y / j;
      partial += term;
      factorial *= j;
    }
    return factorial * std::exp(-y) * partial / power(e->rate, k);
  }
  if (const auto* h = std::get_if<HalfNormal>(&dist.variant()); h && k == 1) {
    return h->sigma * std::sqrt(2.0 / std::numbers::pi) *
           std::exp(-0.5 * (nu / h->sigma) * (nu / h->sigma));
  }
  return restricted_moment_quadrature(dist, nu, order, cfg);
}

double restricted_moment_quadrature(const Distribution& dist, double nu, MomentOrder order,
                                    const QuadratureConfig& cfg) {
  require_threshold(nu);
  const int k = order.value();
  return integrate_semi_infinite(
      [&](double x) {
        const double fx = density(dist, x);
        return fx == 0.0 ? 0.0 : power(x, k) * fx;
      },
      nu, cfg);
}

double moment(const Distribution& dist, MomentOrder order, const QuadratureConfig& cfg) {
  return restricted_moment(dist, 0.0, order, cfg);
}

double restricted_mgf(const Distribution& dist, double nu, double t, const QuadratureConfig& cfg) {
  require_threshold(nu);
  require_mgf_domain(dist, t);
  if (t == 0.0) {
    return tail(dist, nu, cfg);
  }
  if (const auto* e = std::get_if<Exponential>(&dist.variant())) {
    const double gap = e->rate - t;
    return e->rate * std::exp(-gap * nu) / gap;
  }
  if (const auto* h = std::get_if<HalfNormal>(&dist.variant())) {
    // exp(sigma^2 t^2 / 2) * erfc((nu / sigma - sigma t) / sqrt 2), in log space
    const double s = h->sigma;
    const double z = (nu / s - s * t) / std::numbers::sqrt2;
    return std::exp(0.5 * s * s * t * t + log_erfc(z));
  }
  return restricted_mgf_quadrature(dist, nu, t, cfg);
}

double restricted_mgf_quadrature(const Distribution& dist, double nu, double t,
                                 const QuadratureConfig& cfg) {
  require_threshold(nu);
  require_mgf_domain(dist, t);
  const auto integrand = std::visit(
      Overloaded{
          [&](const Exponential& e) -> RealFunction {
            return [rate = e.rate, t](double x) { return rate * std::exp((t - rate) * x); };
          },
          [&](const HalfNormal& h) -> RealFunction {
            const double s = h.sigma;
            const double scale = std::sqrt(2.0 / std::numbers::pi) / s;
            return [s, scale, t](double x) {
              return scale * std::exp(t * x - 0.5 * (x / s) * (x / s));
            };
          },
          [&](const Generic& g) -> RealFunction {
            return [&g, t](double x) {
              const double fx = checked_generic_density(g, x);
              return fx == 0.0 ? 0.0 : std::exp(t * x) * fx;
            };
          }},
      dist.variant());
  return integrate_semi_infinite(integrand, nu, cfg);
}

double tail_quantile(const Distribution& dist, double q, const QuadratureConfig& cfg) {
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidInput("tail probability must lie in (0, 1), got " + format_param(q));
  }
  double lo = 0.0;
  double hi = 1.0;
  while (tail(dist, hi, cfg) > q) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw InvalidBracket("no finite upper bracket for tail probability " + format_param(q));
    }
  }
  return find_root_monotone([&](double x) { return tail(dist, x, cfg) - q; }, lo, hi,
                            1e-12 * std::max(1.0, hi));
}

double quantile(const Distribution& dist, double p, const QuadratureConfig& cfg) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidInput("probability must lie in (0, 1), got " + format_param(p));
  }
  // F(x) - p = (1 - p) - tail(x); root-find on the tail side
  return tail_quantile(dist, 1.0 - p, cfg);
}

}  // namespace tailbound
