#include "tailbound/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "tailbound/error.hpp"

namespace tailbound {

void QuadratureConfig::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) {
    throw InvalidInput("quadrature tolerances must be nonnegative");
  }
  if (abs_tol == 0.0 && rel_tol == 0.0) {
    throw InvalidInput("quadrature tolerances must not both be zero");
  }
  if (max_subdivisions < 1) {
    throw InvalidInput("max_subdivisions must be at least 1");
  }
}

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule. Odd indices of the
// Kronrod nodes are the Gauss nodes; index 7 is the centre.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double result;
  double error;
};

bool smaller_error(const Panel& a, const Panel& b) { return a.error < b.error; }

template <class F>
Panel gauss_kronrod(const F& g, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double fc = g(centre);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = g(centre - dx) + g(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) {
      gauss += kGaussWeights[i / 2] * pair;
    }
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

double integrate_semi_infinite(const RealFunction& f, double a, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a)) {
    throw InvalidInput("integration start must be finite");
  }

  auto mapped = [&](double u) {
    const double w = 1.0 - u;
    const double x = a + u / w;
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      std::ostringstream msg;
      msg << "integrand is not finite at x = " << x;
      throw InvalidInput(msg.str());
    }
    return fx == 0.0 ? 0.0 : fx / (w * w);
  };

  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + 1);
  heap.push_back(gauss_kronrod(mapped, 0.0, 1.0));

  for (;;) {
    double result = 0.0;
    double error = 0.0;
    for (const Panel& p : heap) {
      result += p.result;
      error += p.error;
    }
    if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(result))) {
      return result;
    }
    if (static_cast<int>(heap.size()) >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature did not converge in " << cfg.max_subdivisions
          << " subdivisions (estimate " << result << ", error " << error << ")";
      throw NonConvergence(msg.str());
    }

    std::pop_heap(heap.begin(), heap.end(), smaller_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw NonConvergence("quadrature panel can no longer be subdivided");
    }
    heap.push_back(gauss_kronrod(mapped, worst.lo, mid));
    std::push_heap(heap.begin(), heap.end(), smaller_error);
    heap.push_back(gauss_kronrod(mapped, mid, worst.hi));
    std::push_heap(heap.begin(), heap.end(), smaller_error);
  }
}

double find_root_monotone(const RealFunction& g, double lo, double hi, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidInput("root tolerance must be positive");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidBracket("root bracket must be finite");
  }
  if (lo > hi) {
    std::swap(lo, hi);
  }
  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (g_lo == 0.0) {
    return lo;
  }
  if (g_hi == 0.0) {
    return hi;
  }
  if (std::signbit(g_lo) == std::signbit(g_hi)) {
    std::ostringstream msg;
    msg << "g has the same sign at both ends of [" << lo << ", " << hi << "]";
    throw InvalidBracket(msg.str());
  }

  const bool lo_negative = g_lo < 0.0;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      break;
    }
    const double g_mid = g(mid);
    if (g_mid == 0.0) {
      return mid;
    }
    if ((g_mid < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

Minimum minimize_unimodal(const RealFunction& g, double lo, double hi, double tol) {
  if (!(lo < hi)) {
    throw InvalidBracket("minimization bracket needs lo < hi");
  }
  if (!(tol > 0.0)) {
    throw InvalidInput("minimization tolerance must be positive");
  }
  auto eval = [&](double t) {
    const double v = g(t);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    // <= sends ties (including inf == inf) towards lo
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
    if (!(c > a && d < b)) {
      break;
    }
  }

  Minimum best = fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
  const double f_lo = eval(lo);
  const double f_hi = eval(hi);
  if (f_lo <= best.value) {
    best = {lo, f_lo};
  }
  if (f_hi < best.value) {
    best = {hi, f_hi};
  }
  return best;
}

}  // namespace tailbound
