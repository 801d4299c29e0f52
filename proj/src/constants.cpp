#include "centering/constants.hpp"

#include <algorithm>
#include <cmath>

#include "centering/errors.hpp"

namespace centering {
namespace {

using Real = long double;

void require_interior(Exponent p) {
  if (!p.is_interior()) {
    throw DomainError("C_p(alpha) needs a finite exponent p > 1, got p = " +
                      p.to_string());
  }
}

void require_open_unit(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1)");
  }
}

// x^e for x >= 0, with 0^e = 0 for e > 0.
Real rpow(Real x, Real e) {
  if (x == 0) return 0;
  return std::exp(e * std::log(x));
}

// C_p(alpha) on the closed interval; the endpoints give the limit 1.
Real cp_closed(Real p, Real a) {
  if (a <= 0 || a >= 1) return 1;
  const Real b = 1 - a;
  const Real s = 1 / (p - 1);
  const Real first = rpow(a, p - 1) + rpow(b, p - 1);
  const Real second = rpow(a, s) + rpow(b, s);
  return std::exp(std::log(first) / p + (1 - 1 / p) * std::log(second));
}

}  // namespace

void TwoPointDistribution::validate() const {
  if (!(mass1 > 0.0 && mass1 < 1.0 && mass2 > 0.0 && mass2 < 1.0)) {
    throw DomainError("two-point masses must lie in (0, 1)");
  }
  if (std::abs(mass1 + mass2 - 1.0) > 1e-12) {
    throw DomainError("two-point masses must sum to 1");
  }
  if (value1 == value2) throw DomainError("two-point values must differ");
}

double cp_alpha(Exponent p, double alpha) {
  require_interior(p);
  require_open_unit(alpha);
  return static_cast<double>(cp_closed(p.value(), alpha));
}

CpMaximum max_cp(Exponent p) {
  if (p.is_infinite() || p.value() == 1.0) return {2.0, std::nullopt};
  if (p.value() == 2.0) return {1.0, std::nullopt};

  const Real pp = p.value();
  constexpr int kGrid = 5000;  // step 1e-4 over (0, 1/2]
  constexpr Real kStep = Real(0.5) / kGrid;

  int best = 1;
  Real best_value = cp_closed(pp, kStep);
  for (int i = 2; i <= kGrid; ++i) {
    const Real v = cp_closed(pp, i * kStep);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  // Golden-section search on the bracket around the best grid point.
  Real lo = (best - 1) * kStep;
  Real hi = std::min<Real>((best + 1) * kStep, Real(0.5));
  const Real inv_phi = (std::sqrt(Real(5)) - 1) / 2;
  Real x1 = hi - inv_phi * (hi - lo);
  Real x2 = lo + inv_phi * (hi - lo);
  Real f1 = cp_closed(pp, x1);
  Real f2 = cp_closed(pp, x2);
  while (hi - lo > Real(1e-12)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = cp_closed(pp, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = cp_closed(pp, x1);
    }
  }
  Real arg = (lo + hi) / 2;
  Real value = cp_closed(pp, arg);
  if (best_value > value) {
    value = best_value;
    arg = best * kStep;
  }
  return {static_cast<double>(value), static_cast<double>(arg)};
}

double riesz_thorin_bound(Exponent p) {
  if (p.is_infinite()) return 2.0;
  return std::pow(2.0, std::abs(1.0 - 2.0 / p.value()));
}

ExtremalTwoPoint extremal_two_point(Exponent p, double alpha) {
  require_interior(p);
  require_open_unit(alpha);
  const Real pp = p.value();
  const Real a = alpha;
  const Real s = 1 / (pp - 1);
  const Real as = rpow(a, s);
  const Real bs = rpow(1 - a, s);
  const Real denom = as + bs;
  const Real b = as / denom;

  ExtremalTwoPoint out;
  out.b = static_cast<double>(b);
  out.dist = {static_cast<double>(-b), static_cast<double>(1 - a),
              static_cast<double>(1 - b), alpha};
  out.mean = static_cast<double>((a * bs - (1 - a) * as) / denom);
  const Real abs_moment = a * (1 - a) / rpow(denom, pp - 1);
  const Real centered = a * (1 - a) * (rpow(a, pp - 1) + rpow(1 - a, pp - 1));
  out.abs_moment_p = static_cast<double>(abs_moment);
  out.centered_moment_p = static_cast<double>(centered);
  out.ratio = static_cast<double>(rpow(centered / abs_moment, 1 / pp));
  return out;
}

UniformConstant uniform_n_constant(Exponent p, int n) {
  require_interior(p);
  if (n < 2) throw DomainError("uniform space needs n >= 2 atoms");
  if (p.value() == 2.0) return {1.0, 1, 1};

  const double alpha_p = *max_cp(p).argmax_alpha;
  int k1 = static_cast<int>(std::floor(alpha_p * n));
  // guard against k/n landing a hair above alpha_p through rounding
  while (k1 > 0 && static_cast<double>(k1) / n > alpha_p) --k1;
  k1 = std::max(k1, 1);
  int k2 = k1;
  for (int k = 1; 2 * k < n; ++k) {
    if (static_cast<double>(k) / n >= alpha_p) {
      k2 = k;
      break;
    }
  }
  const double v1 = static_cast<double>(cp_closed(p.value(), Real(k1) / n));
  const double v2 = static_cast<double>(cp_closed(p.value(), Real(k2) / n));
  return {std::max(v1, v2), k1, k2};
}

double uniform_n_closed_form(Exponent p, int n) {
  require_interior(p);
  if (n < 2 || n > 4) {
    throw DomainError("closed form holds for n in {2, 3, 4}");
  }
  const Real pp = p.value();
  const Real m = n - 1;
  const Real first = rpow(rpow(m, pp - 1) + 1, 1 / pp);
  const Real second = rpow(rpow(m, 1 / (pp - 1)) + 1, 1 - 1 / pp);
  return static_cast<double>(first * second / n);
}

}  // namespace centering
