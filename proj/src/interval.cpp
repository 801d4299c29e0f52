#include "centering/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include <boost/rational.hpp>

#include "centering/constants.hpp"
#include "centering/errors.hpp"

namespace centering {
namespace {

using Rat = boost::rational<long long>;
using i128 = __int128;

constexpr long long kMaxRefinedCells = 1LL << 24;

// beta = m / cells exactly, or DomainError.
long long grid_numerator(double beta, long long cells) {
  const double scaled = beta * static_cast<double>(cells);
  const double m = std::round(scaled);
  if (std::abs(scaled - m) > 1e-12 * std::max(1.0, scaled) || m <= 0 || m >= cells) {
    throw DomainError("beta = " + std::to_string(beta) + " is not a cell boundary of the " +
                      std::to_string(cells) + "-cell grid");
  }
  return static_cast<long long>(m);
}

Rat jmap(Rat beta, Rat x) { return beta * (Rat(1) - x) / (Rat(1) - beta); }
Rat jinv(Rat beta, Rat y) { return Rat(1) - (Rat(1) - beta) * y / beta; }

long long floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return static_cast<long long>(q);
}

}  // namespace

BetaAlgebra::BetaAlgebra(double beta) : beta_(beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
}

double jbeta_map(const BetaAlgebra& b, double x) {
  const double beta = b.beta();
  if (!(x >= beta && x <= 1.0)) throw DomainError("J_beta is defined on [beta, 1]");
  return beta * (1.0 - x) / (1.0 - beta);
}

double jbeta_inverse(const BetaAlgebra& b, double y) {
  const double beta = b.beta();
  if (!(y >= 0.0 && y <= beta)) throw DomainError("J_beta^{-1} is defined on [0, beta]");
  return 1.0 - (1.0 - beta) * y / beta;
}

void GridFunction::validate() const {
  if (cells < 1) throw DomainError("grid needs at least one cell");
  if (values.size() != static_cast<std::size_t>(cells)) {
    throw DomainError("grid function has " + std::to_string(values.size()) +
                      " values for " + std::to_string(cells) + " cells");
  }
}

Complex GridFunction::at(double x) const {
  const auto i = static_cast<long long>(std::floor(x * cells));
  return values[static_cast<std::size_t>(std::clamp<long long>(i, 0, cells - 1))];
}

double lp_norm(const GridFunction& f, Exponent p) {
  f.validate();
  const std::vector<double> w(f.values.size(), 1.0 / f.cells);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(f.values.size()));
  for (std::size_t i = 0; i < f.values.size(); ++i) v(static_cast<Eigen::Index>(i)) = f.values[i];
  return lp_norm(v, w, p);
}

GridFunction gbeta_cond_exp(const BetaAlgebra& b, const GridFunction& xi) {
  xi.validate();
  const long long n = xi.cells;
  const long long m = grid_numerator(b.beta(), n);
  const Rat beta(m, n);

  // Jumps of the result sit on jumps of xi, their J-images and beta. The
  // set is closed under J, so a second application keeps the grid.
  std::set<Rat> jumps{beta};
  for (long long k = 1; k < n; ++k) {
    if (xi.values[static_cast<std::size_t>(k - 1)] == xi.values[static_cast<std::size_t>(k)]) {
      continue;
    }
    const Rat x(k, n);
    jumps.insert(x);
    jumps.insert(x >= beta ? jmap(beta, x) : jinv(beta, x));
  }
  long long cells = n;
  for (const Rat& r : jumps) {
    cells = std::lcm(cells, r.denominator());
    if (cells > kMaxRefinedCells) throw DomainError("refined G_beta grid exceeds 2^24 cells");
  }

  const i128 a = beta.numerator(), den = beta.denominator();
  const i128 big = cells, coarse = n;
  GridFunction out;
  out.cells = static_cast<int>(cells);
  out.values.resize(static_cast<std::size_t>(cells));
  const double wb = b.beta();
  for (long long c = 0; c < cells; ++c) {
    // midpoint t = (2c+1) / (2 cells); right/left partner cell indices of xi
    const i128 odd = 2 * static_cast<i128>(c) + 1;
    long long right, left;
    if (odd * den < 2 * big * a) {
      left = floor_div(odd * coarse, 2 * big);
      right = floor_div((2 * big * a - (den - a) * odd) * coarse, 2 * big * a);
    } else {
      right = floor_div(odd * coarse, 2 * big);
      left = floor_div(a * (2 * big - odd) * coarse, (den - a) * 2 * big);
    }
    right = std::clamp<long long>(right, 0, n - 1);
    left = std::clamp<long long>(left, 0, n - 1);
    const Complex vr = xi.values[static_cast<std::size_t>(right)];
    const Complex vl = xi.values[static_cast<std::size_t>(left)];
    out.values[static_cast<std::size_t>(c)] = vr == vl ? vr : (1.0 - wb) * vr + wb * vl;
  }
  return out;
}

IntervalFunction gbeta_cond_exp(const BetaAlgebra& b, IntervalFunction xi) {
  return [b, xi = std::move(xi)](double t) -> Complex {
    const double beta = b.beta();
    if (t >= beta) return (1.0 - beta) * xi(t) + beta * xi(jbeta_map(b, t));
    return (1.0 - beta) * xi(jbeta_inverse(b, t)) + beta * xi(t);
  };
}

double gbeta_norm(const BetaAlgebra& b, Exponent p) {
  if (!p.is_interior()) return 2.0 * std::max(b.beta(), 1.0 - b.beta());
  return cp_alpha(p, b.beta());
}

GbetaExtremal gbeta_extremal(const BetaAlgebra& b, Exponent p) {
  if (!p.is_interior()) throw DomainError("G_beta extremal needs finite p > 1");
  using R = long double;
  const R beta = b.beta(), pv = p.value(), s = 1 / (pv - 1);
  const R gb = std::pow(beta, s), ga = std::pow(1 - beta, s);
  const R gamma = gb / (ga + gb);
  const R kappa = std::pow(beta * (std::pow(1 - beta, pv - 1) + std::pow(beta, pv - 1)), 1 / pv);
  const R c1 = std::pow(gamma / (1 - beta), 1 / pv);
  const R c2 = -std::pow((1 - gamma) * (1 - beta) / (gamma * beta), 1 / pv) * c1;
  const R mean = (1 - beta) * c1 + beta * c2;
  const R top = (1 - beta) * std::pow(std::abs(c1 - mean), pv) + beta * std::pow(std::abs(c2 - mean), pv);
  const R bottom = (1 - beta) * std::pow(std::abs(c1), pv) + beta * std::pow(std::abs(c2), pv);

  GbetaExtremal out;
  out.gamma_star = static_cast<double>(gamma);
  out.kappa = static_cast<double>(kappa);
  out.c1 = static_cast<double>(c1);
  out.c2 = static_cast<double>(c2);
  out.ratio = static_cast<double>(std::pow(top / bottom, 1 / pv));
  for (int n = 2; n <= 10000; ++n) {
    const double scaled = b.beta() * n;
    if (std::abs(scaled - std::round(scaled)) > 1e-12 * n) continue;
    const auto m = static_cast<std::size_t>(std::round(scaled));
    GridFunction f;
    f.cells = n;
    f.values.assign(static_cast<std::size_t>(n), Complex(out.c1));
    std::fill_n(f.values.begin(), m, Complex(out.c2));
    out.xi = std::move(f);
    break;
  }
  return out;
}

DiscretizeReport discretize_check(const BetaAlgebra& b, Exponent p, int cells,
                                  const OptimizerOptions& opts) {
  if (cells < 2 || cells > 512) throw DomainError("discretize_check needs 2 <= cells <= 512");
  const long long n = cells;
  const long long m = grid_numerator(b.beta(), n);
  const Rat beta(m, n);

  // breakpoints of the common refinement, seen on [0, beta]
  std::set<Rat> left;
  for (long long j = 0; j <= m; ++j) left.insert(Rat(j, n));
  for (long long k = m; k <= n; ++k) left.insert(jmap(beta, Rat(k, n)));
  const std::vector<Rat> pts(left.begin(), left.end());

  std::vector<double> mass;
  std::vector<std::vector<std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rat len = pts[i + 1] - pts[i];
    const Rat partner = len * (Rat(1) - beta) / beta;
    pairs.push_back({mass.size(), mass.size() + 1});
    mass.push_back(boost::rational_cast<double>(len));
    mass.push_back(boost::rational_cast<double>(partner));
  }
  const FiniteProbSpace sp(mass);
  const Partition part(pairs, mass.size());
  const OptReport r = operator_norm(identity_minus(cond_exp_matrix(part, sp)), sp, p, opts);

  DiscretizeReport out;
  out.numeric_norm = r.value;
  out.analytic_norm = gbeta_norm(b, p);
  out.pieces = static_cast<int>(mass.size());
  out.converged = r.converged;
  return out;
}

BetaSearch find_beta_for_constant(Exponent p, double target) {
  BetaSearch out;
  if (!p.is_interior() || p.value() == 1.0) {
    // 2 max(beta, 1 - beta) covers [1, 2); c = 2 needs G trivial
    if (!(target >= 1.0 && target <= 2.0 + 1e-12)) {
      throw DomainError("target must lie in [1, 2] for p in {1, inf}");
    }
    if (target >= 2.0 - 1e-15) {
      out.trivial_algebra = true;
      out.value = 2.0;
      return out;
    }
    out.beta = 1.0 - target / 2.0;
    out.value = gbeta_norm(BetaAlgebra(*out.beta), p);
    return out;
  }
  const CpMaximum top = max_cp(p);
  if (!(target >= 1.0 - 1e-12 && target <= top.value + 1e-9)) {
    throw DomainError("target must lie in [1, C_p]");
  }
  if (!top.argmax_alpha) {  // p = 2, C_2(beta) = 1 for all beta
    out.beta = 0.5;
    out.value = 1.0;
    return out;
  }
  // C_p(beta) decreases from C_p at alpha_p to 1 at beta = 1/2
  double lo = *top.argmax_alpha, hi = 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cp_alpha(p, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double flo = cp_alpha(p, lo), fhi = cp_alpha(p, hi);
  out.beta = std::abs(flo - target) <= std::abs(fhi - target) ? lo : hi;
  out.value = cp_alpha(p, *out.beta);
  return out;
}

}  // namespace centering
