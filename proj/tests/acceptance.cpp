// Acceptance criteria 1-11. Each prints one PASS/FAIL line with its runtime;
// exceeding the runtime budget is a failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "centering/bcap.hpp"
#include "centering/constants.hpp"
#include "centering/interval.hpp"
#include "centering/io.hpp"
#include "centering/mixture.hpp"
#include "centering/opnorm.hpp"
#include "centering/sampling.hpp"
#include "centering/verify.hpp"

using namespace centering;
using io::fmt12;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

Exponent P(double p) { return Exponent::finite(p); }

OptimizerOptions parallel_opts() {
  OptimizerOptions o;
  o.workers = 0;
  return o;
}

Outcome ac1() {
  const double c3 = std::cbrt(17 + 7 * std::sqrt(7.0)) / 3, c4 = std::pow(1 + 2 * std::sqrt(3.0) / 3, 0.25);
  const double v3 = max_cp(P(3)).value, v4 = max_cp(P(4)).value;
  return {std::abs(v3 - c3) <= 1e-9 && std::abs(v4 - c4) <= 1e-9,
          "C3=" + fmt12(v3) + " (closed " + fmt12(c3) + ") C4=" + fmt12(v4) + " (closed " + fmt12(c4) + ")"};
}

Outcome ac2() {
  double gap = 0.0, excess = -INFINITY;
  for (double p : {1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0}) {
    const double v = max_cp(P(p)).value;
    gap = std::max(gap, std::abs(v - max_cp(P(p).dual()).value));
    excess = std::max(excess, v - riesz_thorin_bound(P(p)));
  }
  return {gap <= 1e-9 && excess <= 0.0, "max duality gap=" + fmt12(gap) + " max(C_p - 2^|1-2/p|)=" + fmt12(excess)};
}

Outcome ac3() {
  const auto opts = parallel_opts();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Exponent p = P(std::exp(std::log(1.1) + (std::log(12.0) - std::log(1.1)) * i / 19.0));
    for (int k = 1; k <= 20; ++k) {
      const double a = k / 21.0;
      const auto r = cp_of_space(FiniteProbSpace({a, 1 - a}), Partition::trivial(2), p, opts);
      worst = std::max(worst, std::abs(r.value - cp_alpha(p, a)));
    }
  }
  return {worst <= 1e-6, "400 (p, alpha) points, max |cp_of_space - C_p(alpha)|=" + fmt12(worst)};
}

Outcome ac4() {
  const auto opts = parallel_opts();
  double worst = 0.0;
  for (double p : {1.5, 2.5, 3.0, 4.0}) {
    for (std::size_t n : {3u, 4u}) {
      const auto r = cp_of_space(FiniteProbSpace::uniform(n), Partition::trivial(n), P(p), opts);
      worst = std::max(worst, std::abs(r.value - uniform_n_closed_form(P(p), static_cast<int>(n))));
    }
  }
  return {worst <= 1e-6, "max |cp_of_space - closed form|=" + fmt12(worst)};
}

Outcome ac5() {
  sampling::Rng rng(5);
  int violations = 0;
  double worst = -INFINITY;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
    const auto sp = sampling::space(rng, n);
    const auto part = sampling::partition(rng, n);
    const auto xi = sampling::randvar(rng, n, t % 2 == 1);
    const Exponent p = sampling::exponent(rng);
    const double r = centering_ratio(xi, part, sp, p) - max_cp(p).value;
    worst = std::max(worst, r);
    if (r > 1e-9) ++violations;
  }
  return {violations == 0, "10000 trials, violations=" + std::to_string(violations) +
                               " max(ratio - C_p)=" + fmt12(worst)};
}

Outcome ac6() {
  const auto opts = parallel_opts();
  const Exponent p = P(3);
  const CpMaximum top = max_cp(p);
  const double tau = 0.01, a = *top.argmax_alpha;
  const FiniteProbSpace sp({tau * (1 - a), tau * a, 1 - tau});
  const double g = cp_of_space(sp, Partition({{0, 1}, {2}}, 3), p, opts).value;
  const double t = cp_of_space(sp, Partition::trivial(3), p, opts).value;
  const double bound = 1 + std::cbrt(tau) + std::pow(tau, 2.0 / 3.0);
  return {std::abs(g - top.value) <= 1e-6 && t <= bound + 1e-6,
          "G={{-1,1},{0}}: " + fmt12(g) + " vs C3=" + fmt12(top.value) + "; trivial: " + fmt12(t) +
              " <= " + fmt12(bound)};
}

Outcome ac7() {
  const auto opts = parallel_opts();
  std::vector<Exponent> ps;
  for (double p : {1.1, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0}) ps.push_back(P(p));
  ps.push_back(Exponent::infinity());
  double disc = 0.0, ext = 0.0, bis = 0.0;
  int trivial = 0;
  for (const Exponent& p : ps) {
    for (int k = 1; k <= 9; ++k) {
      const BetaAlgebra b(k / 10.0);
      const auto d = discretize_check(b, p, 10, opts);
      disc = std::max(disc, std::abs(d.numeric_norm - gbeta_norm(b, p)));
      if (p.is_interior()) ext = std::max(ext, std::abs(gbeta_extremal(b, p).ratio - gbeta_norm(b, p)));
    }
    const double top = max_cp(p).value;
    for (double c : {1.0, 0.5 * (1 + top), top}) {
      const auto s = find_beta_for_constant(p, c);
      if (s.trivial_algebra) ++trivial;
      const double v = s.beta ? gbeta_norm(BetaAlgebra(*s.beta), p) : s.value;
      bis = std::max(bis, std::abs(v - c));
    }
  }
  return {disc <= 1e-6 && ext <= 1e-10 && bis <= 1e-9,
          "90 (p, beta) cells: max discretize gap=" + fmt12(disc) + " max extremal gap=" + fmt12(ext) +
              " max bisection gap=" + fmt12(bis) + " (" + std::to_string(trivial) +
              " target reached by the trivial sigma-algebra: p=inf, c=2)"};
}

Outcome ac8() {
  sampling::Rng rng(8);
  int bad = 0;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto d = sampling::zero_mean(rng, 10);
    const auto m = decompose_zero_mean(d);
    if (m.components.size() > d.atoms().size() - 1) ++bad;
    for (const auto& c : m.components) {
      if (!(c.dist.value1.real() < 0 && c.dist.value2.real() > 0) || std::abs(c.dist.mean()) > 1e-10) ++bad;
    }
    for (const Atom& a : d.atoms()) worst = std::max(worst, std::abs(m.marginal(a.value) - a.mass));
  }
  return {bad == 0 && worst <= 1e-10,
          "1000 distributions, structural violations=" + std::to_string(bad) + " max marginal gap=" + fmt12(worst)};
}

Outcome ac9() {
  const auto opts = parallel_opts();
  sampling::Rng rng(9);
  int bad_err = 0;
  double bound_excess = -INFINITY;
  for (int batch = 0; batch < 50; ++batch) {
    const int cells = std::uniform_int_distribution<int>(16, 64)(rng);
    const int count = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<GridFunction> fs;
    for (int k = 0; k < count; ++k) fs.push_back(sampling::grid_function(rng, cells));
    const Exponent p = sampling::interior_exponent(rng);
    const double eps = std::uniform_real_distribution<double>(0.02, 0.5)(rng);
    const auto cert = build_bcap_approximant(fs, p, eps, opts);
    for (double e : cert.per_function_error) bad_err += e < eps ? 0 : 1;
    bound_excess = std::max(bound_excess, cert.norm_bound - max_cp(p).value);
  }
  // substituted lower-bound property, p = 3, along the doubling sequence
  const Exponent p3 = P(3);
  const double c3 = max_cp(p3).value;
  double prev = 0.0, drop = 0.0, above = -INFINITY, nu64 = 0.0;
  for (int n : {2, 4, 8, 16, 32, 64}) {
    const double v = nu_estimate(1.0, p3, n, opts);
    drop = std::max(drop, prev - v);
    above = std::max(above, v - c3);
    prev = nu64 = v;
  }
  const bool ok = bad_err == 0 && bound_excess <= 1e-9 && drop <= 1e-6 && above <= 1e-6 && c3 - nu64 <= 5e-3;
  return {ok, "50 batches: error violations=" + std::to_string(bad_err) +
                  " max(norm_bound - C_p)=" + fmt12(bound_excess) + "; nu(1,3,n), n=2,4,...,64: max drop=" +
                  fmt12(drop) + " max(nu - C3)=" + fmt12(above) + " C3 - nu64=" + fmt12(c3 - nu64)};
}

// Not a criterion: nu over every n in 2..64 is not monotone; printed so the
// reading of AC9 as the doubling sequence stays visible.
std::string ac9_every_n_note() {
  const auto opts = parallel_opts();
  const Exponent p3 = P(3);
  double prev = 0.0, worst = 0.0;
  int drops = 0, at = 0;
  for (int n = 2; n <= 64; ++n) {
    const double v = nu_estimate(1.0, p3, n, opts);
    if (v < prev - 1e-6) {
      ++drops;
      if (prev - v > worst) {
        worst = prev - v;
        at = n;
      }
    }
    prev = v;
  }
  return "every n in 2..64: " + std::to_string(drops) + " decreases, largest " + fmt12(worst) + " at n=" +
         std::to_string(at - 1) + "->" + std::to_string(at);
}

Outcome ac10() {
  const auto opts = parallel_opts();
  const int n = 32;
  const Exponent p = P(3);
  struct Case {
    std::string name;
    Matrix t;
  };
  auto blocks = [](std::vector<int> sizes) {
    int dim = 0;
    for (int s : sizes) dim += s;
    Matrix m = Matrix::Zero(dim, dim);
    int at = 0;
    for (int s : sizes) {
      m.block(at, at, s, s).setConstant(Complex(1.0 / s));
      at += s;
    }
    return m;
  };
  std::vector<Case> cases{{"E", blocks({32})},
                          {"E^G{32,32}", blocks({32, 32})},
                          {"E^G{32,32,32}", blocks({32, 32, 32})},
                          {"E^G{32,32,32,32}", blocks({32, 32, 32, 32})},
                          {"E^G{32,64}", blocks({32, 64})},
                          {"0.5E", Complex(0.5) * blocks({32})}};
  double worst = INFINITY;
  bool sanctioned = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto r = eigen_lower_bound_check(c.t, p, n, opts);
    worst = std::min(worst, r.min_slack);
    sanctioned = sanctioned && r.sanctioned;
    detail += " " + c.name + ":" + fmt12(r.min_slack);
  }
  return {worst >= -1e-4 && sanctioned, "p=3, nu at n=32, min_slack per operator:" + detail};
}

Outcome ac11() {
  const VerifyOutcome a = run_verify("all", 7, 64, 0);
  const VerifyOutcome b = run_verify("all", 7, 64, 1);
  return {a.report == b.report && a.failed == 0,
          "verify --suite all --seed 7 twice (different worker counts): " +
              std::string(a.report == b.report ? "identical" : "DIFFERENT") + ", " + std::to_string(a.passed) +
              " checks passed, " + std::to_string(a.failed) + " failed"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{{1, 1, ac1},   {2, 5, ac2},   {3, 30, ac3},  {4, 10, ac4},
                                   {5, 30, ac5},  {6, 5, ac6},   {7, 60, ac7},  {8, 5, ac8},
                                   {9, 60, ac9},  {10, 60, ac10}, {11, 300, ac11}};
  int failures = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget;
    const bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    std::printf("AC%-2d %s  %.2fs (budget %gs%s)  %s\n", c.id, pass ? "PASS" : "FAIL", secs, c.budget,
                in_time ? "" : ", EXCEEDED", o.detail.c_str());
    std::fflush(stdout);
    if (c.id == 9) std::printf("     note: %s\n", ac9_every_n_note().c_str());
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
