#include "centering/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "centering/bcap.hpp"
#include "centering/constants.hpp"
#include "centering/interval.hpp"
#include "centering/io.hpp"
#include "centering/mixture.hpp"
#include "centering/opnorm.hpp"
#include "centering/sampling.hpp"

namespace centering {
namespace {

using io::fmt12;

class Reporter {
 public:
  void check(const std::string& name, bool ok, const std::string& detail) {
    out_.report += (ok ? "PASS " : "FAIL ") + name + (detail.empty() ? "" : " " + detail) + "\n";
    (ok ? out_.passed : out_.failed) += 1;
  }
  // Runs a check body; an exception counts as a failure.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, std::string("threw: ") + e.what());
    }
  }
  VerifyOutcome take() { return std::move(out_); }

 private:
  VerifyOutcome out_;
};

struct Ctx {
  Reporter& rep;
  sampling::Rng rng;
  OptimizerOptions opts;
};

const std::vector<double> kSweep{1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0};

void suite_constants(Ctx& c) {
  c.rep.guarded("constants.explicit", [&] {
    const double c3 = std::cbrt(17.0 + 7.0 * std::sqrt(7.0)) / 3.0;
    const double c4 = std::pow(1.0 + 2.0 * std::sqrt(3.0) / 3.0, 0.25);
    const double v3 = max_cp(Exponent::finite(3)).value, v4 = max_cp(Exponent::finite(4)).value;
    c.rep.check("constants.explicit", std::abs(v3 - c3) <= 1e-9 && std::abs(v4 - c4) <= 1e-9,
                "C3=" + fmt12(v3) + " C4=" + fmt12(v4));
  });
  c.rep.guarded("constants.duality", [&] {
    double worst = 0.0, excess = -INFINITY;
    for (double p : kSweep) {
      const Exponent e = Exponent::finite(p);
      const double v = max_cp(e).value;
      worst = std::max(worst, std::abs(v - max_cp(e.dual()).value));
      excess = std::max(excess, v - riesz_thorin_bound(e));
    }
    c.rep.check("constants.duality", worst <= 1e-9 && excess <= 1e-12,
                "max_gap=" + fmt12(worst) + " max_excess_over_bound=" + fmt12(excess));
  });
  c.rep.guarded("constants.uniform_closed_form", [&] {
    double worst = 0.0;
    for (double p : {1.5, 2.5, 3.0, 4.0}) {
      for (int n : {2, 3, 4}) {
        const Exponent e = Exponent::finite(p);
        worst = std::max(worst, std::abs(uniform_n_constant(e, n).value - uniform_n_closed_form(e, n)));
      }
    }
    c.rep.check("constants.uniform_closed_form", worst <= 1e-12, "max_gap=" + fmt12(worst));
  });
  c.rep.guarded("constants.extremal_ratio", [&] {
    std::uniform_real_distribution<double> a(0.01, 0.99);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Exponent p = sampling::interior_exponent(c.rng);
      const double alpha = a(c.rng);
      worst = std::max(worst, std::abs(extremal_two_point(p, alpha).ratio - cp_alpha(p, alpha)));
    }
    c.rep.check("constants.extremal_ratio", worst <= 1e-10, "max_gap=" + fmt12(worst));
  });
}

void suite_prob_core(Ctx& c) {
  c.rep.guarded("prob_core.projection", [&] {
    int bad = 0;
    double worst_ratio = -INFINITY;
    for (int i = 0; i < 2000; ++i) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(c.rng);
      const auto sp = sampling::space(c.rng, n);
      const auto part = sampling::partition(c.rng, n);
      const auto xi = sampling::randvar(c.rng, n, i % 2 == 1);
      const Exponent p = sampling::exponent(c.rng);
      const RandVar once = cond_expectation(xi, part, sp);
      if (!(cond_expectation(once, part, sp) == once)) ++bad;
      if (lp_norm(once, sp, p) > lp_norm(xi, sp, p) * (1 + 1e-12)) ++bad;
      const double bound = p.is_interior() ? max_cp(p).value : (p.value() == 1.0 || p.is_infinite() ? 2.0 : 1.0);
      const double r = centering_ratio(xi, part, sp, p);
      worst_ratio = std::max(worst_ratio, r - bound);
      if (r > bound + 1e-9) ++bad;
    }
    c.rep.check("prob_core.projection", bad == 0,
                "violations=" + std::to_string(bad) + " max_ratio_minus_bound=" + fmt12(worst_ratio));
  });
}

void suite_opnorm(Ctx& c) {
  c.rep.guarded("opnorm.two_point", [&] {
    double worst = 0.0;
    for (double p : {1.25, 1.5, 3.0, 6.0}) {
      for (double a : {0.05, 0.2, 0.35, 0.5, 0.8}) {
        const Exponent e = Exponent::finite(p);
        const auto r = cp_of_space(FiniteProbSpace({a, 1.0 - a}), Partition::trivial(2), e, c.opts);
        worst = std::max(worst, std::abs(r.value - cp_alpha(e, a)));
      }
    }
    c.rep.check("opnorm.two_point", worst <= 1e-6, "max_gap=" + fmt12(worst));
  });
  c.rep.guarded("opnorm.uniform_3_4", [&] {
    double worst = 0.0;
    for (double p : {1.5, 2.5, 3.0, 4.0}) {
      for (int n : {3, 4}) {
        const Exponent e = Exponent::finite(p);
        const auto r = cp_of_space(FiniteProbSpace::uniform(static_cast<std::size_t>(n)),
                                   Partition::trivial(static_cast<std::size_t>(n)), e, c.opts);
        worst = std::max(worst, std::abs(r.value - uniform_n_closed_form(e, n)));
      }
    }
    c.rep.check("opnorm.uniform_3_4", worst <= 1e-6, "max_gap=" + fmt12(worst));
  });
  c.rep.guarded("opnorm.three_point", [&] {
    const Exponent p = Exponent::finite(3);
    const CpMaximum top = max_cp(p);
    const double tau = 0.01, a = *top.argmax_alpha;
    const FiniteProbSpace sp({tau * (1 - a), tau * a, 1 - tau});
    const Partition part({{0, 1}, {2}}, 3);
    const double g = cp_of_space(sp, part, p, c.opts).value;
    const double t = cp_of_space(sp, Partition::trivial(3), p, c.opts).value;
    const double bound = 1 + std::cbrt(tau) + std::pow(tau, 2.0 / 3.0);
    c.rep.check("opnorm.three_point", std::abs(g - top.value) <= 1e-6 && t <= bound + 1e-6,
                "blocked=" + fmt12(g) + " trivial=" + fmt12(t) + " bound=" + fmt12(bound));
  });
  c.rep.guarded("opnorm.oracle_below", [&] {
    double worst = -INFINITY;
    for (int i = 0; i < 20; ++i) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 7)(c.rng);
      const auto sp = sampling::space(c.rng, n);
      const Exponent p = sampling::interior_exponent(c.rng);
      const double cp = cp_of_space(sp, Partition::trivial(n), p, c.opts).value;
      worst = std::max(worst, two_value_oracle(sp, p).value - cp);
    }
    c.rep.check("opnorm.oracle_below", worst <= 1e-6, "max_oracle_excess=" + fmt12(worst));
  });
}

void suite_mixture(Ctx& c) {
  c.rep.guarded("mixture.reconstruction", [&] {
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const auto d = sampling::zero_mean(c.rng, 10);
      const auto m = decompose_zero_mean(d);
      if (m.components.size() + 1 > d.atoms().size()) ++bad;
      for (const Atom& a : d.atoms()) worst = std::max(worst, std::abs(m.marginal(a.value) - a.mass));
      for (const auto& comp : m.components) {
        const auto& t = comp.dist;
        if (!(t.value1.real() < 0 && t.value2.real() > 0) || std::abs(t.mean()) > 1e-10) ++bad;
      }
    }
    c.rep.check("mixture.reconstruction", bad == 0 && worst <= 1e-10,
                "bad=" + std::to_string(bad) + " max_marginal_gap=" + fmt12(worst));
  });
  c.rep.guarded("mixture.ratio_bound", [&] {
    double worst = -INFINITY;
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(c.rng);
      const auto sp = sampling::space(c.rng, n);
      const auto xi = sampling::randvar(c.rng, n, false);
      const Exponent p = sampling::interior_exponent(c.rng);
      const auto r = verify_ratio_via_mixture(xi, sp, p);
      worst = std::max({worst, r.ratio - r.component_max, r.component_max - max_cp(p).value});
    }
    c.rep.check("mixture.ratio_bound", worst <= 1e-9, "max_excess=" + fmt12(worst));
  });
}

void suite_interval(Ctx& c) {
  c.rep.guarded("interval.discretize", [&] {
    double worst = 0.0;
    for (const Exponent& p : {Exponent::finite(1.5), Exponent::finite(3), Exponent::infinity()}) {
      for (double beta : {0.1, 0.3, 0.5, 0.7}) {
        const auto r = discretize_check(BetaAlgebra(beta), p, 10, c.opts);
        worst = std::max(worst, std::abs(r.numeric_norm - r.analytic_norm));
      }
    }
    c.rep.check("interval.discretize", worst <= 1e-6, "max_gap=" + fmt12(worst));
  });
  c.rep.guarded("interval.extremal", [&] {
    double worst = 0.0;
    for (double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
      for (double beta : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const Exponent e = Exponent::finite(p);
        const BetaAlgebra b(beta);
        worst = std::max(worst, std::abs(gbeta_extremal(b, e).ratio - gbeta_norm(b, e)));
      }
    }
    c.rep.check("interval.extremal", worst <= 1e-10, "max_gap=" + fmt12(worst));
  });
  c.rep.guarded("interval.bisection", [&] {
    double worst = 0.0;
    for (double p : {1.5, 3.0, 4.0}) {
      const Exponent e = Exponent::finite(p);
      const double top = max_cp(e).value;
      for (double target : {1.0, 0.5 * (1.0 + top), top}) {
        worst = std::max(worst, std::abs(find_beta_for_constant(e, target).value - target));
      }
    }
    c.rep.check("interval.bisection", worst <= 1e-9, "max_gap=" + fmt12(worst));
  });
  c.rep.guarded("interval.cond_exp", [&] {
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
      const int cells = 10 * std::uniform_int_distribution<int>(1, 4)(c.rng);
      const int m = std::uniform_int_distribution<int>(1, cells - 1)(c.rng);
      const BetaAlgebra b(static_cast<double>(m) / cells);
      const GridFunction f = sampling::grid_function(c.rng, cells);
      const GridFunction once = gbeta_cond_exp(b, f);
      if (!(gbeta_cond_exp(b, once) == once)) ++bad;
      for (const Exponent& p : {Exponent::finite(1), Exponent::finite(2), Exponent::finite(3),
                                Exponent::infinity()}) {
        if (lp_norm(once, p) > lp_norm(f, p) * (1 + 1e-12)) ++bad;
      }
    }
    c.rep.check("interval.cond_exp", bad == 0, "violations=" + std::to_string(bad));
  });
}

void suite_bcap(Ctx& c) {
  c.rep.guarded("bcap.certificates", [&] {
    int bad = 0;
    double worst_bound = -INFINITY;
    for (int i = 0; i < 10; ++i) {
      const int cells = 48;
      std::vector<GridFunction> fs;
      for (int k = 0; k < 3; ++k) fs.push_back(sampling::grid_function(c.rng, cells));
      const Exponent p = sampling::interior_exponent(c.rng);
      const double eps = std::uniform_real_distribution<double>(0.05, 0.5)(c.rng);
      const auto cert = build_bcap_approximant(fs, p, eps, c.opts);
      for (double e : cert.per_function_error) bad += e < eps ? 0 : 1;
      worst_bound = std::max(worst_bound, cert.norm_bound - max_cp(p).value);
    }
    c.rep.check("bcap.certificates", bad == 0 && worst_bound <= 1e-9,
                "bad=" + std::to_string(bad) + " max_bound_excess=" + fmt12(worst_bound));
  });
  c.rep.guarded("bcap.nu_doubling", [&] {
    const Exponent p = Exponent::finite(3);
    double prev = 0.0, drop = 0.0, last = 0.0;
    for (int n : {2, 4, 8, 16, 32}) {
      last = nu_estimate(1.0, p, n, c.opts);
      drop = std::max(drop, prev - last);
      prev = last;
    }
    const double top = max_cp(p).value;
    c.rep.check("bcap.nu_doubling", drop <= 1e-6 && last <= top + 1e-6,
                "nu32=" + fmt12(last) + " C3=" + fmt12(top) + " max_drop=" + fmt12(drop));
  });
  c.rep.guarded("bcap.eigen_sanctioned", [&] {
    const Exponent p = Exponent::finite(3);
    const int n = 8;
    double worst = INFINITY;
    bool all_sanctioned = true;
    std::vector<Matrix> family{uniform_block_cond_exp(1, n).cast<Complex>(),
                               uniform_block_cond_exp(2, n).cast<Complex>(),
                               Complex(0.5) * uniform_block_cond_exp(1, n).cast<Complex>()};
    for (const Matrix& t : family) {
      const auto e = eigen_lower_bound_check(t, p, n, c.opts);
      worst = std::min(worst, e.min_slack);
      all_sanctioned = all_sanctioned && e.sanctioned;
    }
    c.rep.check("bcap.eigen_sanctioned", all_sanctioned && worst >= -1e-4, "min_slack=" + fmt12(worst));
  });
}

struct Suite {
  const char* name;
  void (*run)(Ctx&);
};

const Suite kSuites[] = {{"constants", suite_constants}, {"prob_core", suite_prob_core},
                         {"opnorm", suite_opnorm},       {"mixture", suite_mixture},
                         {"interval", suite_interval},   {"bcap", suite_bcap}};

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Suite& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

VerifyOutcome run_verify(const std::string& suite, std::uint64_t seed, int starts, unsigned workers) {
  const auto& names = verify_suites();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  Reporter rep;
  for (std::size_t i = 0; i < std::size(kSuites); ++i) {
    if (suite != "all" && suite != kSuites[i].name) continue;
    // each suite gets its own stream so suites can be run alone with equal results
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    Ctx ctx{rep, sampling::Rng(seq), {}};
    ctx.opts.seed = seed;
    ctx.opts.starts = starts;
    ctx.opts.workers = workers;
    kSuites[i].run(ctx);
  }
  VerifyOutcome out = rep.take();
  out.report += "summary seed=" + std::to_string(seed) + " passed=" + std::to_string(out.passed) +
                " failed=" + std::to_string(out.failed) + "\n";
  return out;
}

}  // namespace centering
