#include <cmath>

#include "centering/constants.hpp"
#include "centering/errors.hpp"
#include "centering/interval.hpp"
#include "near.hpp"

using namespace centering;

namespace {
Exponent P(double p) { return Exponent::finite(p); }
GridFunction grid(std::vector<double> v) {
  GridFunction f;
  f.cells = static_cast<int>(v.size());
  for (double x : v) f.values.emplace_back(x, 0.0);
  return f;
}
}  // namespace

TEST_CASE("BetaAlgebra and J_beta") {
  CHECK_THROWS_AS(BetaAlgebra(0.0), DomainError);
  CHECK_THROWS_AS(BetaAlgebra(1.0), DomainError);
  CHECK(jbeta_map(BetaAlgebra(0.5), 1.0) == 0.0);
  CHECK(jbeta_map(BetaAlgebra(0.5), 0.5) == 0.5);
  CHECK_NEAR(jbeta_map(BetaAlgebra(0.3), 0.65), 0.15, 1e-15);
  CHECK_NEAR(jbeta_inverse(BetaAlgebra(0.3), 0.15), 0.65, 1e-15);
  CHECK_THROWS_AS(jbeta_map(BetaAlgebra(0.3), 0.2), DomainError);
  CHECK_THROWS_AS(jbeta_inverse(BetaAlgebra(0.3), 0.4), DomainError);
}

TEST_CASE("gbeta_cond_exp on functions") {
  const auto id = gbeta_cond_exp(BetaAlgebra(0.5), [](double x) { return Complex(x); });
  for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK_NEAR(id(t).real(), 0.5, 1e-15);
  const auto c = gbeta_cond_exp(BetaAlgebra(0.3), [](double) { return Complex(4.0); });
  CHECK_NEAR(c(0.1).real(), 4.0, 1e-15);
  const auto step = gbeta_cond_exp(BetaAlgebra(0.3), [](double x) { return Complex(x >= 0.3 ? 1.0 : 0.0); });
  for (double t : {0.05, 0.29, 0.31, 0.8}) CHECK_NEAR(step(t).real(), 0.7, 1e-15);
}

TEST_CASE("gbeta_cond_exp on grids") {
  const BetaAlgebra b(0.3);
  // indicator of [0.3, 1] on 10 cells -> 0.7 everywhere
  const auto step = gbeta_cond_exp(b, grid({0, 0, 0, 1, 1, 1, 1, 1, 1, 1}));
  for (Complex v : step.values) CHECK_NEAR(v.real(), 0.7, 1e-15);
  const auto constant = gbeta_cond_exp(b, grid(std::vector<double>(10, 2.5)));
  for (Complex v : constant.values) CHECK(v.real() == 2.5);
  CHECK_THROWS_AS(gbeta_cond_exp(BetaAlgebra(0.25), grid(std::vector<double>(10, 1.0))), DomainError);

  // agrees with the pointwise formula at every refined cell midpoint
  const GridFunction f = grid({1, -2, 0.5, 3, 0, 4, -1, 2, 2, 7});
  const GridFunction g = gbeta_cond_exp(b, f);
  CHECK(g.cells % 10 == 0);
  const auto pointwise = gbeta_cond_exp(b, [&](double x) { return f.at(x); });
  for (int c = 0; c < g.cells; ++c) {
    const double t = (c + 0.5) / g.cells;
    CHECK_NEAR(std::abs(g.values[static_cast<std::size_t>(c)] - pointwise(t)), 0.0, 1e-12);
  }
  // exact idempotence, same grid
  CHECK(gbeta_cond_exp(b, g) == g);
  // paired cells carry equal values: check via the pointwise pairing
  for (int c = 0; c < g.cells; ++c) {
    const double t = (c + 0.5) / g.cells;
    if (t < 0.3) continue;
    CHECK(g.at(t) == g.at(jbeta_map(b, t)));
  }
}

TEST_CASE("gbeta_norm") {
  CHECK(gbeta_norm(BetaAlgebra(0.4), P(2)) == 1.0);
  CHECK_NEAR(gbeta_norm(BetaAlgebra(0.3), Exponent::infinity()), 1.4, 1e-15);
  CHECK(gbeta_norm(BetaAlgebra(0.3), P(1)) == gbeta_norm(BetaAlgebra(0.3), Exponent::infinity()));
  CHECK_NEAR(gbeta_norm(BetaAlgebra(0.3), P(3)), 1.03588946405653817, 1e-14);
  for (double p : {1.3, 2.5, 6.0}) {
    for (double beta : {0.1, 0.6}) {
      CHECK_NEAR(gbeta_norm(BetaAlgebra(beta), P(p)), gbeta_norm(BetaAlgebra(beta), P(p).dual()), 1e-12);
    }
  }
}

TEST_CASE("gbeta_extremal") {
  const auto half = gbeta_extremal(BetaAlgebra(0.5), P(2));
  CHECK_NEAR(half.gamma_star, 0.5, 1e-15);
  CHECK_NEAR(half.kappa, std::sqrt(0.5), 1e-15);
  CHECK_NEAR(half.ratio, 1.0, 1e-12);
  const auto e = gbeta_extremal(BetaAlgebra(0.3), P(3));
  CHECK_NEAR(e.gamma_star, 0.395643923738960002, 1e-14);
  CHECK_NEAR(e.ratio, 1.03588946405653817, 1e-10);
  REQUIRE(e.xi);
  CHECK(e.xi->cells == 10);
  // the grid extremal reproduces the ratio through the grid operator
  const GridFunction ce = gbeta_cond_exp(BetaAlgebra(0.3), *e.xi);
  GridFunction diff = ce;
  const int k = ce.cells / e.xi->cells;
  for (int c = 0; c < ce.cells; ++c) {
    diff.values[static_cast<std::size_t>(c)] = e.xi->values[static_cast<std::size_t>(c / k)] - ce.values[static_cast<std::size_t>(c)];
  }
  CHECK_NEAR(lp_norm(diff, P(3)) / lp_norm(*e.xi, P(3)), e.ratio, 1e-12);
  CHECK_FALSE(gbeta_extremal(BetaAlgebra(1.0 / std::numbers::pi), P(3)).xi);
  CHECK_THROWS_AS(gbeta_extremal(BetaAlgebra(0.3), Exponent::infinity()), DomainError);
}

TEST_CASE("discretize_check") {
  CHECK_NEAR(discretize_check(BetaAlgebra(0.5), P(2), 10).numeric_norm, 1.0, 1e-9);
  const auto r = discretize_check(BetaAlgebra(0.3), P(3), 10);
  CHECK_NEAR(r.numeric_norm, 1.03588946405653817, 1e-9);
  CHECK_NEAR(r.analytic_norm, 1.03588946405653817, 1e-14);
  CHECK_NEAR(discretize_check(BetaAlgebra(0.25), Exponent::infinity(), 8).numeric_norm, 1.5, 1e-12);
  CHECK_THROWS_AS(discretize_check(BetaAlgebra(0.25), P(3), 10), DomainError);
  CHECK_THROWS_AS(discretize_check(BetaAlgebra(0.5), P(3), 1024), DomainError);
}

TEST_CASE("find_beta_for_constant") {
  for (double p : {1.5, 3.0, 7.0}) {
    const double top = max_cp(P(p)).value;
    for (double c : {1.0, 0.5 * (1 + top), top}) {
      const auto s = find_beta_for_constant(P(p), c);
      REQUIRE(s.beta);
      CHECK_NEAR(gbeta_norm(BetaAlgebra(*s.beta), P(p)), c, 1e-9);
    }
  }
  const auto inf = find_beta_for_constant(Exponent::infinity(), 2.0);
  CHECK(inf.trivial_algebra);
  CHECK_FALSE(inf.beta);
  CHECK_NEAR(*find_beta_for_constant(Exponent::infinity(), 1.4).beta, 0.3, 1e-15);
  CHECK_THROWS_AS(find_beta_for_constant(P(3), 1.5), DomainError);
  CHECK(*find_beta_for_constant(P(2), 1.0).beta == 0.5);
}
