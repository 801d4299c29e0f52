#include <cmath>

#include "centering/constants.hpp"
#include "centering/errors.hpp"
#include "centering/prob_core.hpp"
#include "near.hpp"

using namespace centering;

TEST_CASE("FiniteProbSpace validation") {
  CHECK_NOTHROW(FiniteProbSpace({0.25, 0.75}));
  CHECK_THROWS_AS(FiniteProbSpace({1.0}), DomainError);
  CHECK_THROWS_AS(FiniteProbSpace({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(FiniteProbSpace({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(FiniteProbSpace({1.5, -0.5}), DomainError);
  CHECK_THROWS_AS(FiniteProbSpace({NAN, 0.5}), DomainError);
  CHECK(FiniteProbSpace::uniform(4).weight(2) == 0.25);
  CHECK_NEAR(FiniteProbSpace::normalize({1, 3}).weight(1), 0.75, 1e-15);
}

TEST_CASE("Partition validation") {
  CHECK_NOTHROW(Partition({{0, 2}, {1}}, 3));
  CHECK_THROWS_AS(Partition({{0, 1}, {1, 2}}, 3), DomainError);
  CHECK_THROWS_AS(Partition({{0, 1}}, 3), DomainError);
  CHECK_THROWS_AS(Partition({{0, 1}, {}}, 2), DomainError);
  CHECK_THROWS_AS(Partition({{0, 5}}, 2), DomainError);
  const Partition p({{0, 2}, {1}}, 3);
  CHECK(p.block_of(2) == 0);
  CHECK(p.block_of(1) == 1);
  CHECK(Partition::trivial(5).block_count() == 1);
  CHECK(Partition::singletons(5).block_count() == 5);
}

TEST_CASE("expectation") {
  CHECK(std::abs(expectation(RandVar{1.0, -1.0}, FiniteProbSpace::uniform(2))) == 0.0);
  CHECK_NEAR(expectation(RandVar{1.0, 0.0}, FiniteProbSpace({0.3, 0.7})).real(), 0.3, 1e-15);
  const auto e = extremal_two_point(Exponent::finite(3), 0.3);
  const RandVar xi{e.dist.value1, e.dist.value2};
  const FiniteProbSpace sp({e.dist.mass1, e.dist.mass2});
  CHECK_NEAR(expectation(xi, sp).real(), -0.095643923738960002, 1e-14);
  CHECK_THROWS_AS(expectation(RandVar{1.0}, sp), DomainError);
}

TEST_CASE("lp_norm") {
  const auto sp3 = FiniteProbSpace({0.2, 0.3, 0.5});
  for (double p : {1.0, 2.0, 3.5}) CHECK_NEAR(lp_norm(RandVar{1.0, 1.0, 1.0}, sp3, Exponent::finite(p)), 1.0, 1e-15);
  CHECK(lp_norm(RandVar{1.0, 1.0, 1.0}, sp3, Exponent::infinity()) == 1.0);
  CHECK_NEAR(lp_norm(RandVar{3.0, -4.0}, FiniteProbSpace::uniform(2), Exponent::finite(2)), 3.5355339059327378, 1e-14);
  CHECK(lp_norm(RandVar{1.0, -2.0}, FiniteProbSpace::uniform(2), Exponent::infinity()) == 2.0);
  // no overflow for huge values
  CHECK_NEAR(lp_norm(RandVar{1e300, 1e300}, FiniteProbSpace::uniform(2), Exponent::finite(4)) / 1e300, 1.0, 1e-14);
  CHECK_NEAR(lp_norm(RandVar{Complex(3, 4), 0.0}, FiniteProbSpace::uniform(2), Exponent::finite(1)), 2.5, 1e-15);
}

TEST_CASE("cond_expectation") {
  const auto sp = FiniteProbSpace::uniform(4);
  const Partition part({{0, 1}, {2, 3}}, 4);
  CHECK(cond_expectation(RandVar{1.0, 3.0, 2.0, 6.0}, part, sp) == RandVar{2.0, 2.0, 4.0, 4.0});
  const RandVar xi{0.3, -1.7, 2.2, 5.0};
  const RandVar all = cond_expectation(xi, Partition::trivial(4), sp);
  for (std::size_t i = 0; i < 4; ++i) CHECK_NEAR(std::abs(all[i] - expectation(xi, sp)), 0.0, 1e-15);
  CHECK(cond_expectation(xi, Partition::singletons(4), sp) == xi);
  // exact idempotence
  const RandVar once = cond_expectation(xi, part, sp);
  CHECK(cond_expectation(once, part, sp) == once);
}

TEST_CASE("cond_exp_matrix") {
  const auto m = cond_exp_matrix(Partition::trivial(2), FiniteProbSpace::uniform(2));
  CHECK((m.array() == 0.5).all());
  CHECK(cond_exp_matrix(Partition::singletons(3), FiniteProbSpace::uniform(3)).isIdentity());
  const auto w = cond_exp_matrix(Partition::trivial(2), FiniteProbSpace({0.25, 0.75}));
  CHECK(w(0, 0) == 0.25);
  CHECK(w(1, 1) == 0.75);
  CHECK(w(1, 0) == 0.25);
  // agrees with cond_expectation
  const FiniteProbSpace sp({0.1, 0.2, 0.3, 0.4});
  const Partition part({{0, 3}, {1, 2}}, 4);
  const RandVar xi{1.0, Complex(0, 2), -3.0, 0.5};
  const Eigen::VectorXcd v = cond_exp_matrix(part, sp).cast<Complex>() *
                             Eigen::Map<const Eigen::VectorXcd>(xi.values().data(), 4);
  const RandVar ce = cond_expectation(xi, part, sp);
  for (int i = 0; i < 4; ++i) CHECK_NEAR(std::abs(v(i) - ce[static_cast<std::size_t>(i)]), 0.0, 1e-15);
}

TEST_CASE("centering_ratio") {
  const auto u2 = FiniteProbSpace::uniform(2);
  CHECK_NEAR(centering_ratio(RandVar{1.0, -1.0}, Partition::trivial(2), u2, Exponent::finite(2)), 1.0, 1e-15);
  CHECK(centering_ratio(RandVar{2.0, 2.0}, Partition::trivial(2), u2, Exponent::finite(3)) == 0.0);
  CHECK_THROWS_AS(centering_ratio(RandVar{0.0, 0.0}, Partition::trivial(2), u2, Exponent::finite(3)), DomainError);
  const auto e = extremal_two_point(Exponent::finite(3), 0.1);
  const RandVar xi{e.dist.value1, e.dist.value2};
  const FiniteProbSpace sp({e.dist.mass1, e.dist.mass2});
  CHECK_NEAR(centering_ratio(xi, Partition::trivial(2), sp, Exponent::finite(3)), 1.09474073495968559, 1e-12);
}
