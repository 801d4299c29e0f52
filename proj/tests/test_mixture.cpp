#include <cmath>

#include "centering/constants.hpp"
#include "centering/errors.hpp"
#include "centering/mixture.hpp"
#include "near.hpp"

using namespace centering;

TEST_CASE("DiscreteDistribution validation") {
  CHECK_NOTHROW(DiscreteDistribution({{-1, 0.5}, {1, 0.5}}));
  CHECK_THROWS_AS(DiscreteDistribution({{-1, 0.5}, {-1, 0.5}}), DomainError);
  CHECK_THROWS_AS(DiscreteDistribution({{-1, 0.5}, {1, 0.6}}), DomainError);
  CHECK_THROWS_AS(DiscreteDistribution({{-1, 1.0}, {1, 0.0}}), DomainError);
}

TEST_CASE("decompose_zero_mean examples") {
  const auto one = decompose_zero_mean(DiscreteDistribution({{-1, 0.5}, {1, 0.5}}));
  REQUIRE(one.components.size() == 1);
  CHECK_NEAR(one.components[0].weight, 1.0, 1e-15);
  CHECK_NEAR(one.components[0].dist.mass1, 0.5, 1e-15);

  const auto two_point = decompose_zero_mean(DiscreteDistribution({{-2, 1.0 / 3}, {1, 2.0 / 3}}));
  CHECK(two_point.components.size() == 1);

  const auto three = decompose_zero_mean(DiscreteDistribution({{-1, 0.625}, {1, 0.25}, {3, 0.125}}));
  REQUIRE(three.components.size() == 2);
  CHECK_NEAR(three.components[0].weight, 0.5, 1e-15);
  CHECK(three.components[0].dist.value2.real() == 1.0);
  CHECK_NEAR(three.components[0].dist.mass1, 0.5, 1e-15);
  CHECK_NEAR(three.components[1].weight, 0.5, 1e-15);
  CHECK(three.components[1].dist.value2.real() == 3.0);
  CHECK_NEAR(three.components[1].dist.mass1, 0.75, 1e-15);
  CHECK_NEAR(three.components[1].dist.mass2, 0.25, 1e-15);
  for (double v : {-1.0, 1.0, 3.0}) {
    const double want = v == -1.0 ? 0.625 : (v == 1.0 ? 0.25 : 0.125);
    CHECK_NEAR(three.marginal(v), want, 1e-15);
  }
}

TEST_CASE("decompose_zero_mean errors") {
  CHECK_THROWS_AS(decompose_zero_mean(DiscreteDistribution({{1.0, 1.0}})), DomainError);
  CHECK_THROWS_AS(decompose_zero_mean(DiscreteDistribution({{-1, 0.4}, {1, 0.6}})), DomainError);
  CHECK_THROWS_AS(decompose_zero_mean(DiscreteDistribution({{-1, 0.25}, {0, 0.5}, {1, 0.25}})), DomainError);
}

TEST_CASE("strip_zero_atoms") {
  const auto d = strip_zero_atoms(DiscreteDistribution({{-1, 0.25}, {0, 0.5}, {1, 0.25}}));
  REQUIRE(d.atoms().size() == 2);
  CHECK_NEAR(d.atoms()[0].mass, 0.5, 1e-15);
  CHECK_NEAR(d.mean(), 0.0, 1e-15);
  CHECK(decompose_zero_mean(d).components.size() == 1);
}

TEST_CASE("verify_ratio_via_mixture") {
  const Exponent p = Exponent::finite(3);
  const auto e = extremal_two_point(p, 0.1);
  // space (0.9, 0.1): atom 0 carries -b with mass 1 - alpha
  const auto r = verify_ratio_via_mixture(RandVar{e.dist.value1, e.dist.value2},
                                          FiniteProbSpace({0.9, 0.1}), p);
  CHECK_NEAR(r.ratio, 1.09474073495968559, 1e-12);
  CHECK_NEAR(r.component_max, 1.09474073495968559, 1e-12);
  REQUIRE(r.component_ratios.size() == 1);
  CHECK_NEAR(r.component_ratios[0], r.ratio, 1e-12);

  CHECK_THROWS_AS(verify_ratio_via_mixture(RandVar{1.0, 1.0}, FiniteProbSpace::uniform(2), p), DomainError);
  CHECK_THROWS_AS(verify_ratio_via_mixture(RandVar{Complex(0, 1), 1.0}, FiniteProbSpace::uniform(2), p),
                  DomainError);

  // five atoms with a repeated value and an atom at the mean
  const FiniteProbSpace sp({0.1, 0.2, 0.3, 0.15, 0.25});
  const RandVar xi{2.0, -1.0, 2.0, 0.25, 0.0};
  const auto m = verify_ratio_via_mixture(xi, sp, p);
  CHECK(m.ratio <= m.component_max + 1e-9);
  CHECK(m.component_max <= max_cp(p).value + 1e-9);
  for (std::size_t k = 0; k < m.component_ratios.size(); ++k) {
    const auto& t = m.mixture.components[k].dist;
    CHECK(m.component_ratios[k] <= cp_alpha(p, std::min(t.mass1, t.mass2)) + 1e-12);
  }
}
