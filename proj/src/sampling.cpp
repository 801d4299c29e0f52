#include "centering/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace centering::sampling {

FiniteProbSpace space(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(n);
  for (double& x : w) x = u(rng);
  return FiniteProbSpace::normalize(std::move(w));
}

Partition partition(Rng& rng, std::size_t n) {
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
  std::uniform_int_distribution<std::size_t> label(0, k - 1);
  std::map<std::size_t, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < n; ++i) by_label[label(rng)].push_back(i);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [l, b] : by_label) blocks.push_back(std::move(b));
  return Partition(std::move(blocks), n);
}

RandVar randvar(Rng& rng, std::size_t n, bool complex_values) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (Complex& z : v) {
    const double re = g(rng);
    const double im = complex_values ? g(rng) : 0.0;
    z = {re, im};
  }
  return RandVar(std::move(v));
}

Exponent exponent(Rng& rng) {
  const int pick = std::uniform_int_distribution<int>(0, 9)(rng);
  if (pick == 0) return Exponent::infinity();
  if (pick == 1) return Exponent::finite(1.0);
  if (pick == 2) return Exponent::finite(2.0);
  return interior_exponent(rng);
}

Exponent interior_exponent(Rng& rng) {
  // log-uniform so that both sides of p = 2 get weight
  std::uniform_real_distribution<double> u(std::log(1.05), std::log(12.0));
  return Exponent::finite(std::exp(u(rng)));
}

DiscreteDistribution zero_mean(Rng& rng, std::size_t max_atoms) {
  std::uniform_int_distribution<std::size_t> count(2, max_atoms);
  std::uniform_real_distribution<double> val(-5.0, 5.0), mass(0.05, 1.0);
  for (;;) {
    const std::size_t n = count(rng);
    std::vector<Atom> atoms(n);
    double total = 0.0;
    for (Atom& a : atoms) {
      a = {val(rng), mass(rng)};
      total += a.mass;
    }
    double mean = 0.0;
    for (Atom& a : atoms) {
      a.mass /= total;
      mean += a.mass * a.value;
    }
    for (Atom& a : atoms) a.value -= mean;
    double sum = 0.0, residual = 0.0;
    for (const Atom& a : atoms) sum += a.mass;
    for (Atom& a : atoms) a.mass /= sum;
    for (const Atom& a : atoms) residual += a.mass * a.value;
    for (Atom& a : atoms) a.value -= residual;
    std::vector<double> vals;
    for (const Atom& a : atoms) vals.push_back(a.value);
    std::sort(vals.begin(), vals.end());
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(vals[i]) < 1e-6 || (i && vals[i] - vals[i - 1] < 1e-6)) ok = false;
    }
    if (ok) return DiscreteDistribution(std::move(atoms));
  }
}

GridFunction grid_function(Rng& rng, int cells) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng), b = u(rng), freq = 1.0 + 3.0 * std::abs(u(rng));
  const double step_at = 0.5 + 0.5 * u(rng), jump = u(rng);
  GridFunction f;
  f.cells = cells;
  for (int i = 0; i < cells; ++i) {
    const double t = (i + 0.5) / cells;
    double v = a * t + b * std::sin(2.0 * std::numbers::pi * freq * t);
    if (t > step_at) v += jump;
    f.values.emplace_back(v, 0.0);
  }
  return f;
}

}  // namespace centering::sampling
