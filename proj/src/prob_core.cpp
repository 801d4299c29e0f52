#include "centering/prob_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "centering/errors.hpp"

namespace centering {
namespace {

void require_length(std::size_t got, const FiniteProbSpace& sp) {
  if (got != sp.size()) {
    throw DomainError("random variable has " + std::to_string(got) +
                      " values but the space has " + std::to_string(sp.size()) +
                      " atoms");
  }
}

void require_partition(const Partition& part, const FiniteProbSpace& sp) {
  if (part.atom_count() != sp.size()) {
    throw DomainError("partition covers " + std::to_string(part.atom_count()) +
                      " atoms but the space has " + std::to_string(sp.size()));
  }
}

// Scaled evaluation keeps huge and tiny entries from overflowing |x|^p.
template <typename AbsAt>
double scaled_lp(std::size_t n, AbsAt abs_at, std::span<const double> w, Exponent p) {
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, abs_at(i));
  if (p.is_infinite() || peak == 0.0) return peak;
  const double pp = p.value();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = abs_at(i) / peak;
    if (r > 0.0) sum += w[i] * std::pow(r, pp);
  }
  return peak * std::pow(sum, 1.0 / pp);
}

}  // namespace

FiniteProbSpace::FiniteProbSpace(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw DomainError("a probability space needs at least 2 atoms");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DomainError("atom weights must be positive and finite");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("atom weights must sum to 1 (got " + std::to_string(total) + ")");
  }
}

FiniteProbSpace FiniteProbSpace::uniform(std::size_t n) {
  return FiniteProbSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteProbSpace FiniteProbSpace::normalize(std::vector<double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("cannot normalize weights with nonpositive sum");
  for (double& w : weights) w /= total;
  return FiniteProbSpace(std::move(weights));
}

RandVar RandVar::from_real(std::span<const double> values) {
  std::vector<Complex> out(values.begin(), values.end());
  return RandVar(std::move(out));
}

RandVar RandVar::constant(std::size_t n, Complex c) {
  return RandVar(std::vector<Complex>(n, c));
}

bool RandVar::is_real() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](Complex z) { return z.imag() == 0.0; });
}

Partition::Partition(std::vector<std::vector<std::size_t>> blocks, std::size_t atom_count)
    : blocks_(std::move(blocks)), block_of_(atom_count, atom_count) {
  std::size_t covered = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw DomainError("partition blocks must be nonempty");
    for (std::size_t atom : blocks_[b]) {
      if (atom >= atom_count) {
        throw DomainError("partition refers to atom " + std::to_string(atom) +
                          " outside 0.." + std::to_string(atom_count - 1));
      }
      if (block_of_[atom] != atom_count) {
        throw DomainError("partition blocks overlap at atom " + std::to_string(atom));
      }
      block_of_[atom] = b;
      ++covered;
    }
  }
  if (covered != atom_count) throw DomainError("partition does not cover every atom");
}

Partition Partition::trivial(std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Partition({std::move(all)}, n);
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[i] = {i};
  return Partition(std::move(blocks), n);
}

Complex expectation(const RandVar& xi, const FiniteProbSpace& sp) {
  require_length(xi.size(), sp);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) sum += sp.weight(i) * xi[i];
  return sum;
}

double lp_norm(const RandVar& xi, const FiniteProbSpace& sp, Exponent p) {
  require_length(xi.size(), sp);
  return scaled_lp(xi.size(), [&](std::size_t i) { return std::abs(xi[i]); },
                   sp.weights(), p);
}

double lp_norm(const Eigen::VectorXcd& v, std::span<const double> weights, Exponent p) {
  return scaled_lp(static_cast<std::size_t>(v.size()),
                   [&](std::size_t i) { return std::abs(v(static_cast<Eigen::Index>(i))); },
                   weights, p);
}

RandVar cond_expectation(const RandVar& xi, const Partition& part,
                         const FiniteProbSpace& sp) {
  require_length(xi.size(), sp);
  require_partition(part, sp);
  RandVar out = xi;
  for (const auto& block : part.blocks()) {
    // mean = anchor + sum w_i (xi_i - anchor) / W is exact on constant blocks
    const Complex anchor = xi[block.front()];
    double mass = 0.0;
    Complex shift = 0.0;
    for (std::size_t i : block) {
      mass += sp.weight(i);
      shift += sp.weight(i) * (xi[i] - anchor);
    }
    const Complex mean = anchor + shift / mass;
    for (std::size_t i : block) out[i] = mean;
  }
  return out;
}

Eigen::MatrixXd cond_exp_matrix(const Partition& part, const FiniteProbSpace& sp) {
  require_partition(part, sp);
  const auto n = static_cast<Eigen::Index>(sp.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& block : part.blocks()) {
    double mass = 0.0;
    for (std::size_t j : block) mass += sp.weight(j);
    for (std::size_t i : block) {
      for (std::size_t j : block) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sp.weight(j) / mass;
      }
    }
  }
  return m;
}

double centering_ratio(const RandVar& xi, const Partition& part,
                       const FiniteProbSpace& sp, Exponent p) {
  const double denom = lp_norm(xi, sp, p);
  if (denom == 0.0) throw DomainError("centering ratio undefined for the zero random variable");
  const RandVar mean = cond_expectation(xi, part, sp);
  RandVar diff = xi;
  for (std::size_t i = 0; i < xi.size(); ++i) diff[i] -= mean[i];
  return lp_norm(diff, sp, p) / denom;
}

}  // namespace centering
