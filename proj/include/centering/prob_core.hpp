#ifndef CENTERING_PROB_CORE_HPP
#define CENTERING_PROB_CORE_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "centering/exponent.hpp"

namespace centering {

using Complex = std::complex<double>;

/// Discrete probability space: at least two atoms, every weight positive,
/// weights summing to 1 within 1e-12. Weights are validated, never repaired.
class FiniteProbSpace {
 public:
  explicit FiniteProbSpace(std::vector<double> weights);

  static FiniteProbSpace uniform(std::size_t n);
  /// Scales positive weights to sum 1 before validating.
  static FiniteProbSpace normalize(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// A random variable on a finite space: one complex value per atom.
class RandVar {
 public:
  RandVar() = default;
  explicit RandVar(std::vector<Complex> values) : values_(std::move(values)) {}
  RandVar(std::initializer_list<Complex> values) : values_(values) {}

  static RandVar from_real(std::span<const double> values);
  static RandVar constant(std::size_t n, Complex c);

  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  std::span<const Complex> values() const { return values_; }
  std::vector<Complex>& mutable_values() { return values_; }

  bool is_real() const;

  friend bool operator==(const RandVar&, const RandVar&) = default;

 private:
  std::vector<Complex> values_;
};

/// Partition of the atoms {0, ..., n-1} into nonempty disjoint blocks;
/// on a finite space this is the same thing as a sub-sigma-algebra.
class Partition {
 public:
  /// Throws DomainError unless blocks are nonempty, disjoint and cover
  /// exactly the atoms 0..atom_count-1.
  Partition(std::vector<std::vector<std::size_t>> blocks, std::size_t atom_count);

  static Partition trivial(std::size_t n);
  static Partition singletons(std::size_t n);

  std::size_t atom_count() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t atom) const { return block_of_[atom]; }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

Complex expectation(const RandVar& xi, const FiniteProbSpace& sp);

/// (sum_i w_i |xi_i|^p)^{1/p}; max_i |xi_i| for p = inf.
double lp_norm(const RandVar& xi, const FiniteProbSpace& sp, Exponent p);

/// Block-wise weighted means. A block on which xi is constant keeps that
/// value bit-for-bit, so the operator is exactly idempotent.
RandVar cond_expectation(const RandVar& xi, const Partition& part,
                         const FiniteProbSpace& sp);

/// The matrix of E^G: entry (i, j) = w_j / P(block(i)) when j shares i's block.
Eigen::MatrixXd cond_exp_matrix(const Partition& part, const FiniteProbSpace& sp);

/// ||xi - E^G xi||_p / ||xi||_p; DomainError for xi = 0.
double centering_ratio(const RandVar& xi, const Partition& part,
                       const FiniteProbSpace& sp, Exponent p);

/// Weighted L^p norm of a plain coefficient vector; shared by the
/// optimizers that work on Eigen vectors.
double lp_norm(const Eigen::VectorXcd& v, std::span<const double> weights, Exponent p);

}  // namespace centering

#endif  // CENTERING_PROB_CORE_HPP
