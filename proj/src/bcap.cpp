#include "centering/bcap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "centering/errors.hpp"

namespace centering {
namespace {

bool within(const std::vector<GridFunction>& fs, std::size_t lo, std::size_t hi, double limit) {
  for (const GridFunction& f : fs) {
    Complex mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mean += f.values[i];
    mean /= static_cast<double>(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      if (!(std::abs(f.values[i] - mean) < limit)) return false;
    }
  }
  return true;
}

// Connected components of the nonzero pattern, each sorted.
std::vector<std::vector<Eigen::Index>> pattern_components(const Matrix& t) {
  const Eigen::Index n = t.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      i = parent[static_cast<std::size_t>(i)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    }
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (t(i, j) != Complex(0.0)) parent[static_cast<std::size_t>(find(i))] = find(j);
    }
  }
  std::map<Eigen::Index, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<Eigen::Index>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

// Is t a sum of scaled block means with block sizes divisible by n?
bool classify(const Matrix& t, int n, std::string& note) {
  for (const auto& comp : pattern_components(t)) {
    const auto k = static_cast<Eigen::Index>(comp.size());
    const Complex c = t(comp[0], comp[0]) * static_cast<double>(k);
    for (Eigen::Index i : comp) {
      for (Eigen::Index j : comp) {
        if (std::abs(t(i, j) - c / static_cast<double>(k)) > 1e-12) {
          note = "not a combination of block means";
          return false;
        }
      }
    }
    if (std::abs(c) > 0.0 && k % n != 0) {
      note = "block of size " + std::to_string(k) + " is not a multiple of the resolution " +
             std::to_string(n) + "; outside the family where the finite inequality is exact";
      return false;
    }
  }
  note = "scaled block means, block sizes multiples of the resolution";
  return true;
}

void require_square(const Matrix& t) {
  if (t.rows() != t.cols() || t.rows() < 1) throw DomainError("T must be a nonempty square matrix");
}

}  // namespace

ApproximationCertificate build_bcap_approximant(const std::vector<GridFunction>& fs, Exponent p,
                                                double eps, const OptimizerOptions& opts) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (p.is_infinite()) throw DomainError("BCAP approximant needs a finite p");
  if (fs.empty()) throw DomainError("BCAP approximant needs at least one function");
  const int cells = fs.front().cells;
  for (const GridFunction& f : fs) {
    f.validate();
    if (f.cells != cells) throw DomainError("functions must share a cell count");
  }

  const auto n = static_cast<std::size_t>(cells);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && within(fs, lo, hi + 1, eps / 2.0)) ++hi;
    std::vector<std::size_t> block(hi - lo);
    std::iota(block.begin(), block.end(), lo);
    blocks.push_back(std::move(block));
    lo = hi;
  }

  const auto sp = FiniteProbSpace::uniform(n);
  ApproximationCertificate cert{Partition(blocks, n), {}, 0.0, eps};
  for (const GridFunction& f : fs) {
    const RandVar xi(f.values);
    RandVar diff = xi;
    const RandVar proj = cond_expectation(xi, cert.partition, sp);
    for (std::size_t i = 0; i < n; ++i) diff[i] -= proj[i];
    cert.per_function_error.push_back(lp_norm(diff, sp, p));
  }

  std::map<std::size_t, double> by_size;
  for (const auto& block : cert.partition.blocks()) {
    const std::size_t k = block.size();
    if (k < 2 || by_size.contains(k)) continue;
    const auto sub = FiniteProbSpace::uniform(k);
    by_size[k] = operator_norm(identity_minus(cond_exp_matrix(Partition::trivial(k), sub)), sub, p,
                               opts)
                     .value;
  }
  for (const auto& [k, v] : by_size) cert.norm_bound = std::max(cert.norm_bound, v);
  return cert;
}

double nu_estimate(Complex gamma, Exponent p, int n, const OptimizerOptions& opts) {
  if (n < 2) throw DomainError("nu_estimate needs n >= 2");
  if (p.is_infinite()) throw DomainError("nu_estimate needs a finite p");
  const auto sp = FiniteProbSpace::uniform(static_cast<std::size_t>(n));
  const Matrix e = Matrix::Constant(n, n, Complex(1.0 / n));
  const Matrix a = Matrix::Identity(n, n) - gamma * e;
  return operator_norm(a, sp, p, opts).value;
}

GammaExperiment gamma_inequality_experiment(const Matrix& t, Complex gamma, Exponent p, int n,
                                            const OptimizerOptions& opts) {
  require_square(t);
  if (p.is_infinite()) throw DomainError("gamma experiment needs a finite p");
  const auto dim = static_cast<int>(t.rows());
  if (n == 0) n = dim;
  if (n < 2) throw DomainError("resolution n must be >= 2");
  const auto sp = FiniteProbSpace::uniform(static_cast<std::size_t>(dim));
  const Matrix id = Matrix::Identity(dim, dim);

  GammaExperiment out;
  out.n = n;
  out.dim = dim;
  const OptReport lhs = operator_norm(id - t, sp, p, opts);
  const OptReport low = lower_norm(gamma * id - t, sp, p, opts);
  out.lhs_norm = lhs.value;
  out.lower = low.value;
  out.nu = nu_estimate(gamma, p, n, opts);
  out.slack = out.lhs_norm + out.lower - out.nu;
  out.converged = lhs.converged && low.converged;
  return out;
}

Eigen::MatrixXd uniform_block_cond_exp(int blocks, int block_size) {
  if (blocks < 1 || block_size < 1) throw DomainError("block counts must be positive");
  const int dim = blocks * block_size;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < blocks; ++b) {
    m.block(b * block_size, b * block_size, block_size, block_size).setConstant(1.0 / block_size);
  }
  return m;
}

std::vector<GammaExperiment> gamma_refinement_sweep(int blocks, Complex gamma, Exponent p,
                                                    const OptimizerOptions& opts) {
  std::vector<GammaExperiment> out;
  for (int n : {8, 16, 32, 64}) {
    const Matrix t = uniform_block_cond_exp(blocks, n).cast<Complex>();
    out.push_back(gamma_inequality_experiment(t, gamma, p, n, opts));
  }
  return out;
}

EigenCheck eigen_lower_bound_check(const Matrix& t, Exponent p, int n,
                                   const OptimizerOptions& opts) {
  require_square(t);
  if (p.is_infinite()) throw DomainError("eigen check needs a finite p");
  if (n < 2) throw DomainError("resolution n must be >= 2");
  const double scale = std::max(1.0, t.norm());
  Eigen::VectorXcd values;
  Matrix vectors;
  // ComplexSchur can stall on exact block averages (J/k blocks); those are
  // Hermitian, so take the self-adjoint route whenever it applies
  if ((t - t.adjoint()).norm() <= 1e-12 * scale) {
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(t);
    if (solver.info() != Eigen::Success) throw SolverError("eigenvalue solver did not converge");
    values = solver.eigenvalues().cast<Complex>();
    vectors = solver.eigenvectors();
  } else {
    const Eigen::ComplexEigenSolver<Matrix> solver(t, true);
    if (solver.info() != Eigen::Success) throw SolverError("eigenvalue solver did not converge");
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }

  EigenCheck out;
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const Complex lambda = values(i);
    const Eigen::VectorXcd v = vectors.col(i);
    if ((t * v - lambda * v).norm() > 1e-8 * scale * v.norm()) {
      throw SolverError("eigenpair residual above 1e-8");
    }
    // round away solver noise so equal eigenvalues compare equal
    const Complex r(std::round(lambda.real() * 1e8) / 1e8, std::round(lambda.imag() * 1e8) / 1e8);
    const bool seen = std::any_of(out.eigenvalues_tested.begin(), out.eigenvalues_tested.end(),
                                  [&](Complex g) { return std::abs(g - r) <= 1e-8; });
    if (!seen) out.eigenvalues_tested.push_back(r);
  }
  std::sort(out.eigenvalues_tested.begin(), out.eigenvalues_tested.end(),
            [](Complex a, Complex b) {
              return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
            });

  const auto dim = static_cast<std::size_t>(t.rows());
  const OptReport lhs =
      operator_norm(Matrix::Identity(t.rows(), t.cols()) - t, FiniteProbSpace::uniform(dim), p, opts);
  out.lhs_norm = lhs.value;
  out.converged = lhs.converged;
  out.min_slack = INFINITY;
  for (Complex g : out.eigenvalues_tested) {
    const double s = out.lhs_norm - nu_estimate(g, p, n, opts);
    out.slacks.push_back(s);
    out.min_slack = std::min(out.min_slack, s);
  }
  out.sanctioned = classify(t, n, out.note);
  return out;
}

}  // namespace centering
