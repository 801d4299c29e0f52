#ifndef CENTERING_BCAP_HPP
#define CENTERING_BCAP_HPP

#include <string>
#include <vector>

#include "centering/exponent.hpp"
#include "centering/interval.hpp"
#include "centering/opnorm.hpp"
#include "centering/prob_core.hpp"

namespace centering {

struct ApproximationCertificate {
  Partition partition;
  std::vector<double> per_function_error;  ///< ||f_n - E^G f_n||_p on the grid
  /// max over blocks of ||I - E|| on the renormalized block; singleton
  /// blocks contribute 0 (I - E vanishes there).
  double norm_bound = 0.0;
  double epsilon = 0.0;
};

/// Greedy left-to-right coarsening: a block grows while every function stays
/// within eps/2 of its block mean in sup norm, which bounds the L^p error.
/// Singleton cells always qualify, so every eps > 0 is attainable.
ApproximationCertificate build_bcap_approximant(const std::vector<GridFunction>& fs, Exponent p,
                                                double eps, const OptimizerOptions& opts = {});

/// ||I - gamma E|| on the uniform n-atom space, E the mean operator.
double nu_estimate(Complex gamma, Exponent p, int n, const OptimizerOptions& opts = {});

struct GammaExperiment {
  double lhs_norm = 0.0;  ///< ||I - T||
  double lower = 0.0;     ///< inf ||(gamma I - T) u||, ||u|| = 1
  double nu = 0.0;        ///< nu_estimate(gamma, p, n)
  double slack = 0.0;     ///< lhs_norm + lower - nu
  int n = 0;
  int dim = 0;
  bool converged = true;
};

/// Finite analogue of inf ||(gamma I - T)u|| >= nu(gamma) - ||I - T||. T acts
/// on the uniform grid of its own dimension; nu is taken at resolution n
/// (n = 0 means the dimension of T). Reported, not asserted.
GammaExperiment gamma_inequality_experiment(const Matrix& t, Complex gamma, Exponent p, int n,
                                            const OptimizerOptions& opts = {});

/// E^G for `blocks` consecutive blocks of `block_size` cells on a uniform grid.
Eigen::MatrixXd uniform_block_cond_exp(int blocks, int block_size);

/// gamma_inequality_experiment for T = E^G with `blocks` blocks of n cells,
/// n in {8, 16, 32, 64}; nu at resolution n.
std::vector<GammaExperiment> gamma_refinement_sweep(int blocks, Complex gamma, Exponent p,
                                                    const OptimizerOptions& opts = {});

struct EigenCheck {
  std::vector<Complex> eigenvalues_tested;
  std::vector<double> slacks;  ///< ||I - T|| - nu(gamma), per eigenvalue
  double min_slack = 0.0;
  double lhs_norm = 0.0;
  /// T = sum_b c_b E_{A_b} on the uniform grid with every block size a
  /// multiple of n: the family where the finite inequality is exact.
  bool sanctioned = false;
  std::string note;
  bool converged = true;
};

/// For each distinct eigenvalue gamma of T (dense complex solver, residuals
/// checked to 1e-8), slack = ||I - T|| - nu_estimate(gamma, p, n).
EigenCheck eigen_lower_bound_check(const Matrix& t, Exponent p, int n,
                                   const OptimizerOptions& opts = {});

}  // namespace centering

#endif  // CENTERING_BCAP_HPP
