#ifndef CENTERING_OPNORM_HPP
#define CENTERING_OPNORM_HPP

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "centering/exponent.hpp"
#include "centering/prob_core.hpp"

namespace centering {

using Matrix = Eigen::MatrixXcd;

struct OptimizerOptions {
  int starts = 64;
  int max_iters = 10'000;
  double tol = 1e-10;  ///< relative change of the ratio that counts as converged
  std::uint64_t seed = 0;
  /// Worker threads for independent starts; 0 means hardware concurrency.
  unsigned workers = 1;
  /// Split block-diagonal operators into irreducible blocks first.
  bool split_components = true;

  void validate() const;
};

struct OptReport {
  double value = 0.0;
  RandVar witness;  ///< unit L^p norm; value is the ratio it achieves
  bool converged = true;
  int starts_used = 0;
  /// Value from an independent route when one exists (blockwise constant for
  /// cp_of_space, smallest singular value for lower_norm at p = 2).
  std::optional<double> cross_check;
};

/// sup_{xi != 0} ||A xi||_p / ||xi||_p on the weighted space sp.
///
/// For 1 < p < inf this runs the dual-vector fixed-point ascent
/// xi <- J_q(A* J_p(A xi)) from several starts: seeded complex Gaussians,
/// indicator vectors of random subsets with cycling cardinality, and, for
/// dimension <= 10, every subset indicator. For p = 1 and p = inf the norm is
/// attained at one of finitely many extreme points (scaled basis vectors,
/// row phase patterns) and is computed exactly.
///
/// Deterministic for fixed options regardless of worker count.
OptReport operator_norm(const Matrix& a, const FiniteProbSpace& sp, Exponent p,
                        const OptimizerOptions& opts = {});

/// inf_{||u||_p = 1} ||A u||_p. Combines projected gradient descent on the
/// unit sphere, a start at the smallest right singular vector, and, for
/// invertible A, the reciprocal of ||A^{-1}||_p.
OptReport lower_norm(const Matrix& a, const FiniteProbSpace& sp, Exponent p,
                     const OptimizerOptions& opts = {});

/// c_p(sp, G) = ||I - E^G||_p. The full operator is optimized as a whole and
/// cross-checked against the maximum of the per-block constants. `converged`
/// is set when every block converged and the routes agree within 1e-6.
OptReport cp_of_space(const FiniteProbSpace& sp, const Partition& part, Exponent p,
                      const OptimizerOptions& opts = {});

struct TwoValueBound {
  double value = 1.0;
  double subset_mass = 0.5;  ///< min(P(S), 1 - P(S)) of the best split
};

/// max over nonempty proper atom subsets S of C_p(P(S)): the best centering
/// ratio of a two-valued random variable, hence a lower bound for
/// cp_of_space with the trivial partition. At most 24 atoms.
TwoValueBound two_value_oracle(const FiniteProbSpace& sp, Exponent p);

/// I - m for a real square matrix, as a complex operator.
Matrix identity_minus(const Eigen::MatrixXd& m);

}  // namespace centering

#endif  // CENTERING_OPNORM_HPP
