#ifndef CENTERING_INTERVAL_HPP
#define CENTERING_INTERVAL_HPP

#include <functional>
#include <optional>
#include <vector>

#include "centering/exponent.hpp"
#include "centering/opnorm.hpp"
#include "centering/prob_core.hpp"

namespace centering {

/// The sigma-algebra G_beta on [0,1]: x in [beta,1] is glued to
/// J_beta(x) = beta(1-x)/(1-beta) in [0,beta].
class BetaAlgebra {
 public:
  explicit BetaAlgebra(double beta);
  double beta() const { return beta_; }

 private:
  double beta_;
};

/// J_beta on [beta, 1]; DomainError outside.
double jbeta_map(const BetaAlgebra& b, double x);
/// J_beta^{-1} on [0, beta]: y -> 1 - (1-beta) y / beta.
double jbeta_inverse(const BetaAlgebra& b, double y);

/// Piecewise-constant function on `cells` uniform cells of [0,1].
struct GridFunction {
  int cells = 1;
  std::vector<Complex> values;

  void validate() const;
  /// Value on the cell containing x (x = 1 belongs to the last cell).
  Complex at(double x) const;
  friend bool operator==(const GridFunction&, const GridFunction&) = default;
};

double lp_norm(const GridFunction& f, Exponent p);

/// E^{G_beta} of a grid function. Requires beta * cells to be an integer
/// (within 1e-12). J_beta rescales lengths by beta/(1-beta), so the result is
/// piecewise constant on a finer uniform grid: the smallest one containing
/// the input grid and every jump of the result. Applying the operator again
/// returns the same grid and values.
GridFunction gbeta_cond_exp(const BetaAlgebra& b, const GridFunction& xi);

using IntervalFunction = std::function<Complex(double)>;

/// E^{G_beta} of a function on [0,1], eqs. (17)-(18) pointwise.
IntervalFunction gbeta_cond_exp(const BetaAlgebra& b, IntervalFunction xi);

/// ||I - E^{G_beta}||_p: C_p(beta) for 1 < p < inf, 2 max(beta, 1-beta)
/// for p in {1, inf}.
double gbeta_norm(const BetaAlgebra& b, Exponent p);

struct GbetaExtremal {
  double gamma_star = 0.0;
  double kappa = 0.0;
  double c1 = 0.0;  ///< value on [beta, 1]
  double c2 = 0.0;  ///< value on [0, beta)
  /// ||xi - E xi||_p / ||xi||_p evaluated in closed form; E^{G_beta} xi is
  /// the constant (1-beta) c1 + beta c2.
  double ratio = 0.0;
  /// The extremal as a grid function, when some grid of at most 10000
  /// cells has beta on a cell boundary.
  std::optional<GridFunction> xi;
};

GbetaExtremal gbeta_extremal(const BetaAlgebra& b, Exponent p);

struct DiscretizeReport {
  double numeric_norm = 0.0;
  double analytic_norm = 0.0;
  int pieces = 0;  ///< atoms of the refined model
  bool converged = true;
};

/// Finite model of E^{G_beta}: the common refinement of the `cells`-grid and
/// its J_beta image gives paired pieces whose masses are their lengths;
/// pairing them is a partition with conditional weights (beta, 1-beta). The
/// operator norm of I minus that conditional expectation is computed
/// numerically. Requires beta * cells integral and cells <= 512.
DiscretizeReport discretize_check(const BetaAlgebra& b, Exponent p, int cells,
                                  const OptimizerOptions& opts = {});

struct BetaSearch {
  /// beta in [alpha_p, 1/2] with gbeta_norm = target; empty when the target
  /// is only reached by the trivial sigma-algebra (p in {1, inf}, c = 2).
  std::optional<double> beta;
  double value = 0.0;
  bool trivial_algebra = false;
};

/// Bisection in beta for gbeta_norm(beta, p) = target, target in [1, C_p].
BetaSearch find_beta_for_constant(Exponent p, double target);

}  // namespace centering

#endif  // CENTERING_INTERVAL_HPP
