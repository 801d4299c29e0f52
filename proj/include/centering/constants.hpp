#ifndef CENTERING_CONSTANTS_HPP
#define CENTERING_CONSTANTS_HPP

#include <complex>
#include <optional>

#include "centering/exponent.hpp"

namespace centering {

/// Distribution taking value1 with mass1 and value2 with mass2.
struct TwoPointDistribution {
  std::complex<double> value1;
  double mass1 = 0.0;
  std::complex<double> value2;
  double mass2 = 0.0;

  /// Throws DomainError unless masses are in (0,1), sum to 1 within 1e-12
  /// and the two values differ.
  void validate() const;
  std::complex<double> mean() const { return mass1 * value1 + mass2 * value2; }
};

/// Two-point constant
///   C_p(a) = (a^{p-1} + (1-a)^{p-1})^{1/p} (a^{1/(p-1)} + (1-a)^{1/(p-1)})^{1-1/p},
/// the norm of I - E on the probability space {a, 1-a}.
/// Requires 1 < p < inf and 0 < alpha < 1.
double cp_alpha(Exponent p, double alpha);

struct CpMaximum {
  double value = 1.0;
  /// Maximizer in (0, 1/2]; empty for p in {1, 2, inf}.
  std::optional<double> argmax_alpha;
};

/// C_p = max_alpha C_p(alpha). Uses a dense alpha grid (step 1e-4 on (0,1/2])
/// followed by golden-section refinement. p = 1 and p = inf return the
/// limit value 2; p = 2 returns the plateau value 1.
CpMaximum max_cp(Exponent p);

/// 2^{|1 - 2/p|}, the interpolation bound on C_p.
double riesz_thorin_bound(Exponent p);

struct ExtremalTwoPoint {
  TwoPointDistribution dist;  ///< -b with mass 1-alpha, 1-b with mass alpha
  double b = 0.0;
  double mean = 0.0;
  double abs_moment_p = 0.0;       ///< E|xi|^p
  double centered_moment_p = 0.0;  ///< E|xi - E xi|^p
  double ratio = 0.0;              ///< (centered / abs)^{1/p}
};

/// The two-valued random variable whose centering ratio equals C_p(alpha).
ExtremalTwoPoint extremal_two_point(Exponent p, double alpha);

struct UniformConstant {
  double value = 1.0;
  int k1 = 1;
  int k2 = 1;
};

/// max{C_p(k1/n), C_p(k2/n)} with k1, k2 the grid points around the
/// maximizer alpha_p; the conjectured norm of I - E on the uniform n-point
/// space (proven for n = 3, 4).
UniformConstant uniform_n_constant(Exponent p, int n);

/// ((n-1)^{p-1} + 1)^{1/p} ((n-1)^{1/(p-1)} + 1)^{1-1/p} / n, the closed
/// form of the uniform constant for n in {2, 3, 4}.
double uniform_n_closed_form(Exponent p, int n);

}  // namespace centering

#endif  // CENTERING_CONSTANTS_HPP
