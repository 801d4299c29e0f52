#ifndef CENTERING_MIXTURE_HPP
#define CENTERING_MIXTURE_HPP

#include <vector>

#include "centering/constants.hpp"
#include "centering/exponent.hpp"
#include "centering/prob_core.hpp"

namespace centering {

struct Atom {
  double value = 0.0;
  double mass = 0.0;
};

/// Finitely supported real distribution with distinct values and positive
/// masses summing to 1 within 1e-12.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double mean() const;

 private:
  std::vector<Atom> atoms_;
};

/// Drops zero-valued atoms and rescales the remaining masses; the mean of a
/// zero-mean input stays zero.
DiscreteDistribution strip_zero_atoms(const DiscreteDistribution& d);

struct MixtureComponent {
  double weight = 0.0;
  TwoPointDistribution dist;  ///< value1 < 0 < value2, zero mean
};

struct MixtureDecomposition {
  std::vector<MixtureComponent> components;

  /// Total mass that the mixture puts on `value`.
  double marginal(double value) const;
};

/// Writes a zero-mean distribution as a mixture of zero-mean two-point
/// distributions by greedy pairing of the heaviest remaining negative and
/// positive atoms. At most (atoms - 1) components.
MixtureDecomposition decompose_zero_mean(const DiscreteDistribution& d);

struct MixtureRatioCheck {
  double ratio = 0.0;          ///< ||xi - E xi||_p / ||xi||_p
  double component_max = 0.0;  ///< max over components of C_p(smaller mass)
  /// Per component: ||eta_k||_p / ||eta_k + E xi||_p, each <= C_p(alpha_k).
  std::vector<double> component_ratios;
  MixtureDecomposition mixture;
};

/// Bounds the centering ratio of a real, nonconstant xi through the
/// two-point decomposition of xi - E xi.
MixtureRatioCheck verify_ratio_via_mixture(const RandVar& xi, const FiniteProbSpace& sp,
                                           Exponent p);

}  // namespace centering

#endif  // CENTERING_MIXTURE_HPP
