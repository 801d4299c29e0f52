#ifndef CENTERING_SAMPLING_HPP
#define CENTERING_SAMPLING_HPP

#include <random>

#include "centering/exponent.hpp"
#include "centering/interval.hpp"
#include "centering/mixture.hpp"
#include "centering/prob_core.hpp"

// Random inputs for property checks. Same seed, same binary => same draws.
namespace centering::sampling {

using Rng = std::mt19937_64;

/// Weights drawn uniformly from [0.05, 1] and normalized.
FiniteProbSpace space(Rng& rng, std::size_t n);
/// Labels drawn uniformly among a random number of blocks.
Partition partition(Rng& rng, std::size_t n);
RandVar randvar(Rng& rng, std::size_t n, bool complex_values);
/// Finite p in [1, 12] (with 1 and 2 now and then) or infinity.
Exponent exponent(Rng& rng);
/// Interior p in [1.05, 12].
Exponent interior_exponent(Rng& rng);
/// Zero-mean distribution with 2..max_atoms nonzero distinct atoms.
DiscreteDistribution zero_mean(Rng& rng, std::size_t max_atoms);
/// Mixture of smooth and step shapes on `cells` cells.
GridFunction grid_function(Rng& rng, int cells);

}  // namespace centering::sampling

#endif  // CENTERING_SAMPLING_HPP
