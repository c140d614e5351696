#pragma once

#include <random>

#include "qgames/engine.hpp"
#include "qgames/quantum.hpp"

namespace qgames {

/// Haar-ish random unitary: complex Gaussian matrix orthonormalized column
/// by column.
UnitaryOperator random_unitary(std::size_t dim, std::mt19937_64& rng);

StateVector random_state(std::size_t dim, std::mt19937_64& rng);

/// Uniform payoff values in [lo, hi] for every outcome of a dim-outcome game.
OutcomeMap random_outcomes(std::size_t dim, std::mt19937_64& rng, double lo = -5.0,
                           double hi = 5.0);

}  // namespace qgames
