#pragma once

#include <cstddef>

namespace qgames {

// State norms, trace, probability sums.
inline constexpr double kNormTol = 1e-12;

// Unitarity and hermiticity, as max absolute elementwise deviation.
inline constexpr double kUnitaryTol = 1e-10;

// Payoff ties, breakpoint dedup, best-response indifference.
inline constexpr double kTieTol = 1e-9;

// Per-row output-marginal factorization of channels.
inline constexpr double kFactorTol = 1e-9;

// Largest joint dimension the dense representation accepts.
inline constexpr std::size_t kMaxDim = 256;

}  // namespace qgames
