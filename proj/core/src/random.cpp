#include "qgames/random.hpp"

#include <cmath>

#include "qgames/errors.hpp"

namespace qgames {

UnitaryOperator random_unitary(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0 || dim > kMaxDim) throw ValidationError("random unitary: bad dimension");
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = Complex{gauss(rng), gauss(rng)};

  // Modified Gram-Schmidt on the columns, two passes for orthogonality well
  // below the unitary tolerance.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex dot{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) dot += std::conj(m(i, k)) * m(i, j);
        for (std::size_t i = 0; i < dim; ++i) m(i, j) -= dot * m(i, k);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < dim; ++i) norm += std::norm(m(i, j));
      norm = std::sqrt(norm);
      if (!(norm > 1e-12))
        throw NumericalError("random unitary: degenerate Gaussian sample");
      for (std::size_t i = 0; i < dim; ++i) m(i, j) /= norm;
    }
  }
  return UnitaryOperator(std::move(m));
}

StateVector random_state(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0 || dim > kMaxDim) throw ValidationError("random state: bad dimension");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(dim);
  for (auto& a : amps) a = Complex{gauss(rng), gauss(rng)};
  return StateVector::normalized(std::move(amps));
}

OutcomeMap random_outcomes(std::size_t dim, std::mt19937_64& rng, double lo, double hi) {
  if (dim == 0) throw ValidationError("random outcomes: bad dimension");
  if (!(lo < hi)) throw ValidationError("random outcomes: empty value range");
  std::uniform_real_distribution<double> value(lo, hi);
  OutcomeMap out;
  out.values_a.reserve(dim);
  out.values_b.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    out.values_a.push_back(value(rng));
    out.values_b.push_back(value(rng));
  }
  return out;
}

}  // namespace qgames
