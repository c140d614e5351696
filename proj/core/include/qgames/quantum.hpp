#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgames/complex_matrix.hpp"
#include "qgames/tolerances.hpp"

namespace qgames {

/// Normalized pure state of the joint 2-player system, expanded in the
/// measurement-ordered computational basis.
class StateVector {
 public:
  /// Requires the amplitudes to already satisfy sum |a_i|^2 = 1 within kNormTol.
  explicit StateVector(std::vector<Complex> amps);

  /// Rescales the amplitudes to unit norm before constructing.
  static StateVector normalized(std::vector<Complex> amps);
  static StateVector basis_state(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const Complex& amp(std::size_t i) const { return amps_[i]; }
  const std::vector<Complex>& amps() const { return amps_; }

 private:
  std::vector<Complex> amps_;
};

class UnitaryOperator {
 public:
  /// Requires U†U = I within kUnitaryTol (max elementwise deviation).
  explicit UnitaryOperator(CMatrix m);
  static UnitaryOperator identity(std::size_t dim);

  std::size_t dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  UnitaryOperator inverse() const;

 private:
  CMatrix m_;
};

UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b);

/// Hermitian, unit-trace, with real non-negative diagonal (within tolerance).
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

/// Labels for the r measurement eigenstates, plus an optional unitary mapping
/// the computational basis to the measurement eigenbasis (columns are the
/// eigenstates).
class MeasurementBasis {
 public:
  explicit MeasurementBasis(std::vector<std::string> labels,
                            std::optional<UnitaryOperator> basis_change = std::nullopt);

  /// Computational basis for a dim_a x dim_b joint system with default labels.
  static MeasurementBasis computational(std::size_t dim_a, std::size_t dim_b);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::optional<UnitaryOperator>& basis_change() const { return basis_change_; }
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
  std::optional<UnitaryOperator> basis_change_;
};

/// Per-subsystem basis labels: bit strings when dim is a power of two
/// ("0"/"1", "00".."11", ...), decimal tokens otherwise.
std::vector<std::string> subsystem_labels(std::size_t dim);

/// Joint labels for a dim_a x dim_b system under the convention that joint
/// index = a * dim_b + b. Power-of-two subsystems concatenate bit strings, so
/// "xy" for two qubits sits at index 2x + y.
std::vector<std::string> default_basis_labels(std::size_t dim_a, std::size_t dim_b);

/// Kronecker product of operators on subsystems. Rejects joint dimensions
/// beyond max_dim.
UnitaryOperator tensor(const UnitaryOperator& u, const UnitaryOperator& v,
                       std::size_t max_dim = kMaxDim);

StateVector apply(const UnitaryOperator& u, const StateVector& psi);

/// p_i = |<m_i|psi>|^2. Applies basis_change† first when the basis carries
/// one. Entries are clamped to [0,1]; negatives or sum drift beyond kNormTol
/// raise NumericalError.
std::vector<double> measure_probs(const StateVector& psi, const MeasurementBasis& basis);

/// rho = |psi><psi|.
DensityMatrix density_from_pure(const StateVector& psi);

/// p_i = <m_i|rho|m_i>, with the same clamping rules as measure_probs.
std::vector<double> measure_probs_mixed(const DensityMatrix& rho, const MeasurementBasis& basis);

/// rho -> U rho U†.
DensityMatrix evolve(const UnitaryOperator& u, const DensityMatrix& rho);

/// |<a|b>| — global-phase-blind state overlap.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qgames
