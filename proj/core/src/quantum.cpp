#include "qgames/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgames/errors.hpp"

namespace qgames {

namespace {

double norm_sq(const std::vector<Complex>& amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t bit_width_of(std::size_t n) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < n) ++w;
  return w;
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
  if (amps_.empty()) throw ValidationError("state vector: empty amplitude list");
  if (amps_.size() > kMaxDim) throw ValidationError("state vector: dimension exceeds limit");
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ValidationError("state vector: non-finite amplitude");
  }
  const double s = norm_sq(amps_);
  if (std::abs(s - 1.0) > kNormTol)
    throw NumericalError("state vector: squared norm " + std::to_string(s) +
                         " deviates from 1 beyond tolerance");
}

StateVector StateVector::normalized(std::vector<Complex> amps) {
  const double s = norm_sq(amps);
  if (!(s > 0.0) || !std::isfinite(s))
    throw ValidationError("state vector: cannot normalize zero or non-finite amplitudes");
  const double inv = 1.0 / std::sqrt(s);
  for (auto& a : amps) a *= inv;
  return StateVector(std::move(amps));
}

StateVector StateVector::basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ValidationError("state vector: basis index out of range");
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  amps[index] = Complex{1.0, 0.0};
  return StateVector(std::move(amps));
}

UnitaryOperator::UnitaryOperator(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ValidationError("unitary: matrix is not square");
  if (m_.rows() == 0) throw ValidationError("unitary: empty matrix");
  if (m_.rows() > kMaxDim) throw ValidationError("unitary: dimension exceeds limit");
  if (!m_.all_finite()) throw ValidationError("unitary: non-finite entry");
  const double dev = deviation_from_identity(m_.adjoint() * m_);
  if (dev > kUnitaryTol)
    throw ValidationError("unitary: U†U deviates from identity by " + std::to_string(dev));
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  return UnitaryOperator(CMatrix::identity(dim));
}

UnitaryOperator UnitaryOperator::inverse() const { return UnitaryOperator(m_.adjoint()); }

UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b) {
  return UnitaryOperator(a.matrix() * b.matrix());
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ValidationError("density matrix: not square");
  if (m_.rows() == 0) throw ValidationError("density matrix: empty");
  if (m_.rows() > kMaxDim) throw ValidationError("density matrix: dimension exceeds limit");
  if (!m_.all_finite()) throw ValidationError("density matrix: non-finite entry");
  double herm_dev = 0.0;
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < m_.cols(); ++j)
      herm_dev = std::max(herm_dev, std::abs(m_(i, j) - std::conj(m_(j, i))));
  if (herm_dev > kUnitaryTol) throw ValidationError("density matrix: not Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kNormTol)
    throw NumericalError("density matrix: trace deviates from 1");
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    if (m_(i, i).real() < -kTieTol)
      throw ValidationError("density matrix: negative diagonal entry");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw ValidationError("density matrix: empty");
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = Complex{1.0 / static_cast<double>(dim), 0.0};
  return DensityMatrix(std::move(m));
}

MeasurementBasis::MeasurementBasis(std::vector<std::string> labels,
                                   std::optional<UnitaryOperator> basis_change)
    : labels_(std::move(labels)), basis_change_(std::move(basis_change)) {
  if (labels_.empty()) throw ValidationError("measurement basis: no outcome labels");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw ValidationError("measurement basis: empty label");
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      if (labels_[i] == labels_[j])
        throw ValidationError("measurement basis: duplicate label '" + labels_[i] + "'");
    }
  }
  if (basis_change_ && basis_change_->dim() != labels_.size())
    throw ValidationError("measurement basis: basis change dimension does not match labels");
}

MeasurementBasis MeasurementBasis::computational(std::size_t dim_a, std::size_t dim_b) {
  return MeasurementBasis(default_basis_labels(dim_a, dim_b));
}

std::size_t MeasurementBasis::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw ValidationError("measurement basis: unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::string> subsystem_labels(std::size_t dim) {
  if (dim == 0) throw ValidationError("basis labels: zero dimension");
  std::vector<std::string> out;
  out.reserve(dim);
  if (is_power_of_two(dim)) {
    const std::size_t width = std::max<std::size_t>(1, bit_width_of(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      std::string s(width, '0');
      for (std::size_t b = 0; b < width; ++b) {
        if (i & (std::size_t{1} << (width - 1 - b))) s[b] = '1';
      }
      out.push_back(std::move(s));
    }
  } else {
    for (std::size_t i = 0; i < dim; ++i) out.push_back(std::to_string(i));
  }
  return out;
}

std::vector<std::string> default_basis_labels(std::size_t dim_a, std::size_t dim_b) {
  const auto la = subsystem_labels(dim_a);
  const auto lb = subsystem_labels(dim_b);
  const bool bits = is_power_of_two(dim_a) && is_power_of_two(dim_b);
  std::vector<std::string> out;
  out.reserve(dim_a * dim_b);
  for (const auto& a : la)
    for (const auto& b : lb) out.push_back(bits ? a + b : a + "," + b);
  return out;
}

UnitaryOperator tensor(const UnitaryOperator& u, const UnitaryOperator& v, std::size_t max_dim) {
  if (u.dim() * v.dim() > max_dim)
    throw ValidationError("tensor: joint dimension exceeds limit");
  return UnitaryOperator(kron(u.matrix(), v.matrix()));
}

StateVector apply(const UnitaryOperator& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) throw ValidationError("apply: operator/state dimension mismatch");
  return StateVector(u.matrix() * psi.amps());
}

namespace {

std::vector<double> clamp_probs(std::vector<double> p, const char* what) {
  double sum = 0.0;
  for (auto& v : p) {
    if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": non-finite probability");
    if (v < 0.0) {
      if (v < -1e-12) throw NumericalError(std::string(what) + ": negative probability");
      v = 0.0;
    }
    if (v > 1.0) v = 1.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    throw NumericalError(std::string(what) + ": probabilities sum to " + std::to_string(sum));
  return p;
}

}  // namespace

std::vector<double> measure_probs(const StateVector& psi, const MeasurementBasis& basis) {
  if (psi.dim() != basis.dim())
    throw ValidationError("measurement: state/basis dimension mismatch");
  std::vector<double> p(psi.dim());
  if (basis.basis_change()) {
    // p_i = |<col_i|psi>|^2 = |(B† psi)_i|^2.
    const auto rotated = basis.basis_change()->inverse().matrix() * psi.amps();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(rotated[i]);
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(psi.amp(i));
  }
  return clamp_probs(std::move(p), "measurement");
}

DensityMatrix density_from_pure(const StateVector& psi) {
  const std::size_t n = psi.dim();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = psi.amp(i) * std::conj(psi.amp(j));
  return DensityMatrix(std::move(m));
}

std::vector<double> measure_probs_mixed(const DensityMatrix& rho, const MeasurementBasis& basis) {
  if (rho.dim() != basis.dim())
    throw ValidationError("measurement: density/basis dimension mismatch");
  const CMatrix* m = &rho.matrix();
  CMatrix rotated;
  if (basis.basis_change()) {
    const CMatrix& b = basis.basis_change()->matrix();
    rotated = b.adjoint() * (*m * b);
    m = &rotated;
  }
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (*m)(i, i).real();
  return clamp_probs(std::move(p), "measurement");
}

DensityMatrix evolve(const UnitaryOperator& u, const DensityMatrix& rho) {
  if (u.dim() != rho.dim()) throw ValidationError("evolve: operator/density dimension mismatch");
  return DensityMatrix(u.matrix() * (rho.matrix() * u.matrix().adjoint()));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("fidelity: dimension mismatch");
  Complex overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a.amp(i)) * b.amp(i);
  return std::abs(overlap);
}

}  // namespace qgames
