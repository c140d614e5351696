#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qgames {

using Complex = std::complex<double>;

/// Dense row-major complex matrix sized for small joint Hilbert spaces.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  /// Row-by-row literal; rows must be equally sized.
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CMatrix adjoint() const;
  Complex trace() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
std::vector<Complex> operator*(const CMatrix& a, const std::vector<Complex>& v);

/// Kronecker product: out(ia*rb + ib, ja*cb + jb) = a(ia,ja) * b(ib,jb).
CMatrix kron(const CMatrix& a, const CMatrix& b);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Max elementwise |a - I|.
double deviation_from_identity(const CMatrix& a);

}  // namespace qgames
