#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace openqfi {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Dense complex matrix, row-major. Small (<= 17x16) by construction; products
// go through the dispatched kernels in kernels.hpp.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  // Row-major nested initializer: ComplexMatrix{{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  // Column vector (n x 1).
  static ComplexMatrix column(std::span<const Complex> values);
  // |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  // max_ij |a_ij|
  double max_abs() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);

// a * x for a column vector stored as a plain span.
std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// max_i |v_i|
double max_abs(std::span<const Complex> v);

// max_ij |a_ij - b_ij|; infinity when shapes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Entrywise comparison with an explicit absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

// max_ij |a_ij - conj(a_ji)|; infinity for non-square input.
double hermiticity_error(const ComplexMatrix& a);

// (a + a^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);

std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m);

}  // namespace openqfi
