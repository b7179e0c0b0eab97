#include "openqfi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "openqfi/error.hpp"

namespace openqfi {

namespace {

// Unitary plane rotation J acting on columns (p, q):
//   J(p,p) = c, J(p,q) = s e, J(q,p) = -s conj(e), J(q,q) = c
// chosen so that (J^dagger H J)(p,q) = 0 for the 2x2 Hermitian block
// [[hpp, hpq], [conj(hpq), hqq]].
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  Complex phase{1.0, 0.0};
};

Rotation annihilating_rotation(double hpp, double hqq, Complex hpq) {
  const double mag = std::abs(hpq);
  Rotation rot;
  if (mag == 0.0) return rot;
  rot.phase = hpq / mag;
  const double theta = (hqq - hpp) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  rot.c = 1.0 / std::sqrt(t * t + 1.0);
  rot.s = t * rot.c;
  return rot;
}

// M <- M J on columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex spq = r.s * r.phase;
  const Complex sqp = -r.s * std::conj(r.phase);
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p), mq = m(k, q);
    m(k, p) = mp * r.c + mq * sqp;
    m(k, q) = mp * spq + mq * r.c;
  }
}

// M <- J^dagger M on rows p, q.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex spq = r.s * r.phase;
  const Complex sqp = -r.s * std::conj(r.phase);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k), mq = m(q, k);
    m(p, k) = r.c * mp + std::conj(sqp) * mq;
    m(q, k) = std::conj(spq) * mp + r.c * mq;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

std::vector<Complex> EigenDecomposition::vector(std::size_t i) const {
  std::vector<Complex> v(eigenvectors.rows());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = eigenvectors(k, i);
  return v;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& input, const JacobiOptions& options) {
  if (!input.is_square()) {
    throw Error(ErrorKind::BadDimension, "hermitian_eig needs a square matrix, got " + std::to_string(input.rows()) +
                                             "x" + std::to_string(input.cols()));
  }
  const double asym = hermiticity_error(input);
  if (!(asym <= options.hermitian_tol)) {
    throw Error(ErrorKind::NotHermitian, "max |A - A^dagger| = " + format_number(asym));
  }

  const std::size_t n = input.rows();
  ComplexMatrix a = hermitian_part(input);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();
  const double target = options.off_diagonal_tol * scale;

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep++ >= options.max_sweeps) {
      throw Error(ErrorKind::NoConvergence,
                  "Jacobi eigensolver exceeded " + std::to_string(options.max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) == 0.0) continue;
        const Rotation r = annihilating_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, r);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t row = 0; row < n; ++row) out.eigenvectors(row, k) = v(row, order[k]);
  }
  return out;
}

SingularValueDecomposition jacobi_svd(const ComplexMatrix& input, int max_sweeps) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  if (m < n) {
    throw Error(ErrorKind::BadDimension,
                "jacobi_svd needs rows >= cols, got " + std::to_string(m) + "x" + std::to_string(n));
  }
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  constexpr double eps = 1e-15;

  auto column_dot = [&](std::size_t i, std::size_t j) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::conj(a(k, i)) * a(k, j);
    return s;
  };

  bool rotated = true;
  int sweep = 0;
  while (rotated) {
    if (sweep++ >= max_sweeps) {
      throw Error(ErrorKind::NoConvergence, "Jacobi SVD exceeded " + std::to_string(max_sweeps) + " sweeps");
    }
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = column_dot(p, p).real();
        const double beta = column_dot(q, q).real();
        const Complex gamma = column_dot(p, q);
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0) continue;
        rotated = true;
        // Diagonalizing the 2x2 Gram block orthogonalizes columns p and q.
        const Rotation r = annihilating_rotation(alpha, beta, gamma);
        rotate_columns(a, p, q, r);
        rotate_columns(v, p, q, r);
      }
    }
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(column_dot(j, j).real());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  SingularValueDecomposition out;
  out.u = ComplexMatrix(m, n);
  out.v = ComplexMatrix(n, n);
  out.singular_values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.singular_values[k] = norms[j];
    for (std::size_t row = 0; row < n; ++row) out.v(row, k) = v(row, j);
    if (norms[j] > 0.0)
      for (std::size_t row = 0; row < m; ++row) out.u(row, k) = a(row, j) / norms[j];
  }
  return out;
}

std::vector<Complex> least_squares(const SingularValueDecomposition& svd, std::span<const Complex> b,
                                   double rcond) {
  const std::size_t m = svd.u.rows();
  const std::size_t n = svd.v.rows();
  if (b.size() != m) {
    throw Error(ErrorKind::DimensionMismatch,
                "least_squares: rhs of " + std::to_string(b.size()) + " for " + std::to_string(m) + " rows");
  }
  const double cutoff = svd.singular_values.empty() ? 0.0 : rcond * svd.singular_values.front();
  std::vector<Complex> x(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = svd.singular_values[k];
    if (s <= cutoff || s == 0.0) continue;
    Complex coeff = 0.0;
    for (std::size_t row = 0; row < m; ++row) coeff += std::conj(svd.u(row, k)) * b[row];
    coeff /= s;
    for (std::size_t row = 0; row < n; ++row) x[row] += svd.v(row, k) * coeff;
  }
  return x;
}

}  // namespace openqfi
