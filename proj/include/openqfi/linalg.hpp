#pragma once

#include <vector>

#include "openqfi/matrix.hpp"

namespace openqfi {

// Eigenvalues ascending (stable with respect to the original diagonal order),
// eigenvectors as the matching columns of an orthonormal matrix.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::vector<Complex> vector(std::size_t i) const;
};

struct JacobiOptions {
  // Input asymmetry allowed before NotHermitian; within it, (A + A^dagger)/2 is used.
  double hermitian_tol = 1e-10;
  // Converged when the off-diagonal Frobenius norm drops to this fraction of ||A||_F.
  double off_diagonal_tol = 1e-14;
  int max_sweeps = 100;
};

// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence / BadDimension.
EigenDecomposition hermitian_eig(const ComplexMatrix& a, const JacobiOptions& options = {});

// Thin SVD A = U diag(s) V^dagger of an m x n matrix with m >= n.
// Singular values descending.
struct SingularValueDecomposition {
  ComplexMatrix u;  // m x n, orthonormal columns where s > 0
  std::vector<double> singular_values;
  ComplexMatrix v;  // n x n unitary
};

// One-sided (Hestenes) Jacobi. Throws BadDimension for m < n, NoConvergence on the sweep cap.
SingularValueDecomposition jacobi_svd(const ComplexMatrix& a, int max_sweeps = 100);

// Minimum-norm least-squares solution of A x = b. Singular values below
// rcond * s_max are treated as zero.
std::vector<Complex> least_squares(const SingularValueDecomposition& svd, std::span<const Complex> b,
                                   double rcond = 1e-13);

}  // namespace openqfi
