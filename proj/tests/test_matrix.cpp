#include <doctest.h>

#include <cmath>

#include "openqfi/error.hpp"
#include "openqfi/linalg.hpp"
#include "openqfi/qubits.hpp"
#include "openqfi/steady_state.hpp"
#include "random_states.hpp"

using namespace openqfi;
using qubits::Qubit;

namespace {

double reconstruction_error(const ComplexMatrix& a, const EigenDecomposition& eig) {
  std::vector<Complex> diag(eig.eigenvalues.begin(), eig.eigenvalues.end());
  const ComplexMatrix rebuilt = eig.eigenvectors * ComplexMatrix::diagonal(diag) * eig.eigenvectors.adjoint();
  return max_abs_diff(a, rebuilt);
}

double orthonormality_error(const ComplexMatrix& v) {
  return max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(v.cols()));
}

// Characteristic polynomial coefficients c_0..c_n of det(lambda I - A) via
// Faddeev-LeVerrier; independent of the Jacobi path.
std::vector<Complex> characteristic_polynomial(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  ComplexMatrix m = ComplexMatrix::zeros(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * ComplexMatrix::identity(n);
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

Complex evaluate(const std::vector<Complex>& c, double x) {
  Complex v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

}  // namespace

TEST_CASE("kron of identities and Pauli z") {
  CHECK(approx_equal(kron(qubits::identity2(), qubits::identity2()), ComplexMatrix::identity(4), 0.0));
  const std::vector<Complex> d{1.0, -1.0, -1.0, 1.0};
  CHECK(approx_equal(kron(qubits::sigma_z(), qubits::sigma_z()), ComplexMatrix::diagonal(d), 0.0));
}

TEST_CASE("sigma_x on the first qubit flips |00> to |10>") {
  const auto ket00 = qubits::product_ket(qubits::ket0(), qubits::ket0());
  const auto out = matvec(kron(qubits::sigma_x(), qubits::identity2()), ket00);
  const auto ket10 = qubits::product_ket(qubits::ket1(), qubits::ket0());
  for (std::size_t i = 0; i < 4; ++i) CHECK(out[i] == ket10[i]);
}

TEST_CASE("kron is associative on integer matrices") {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, Complex(0, 4)}};
  const ComplexMatrix b{{0.0, -1.0, 5.0}};
  const ComplexMatrix c{{2.0}, {Complex(1, -1)}};
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) == 0.0);
}

TEST_CASE("matrix arithmetic checks shapes") {
  const ComplexMatrix a(2, 3), b(3, 2);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_NOTHROW(a * b);
  CHECK_THROWS_AS(b * b, Error);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), Error);
}

TEST_CASE("hermitian_eig of a scalar matrix") {
  const auto eig = hermitian_eig(Complex(0.25) * ComplexMatrix::identity(4));
  for (const double p : eig.eigenvalues) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(orthonormality_error(eig.eigenvectors) <= 1e-15);
}

TEST_CASE("hermitian_eig of sigma_x") {
  const auto eig = hermitian_eig(qubits::sigma_x());
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
  // up to a global phase: (|0> - |1>)/sqrt2 and (|0> + |1>)/sqrt2
  const auto minus = eig.vector(0), plus = eig.vector(1);
  CHECK(std::abs(minus[0] + minus[1]) < 1e-14);
  CHECK(std::abs(std::abs(minus[0]) - M_SQRT1_2) < 1e-14);
  CHECK(std::abs(plus[0] - plus[1]) < 1e-14);
  CHECK(std::abs(std::abs(plus[0]) - M_SQRT1_2) < 1e-14);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input and non-square shapes") {
  ComplexMatrix a = qubits::sigma_x();
  a(0, 1) += 1e-9;
  CHECK_THROWS_WITH_AS(hermitian_eig(a), doctest::Contains("NotHermitian"), Error);
  ComplexMatrix b = qubits::sigma_x();
  b(0, 1) += 1e-12;  // within tolerance: symmetrized and accepted
  CHECK_NOTHROW(hermitian_eig(b));
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("hermitian_eig reports NoConvergence when the sweep cap is hit") {
  testing::StateGenerator gen(5);
  JacobiOptions opts;
  opts.max_sweeps = 0;
  try {
    hermitian_eig(gen.hermitian(4), opts);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
}

TEST_CASE("hermitian_eig on the dephasing steady state matches the characteristic polynomial") {
  // g = 2.5, gamma = 0.5, r = 14. det(lambda - rho) factors as
  // (203348 lambda - 6149)^2 (41350409104 lambda^2 - 38849635400 lambda + 292453401).
  const double root = 14.0 * std::sqrt(3349.0) / 1753.0;
  const double expected[] = {95525.0 / 203348.0 - root, 6149.0 / 203348.0, 6149.0 / 203348.0,
                             95525.0 / 203348.0 + root};
  const DensityMatrix rho = analytic_dephasing(dephasing_params(2.5, 0.5, 14.0));
  const auto eig = hermitian_eig(rho.matrix());
  const auto poly = characteristic_polynomial(rho.matrix());
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(eig.eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(std::abs(evaluate(poly, eig.eigenvalues[i])) < 1e-13);
  }
  CHECK(reconstruction_error(rho.matrix(), eig) <= 1e-10);
}

TEST_CASE("hermitian_eig property: reconstruction and orthonormality on random 4x4 input") {
  testing::StateGenerator gen(20240611);
  double worst_rebuild = 0.0, worst_ortho = 0.0, worst_residual = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ComplexMatrix a = gen.hermitian(4);
    const auto eig = hermitian_eig(a);
    worst_rebuild = std::max(worst_rebuild, reconstruction_error(a, eig));
    worst_ortho = std::max(worst_ortho, orthonormality_error(eig.eigenvectors));
    for (std::size_t i = 0; i < 4; ++i) {
      const auto v = eig.vector(i);
      const auto av = matvec(a, v);
      for (std::size_t k = 0; k < 4; ++k) worst_residual = std::max(worst_residual, std::abs(av[k] - eig.eigenvalues[i] * v[k]));
    }
    REQUIRE(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
  }
  CHECK(worst_rebuild <= 1e-10);
  CHECK(worst_ortho <= 1e-10);
  CHECK(worst_residual <= 1e-10);
}

TEST_CASE("hermitian_eig handles 16x16 input") {
  testing::StateGenerator gen(77);
  const ComplexMatrix a = gen.hermitian(16);
  const auto eig = hermitian_eig(a);
  CHECK(reconstruction_error(a, eig) <= 1e-10);
  CHECK(orthonormality_error(eig.eigenvectors) <= 1e-10);
}

TEST_CASE("eigenvalue ties keep the original diagonal order") {
  const std::vector<Complex> d{2.0, 1.0, 2.0, 1.0};
  const auto eig = hermitian_eig(ComplexMatrix::diagonal(d));
  CHECK(std::abs(eig.eigenvectors(1, 0)) == 1.0);
  CHECK(std::abs(eig.eigenvectors(3, 1)) == 1.0);
  CHECK(std::abs(eig.eigenvectors(0, 2)) == 1.0);
  CHECK(std::abs(eig.eigenvectors(2, 3)) == 1.0);
}

TEST_CASE("jacobi_svd reconstructs rectangular input and solves least squares") {
  testing::StateGenerator gen(3);
  const ComplexMatrix a = gen.ginibre(17, 16);
  const auto svd = jacobi_svd(a);
  std::vector<Complex> s(svd.singular_values.begin(), svd.singular_values.end());
  CHECK(max_abs_diff(a, svd.u * ComplexMatrix::diagonal(s) * svd.v.adjoint()) <= 1e-12);
  CHECK(std::is_sorted(svd.singular_values.rbegin(), svd.singular_values.rend()));

  // Consistent system: b = A x0 must return x0.
  std::vector<Complex> x0(16);
  for (auto& z : x0) z = gen.complex_normal();
  const auto b = matvec(a, x0);
  const auto x = least_squares(svd, b);
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(x[i] - x0[i]) < 1e-11);
  CHECK_THROWS_AS(jacobi_svd(gen.ginibre(3, 4)), Error);
}

TEST_CASE("jacobi_svd exposes rank deficiency") {
  const ComplexMatrix a{{1.0, 2.0}, {2.0, 4.0}, {3.0, 6.0}};
  const auto svd = jacobi_svd(a);
  CHECK(svd.singular_values[0] == doctest::Approx(std::sqrt(70.0)));
  CHECK(svd.singular_values[1] < 1e-14);
}

TEST_CASE("partial_trace examples") {
  const auto ket00 = qubits::product_ket(qubits::ket0(), qubits::ket0());
  CHECK(approx_equal(qubits::partial_trace(qubits::projector(ket00), Qubit::First), qubits::projector(qubits::ket0()),
                     1e-15));
  const ComplexMatrix half = Complex(0.5) * qubits::identity2();
  CHECK(approx_equal(qubits::partial_trace(qubits::projector(qubits::bell_phi_plus()), Qubit::First), half, 1e-15));
  CHECK(approx_equal(qubits::partial_trace(Complex(0.25) * ComplexMatrix::identity(4), Qubit::Second), half, 1e-15));
  CHECK_THROWS_AS(qubits::partial_trace(ComplexMatrix::identity(3), Qubit::First), Error);
}

TEST_CASE("partial_trace picks the right factor of a product") {
  const ComplexMatrix a{{0.7, Complex(0.1, 0.2)}, {Complex(0.1, -0.2), 0.3}};
  const ComplexMatrix b{{0.4, 0.0}, {0.0, 0.6}};
  CHECK(approx_equal(qubits::partial_trace(kron(a, b), Qubit::First), b, 1e-15));
  CHECK(approx_equal(qubits::partial_trace(kron(a, b), Qubit::Second), a, 1e-15));
}

TEST_CASE("partial_trace preserves the trace") {
  testing::StateGenerator gen(8);
  for (int i = 0; i < 50; ++i) {
    const ComplexMatrix m = gen.ginibre(4, 4);
    CHECK(std::abs(qubits::partial_trace(m, Qubit::First).trace() - m.trace()) < 1e-12);
    CHECK(std::abs(qubits::partial_trace(m, Qubit::Second).trace() - m.trace()) < 1e-12);
  }
}

TEST_CASE("partial_transpose examples") {
  const ComplexMatrix mixed = Complex(0.25) * ComplexMatrix::identity(4);
  CHECK(approx_equal(qubits::partial_transpose(mixed, Qubit::First), mixed, 0.0));
  const auto p00 = qubits::projector(qubits::product_ket(qubits::ket0(), qubits::ket0()));
  CHECK(approx_equal(qubits::partial_transpose(p00, Qubit::Second), p00, 0.0));

  // Phi+ : the (0,3)/(3,0) coherences move to (1,2)/(2,1).
  const ComplexMatrix pt = qubits::partial_transpose(qubits::projector(qubits::bell_phi_plus()), Qubit::Second);
  CHECK(std::abs(pt(1, 2) - 0.5) < 1e-15);
  CHECK(std::abs(pt(0, 3)) < 1e-15);
  const auto eig = hermitian_eig(pt);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-0.5));
  for (std::size_t i = 1; i < 4; ++i) CHECK(eig.eigenvalues[i] == doctest::Approx(0.5));
  CHECK_THROWS_AS(qubits::partial_transpose(ComplexMatrix::identity(2), Qubit::First), Error);
}

TEST_CASE("partial_transpose is an exact involution and keeps Hermiticity") {
  testing::StateGenerator gen(13);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix m = gen.ginibre(4, 4);
    for (const Qubit q : {Qubit::First, Qubit::Second}) {
      CHECK(max_abs_diff(qubits::partial_transpose(qubits::partial_transpose(m, q), q), m) == 0.0);
    }
    const ComplexMatrix h = gen.hermitian(4);
    CHECK(hermiticity_error(qubits::partial_transpose(h, Qubit::Second)) <= 1e-15);
  }
}
