#include <doctest.h>

#include <cmath>

#include "openqfi/error.hpp"
#include "openqfi/linalg.hpp"
#include "openqfi/metrics.hpp"
#include "openqfi/qubits.hpp"
#include "random_states.hpp"

using namespace openqfi;

namespace {

void check_c_matrix(const QfiResult& r, const std::array<double, 3>& diag, double tol = 1e-14) {
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) CHECK(std::abs(r.c_matrix[k][l] - (k == l ? diag[k] : 0.0)) < tol);
}

double c_matrix_diff(const QfiResult& a, const QfiResult& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) worst = std::max(worst, std::abs(a.c_matrix[k][l] - b.c_matrix[k][l]));
  return worst;
}

DensityMatrix werner(double p) {
  return {Complex(p) * qubits::projector(qubits::bell_phi_plus()) +
              Complex((1.0 - p) / 4.0) * ComplexMatrix::identity(4),
          "werner"};
}

}  // namespace

TEST_CASE("collective spin operators") {
  const auto ops = CollectiveSpinOps::two_qubit();
  const std::vector<Complex> jz{1.0, 0.0, 0.0, -1.0};
  CHECK(max_abs_diff(ops.jz, ComplexMatrix::diagonal(jz)) == 0.0);
  CHECK(max_abs_diff(ops.jx * ops.jy - ops.jy * ops.jx, kI * ops.jz) < 1e-15);
  CHECK(&ops[0] == &ops.jx);
  CHECK(&ops[2] == &ops.jz);
}

TEST_CASE("pure-state C matrix examples") {
  const auto plus = qubits::ket_plus();
  const QfiResult pp = qfi_pure(qubits::product_ket(plus, plus));
  check_c_matrix(pp, {0.0, 2.0, 2.0});
  CHECK(pp.lambda_max == doctest::Approx(2.0));
  CHECK(pp.mean_qfi == doctest::Approx(1.0));
  CHECK(pp.degenerate);

  const QfiResult up = qfi_pure(qubits::product_ket(qubits::ket0(), qubits::ket0()));
  check_c_matrix(up, {2.0, 2.0, 0.0});
  CHECK(up.degenerate);

  const QfiResult bell = qfi_pure(qubits::bell_phi_plus());
  check_c_matrix(bell, {4.0, 0.0, 4.0});
  CHECK(bell.mean_qfi == doctest::Approx(2.0));
  CHECK(bell.degenerate);
}

TEST_CASE("qfi_pure validates input") {
  CHECK_THROWS_WITH_AS(qfi_pure(std::vector<Complex>{1.0, 1.0, 0.0, 0.0}), doctest::Contains("NotNormalized"), Error);
  CHECK_THROWS_AS(qfi_pure(std::vector<Complex>{1.0, 0.0}), Error);
}

TEST_CASE("mixed-state C matrix reduces to the pure-state formula") {
  testing::StateGenerator gen(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = gen.pure(4);
    CHECK(c_matrix_diff(qfi_c_matrix(DensityMatrix::pure(psi)), qfi_pure(psi)) <= 1e-10);
  }
}

TEST_CASE("maximally mixed state has no QFI") {
  const QfiResult r = qfi_c_matrix(DensityMatrix::maximally_mixed());
  check_c_matrix(r, {0.0, 0.0, 0.0});
  CHECK(r.lambda_max == 0.0);
  CHECK(r.degenerate);
}

TEST_CASE("quadratic form matches the direct per-direction sum") {
  testing::StateGenerator gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = gen.two_qubit_state();
    const QfiResult r = qfi_c_matrix(rho);
    const Direction n = gen.direction();
    const double direct = qfi_along(rho, n);
    CHECK(std::abs(quadratic_form(r, n) - direct) <= 1e-10);
    CHECK(direct <= r.lambda_max + 1e-10);
    CHECK(std::abs(qfi_along(rho, r.optimal_direction) - r.lambda_max) <= 1e-10);
  }
}

TEST_CASE("optimal direction is a unit vector with a positive dominant component") {
  testing::StateGenerator gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const QfiResult r = qfi_c_matrix(gen.two_qubit_state());
    const Direction& n = r.optimal_direction;
    CHECK(std::abs(n[0] * n[0] + n[1] * n[1] + n[2] * n[2] - 1.0) < 1e-12);
    const auto dominant = std::max({std::abs(n[0]), std::abs(n[1]), std::abs(n[2])});
    for (const double x : n)
      if (std::abs(x) == dominant) CHECK(x > 0.0);
  }
}

TEST_CASE("product states stay at or below the classical bound") {
  testing::StateGenerator gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = gen.product_state();
    CHECK(qfi_c_matrix(rho).mean_qfi <= 1.0 + 1e-10);
    CHECK(negativity(rho).value <= 1e-12);
  }
}

TEST_CASE("negativity examples") {
  const NegativityResult bell = negativity(DensityMatrix::pure(qubits::bell_phi_plus()));
  CHECK(bell.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bell.negative_sum() == doctest::Approx(0.5).epsilon(1e-14));
  REQUIRE(bell.negative_eigenvalues.size() == 1);
  CHECK(negativity(DensityMatrix::maximally_mixed()).value == 0.0);
  for (const double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    CHECK(negativity(werner(p)).value == doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 2.0)).epsilon(1e-13));
  }
}

TEST_CASE("negativity is invariant under local unitaries") {
  testing::StateGenerator gen(314);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = gen.two_qubit_state();
    const ComplexMatrix u = kron(gen.unitary(2), gen.unitary(2));
    const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), "rotated");
    CHECK(std::abs(negativity(rotated).value - negativity(rho).value) <= 1e-9);
  }
}

TEST_CASE("dephasing steady state at r = 14") {
  const DensityMatrix rho = analytic_dephasing(dephasing_params(2.5, 0.5, 14.0));
  const QfiResult r = qfi_c_matrix(rho);
  CHECK(r.mean_qfi == doctest::Approx(1.002255066427555).epsilon(1e-12));
  CHECK_FALSE(r.degenerate);
  CHECK(to_string(optimal_direction_label(r)) == "yz-plane");
  const NegativityResult neg = negativity(rho);
  CHECK(neg.value == doctest::Approx(0.09924857879103754).epsilon(1e-12));
  CHECK(neg.negative_sum() == doctest::Approx(0.09924857879103754 / 2.0).epsilon(1e-12));
}

TEST_CASE("non-dephasing steady state at g = 2.5, B = 1, s = 0.1, r = 10") {
  const DensityMatrix rho = analytic_nondephasing(nondephasing_params(2.5, 1.0, 0.1, 10.0));
  CHECK(qfi_c_matrix(rho).mean_qfi == doctest::Approx(1.029362558938734).epsilon(1e-12));
  CHECK(negativity(rho).value == doctest::Approx(0.145468697201927).epsilon(1e-12));
}

TEST_CASE("direction labels") {
  const double h = M_SQRT1_2;
  CHECK(classify_direction({1, 0, 0}) == DirectionClass::AxisX);
  CHECK(classify_direction({0, 1, 0}) == DirectionClass::AxisY);
  CHECK(classify_direction({0, 0, 1}) == DirectionClass::AxisZ);
  CHECK(classify_direction({h, h, 0}) == DirectionClass::PlaneXY);
  CHECK(classify_direction({h, 0, h}) == DirectionClass::PlaneXZ);
  CHECK(classify_direction({0, h, h}) == DirectionClass::PlaneYZ);
  CHECK(classify_direction({0, 0.6, 0.8}) == DirectionClass::PlaneYZ);
  CHECK(classify_direction({0, std::sin(M_PI / 2), std::cos(M_PI / 2)}) == DirectionClass::AxisY);
  CHECK(classify_direction({0.6, 0.64, 0.48}) == DirectionClass::General);
  CHECK(classify_direction({1, 9e-7, -9e-7}) == DirectionClass::AxisX);
  CHECK(classify_direction({1, 1e-6, 0}) == DirectionClass::PlaneXY);
  CHECK(to_string(DirectionClass::General) == "xyz");
  CHECK(to_string(DirectionClass::PlaneYZ) == "yz-plane");
}
