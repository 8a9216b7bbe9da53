#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwass/clifford.hpp"
#include "test_helpers.hpp"

using namespace qwass;
using namespace qwass::testing;

TEST_CASE("CAR relations {Q_i, Q_j} = 2 delta_ij for n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    CliffordAlgebra alg(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Matrix anti = alg.generator(i) * alg.generator(j) +
                            alg.generator(j) * alg.generator(i);
        const Matrix expect =
            (i == j ? 2.0 : 0.0) * Matrix::Identity(alg.dim(), alg.dim());
        CHECK(max_abs(anti - expect) < 1e-14);
      }
  }
}

TEST_CASE("Q^alpha basis is orthonormal under tau and self-adjointness "
          "alternates") {
  for (int n = 1; n <= 3; ++n) {
    CliffordAlgebra alg(n);
    CHECK(alg.basis().size() == (1 << n));
    CHECK(alg.basis().gram_defect() < 1e-12);
  }
}

TEST_CASE("grading flips odd components and is an involution") {
  CliffordAlgebra alg(2);
  const Matrix q1 = alg.generator(0), q2 = alg.generator(1);
  CHECK(max_abs(alg.grading(q1) + q1) < 1e-12);
  CHECK(max_abs(alg.grading(q1 * q2) - q1 * q2) < 1e-12);
  std::mt19937_64 rng(21);
  RealVector c = RealVector::Random(alg.basis().size());
  const Matrix a = alg.basis().reconstruct(c);
  CHECK(max_abs(alg.grading(alg.grading(a)) - a) < 1e-11);
}

TEST_CASE("expand throws for operators outside the algebra span") {
  CliffordAlgebra alg(1);  // span{id, sigma_x} inside 2x2 matrices
  Matrix sigma_z(2, 2);
  sigma_z << 1, 0, 0, -1;
  CHECK_THROWS_AS(alg.expand(sigma_z), expansion_error);
  CHECK_NOTHROW(alg.expand(alg.generator(0)));
}

TEST_CASE("derivative acts as nabla_j Q^alpha and annihilates the identity") {
  CliffordAlgebra alg(2);
  const Matrix id = Matrix::Identity(4, 4);
  const Matrix q1 = alg.generator(0), q2 = alg.generator(1);
  CHECK(max_abs(alg.derivative(id, 0)) < 1e-13);
  CHECK(max_abs(alg.derivative(q1, 0) - id) < 1e-12);
  CHECK(max_abs(alg.derivative(q1, 1)) < 1e-12);
  // nabla(Q1 Q2) = (Q2, -Q1).
  CHECK(max_abs(alg.derivative(q1 * q2, 0) - q2) < 1e-12);
  CHECK(max_abs(alg.derivative(q1 * q2, 1) + q1) < 1e-12);
}

TEST_CASE("derivative_adjoint is the adjoint of derivative under tau") {
  CliffordAlgebra alg(3);
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a =
        alg.basis().reconstruct(RealVector::Random(alg.basis().size()));
    const Matrix b =
        alg.basis().reconstruct(RealVector::Random(alg.basis().size()));
    for (int j = 0; j < 3; ++j) {
      const double lhs =
          alg.tau((alg.derivative(a, j).adjoint() * b).eval());
      const double rhs =
          alg.tau((a.adjoint() * alg.derivative_adjoint(b, j)).eval());
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("number operator equals -div grad with eigenvalue |alpha|") {
  for (int n = 1; n <= 3; ++n) {
    CliffordAlgebra alg(n);
    for (int k = 0; k < alg.basis().size(); ++k) {
      const Matrix& q = alg.basis().elements[k];
      CHECK(max_abs(alg.number_operator(q) - alg.weight(k) * q) < 1e-11);
      const Matrix div_grad = alg.divergence(alg.gradient(q));
      CHECK(max_abs(alg.number_operator(q) + div_grad) < 1e-11);
    }
  }
}

TEST_CASE("semigroup scales coefficients by exp(-t |alpha|)") {
  CliffordAlgebra alg(2);
  const Matrix q12 = alg.basis().elements[3];
  CHECK(max_abs(alg.semigroup_apply(0.7, q12) - std::exp(-1.4) * q12) < 1e-12);
  // Semigroup property.
  std::mt19937_64 rng(23);
  const Matrix a =
      alg.basis().reconstruct(RealVector::Random(alg.basis().size()));
  CHECK(max_abs(alg.semigroup_apply(0.3, alg.semigroup_apply(0.4, a)) -
                alg.semigroup_apply(0.7, a)) < 1e-11);
}

TEST_CASE("mode count is guarded") {
  CHECK_THROWS_AS(CliffordAlgebra(0), size_error);
  CHECK_THROWS_AS(CliffordAlgebra(7), size_error);
}
