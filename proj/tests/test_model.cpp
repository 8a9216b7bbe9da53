#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwass/dilog.hpp"
#include "qwass/model.hpp"
#include "test_helpers.hpp"

using namespace qwass;
using namespace qwass::testing;

namespace {

RealVector scalar(double x) {
  RealVector v(1);
  v[0] = x;
  return v;
}

}  // namespace

TEST_CASE("model registry") {
  CHECK(model_keys().size() == 3);
  for (const std::string& key : model_keys()) CHECK_NOTHROW(make_model(key));
  CHECK_THROWS_AS(make_model("unknown"), std::out_of_range);
}

TEST_CASE("model_derivative: analytic forms and tracelessness") {
  const ParametricModel fm = make_model("fermionic-n1");
  const std::vector<Matrix> d = model_derivative(fm, scalar(0.4));
  Matrix sigma_x(2, 2);
  sigma_x << 0, 1, 1, 0;
  CHECK(max_abs(d[0] - sigma_x) < 1e-12);

  const ParametricModel dep = make_model("depolarizing-n2");
  for (double theta : {0.3, 1.0, 2.0}) {
    const std::vector<Matrix> dd = model_derivative(dep, scalar(theta));
    CHECK(std::abs(dd[0].trace().real()) < 1e-12);
    // Central-difference oracle against the analytic derivative.
    const double h = 1e-6 * std::max(1.0, theta);
    const Matrix fd =
        (dep.rho(scalar(theta + h)) - dep.rho(scalar(theta - h))) / (2 * h);
    CHECK(max_abs(dd[0] - fd) < 1e-8);
  }
}

TEST_CASE("model_derivative falls back to finite differences") {
  ParametricModel m = make_model("fermionic-n1");
  m.analytic_derivative = nullptr;
  const std::vector<Matrix> d = model_derivative(m, scalar(0.4));
  Matrix sigma_x(2, 2);
  sigma_x << 0, 1, 1, 0;
  CHECK(max_abs(d[0] - sigma_x) < 1e-8);
  // Near the boundary the step shrinks instead of leaving the domain.
  CHECK_NOTHROW(model_derivative(m, scalar(1.0 - 2e-6)));
}

TEST_CASE("score_solve solves -Delta Phi = X orthogonal to id") {
  const ParametricModel fm = make_model("fermionic-n1");
  const double theta = 0.5;
  const Matrix rho = fm.rho(scalar(theta));
  Matrix sigma_x(2, 2);
  sigma_x << 0, 1, 1, 0;
  const Matrix phi = score_solve(rho, sigma_x, fm.structure);
  const double expect = std::atanh(theta) / theta;
  CHECK(max_abs(phi - expect * sigma_x) < 1e-10);
  CHECK_THROWS_AS(score_solve(rho, Matrix::Identity(2, 2), fm.structure),
                  invariant_error);

  // Residual oracle on the n=2 anticommutator structure.
  const ParametricModel dep = make_model("depolarizing-n2");
  const Matrix rho2 = dep.rho(scalar(0.9));
  const OperatorBasis basis = structure_basis(dep.structure);
  std::mt19937_64 rng(41);
  RealVector c = RealVector::Random(basis.size());
  c[0] = 0.0;  // traceless
  const Matrix x = basis.reconstruct(c);
  const Matrix phi2 = score_solve(rho2, x, dep.structure);
  CHECK(max_abs(laplacian_apply(dep.structure, rho2, phi2) - x) <
        1e-9 * std::max(1.0, max_abs(x)));
}

TEST_CASE("wasserstein_info_matrix closed forms") {
  const ParametricModel fkm = make_model("fermionic-n1");
  const ParametricModel ac = make_model("fermionic-n1-ac");
  for (double theta : {-0.99, -0.5, -1e-5, 0.3, 0.9, 0.99}) {
    const double gw = wasserstein_info_matrix(fkm, scalar(theta))(0, 0);
    CHECK(std::abs(gw - artanh_over_x(theta)) < 1e-8);
    const double gw_ac = wasserstein_info_matrix(ac, scalar(theta))(0, 0);
    CHECK(std::abs(gw_ac - 1.0) < 1e-10);
  }
  CHECK(wasserstein_info_matrix(fkm, scalar(0.5))(0, 0) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-10));

  const ParametricModel dep = make_model("depolarizing-n2");
  for (double theta : {0.1, 0.5, 1.0, 2.0}) {
    const double gw = wasserstein_info_matrix(dep, scalar(theta))(0, 0);
    CHECK(gw == doctest::Approx(dep.analytic_info_matrix(scalar(theta)))
                    .epsilon(1e-10));
  }
}

TEST_CASE("info matrix properties: symmetry, pullback, scaling") {
  ParametricModel fkm = make_model("fermionic-n1");
  const RealVector th = scalar(0.4);
  const RealMatrix gw = wasserstein_info_matrix(fkm, th);
  CHECK((gw - gw.transpose()).cwiseAbs().maxCoeff() < 1e-10);

  // Pullback consistency <xi, G_W eta> = <Phi_xi, <D rho, eta>>.
  const std::vector<Matrix> dr = model_derivative(fkm, th);
  const Matrix rho = fkm.rho(th);
  const Matrix phi = score_solve(rho, dr[0], fkm.structure);
  const double lhs = gw(0, 0);
  const double rhs =
      (phi.adjoint() * dr[0]).trace().real() / static_cast<double>(rho.rows());
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));

  // G_theta -> c G_theta scales G_W by c^2.
  ParametricModel scaled = fkm;
  scaled.g_theta *= 3.0;
  CHECK(wasserstein_info_matrix(scaled, th)(0, 0) ==
        doctest::Approx(9.0 * gw(0, 0)).epsilon(1e-10));
}

TEST_CASE("FKM and anticommutator structures agree at theta = 0") {
  const ParametricModel fkm = make_model("fermionic-n1");
  const ParametricModel ac = make_model("fermionic-n1-ac");
  const double g1 = wasserstein_info_matrix(fkm, scalar(1e-9))(0, 0);
  const double g2 = wasserstein_info_matrix(ac, scalar(1e-9))(0, 0);
  CHECK(g1 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("path_action") {
  const ParametricModel ac = make_model("fermionic-n1-ac");
  SUBCASE("constant path is zero") {
    std::vector<RealVector> path(5, scalar(0.3));
    CHECK(path_action(ac, path) == doctest::Approx(0.0));
  }
  SUBCASE("straight line under the flat metric tends to (d theta)^2") {
    for (int n : {20, 200}) {
      std::vector<RealVector> path;
      for (int k = 0; k <= n; ++k)
        path.push_back(scalar(-0.5 + 1.0 * k / n));
      CHECK(path_action(ac, path) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("out-of-domain point is rejected") {
    std::vector<RealVector> path = {scalar(0.0), scalar(2.0)};
    CHECK_THROWS_AS(path_action(make_model("fermionic-n1"), path),
                    invariant_error);
  }
}

TEST_CASE("entropy objective value and gradient") {
  const ParametricModel fm = make_model("fermionic-n1");
  const Objective obj = von_neumann_entropy_objective(fm);
  for (double theta : {-0.6, 0.2, 0.8}) {
    const double expect =
        0.5 * (std::log(1 - theta * theta) +
               theta * std::log((1 + theta) / (1 - theta)));
    CHECK(obj.value(scalar(theta)) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(obj.gradient(scalar(theta))[0] ==
          doctest::Approx(std::atanh(theta)).epsilon(1e-7));
  }
}
