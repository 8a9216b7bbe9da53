#include "qwass/model.hpp"

#include <cmath>
#include <stdexcept>

#include "qwass/dilog.hpp"
#include "qwass/operator_core.hpp"

namespace qwass {

namespace {

Matrix project_traceless(const Matrix& a) {
  const Complex t = a.trace() / static_cast<double>(a.rows());
  return a - t * Matrix::Identity(a.rows(), a.cols());
}

ParametricModel fermionic_n1(FermionicStructure::Kind kind) {
  auto alg = std::make_shared<CliffordAlgebra>(1);
  ParametricModel m;
  m.dim_params = 1;
  m.convention = TraceConvention::Normalized;
  m.structure = FermionicStructure{alg, kind};
  m.g_theta = RealMatrix::Identity(1, 1);
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix q = alg->generator(0);
  m.rho = [id, q](const RealVector& th) { return (id + th[0] * q).eval(); };
  m.analytic_derivative = [q](const RealVector&) {
    return std::vector<Matrix>{q};
  };
  m.in_domain = [](const RealVector& th) {
    return std::abs(th[0]) <= 1.0 - 1e-6;
  };
  if (kind == FermionicStructure::Kind::KuboMori)
    m.analytic_info_matrix = [](const RealVector& th) {
      return artanh_over_x(th[0]);
    };
  else
    m.analytic_info_matrix = [](const RealVector&) { return 1.0; };
  return m;
}

ParametricModel depolarizing_n2() {
  auto alg = std::make_shared<CliffordAlgebra>(2);
  ParametricModel m;
  m.dim_params = 1;
  m.convention = TraceConvention::Normalized;
  m.structure =
      FermionicStructure{alg, FermionicStructure::Kind::Anticommutator};
  m.g_theta = RealMatrix::Identity(1, 1);
  const Matrix id = Matrix::Identity(4, 4);
  const Matrix q10 = alg->generator(0);
  const Matrix q01 = alg->generator(1);
  m.rho = [id, q10, q01](const RealVector& th) {
    const double e = std::exp(-th[0]);
    return (0.5 * (e * q10 + (1.0 - e) * q01 + id)).eval();
  };
  m.analytic_derivative = [q10, q01](const RealVector& th) {
    const double e = std::exp(-th[0]);
    return std::vector<Matrix>{0.5 * e * (q01 - q10)};
  };
  m.in_domain = [](const RealVector& th) { return th[0] >= 1e-6; };
  m.analytic_info_matrix = [](const RealVector& th) {
    const double et = std::exp(th[0]);
    return std::exp(-2.0 * th[0]) * (3.0 * et * et + 4.0 * et - 4.0) /
           (4.0 * et + 2.0 * et * et - 4.0);
  };
  return m;
}

}  // namespace

ParametricModel make_model(const std::string& key) {
  if (key == "fermionic-n1")
    return fermionic_n1(FermionicStructure::Kind::KuboMori);
  if (key == "fermionic-n1-ac")
    return fermionic_n1(FermionicStructure::Kind::Anticommutator);
  if (key == "depolarizing-n2") return depolarizing_n2();
  throw std::out_of_range("make_model: unknown model key '" + key + "'");
}

std::vector<std::string> model_keys() {
  return {"fermionic-n1", "fermionic-n1-ac", "depolarizing-n2"};
}

std::vector<Matrix> model_derivative(const ParametricModel& model,
                                     const RealVector& theta) {
  if (!model.valid_at(theta))
    throw invariant_error("model_derivative: theta outside the model domain");
  std::vector<Matrix> out;
  if (model.analytic_derivative) {
    out = model.analytic_derivative(theta);
  } else {
    for (int i = 0; i < model.dim_params; ++i) {
      double h = model.ns.fd_step_rel * std::max(1.0, std::abs(theta[i]));
      RealVector tp = theta, tm = theta;
      int shrink = 0;
      for (; shrink < 20; ++shrink) {
        tp[i] = theta[i] + h;
        tm[i] = theta[i] - h;
        if (model.valid_at(tp) && model.valid_at(tm)) break;
        h *= 0.5;
      }
      if (shrink == 20)
        throw invariant_error(
            "model_derivative: theta too close to the domain boundary");
      out.push_back((model.rho(tp) - model.rho(tm)) / (2.0 * h));
    }
  }
  for (Matrix& d : out) d = project_traceless(d);
  return out;
}

Matrix score_solve(const Matrix& rho, const Matrix& x,
                   const TransportStructure& s, const NumericSettings& ns) {
  return score_solve(laplacian_build(rho, s, ns), x, ns);
}

Matrix score_solve(const TransportLaplacian& lap, const Matrix& x,
                   const NumericSettings& ns) {
  const double ts = trace_scale(structure_convention(lap.structure), x.rows());
  const double tr = std::abs(x.trace().real()) * ts;
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (tr > 1e-10 * scale)
    throw invariant_error("score_solve: operator is not traceless");
  return lap.solve(x);
}

RealMatrix wasserstein_info_matrix(const ParametricModel& model,
                                   const RealVector& theta) {
  const Matrix rho = model.rho(theta);
  const std::vector<Matrix> dr = model_derivative(model, theta);
  const int d = model.dim_params;
  const RealMatrix& g = model.g_theta;
  TransportLaplacian lap = laplacian_build(rho, model.structure, model.ns);
  const double ts = trace_scale(model.convention, rho.rows());

  std::vector<Matrix> left(d), phi(d);
  for (int i = 0; i < d; ++i) {
    Matrix a = Matrix::Zero(rho.rows(), rho.cols());
    Matrix b = Matrix::Zero(rho.rows(), rho.cols());
    for (int k = 0; k < d; ++k) {
      a += g(k, i) * dr[k];  // (G^T dr)_i
      b += g(k, i) * dr[k];  // (dr G)_i (G SPD => same contraction)
    }
    left[i] = a;
    phi[i] = score_solve(lap, b, model.ns);
  }
  RealMatrix gw(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      gw(i, j) = ts * (left[i].adjoint() * phi[j]).trace().real();
  return 0.5 * (gw + gw.transpose().eval());
}

double path_action(const ParametricModel& model,
                   const std::vector<RealVector>& path) {
  if (path.size() < 2)
    throw size_error("path_action: path needs at least 2 points");
  const double n = static_cast<double>(path.size() - 1);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (!model.valid_at(path[k]) || !model.valid_at(path[k + 1]))
      throw invariant_error("path_action: path point outside the domain");
    const RealVector d = path[k + 1] - path[k];
    const RealMatrix gw = wasserstein_info_matrix(model, path[k]);
    total += n * d.dot(gw * d);
  }
  return total;
}

Objective von_neumann_entropy_objective(const ParametricModel& model) {
  Objective obj;
  const TraceConvention conv = model.convention;
  obj.value = [model, conv](const RealVector& th) {
    const Matrix rho = model.rho(th);
    const Matrix lg = matrix_function(rho, ScalarFn::Log);
    return trace_scale(conv, rho.rows()) * (rho * lg).trace().real();
  };
  auto value = obj.value;
  const double hrel = model.ns.fd_step_rel;
  obj.gradient = [value, hrel](const RealVector& th) {
    RealVector g(th.size());
    for (Eigen::Index i = 0; i < th.size(); ++i) {
      const double h = hrel * std::max(1.0, std::abs(th[i]));
      RealVector tp = th, tm = th;
      tp[i] += h;
      tm[i] -= h;
      g[i] = (value(tp) - value(tm)) / (2.0 * h);
    }
    return g;
  };
  return obj;
}

}  // namespace qwass
