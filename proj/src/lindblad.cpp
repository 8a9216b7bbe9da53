#include "qwass/lindblad.hpp"

#include <cmath>
#include <sstream>

#include "qwass/operator_core.hpp"

namespace qwass {

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (valid ? "VALID" : "INVALID") << "\n";
  for (const auto& it : items)
    os << "  [" << (it.ok ? "ok" : "FAIL") << "] " << it.condition << " (term "
       << it.index << "): residual " << it.residual << "\n";
  return os.str();
}

ValidationReport validate_generator(const LindbladGenerator& gen,
                                    const NumericSettings& ns) {
  ValidationReport rep;
  const Matrix& sigma = gen.sigma.mat;
  const Eigen::Index d = sigma.rows();
  auto push = [&rep](std::string cond, int idx, double res, double tol) {
    const bool ok = res <= tol;
    rep.items.push_back({std::move(cond), idx, res, ok});
    rep.valid = rep.valid && ok;
  };

  push("sigma Hermitian", -1, hermiticity_defect(sigma), ns.hermitian_tol);
  push("sigma faithful", -1,
       std::max(0.0, ns.eps_faithful - gen.sigma.min_eigenvalue()),
       0.0);

  Matrix sigma_inv;
  bool have_inv = gen.sigma.min_eigenvalue() > ns.eps_faithful;
  if (have_inv) sigma_inv = matrix_function(sigma, ScalarFn::Pow, -1.0);

  const int m = static_cast<int>(gen.terms.size());
  for (int j = 0; j < m; ++j) {
    const JumpTerm& t = gen.terms[j];
    const int jb = t.adjoint_index;
    double res_adj = 1.0;
    if (jb >= 0 && jb < m) {
      const JumpTerm& tb = gen.terms[jb];
      res_adj = (tb.v - t.v.adjoint()).cwiseAbs().maxCoeff() /
                std::max(1.0, t.v.cwiseAbs().maxCoeff());
      push("omega_jbar = -omega_j", j, std::abs(tb.omega + t.omega),
           ns.hermitian_tol * 10);
    }
    push("V_jbar = V_j^*", j, res_adj, ns.hermitian_tol * 10);
    if (t.v.rows() != d || t.v.cols() != d)
      push("V dimension", j, 1.0, 0.0);
    else if (have_inv) {
      // Modular condition sigma V sigma^{-1} = e^{-omega} V.
      const Matrix lhs = sigma * t.v * sigma_inv;
      const Matrix rhs = std::exp(-t.omega) * t.v;
      const double res = (lhs - rhs).cwiseAbs().maxCoeff() /
                         std::max(1.0, rhs.cwiseAbs().maxCoeff());
      push("sigma V sigma^{-1} = e^{-omega} V", j, res, 1e-9);
    }
  }

  // Invariance: the Schroedinger generator must annihilate sigma.
  Matrix ls = lindblad_apply(gen, sigma, Picture::Schroedinger);
  push("L^*(sigma) = 0", -1,
       ls.cwiseAbs().maxCoeff() / std::max(1.0, sigma.cwiseAbs().maxCoeff()),
       1e-9);
  return rep;
}

Matrix lindblad_apply(const LindbladGenerator& gen, const Matrix& a,
                      Picture picture) {
  const Eigen::Index d = a.rows();
  Matrix out = Matrix::Zero(d, d);
  for (const JumpTerm& t : gen.terms) {
    const double w = std::exp(-t.omega / 2.0);
    const Matrix vd = t.v.adjoint();
    if (picture == Picture::Heisenberg) {
      out += w * (vd * (a * t.v - t.v * a) + (vd * a - a * vd) * t.v);
    } else {
      // Trace dual: tr(L(A) rho) = tr(A L^*(rho)).
      out += w * (2.0 * t.v * a * vd - vd * t.v * a - a * vd * t.v);
    }
  }
  return out;
}

Matrix weighted_fkm_apply(const Matrix& rho, double omega, const Matrix& c,
                          bool inverse, const NumericSettings& ns) {
  auto [lam, u] = eigh(rho, ns.hermitian_tol);
  if (lam.minCoeff() < ns.eps_faithful)
    throw faithfulness_error("weighted_fkm_apply: state not faithful");
  const double wl = std::exp(omega / 2.0), wr = std::exp(-omega / 2.0);
  Matrix ct = u.adjoint() * c * u;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
      const double m = log_mean(wl * lam[i], wr * lam[k]);
      ct(i, k) *= inverse ? 1.0 / m : m;
    }
  return u * ct * u.adjoint();
}

int structure_term_count(const TransportStructure& s) {
  if (const auto* f = std::get_if<FermionicStructure>(&s))
    return f->algebra->modes();
  return static_cast<int>(
      std::get<LindbladStructure>(s).generator->terms.size());
}

TraceConvention structure_convention(const TransportStructure& s) {
  return std::holds_alternative<FermionicStructure>(s)
             ? TraceConvention::Normalized
             : TraceConvention::Standard;
}

OperatorBasis structure_basis(const TransportStructure& s) {
  if (const auto* f = std::get_if<FermionicStructure>(&s))
    return f->algebra->basis();
  const auto& gen = *std::get<LindbladStructure>(s).generator;
  return OperatorBasis::hermitian(gen.sigma.dim(), TraceConvention::Standard);
}

Matrix structure_derivative(const TransportStructure& s, const Matrix& a,
                            int j) {
  if (const auto* f = std::get_if<FermionicStructure>(&s))
    return f->algebra->derivative(a, j);
  const auto& gen = *std::get<LindbladStructure>(s).generator;
  const Matrix& v = gen.terms.at(j).v;
  return v * a - a * v;
}

Matrix structure_derivative_adjoint(const TransportStructure& s,
                                    const Matrix& a, int j) {
  if (const auto* f = std::get_if<FermionicStructure>(&s))
    return f->algebra->derivative_adjoint(a, j);
  const auto& gen = *std::get<LindbladStructure>(s).generator;
  const Matrix vb = gen.terms.at(j).v.adjoint();
  return vb * a - a * vb;
}

Matrix structure_multiply(const TransportStructure& s, const Matrix& rho,
                          const Matrix& c, int j, bool inverse,
                          const NumericSettings& ns) {
  if (const auto* f = std::get_if<FermionicStructure>(&s)) {
    if (f->kind == FermionicStructure::Kind::Anticommutator)
      return anticommutator_apply(rho, c, inverse, ns);
    return kubo_mori_apply(f->algebra->grading(rho), rho, c, inverse, ns);
  }
  const auto& gen = *std::get<LindbladStructure>(s).generator;
  return weighted_fkm_apply(rho, gen.terms.at(j).omega, c, inverse, ns);
}

namespace {

// Lindblad structures weight each jump direction by e^{-omega_j/2}; the
// weighted FKM multiplier already carries the e^{+/-omega/2} skew, so the
// divergence-form Laplacian needs no extra factor.
Matrix laplacian_term(const TransportStructure& s, const Matrix& rho,
                      const Matrix& a, int j, const NumericSettings& ns) {
  const Matrix grad = structure_derivative(s, a, j);
  const Matrix flux = structure_multiply(s, rho, grad, j, false, ns);
  return structure_derivative_adjoint(s, flux, j);
}

}  // namespace

Matrix laplacian_apply(const TransportStructure& s, const Matrix& rho,
                       const Matrix& a, const NumericSettings& ns) {
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  const int m = structure_term_count(s);
  for (int j = 0; j < m; ++j) out += laplacian_term(s, rho, a, j, ns);
  return out;
}

TransportLaplacian laplacian_build(const Matrix& rho,
                                   const TransportStructure& s,
                                   const NumericSettings& ns) {
  TransportLaplacian lap;
  lap.structure = s;
  lap.basis = structure_basis(s);
  Superoperator sup = Superoperator::build(
      [&](const Matrix& a) { return laplacian_apply(s, rho, a, ns); },
      lap.basis);
  lap.matrix = 0.5 * (sup.matrix + sup.matrix.transpose().eval());
  // Kernel = span{id}; element 0 of every structure basis is ~ id.
  RealVector e0 = RealVector::Zero(lap.basis.size());
  e0[0] = 1.0;
  lap.pinv = pinv_with_kernel(lap.matrix, {e0}, ns.kernel_rel_tol);
  return lap;
}

double relative_entropy(const Matrix& rho, const Matrix& sigma,
                        TraceConvention conv, const NumericSettings& ns) {
  const Matrix x =
      matrix_function(rho, ScalarFn::Log) - matrix_function(sigma, ScalarFn::Log);
  return trace_scale(conv, rho.rows()) * (rho * x).trace().real();
}

double fisher_information(const Matrix& rho, const Matrix& sigma,
                          const TransportStructure& s,
                          const NumericSettings& ns) {
  const Matrix x =
      matrix_function(rho, ScalarFn::Log) - matrix_function(sigma, ScalarFn::Log);
  const double ts = trace_scale(structure_convention(s), rho.rows());
  double total = 0.0;
  const int m = structure_term_count(s);
  for (int j = 0; j < m; ++j) {
    const Matrix g = structure_derivative(s, x, j);
    const Matrix lg = structure_multiply(s, rho, g, j, false, ns);
    total += ts * (g.adjoint() * lg).trace().real();
  }
  return total;
}

}  // namespace qwass
