#include "kyp/moebius.hpp"

#include <algorithm>
#include <string>

#include "kyp/contraction.hpp"
#include "kyp/errors.hpp"

namespace kyp {

CMatrix unitary_lft(const CMatrix& t, const CMatrix& z, const Tolerances& tol) {
  const DefectData dd = defect(t, tol);
  if (z.rows() != dd.codefect_basis.cols() ||
      z.cols() != dd.defect_basis.cols()) {
    throw DimensionError("unitary_lft: Z must be " +
                         std::to_string(dd.codefect_basis.cols()) + "x" +
                         std::to_string(dd.defect_basis.cols()) +
                         " in defect coordinates");
  }
  const CMatrix z_ambient =
      dd.codefect_basis * z * dd.defect_basis.adjoint();
  const CMatrix denominator = identity(t.cols()) + t.adjoint() * z_ambient;
  const CMatrix q =
      t + dd.codefect * z_ambient *
              solve_checked(denominator, dd.defect, 1e12, "unitary_lft: I + T*Z");
  if (op_norm(z) <= 1.0 + tol.psd_tol && op_norm(q) > 1.0 + 1e-8) {
    throw ConsistencyError("unitary_lft: contractive Z gave a non-contraction");
  }
  return q;
}

CMatrix moebius_eval(const CMatrix& theta0, const CMatrix& z,
                     const Tolerances& tol) {
  return unitary_lft(theta0, z, tol);
}

MoebiusPair parameter_system(const SystemRealization& sys,
                             const Tolerances& tol) {
  sys.T().require_contractive(tol, "parameter_system");
  const ContractionParams p = parametrize(sys.T(), tol);
  const CMatrix d_f_star = psd_sqrt(
      psd_clamp(identity(p.dim_K()) - p.F * p.F.adjoint()), tol);
  const CMatrix d_g =
      psd_sqrt(psd_clamp(identity(p.dim_H()) - p.G.adjoint() * p.G), tol);
  MoebiusPair out;
  out.theta0 = p.D;
  out.parameter_system = SystemRealization(
      d_f_star * p.L_ambient() * d_g, p.F, p.G,
      CMatrix::Zero(p.G.rows(), p.F.cols()), "nu");
  out.input_basis = p.basis_D;
  out.output_basis = p.basis_D_star;
  return out;
}

SystemRealization theta_system(const SystemRealization& nu,
                               const CMatrix& theta0, const Tolerances& tol) {
  const Index h = nu.state_dim();
  return SystemRealization(md_transform(theta0, nu.T().full(), h, h, tol),
                           "tau");
}

LinearRealizations linear_parameter_realizations(const CMatrix& theta0,
                                                 const CMatrix& k,
                                                 const Tolerances& tol) {
  const DefectData dd = defect(theta0, tol);
  if (k.rows() != dd.codefect_basis.cols() ||
      k.cols() != dd.defect_basis.cols()) {
    throw DimensionError("linear_parameter_realizations: K has wrong shape");
  }
  if (op_norm(k) > 1.0 + tol.psd_tol) {
    throw NotContractiveError("linear_parameter_realizations: K", op_norm(k));
  }
  const CMatrix range_k = range_basis(k, tol);
  if (range_k.cols() == 0) {
    throw std::invalid_argument("linear_parameter_realizations: K = 0");
  }
  const CMatrix range_k_adj = range_basis(k.adjoint(), tol);

  // Optimal: F = K onto ran K, G the embedding of ran K.
  const Index r = range_k.cols();
  CMatrix q(r + k.rows(), r + k.cols());
  q << CMatrix::Zero(r, r), range_k.adjoint() * k, range_k,
      CMatrix::Zero(k.rows(), k.cols());
  // Star-optimal: F = the co-embedding onto ran K*, G = K restricted to it.
  const Index s = range_k_adj.cols();
  CMatrix q_star(s + k.rows(), s + k.cols());
  q_star << CMatrix::Zero(s, s), range_k_adj.adjoint(), k * range_k_adj,
      CMatrix::Zero(k.rows(), k.cols());

  LinearRealizations out{
      SystemRealization(md_transform(theta0, q, r, r, tol), "optimal"),
      SystemRealization(md_transform(theta0, q_star, s, s, tol),
                        "star_optimal")};
  if (!classify(out.optimal, tol).minimal ||
      !classify(out.star_optimal, tol).minimal) {
    throw ConsistencyError(
        "linear_parameter_realizations: realization is not minimal");
  }
  return out;
}

MoebiusCheck check_moebius(const SystemRealization& sys,
                           const MoebiusPair& pair,
                           const std::vector<Complex>& grid,
                           const Tolerances& tol) {
  MoebiusCheck out;
  out.schwarz_excess = -1.0;
  for (const Complex& lambda : grid) {
    const CMatrix theta = transfer_eval(sys, lambda, tol);
    const CMatrix z = transfer_eval(pair.parameter_system, lambda, tol);
    const CMatrix rebuilt = moebius_eval(pair.theta0, z, tol);
    out.identity_error = std::max(out.identity_error, op_norm(theta - rebuilt));
    out.schwarz_excess =
        std::max(out.schwarz_excess, op_norm(z) - std::abs(lambda));
    ++out.points;
  }
  return out;
}

}  // namespace kyp
