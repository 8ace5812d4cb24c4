#include "kyp/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kyp/errors.hpp"
#include "kyp/shorted.hpp"

namespace kyp {

namespace {

// Root of I - M*M for a matrix already known to be contractive.
CMatrix defect_root(const CMatrix& m, const Tolerances& tol) {
  return psd_sqrt(psd_clamp(identity(m.cols()) - m.adjoint() * m), tol);
}

CMatrix defect_basis(const CMatrix& m, const Tolerances& tol) {
  return psd_range_basis(psd_clamp(identity(m.cols()) - m.adjoint() * m), tol);
}

// Scales m back onto the unit ball when round-off pushed it just outside.
CMatrix clamp_norm(const CMatrix& m, const Tolerances& tol, const char* what) {
  const double n = op_norm(m);
  if (n > 1.0 + tol.psd_tol) {
    throw NotContractiveError(std::string(what) + " has norm " +
                                  format_number(n) + " > 1",
                              n);
  }
  return n > 1.0 ? CMatrix(m / n) : m;
}

}  // namespace

BlockContraction::BlockContraction(CMatrix a, CMatrix b, CMatrix c, CMatrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_.rows() != b_.rows() || c_.rows() != d_.rows() ||
      a_.cols() != c_.cols() || b_.cols() != d_.cols()) {
    throw DimensionError(
        "BlockContraction: blocks A " + std::to_string(a_.rows()) + "x" +
        std::to_string(a_.cols()) + ", B " + std::to_string(b_.rows()) + "x" +
        std::to_string(b_.cols()) + ", C " + std::to_string(c_.rows()) + "x" +
        std::to_string(c_.cols()) + ", D " + std::to_string(d_.rows()) + "x" +
        std::to_string(d_.cols()) + " do not tile");
  }
}

BlockContraction BlockContraction::FromFull(const CMatrix& t, Index dim_k,
                                            Index dim_h) {
  if (dim_k < 0 || dim_h < 0 || dim_k > t.rows() || dim_h > t.cols()) {
    throw DimensionError("BlockContraction::FromFull: bad partition");
  }
  const Index n = t.rows() - dim_k;
  const Index m = t.cols() - dim_h;
  return BlockContraction(t.topLeftCorner(dim_k, dim_h),
                          t.topRightCorner(dim_k, m),
                          t.bottomLeftCorner(n, dim_h),
                          t.bottomRightCorner(n, m));
}

CMatrix BlockContraction::full() const {
  CMatrix t(dim_K() + dim_N(), dim_H() + dim_M());
  t << a_, b_, c_, d_;
  return t;
}

void BlockContraction::require_contractive(const Tolerances& tol,
                                           const char* what) const {
  const double n = norm();
  if (n > 1.0 + tol.psd_tol) {
    throw NotContractiveError(std::string(what) + ": ||T|| = " +
                                  format_number(n) + " exceeds 1",
                              n);
  }
}

DefectData defect(const CMatrix& t, const Tolerances& tol) {
  const double n = op_norm(t);
  if (n > 1.0 + tol.psd_tol) {
    throw NotContractiveError("defect: operator is not a contraction", n);
  }
  DefectData out;
  const CMatrix t_adj = t.adjoint();
  out.defect = defect_root(t, tol);
  out.codefect = defect_root(t_adj, tol);
  out.defect_basis = defect_basis(t, tol);
  out.codefect_basis = defect_basis(t_adj, tol);
  return out;
}

DefectData defect(const BlockContraction& t, const Tolerances& tol) {
  return defect(t.full(), tol);
}

ContractionParams ContractionParams::Make(const CMatrix& d, const CMatrix& f,
                                          const CMatrix& g, const CMatrix& l,
                                          const Tolerances& tol) {
  ContractionParams p;
  p.D = clamp_norm(d, tol, "D");
  p.basis_D = defect_basis(p.D, tol);
  p.basis_D_star = defect_basis(p.D.adjoint(), tol);
  if (f.cols() != p.basis_D.cols() || g.rows() != p.basis_D_star.cols()) {
    throw DimensionError(
        "ContractionParams: F must have " + std::to_string(p.basis_D.cols()) +
        " columns and G " + std::to_string(p.basis_D_star.cols()) +
        " rows (defect dimensions of D)");
  }
  p.F = clamp_norm(f, tol, "F");
  p.G = clamp_norm(g, tol, "G");
  p.basis_G = defect_basis(p.G, tol);
  p.basis_F_star = defect_basis(p.F.adjoint(), tol);
  if (l.rows() != p.basis_F_star.cols() || l.cols() != p.basis_G.cols()) {
    throw DimensionError("ContractionParams: L must be " +
                         std::to_string(p.basis_F_star.cols()) + "x" +
                         std::to_string(p.basis_G.cols()));
  }
  p.L = clamp_norm(l, tol, "L");
  return p;
}

ContractionParams parametrize(const BlockContraction& t,
                              const Tolerances& tol) {
  t.require_contractive(tol, "parametrize");
  ContractionParams p;
  p.D = t.D();
  const DefectData dd = defect(p.D, tol);
  p.basis_D = dd.defect_basis;
  p.basis_D_star = dd.codefect_basis;

  const CMatrix f_ambient = t.B() * pinv(dd.defect, tol);
  const CMatrix g_ambient = pinv(dd.codefect, tol) * t.C();
  p.F = clamp_norm(f_ambient * p.basis_D, tol, "parametrize: F");
  p.G = clamp_norm(p.basis_D_star.adjoint() * g_ambient, tol, "parametrize: G");

  const CMatrix d_f_star = defect_root(p.F.adjoint(), tol);
  const CMatrix d_g = defect_root(p.G, tol);
  p.basis_F_star = defect_basis(p.F.adjoint(), tol);
  p.basis_G = defect_basis(p.G, tol);
  const CMatrix middle =
      t.A() + p.F_ambient() * p.D.adjoint() * p.G_ambient();
  p.L = clamp_norm(p.basis_F_star.adjoint() * pinv(d_f_star, tol) * middle *
                       pinv(d_g, tol) * p.basis_G,
                   tol, "parametrize: L");
  return p;
}

BlockContraction synthesize(const ContractionParams& p, const Tolerances& tol) {
  for (const CMatrix* m : {&p.D, &p.F, &p.G, &p.L}) {
    const double n = op_norm(*m);
    if (n > 1.0 + tol.psd_tol) {
      throw NotContractiveError("synthesize: parameter norm exceeds 1", n);
    }
  }
  const CMatrix f = p.F_ambient();
  const CMatrix g = p.G_ambient();
  const CMatrix a = -f * p.D.adjoint() * g +
                    defect_root(p.F.adjoint(), tol) * p.L_ambient() *
                        defect_root(p.G, tol);
  BlockContraction t(a, f * defect_root(p.D, tol),
                     defect_root(p.D.adjoint(), tol) * g, p.D);
  t.require_contractive(tol, "synthesize");
  return t;
}

BlockContraction md_transform(const CMatrix& d, const CMatrix& q, Index dim_k,
                              Index dim_h, const Tolerances& tol) {
  const DefectData dd = defect(d, tol);
  const Index dim_dd = dd.defect_basis.cols();
  const Index dim_dds = dd.codefect_basis.cols();
  if (q.rows() != dim_k + dim_dds || q.cols() != dim_h + dim_dd) {
    throw DimensionError("md_transform: Q is " + std::to_string(q.rows()) + "x" +
                         std::to_string(q.cols()) + ", expected " +
                         std::to_string(dim_k + dim_dds) + "x" +
                         std::to_string(dim_h + dim_dd));
  }
  if (op_norm(q.bottomRightCorner(dim_dds, dim_dd)) > tol.psd_tol) {
    throw std::invalid_argument("md_transform: Q must have a zero (2,2) block");
  }
  const CMatrix s = q.topLeftCorner(dim_k, dim_h);
  const CMatrix f = q.topRightCorner(dim_k, dim_dd) * dd.defect_basis.adjoint();
  const CMatrix g = dd.codefect_basis * q.bottomLeftCorner(dim_dds, dim_h);
  BlockContraction t(s - f * d.adjoint() * g, f * dd.defect,
                     dd.codefect * g, d);
  const bool q_contractive = op_norm(q) <= 1.0 + tol.psd_tol;
  const bool t_contractive = t.is_contractive(tol);
  if (q_contractive != t_contractive &&
      std::abs(op_norm(q) - 1.0) > 1e-8 && std::abs(t.norm() - 1.0) > 1e-8) {
    throw ConsistencyError("md_transform: contractivity of Q and M_D(Q) differ");
  }
  return t;
}

ShortedDefects shorted_defects(const BlockContraction& t,
                               const Tolerances& tol) {
  t.require_contractive(tol, "shorted_defects");
  const ContractionParams p = parametrize(t, tol);
  const Index h = t.dim_H();
  const Index k = t.dim_K();

  const CMatrix d_g = defect_root(p.G, tol);
  const CMatrix d_f_star = defect_root(p.F.adjoint(), tol);
  const CMatrix l_defect =
      identity(p.L.cols()) - p.L.adjoint() * p.L;
  const CMatrix l_codefect =
      identity(p.L.rows()) - p.L * p.L.adjoint();

  ShortedDefects out;
  out.defect_H = hermitian_part(d_g * p.basis_G * l_defect *
                                p.basis_G.adjoint() * d_g);
  out.output_defect_H = hermitian_part(d_g * d_g);
  out.codefect_K = hermitian_part(d_f_star * p.basis_F_star * l_codefect *
                                  p.basis_F_star.adjoint() * d_f_star);
  out.input_codefect_K = hermitian_part(d_f_star * d_f_star);

  const CMatrix full = t.full();
  CMatrix lower(t.dim_N(), h + t.dim_M());
  lower << t.C(), t.D();
  CMatrix right(k + t.dim_N(), t.dim_M());
  right << t.B(), t.D();
  auto square = [](const CMatrix& m) {
    return psd_clamp(identity(m.cols()) - m.adjoint() * m);
  };
  const CMatrix r1 = shorted_leading(square(full), h, tol);
  const CMatrix r2 = shorted_leading(square(lower), h, tol);
  const CMatrix r3 = shorted_leading(square(full.adjoint()), k, tol);
  const CMatrix r4 = shorted_leading(square(right.adjoint()), k, tol);

  out.cross_check = std::max(
      {op_norm(r1 - out.defect_H), op_norm(r2 - out.output_defect_H),
       op_norm(r3 - out.codefect_K), op_norm(r4 - out.input_codefect_K)});
  if (out.cross_check > 1e-8) {
    throw ConsistencyError(
        "shorted_defects: closed forms differ from shorted operators by " +
        format_number(out.cross_check));
  }
  return out;
}

}  // namespace kyp
