#include "kyp/inequality.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "kyp/errors.hpp"
#include "kyp/shorted.hpp"

namespace kyp {

namespace {

// Residual below this in one Riccati form while another exceeds
// kAgreementTol is reported as an inconsistency.
constexpr double kRiccatiTight = 1e-10;

// The operators of the parametrized form of T, all acting on or into H.
struct Pieces {
  CMatrix t;    // full T
  CMatrix q;    // [[S, F], [G, 0]]
  CMatrix s;    // D_{F*} L D_G
  CMatrix f;    // H x dim 𝔇_D
  CMatrix g;    // dim 𝔇_{D*} x H
  CMatrix l;    // L as an operator on H
  CMatrix d_g;  // D_G
  CMatrix d_f_star;
};

Pieces make_pieces(const SystemRealization& sys, const Tolerances& tol) {
  const ContractionParams p = parametrize(sys.T(), tol);
  const Index n = sys.state_dim();
  Pieces out;
  out.t = sys.T().full();
  out.f = p.F;
  out.g = p.G;
  out.l = p.L_ambient();
  out.d_g = psd_sqrt(psd_clamp(identity(n) - p.G.adjoint() * p.G), tol);
  out.d_f_star = psd_sqrt(psd_clamp(identity(n) - p.F * p.F.adjoint()), tol);
  out.s = out.d_f_star * out.l * out.d_g;
  out.q.resize(n + p.G.rows(), n + p.F.cols());
  out.q << out.s, out.f, out.g, CMatrix::Zero(p.G.rows(), p.F.cols());
  return out;
}

CMatrix block_diag(const CMatrix& x, Index tail) {
  const Index n = x.rows();
  CMatrix out = CMatrix::Zero(n + tail, n + tail);
  out.topLeftCorner(n, n) = x;
  out.bottomRightCorner(tail, tail) = identity(tail);
  return out;
}

// W^{-1/2} M with Moore-Penrose W^{-1/2}; *ok reports ran M ⊂ ran W^{1/2}.
CMatrix douglas(const CMatrix& w, const CMatrix& m, const Tolerances& tol,
                bool* ok) {
  const CMatrix w_psd = psd_clamp(w);
  const double scale = std::max(1.0, op_norm(m));
  *ok = projection_residual(m, psd_range_basis(w_psd, tol)) <=
        kAgreementTol * scale;
  return pinv(psd_sqrt(w_psd, tol), tol) * m;
}

FormResult psd_form(const char* name, const CMatrix& m, const Tolerances& tol) {
  FormResult r;
  r.name = name;
  r.margin = min_eigenvalue(hermitian_part(m));
  if (m.size() == 0) r.margin = 0.0;
  r.feasible = r.margin >= -tol.psd_tol;
  return r;
}

// (I - X) P_H <= (D_R^2 + R* (I - X) P'_H R)_H for R = T or Q.
CMatrix shorted_rhs(const CMatrix& r, const CMatrix& y, const Tolerances& tol) {
  const Index n = y.rows();
  CMatrix y_pad = CMatrix::Zero(r.rows(), r.rows());
  y_pad.topLeftCorner(n, n) = y;
  const CMatrix s = psd_clamp(identity(r.cols()) - r.adjoint() * r) +
                    psd_clamp(r.adjoint() * y_pad * r);
  return shorted_leading(s, n, tol);
}

}  // namespace

KypCandidate KypCandidate::Make(const CMatrix& x, const Tolerances& tol) {
  if (x.rows() != x.cols()) {
    throw DimensionError("KypCandidate: X must be square");
  }
  const PsdCheck lower = is_psd(x, tol);
  const PsdCheck upper = is_psd(identity(x.rows()) - x, tol);
  if (!lower.psd || !upper.psd) {
    throw NotPsdError("KypCandidate: X is outside [0, I] (eigenvalue range [" +
                      format_number(lower.margin) + ", " +
                      format_number(1.0 - upper.margin) + "])");
  }
  KypCandidate c;
  c.X = hermitian_part(x);
  c.kernel_trivial = x.rows() == 0 || lower.margin > tol.psd_tol;
  return c;
}

CMatrix kyp_matrix(const SystemRealization& sys, const CMatrix& x) {
  const Index n = sys.state_dim();
  if (x.rows() != n || x.cols() != n) {
    throw DimensionError("kyp_matrix: X must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  const CMatrix& a = sys.A();
  const CMatrix& b = sys.B();
  const CMatrix& c = sys.C();
  const CMatrix& d = sys.D();
  const Index m = sys.input_dim();
  CMatrix out(n + m, n + m);
  out.topLeftCorner(n, n) = x - a.adjoint() * x * a - c.adjoint() * c;
  out.topRightCorner(n, m) = -a.adjoint() * x * b - c.adjoint() * d;
  out.bottomLeftCorner(m, n) = -b.adjoint() * x * a - d.adjoint() * c;
  out.bottomRightCorner(m, m) =
      identity(m) - b.adjoint() * x * b - d.adjoint() * d;
  return out;
}

const FormResult& KypReport::form(const std::string& name) const {
  for (const FormResult& f : forms) {
    if (f.name == name) return f;
  }
  throw std::out_of_range("KypReport: no form " + name);
}

const ResidualResult& KypReport::residual(const std::string& name) const {
  for (const ResidualResult& r : riccati) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("KypReport: no Riccati form " + name);
}

KypReport evaluate_forms(const SystemRealization& sys, const CMatrix& x,
                         const Tolerances& tol) {
  sys.T().require_contractive(tol, "evaluate_forms");
  const KypCandidate cand = KypCandidate::Make(x, tol);
  const Index n = sys.state_dim();
  if (x.rows() != n) {
    throw DimensionError("evaluate_forms: X must be " + std::to_string(n) +
                         "x" + std::to_string(n));
  }
  const Pieces p = make_pieces(sys, tol);
  const CMatrix& X = cand.X;
  const CMatrix y = identity(n) - X;
  const CMatrix root = psd_sqrt(X, tol);

  KypReport rep;
  rep.X = X;
  rep.in_interval = true;
  rep.kernel_trivial = cand.kernel_trivial;

  // Block inequalities.
  const CMatrix ckyp = block_diag(X, sys.input_dim()) -
                       p.t.adjoint() * block_diag(X, sys.output_dim()) * p.t;
  rep.forms.push_back(psd_form("CKYP", ckyp, tol));
  rep.forms.push_back(psd_form("kyp1", kyp_matrix(sys, X), tol));

  const CMatrix rhs_t = shorted_rhs(p.t, y, tol);
  rep.forms.push_back(psd_form("SkypX", rhs_t - y, tol));

  const CMatrix ff = p.f * p.f.adjoint();
  const CMatrix w = identity(n) - root * ff * root;
  CMatrix ckyp1(2 * n, 2 * n);
  ckyp1 << X - p.g.adjoint() * p.g,
      p.d_g * p.l.adjoint() * p.d_f_star * root,
      root * p.d_f_star * p.l * p.d_g, w;
  rep.forms.push_back(psd_form("CKYP1", ckyp1, tol));

  bool shortx_ok = true;
  const CMatrix nmat = douglas(w, root * p.d_f_star, tol, &shortx_ok);
  const CMatrix shortx_rhs =
      p.g.adjoint() * p.g +
      p.d_g * p.l.adjoint() * nmat.adjoint() * nmat * p.l * p.d_g;
  FormResult shortx = psd_form("SHORTX", X - shortx_rhs, tol);
  shortx.defined = shortx_ok;
  rep.forms.push_back(shortx);

  const Index dd = p.f.cols();
  const Index dds = p.g.rows();
  const CMatrix ckypq =
      block_diag(X, dd) - p.q.adjoint() * block_diag(X, dds) * p.q;
  rep.forms.push_back(psd_form("CKYPQ", ckypq, tol));

  CMatrix qxx(n + dd, n + dd);
  qxx << X - p.g.adjoint() * p.g - p.s.adjoint() * X * p.s,
      -p.s.adjoint() * X * p.f, -p.f.adjoint() * X * p.s,
      identity(dd) - p.f.adjoint() * X * p.f;
  rep.forms.push_back(psd_form("SkypQXX", qxx, tol));

  const CMatrix rhs_q = shorted_rhs(p.q, y, tol);
  rep.forms.push_back(psd_form("SkypQX", rhs_q - y, tol));

  // Riccati equations.
  auto add_residual = [&rep](const char* name, const CMatrix& m, bool ok) {
    ResidualResult r;
    r.name = name;
    r.defined = ok;
    r.residual = op_norm(m);
    rep.riccati.push_back(r);
  };
  {
    const CMatrix& a = sys.A();
    const CMatrix& b = sys.B();
    const CMatrix& c = sys.C();
    const CMatrix& d = sys.D();
    const CMatrix delta = identity(sys.input_dim()) - b.adjoint() * X * b -
                          d.adjoint() * d;
    const CMatrix cross = b.adjoint() * X * a + d.adjoint() * c;
    bool ok = true;
    const CMatrix m = douglas(delta, cross, tol, &ok);
    add_residual("RicXX",
                 X - a.adjoint() * X * a - c.adjoint() * c - m.adjoint() * m,
                 ok);
  }
  add_residual("RicX", y - rhs_t, true);
  add_residual("RICQX", y - rhs_q, true);
  {
    const CMatrix delta = identity(dd) - p.f.adjoint() * X * p.f;
    bool ok = true;
    const CMatrix m = douglas(delta, p.f.adjoint() * X * p.s, tol, &ok);
    add_residual("RicQXXX",
                 X - p.g.adjoint() * p.g - p.s.adjoint() * X * p.s -
                     m.adjoint() * m,
                 ok);
  }
  add_residual("RICSHORTX", X - shortx_rhs, shortx_ok);

  // Votes.
  int yes = 0;
  int no = 0;
  for (const FormResult& f : rep.forms) {
    if (!f.defined) continue;
    (f.feasible ? yes : no) += 1;
  }
  rep.feasible = no == 0 ? true : (yes == 0 ? false : rep.form("CKYP").feasible);
  rep.min_residual = std::numeric_limits<double>::infinity();
  for (const ResidualResult& r : rep.riccati) {
    if (!r.defined) continue;
    rep.max_residual = std::max(rep.max_residual, r.residual);
    rep.min_residual = std::min(rep.min_residual, r.residual);
  }
  const bool riccati_split =
      rep.min_residual < kRiccatiTight && rep.max_residual > kAgreementTol;
  rep.consistent = (yes == 0 || no == 0) && !riccati_split;
  return rep;
}

SolutionBounds solution_bounds(const SystemRealization& sys,
                               const Tolerances& tol) {
  const ShortedDefects sd = shorted_defects(sys.T(), tol);
  const Index n = sys.state_dim();
  SolutionBounds out;
  out.lower = identity(n) - sd.output_defect_H;
  out.observable = classify(sys, tol).observable;
  if (out.observable) {
    out.interval_lower = identity(n) - sd.defect_H;
    if (op_norm(sd.defect_H - sd.output_defect_H) <= kAgreementTol) {
      out.x_min = out.lower;
    }
  }
  return out;
}

namespace {

// Orthonormal basis (in H-coordinates) of ran R ∩ H for a nonnegative R on
// a space whose first h coordinates form H.
CMatrix range_in_leading(const CMatrix& r_square, Index h,
                         const Tolerances& tol) {
  const CMatrix range = psd_range_basis(r_square, tol);
  const CMatrix lead =
      Subspace::coordinates(r_square.rows(), 0, h).basis;
  return range_intersection(range, lead, tol).topRows(h);
}

bool is_zero(const CMatrix& m) { return op_norm(m) <= kAgreementTol; }

bool contained(const CMatrix& u, const CMatrix& v) {
  return projection_residual(u, v) <= kAgreementTol;
}

}  // namespace

UniquenessReport uniqueness_report(const SystemRealization& sys,
                                   const Tolerances& tol) {
  sys.T().require_contractive(tol, "uniqueness_report");
  UniquenessReport rep;
  rep.defects = shorted_defects(sys.T(), tol);
  const ShortedDefects& sd = rep.defects;
  const Index n = sys.state_dim();

  // Shorted-operator forms. ran (S)^{1/2} is the eigen-range of S.
  const CMatrix r_out = psd_range_basis(sd.output_defect_H, tol);
  const CMatrix r_in = psd_range_basis(sd.input_codefect_K, tol);
  const CMatrix r_co = psd_range_basis(sd.codefect_K, tol);
  const CMatrix meet = range_intersection(r_out, r_in, tol);
  rep.nesopt = is_zero(sd.defect_H);
  rep.sufficient_optimality = is_zero(sd.output_defect_H);
  rep.uniqq = rep.nesopt && contained(meet, r_co);
  rep.uniq1 = rep.nesopt && is_zero(sd.codefect_K) && meet.cols() == 0;

  // Range forms ran D ∩ H on the literal defect squares.
  const CMatrix t = sys.T().full();
  CMatrix lower(sys.output_dim(), n + sys.input_dim());
  lower << sys.C(), sys.D();
  CMatrix right(n + sys.output_dim(), sys.input_dim());
  right << sys.B(), sys.D();
  auto square = [](const CMatrix& m) {
    return psd_clamp(identity(m.cols()) - m.adjoint() * m);
  };
  const CMatrix h_t = range_in_leading(square(t), n, tol);
  const CMatrix h_out = range_in_leading(square(lower), n, tol);
  const CMatrix h_co = range_in_leading(square(t.adjoint()), n, tol);
  const CMatrix h_in = range_in_leading(square(right.adjoint()), n, tol);
  const CMatrix h_meet = range_intersection(h_out, h_in, tol);
  rep.nesopt_range = h_t.cols() == 0;
  rep.sufficient_range = h_out.cols() == 0;
  rep.uniqq_range = rep.nesopt_range && contained(h_meet, h_co);
  rep.uniq1_range = rep.nesopt_range && h_co.cols() == 0 && h_meet.cols() == 0;

  rep.range_forms_agree = rep.nesopt == rep.nesopt_range &&
                          rep.sufficient_optimality == rep.sufficient_range &&
                          rep.uniqq == rep.uniqq_range &&
                          rep.uniq1 == rep.uniq1_range;
  return rep;
}

}  // namespace kyp
