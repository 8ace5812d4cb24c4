#include "kyp/system.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "kyp/errors.hpp"

namespace kyp {

namespace {

CMatrix krylov_span(const CMatrix& a, const CMatrix& seed,
                    const Tolerances& tol) {
  CMatrix basis = range_basis(seed, tol);
  for (Index step = 0; step < a.rows(); ++step) {
    if (basis.cols() == a.rows() || basis.cols() == 0) break;
    CMatrix extended(a.rows(), 2 * basis.cols());
    extended << basis, a * basis;
    CMatrix next = range_basis(extended, tol);
    if (next.cols() == basis.cols()) break;
    basis = std::move(next);
  }
  return basis;
}

}  // namespace

SystemRealization::SystemRealization(BlockContraction t, std::string label)
    : t_(std::move(t)), label_(std::move(label)) {
  if (t_.dim_K() != t_.dim_H()) {
    throw DimensionError("SystemRealization: state block A is " +
                         std::to_string(t_.dim_K()) + "x" +
                         std::to_string(t_.dim_H()) + ", must be square");
  }
}

SystemRealization::SystemRealization(CMatrix a, CMatrix b, CMatrix c,
                                     CMatrix d, std::string label)
    : SystemRealization(BlockContraction(std::move(a), std::move(b),
                                         std::move(c), std::move(d)),
                        std::move(label)) {}

KrylovBases krylov_subspaces(const SystemRealization& sys,
                             const Tolerances& tol) {
  KrylovBases out;
  out.controllable = krylov_span(sys.A(), sys.B(), tol);
  out.observable = krylov_span(sys.A().adjoint(), sys.C().adjoint(), tol);
  return out;
}

Classification classify(const SystemRealization& sys, const Tolerances& tol) {
  Classification out;
  const CMatrix t = sys.T().full();
  out.norm = op_norm(t);
  out.passive = out.norm <= 1.0 + tol.psd_tol;
  if (out.passive) {
    // ||D_T|| vanishes after the psd_tol clamp exactly when ||I - T*T|| does.
    out.isometric =
        op_norm(identity(t.cols()) - t.adjoint() * t) <= tol.psd_tol;
    out.coisometric =
        op_norm(identity(t.rows()) - t * t.adjoint()) <= tol.psd_tol;
  }
  out.conservative = out.isometric && out.coisometric;

  const KrylovBases k = krylov_subspaces(sys, tol);
  const Index n = sys.state_dim();
  out.controllable = k.controllable.cols() == n;
  out.observable = k.observable.cols() == n;
  out.minimal = out.controllable && out.observable;
  CMatrix joint(n, k.controllable.cols() + k.observable.cols());
  joint << k.controllable, k.observable;
  out.simple = range_basis(joint, tol).cols() == n;
  out.controllable_basis = k.controllable;
  out.observable_basis = k.observable;
  return out;
}

CMatrix transfer_eval(const SystemRealization& sys, Complex lambda,
                      const Tolerances& tol) {
  const Index n = sys.state_dim();
  CMatrix theta = sys.D();
  if (n > 0 && lambda != Complex(0.0)) {
    const CMatrix resolvent_b =
        solve_checked(identity(n) - lambda * sys.A(), sys.B(), 1e12,
                      "transfer_eval: I - lambda A");
    theta += lambda * sys.C() * resolvent_b;
  }
  if (std::abs(lambda) <= 1.0 && sys.T().is_contractive(tol)) {
    const double norm = op_norm(theta);
    if (norm > 1.0 + 1e-8) {
      throw ConsistencyError("transfer_eval: passive system gave ||Theta|| = " +
                             format_number(norm));
    }
  }
  return theta;
}

SystemRealization adjoint(const SystemRealization& sys) {
  return SystemRealization(sys.A().adjoint(), sys.C().adjoint(),
                           sys.B().adjoint(), sys.D().adjoint(),
                           sys.label().empty() ? std::string()
                                               : sys.label() + "*");
}

SystemRealization characteristic_system(const CMatrix& a,
                                        const Tolerances& tol) {
  if (a.rows() != a.cols()) {
    throw DimensionError("characteristic_system: A must be square");
  }
  const DefectData dd = defect(a, tol);
  const CMatrix& in = dd.codefect_basis;  // 𝔇_{A*}
  const CMatrix& out = dd.defect_basis;   // 𝔇_A
  SystemRealization sys(a, dd.codefect * in, out.adjoint() * dd.defect,
                        -out.adjoint() * a.adjoint() * in, "characteristic");
  const Classification c = classify(sys, tol);
  if (!c.conservative) {
    throw ConsistencyError("characteristic_system: result is not conservative");
  }
  return sys;
}

std::vector<Complex> disk_grid(int points, double radius,
                               bool include_origin) {
  std::vector<Complex> out;
  out.reserve(points);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < points; ++k) {
    const double frac = include_origin
                            ? static_cast<double>(k) / std::max(1, points - 1)
                            : (k + 1.0) / points;
    out.push_back(std::polar(radius * std::sqrt(frac), golden * k));
  }
  return out;
}

}  // namespace kyp
