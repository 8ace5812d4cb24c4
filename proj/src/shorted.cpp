#include "kyp/shorted.hpp"

#include <algorithm>
#include <string>

#include "kyp/errors.hpp"

namespace kyp {

namespace {

void check_inputs(const CMatrix& s, const Subspace& k, const Tolerances& tol,
                  const char* what) {
  if (s.rows() != s.cols()) {
    throw DimensionError(std::string(what) + ": operator is not square");
  }
  if (k.ambient_dim != s.rows() || k.basis.rows() != s.rows()) {
    throw DimensionError(std::string(what) + ": subspace lives in dimension " +
                         std::to_string(k.ambient_dim) + ", operator has size " +
                         std::to_string(s.rows()));
  }
  const PsdCheck check = is_psd(s, tol);
  if (!check.psd) {
    throw NotPsdError(std::string(what) + ": operator is not nonnegative (margin " +
                      format_number(check.margin) + ")");
  }
}

// Tests ran S12* ⊂ ran S22^{1/2} in the K ⊕ K^⊥ split given by `u`.
bool range_condition(const CMatrix& rotated, Index k, const Tolerances& tol) {
  const Index n = rotated.rows();
  if (k == n || k == 0) return true;
  const CMatrix s22 = rotated.bottomRightCorner(n - k, n - k);
  const CMatrix s12_adj = rotated.bottomLeftCorner(n - k, k);
  const CMatrix r22 = psd_range_basis(s22, tol);
  const double scale = std::max(1.0, op_norm(rotated));
  return projection_residual(s12_adj, r22) <= tol.rank_tol * scale;
}

CMatrix rotated(const CMatrix& s, const Subspace& k, const Tolerances& tol,
                CMatrix* u_out) {
  CMatrix u(s.rows(), s.rows());
  u << k.basis, k.complement(tol).basis;
  *u_out = u;
  return hermitian_part(u.adjoint() * s * u);
}

}  // namespace

Subspace Subspace::span(const CMatrix& spanning, const Tolerances& tol) {
  Subspace out;
  out.ambient_dim = spanning.rows();
  out.basis = range_basis(spanning, tol);
  return out;
}

Subspace Subspace::coordinates(Index n, Index first, Index count) {
  if (first < 0 || count < 0 || first + count > n) {
    throw DimensionError("Subspace::coordinates: index range out of bounds");
  }
  Subspace out;
  out.ambient_dim = n;
  out.basis = CMatrix::Zero(n, count);
  for (Index j = 0; j < count; ++j) out.basis(first + j, j) = 1.0;
  return out;
}

Subspace Subspace::complement(const Tolerances& tol) const {
  Subspace out;
  out.ambient_dim = ambient_dim;
  out.basis = orthogonal_complement(basis, ambient_dim, tol);
  return out;
}

std::string_view to_string(ShortedRoute route) {
  switch (route) {
    case ShortedRoute::kSchurComplement:
      return "schur_complement";
    case ShortedRoute::kKreinOracle:
      return "krein_oracle";
  }
  return "unknown";
}

ShortedResult shorted(const CMatrix& s, const Subspace& k,
                      const Tolerances& tol) {
  check_inputs(s, k, tol, "shorted");
  const Index n = s.rows();
  const Index dk = k.dim();
  CMatrix u;
  const CMatrix r = rotated(s, k, tol, &u);

  ShortedResult out;
  out.range_condition_ok = range_condition(r, dk, tol);
  if (!out.range_condition_ok) {
    out.value = shorted_oracle(s, k, tol).value;
    out.route = ShortedRoute::kKreinOracle;
    return out;
  }
  CMatrix block = r.topLeftCorner(dk, dk);
  if (dk < n) {
    const CMatrix inv_root =
        pinv(psd_sqrt(r.bottomRightCorner(n - dk, n - dk), tol), tol);
    const CMatrix m = inv_root * r.bottomLeftCorner(n - dk, dk);
    block -= m.adjoint() * m;
  }
  out.value = hermitian_part(k.basis * block * k.basis.adjoint());
  out.route = ShortedRoute::kSchurComplement;
  return out;
}

ShortedResult shorted_oracle(const CMatrix& s, const Subspace& k,
                             const Tolerances& tol) {
  check_inputs(s, k, tol, "shorted_oracle");
  const CMatrix root = psd_sqrt(s, tol);
  const CMatrix range_s = psd_range_basis(s, tol);
  const CMatrix pushed = range_basis(root * k.complement(tol).basis, tol);
  const CMatrix omega = complement_within(range_s, pushed, tol);

  ShortedResult out;
  out.value = hermitian_part(root * omega * omega.adjoint() * root);
  out.route = ShortedRoute::kKreinOracle;
  CMatrix u;
  out.range_condition_ok = range_condition(rotated(s, k, tol, &u), k.dim(), tol);
  return out;
}

CMatrix shorted_complement(const CMatrix& x, const Subspace& k,
                           const Tolerances& tol) {
  if (x.rows() != x.cols() || x.rows() != k.ambient_dim) {
    throw DimensionError("shorted_complement: X and K do not conform");
  }
  const Index n = x.rows();
  const PsdCheck lower = is_psd(x, tol);
  const PsdCheck upper = is_psd(identity(n) - x, tol);
  if (!lower.psd || !upper.psd) {
    throw NotPsdError("shorted_complement: X is outside the interval [0, I]");
  }
  const CMatrix root = psd_sqrt(x, tol);
  const CMatrix pk = k.projection();
  const CMatrix w = identity(n) - root * (identity(n) - pk) * root;
  const CMatrix m = pinv(psd_sqrt(w, tol), tol) * root * pk;
  return hermitian_part(pk - m.adjoint() * m);
}

CMatrix shorted_leading(const CMatrix& s, Index k, const Tolerances& tol) {
  const ShortedResult r = shorted(s, Subspace::coordinates(s.rows(), 0, k), tol);
  return r.value.topLeftCorner(k, k);
}

}  // namespace kyp
