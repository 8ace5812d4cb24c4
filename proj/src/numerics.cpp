#include "kyp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "kyp/errors.hpp"

namespace kyp {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

// Rotate every column so that its largest-modulus entry is real positive.
// A basis of the whole space becomes the identity.
CMatrix canonicalize(CMatrix q) {
  if (q.cols() == q.rows()) return identity(q.rows());
  for (Index j = 0; j < q.cols(); ++j) {
    Index best = 0;
    q.col(j).cwiseAbs().maxCoeff(&best);
    const Complex pivot = q(best, j);
    if (std::abs(pivot) > 0.0) q.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
  return q;
}

}  // namespace

void Tolerances::validate() const {
  if (!(psd_tol > 0.0) || !(rank_tol > 0.0) || !(fixpoint_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be strictly positive");
  }
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

CMatrix hermitian_part(const CMatrix& m) {
  require_square(m, "hermitian_part");
  return (m + m.adjoint()) * 0.5;
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double min_eigenvalue(const CMatrix& m) {
  require_square(m, "min_eigenvalue");
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

PsdCheck is_psd(const CMatrix& m, const Tolerances& tol) {
  require_square(m, "is_psd");
  PsdCheck out;
  if (m.size() == 0) {
    out.psd = true;
    out.margin = 0.0;
    return out;
  }
  const double asym = (m - m.adjoint()).norm();
  const bool hermitian = asym <= tol.rank_tol * std::max(1.0, m.norm());
  out.margin = min_eigenvalue(m);
  out.psd = hermitian && out.margin >= -tol.psd_tol;
  return out;
}

CMatrix psd_sqrt(const CMatrix& m, const Tolerances& tol) {
  require_square(m, "psd_sqrt");
  if (m.size() == 0) return m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev(0) < -tol.psd_tol) {
    throw NotPsdError("psd_sqrt: smallest eigenvalue " + format_number(ev(0)) +
                      " below -psd_tol");
  }
  for (Index i = 0; i < ev.size(); ++i) {
    ev(i) = ev(i) <= tol.psd_tol ? 0.0 : std::sqrt(ev(i));
  }
  const CMatrix& v = es.eigenvectors();
  return v * ev.cast<Complex>().asDiagonal() * v.adjoint();
}

CMatrix psd_clamp(const CMatrix& m) {
  require_square(m, "psd_clamp");
  if (m.size() == 0) return m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const CMatrix& v = es.eigenvectors();
  return v * ev.cast<Complex>().asDiagonal() * v.adjoint();
}

CMatrix pinv(const CMatrix& m, const Tolerances& tol) {
  CMatrix out = CMatrix::Zero(m.cols(), m.rows());
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s(0) == 0.0) return out;
  const double cut = tol.rank_tol * s(0);
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) {
      out += svd.matrixV().col(i) * (1.0 / s(i)) *
             svd.matrixU().col(i).adjoint();
    }
  }
  return out;
}

CMatrix range_basis(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  // Relative cut with a unit floor: every operator in this library has norm
  // of order one, so an all-round-off matrix must not produce a direction.
  const double cut = tol.rank_tol * std::max(s(0), 1.0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return canonicalize(svd.matrixU().leftCols(rank));
}

CMatrix psd_range_basis(const CMatrix& m, const Tolerances& tol) {
  require_square(m, "psd_range_basis");
  if (m.size() == 0) return CMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  const Eigen::VectorXd& ev = es.eigenvalues();
  const Index n = ev.size();
  const double cut = std::max(tol.psd_tol, tol.rank_tol * ev(n - 1));
  Index first = n;
  while (first > 0 && ev(first - 1) > cut) --first;
  // Largest eigenvalues first.
  return canonicalize(es.eigenvectors().rightCols(n - first).rowwise().reverse());
}

CMatrix range_intersection(const CMatrix& u, const CMatrix& v,
                           const Tolerances& tol) {
  if (u.rows() != v.rows()) {
    throw DimensionError("range_intersection: row counts " +
                         std::to_string(u.rows()) + " and " +
                         std::to_string(v.rows()) + " differ");
  }
  if (u.cols() == 0 || v.cols() == 0) return CMatrix(u.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(u.adjoint() * v, Eigen::ComputeThinU);
  const Eigen::VectorXd& cosines = svd.singularValues();
  Index kept = 0;
  while (kept < cosines.size() && cosines(kept) > 1.0 - tol.rank_tol) ++kept;
  if (kept == 0) return CMatrix(u.rows(), 0);
  return range_basis(u * svd.matrixU().leftCols(kept), tol);
}

CMatrix orthogonal_complement(const CMatrix& basis, Index n,
                              const Tolerances& tol) {
  if (basis.rows() != n) {
    throw DimensionError("orthogonal_complement: basis has wrong row count");
  }
  if (basis.cols() == 0) return identity(n);
  CMatrix proj = identity(n) - basis * basis.adjoint();
  return range_basis(proj, tol);
}

CMatrix complement_within(const CMatrix& outer, const CMatrix& inner,
                          const Tolerances& tol) {
  if (outer.rows() != inner.rows()) {
    throw DimensionError("complement_within: row counts differ");
  }
  if (outer.cols() == 0) return CMatrix(outer.rows(), 0);
  if (inner.cols() == 0) return outer;
  CMatrix residual = outer - inner * (inner.adjoint() * outer);
  return range_basis(residual, tol);
}

double projection_residual(const CMatrix& m, const CMatrix& q) {
  if (m.size() == 0) return 0.0;
  if (q.cols() == 0) return op_norm(m);
  return op_norm(m - q * (q.adjoint() * m));
}

bool same_subspace(const CMatrix& u, const CMatrix& v, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) return false;
  return projection_residual(u, v) <= tol && projection_residual(v, u) <= tol;
}

CMatrix solve_checked(const CMatrix& a, const CMatrix& b, double max_cond,
                      const char* what) {
  require_square(a, what);
  if (a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": right-hand side mismatch");
  }
  if (a.size() == 0) return b;
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || s(0) / smin > max_cond) {
    throw SingularError(std::string(what) + ": matrix is numerically singular");
  }
  return svd.solve(b);
}

}  // namespace kyp
