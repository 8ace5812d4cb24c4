#pragma once

#include <complex>

#include <Eigen/Dense>

namespace kyp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Numerical tolerance policy shared by every module.
///
/// psd_tol is an absolute eigenvalue floor: a Hermitian matrix whose smallest
/// eigenvalue is >= -psd_tol is accepted as nonnegative, and eigenvalues with
/// magnitude <= psd_tol are treated as exact zeros before square roots.
/// rank_tol is relative to the largest singular value.
struct Tolerances {
  double psd_tol = 1e-10;
  double rank_tol = 1e-10;
  double fixpoint_tol = 1e-10;
  int max_iter = 10000;

  /// Throws std::invalid_argument unless all tolerances are positive and
  /// max_iter >= 1.
  void validate() const;
};

struct PsdCheck {
  bool psd = false;
  /// Smallest eigenvalue of the Hermitian part.
  double margin = 0.0;
};

CMatrix identity(Index n);

/// (M + M*) / 2.
CMatrix hermitian_part(const CMatrix& m);

/// Spectral norm; 0 for empty matrices.
double op_norm(const CMatrix& m);

/// Smallest eigenvalue of the Hermitian part; +inf for a 0x0 matrix.
double min_eigenvalue(const CMatrix& m);

/// Nonnegativity test. Non-square input throws DimensionError.
PsdCheck is_psd(const CMatrix& m, const Tolerances& tol);

/// Unique nonnegative square root. Eigenvalues in [-psd_tol, psd_tol] are
/// set to zero; anything below -psd_tol throws NotPsdError.
CMatrix psd_sqrt(const CMatrix& m, const Tolerances& tol);

/// Hermitian part with negative eigenvalues replaced by zero. Used for
/// defect squares I - T*T of contractions whose norm exceeds 1 by round-off.
CMatrix psd_clamp(const CMatrix& m);

/// Moore-Penrose pseudoinverse; singular values <= rank_tol * sigma_max are
/// dropped.
CMatrix pinv(const CMatrix& m, const Tolerances& tol);

/// Orthonormal basis of the numerical column space.
///
/// Columns are put in a canonical phase (largest-modulus entry real and
/// positive). When the column space is the whole ambient space the identity
/// is returned, so full-rank defect spaces share the ambient coordinates.
CMatrix range_basis(const CMatrix& m, const Tolerances& tol);

/// Range basis of a nonnegative matrix read off its eigenvalues, which is
/// also the range of its square root. Eigenvalues above
/// max(psd_tol, rank_tol * lambda_max) count.
CMatrix psd_range_basis(const CMatrix& m, const Tolerances& tol);

/// Basis of ran U ∩ ran V via principal angles: directions whose cosine
/// exceeds 1 - rank_tol. U and V must have orthonormal columns.
CMatrix range_intersection(const CMatrix& u, const CMatrix& v,
                           const Tolerances& tol);

/// Orthonormal basis of the orthogonal complement of ran(basis) in C^n.
CMatrix orthogonal_complement(const CMatrix& basis, Index n,
                              const Tolerances& tol);

/// Orthonormal basis of ran(outer) ⊖ ran(inner); inner need not be
/// contained in outer.
CMatrix complement_within(const CMatrix& outer, const CMatrix& inner,
                          const Tolerances& tol);

/// ||(I - Q Q*) m|| for Q with orthonormal columns.
double projection_residual(const CMatrix& m, const CMatrix& q);

/// Same subspace test for two orthonormal bases.
bool same_subspace(const CMatrix& u, const CMatrix& v, double tol);

/// Solve a * x = b, throwing SingularError when cond(a) exceeds max_cond.
CMatrix solve_checked(const CMatrix& a, const CMatrix& b, double max_cond,
                      const char* what);

}  // namespace kyp
