#pragma once

#include "kyp/numerics.hpp"

namespace kyp {

/// T = [[A, B], [C, D]] : H ⊕ M -> K ⊕ N.
///
/// Contractivity is not enforced here: the CLI must be able to load and
/// report on non-passive data. Operations that need it check it.
class BlockContraction {
 public:
  BlockContraction() = default;
  /// Throws DimensionError when the blocks do not tile a 2x2 partition.
  BlockContraction(CMatrix a, CMatrix b, CMatrix c, CMatrix d);

  /// Splits a full matrix with the given row/column partition.
  static BlockContraction FromFull(const CMatrix& t, Index dim_k, Index dim_h);

  const CMatrix& A() const { return a_; }
  const CMatrix& B() const { return b_; }
  const CMatrix& C() const { return c_; }
  const CMatrix& D() const { return d_; }

  Index dim_H() const { return a_.cols(); }
  Index dim_M() const { return b_.cols(); }
  Index dim_N() const { return c_.rows(); }
  Index dim_K() const { return a_.rows(); }

  CMatrix full() const;
  double norm() const { return op_norm(full()); }
  bool is_contractive(const Tolerances& tol) const {
    return norm() <= 1.0 + tol.psd_tol;
  }
  /// Throws NotContractiveError unless ||T|| <= 1 + psd_tol.
  void require_contractive(const Tolerances& tol, const char* what) const;

 private:
  CMatrix a_ = CMatrix(0, 0);
  CMatrix b_ = CMatrix(0, 0);
  CMatrix c_ = CMatrix(0, 0);
  CMatrix d_ = CMatrix(0, 0);
};

struct DefectData {
  CMatrix defect;          // D_T = (I - T*T)^{1/2}
  CMatrix codefect;        // D_{T*} = (I - TT*)^{1/2}
  CMatrix defect_basis;    // orthonormal basis of the closure of ran D_T
  CMatrix codefect_basis;  // same for D_{T*}
};

/// Defect operators of an arbitrary contraction matrix.
DefectData defect(const CMatrix& t, const Tolerances& tol);
DefectData defect(const BlockContraction& t, const Tolerances& tol);

/// The parameters (D, F, G, L) of the representation
///   A = -F D* G + D_{F*} L D_G,  B = F D_D,  C = D_{D*} G.
///
/// F, G and L are stored in coordinates of orthonormal bases of the defect
/// spaces: F : 𝔇_D -> K is dim_K x dim 𝔇_D, G : H -> 𝔇_{D*} is
/// dim 𝔇_{D*} x dim_H, L : 𝔇_G -> 𝔇_{F*} is dim 𝔇_{F*} x dim 𝔇_G.
struct ContractionParams {
  CMatrix D;
  CMatrix F;
  CMatrix G;
  CMatrix L;
  CMatrix basis_D;       // dim_M x dim 𝔇_D
  CMatrix basis_D_star;  // dim_N x dim 𝔇_{D*}
  CMatrix basis_G;       // dim_H x dim 𝔇_G
  CMatrix basis_F_star;  // dim_K x dim 𝔇_{F*}

  /// Builds a parameter set from coordinates, computing the defect bases of
  /// D, then of F and G. Throws DimensionError when F, G or L do not match
  /// those bases and NotContractiveError when a parameter has norm > 1.
  static ContractionParams Make(const CMatrix& d, const CMatrix& f,
                                const CMatrix& g, const CMatrix& l,
                                const Tolerances& tol);

  /// F 𝔇_D-coordinates lifted to an operator M -> K vanishing on ker D_D.
  CMatrix F_ambient() const { return F * basis_D.adjoint(); }
  /// G as an operator H -> N.
  CMatrix G_ambient() const { return basis_D_star * G; }
  /// L as an operator H -> K vanishing off 𝔇_G.
  CMatrix L_ambient() const { return basis_F_star * L * basis_G.adjoint(); }

  Index dim_H() const { return G.cols(); }
  Index dim_K() const { return F.rows(); }
  Index dim_M() const { return D.cols(); }
  Index dim_N() const { return D.rows(); }
};

/// Recovers (D, F, G, L) from a contraction. Norms of F, G, L in
/// (1, 1 + psd_tol] are clamped to 1; anything larger throws
/// NotContractiveError.
ContractionParams parametrize(const BlockContraction& t, const Tolerances& tol);

/// Assembles T from parameters and verifies contractivity.
BlockContraction synthesize(const ContractionParams& p, const Tolerances& tol);

/// M_D(Q) = [[S - F D* G, F D_D], [D_{D*} G, D]] for Q = [[S, F], [G, 0]],
/// where F and G are given in the defect coordinates of D (the bases that
/// ContractionParams::Make would compute). Throws ConsistencyError if
/// contractivity of Q and of the result disagree.
BlockContraction md_transform(const CMatrix& d, const CMatrix& q, Index dim_k,
                              Index dim_h, const Tolerances& tol);

/// The four shorted defect squares, each restricted to its target
/// subspace: (D_T^2)_H, (D_{P_N T}^2)_H on H and (D_{T*}^2)_K,
/// (D_{P_M T*}^2)_K on K.
struct ShortedDefects {
  CMatrix defect_H;
  CMatrix output_defect_H;
  CMatrix codefect_K;
  CMatrix input_codefect_K;
  /// Largest discrepancy between the parameter closed forms and the shorted
  /// operators of the literal defect squares.
  double cross_check = 0.0;
};

/// Closed forms D_G D_L^2 D_G, D_G^2, D_{F*} D_{L*}^2 D_{F*}, D_{F*}^2,
/// cross-checked against module shorted. Disagreement beyond 1e-8 throws
/// ConsistencyError.
ShortedDefects shorted_defects(const BlockContraction& t, const Tolerances& tol);

}  // namespace kyp
