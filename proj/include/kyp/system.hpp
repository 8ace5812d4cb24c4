#pragma once

#include <string>
#include <vector>

#include "kyp/contraction.hpp"
#include "kyp/numerics.hpp"

namespace kyp {

/// A discrete time-invariant system
///   h_{k+1} = A h_k + B u_k,  y_k = C h_k + D u_k
/// with state space H = C^{dim_H}, input M and output N.
class SystemRealization {
 public:
  SystemRealization() = default;
  /// Throws DimensionError unless the state block A is square.
  explicit SystemRealization(BlockContraction t, std::string label = {});
  SystemRealization(CMatrix a, CMatrix b, CMatrix c, CMatrix d,
                    std::string label = {});

  const BlockContraction& T() const { return t_; }
  const CMatrix& A() const { return t_.A(); }
  const CMatrix& B() const { return t_.B(); }
  const CMatrix& C() const { return t_.C(); }
  const CMatrix& D() const { return t_.D(); }
  Index state_dim() const { return t_.dim_H(); }
  Index input_dim() const { return t_.dim_M(); }
  Index output_dim() const { return t_.dim_N(); }
  const std::string& label() const { return label_; }

 private:
  BlockContraction t_;
  std::string label_;
};

struct KrylovBases {
  CMatrix controllable;  // span of ran A^n B
  CMatrix observable;    // span of ran A*^n C*
};

/// Repeated range extension, at most dim_H steps.
KrylovBases krylov_subspaces(const SystemRealization& sys,
                             const Tolerances& tol);

struct Classification {
  bool passive = false;
  bool isometric = false;
  bool coisometric = false;
  bool conservative = false;
  bool controllable = false;
  bool observable = false;
  bool simple = false;
  bool minimal = false;
  double norm = 0.0;  // ||T||
  CMatrix controllable_basis;
  CMatrix observable_basis;
};

Classification classify(const SystemRealization& sys, const Tolerances& tol);

/// Theta(lambda) = D + lambda C (I - lambda A)^{-1} B. Throws SingularError
/// when I - lambda A has condition number above 1e12, and ConsistencyError
/// if a passive system produces a value of norm > 1 + 1e-8 inside the disk.
CMatrix transfer_eval(const SystemRealization& sys, Complex lambda,
                      const Tolerances& tol);

/// The adjoint system [[A*, C*], [B*, D*]] with input and output swapped.
SystemRealization adjoint(const SystemRealization& sys);

/// The conservative system [[A, D_{A*}], [D_A, -A*]] on H, 𝔇_{A*}, 𝔇_A
/// whose transfer function is the characteristic function of A. Defect
/// blocks are written in orthonormal coordinates of the defect spaces.
SystemRealization characteristic_system(const CMatrix& a,
                                        const Tolerances& tol);

/// Deterministic sample points in the closed disk of the given radius
/// (a sunflower spiral; the first point is 0 only if include_origin).
std::vector<Complex> disk_grid(int points, double radius,
                               bool include_origin = false);

}  // namespace kyp
