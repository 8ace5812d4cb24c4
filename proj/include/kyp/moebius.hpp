#pragma once

#include <vector>

#include "kyp/numerics.hpp"
#include "kyp/system.hpp"

namespace kyp {

/// Theta(0) together with a realization nu of its Moebius parameter Z,
/// Z(lambda) = lambda G (I - lambda S)^{-1} F on 𝔇_{Theta(0)} -> 𝔇_{Theta*(0)}.
struct MoebiusPair {
  CMatrix theta0;
  SystemRealization parameter_system;
  /// Orthonormal bases of 𝔇_{Theta(0)} (input) and 𝔇_{Theta*(0)} (output)
  /// fixing the coordinates of nu.
  CMatrix input_basis;
  CMatrix output_basis;
};

/// Q = T + D_{T*} Z (I + T* Z)^{-1} D_T for a contraction T and Z given in
/// coordinates 𝔇_T -> 𝔇_{T*} of the bases returned by defect(T). Throws
/// SingularError when I + T* Z has condition number above 1e12.
CMatrix unitary_lft(const CMatrix& t, const CMatrix& z, const Tolerances& tol);

/// Theta = Theta0 + D_{Theta0*} Z (I + Theta0* Z)^{-1} D_{Theta0}, the same
/// transformation read as the Moebius representation of a Schur function.
CMatrix moebius_eval(const CMatrix& theta0, const CMatrix& z,
                     const Tolerances& tol);

/// nu = [[D_{F*} L D_G, F], [G, 0]] on H, 𝔇_D, 𝔇_{D*} from the
/// parametrization of T. Throws NotContractiveError if sys is not passive.
MoebiusPair parameter_system(const SystemRealization& sys,
                             const Tolerances& tol);

/// tau' = [[S - F Theta0* G, F D_{Theta0}], [D_{Theta0*} G, Theta0]] from
/// nu' = [[S, F], [G, 0]] in the defect coordinates of theta0.
SystemRealization theta_system(const SystemRealization& nu,
                               const CMatrix& theta0, const Tolerances& tol);

struct LinearRealizations {
  SystemRealization optimal;       // state space closure of ran K
  SystemRealization star_optimal;  // state space closure of ran K*
};

/// Realizations of the Schur function with Moebius parameter lambda K,
/// where K : 𝔇_{Theta0} -> 𝔇_{Theta0*} is a nonzero contraction in defect
/// coordinates. Both are verified minimal.
LinearRealizations linear_parameter_realizations(const CMatrix& theta0,
                                                 const CMatrix& k,
                                                 const Tolerances& tol);

struct MoebiusCheck {
  double identity_error = 0.0;  // max ||Theta_tau - moebius_eval(Theta0, Z)||
  double schwarz_excess = 0.0;  // max (||Z(lambda)|| - |lambda|), may be < 0
  int points = 0;
};

/// Compares Theta_tau with the Moebius transform of Z_nu over a grid.
MoebiusCheck check_moebius(const SystemRealization& sys,
                           const MoebiusPair& pair,
                           const std::vector<Complex>& grid,
                           const Tolerances& tol);

}  // namespace kyp
