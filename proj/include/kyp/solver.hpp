#pragma once

#include <vector>

#include "kyp/numerics.hpp"
#include "kyp/system.hpp"

namespace kyp {

/// The map X -> G*G + D_G L* N* N L D_G with N = W^{-1/2} X^{1/2} D_{F*},
/// W = I - X^{1/2} F F* X^{1/2} (Moore-Penrose W^{-1/2}), whose fixed points
/// are the solutions of the Riccati equation. The parametrization of T is
/// computed once at construction.
class RiccatiMap {
 public:
  RiccatiMap(const SystemRealization& sys, const Tolerances& tol);
  CMatrix operator()(const CMatrix& x) const;
  Index dim() const { return g_gram_.rows(); }

 private:
  Tolerances tol_;
  CMatrix g_gram_;   // G*G
  CMatrix ff_;       // F F*
  CMatrix left_;     // D_G L* D_{F*}
};

/// The same step through the shorted operator:
/// I - (D_T^2 + T* (I - X) P'_H T)_H restricted to H.
CMatrix shorted_step(const SystemRealization& sys, const CMatrix& x,
                     const Tolerances& tol);

struct IterationTrace {
  std::vector<CMatrix> iterates;  // X^(0) = 0, X^(1), ...
  std::vector<double> gaps;       // gaps[k] = ||X^(k+1) - X^(k)||
  double final_residual = 0.0;    // ||X - step(X)|| at the last iterate
  bool converged = false;
  int iterations_used = 0;
  /// Gaps decay slower than geometrically: the per-step contraction factor
  /// over the second half of the run is markedly closer to 1 than over the
  /// preceding quarter, the signature of power-law decay.
  bool slow_convergence = false;
  double empirical_rate = 0.0;  // per-step gap ratio over the second half
  /// Extrapolated distance from the last iterate to the limit.
  double limit_error_estimate = 0.0;
};

struct SolveResult {
  CMatrix x_min;
  IterationTrace trace;
};

/// Monotone iteration from X = 0 to the minimal solution. Stops when a gap
/// drops below fixpoint_tol or after max_iter steps (converged = false).
/// Throws NotContractiveError for non-passive input and ConsistencyError if
/// an iterate decreases or leaves [0, I] by more than psd_tol.
SolveResult solve_min(const SystemRealization& sys, const Tolerances& tol);

/// T_1 = [[X^{1/2} A X^{-1/2}, X^{1/2} B], [C X^{-1/2}, D]]. Throws
/// SingularError unless X >= 100 psd_tol I.
SystemRealization rescale_realization(const SystemRealization& sys,
                                      const CMatrix& x, const Tolerances& tol);

struct OptimalityReport {
  bool optimal = false;
  bool star_optimal = false;
  CMatrix x_min;
  CMatrix adjoint_x_min;
  SolveResult primal;
  SolveResult dual;  // run on the adjoint system
};

/// optimal iff the minimal solution is I, star-optimal iff the minimal
/// solution of the adjoint system is I. "Is I" allows the larger of
/// sqrt(fixpoint_tol), 1e-8 and 1.5 times the extrapolated limit error, so
/// runs stopped on a slowly converging sequence still get a verdict.
/// Throws std::invalid_argument for non-minimal systems.
OptimalityReport optimality_check(const SystemRealization& sys,
                                  const Tolerances& tol);

}  // namespace kyp
