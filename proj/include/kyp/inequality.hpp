#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kyp/contraction.hpp"
#include "kyp/numerics.hpp"
#include "kyp/system.hpp"

namespace kyp {

/// Tolerance for "two routes agree" and "this operator vanishes" decisions
/// taken on computed operators (as opposed to eigenvalue signs).
inline constexpr double kAgreementTol = 1e-8;

/// A candidate solution X on the state space with 0 <= X <= I.
struct KypCandidate {
  CMatrix X;
  bool kernel_trivial = false;

  /// Throws DimensionError for a non-square X and NotPsdError when X leaves
  /// [0, I] by more than psd_tol.
  static KypCandidate Make(const CMatrix& x, const Tolerances& tol);
};

/// L(X) = [[X - A*XA - C*C, -A*XB - C*D], [-B*XA - D*C, I - B*XB - D*D]].
CMatrix kyp_matrix(const SystemRealization& sys, const CMatrix& x);

struct FormResult {
  std::string name;
  bool defined = true;
  bool feasible = false;
  /// Smallest eigenvalue of the form's Hermitian operator (for the
  /// one-sided inequalities, of the difference of the two sides).
  double margin = 0.0;
};

struct ResidualResult {
  std::string name;
  bool defined = true;
  double residual = 0.0;  // spectral norm
};

struct KypReport {
  CMatrix X;
  bool in_interval = false;    // 0 <= X <= I within psd_tol
  bool kernel_trivial = false;
  std::vector<FormResult> forms;         // CKYP ... SkypQX
  std::vector<ResidualResult> riccati;   // RicXX ... RICSHORTX
  bool feasible = false;  // verdict of the defined forms (CKYP on a split)
  bool consistent = true;
  double max_residual = 0.0;  // over defined Riccati forms
  double min_residual = 0.0;

  const FormResult& form(const std::string& name) const;
  const ResidualResult& residual(const std::string& name) const;
};

/// Evaluates the equivalent KYP inequalities and Riccati equations for X.
/// Forms whose pseudo-inverse composition fails its range condition are
/// reported as undefined and left out of the consistency vote.
KypReport evaluate_forms(const SystemRealization& sys, const CMatrix& x,
                         const Tolerances& tol);

struct SolutionBounds {
  /// I - (D_{P_N T}^2)_H = G*G, below every solution.
  CMatrix lower;
  bool observable = false;
  /// Present when observable: every Y in [I - (D_T^2)_H, I] is a solution.
  std::optional<CMatrix> interval_lower;
  /// Present when observable and (D_T^2)_H = (D_{P_N T}^2)_H; then the lower
  /// bound is the minimal solution.
  std::optional<CMatrix> x_min;
};

SolutionBounds solution_bounds(const SystemRealization& sys,
                               const Tolerances& tol);

struct UniquenessReport {
  ShortedDefects defects;
  bool uniqq = false;
  bool uniq1 = false;
  bool nesopt = false;                 // (D_T^2)_H = 0
  bool sufficient_optimality = false;  // (D_{P_N T}^2)_H = 0
  /// The same verdicts read off intersections ran D ∩ H of the defects.
  bool uniqq_range = false;
  bool uniq1_range = false;
  bool nesopt_range = false;
  bool sufficient_range = false;
  bool range_forms_agree = false;
};

/// Requires a passive system with square T (K = H).
UniquenessReport uniqueness_report(const SystemRealization& sys,
                                   const Tolerances& tol);

}  // namespace kyp
