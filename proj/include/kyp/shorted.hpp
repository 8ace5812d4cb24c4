#pragma once

#include <string_view>

#include "kyp/numerics.hpp"

namespace kyp {

/// A subspace K of C^n carried as an orthonormal basis, never as a projection.
struct Subspace {
  Index ambient_dim = 0;
  CMatrix basis;  // ambient_dim x dim, orthonormal columns

  /// Orthonormalizes the columns of `spanning` (rank-revealing).
  static Subspace span(const CMatrix& spanning, const Tolerances& tol = {});
  /// span{e_first, ..., e_{first+count-1}} in C^n.
  static Subspace coordinates(Index n, Index first, Index count);

  Index dim() const { return basis.cols(); }
  Subspace complement(const Tolerances& tol = {}) const;
  CMatrix projection() const { return basis * basis.adjoint(); }
};

enum class ShortedRoute { kSchurComplement, kKreinOracle };

std::string_view to_string(ShortedRoute route);

/// Krein shorted operator S_K: the largest Z with 0 <= Z <= S and ran Z ⊆ K.
struct ShortedResult {
  CMatrix value;  // ambient size, PSD, ran(value) ⊆ K
  ShortedRoute route = ShortedRoute::kSchurComplement;
  /// ran S12* ⊂ ran S22^{1/2} held numerically in the K ⊕ K^⊥ split.
  bool range_condition_ok = true;
};

/// Schur-complement route with Moore-Penrose S22^{-1/2}. When the range
/// condition fails beyond tolerance the Krein oracle value is returned
/// instead and the result is flagged.
ShortedResult shorted(const CMatrix& s, const Subspace& k,
                      const Tolerances& tol = {});

/// Krein's formula S^{1/2} P_Ω S^{1/2}, Ω = closure ran S ⊖ S^{1/2}(K^⊥).
ShortedResult shorted_oracle(const CMatrix& s, const Subspace& k,
                             const Tolerances& tol = {});

/// (I - X)_K for 0 <= X <= I through
/// P_K - (W^{-1/2} X^{1/2} P_K)* (W^{-1/2} X^{1/2} P_K),
/// W = I - X^{1/2} P_{K^⊥} X^{1/2}, with Moore-Penrose W^{-1/2}.
CMatrix shorted_complement(const CMatrix& x, const Subspace& k,
                           const Tolerances& tol = {});

/// The leading k x k block of S shorted to span{e_1..e_k}, i.e. S_K
/// restricted to K when K is the first summand of a direct sum.
CMatrix shorted_leading(const CMatrix& s, Index k, const Tolerances& tol = {});

}  // namespace kyp
