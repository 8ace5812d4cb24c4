#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "kyp/contraction.hpp"
#include "kyp/numerics.hpp"
#include "kyp/system.hpp"

namespace kyp {

using Rng = std::mt19937_64;

// Seeded random matrices. All randomness in the library goes through these.

/// Entries with independent standard complex normal distribution.
CMatrix random_gaussian(Index rows, Index cols, Rng& rng);
/// rows x cols with orthonormal columns (rows >= cols), from a QR
/// factorization of a Gaussian matrix.
CMatrix random_isometry(Index rows, Index cols, Rng& rng);
CMatrix random_unitary(Index n, Rng& rng);
/// A contraction with norm drawn uniformly from [min_norm, max_norm].
CMatrix random_contraction(Index rows, Index cols, Rng& rng,
                           double min_norm = 0.2, double max_norm = 0.95);
/// A nonnegative n x n matrix of the given rank with eigenvalues in
/// [0.1, 2].
CMatrix random_psd(Index n, Index rank, Rng& rng);
/// Singular values `ones` equal to 1 and the rest in [0, 0.9].
CMatrix random_partial_isometry_mix(Index rows, Index cols, Index ones,
                                    Rng& rng);

/// A passive system with ||T|| drawn from [0.5, 0.95].
SystemRealization random_passive_system(Index n_h, Index n_m, Index n_n,
                                        Rng& rng);

/// How the defect of the (2,2) block D of a random contraction looks.
enum class DefectPattern {
  kStrict,       // ||D|| < 1: 𝔇_D = M, 𝔇_{D*} = N
  kUnitary,      // D unitary: both defects zero, B = C = 0
  kIsometric,    // D isometric: 𝔇_D = {0}, B = 0
  kCoisometric,  // D co-isometric: 𝔇_{D*} = {0}, C = 0
  kMixed,        // some singular values of D equal to 1
};

/// A contraction built from random parameters (D, F, G, L); F, G and L
/// are themselves sometimes partial isometries so that every defect space
/// can degenerate. Block sizes may be adjusted to fit the pattern.
BlockContraction random_structured_contraction(Index n_h, Index n_m,
                                               Index n_n, DefectPattern pattern,
                                               Rng& rng);

/// [[0, 1], [1, 0]]: conservative and minimal, X = 1 is the only solution.
SystemRealization fixture_a();
/// [[0.5, 1/sqrt 2], [1/sqrt 2, 0]]: the scalar case of build_ex2.
SystemRealization fixture_b();
/// [[0.8 sqrt 0.91, 0.6], [0.3, 0]]: the scalar case of build_ex1 with
/// F = 0.6, alpha = 0.25; the minimal solution is 0.25.
SystemRealization fixture_c();

/// nu = [[(1 - alpha) L, F], [G, 0]] with G = sqrt(alpha) V, F =
/// sqrt(alpha) W*, V : H -> N and W : H -> M isometries, L unitary. The
/// Riccati equation has the unique solution I although UNIQQ fails.
SystemRealization build_ex2(double alpha, const CMatrix& l, const CMatrix& v,
                            const CMatrix& w);
/// Seeded version; n_m and n_n default to n_h.
SystemRealization build_ex2(Index n_h, double alpha, std::uint64_t seed,
                            Index n_m = -1, Index n_n = -1);

/// nu = [[D_{F*} D_G, F], [G, 0]] with G = sqrt(alpha) U (F F*)^{1/2} for a
/// strict contraction F with ker F* = {0} and an isometry U : H -> N. The
/// minimal solution is alpha I and the adjoint system has minimal solution I.
SystemRealization build_ex1(const CMatrix& f, double alpha, const CMatrix& u);
SystemRealization build_ex1(const CMatrix& f, double alpha);
/// Seeded version: square F with singular values in [0.5, 0.9].
SystemRealization build_ex1(Index n_h, double alpha, std::uint64_t seed);

enum class FixtureKind { kEx1, kEx2, kFixA, kFixB, kFixC, kScalarGeneric };

struct FixtureSpec {
  FixtureKind kind = FixtureKind::kFixA;
  Index n_h = 1;
  Index n_m = -1;  // -1: same as n_h
  Index n_n = -1;
  double alpha = 0.5;
  std::uint64_t seed = 0;
};

FixtureKind parse_fixture_kind(const std::string& name);
std::string to_string(FixtureKind kind);

SystemRealization build_fixture(const FixtureSpec& spec);

}  // namespace kyp
