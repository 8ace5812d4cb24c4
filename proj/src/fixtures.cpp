#include "kyp/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kyp/errors.hpp"

namespace kyp {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CMatrix psd_root(const CMatrix& m) { return psd_sqrt(m, Tolerances{}); }

SystemRealization require_minimal(SystemRealization sys, const char* what) {
  const Classification c = classify(sys, Tolerances{});
  if (!c.passive || !c.minimal) {
    throw ConsistencyError(std::string(what) +
                           ": constructed system is not passive and minimal");
  }
  return sys;
}

}  // namespace

CMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

CMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  if (cols > rows) {
    throw DimensionError("random_isometry: more columns than rows");
  }
  const CMatrix g = random_gaussian(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(rows, cols);
}

CMatrix random_unitary(Index n, Rng& rng) { return random_isometry(n, n, rng); }

CMatrix random_contraction(Index rows, Index cols, Rng& rng, double min_norm,
                           double max_norm) {
  const CMatrix g = random_gaussian(rows, cols, rng);
  const double target = uniform(rng, min_norm, max_norm);
  const double n = op_norm(g);
  if (n == 0.0) return CMatrix::Zero(rows, cols);
  return g * (target / n);
}

CMatrix random_psd(Index n, Index rank, Rng& rng) {
  const CMatrix u = random_isometry(n, rank, rng);
  Eigen::VectorXd ev(rank);
  for (Index i = 0; i < rank; ++i) ev(i) = uniform(rng, 0.1, 2.0);
  return u * ev.cast<Complex>().asDiagonal() * u.adjoint();
}

CMatrix random_partial_isometry_mix(Index rows, Index cols, Index ones,
                                    Rng& rng) {
  const Index k = std::min(rows, cols);
  const CMatrix u = random_isometry(rows, k, rng);
  const CMatrix v = random_isometry(cols, k, rng);
  Eigen::VectorXd s(k);
  for (Index i = 0; i < k; ++i) s(i) = i < ones ? 1.0 : uniform(rng, 0.0, 0.9);
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

SystemRealization random_passive_system(Index n_h, Index n_m, Index n_n,
                                        Rng& rng) {
  const CMatrix t = random_contraction(n_h + n_n, n_h + n_m, rng, 0.5, 0.95);
  return SystemRealization(BlockContraction::FromFull(t, n_h, n_h), "random");
}

BlockContraction random_structured_contraction(Index n_h, Index n_m, Index n_n,
                                               DefectPattern pattern,
                                               Rng& rng) {
  const Tolerances tol;
  CMatrix d;
  switch (pattern) {
    case DefectPattern::kStrict:
      d = random_contraction(n_n, n_m, rng);
      break;
    case DefectPattern::kUnitary:
      d = random_unitary(n_m, rng);
      break;
    case DefectPattern::kIsometric:
      d = random_isometry(std::max(n_n, n_m), n_m, rng);
      break;
    case DefectPattern::kCoisometric:
      d = random_isometry(std::max(n_m, n_n), n_n, rng).adjoint();
      break;
    case DefectPattern::kMixed:
      d = random_partial_isometry_mix(n_n, n_m, 1, rng);
      break;
  }
  // Parameters are sometimes partial isometries so their defects degenerate.
  auto parameter = [&rng](Index rows, Index cols) -> CMatrix {
    if (rows == 0 || cols == 0) return CMatrix::Zero(rows, cols);
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
      return random_partial_isometry_mix(rows, cols, 1, rng);
    }
    return random_contraction(rows, cols, rng);
  };
  const DefectData dd = defect(d, tol);
  const CMatrix f = parameter(n_h, dd.defect_basis.cols());
  const CMatrix g = parameter(dd.codefect_basis.cols(), n_h);
  const Index dim_f_star = defect(CMatrix(f.adjoint()), tol).defect_basis.cols();
  const Index dim_g = defect(g, tol).defect_basis.cols();
  const CMatrix l = parameter(dim_f_star, dim_g);
  return synthesize(ContractionParams::Make(d, f, g, l, tol), tol);
}

SystemRealization fixture_a() {
  return SystemRealization(CMatrix::Zero(1, 1), CMatrix::Ones(1, 1),
                           CMatrix::Ones(1, 1), CMatrix::Zero(1, 1), "FIX-A");
}

SystemRealization fixture_b() {
  SystemRealization sys = build_ex2(0.5, CMatrix::Ones(1, 1),
                                    CMatrix::Ones(1, 1), CMatrix::Ones(1, 1));
  return SystemRealization(sys.T(), "FIX-B");
}

SystemRealization fixture_c() {
  SystemRealization sys = build_ex1(CMatrix::Constant(1, 1, 0.6), 0.25);
  return SystemRealization(sys.T(), "FIX-C");
}

SystemRealization build_ex2(double alpha, const CMatrix& l, const CMatrix& v,
                            const CMatrix& w) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("build_ex2: alpha must lie in (0, 1)");
  }
  const Index n = l.rows();
  if (l.cols() != n || v.cols() != n || w.cols() != n || v.rows() < n ||
      w.rows() < n) {
    throw DimensionError("build_ex2: need L square and isometries V, W on H");
  }
  const double iso_err = std::max(
      {op_norm(l.adjoint() * l - identity(n)), op_norm(l * l.adjoint() - identity(n)),
       op_norm(v.adjoint() * v - identity(n)), op_norm(w.adjoint() * w - identity(n))});
  if (iso_err > 1e-10) {
    throw std::invalid_argument("build_ex2: L must be unitary, V and W isometric");
  }
  const double s = std::sqrt(alpha);
  SystemRealization sys((1.0 - alpha) * l, s * w.adjoint(), s * v,
                        CMatrix::Zero(v.rows(), w.rows()), "EX2");
  return require_minimal(sys, "build_ex2");
}

SystemRealization build_ex2(Index n_h, double alpha, std::uint64_t seed,
                            Index n_m, Index n_n) {
  if (n_m < 0) n_m = n_h;
  if (n_n < 0) n_n = n_h;
  if (n_h < 1 || n_m < n_h || n_n < n_h) {
    throw DimensionError("build_ex2: need n_M >= n_H >= 1 and n_N >= n_H");
  }
  Rng rng(seed);
  const CMatrix l = random_unitary(n_h, rng);
  const CMatrix v = random_isometry(n_n, n_h, rng);
  const CMatrix w = random_isometry(n_m, n_h, rng);
  return build_ex2(alpha, l, v, w);
}

SystemRealization build_ex1(const CMatrix& f, double alpha, const CMatrix& u) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("build_ex1: alpha must lie in (0, 1)");
  }
  const Index n = f.rows();
  if (u.cols() != n || u.rows() < n) {
    throw DimensionError("build_ex1: U must be an isometry on H");
  }
  if (op_norm(f) >= 1.0) {
    throw NotContractiveError("build_ex1: F must be a strict contraction",
                              op_norm(f));
  }
  const CMatrix ff = f * f.adjoint();
  if (min_eigenvalue(ff) <= 1e-12) {
    throw std::invalid_argument("build_ex1: F* must have trivial kernel");
  }
  const CMatrix g = std::sqrt(alpha) * u * psd_root(ff);
  const CMatrix d_g = psd_root(identity(n) - alpha * ff);
  const CMatrix d_f_star = psd_root(identity(n) - ff);
  SystemRealization sys(d_f_star * d_g, f, g,
                        CMatrix::Zero(u.rows(), f.cols()), "EX1");
  return require_minimal(sys, "build_ex1");
}

SystemRealization build_ex1(const CMatrix& f, double alpha) {
  return build_ex1(f, alpha, identity(f.rows()));
}

SystemRealization build_ex1(Index n_h, double alpha, std::uint64_t seed) {
  if (n_h < 1) throw DimensionError("build_ex1: n_H must be positive");
  Rng rng(seed);
  const CMatrix left = random_unitary(n_h, rng);
  const CMatrix right = random_unitary(n_h, rng);
  Eigen::VectorXd s(n_h);
  for (Index i = 0; i < n_h; ++i) s(i) = uniform(rng, 0.5, 0.9);
  const CMatrix f = left * s.cast<Complex>().asDiagonal() * right.adjoint();
  const CMatrix u = random_unitary(n_h, rng);
  return build_ex1(f, alpha, u);
}

FixtureKind parse_fixture_kind(const std::string& name) {
  if (name == "EX1" || name == "ex1") return FixtureKind::kEx1;
  if (name == "EX2" || name == "ex2") return FixtureKind::kEx2;
  if (name == "FIX-A" || name == "fix-a") return FixtureKind::kFixA;
  if (name == "FIX-B" || name == "fix-b") return FixtureKind::kFixB;
  if (name == "FIX-C" || name == "fix-c") return FixtureKind::kFixC;
  if (name == "scalar-generic") return FixtureKind::kScalarGeneric;
  throw std::invalid_argument("unknown fixture kind '" + name + "'");
}

std::string to_string(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::kEx1: return "EX1";
    case FixtureKind::kEx2: return "EX2";
    case FixtureKind::kFixA: return "FIX-A";
    case FixtureKind::kFixB: return "FIX-B";
    case FixtureKind::kFixC: return "FIX-C";
    case FixtureKind::kScalarGeneric: return "scalar-generic";
  }
  return "unknown";
}

SystemRealization build_fixture(const FixtureSpec& spec) {
  switch (spec.kind) {
    case FixtureKind::kEx1:
      return build_ex1(spec.n_h, spec.alpha, spec.seed);
    case FixtureKind::kEx2:
      return build_ex2(spec.n_h, spec.alpha, spec.seed, spec.n_m, spec.n_n);
    case FixtureKind::kFixA:
      return fixture_a();
    case FixtureKind::kFixB:
      return fixture_b();
    case FixtureKind::kFixC:
      return fixture_c();
    case FixtureKind::kScalarGeneric: {
      Rng rng(spec.seed);
      SystemRealization sys = random_passive_system(1, 1, 1, rng);
      return SystemRealization(sys.T(), "scalar-generic");
    }
  }
  throw std::invalid_argument("build_fixture: unknown kind");
}

}  // namespace kyp
