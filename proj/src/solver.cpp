#include "kyp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "kyp/contraction.hpp"
#include "kyp/errors.hpp"
#include "kyp/shorted.hpp"

namespace kyp {

namespace {

// Gap-sequence diagnostics. Windows are [m/4, m/2] and [m/2, m] over the
// gaps recorded so far; a geometric sequence has the same per-step factor
// on both, a power law n^{-p} halves the log-factor on the second.
void diagnose(IterationTrace* trace) {
  const std::vector<double>& g = trace->gaps;
  const std::size_t m = g.size();
  trace->slow_convergence = false;
  trace->empirical_rate = 0.0;
  trace->limit_error_estimate = m == 0 ? 0.0 : g.back();
  if (m < 8 || g.back() <= 0.0) return;
  const std::size_t a = m / 4;
  const std::size_t b = m / 2;
  const double ga = g[a - 1];
  const double gb = g[b - 1];
  const double gc = g[m - 1];
  if (ga <= 0.0 || gb <= 0.0) return;
  const double log_r1 = std::log(gb / ga) / static_cast<double>(b - a);
  const double log_r2 = std::log(gc / gb) / static_cast<double>(m - b);
  trace->empirical_rate = std::exp(log_r2);
  trace->slow_convergence = log_r2 > -1e-12 || log_r2 > 0.75 * log_r1;
  if (trace->slow_convergence) {
    // Tail of c n^{-p} beyond n is about g_n n / (p - 1).
    const double p = std::log(gb / gc) / std::log(static_cast<double>(m) / b);
    trace->limit_error_estimate =
        p > 1.05 ? gc * static_cast<double>(m) / (p - 1.0)
                 : std::numeric_limits<double>::infinity();
  } else {
    const double r = trace->empirical_rate;
    trace->limit_error_estimate = gc * r / (1.0 - r);
  }
}

CMatrix pad_top_left(const CMatrix& y, Index size) {
  CMatrix out = CMatrix::Zero(size, size);
  out.topLeftCorner(y.rows(), y.cols()) = y;
  return out;
}

}  // namespace

RiccatiMap::RiccatiMap(const SystemRealization& sys, const Tolerances& tol)
    : tol_(tol) {
  const ContractionParams p = parametrize(sys.T(), tol);
  const Index n = sys.state_dim();
  const CMatrix d_g =
      psd_sqrt(psd_clamp(identity(n) - p.G.adjoint() * p.G), tol);
  const CMatrix d_f_star =
      psd_sqrt(psd_clamp(identity(n) - p.F * p.F.adjoint()), tol);
  g_gram_ = p.G.adjoint() * p.G;
  ff_ = p.F * p.F.adjoint();
  left_ = d_g * p.L_ambient().adjoint() * d_f_star;
}

CMatrix RiccatiMap::operator()(const CMatrix& x) const {
  const Index n = dim();
  const CMatrix root = psd_sqrt(psd_clamp(x), tol_);
  const CMatrix w = psd_clamp(identity(n) - root * ff_ * root);
  const CMatrix m = pinv(psd_sqrt(w, tol_), tol_) * root * left_.adjoint();
  return hermitian_part(g_gram_ + m.adjoint() * m);
}

CMatrix shorted_step(const SystemRealization& sys, const CMatrix& x,
                     const Tolerances& tol) {
  const Index n = sys.state_dim();
  const CMatrix t = sys.T().full();
  const CMatrix y = pad_top_left(identity(n) - x, t.rows());
  const CMatrix s = psd_clamp(identity(t.cols()) - t.adjoint() * t) +
                    psd_clamp(t.adjoint() * y * t);
  return identity(n) - shorted_leading(s, n, tol);
}

SolveResult solve_min(const SystemRealization& sys, const Tolerances& tol) {
  tol.validate();
  sys.T().require_contractive(tol, "solve_min");
  const RiccatiMap step(sys, tol);
  const Index n = sys.state_dim();

  SolveResult out;
  IterationTrace& trace = out.trace;
  CMatrix x = CMatrix::Zero(n, n);
  trace.iterates.push_back(x);
  for (int k = 0; k < tol.max_iter; ++k) {
    CMatrix next = step(x);
    const CMatrix diff = next - x;
    if (min_eigenvalue(diff) < -tol.psd_tol) {
      throw ConsistencyError("solve_min: iterate " + std::to_string(k + 1) +
                             " decreased by " +
                             format_number(-min_eigenvalue(diff)));
    }
    if (min_eigenvalue(identity(n) - next) < -tol.psd_tol) {
      throw ConsistencyError("solve_min: iterate " + std::to_string(k + 1) +
                             " left the interval [0, I]");
    }
    const double gap = op_norm(diff);
    trace.gaps.push_back(gap);
    trace.iterates.push_back(next);
    x = std::move(next);
    trace.iterations_used = k + 1;
    if (gap < tol.fixpoint_tol) {
      trace.converged = true;
      break;
    }
  }
  trace.final_residual = op_norm(x - step(x));
  diagnose(&trace);
  out.x_min = x;
  return out;
}

SystemRealization rescale_realization(const SystemRealization& sys,
                                      const CMatrix& x, const Tolerances& tol) {
  const Index n = sys.state_dim();
  if (x.rows() != n || x.cols() != n) {
    throw DimensionError("rescale_realization: X must be " +
                         std::to_string(n) + "x" + std::to_string(n));
  }
  if (n == 0) return sys;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(x));
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev(0) < 100.0 * tol.psd_tol) {
    throw SingularError("rescale_realization: X is numerically singular "
                        "(smallest eigenvalue " + format_number(ev(0)) + ")");
  }
  const CMatrix& v = es.eigenvectors();
  const CMatrix root =
      v * ev.cwiseSqrt().cast<Complex>().asDiagonal() * v.adjoint();
  const CMatrix inv_root =
      v * ev.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
      v.adjoint();
  return SystemRealization(root * sys.A() * inv_root, root * sys.B(),
                           sys.C() * inv_root, sys.D(),
                           sys.label().empty() ? "rescaled"
                                               : sys.label() + "_rescaled");
}

OptimalityReport optimality_check(const SystemRealization& sys,
                                  const Tolerances& tol) {
  if (!classify(sys, tol).minimal) {
    throw std::invalid_argument(
        "optimality_check: optimality is defined for minimal systems only");
  }
  OptimalityReport out;
  out.primal = solve_min(sys, tol);
  out.dual = solve_min(adjoint(sys), tol);
  out.x_min = out.primal.x_min;
  out.adjoint_x_min = out.dual.x_min;
  const double base = std::max(1e-8, std::sqrt(tol.fixpoint_tol));
  auto is_identity = [&](const SolveResult& r) {
    const double dist = op_norm(identity(r.x_min.rows()) - r.x_min);
    const double est = r.trace.limit_error_estimate;
    const double allowance =
        std::isfinite(est) ? std::max(base, 1.5 * est) : base;
    return dist <= allowance;
  };
  out.optimal = is_identity(out.primal);
  out.star_optimal = is_identity(out.dual);
  return out;
}

}  // namespace kyp
