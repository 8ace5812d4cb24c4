#include "kyp/contraction.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "kyp/errors.hpp"
#include "kyp/fixtures.hpp"
#include "kyp/system.hpp"
#include "test_util.h"

namespace kyp {
namespace {

using testing::Diag;
using testing::Real;
using testing::Scalar;

const Tolerances kTol;
const double kRoot2 = 1.0 / std::sqrt(2.0);

CMatrix Root(const CMatrix& m) { return psd_sqrt(psd_clamp(m), kTol); }

// Square of the norm of a column vector.
double Sq(const CMatrix& v) { return v.squaredNorm(); }

const std::vector<DefectPattern> kPatterns = {
    DefectPattern::kStrict, DefectPattern::kUnitary, DefectPattern::kIsometric,
    DefectPattern::kCoisometric, DefectPattern::kMixed};

TEST(BlockContractionTest, DimensionChecks) {
  EXPECT_THROW(BlockContraction(CMatrix::Zero(2, 2), CMatrix::Zero(1, 1),
                                CMatrix::Zero(1, 2), CMatrix::Zero(1, 1)),
               DimensionError);
  const BlockContraction t =
      BlockContraction::FromFull(Real({{1, 2, 3}, {4, 5, 6}}), 1, 2);
  EXPECT_EQ(t.dim_K(), 1);
  EXPECT_EQ(t.dim_H(), 2);
  EXPECT_EQ(t.dim_M(), 1);
  EXPECT_EQ(t.dim_N(), 1);
  EXPECT_MATRIX_NEAR(t.full(), Real({{1, 2, 3}, {4, 5, 6}}), 0.0);
}

TEST(DefectTest, Examples) {
  Rng rng(1);
  const DefectData u = defect(random_unitary(3, rng), kTol);
  EXPECT_LT(op_norm(u.defect), 1e-12);
  EXPECT_LT(op_norm(u.codefect), 1e-12);
  EXPECT_EQ(u.defect_basis.cols(), 0);
  EXPECT_EQ(u.codefect_basis.cols(), 0);

  const DefectData z = defect(CMatrix::Zero(2, 2), kTol);
  EXPECT_MATRIX_NEAR(z.defect, identity(2), 1e-15);
  EXPECT_MATRIX_NEAR(z.codefect, identity(2), 1e-15);

  const CMatrix t = fixture_b().T().full();
  const DefectData b = defect(t, kTol);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b.defect * b.defect);
  EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 0.75, 1e-12);
  EXPECT_EQ(b.defect_basis.cols(), 1);
}

TEST(DefectTest, CommutationRelation) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix t = random_contraction(2 + trial % 4, 1 + trial % 5, rng);
    const DefectData d = defect(t, kTol);
    EXPECT_MATRIX_NEAR(t * d.defect, d.codefect * t, 1e-10);
  }
}

TEST(DefectTest, RejectsNonContraction) {
  EXPECT_THROW(defect(Scalar(1.5), kTol), NotContractiveError);
}

TEST(ParametrizeTest, FixtureB) {
  const ContractionParams p = parametrize(fixture_b().T(), kTol);
  EXPECT_MATRIX_NEAR(p.D, Scalar(0), 1e-15);
  EXPECT_MATRIX_NEAR(p.F, Scalar(kRoot2), 1e-12);
  EXPECT_MATRIX_NEAR(p.G, Scalar(kRoot2), 1e-12);
  EXPECT_MATRIX_NEAR(p.L, Scalar(1.0), 1e-12);
}

TEST(ParametrizeTest, FixtureA) {
  const ContractionParams p = parametrize(fixture_a().T(), kTol);
  EXPECT_MATRIX_NEAR(p.F, Scalar(1.0), 1e-12);
  EXPECT_MATRIX_NEAR(p.G, Scalar(1.0), 1e-12);
  EXPECT_EQ(p.L.rows(), 0);
  EXPECT_EQ(p.L.cols(), 0);
}

TEST(ParametrizeTest, UnitaryDForcesZeroBAndC) {
  Rng rng(3);
  const CMatrix d = random_unitary(2, rng);
  const CMatrix a = random_contraction(2, 2, rng);
  const BlockContraction t(a, CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), d);
  const ContractionParams p = parametrize(t, kTol);
  EXPECT_EQ(p.F.cols(), 0);
  EXPECT_EQ(p.G.rows(), 0);
  EXPECT_MATRIX_NEAR(synthesize(p, kTol).full(), t.full(), 1e-10);
}

TEST(ParametrizeTest, RejectsNonContraction) {
  EXPECT_THROW(parametrize(BlockContraction::FromFull(2.0 * identity(2), 1, 1),
                           kTol),
               NotContractiveError);
}

TEST(SynthesizeTest, Examples) {
  const ContractionParams b = ContractionParams::Make(
      Scalar(0), Scalar(kRoot2), Scalar(kRoot2), Scalar(1), kTol);
  EXPECT_MATRIX_NEAR(synthesize(b, kTol).full(), fixture_b().T().full(), 1e-15);

  const ContractionParams zero = ContractionParams::Make(
      Scalar(0), Scalar(0), Scalar(0), Scalar(0), kTol);
  EXPECT_MATRIX_NEAR(synthesize(zero, kTol).full(), CMatrix::Zero(2, 2), 0.0);

  const ContractionParams a = ContractionParams::Make(
      Scalar(0), Scalar(1), Scalar(1), CMatrix(0, 0), kTol);
  EXPECT_MATRIX_NEAR(synthesize(a, kTol).full(), Real({{0, 1}, {1, 0}}), 0.0);
}

TEST(SynthesizeTest, RejectsLargeParameter) {
  EXPECT_THROW(ContractionParams::Make(Scalar(0), Scalar(1.1), Scalar(0.5),
                                       Scalar(0), kTol),
               NotContractiveError);
  EXPECT_THROW(ContractionParams::Make(Scalar(0), Scalar(0.5), Scalar(0.5),
                                       CMatrix::Zero(2, 2), kTol),
               DimensionError);
}

TEST(MdTransformTest, Examples) {
  Rng rng(4);
  CMatrix q = random_contraction(3, 3, rng);
  // D = 0 on 1-dimensional M, N: the defect coordinates are the spaces
  // themselves and M_0(Q) = Q.
  q(2, 2) = 0.0;
  EXPECT_MATRIX_NEAR(md_transform(Scalar(0), q, 2, 2, kTol).full(), q, 1e-15);

  const BlockContraction t =
      md_transform(Scalar(0.6), Real({{0, 0.8}, {1, 0}}), 1, 1, kTol);
  EXPECT_MATRIX_NEAR(t.full(), Real({{-0.48, 0.64}, {0.8, 0.6}}), 1e-15);
  EXPECT_TRUE(t.is_contractive(kTol));
}

TEST(MdTransformTest, PreservesIsometry) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix d = random_contraction(2, 2, rng);
    // Q = [[S, F], [G, 0]] with F an isometry C^2 -> C^3, S = c e where e
    // spans ran(F)^perp, and G = s u for a unit vector u: Q*Q = I.
    const CMatrix f = random_isometry(3, 2, rng);
    const CMatrix e = orthogonal_complement(f, 3, kTol);
    const double angle = 0.3 + 0.1 * trial;
    CMatrix q = CMatrix::Zero(5, 3);
    q.block(0, 0, 3, 1) = std::cos(angle) * e;
    q.block(0, 1, 3, 2) = f;
    q.block(3, 0, 2, 1) = std::sin(angle) * random_isometry(2, 1, rng);
    EXPECT_MATRIX_NEAR(q.adjoint() * q, identity(3), 1e-12);
    const CMatrix t = md_transform(d, q, 3, 1, kTol).full();
    EXPECT_MATRIX_NEAR(t.adjoint() * t, identity(3), 1e-10);
  }
}

TEST(MdTransformTest, ContractivityEquivalence) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix d = random_contraction(2, 2, rng);
    CMatrix q = random_contraction(4, 4, rng, 0.2, 1.3);
    q.bottomRightCorner(2, 2).setZero();
    const bool q_contractive = op_norm(q) <= 1.0;
    const BlockContraction t = md_transform(d, q, 2, 2, kTol);
    EXPECT_EQ(q_contractive, t.norm() <= 1.0) << "trial " << trial;
  }
}

TEST(MdTransformTest, ShapeErrors) {
  EXPECT_THROW(md_transform(Scalar(0.5), CMatrix::Zero(3, 3), 1, 1, kTol),
               DimensionError);
  EXPECT_THROW(md_transform(Scalar(0.5), Real({{0, 0.5}, {0.5, 0.5}}), 1, 1, kTol),
               std::invalid_argument);
}

TEST(ShortedDefectsTest, Fixtures) {
  const ShortedDefects a = shorted_defects(fixture_a().T(), kTol);
  EXPECT_LT(op_norm(a.defect_H), 1e-12);
  EXPECT_LT(op_norm(a.output_defect_H), 1e-12);
  EXPECT_LT(op_norm(a.codefect_K), 1e-12);
  EXPECT_LT(op_norm(a.input_codefect_K), 1e-12);

  const ShortedDefects b = shorted_defects(fixture_b().T(), kTol);
  EXPECT_LT(op_norm(b.defect_H), 1e-12);
  EXPECT_MATRIX_NEAR(b.output_defect_H, Scalar(0.5), 1e-12);

  const ShortedDefects c = shorted_defects(fixture_c().T(), kTol);
  EXPECT_LT(op_norm(c.defect_H), 1e-12);
  EXPECT_MATRIX_NEAR(c.output_defect_H, Scalar(0.91), 1e-12);
  EXPECT_LT(c.cross_check, 1e-10);
}

TEST(RoundtripTest, RandomStructuredContractions) {
  Rng rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const DefectPattern pattern = kPatterns[trial % kPatterns.size()];
    const BlockContraction t = random_structured_contraction(
        1 + trial % 4, 1 + (trial / 3) % 3, 1 + (trial / 5) % 3, pattern, rng);
    const ContractionParams p = parametrize(t, kTol);
    EXPECT_LE(op_norm(p.F), 1.0 + 1e-10);
    EXPECT_LE(op_norm(p.G), 1.0 + 1e-10);
    EXPECT_LE(op_norm(p.L), 1.0 + 1e-10);
    EXPECT_MATRIX_NEAR(synthesize(p, kTol).full(), t.full(), 1e-8)
        << "trial " << trial;
  }
}

// parametrize(synthesize(p)) agrees with p as operators F D_D, D_{D*} G and
// D_{F*} L D_G; coordinates may differ by a unitary change of basis.
TEST(RoundtripTest, ParametersRecoveredAsOperators) {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const DefectPattern pattern = kPatterns[trial % kPatterns.size()];
    const BlockContraction t = random_structured_contraction(
        2 + trial % 3, 1 + trial % 3, 2, pattern, rng);
    const ContractionParams p = parametrize(t, kTol);
    const ContractionParams q = parametrize(synthesize(p, kTol), kTol);
    auto fdd = [](const ContractionParams& x) {
      return CMatrix(x.F_ambient() * Root(identity(x.dim_M()) - x.D.adjoint() * x.D));
    };
    auto ddg = [](const ContractionParams& x) {
      return CMatrix(Root(identity(x.dim_N()) - x.D * x.D.adjoint()) * x.G_ambient());
    };
    auto dld = [](const ContractionParams& x) {
      return CMatrix(Root(identity(x.dim_K()) - x.F * x.F.adjoint()) *
                     x.L_ambient() *
                     Root(identity(x.dim_H()) - x.G.adjoint() * x.G));
    };
    EXPECT_MATRIX_NEAR(fdd(p), fdd(q), 1e-8);
    EXPECT_MATRIX_NEAR(ddg(p), ddg(q), 1e-8);
    EXPECT_MATRIX_NEAR(dld(p), dld(q), 1e-8);
  }
}

TEST(DefectIdentitiesTest, NormsOnRandomVectors) {
  Rng rng(102);
  for (int trial = 0; trial < 60; ++trial) {
    const DefectPattern pattern = kPatterns[trial % kPatterns.size()];
    const BlockContraction t = random_structured_contraction(
        1 + trial % 4, 1 + trial % 3, 1 + (trial / 2) % 3, pattern, rng);
    const ContractionParams p = parametrize(t, kTol);
    const Index h = t.dim_H(), m = t.dim_M(), n = t.dim_N(), k = t.dim_K();
    const CMatrix d_d = Root(identity(m) - p.D.adjoint() * p.D);
    const CMatrix d_ds = Root(identity(n) - p.D * p.D.adjoint());
    const CMatrix d_f = Root(identity(p.F.cols()) - p.F.adjoint() * p.F);
    const CMatrix d_fs = Root(identity(k) - p.F * p.F.adjoint());
    const CMatrix d_g = Root(identity(h) - p.G.adjoint() * p.G);
    const CMatrix d_gs = Root(identity(p.G.rows()) - p.G * p.G.adjoint());
    const CMatrix d_l = Root(identity(p.L.cols()) - p.L.adjoint() * p.L);
    const CMatrix d_ls = Root(identity(p.L.rows()) - p.L * p.L.adjoint());
    const CMatrix tf = t.full();
    const CMatrix dt = Root(identity(h + m) - tf.adjoint() * tf);
    const CMatrix dts = Root(identity(k + n) - tf * tf.adjoint());
    CMatrix lower(n, h + m);
    lower << t.C(), t.D();
    CMatrix right(k + n, m);
    right << t.B(), t.D();
    const CMatrix dpn = Root(identity(h + m) - lower.adjoint() * lower);
    const CMatrix dpm = Root(identity(k + n) - right * right.adjoint());

    const CMatrix f = random_gaussian(h, 1, rng);
    const CMatrix hv = random_gaussian(m, 1, rng);
    const CMatrix g = random_gaussian(k, 1, rng);
    const CMatrix phi = random_gaussian(n, 1, rng);
    CMatrix fh(h + m, 1), gphi(k + n, 1);
    fh << f, hv;
    gphi << g, phi;

    const CMatrix u = p.basis_D.adjoint() *
                      (d_d * hv - p.D.adjoint() * p.G_ambient() * f);
    const double contr = Sq(d_f * u - p.F.adjoint() * p.L_ambient() * d_g * f) +
                         Sq(d_l * p.basis_G.adjoint() * d_g * f);
    EXPECT_NEAR(Sq(dt * fh), contr, 1e-8) << "trial " << trial;

    const CMatrix v = p.basis_D_star.adjoint() *
                      (d_ds * phi - p.D * p.F_ambient().adjoint() * g);
    const double star = Sq(d_gs * v - p.G * p.L_ambient().adjoint() * d_fs * g) +
                        Sq(d_ls * p.basis_F_star.adjoint() * d_fs * g);
    EXPECT_NEAR(Sq(dts * gphi), star, 1e-8) << "trial " << trial;

    EXPECT_NEAR(Sq(dpn * fh),
                Sq(d_d * hv - p.D.adjoint() * p.G_ambient() * f) + Sq(d_g * f),
                1e-8);
    EXPECT_NEAR(Sq(dpm * gphi),
                Sq(d_ds * phi - p.D * p.F_ambient().adjoint() * g) + Sq(d_fs * g),
                1e-8);
  }
}

TEST(ShortedDefectsTest, EqualityCriterion) {
  Rng rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    const bool zero_l = trial % 2 == 0;
    const Index h = 2, m = 2, n = 2;
    const CMatrix d = random_contraction(n, m, rng);
    const CMatrix f = random_contraction(h, m, rng);
    const CMatrix g = random_contraction(n, h, rng);
    const CMatrix l = zero_l ? CMatrix::Zero(h, h) : random_contraction(h, h, rng);
    const BlockContraction t =
        synthesize(ContractionParams::Make(d, f, g, l, kTol), kTol);
    const ShortedDefects sd = shorted_defects(t, kTol);
    const bool eq_h = op_norm(sd.defect_H - sd.output_defect_H) < 1e-8;
    const bool eq_k = op_norm(sd.codefect_K - sd.input_codefect_K) < 1e-8;
    EXPECT_EQ(eq_h, zero_l);
    EXPECT_EQ(eq_k, zero_l);
  }
}

// Controllable and observable spaces are the same for T and for
// Q = [[D_{F*} L D_G, F], [G, 0]].
TEST(KernelChainsTest, KrylovSpacesOfTAndQ) {
  Rng rng(104);
  for (int trial = 0; trial < 30; ++trial) {
    const DefectPattern pattern = kPatterns[trial % kPatterns.size()];
    const BlockContraction t =
        random_structured_contraction(3, 2, 2, pattern, rng);
    const ContractionParams p = parametrize(t, kTol);
    const CMatrix s = Root(identity(3) - p.F * p.F.adjoint()) * p.L_ambient() *
                      Root(identity(3) - p.G.adjoint() * p.G);
    const SystemRealization tau(t);
    const SystemRealization nu(s, p.F, p.G,
                               CMatrix::Zero(p.G.rows(), p.F.cols()));
    const KrylovBases kt = krylov_subspaces(tau, kTol);
    const KrylovBases kn = krylov_subspaces(nu, kTol);
    EXPECT_TRUE(same_subspace(kt.controllable, kn.controllable, 1e-8));
    EXPECT_TRUE(same_subspace(kt.observable, kn.observable, 1e-8));
  }
}

}  // namespace
}  // namespace kyp
