#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tmc/errors.hpp"
#include "tmc/variational.hpp"

namespace tmc {
namespace {

using testing::compact_surfaces;
using testing::coarse_grid;

constexpr double kPi = std::numbers::pi;

TEST(TotalMeanCurvature, SmallSphereClosedForm) {
  // area 4 pi sin^2 rho times H^2 = cot^2 rho
  for (double rho : {0.4, kPi / 4, 1.0}) {
    CatalogParams p;
    p.rho = rho;
    const Immersion imm = catalog("small_sphere", p);
    EXPECT_NEAR(total_mean_curvature(imm, coarse_grid(imm)), 4 * kPi * std::cos(rho) * std::cos(rho), 1e-11);
  }
  EXPECT_NEAR(total_mean_curvature(catalog("clifford_torus"), coarse_grid(catalog("clifford_torus"))), 0.0, 1e-20);
  EXPECT_THROW(total_mean_curvature(catalog("cylinder_patch"), testing::grid_of(catalog("cylinder_patch"), 8, 8)),
               CompactnessRequired);
}

TEST(EulerLagrange, VanishesOnMinimalSurfacesInSlices) {
  for (const char* name : {"slice_sphere", "clifford_torus", "veronese"}) {
    const Immersion imm = catalog(name);
    const ELField el = el_residual(imm, coarse_grid(imm));
    EXPECT_LE(el.max_norm, 1e-8) << name;
    EXPECT_TRUE(certifies_h_surface(el)) << name;
  }
}

TEST(EulerLagrange, SmallSphereFieldIsTwiceTheMeanCurvature) {
  // h parallel, sigma = <,> h: E = (2 - 2H^2 + 2H^2) h
  for (double rho : {0.5, kPi / 4, 1.3}) {
    CatalogParams p;
    p.rho = rho;
    const Immersion imm = catalog("small_sphere", p);
    const QuadratureGrid g = testing::grid_of(imm, 8, 8);
    const ELField el = el_residual(imm, g);
    for (const Vector& e : el.field) EXPECT_NEAR(e.norm(), 2.0 / std::tan(rho), 1e-8);
    EXPECT_FALSE(certifies_h_surface(el));
  }
}

TEST(EulerLagrange, GraphTorusIsNotStationary) {
  const Immersion imm = catalog("graph_torus");
  EXPECT_FALSE(certifies_h_surface(el_residual(imm, testing::grid_of(imm, 8, 8))));
}

TEST(FirstVariation, DifferenceQuotientMatchesTheEulerLagrangePairing) {
  for (const char* name : {"graph_torus", "small_sphere", "clifford_torus"}) {
    const Immersion imm = catalog(name);
    std::vector<VariationField> vs;
    for (int k = 0; k < 2; ++k) vs.push_back(VariationField::random(40 + k, imm.ambient_dim()));
    for (const FirstVariation& r : first_variation_checks(imm, coarse_grid(imm), vs)) {
      EXPECT_LE(r.residual, 1e-7) << name << " fd " << r.fd << " analytic " << r.analytic;
    }
  }
}

TEST(FirstVariation, RejectsStepsOutsideTheRange) {
  const Immersion imm = catalog("clifford_torus");
  const VariationField v = VariationField::random(1, 5);
  EXPECT_THROW(first_variation_check(imm, coarse_grid(imm), v, 1.0), InvalidArgument);
  EXPECT_THROW(first_variation_check(imm, coarse_grid(imm), v, 1e-5), InvalidArgument);
}

TEST(VariationField, DeformationStaysOnTheProductAndStartsAtTheSurface) {
  const Immersion imm = catalog("veronese");
  const VariationField v = VariationField::random(7, imm.ambient_dim());
  const Immersion moved = deformed(imm, v, 0.05);
  EXPECT_EQ(moved.info().name, "veronese~");
  for (const ParamPoint& p : {ParamPoint{0.3, 0.2}, ParamPoint{2.0, 4.0}}) {
    EXPECT_LE(evaluate(moved, p).constraint_defect(), 1e-14);
    EXPECT_LE((deformed(imm, v, 0.0).map(p) - imm.map(p)).norm(), 1e-15);
    // the velocity is tangent to S^n x R
    const SeriesVector x = SeriesVector::constant(imm.map(p));
    const Vector vel = v.velocity(x).value();
    EXPECT_NEAR(vel.head(5).dot(imm.map(p).head(5)), 0.0, 1e-14);
    // and equals the derivative of the displacement
    const Vector dq = (v.displace(x, 1e-6).value() - v.displace(x, -1e-6).value()) / 2e-6;
    EXPECT_LE((dq - vel).norm(), 1e-8);
  }
}

TEST(SimonsFormula, HoldsPointwiseOnEveryCompactSurface) {
  for (const char* name : compact_surfaces()) {
    const Immersion imm = catalog(name);
    EXPECT_LE(simons_residual(imm, testing::grid_of(imm, 8, 8)).max_abs, 1e-6) << name;
  }
}

TEST(SimonsFormula, TermsOnTheCliffordTorusBalance) {
  const SimonsTerms t = simons_terms(pointwise_geometry(catalog("clifford_torus"), {0.2, 0.5}));
  // |sigma|^2 = 2 constant and sigma parallel
  EXPECT_NEAR(t.lhs, 0.0, 1e-12);
  EXPECT_NEAR(t.grad_sigma, 0.0, 1e-12);
  EXPECT_NEAR(t.phi, 4.0, 1e-12);
  EXPECT_NEAR(t.residual(), 0.0, 1e-12);
}

TEST(HuiskenTypeInequality, SlackIsNonNegativeAndVanishesOnParallelForms) {
  for (const char* name : compact_surfaces()) {
    const Immersion imm = catalog(name);
    const PointwiseField s = huisken_check(imm, testing::grid_of(imm, 8, 8));
    EXPECT_GE(s.min, -1e-10) << name;
  }
  const PointwiseField c = huisken_check(catalog("clifford_torus"), testing::grid_of(catalog("clifford_torus"), 8, 8));
  EXPECT_LE(c.max_abs, 1e-10);
}

TEST(WeingartenIdentities, HoldAtRandomPoints) {
  for (const char* name : compact_surfaces()) {
    const PointGeometry pg = pointwise_geometry(catalog(name), {2.2, 0.7});
    EXPECT_LE(weingarten_identities_check(pg).max(), 1e-10) << name;
  }
}

TEST(MatrixInequality, ExtremalPairAttainsEquality) {
  const MatrixLemmaResult r = matrix_lemma_check(SymmetricMatrixFamily::extremal_pair());
  EXPECT_NEAR(r.lhs, 24.0, 1e-12);
  EXPECT_NEAR(r.rhs, 24.0, 1e-12);
  EXPECT_NEAR(r.slack, 0.0, 1e-12);
}

TEST(MatrixInequality, SidesAreHomogeneousOfDegreeFourAndConjugationInvariant) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SymmetricMatrixFamily fam = SymmetricMatrixFamily::random(rng, 3, 4);
    const MatrixLemmaResult r = matrix_lemma_check(fam);
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(4, 4)).householderQ();
    std::vector<Eigen::MatrixXd> scaled, rotated;
    for (const auto& B : fam.matrices()) {
      scaled.push_back(2.0 * B);
      Eigen::MatrixXd C = Q.transpose() * B * Q;
      C = (0.5 * (C + C.transpose())).eval();
      rotated.push_back(C);
    }
    const MatrixLemmaResult s = matrix_lemma_check(SymmetricMatrixFamily(scaled));
    const MatrixLemmaResult q = matrix_lemma_check(SymmetricMatrixFamily(rotated));
    EXPECT_NEAR(s.lhs, 16.0 * r.lhs, 1e-10 * (1.0 + s.lhs));
    EXPECT_NEAR(s.rhs, 16.0 * r.rhs, 1e-10 * (1.0 + s.rhs));
    EXPECT_NEAR(q.lhs, r.lhs, 1e-10 * (1.0 + r.lhs));
    EXPECT_GE(r.slack, -1e-12);
  }
}

TEST(MatrixInequality, SweepIsDeterministicAndHolds) {
  const MatrixSweep a = matrix_lemma_sweep(2000, 11), b = matrix_lemma_sweep(2000, 11);
  EXPECT_EQ(a.min_slack, b.min_slack);
  EXPECT_EQ(a.violations, 0);
  EXPECT_GE(a.min_slack, -1e-12);
  const MatrixSweep fixed = matrix_lemma_sweep(500, 5, 2, 2);
  EXPECT_EQ(fixed.worst_p, 2);
  EXPECT_EQ(fixed.worst_m, 2);
}

TEST(MatrixInequality, RejectsInvalidFamilies) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2), b = a;
  b(0, 1) = 1.0;
  EXPECT_THROW(SymmetricMatrixFamily({a}), InvalidArgument);
  EXPECT_THROW(SymmetricMatrixFamily({a, b}), InvalidArgument);
  EXPECT_THROW(SymmetricMatrixFamily({a, Eigen::MatrixXd::Identity(3, 3)}), InvalidArgument);
  EXPECT_THROW(matrix_lemma_sweep(10, 1, 1), InvalidArgument);
  EXPECT_THROW(matrix_lemma_sweep(0, 1), InvalidArgument);
}

}  // namespace
}  // namespace tmc
