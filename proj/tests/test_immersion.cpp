#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tmc/errors.hpp"
#include "tmc/immersion.hpp"

namespace tmc {
namespace {

using testing::compact_surfaces;

TEST(Catalog, ListsSixSurfacesWithMetadata) {
  ASSERT_EQ(catalog_entries().size(), 6u);
  for (const auto& e : catalog_entries()) {
    const Immersion imm = catalog(e.name);
    EXPECT_EQ(imm.info().name, e.name);
    EXPECT_EQ(imm.info().compact, imm.info().euler_characteristic.has_value()) << e.name;
    EXPECT_TRUE(imm.has_closed_form_jets());
  }
  EXPECT_EQ(describe_claims(catalog("clifford_torus").info()), "clifford_torus(t0=0) χ=0 minimal T≡0 H-surface");
  EXPECT_EQ(catalog("veronese").sphere_dim(), 4);
  EXPECT_EQ(catalog("veronese").codimension(), 3);
}

TEST(Catalog, RejectsUnknownNamesAndBadParameters) {
  EXPECT_THROW(catalog("helicoid"), InvalidArgument);
  CatalogParams p;
  p.n = 1;
  EXPECT_THROW(catalog("slice_sphere", p), InvalidArgument);
  p = {};
  p.rho = 0.0;
  EXPECT_THROW(catalog("small_sphere", p), InvalidArgument);
  p = {};
  p.eps = -0.1;
  EXPECT_THROW(catalog("graph_torus", p), InvalidArgument);
  p = {};
  p.t0 = std::numeric_limits<double>::infinity();
  EXPECT_THROW(catalog("clifford_torus", p), InvalidArgument);
}

TEST(Catalog, EverySurfaceSatisfiesTheProductConstraint) {
  for (const char* name : compact_surfaces()) {
    const Immersion imm = catalog(name);
    const QuadratureGrid g = testing::coarse_grid(imm);
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_LE(evaluate(imm, g.point(i)).constraint_defect(), 1e-14) << name;
    }
  }
}

TEST(Catalog, ParametersReachTheChart) {
  CatalogParams p;
  p.t0 = 2.5;
  p.n = 4;
  const Immersion imm = catalog("slice_sphere", p);
  EXPECT_EQ(imm.ambient_dim(), 6);
  EXPECT_DOUBLE_EQ(evaluate(imm, {0.3, 0.1}).height(), 2.5);
  p = {};
  p.rho = 0.5;
  const AmbientPoint x = evaluate(catalog("small_sphere", p), {0.3, 0.1});
  EXPECT_NEAR(x.coords()[3], std::cos(0.5), 1e-15);
}

TEST(Jets, ClosedFormAgreesWithDifferences) {
  for (const char* name : compact_surfaces()) {
    const Immersion imm = catalog(name);
    const ParamPoint p{1.1, 2.3};
    for (int order = 1; order <= 4; ++order) {
      const Jet exact = jet(imm, p, order);
      const Jet fd = fd_jet(imm, p, order);
      EXPECT_TRUE(exact.closed_form);
      EXPECT_FALSE(fd.closed_form);
      const double tol = order <= 2 ? 1e-8 : 1e-4;
      for (int d = 0; d <= order; ++d)
        for (int b = 0; b <= d; ++b)
          EXPECT_LE((exact.partial(d - b, b) - fd.partial(d - b, b)).norm(), tol) << name << " " << d - b << "," << b;
    }
  }
}

TEST(Jets, ClosedFormMatchesHandDerivatives) {
  // x = (cos u, sin u, cos v, sin v, 0) / sqrt 2
  const Immersion imm = catalog("clifford_torus");
  const double u = 0.4, v = 1.3, c = 1.0 / std::numbers::sqrt2;
  const Jet j = jet(imm, {u, v}, 3);
  EXPECT_NEAR(j.partial(1, 0)[0], -c * std::sin(u), 1e-15);
  EXPECT_NEAR(j.partial(0, 2)[3], -c * std::sin(v), 1e-15);
  EXPECT_NEAR(j.partial(3, 0)[1], -c * std::cos(u), 1e-15);
  EXPECT_NEAR(j.partial(1, 1).norm(), 0.0, 1e-15);
  EXPECT_THROW(j.partial(2, 2), InvalidArgument);
}

TEST(Jets, StencilsStayInsideNonPeriodicIntervals) {
  const Immersion sphere = catalog("slice_sphere");
  EXPECT_THROW(fd_jet(sphere, {1e-5, 0.0}, 2), BoundaryStencil);
  EXPECT_NO_THROW(fd_jet(sphere, {1e-3, 0.0}, 2, 1e-4));
  EXPECT_THROW(fd_jet(sphere, {1.0, 0.0}, 2, -1.0), InvalidArgument);
  EXPECT_THROW(jet(sphere, {1.0, 0.0}, 5), InvalidArgument);
  // periodic axes wrap freely
  EXPECT_NO_THROW(fd_jet(sphere, {1.0, 0.0}, 4));
}

TEST(Jets, PointMapImmersionsUseDifferences) {
  const Immersion base = catalog("clifford_torus");
  const Immersion pm = Immersion::from_point_map(3, base.domain(), [&](const ParamPoint& p) { return base.map(p); },
                                                 base.info());
  EXPECT_FALSE(pm.has_closed_form_jets());
  const Jet j = jet(pm, {0.2, 0.9}, 2);
  EXPECT_FALSE(j.closed_form);
  EXPECT_LE((j.partial(2, 0) - jet(base, {0.2, 0.9}, 2).partial(2, 0)).norm(), 1e-8);
  EXPECT_THROW(pm.expand({0.0, 0.0}, 2), InvalidArgument);
}

TEST(Immersion, OffConstraintPointsAreRejected) {
  const Immersion bad = Immersion::from_point_map(
      2, ParameterDomain({{0.0, 1.0, true}, {0.0, 1.0, true}}),
      [](const ParamPoint& p) {
        Eigen::VectorXd x(4);
        x << 1.1 * std::cos(p[0]), 1.1 * std::sin(p[0]), 0.0, p[1];
        return x;
      },
      ImmersionInfo{"bad", {}, std::nullopt, false, {}, {}});
  EXPECT_THROW(evaluate(bad, {0.1, 0.2}), ImmersionDefect);
  EXPECT_THROW(require_compact(bad, "integral"), CompactnessRequired);
  EXPECT_THROW(require_compact(catalog("cylinder_patch"), "integral"), CompactnessRequired);
  EXPECT_NO_THROW(require_compact(catalog("veronese"), "integral"));
}

}  // namespace
}  // namespace tmc
