#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "dischull/metrics.hpp"

namespace {

using namespace dischull;
constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double sqrt3 = std::numbers::sqrt3;

// Printed decimals, kept here as expectations only.
const std::map<std::string, double>& reference_decimals() {
  static const std::map<std::string, double> d = {
      {"VL1", 2.6666666666666667},  {"AR1", 10.2831853071795865},      {"MW1", 1.8697727582861870},
      {"VL2", 3.1415926535897932},  {"AR2", 13.9235808852350105},      {"MW2", 2.2779031079814441},
      {"VL3", 3.6275987284684357},  {"AR3", 15.9716335277272627},      {"MW3", 2.6451729797138697},
      {"VL_oloid", 3.0524184684243749}, {"AR_oloid", 12.5663706143591730},
      {"VL_roller", 3.2818194874496894}, {"AR_roller", 13.9235808852350105},
  };
  return d;
}

BodyConfig config_named(const std::string& name) {
  if (name == "example1") return BodyConfig::example1();
  if (name == "example2") return BodyConfig::example2();
  if (name == "example3") return BodyConfig::example3();
  if (name == "oloid") return BodyConfig::oloid();
  return BodyConfig::roller();
}

// Agreement within the combined estimates plus a few ulps for the closed form.
void expect_agree(const MetricsReport& a, const MetricsReport& b, double abs_tol, const std::string& what) {
  const double diff = std::abs(a.value - b.value);
  EXPECT_LE(diff, abs_tol) << what;
  EXPECT_LE(diff, a.error_estimate + b.error_estimate + 1e-14 * std::abs(a.value)) << what;
}

TEST(Names, ParseRoundTrip) {
  for (Quantity q : {Quantity::VL, Quantity::AR, Quantity::MW}) EXPECT_EQ(parse_quantity(to_string(q)), q);
  for (Method m : {Method::ClosedForm, Method::Quadrature, Method::Indirect, Method::DirectOctant,
                   Method::SupportIntegral, Method::HullOracle})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_quantity("volume"), DomainError);
  EXPECT_THROW(parse_method("exact"), DomainError);
}

TEST(ClosedForm, RegistryMatchesPrintedDecimals) {
  ASSERT_EQ(closed_form_registry().size(), reference_decimals().size());
  for (const auto& e : closed_form_registry()) {
    const double expected = reference_decimals().at(e.tag);
    EXPECT_NEAR(e.evaluate(), expected, 1e-12 * expected) << e.tag;
    const MetricsReport r = closed_form(config_named(e.config), e.quantity);
    EXPECT_EQ(r.value, e.evaluate()) << e.tag;
    EXPECT_EQ(r.method, Method::ClosedForm);
    EXPECT_EQ(r.note, e.tag);
  }
}

TEST(ClosedForm, Examples) {
  EXPECT_NEAR(closed_form(BodyConfig::example1(), Quantity::VL).value, 2.6666666666666667, 1e-15);
  EXPECT_NEAR(closed_form(BodyConfig::example3(), Quantity::MW).value, 2.6451729797138697, 1e-15);
  EXPECT_NEAR(closed_form(BodyConfig::roller(), Quantity::AR).value, 13.9235808852350105, 1e-12);
}

TEST(ClosedForm, OpenProblemsHaveNone) {
  EXPECT_THROW(closed_form(BodyConfig::oloid(), Quantity::MW), NoClosedForm);
  EXPECT_THROW(closed_form(BodyConfig::roller(), Quantity::MW), NoClosedForm);
  for (Quantity q : {Quantity::VL, Quantity::AR, Quantity::MW})
    EXPECT_THROW(closed_form(BodyConfig::delta_family(0.5), q), NoClosedForm);
}

TEST(ClosedForm, DeltaEndpointsAndCylinder) {
  for (Quantity q : {Quantity::VL, Quantity::AR, Quantity::MW}) {
    EXPECT_EQ(closed_form(BodyConfig::delta_family(0.0), q).value, closed_form(BodyConfig::example1(), q).value);
    EXPECT_EQ(closed_form(BodyConfig::delta_family(2.0), q).value, closed_form(BodyConfig::example3(), q).value);
  }
  const BodyConfig c = BodyConfig::cylinder(2.0, 1.0);
  EXPECT_NEAR(closed_form(c, Quantity::VL).value, 2.0 * pi, 1e-15);
  EXPECT_NEAR(closed_form(c, Quantity::AR).value, 6.0 * pi, 1e-14);
  EXPECT_NEAR(closed_form(c, Quantity::MW).value, 2.5707963267948966, 1e-15);
}

TEST(ClosedForm, Scaling) {
  const BodyConfig c = BodyConfig::example2().scaled(2.0);
  EXPECT_NEAR(closed_form(c, Quantity::VL).value, 8.0 * pi, 1e-13);
  EXPECT_NEAR(closed_form(c, Quantity::AR).value, 4.0 * 13.9235808852350105, 1e-12);
  EXPECT_NEAR(closed_form(c, Quantity::MW).value, sqrt2 + pi, 1e-14);
}

TEST(Quadrature, NineConstantsAndFamily) {
  for (const auto& e : closed_form_registry()) {
    if (e.quantity == Quantity::MW) continue;
    const BodyConfig cfg = config_named(e.config);
    const MetricsReport r = compute(cfg, e.quantity, Method::Quadrature);
    EXPECT_GT(r.value, 0.0);
    EXPECT_GE(r.error_estimate, 0.0);
    EXPECT_GT(r.evaluations, 0u);
    expect_agree(r, closed_form(cfg, e.quantity), 1e-9, e.tag);
  }
}

TEST(Quadrature, Example2RoutesCoincide) {
  const BodyConfig c = BodyConfig::example2();
  for (auto [q, f] : {std::pair{Quantity::VL, &volume_quadrature}, std::pair{Quantity::AR, &area_quadrature}}) {
    const MetricsReport g = f(c, {}, Ex2Route::Graph);
    const MetricsReport p = f(c, {}, Ex2Route::Parametric);
    EXPECT_EQ(g.note, "graph");
    EXPECT_EQ(p.note, "parametric");
    EXPECT_NEAR(g.value, p.value, 1e-10) << to_string(q);
  }
  EXPECT_NEAR(mw_indirect(c, {}, Ex2Route::Graph).value, mw_indirect(c, {}, Ex2Route::Parametric).value, 1e-10);
}

TEST(Quadrature, VogtIdentityMatchesAreaIntegral) {
  const double vogt = closed_form(BodyConfig::example3(), Quantity::AR).value;
  EXPECT_NEAR(area_quadrature(BodyConfig::example3()).value, vogt, 1e-10);
}

TEST(Quadrature, OloidAndRoller) {
  EXPECT_NEAR(volume_quadrature(BodyConfig::oloid()).value, 3.0524184684243749, 1e-9);
  EXPECT_NEAR(area_quadrature(BodyConfig::oloid()).value, 4.0 * pi, 1e-9);
  EXPECT_NEAR(volume_quadrature(BodyConfig::roller()).value, 3.2818194874496894, 1e-9);
  EXPECT_NEAR(area_quadrature(BodyConfig::roller()).value, 13.9235808852350105, 1e-9);
  // The theta-integral against the incomplete-elliptic combination.
  EXPECT_NEAR(integrals::roller_gamma({}).value, roller_gamma_closed(), 1e-10);
  EXPECT_NEAR(integrals::oloid_volume({}).value, detail::oloid_volume_closed(), 1e-10);
}

TEST(RuledRoute, ReproducesKnownMembers) {
  using integrals::delta_ruled;
  EXPECT_NEAR(delta_ruled(0.0, Quantity::VL, {}).value, 8.0 / 3.0, 1e-10);
  EXPECT_NEAR(delta_ruled(0.0, Quantity::AR, {}).value, 2.0 * (2.0 + pi), 1e-10);
  EXPECT_NEAR(delta_ruled(1.0, Quantity::VL, {}).value, 3.0524184684243749, 1e-10);
  EXPECT_NEAR(delta_ruled(1.0, Quantity::AR, {}).value, 4.0 * pi, 1e-10);
  EXPECT_NEAR(delta_ruled(sqrt2, Quantity::VL, {}).value, 3.2818194874496894, 1e-10);
  EXPECT_NEAR(delta_ruled(sqrt2, Quantity::AR, {}).value, 13.9235808852350105, 1e-10);
  EXPECT_NEAR(delta_ruled(2.0, Quantity::VL, {}).value, 2.0 * pi / sqrt3, 1e-10);
  EXPECT_NEAR(delta_ruled(2.0, Quantity::AR, {}).value, 15.9716335277272627, 1e-10);
  EXPECT_THROW(delta_ruled(2.5, Quantity::VL, {}), DomainError);
  EXPECT_THROW(delta_ruled(1.0, Quantity::MW, {}), UnsupportedMethod);
}

TEST(RuledRoute, MonotoneInDelta) {
  double vl = 0.0, ar = 0.0, mw = 0.0;
  for (double d : {0.0, 0.5, 1.0, sqrt2, 1.5, 2.0}) {
    const BodyConfig c = BodyConfig::delta_family(d);
    const double v = volume_quadrature(c).value, a = area_quadrature(c).value, m = mw_support(c).value;
    EXPECT_GE(v, vl) << d;
    EXPECT_GE(a, ar) << d;
    EXPECT_GE(m, mw) << d;
    vl = v;
    ar = a;
    mw = m;
  }
  EXPECT_NEAR(mw_support(BodyConfig::delta_family(0.0)).value, 1.8697727582861870, 1e-9);
  EXPECT_NEAR(mw_support(BodyConfig::delta_family(2.0)).value, 2.6451729797138697, 1e-9);
}

TEST(PatchIntegrals, VolumeAndAreaFromPatches) {
  for (const auto& e : closed_form_registry()) {
    if (e.quantity == Quantity::MW || e.config == "oloid" || e.config == "roller") continue;
    const BodyConfig cfg = config_named(e.config);
    const auto r = e.quantity == Quantity::VL ? patch_volume(cfg, {}) : patch_area(cfg, {});
    EXPECT_NEAR(r.value, e.evaluate(), 1e-9) << e.tag;
  }
  const BodyConfig c = BodyConfig::cylinder(1.0, 3.0);
  EXPECT_NEAR(volume_quadrature(c).value, 9.0 * pi, 1e-10);
  EXPECT_NEAR(area_quadrature(c).value, 24.0 * pi, 1e-10);
}

TEST(Indirect, SmoothAndEdgeTerms) {
  const BodyConfig e2 = BodyConfig::example2(), e3 = BodyConfig::example3();
  for (Ex2Route route : {Ex2Route::Graph, Ex2Route::Parametric}) {
    EXPECT_NEAR(integrated_mean_curvature(e2, {}, route).value, sqrt2 * pi, 1e-10);
    EXPECT_NEAR(edge_angle_integral(e2, {}, route).value, 2.0 * pi * pi, 1e-10);
  }
  EXPECT_NEAR(integrated_mean_curvature(e3, {}).value, 2.0 * sqrt2 * pi, 1e-10);
  EXPECT_NEAR(edge_angle_integral(e3, {}).value, 4.0 * pi * std::acos(1.0 / 3.0), 1e-10);
}

TEST(Indirect, EdgeMultiplicitiesMatchPrefactors) {
  EXPECT_EQ(edges(BodyConfig::example1()).front().multiplicity, 4);
  EXPECT_EQ(edges(BodyConfig::example2(), Ex2Route::Graph).front().multiplicity, 2);
  EXPECT_EQ(edges(BodyConfig::example3()).front().multiplicity, 4);
}

TEST(Indirect, ExamplesAndCylinders) {
  EXPECT_NEAR(mw_indirect(BodyConfig::example1()).value, 1.8697727582861870, 1e-10);
  EXPECT_NEAR(mw_indirect(BodyConfig::example2()).value, 2.2779031079814441, 1e-10);
  EXPECT_NEAR(mw_indirect(BodyConfig::example3()).value, 2.6451729797138697, 1e-10);
  for (auto [l, r] : {std::pair{2.0, 1.0}, std::pair{1.0, 3.0}})
    EXPECT_NEAR(mw_indirect(BodyConfig::cylinder(l, r)).value, (l + pi * r) / 2.0, 1e-10);
  EXPECT_THROW(mw_indirect(BodyConfig::oloid()), UnsupportedMethod);
}

TEST(Direct, Examples) {
  EXPECT_NEAR(mw_direct_octant(BodyConfig::example1()).value, 1.8697727582861870, 1e-10);
  EXPECT_NEAR(mw_direct_octant(BodyConfig::example2()).value, 2.2779031079814441, 1e-10);
  EXPECT_NEAR(mw_direct_octant(BodyConfig::example3()).value, 2.6451729797138697, 1e-10);
  EXPECT_THROW(mw_direct_octant(BodyConfig::oloid()), UnsupportedMethod);
  EXPECT_THROW(mw_direct_octant(BodyConfig::cylinder(2, 1)), UnsupportedMethod);
}

TEST(Direct, CrossoverRoots) {
  struct Range {
    BodyKind kind;
    double lo, hi;
  };
  for (const Range& r : {Range{BodyKind::Example1, 0.0, pi / 2}, Range{BodyKind::Example2, -pi / 2, pi / 2},
                         Range{BodyKind::Example3, 0.0, kappa()}}) {
    for (int i = 0; i < 100; ++i) {
      const double t = r.lo + (r.hi - r.lo) * i / 99.0;
      EXPECT_LE(std::abs(crossover_residual(r.kind, t)), 1e-12) << static_cast<int>(r.kind) << " " << t;
    }
  }
  EXPECT_NEAR(xi(BodyKind::Example3, kappa()), pi / 2, 1e-7);
  EXPECT_NEAR(kappa(), std::asin(1.0 / 3.0), 0.0);
  EXPECT_THROW(xi(BodyKind::Example3, 0.5), DomainError);
  EXPECT_THROW(xi(BodyKind::Cylinder, 0.5), UnsupportedMethod);
}

TEST(Support, AgreesWithEveryRoute) {
  for (const auto& e : closed_form_registry()) {
    if (e.quantity != Quantity::MW) continue;
    const BodyConfig cfg = config_named(e.config);
    const MetricsReport s = mw_support(cfg);
    const MetricsReport c = closed_form(cfg, Quantity::MW);
    expect_agree(s, c, 1e-9, e.tag + " support");
    expect_agree(s, mw_indirect(cfg), 1e-9, e.tag + " indirect");
    expect_agree(s, mw_direct_octant(cfg), 1e-9, e.tag + " direct");
  }
  EXPECT_NEAR(mw_support(BodyConfig::cylinder(2, 1)).value, 2.5707963267948966, 1e-10);
}

TEST(Support, ScalingLaw) {
  const double m1 = mw_support(BodyConfig::example1()).value;
  EXPECT_NEAR(mw_support(BodyConfig::example1().scaled(2.0)).value, 2.0 * m1, 1e-10);
}

TEST(Support, OpenCasesAgreeWithOracle) {
  for (const BodyConfig& c : {BodyConfig::oloid(), BodyConfig::roller()}) {
    const MetricsReport s = mw_support(c);
    const MetricsReport h = hull_oracle(c, Quantity::MW, 2048);
    EXPECT_GT(h.error_estimate, 0.0);
    EXPECT_LT(h.value, s.value) << c.name();
    EXPECT_LE(std::abs(s.value - h.value), s.error_estimate + h.error_estimate) << c.name();
  }
}

TEST(HullOracle, ReportsInnerValuesWithBars) {
  const MetricsReport r = hull_oracle(BodyConfig::example2(), Quantity::VL, 1024);
  EXPECT_LT(r.value, pi);
  EXPECT_LE(pi - r.value, r.error_estimate);
  EXPECT_EQ(r.note, "K=1024");
  EXPECT_THROW(hull_oracle(BodyConfig::example2(), Quantity::VL, 4), DomainError);
}

TEST(Dispatch, UnsupportedPairs) {
  const BodyConfig e1 = BodyConfig::example1();
  EXPECT_THROW(compute(e1, Quantity::MW, Method::Quadrature), UnsupportedMethod);
  EXPECT_THROW(compute(e1, Quantity::VL, Method::Indirect), UnsupportedMethod);
  EXPECT_THROW(compute(e1, Quantity::AR, Method::SupportIntegral), UnsupportedMethod);
  EXPECT_THROW(compute(BodyConfig::oloid(), Quantity::MW, Method::ClosedForm), NoClosedForm);
  const MetricsReport r = compute(e1, Quantity::MW, Method::DirectOctant);
  EXPECT_EQ(r.method, Method::DirectOctant);
  EXPECT_EQ(r.quantity, Quantity::MW);
  EXPECT_EQ(r.config.name(), "example1");
}

}  // namespace
