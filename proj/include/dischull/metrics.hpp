#pragma once

// Volume (VL), surface area (AR) and mean width (MW) of the hulls by every
// applicable route: closed forms, quadrature of explicit integrals, the
// curvature-plus-edge formula, the reduced octant integrals, the support
// function over the sphere, and the polytope oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "dischull/bodies.hpp"
#include "dischull/errors.hpp"
#include "dischull/hull_oracle.hpp"
#include "dischull/quadrature.hpp"
#include "dischull/specfun.hpp"

namespace dischull {

enum class Quantity { VL, AR, MW };
enum class Method { ClosedForm, Quadrature, Indirect, DirectOctant, SupportIntegral, HullOracle };

inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::VL: return "vl";
    case Quantity::AR: return "ar";
    case Quantity::MW: return "mw";
  }
  return "?";
}

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed";
    case Method::Quadrature: return "quad";
    case Method::Indirect: return "indirect";
    case Method::DirectOctant: return "direct";
    case Method::SupportIntegral: return "support";
    case Method::HullOracle: return "hull";
  }
  return "?";
}

inline Quantity parse_quantity(std::string_view s) {
  for (Quantity q : {Quantity::VL, Quantity::AR, Quantity::MW})
    if (s == to_string(q)) return q;
  throw DomainError("unknown quantity '" + std::string(s) + "' (expected vl, ar or mw)");
}

inline Method parse_method(std::string_view s) {
  for (Method m : {Method::ClosedForm, Method::Quadrature, Method::Indirect, Method::DirectOctant,
                   Method::SupportIntegral, Method::HullOracle})
    if (s == to_string(m)) return m;
  throw DomainError("unknown method '" + std::string(s) +
                    "' (expected closed, quad, indirect, direct, support or hull)");
}

struct MetricsReport {
  BodyConfig config;
  Quantity quantity = Quantity::VL;
  Method method = Method::ClosedForm;
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::string note;  // route detail, e.g. "graph" or "K=4096"
};

// ---------------------------------------------------------------------------
// Closed forms

struct ClosedFormEntry {
  std::string tag;  // VL1, AR_roller, ...
  std::string config;
  Quantity quantity;
  std::string expression;
  std::function<double()> evaluate;
};

namespace detail {

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr double sqrt3 = std::numbers::sqrt3;

inline double mw1_closed() {
  using specfun::dilog;
  const double r = sqrt2 - 1.0;
  return -(2.0 * sqrt2 * std::log(r) - 4.0 * dilog(r) + 4.0 * dilog(-r)) / pi;
}

inline double ar3_vogt() {
  using specfun::complete_e, specfun::complete_k, specfun::complete_pi, specfun::incomplete_e, specfun::incomplete_f, specfun::incomplete_pi;
  return 4.0 / 3.0 *
         (9.0 * complete_e(1.0 / 9.0) - 8.0 * complete_k(1.0 / 9.0) + 8.0 * complete_pi(-1.0 / 3.0, 1.0 / 9.0));
}

inline double oloid_volume_closed() {
  using specfun::complete_e, specfun::complete_k, specfun::complete_pi, specfun::incomplete_e, specfun::incomplete_f, specfun::incomplete_pi;
  return 2.0 / 3.0 * (-1.0 + 2.0 * sqrt3 * incomplete_e(pi / 4, 4.0 / 3.0) +
                      2.0 * sqrt3 * incomplete_f(pi / 4, 4.0 / 3.0));
}

}  // namespace detail

/// omega = arcsin(sqrt(sqrt 2 - 1)).
inline double roller_omega() { return std::asin(std::sqrt(detail::sqrt2 - 1.0)); }

/// gamma from its incomplete elliptic form.
inline double roller_gamma_closed() {
  using specfun::complete_e, specfun::complete_k, specfun::complete_pi, specfun::incomplete_e, specfun::incomplete_f, specfun::incomplete_pi;
  constexpr double r2 = detail::sqrt2;
  const double w = roller_omega();
  return (r2 - 1.0) / 2.0 + incomplete_e(w, -1.0) +
         r2 * (incomplete_pi(-r2 - 1.0, w, -1.0) + incomplete_pi(r2 - 1.0, w, -1.0) - incomplete_f(w, -1.0));
}

inline const std::vector<ClosedFormEntry>& closed_form_registry() {
  using namespace detail;
  using specfun::complete_e;
  static const std::vector<ClosedFormEntry> registry = {
      {"VL1", "example1", Quantity::VL, "8/3", [] { return 8.0 / 3.0; }},
      {"AR1", "example1", Quantity::AR, "2(2+pi)", [] { return 2.0 * (2.0 + pi); }},
      {"MW1", "example1", Quantity::MW, "-(2 sqrt2 log(sqrt2-1) - 4 Li2(sqrt2-1) + 4 Li2(1-sqrt2))/pi",
       mw1_closed},
      {"VL2", "example2", Quantity::VL, "pi", [] { return pi; }},
      {"AR2", "example2", Quantity::AR, "2(pi + 2 sqrt2 E(1/2))",
       [] { return 2.0 * (pi + 2.0 * sqrt2 * complete_e(0.5)); }},
      {"MW2", "example2", Quantity::MW, "(sqrt2 + pi)/2", [] { return (sqrt2 + pi) / 2.0; }},
      {"VL3", "example3", Quantity::VL, "2 pi/sqrt3", [] { return 2.0 * pi / sqrt3; }},
      {"AR3", "example3", Quantity::AR, "(4/3)[9E(1/9) - 8K(1/9) + 8Pi(-1/3, 1/9)]", ar3_vogt},
      {"MW3", "example3", Quantity::MW, "sqrt2 + arccos(1/3)", [] { return sqrt2 + std::acos(1.0 / 3.0); }},
      {"VL_oloid", "oloid", Quantity::VL, "(2/3)(-1 + 2 sqrt3 E(pi/4, 4/3) + 2 sqrt3 F(pi/4, 4/3))",
       oloid_volume_closed},
      {"AR_oloid", "oloid", Quantity::AR, "4 pi", [] { return 4.0 * pi; }},
      {"VL_roller", "roller", Quantity::VL, "8 gamma/(3 sqrt2)",
       [] { return 8.0 * roller_gamma_closed() / (3.0 * sqrt2); }},
      {"AR_roller", "roller", Quantity::AR, "8 gamma", [] { return 8.0 * roller_gamma_closed(); }},
  };
  return registry;
}

namespace detail {

inline int scale_power(Quantity q) {
  switch (q) {
    case Quantity::VL: return 3;
    case Quantity::AR: return 2;
    case Quantity::MW: return 1;
  }
  return 0;
}

inline double scale_factor(const BodyConfig& cfg, Quantity q) { return std::pow(cfg.scale, scale_power(q)); }

// Registry key of a unit-scale configuration; delta = 0 is Example 1 turned
// about the y-axis and delta = 2 is Example 3.
inline std::string registry_key(const BodyConfig& cfg) {
  switch (cfg.kind) {
    case BodyKind::Example1: return "example1";
    case BodyKind::Example2: return "example2";
    case BodyKind::Example3: return "example3";
    case BodyKind::DeltaFamily:
      if (cfg.delta == 0.0) return "example1";
      if (cfg.delta == 2.0) return "example3";
      if (cfg.is_oloid()) return "oloid";
      if (cfg.is_roller()) return "roller";
      return "";
    case BodyKind::Cylinder: return "";
  }
  return "";
}

inline MetricsReport make_report(const BodyConfig& cfg, Quantity q, Method m, double value, double error,
                                 std::size_t evals, std::string note = {}) {
  return {cfg, q, m, value, error, evals, std::move(note)};
}

inline MetricsReport scaled_report(const BodyConfig& cfg, Quantity q, Method m, const quad::QuadResult& r,
                                   std::string note = {}) {
  const double f = scale_factor(cfg, q);
  return make_report(cfg, q, m, f * r.value, f * r.error_estimate, r.evaluations, std::move(note));
}

inline quad::QuadResult& accumulate(quad::QuadResult& total, const quad::QuadResult& r, double factor = 1.0) {
  total.value += factor * r.value;
  total.error_estimate += std::abs(factor) * r.error_estimate;
  total.evaluations += r.evaluations;
  return total;
}

}  // namespace detail

inline MetricsReport closed_form(const BodyConfig& cfg, Quantity q) {
  if (cfg.kind == BodyKind::Cylinder) {
    const double l = cfg.length, r = cfg.radius;
    double v = 0.0;
    switch (q) {
      case Quantity::VL: v = detail::pi * r * r * l; break;
      case Quantity::AR: v = 2.0 * detail::pi * r * (r + l); break;
      case Quantity::MW: v = (l + detail::pi * r) / 2.0; break;
    }
    return detail::make_report(cfg, q, Method::ClosedForm, v * detail::scale_factor(cfg, q), 0.0, 0);
  }
  const std::string key = detail::registry_key(cfg);
  for (const auto& e : closed_form_registry()) {
    if (e.config == key && e.quantity == q)
      return detail::make_report(cfg, q, Method::ClosedForm, e.evaluate() * detail::scale_factor(cfg, q), 0.0,
                                 0, e.tag);
  }
  throw NoClosedForm("no closed form known for " + std::string(to_string(q)) + " of " + cfg.name());
}

// ---------------------------------------------------------------------------
// Explicit integrals (unit scale)

namespace integrals {

using quad::QuadOptions;
using quad::QuadResult;
using quad::SingularEndpoints;
using detail::pi;
using detail::sqrt2;

inline double semi(double x) { return std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x))); }

inline QuadResult volume_ex1(const QuadOptions& o) {
  auto r = quad::integrate_2d([](double x, double y) { return semi(x) - y; }, -1.0, 1.0,
                              [](double) { return 0.0; }, semi, o);
  r.value *= 4.0;
  r.error_estimate *= 4.0;
  return r;
}

// 1 + phi_x^2 + phi_y^2 for every Example 1 and 2 graph.
inline double graph_area_element(double x) { return std::sqrt((2.0 - x * x) / ((1.0 - x) * (1.0 + x))); }

inline QuadResult area_ex1(const QuadOptions& o) {
  auto r = quad::integrate_2d([](double x, double) { return graph_area_element(x); }, -1.0, 1.0,
                              [](double) { return 0.0; }, semi, o.with_singular(SingularEndpoints::both()));
  r.value *= 4.0;
  r.error_estimate *= 4.0;
  return r;
}

inline QuadResult volume_ex2_graph(const QuadOptions& o) {
  auto phi = [](double x, double y) { return semi(x) + y - 1.0; };
  auto psi = [](double x, double y) { return -semi(x) + y - 1.0; };
  QuadResult total;
  detail::accumulate(total, quad::integrate_2d([&](double x, double y) { return phi(x, y) + 1.0; }, -1.0, 1.0,
                                               [](double x) { return -semi(x); }, semi, o));
  detail::accumulate(total, quad::integrate_2d([&](double x, double y) { return phi(x, y) - psi(x, y); }, -1.0,
                                               1.0, semi, [](double) { return 1.0; }, o));
  return total;
}

inline QuadResult area_ex2_graph(const QuadOptions& o) {
  const QuadOptions os = o.with_singular(SingularEndpoints::both());
  auto f = [](double x, double) { return graph_area_element(x); };
  QuadResult total;
  total.value = 2.0 * pi;  // the two flat disks
  detail::accumulate(total, quad::integrate_2d(f, -1.0, 1.0, [](double x) { return -semi(x); },
                                               [](double) { return 1.0; }, os));
  detail::accumulate(total, quad::integrate_2d(f, -1.0, 1.0, semi, [](double) { return 1.0; }, os));
  return total;
}

inline QuadResult volume_ex2_parametric(const QuadOptions& o) {
  auto f = [](double u, double v) {
    return ((-u - v + u * v) + 1.0) * (v - 1.0) * v / std::sqrt((1.0 - v) * (1.0 + v));
  };
  auto r = quad::integrate_2d(f, 0.0, 1.0, [](double) { return -1.0; }, [](double) { return 1.0; }, o,
                              SingularEndpoints::both());
  r.value *= 2.0;
  r.error_estimate *= 2.0;
  return r;
}

inline QuadResult area_ex2_parametric(const QuadOptions& o) {
  auto f = [](double, double v) { return std::sqrt((1.0 - v) * (1.0 + v * v) / (1.0 + v)); };
  auto r = quad::integrate_2d(f, 0.0, 1.0, [](double) { return -1.0; }, [](double) { return 1.0; }, o,
                              SingularEndpoints::both());
  r.value = 2.0 * pi + 2.0 * r.value;
  r.error_estimate *= 2.0;
  return r;
}

inline QuadResult volume_ex3(const QuadOptions& o) {
  auto f = [](double u, double v) {
    const double z = (u - 1.0) * std::sqrt(v * (2.0 + 3.0 * v)) / (1.0 + 2.0 * v);
    const double w = 1.0 + 2.0 * v;
    const double jac = std::sqrt(-v / (2.0 + v)) * (2.0 + v + 6.0 * u * v + 6.0 * u * v * v) / (w * w);
    return z * jac;
  };
  auto r = quad::integrate_2d(f, 0.0, 1.0, [](double) { return -2.0; }, [](double) { return -2.0 / 3.0; }, o,
                              SingularEndpoints::both());
  r.value *= 4.0;
  r.error_estimate *= 4.0;
  return r;
}

/// Single-integral reduction of the Example 3 area.
inline QuadResult area_ex3(const QuadOptions& o) {
  auto f = [](double v) {
    const double q = 1.0 + 2.0 * v + 3.0 * v * v;
    const double w = 1.0 + 2.0 * v;
    return 4.0 * (2.0 + 4.0 * v + 3.0 * v * v) / (w * w) * std::sqrt(-q / ((2.0 + v) * (2.0 + 3.0 * v)));
  };
  return quad::integrate_1d(f, -2.0, -2.0 / 3.0, o.with_singular(SingularEndpoints::both()));
}

inline QuadResult oloid_volume(const QuadOptions& o) {
  auto f = [](double t) {
    const double c = std::cos(t);
    return (2.0 + c) * (2.0 + c) / ((1.0 + c) * std::sqrt(1.0 + 2.0 * c));
  };
  auto r = quad::integrate_1d(f, 0.0, pi / 2, o);
  r.value *= 2.0 / 3.0;
  r.error_estimate *= 2.0 / 3.0;
  return r;
}

/// gamma as a theta-integral.
inline QuadResult roller_gamma(const QuadOptions& o) {
  auto f = [](double t) {
    const double c = std::cos(t);
    const double a = 1.0 + sqrt2 * c;
    return (2.0 + sqrt2 * c) * (2.0 + sqrt2 * c) * (1.0 + sqrt2 * c + c * c) /
           (a * a * std::sqrt(1.0 + 2.0 * sqrt2 * c + c * c));
  };
  auto r = quad::integrate_1d(f, 0.0, pi / 2, o);
  r.value /= 2.0 * sqrt2;
  r.error_estimate /= 2.0 * sqrt2;
  return r;
}

/// Hull of the disks x^2 + (y + delta/2)^2 <= 1 (z = 0) and
/// (y - delta/2)^2 + z^2 <= 1 (x = 0). Its curved boundary is ruled by the
/// segments PQ joining rim points with a common tangent plane:
///   P = (cos a, sin a - delta/2, 0),  Q = (0, cos b + delta/2, sin b),
///   cos b = sin a / (1 - delta sin a),  a in [-pi/2, arcsin(1/(1 + delta))].
/// The surface element along a ruling is linear in the segment parameter,
/// so each ruling contributes |A + B|/2 da with
///   A = (P' x (Q - P)) . n,  B = b' (Q'_b x (Q - P)) . n,
/// and (Q - P) . n = 0 makes n . P the support value on the whole ruling.
/// Four congruent quarters (x -> -x, z -> -z).
inline QuadResult delta_ruled(double delta, Quantity q, const QuadOptions& o) {
  if (!(delta >= 0.0 && delta <= 2.0)) throw DomainError("delta must lie in [0, 2]");
  if (q == Quantity::MW) throw UnsupportedMethod("the ruled-surface route gives VL and AR only");
  const double d = 0.5 * delta;
  const double a_max = std::asin(1.0 / (1.0 + delta));
  auto f = [=](double a) {
    const double s = std::sin(a), c = std::cos(a);
    const double D = 1.0 - delta * s;
    // 1 - s(1 + delta) = (1 + delta)(sin a_max - sin a), written without cancellation.
    const double gap = (1.0 + delta) * 2.0 * std::cos(0.5 * (a + a_max)) * std::sin(0.5 * (a_max - a));
    const double cb = s / D;
    const double sb = std::sqrt(std::max(0.0, gap * (1.0 + s * (1.0 - delta)))) / D;
    const Vec3 P{c, s - d, 0.0};
    const Vec3 Q{0.0, cb + d, sb};
    const Vec3 n = normalized(Vec3{c, s, D * sb});
    const Vec3 w = Q - P;
    const double A = dot(cross(Vec3{-s, c, 0.0}, w), n);
    const double db = -c / (D * D * sb);
    const double B = db * dot(cross(Vec3{0.0, -sb, cb}, w), n);
    const double strip = 0.5 * std::abs(A + B);
    return q == Quantity::AR ? 4.0 * strip : 4.0 * dot(n, P) * strip / 3.0;
  };
  const SingularEndpoints sing = delta > 0.0 ? SingularEndpoints::at_right() : SingularEndpoints::none();
  return quad::integrate_1d(f, -pi / 2, a_max, o.with_singular(sing));
}

}  // namespace integrals

// ---------------------------------------------------------------------------
// Patch integrals (divergence theorem, area element, mean curvature)

namespace detail {

template <class F>
quad::QuadResult over_patches(const std::vector<ParamPatch>& ps, const quad::QuadOptions& o, F&& integrand,
                              bool skip_flat) {
  quad::QuadResult total;
  for (const ParamPatch& p : ps) {
    if (skip_flat && p.kind == PatchKind::FlatDisk) continue;
    const auto& dom = p.domain;
    const auto r = quad::integrate_2d([&](double u, double v) { return integrand(p, u, v); }, dom.u0, dom.u1,
                                      [&](double) { return dom.v0; }, [&](double) { return dom.v1; },
                                      o.with_singular(dom.u_singular), dom.v_singular);
    accumulate(total, r, p.multiplicity);
  }
  return total;
}

}  // namespace detail

/// VL = (1/3) sum of x . N dS over the boundary patches.
inline quad::QuadResult patch_volume(const BodyConfig& cfg, const quad::QuadOptions& o,
                                     Ex2Route route = Ex2Route::Parametric) {
  auto r = detail::over_patches(
      patches(cfg, route), o,
      [](const ParamPatch& p, double u, double v) {
        const double dA = p.area_element(u, v);
        if (dA == 0.0) return 0.0;
        return dot(p.point(u, v), p.normal(u, v)) * dA / 3.0;
      },
      false);
  return r;
}

inline quad::QuadResult patch_area(const BodyConfig& cfg, const quad::QuadOptions& o,
                                   Ex2Route route = Ex2Route::Parametric) {
  return detail::over_patches(
      patches(cfg, route), o, [](const ParamPatch& p, double u, double v) { return p.area_element(u, v); },
      false);
}

/// Integral of H dS over the curved patches.
inline quad::QuadResult integrated_mean_curvature(const BodyConfig& cfg, const quad::QuadOptions& o,
                                                  Ex2Route route = Ex2Route::Parametric) {
  return detail::over_patches(
      patches(cfg, route), o,
      [](const ParamPatch& p, double u, double v) {
        const double dA = p.area_element(u, v);
        if (dA == 0.0) return 0.0;
        return mean_curvature(p, u, v) * dA;
      },
      true);
}

/// Sum over edges of the integral of the exterior angle times arclength.
inline quad::QuadResult edge_angle_integral(const BodyConfig& cfg, const quad::QuadOptions& o,
                                            Ex2Route route = Ex2Route::Parametric) {
  quad::QuadResult total;
  for (const EdgeCurve& e : edges(cfg, route)) {
    const auto r = quad::integrate_1d([&](double t) { return dihedral_angle(cfg, e, t) * e.speed(t); }, e.t0,
                                      e.t1, o.with_singular(e.singular));
    detail::accumulate(total, r, e.multiplicity);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Reports

/// Ex2 defaults to the graph description.
inline MetricsReport volume_quadrature(const BodyConfig& cfg, const quad::QuadOptions& o = {},
                                       Ex2Route route = Ex2Route::Graph) {
  using namespace integrals;
  constexpr Quantity q = Quantity::VL;
  constexpr Method m = Method::Quadrature;
  switch (cfg.kind) {
    case BodyKind::Example1: return detail::scaled_report(cfg, q, m, volume_ex1(o));
    case BodyKind::Example2:
      if (route == Ex2Route::Graph) return detail::scaled_report(cfg, q, m, volume_ex2_graph(o), "graph");
      return detail::scaled_report(cfg, q, m, volume_ex2_parametric(o), "parametric");
    case BodyKind::Example3: return detail::scaled_report(cfg, q, m, volume_ex3(o));
    case BodyKind::DeltaFamily:
      if (cfg.is_oloid()) return detail::scaled_report(cfg, q, m, oloid_volume(o), "theta-integral");
      if (cfg.is_roller()) {
        auto r = roller_gamma(o);
        const double f = 8.0 / (3.0 * sqrt2);
        r.value *= f;
        r.error_estimate *= f;
        return detail::scaled_report(cfg, q, m, r, "gamma-integral");
      }
      return detail::scaled_report(cfg, q, m, delta_ruled(cfg.delta, q, o), "ruled");
    case BodyKind::Cylinder: {
      const auto r = patch_volume(cfg, o);
      return detail::make_report(cfg, q, m, r.value, r.error_estimate, r.evaluations, "divergence");
    }
  }
  throw UnsupportedMethod("volume_quadrature: unknown configuration");
}

inline MetricsReport area_quadrature(const BodyConfig& cfg, const quad::QuadOptions& o = {},
                                     Ex2Route route = Ex2Route::Graph) {
  using namespace integrals;
  constexpr Quantity q = Quantity::AR;
  constexpr Method m = Method::Quadrature;
  switch (cfg.kind) {
    case BodyKind::Example1: return detail::scaled_report(cfg, q, m, area_ex1(o));
    case BodyKind::Example2:
      if (route == Ex2Route::Graph) return detail::scaled_report(cfg, q, m, area_ex2_graph(o), "graph");
      return detail::scaled_report(cfg, q, m, area_ex2_parametric(o), "parametric");
    case BodyKind::Example3: return detail::scaled_report(cfg, q, m, area_ex3(o));
    case BodyKind::DeltaFamily:
      if (cfg.is_roller()) {
        auto r = roller_gamma(o);
        r.value *= 8.0;
        r.error_estimate *= 8.0;
        return detail::scaled_report(cfg, q, m, r, "gamma-integral");
      }
      return detail::scaled_report(cfg, q, m, delta_ruled(cfg.delta, q, o), "ruled");
    case BodyKind::Cylinder: {
      const auto r = patch_area(cfg, o);
      return detail::make_report(cfg, q, m, r.value, r.error_estimate, r.evaluations, "patches");
    }
  }
  throw UnsupportedMethod("area_quadrature: unknown configuration");
}

/// MW = (1/2pi) int H dS + (1/4pi) sum_j int alpha_j ds.
inline MetricsReport mw_indirect(const BodyConfig& cfg, const quad::QuadOptions& o = {},
                                 Ex2Route route = Ex2Route::Graph) {
  const bool supported = cfg.kind == BodyKind::Example1 || cfg.kind == BodyKind::Example2 ||
                         cfg.kind == BodyKind::Example3 || cfg.kind == BodyKind::Cylinder ||
                         (cfg.kind == BodyKind::DeltaFamily && cfg.delta == 2.0);
  if (!supported) throw UnsupportedMethod("indirect route needs packaged patches and edges; not available for " +
                                          cfg.name());
  const auto h = integrated_mean_curvature(cfg, o, route);
  const auto e = edge_angle_integral(cfg, o, route);
  const double value = h.value / (2.0 * detail::pi) + e.value / (4.0 * detail::pi);
  const double error = h.error_estimate / (2.0 * detail::pi) + e.error_estimate / (4.0 * detail::pi);
  std::string note;
  if (cfg.kind == BodyKind::Example2) note = route == Ex2Route::Graph ? "graph" : "parametric";
  return detail::make_report(cfg, Quantity::MW, Method::Indirect, value, error, h.evaluations + e.evaluations,
                             note);
}

// ---------------------------------------------------------------------------
// Octant (direct) route

/// kappa = arccsc(3).
inline double kappa() { return std::asin(1.0 / 3.0); }

namespace detail {

inline BodyKind octant_kind(const BodyConfig& cfg) {
  if (cfg.kind == BodyKind::Example1 || cfg.kind == BodyKind::Example2 || cfg.kind == BodyKind::Example3)
    return cfg.kind;
  if (cfg.kind == BodyKind::DeltaFamily && cfg.delta == 2.0) return BodyKind::Example3;
  throw UnsupportedMethod("direct octant route is only available for example1, example2, example3");
}

}  // namespace detail

/// Crossover angle phi = xi(theta) where the two support branches meet.
inline double xi(BodyKind kind, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  switch (kind) {
    case BodyKind::Example1: return std::acos(s / std::sqrt(2.0 - c * c));
    case BodyKind::Example2: return detail::pi / 2 + std::atan(s);
    case BodyKind::Example3:
      if (!(theta >= 0.0 && theta <= kappa() * (1.0 + 1e-15)))
        throw DomainError("Example 3 crossover angle is defined for 0 <= theta <= kappa");
      return std::acos(std::sqrt(std::max(0.0, (1.0 - s) * (1.0 - 3.0 * s)) / (2.0 - 4.0 * s + 3.0 * s * s)));
    default: throw UnsupportedMethod("xi: no octant reduction for this configuration");
  }
}

/// Difference of the two support branches at phi = xi(theta).
inline double crossover_residual(BodyKind kind, double theta) {
  const double p = xi(kind, theta);
  const double s = std::sin(theta), c = std::cos(theta);
  const double sp = std::sin(p), cp = std::cos(p);
  switch (kind) {
    case BodyKind::Example1: return sp - std::sqrt(c * c * sp * sp + cp * cp);
    case BodyKind::Example2: return (sp - cp) - (std::sqrt(c * c * sp * sp + cp * cp) + s * sp);
    case BodyKind::Example3: return (1.0 - s) * sp - (s * sp + std::sqrt(s * s * sp * sp + cp * cp));
    default: throw UnsupportedMethod("crossover_residual: no octant reduction for this configuration");
  }
}

inline MetricsReport mw_direct_octant(const BodyConfig& cfg, const quad::QuadOptions& o = {}) {
  using detail::pi;
  const BodyKind kind = detail::octant_kind(cfg);
  quad::QuadResult total;
  switch (kind) {
    case BodyKind::Example1: {
      auto r = quad::integrate_2d([](double, double p) { return std::sin(p) * std::sin(p); }, 0.0, pi / 2,
                                  [](double t) { return xi(BodyKind::Example1, t); },
                                  [](double) { return pi / 2; }, o);
      detail::accumulate(total, r, 8.0 / pi);
      break;
    }
    case BodyKind::Example2: {
      auto r = quad::integrate_2d([](double, double p) { return (std::sin(p) - std::cos(p)) * std::sin(p); },
                                  -pi / 2, pi / 2, [](double t) { return xi(BodyKind::Example2, t); },
                                  [](double) { return pi; }, o);
      detail::accumulate(total, r, 2.0 / pi);
      break;
    }
    default: {
      const double k = kappa();
      auto h2 = [](double t, double p) {
        const double s = std::sin(t), sp = std::sin(p), cp = std::cos(p);
        return (s * sp + std::sqrt(s * s * sp * sp + cp * cp)) * sp;
      };
      auto h1 = [](double t, double p) { return (1.0 - std::sin(t)) * std::sin(p) * std::sin(p); };
      auto x = [](double t) { return xi(BodyKind::Example3, t); };
      detail::accumulate(total, quad::integrate_2d(h2, 0.0, k, [](double) { return 0.0; }, x, o), 4.0 / pi);
      detail::accumulate(total, quad::integrate_2d(h1, 0.0, k, x, [](double) { return pi / 2; }, o), 4.0 / pi);
      detail::accumulate(total,
                         quad::integrate_2d(h2, k, pi / 2, [](double) { return 0.0; },
                                            [](double) { return pi / 2; }, o),
                         4.0 / pi);
      break;
    }
  }
  return detail::scaled_report(cfg, Quantity::MW, Method::DirectOctant, total);
}

// ---------------------------------------------------------------------------
// Support-function route

namespace detail {

// Sign changes of g on [a, b]: an n-cell scan, then bisection to adjacent
// doubles. Tangential contacts, where the max of two branches stays C^1,
// are not reported.
template <class G>
std::vector<double> sign_changes(G&& g, double a, double b, int n) {
  std::vector<double> roots;
  double x0 = a, g0 = g(a);
  for (int i = 1; i <= n; ++i) {
    const double x1 = i == n ? b : a + (b - a) * i / n;
    const double g1 = g(x1);
    if ((g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0)) {
      double lo = x0, hi = x1, glo = g0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    g0 = g1;
  }
  return roots;
}

// Integral of f over [a, b] split at the given interior points.
template <class F>
quad::QuadResult integrate_pieces(F&& f, double a, double b, std::vector<double> breaks,
                                  const quad::QuadOptions& o) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  quad::QuadResult total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]), hi = std::min(b, breaks[i + 1]);
    if (hi > lo) accumulate(total, quad::integrate_1d(f, lo, hi, o));
  }
  return total;
}

inline constexpr int support_scan_cells = 128;

}  // namespace detail

/// MW = (1/2pi) integral of the hull support function over the unit sphere.
///
/// The support function is the larger of the two disk supports, so it has
/// a crease where they cross and a cone point at each disk normal. Each
/// polar integral is split at the creases (located by a sign scan) and at
/// the polar angles closest to the normals; the azimuthal integral is split
/// at the normals' azimuths.
inline MetricsReport mw_support(const BodyConfig& cfg, const quad::QuadOptions& o = {}) {
  using detail::pi;
  o.validate();
  const auto disks = cfg.disks();
  const quad::QuadOptions inner = o.tightened(10.0);

  std::vector<double> theta_breaks;
  for (const Disk& d : disks) {
    if (std::hypot(d.normal.x, d.normal.y) == 0.0) continue;
    for (double sign : {1.0, -1.0}) {
      double t = std::atan2(sign * d.normal.y, sign * d.normal.x);
      if (t < 0.0) t += 2.0 * pi;
      theta_breaks.push_back(t);
    }
  }

  std::size_t inner_evals = 0;
  double worst_inner = 0.0;
  auto polar = [&](double theta) {
    auto gap = [&](double phi) {
      const Vec3 v = spherical(theta, phi);
      return disk_support(disks[0], v) - disk_support(disks[1], v);
    };
    std::vector<double> breaks = detail::sign_changes(gap, 0.0, pi, detail::support_scan_cells);
    const double ct = std::cos(theta), st = std::sin(theta);
    for (const Disk& d : disks) {
      // Polar angle of the point of this meridian nearest to +-normal.
      const double horizontal = ct * d.normal.x + st * d.normal.y;
      double phi = std::atan2(horizontal, d.normal.z);
      if (phi < 0.0) phi += pi;
      if (phi > 0.0 && phi < pi) breaks.push_back(phi);
    }
    const auto r = detail::integrate_pieces(
        [&](double phi) { return hull_support(cfg, spherical(theta, phi)) * std::sin(phi); }, 0.0, pi, breaks,
        inner);
    inner_evals += r.evaluations + detail::support_scan_cells + 1;
    worst_inner = std::max(worst_inner, r.error_estimate);
    return r.value;
  };
  const auto outer = detail::integrate_pieces(polar, 0.0, 2.0 * pi, theta_breaks, o);
  const double err = outer.error_estimate + 2.0 * pi * worst_inner;
  return detail::make_report(cfg, Quantity::MW, Method::SupportIntegral, outer.value / (2.0 * pi),
                             err / (2.0 * pi), inner_evals);
}

// ---------------------------------------------------------------------------
// Polytope oracle

struct HullMetrics {
  int K = 0;
  std::size_t vertices = 0;
  double vl = 0.0, ar = 0.0, mw = 0.0;

  double get(Quantity q) const { return q == Quantity::VL ? vl : q == Quantity::AR ? ar : mw; }
};

inline HullMetrics hull_metrics(const BodyConfig& cfg, int K) {
  const Polytope p = convex_hull_3d(sample_circles(cfg, K));
  return {K, p.vertices.size(), poly_volume(p), poly_area(p), poly_mean_width(p)};
}

inline constexpr int default_hull_k = 4096;

/// Value at K; the error bar |m(K) - m(K/2)| is three times the deficit
/// under second-order convergence, so it bounds the distance to the body.
inline MetricsReport hull_oracle(const BodyConfig& cfg, Quantity q, int K = default_hull_k) {
  if (K < 6) throw DomainError("hull oracle needs K >= 6");
  const HullMetrics fine = hull_metrics(cfg, K);
  const HullMetrics coarse = hull_metrics(cfg, K / 2);
  return detail::make_report(cfg, q, Method::HullOracle, fine.get(q), std::abs(fine.get(q) - coarse.get(q)),
                             2 * static_cast<std::size_t>(K) + 2 * static_cast<std::size_t>(K / 2),
                             "K=" + std::to_string(K));
}

// ---------------------------------------------------------------------------
// Dispatcher

inline MetricsReport compute(const BodyConfig& cfg, Quantity q, Method m, const quad::QuadOptions& o = {},
                             int K = default_hull_k, Ex2Route route = Ex2Route::Graph) {
  switch (m) {
    case Method::ClosedForm: return closed_form(cfg, q);
    case Method::Quadrature:
      if (q == Quantity::VL) return volume_quadrature(cfg, o, route);
      if (q == Quantity::AR) return area_quadrature(cfg, o, route);
      throw UnsupportedMethod("mean width has no plain quadrature route; use indirect, direct or support");
    case Method::Indirect:
    case Method::DirectOctant:
    case Method::SupportIntegral:
      if (q != Quantity::MW)
        throw UnsupportedMethod(std::string("method '") + std::string(to_string(m)) + "' computes mw only");
      if (m == Method::Indirect) return mw_indirect(cfg, o, route);
      if (m == Method::DirectOctant) return mw_direct_octant(cfg, o);
      return mw_support(cfg, o);
    case Method::HullOracle: return hull_oracle(cfg, q, K);
  }
  throw UnsupportedMethod("unknown method");
}

}  // namespace dischull
