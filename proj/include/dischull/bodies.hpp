#pragma once

// Geometry of convex hulls of two disks: generator disks, support
// functions, smooth boundary patches with closed-form first derivatives
// and unit normals, fundamental forms, mean curvature, boundary edges
// with their exterior dihedral angles, and implicit boundary equations.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dischull/errors.hpp"
#include "dischull/quadrature.hpp"
#include "dischull/vec3.hpp"

namespace dischull {

struct Disk {
  Vec3 center;
  Vec3 normal{0.0, 0.0, 1.0};  // unit
  double radius = 1.0;
};

enum class BodyKind { Example1, Example2, Example3, DeltaFamily, Cylinder };

/// Which hull is being studied. All kinds except Cylinder are hulls of two
/// orthogonal unit disks; Cylinder is the hull of two parallel disks.
struct BodyConfig {
  BodyKind kind = BodyKind::Example1;
  double delta = 0.0;   // DeltaFamily: center separation in [0, 2]
  double length = 0.0;  // Cylinder
  double radius = 0.0;  // Cylinder
  double scale = 1.0;   // uniform dilation about the origin

  static BodyConfig example1() { return {BodyKind::Example1}; }
  static BodyConfig example2() { return {BodyKind::Example2}; }
  static BodyConfig example3() { return {BodyKind::Example3}; }

  static BodyConfig delta_family(double delta) {
    if (!(delta >= 0.0 && delta <= 2.0)) throw DomainError("delta must lie in [0, 2]");
    BodyConfig c{BodyKind::DeltaFamily};
    c.delta = delta;
    return c;
  }
  static BodyConfig oloid() { return delta_family(1.0); }
  static BodyConfig roller() { return delta_family(std::numbers::sqrt2); }

  static BodyConfig cylinder(double length, double radius) {
    if (!(length > 0.0) || !(radius > 0.0))
      throw DomainError("cylinder length and radius must be positive");
    BodyConfig c{BodyKind::Cylinder};
    c.length = length;
    c.radius = radius;
    return c;
  }

  BodyConfig scaled(double lambda) const {
    if (!(lambda > 0.0)) throw DomainError("scale factor must be positive");
    BodyConfig c = *this;
    c.scale *= lambda;
    return c;
  }

  bool is_oloid() const { return kind == BodyKind::DeltaFamily && delta == 1.0; }
  bool is_roller() const { return kind == BodyKind::DeltaFamily && delta == std::numbers::sqrt2; }

  std::array<Disk, 2> disks() const {
    constexpr Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
    std::array<Disk, 2> d{};
    switch (kind) {
      case BodyKind::Example1:
        d = {Disk{{0, 0, 0}, ez, 1.0}, Disk{{0, 0, 0}, ey, 1.0}};
        break;
      case BodyKind::Example2:
        d = {Disk{{0, 0, -1}, ez, 1.0}, Disk{{0, 1, 0}, ey, 1.0}};
        break;
      case BodyKind::Example3:
        d = {Disk{{0, -1, 0}, ez, 1.0}, Disk{{0, 1, 0}, ex, 1.0}};
        break;
      case BodyKind::DeltaFamily:
        d = {Disk{{0, -0.5 * delta, 0}, ez, 1.0}, Disk{{0, 0.5 * delta, 0}, ex, 1.0}};
        break;
      case BodyKind::Cylinder:
        d = {Disk{{0, 0, -0.5 * length}, ez, radius}, Disk{{0, 0, 0.5 * length}, ez, radius}};
        break;
    }
    for (Disk& disk : d) {
      disk.center *= scale;
      disk.radius *= scale;
    }
    return d;
  }

  /// Canonical command-line name.
  std::string name() const {
    auto num = [](double x) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      // Prefer the short form when it round-trips.
      char shortbuf[32];
      std::snprintf(shortbuf, sizeof shortbuf, "%g", x);
      return std::string(std::strtod(shortbuf, nullptr) == x ? shortbuf : buf);
    };
    std::string n;
    switch (kind) {
      case BodyKind::Example1: n = "example1"; break;
      case BodyKind::Example2: n = "example2"; break;
      case BodyKind::Example3: n = "example3"; break;
      case BodyKind::DeltaFamily:
        n = is_oloid() ? "oloid" : is_roller() ? "roller" : "delta:" + num(delta);
        break;
      case BodyKind::Cylinder: n = "cylinder:" + num(length) + ":" + num(radius); break;
    }
    if (scale != 1.0) n += "*" + num(scale);
    return n;
  }
};

// ---------------------------------------------------------------------------
// Support functions

/// max of p.v over the disk; v must be a unit vector.
inline double disk_support(const Disk& d, const Vec3& v) {
  // |n x v| = sqrt(1 - (n.v)^2) for unit n, v, without the cancellation.
  return dot(d.center, v) + d.radius * norm(cross(d.normal, v));
}

inline double hull_support(const BodyConfig& cfg, const Vec3& v) {
  const auto d = cfg.disks();
  return std::max(disk_support(d[0], v), disk_support(d[1], v));
}

inline double width(const BodyConfig& cfg, const Vec3& v) {
  return hull_support(cfg, v) + hull_support(cfg, -v);
}

// ---------------------------------------------------------------------------
// Boundary patches

enum class PatchKind {
  GraphEx1,     // z = sqrt(1-x^2) - y, y >= 0
  GraphPhiEx2,  // z = sqrt(1-x^2) + y - 1
  GraphPsiEx2,  // z = -sqrt(1-x^2) + y - 1
  VinzantEx2,   // ruled parametrization of the curved part, x >= 0
  VinzantEx3,   // ruled parametrization, first octant
  FlatDisk,     // polar parametrization of a planar disk face
  CylinderSide  // lateral surface of a right circular cylinder
};

inline std::string_view to_string(PatchKind k) {
  switch (k) {
    case PatchKind::GraphEx1: return "graph-phi-ex1";
    case PatchKind::GraphPhiEx2: return "graph-phi-ex2";
    case PatchKind::GraphPsiEx2: return "graph-psi-ex2";
    case PatchKind::VinzantEx2: return "vinzant-ex2";
    case PatchKind::VinzantEx3: return "vinzant-ex3";
    case PatchKind::FlatDisk: return "flat-disk";
    case PatchKind::CylinderSide: return "cylinder-side";
  }
  return "?";
}

struct PatchDomain {
  double u0, u1, v0, v1;
  quad::SingularEndpoints u_singular{};
  quad::SingularEndpoints v_singular{};

  bool interior(double u, double v) const { return u > u0 && u < u1 && v > v0 && v < v1; }
};

/// Graph patches use u = x and a v in [0, 1] running across the graph's
/// y-interval at that x, so every patch lives on a rectangle.
struct ParamPatch {
  PatchKind kind = PatchKind::GraphEx1;
  PatchDomain domain{};
  int multiplicity = 1;  // congruent copies on the boundary
  double scale = 1.0;
  Disk disk{};           // FlatDisk: normal is the outward face normal
  double length = 0.0;   // CylinderSide
  double radius = 0.0;   // CylinderSide

  bool is_graph() const {
    return kind == PatchKind::GraphEx1 || kind == PatchKind::GraphPhiEx2 ||
           kind == PatchKind::GraphPsiEx2;
  }

  Vec3 point(double u, double v) const { return raw_point(u, v) * scale; }
  Vec3 du(double u, double v) const { return raw_du(u, v) * scale; }
  Vec3 dv(double u, double v) const { return raw_dv(u, v) * scale; }
  double area_element(double u, double v) const { return norm(cross(du(u, v), dv(u, v))); }

  /// Outward unit normal.
  Vec3 normal(double u, double v) const {
    switch (kind) {
      case PatchKind::GraphEx1: {
        const double s = semi(u);
        return Vec3{u, s, s} / std::sqrt(2.0 - u * u);
      }
      case PatchKind::GraphPhiEx2: {
        const double s = semi(u);
        return Vec3{u, -s, s} / std::sqrt(2.0 - u * u);
      }
      case PatchKind::GraphPsiEx2: {
        const double s = semi(u);
        return Vec3{u, s, -s} / std::sqrt(2.0 - u * u);
      }
      case PatchKind::VinzantEx2:
        return Vec3{semi(v), v, -v} / std::sqrt(1.0 + v * v);
      case PatchKind::VinzantEx3: {
        const double q = 1.0 + 2.0 * v + 3.0 * v * v;
        return Vec3{std::sqrt(std::max(0.0, -v * (2.0 + v))), 1.0 + v,
                    std::sqrt(std::max(0.0, v * (2.0 + 3.0 * v)))} /
               std::sqrt(q);
      }
      case PatchKind::FlatDisk: return disk.normal;
      case PatchKind::CylinderSide: return {std::cos(u), std::sin(u), 0.0};
    }
    return {};
  }

  /// Derivatives of the outward unit normal. Every packaged normal depends on
  /// one parameter only, so one of the two is identically zero.
  Vec3 normal_du(double u, double v) const {
    (void)v;
    switch (kind) {
      case PatchKind::GraphEx1:
      case PatchKind::GraphPhiEx2:
      case PatchKind::GraphPsiEx2: {
        const double s = semi(u);
        const double r = std::sqrt(2.0 - u * u);
        // n = (u, sy s, sz s) / r with the signs of the graph.
        const double sy = kind == PatchKind::GraphPhiEx2 ? -1.0 : 1.0;
        const double sz = kind == PatchKind::GraphPsiEx2 ? -1.0 : 1.0;
        const Vec3 num{u, sy * s, sz * s};
        const Vec3 dnum{1.0, -sy * u / s, -sz * u / s};
        return dnum / r + num * (u / (r * r * r));
      }
      case PatchKind::CylinderSide: return {-std::sin(u), std::cos(u), 0.0};
      default: return {};
    }
  }

  Vec3 normal_dv(double u, double v) const {
    (void)u;
    switch (kind) {
      case PatchKind::VinzantEx2: {
        const double s = semi(v);
        const double r = std::sqrt(1.0 + v * v);
        const Vec3 num{s, v, -v};
        const Vec3 dnum{-v / s, 1.0, -1.0};
        return dnum / r - num * (v / (r * r * r));
      }
      case PatchKind::VinzantEx3: {
        const double rr = std::sqrt(-v * (2.0 + v));
        const double w = std::sqrt(v * (2.0 + 3.0 * v));
        const double r = std::sqrt(1.0 + 2.0 * v + 3.0 * v * v);
        const Vec3 num{rr, 1.0 + v, w};
        const Vec3 dnum{-(1.0 + v) / rr, 1.0, (1.0 + 3.0 * v) / w};
        return dnum / r - num * ((1.0 + 3.0 * v) / (r * r * r));
      }
      default: return {};
    }
  }

 private:
  static double semi(double x) { return std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x))); }

  std::pair<Vec3, Vec3> disk_frame() const {
    const Vec3 n = disk.normal;
    const Vec3 axis = std::abs(n.x) < 0.5 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 e1 = normalized(axis - n * dot(axis, n));
    return {e1, cross(n, e1)};
  }

  Vec3 raw_point(double u, double v) const {
    switch (kind) {
      case PatchKind::GraphEx1: {
        const double s = semi(u);
        return {u, v * s, s * (1.0 - v)};
      }
      case PatchKind::GraphPhiEx2: {
        const double s = semi(u);
        return {u, -s + v * (1.0 + s), v * (1.0 + s) - 1.0};
      }
      case PatchKind::GraphPsiEx2: {
        const double s = semi(u);
        return {u, s + v * (1.0 - s), v * (1.0 - s) - 1.0};
      }
      case PatchKind::VinzantEx2:
        return {semi(v), 1.0 - u + u * v, -u - v + u * v};
      case PatchKind::VinzantEx3: {
        const double d = 1.0 + 2.0 * v;
        return {u * std::sqrt(std::max(0.0, -v * (2.0 + v))), v * (1.0 + 2.0 * u * v) / d,
                (u - 1.0) * std::sqrt(std::max(0.0, v * (2.0 + 3.0 * v))) / d};
      }
      case PatchKind::FlatDisk: {
        const auto [e1, e2] = disk_frame();
        return disk.center + disk.radius * u * (std::cos(v) * e1 + std::sin(v) * e2);
      }
      case PatchKind::CylinderSide: return {radius * std::cos(u), radius * std::sin(u), v};
    }
    return {};
  }

  Vec3 raw_du(double u, double v) const {
    switch (kind) {
      case PatchKind::GraphEx1: {
        const double ds = -u / semi(u);
        return {1.0, v * ds, (1.0 - v) * ds};
      }
      case PatchKind::GraphPhiEx2: {
        const double ds = -u / semi(u);
        return {1.0, ds * (v - 1.0), v * ds};
      }
      case PatchKind::GraphPsiEx2: {
        const double ds = -u / semi(u);
        return {1.0, ds * (1.0 - v), -v * ds};
      }
      case PatchKind::VinzantEx2: return {0.0, v - 1.0, v - 1.0};
      case PatchKind::VinzantEx3: {
        const double d = 1.0 + 2.0 * v;
        return {std::sqrt(std::max(0.0, -v * (2.0 + v))), 2.0 * v * v / d,
                std::sqrt(std::max(0.0, v * (2.0 + 3.0 * v))) / d};
      }
      case PatchKind::FlatDisk: {
        const auto [e1, e2] = disk_frame();
        return disk.radius * (std::cos(v) * e1 + std::sin(v) * e2);
      }
      case PatchKind::CylinderSide: return {-radius * std::sin(u), radius * std::cos(u), 0.0};
    }
    return {};
  }

  Vec3 raw_dv(double u, double v) const {
    switch (kind) {
      case PatchKind::GraphEx1: {
        const double s = semi(u);
        return {0.0, s, -s};
      }
      case PatchKind::GraphPhiEx2: {
        const double s = semi(u);
        return {0.0, 1.0 + s, 1.0 + s};
      }
      case PatchKind::GraphPsiEx2: {
        const double s = semi(u);
        return {0.0, 1.0 - s, 1.0 - s};
      }
      case PatchKind::VinzantEx2: return {-v / semi(v), u, u - 1.0};
      case PatchKind::VinzantEx3: {
        const double d = 1.0 + 2.0 * v;
        const double r = std::sqrt(-v * (2.0 + v));
        const double w = std::sqrt(v * (2.0 + 3.0 * v));
        return {-u * (1.0 + v) / r, (1.0 + 4.0 * u * v + 4.0 * u * v * v) / (d * d),
                (u - 1.0) * (1.0 + v) / (w * d * d)};
      }
      case PatchKind::FlatDisk: {
        const auto [e1, e2] = disk_frame();
        return disk.radius * u * (-std::sin(v) * e1 + std::cos(v) * e2);
      }
      case PatchKind::CylinderSide: return {0.0, 0.0, 1.0};
    }
    return {};
  }
};

/// Which of the two packaged Example 2 boundary descriptions to use.
enum class Ex2Route { Parametric, Graph };

namespace detail {

inline ParamPatch make_patch(PatchKind kind, PatchDomain dom, int mult, double scale) {
  ParamPatch p;
  p.kind = kind;
  p.domain = dom;
  p.multiplicity = mult;
  p.scale = scale;
  return p;
}

inline ParamPatch flat_disk_patch(const Disk& d, double scale) {
  ParamPatch p = make_patch(PatchKind::FlatDisk, {0.0, 1.0, 0.0, 2.0 * std::numbers::pi}, 1, scale);
  p.disk = d;
  return p;
}

}  // namespace detail

/// Smooth boundary pieces of a configuration with symmetry multiplicities.
inline std::vector<ParamPatch> patches(const BodyConfig& cfg, Ex2Route route = Ex2Route::Parametric) {
  using quad::SingularEndpoints;
  using detail::make_patch;
  const double s = cfg.scale;
  switch (cfg.kind) {
    case BodyKind::Example1:
      return {make_patch(PatchKind::GraphEx1, {-1, 1, 0, 1, SingularEndpoints::both()}, 4, s)};
    case BodyKind::Example2: {
      std::vector<ParamPatch> out;
      if (route == Ex2Route::Graph) {
        out.push_back(make_patch(PatchKind::GraphPhiEx2, {-1, 1, 0, 1, SingularEndpoints::both()}, 1, s));
        out.push_back(make_patch(PatchKind::GraphPsiEx2, {-1, 1, 0, 1, SingularEndpoints::both()}, 1, s));
      } else {
        out.push_back(make_patch(PatchKind::VinzantEx2, {0, 1, -1, 1, {}, SingularEndpoints::both()}, 2, s));
      }
      out.push_back(detail::flat_disk_patch({{0, 0, -1}, {0, 0, -1}, 1.0}, s));
      out.push_back(detail::flat_disk_patch({{0, 1, 0}, {0, 1, 0}, 1.0}, s));
      return out;
    }
    case BodyKind::Example3:
      return {make_patch(PatchKind::VinzantEx3, {0, 1, -2, -2.0 / 3.0, {}, SingularEndpoints::both()}, 4, s)};
    case BodyKind::DeltaFamily:
      if (cfg.delta == 2.0) {
        BodyConfig ex3 = BodyConfig::example3();
        ex3.scale = s;
        return patches(ex3);
      }
      throw UnsupportedMethod("no packaged boundary parametrization for delta-family member " + cfg.name());
    case BodyKind::Cylinder: {
      ParamPatch side = make_patch(PatchKind::CylinderSide,
                                   {0, 2.0 * std::numbers::pi, -0.5 * cfg.length, 0.5 * cfg.length}, 1, s);
      side.radius = cfg.radius;
      side.length = cfg.length;
      return {side, detail::flat_disk_patch({{0, 0, 0.5 * cfg.length}, {0, 0, 1}, cfg.radius}, s),
              detail::flat_disk_patch({{0, 0, -0.5 * cfg.length}, {0, 0, -1}, cfg.radius}, s)};
    }
  }
  return {};
}

/// Height of a graph patch over the point (x, y) of its planar domain.
inline double graph_height(const ParamPatch& p, double x, double y) {
  const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  switch (p.kind) {
    case PatchKind::GraphEx1: return s - y;
    case PatchKind::GraphPhiEx2: return s + y - 1.0;
    case PatchKind::GraphPsiEx2: return -s + y - 1.0;
    default: throw UnsupportedMethod("graph_height: not a graph patch");
  }
}

/// d(x, y)/d(u, v). Closed forms for the two ruled patches.
inline double jacobian_xy(const ParamPatch& p, double u, double v) {
  switch (p.kind) {
    case PatchKind::VinzantEx2:
      if (!(v > -1.0 && v < 1.0)) throw DomainError("jacobian_xy: singular at v = +-1");
      return p.scale * p.scale * (-1.0 + v) * v / std::sqrt((1.0 - v) * (1.0 + v));
    case PatchKind::VinzantEx3:
      if (!(v > -2.0 && v < -2.0 / 3.0)) throw DomainError("jacobian_xy: singular at v = -2, -2/3");
      return p.scale * p.scale * std::sqrt(-v / (2.0 + v)) *
             (2.0 + v + 6.0 * u * v + 6.0 * u * v * v) / ((1.0 + 2.0 * v) * (1.0 + 2.0 * v));
    default: {
      const Vec3 a = p.du(u, v);
      const Vec3 b = p.dv(u, v);
      const double j = a.x * b.y - b.x * a.y;
      if (!std::isfinite(j)) throw DomainError("jacobian_xy: singular point");
      return j;
    }
  }
}

// ---------------------------------------------------------------------------
// Fundamental forms and mean curvature

struct FundForms {
  double E = 0, F = 0, G = 0;  // first form
  double L = 0, M = 0, N = 0;  // second form
};

/// First and second fundamental forms at an interior point.
///
/// The second form is taken against the inward normal, L = x_u . N_u with N
/// the outward normal, so convex patches have L, N >= 0 and positive mean
/// curvature.
inline FundForms fundamental_forms(const ParamPatch& p, double u, double v) {
  if (!p.domain.interior(u, v)) throw DomainError("fundamental_forms: point not interior");
  const Vec3 xu = p.du(u, v);
  const Vec3 xv = p.dv(u, v);
  FundForms f;
  f.E = dot(xu, xu);
  f.F = dot(xu, xv);
  f.G = dot(xv, xv);
  if (!(f.E * f.G - f.F * f.F > 0.0) || !std::isfinite(f.E * f.G))
    throw DomainError("fundamental_forms: degenerate metric");
  if (p.kind == PatchKind::FlatDisk) return f;

  const Vec3 nu = p.normal_du(u, v);
  const Vec3 nv = p.normal_dv(u, v);
  f.L = dot(xu, nu);
  f.M = 0.5 * (dot(xu, nv) + dot(xv, nu));
  f.N = dot(xv, nv);
  return f;
}

/// Mean curvature as the average of the principal curvatures.
inline double mean_curvature(const FundForms& f) {
  return (f.E * f.N - 2.0 * f.F * f.M + f.G * f.L) / (2.0 * (f.E * f.G - f.F * f.F));
}

inline double mean_curvature(const ParamPatch& p, double u, double v) {
  return mean_curvature(fundamental_forms(p, u, v));
}

// ---------------------------------------------------------------------------
// Edges

enum class EdgeKind {
  Ex1Semicircle,   // rim semicircle between the z >= 0 and z <= 0 graphs
  Ex2GraphCircle,  // full rim circle between a flat disk and the curved part
  Ex2VinzantArc,   // u = 0 boundary of the ruled Example 2 patch
  Ex3Arc,          // u = 1 boundary of the ruled Example 3 patch
  CylinderRim      // rim circle of a cylinder
};

struct EdgeCurve {
  EdgeKind kind = EdgeKind::Ex1Semicircle;
  double t0 = 0.0;
  double t1 = 0.0;
  int multiplicity = 1;
  quad::SingularEndpoints singular{};
  double scale = 1.0;
  double length = 0.0;  // CylinderRim
  double radius = 0.0;  // CylinderRim

  Vec3 point(double t) const {
    switch (kind) {
      case EdgeKind::Ex1Semicircle: return Vec3{std::cos(t), std::sin(t), 0.0} * scale;
      case EdgeKind::Ex2GraphCircle: return Vec3{std::cos(t), std::sin(t), -1.0} * scale;
      case EdgeKind::Ex2VinzantArc: return Vec3{std::sqrt((1.0 - t) * (1.0 + t)), 1.0, -t} * scale;
      case EdgeKind::Ex3Arc: return Vec3{std::sqrt(std::max(0.0, -t * (2.0 + t))), t, 0.0} * scale;
      case EdgeKind::CylinderRim:
        return Vec3{radius * std::cos(t), radius * std::sin(t), 0.5 * length} * scale;
    }
    return {};
  }

  /// Arclength element ds/dt.
  double speed(double t) const {
    switch (kind) {
      case EdgeKind::Ex1Semicircle:
      case EdgeKind::Ex2GraphCircle: return scale;
      case EdgeKind::Ex2VinzantArc: return scale / std::sqrt((1.0 - t) * (1.0 + t));
      case EdgeKind::Ex3Arc: return scale / std::sqrt(-t * (2.0 + t));
      case EdgeKind::CylinderRim: return scale * radius;
    }
    return 0.0;
  }

  /// Outward unit normals of the two boundary pieces meeting along the edge.
  std::pair<Vec3, Vec3> normals(double t) const {
    switch (kind) {
      case EdgeKind::Ex1Semicircle: {
        const double x = std::cos(t), y = std::sin(t);
        const double r = std::sqrt(2.0 - x * x);
        return {Vec3{x, y, y} / r, Vec3{x, y, -y} / r};
      }
      case EdgeKind::Ex2GraphCircle: {
        const double x = std::cos(t), y = std::sin(t);
        return {Vec3{0, 0, -1}, Vec3{x, y, -y} / std::sqrt(2.0 - x * x)};
      }
      case EdgeKind::Ex2VinzantArc: {
        const double r = std::sqrt((1.0 - t) * (1.0 + t));
        return {Vec3{r, t, -t} / std::sqrt(1.0 + t * t), Vec3{0, 1, 0}};
      }
      case EdgeKind::Ex3Arc: {
        const double q = 1.0 + 2.0 * t + 3.0 * t * t;
        const Vec3 n = Vec3{std::sqrt(std::max(0.0, -t * (2.0 + t))), 1.0 + t,
                            std::sqrt(std::max(0.0, t * (2.0 + 3.0 * t)))} /
                       std::sqrt(q);
        return {n, Vec3{n.x, n.y, -n.z}};
      }
      case EdgeKind::CylinderRim: return {Vec3{std::cos(t), std::sin(t), 0.0}, Vec3{0, 0, 1}};
    }
    return {};
  }

  /// Exterior dihedral angle from its closed-form expression.
  double closed_form_angle(double t) const {
    switch (kind) {
      case EdgeKind::Ex1Semicircle: {
        const double x = std::cos(t);
        return 2.0 * std::acos(1.0 / std::sqrt(2.0 - x * x));
      }
      case EdgeKind::Ex2GraphCircle: {
        const double x = std::cos(t), y = std::sin(t);
        return std::acos(std::clamp(y / std::sqrt(2.0 - x * x), -1.0, 1.0));
      }
      case EdgeKind::Ex2VinzantArc: return std::acos(t / std::sqrt(1.0 + t * t));
      case EdgeKind::Ex3Arc:
        return 2.0 * std::acos(std::min(1.0, 1.0 / std::sqrt(1.0 + 2.0 * t + 3.0 * t * t)));
      case EdgeKind::CylinderRim: return 0.5 * std::numbers::pi;
    }
    return 0.0;
  }
};

inline std::vector<EdgeCurve> edges(const BodyConfig& cfg, Ex2Route route = Ex2Route::Parametric) {
  constexpr double pi = std::numbers::pi;
  using quad::SingularEndpoints;
  auto make = [&cfg](EdgeKind k, double t0, double t1, int mult, SingularEndpoints s) {
    EdgeCurve e;
    e.kind = k;
    e.t0 = t0;
    e.t1 = t1;
    e.multiplicity = mult;
    e.singular = s;
    e.scale = cfg.scale;
    return e;
  };
  switch (cfg.kind) {
    case BodyKind::Example1: return {make(EdgeKind::Ex1Semicircle, 0.0, pi, 4, {})};
    case BodyKind::Example2:
      if (route == Ex2Route::Graph) return {make(EdgeKind::Ex2GraphCircle, 0.0, 2.0 * pi, 2, {})};
      return {make(EdgeKind::Ex2VinzantArc, -1.0, 1.0, 4, SingularEndpoints::both())};
    case BodyKind::Example3:
      return {make(EdgeKind::Ex3Arc, -2.0, -2.0 / 3.0, 4, SingularEndpoints::at_left())};
    case BodyKind::DeltaFamily:
      if (cfg.delta == 2.0) return {make(EdgeKind::Ex3Arc, -2.0, -2.0 / 3.0, 4, SingularEndpoints::at_left())};
      throw UnsupportedMethod("no packaged edge description for delta-family member " + cfg.name());
    case BodyKind::Cylinder: {
      EdgeCurve e = make(EdgeKind::CylinderRim, 0.0, 2.0 * pi, 2, {});
      e.length = cfg.length;
      e.radius = cfg.radius;
      return {e};
    }
  }
  return {};
}

/// Exterior dihedral angle along an edge, from the two adjacent outward
/// normals (angle between them, computed with atan2).
inline double dihedral_angle(const BodyConfig& cfg, const EdgeCurve& e, double t) {
  const bool matches = [&] {
    switch (e.kind) {
      case EdgeKind::Ex1Semicircle: return cfg.kind == BodyKind::Example1;
      case EdgeKind::Ex2GraphCircle:
      case EdgeKind::Ex2VinzantArc: return cfg.kind == BodyKind::Example2;
      case EdgeKind::Ex3Arc:
        return cfg.kind == BodyKind::Example3 || (cfg.kind == BodyKind::DeltaFamily && cfg.delta == 2.0);
      case EdgeKind::CylinderRim: return cfg.kind == BodyKind::Cylinder;
    }
    return false;
  }();
  if (!matches) throw UnsupportedMethod("dihedral_angle: edge does not belong to " + cfg.name());
  const auto [a, b] = e.normals(t);
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

// ---------------------------------------------------------------------------
// Implicit boundary equations

struct Monomial {
  double coef;
  int px, py, pz;
};

// Example 2: (y-1)(z+1)(x^2 - 2y + y^2 + 2z - 2yz + z^2), expanded.
inline constexpr std::array<Monomial, 16> example2_surface = {{
    {-1, 2, 0, 0}, {2, 0, 1, 0}, {1, 2, 1, 0}, {-3, 0, 2, 0}, {1, 0, 3, 0}, {-2, 0, 0, 1},
    {-1, 2, 0, 1}, {6, 0, 1, 1}, {1, 2, 1, 1}, {-5, 0, 2, 1}, {1, 0, 3, 1}, {-3, 0, 0, 2},
    {5, 0, 1, 2}, {-2, 0, 2, 2}, {-1, 0, 0, 3}, {1, 0, 1, 3},
}};

// Example 3: sextic, a cubic in z^2.
inline constexpr std::array<Monomial, 23> example3_surface = {{
    {-4, 4, 0, 0},  {8, 6, 0, 0},   {-16, 2, 1, 0}, {36, 4, 1, 0},  {-16, 0, 2, 0}, {40, 2, 2, 0},
    {15, 4, 2, 0},  {36, 2, 3, 0},  {8, 0, 4, 0},   {6, 2, 4, 0},   {-1, 0, 6, 0},  {-8, 2, 0, 2},
    {24, 4, 0, 2},  {16, 0, 1, 2},  {40, 0, 2, 2},  {-78, 2, 2, 2}, {-36, 0, 3, 2}, {6, 0, 4, 2},
    {-4, 0, 0, 4},  {24, 2, 0, 4},  {-36, 0, 1, 4}, {15, 0, 2, 4},  {8, 0, 0, 6},
}};

namespace detail {

template <std::size_t N>
double eval_poly(const std::array<Monomial, N>& poly, const Vec3& p) {
  double sum = 0.0;
  for (const Monomial& m : poly)
    sum += m.coef * std::pow(p.x, m.px) * std::pow(p.y, m.py) * std::pow(p.z, m.pz);
  return sum;
}

template <std::size_t N>
Vec3 eval_gradient(const std::array<Monomial, N>& poly, const Vec3& p) {
  auto term = [](double c, double base, int e) { return e == 0 ? 0.0 : c * e * std::pow(base, e - 1); };
  Vec3 g;
  for (const Monomial& m : poly) {
    const double px = std::pow(p.x, m.px), py = std::pow(p.y, m.py), pz = std::pow(p.z, m.pz);
    g.x += term(m.coef, p.x, m.px) * py * pz;
    g.y += term(m.coef, p.y, m.py) * px * pz;
    g.z += term(m.coef, p.z, m.pz) * px * py;
  }
  return g;
}

}  // namespace detail

/// Value of the configuration's implicit boundary polynomial at p.
inline double implicit_residual(const BodyConfig& cfg, const Vec3& p) {
  const Vec3 q = p / cfg.scale;
  if (cfg.kind == BodyKind::Example2) return detail::eval_poly(example2_surface, q);
  if (cfg.kind == BodyKind::Example3 || (cfg.kind == BodyKind::DeltaFamily && cfg.delta == 2.0))
    return detail::eval_poly(example3_surface, q);
  throw UnsupportedMethod("implicit_residual: no implicit equation for " + cfg.name());
}

/// Gradient of the implicit polynomial (in unscaled coordinates).
inline Vec3 implicit_gradient(const BodyConfig& cfg, const Vec3& p) {
  const Vec3 q = p / cfg.scale;
  if (cfg.kind == BodyKind::Example2) return detail::eval_gradient(example2_surface, q);
  if (cfg.kind == BodyKind::Example3 || (cfg.kind == BodyKind::DeltaFamily && cfg.delta == 2.0))
    return detail::eval_gradient(example3_surface, q);
  throw UnsupportedMethod("implicit_gradient: no implicit equation for " + cfg.name());
}

}  // namespace dischull
