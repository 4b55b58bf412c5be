#pragma once

// Polytope oracle: sample the generator circles, take the convex hull of
// the samples (quickhull), and evaluate volume, surface area and mean width
// of the resulting polytope. The hull of samples lies inside the body, so
// all three values approach the smooth ones from below.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "dischull/bodies.hpp"
#include "dischull/errors.hpp"
#include "dischull/vec3.hpp"

namespace dischull {

struct Polytope {
  struct Facet {
    std::array<int, 3> v;  // counter-clockwise seen from outside
    Vec3 normal;           // outward unit normal
  };
  struct Edge {
    int a, b;    // vertex indices, a < b
    int f0, f1;  // adjacent facets
  };

  std::vector<Vec3> vertices;
  std::vector<Facet> facets;
  std::vector<Edge> edges;
};

namespace detail {

// cos/sin of 2 pi k / n, exact at multiples of a quarter turn.
inline std::pair<double, double> unit_root(int k, int n) {
  if ((4 * k) % n == 0) {
    switch ((4 * k / n) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double t = 2.0 * std::numbers::pi * k / n;
  return {std::cos(t), std::sin(t)};
}

// In-plane frame of a disk; axis-aligned normals get axis-aligned frames.
inline std::pair<Vec3, Vec3> disk_frame(const Vec3& n) {
  const Vec3 axis = std::abs(n.x) < 0.5 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 e1 = normalized(axis - n * dot(axis, n));
  return {e1, cross(n, e1)};
}

inline double bounding_scale(const std::vector<Vec3>& pts) {
  double s = 0.0;
  for (const Vec3& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
  return s;
}

}  // namespace detail

/// Points within `tol` of an earlier point are dropped; order is preserved.
inline std::vector<Vec3> dedupe(const std::vector<Vec3>& pts, double tol) {
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const Vec3& p : pts) {
    bool dup = false;
    for (const Vec3& q : out) {
      if (std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol && std::abs(p.z - q.z) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

/// K equally spaced rim points on each generator circle, duplicates removed.
inline std::vector<Vec3> sample_circles(const BodyConfig& cfg, int K) {
  if (K < 3) throw DomainError("sample_circles requires K >= 3");
  std::vector<Vec3> pts;
  pts.reserve(2 * static_cast<std::size_t>(K));
  for (const Disk& d : cfg.disks()) {
    const auto [e1, e2] = detail::disk_frame(d.normal);
    for (int k = 0; k < K; ++k) {
      const auto [c, s] = detail::unit_root(k, K);
      pts.push_back(d.center + d.radius * (c * e1 + s * e2));
    }
  }
  return dedupe(pts, 1e-12 * std::max(1.0, detail::bounding_scale(pts)));
}

/// Corners of the unit cube [0, 1]^3; volume 1, area 6, mean width 3/2.
inline std::vector<Vec3> cube_fixture() {
  std::vector<Vec3> c;
  for (int i = 0; i < 8; ++i) c.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  return c;
}

namespace detail {

class Quickhull {
 public:
  explicit Quickhull(const std::vector<Vec3>& pts) : pts_(pts) {
    if (pts_.size() < 4) throw DegenerateInput("convex hull needs at least 4 points");
    eps_ = 1e-12 * std::max(1.0, bounding_scale(pts_));
  }

  Polytope run() {
    initial_simplex();
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      // New faces are appended, so a single forward sweep visits them all.
      while (faces_[f].alive && !faces_[f].outside.empty()) add_point(f);
    }
    return extract();
  }

 private:
  struct Face {
    std::array<int, 3> v;
    std::array<int, 3> nb;  // nb[i]: face across edge v[i] -> v[i+1]
    Vec3 n;
    double d;
    std::vector<int> outside;
    bool alive = true;
  };

  const std::vector<Vec3>& pts_;
  double eps_;
  std::vector<Face> faces_;
  std::vector<int> mark_;

  double dist(const Face& f, int p) const { return dot(f.n, pts_[p]) - f.d; }

  int make_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.nb = {-1, -1, -1};
    const Vec3 n = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
    const double len = norm(n);
    if (!(len > 0.0)) throw DegenerateInput("convex hull produced a zero-area facet");
    f.n = n / len;
    f.d = dot(f.n, pts_[a]);
    faces_.push_back(std::move(f));
    mark_.push_back(0);
    return static_cast<int>(faces_.size()) - 1;
  }

  static double line_distance(const Vec3& a, const Vec3& b, const Vec3& p) {
    return norm(cross(b - a, p - a)) / norm(b - a);
  }

  void initial_simplex() {
    const int n = static_cast<int>(pts_.size());
    // Extreme pair along the coordinate axis of largest spread.
    int i0 = 0, i1 = 0;
    double best = -1.0;
    for (int axis = 0; axis < 3; ++axis) {
      auto coord = [axis](const Vec3& p) { return axis == 0 ? p.x : axis == 1 ? p.y : p.z; };
      int lo = 0, hi = 0;
      for (int i = 1; i < n; ++i) {
        if (coord(pts_[i]) < coord(pts_[lo])) lo = i;
        if (coord(pts_[i]) > coord(pts_[hi])) hi = i;
      }
      const double spread = coord(pts_[hi]) - coord(pts_[lo]);
      if (spread > best) {
        best = spread;
        i0 = lo;
        i1 = hi;
      }
    }
    if (!(best > eps_)) throw DegenerateInput("convex hull input is a single point");
    int i2 = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      const double d = line_distance(pts_[i0], pts_[i1], pts_[i]);
      if (d > best) {
        best = d;
        i2 = i;
      }
    }
    if (i2 < 0) throw DegenerateInput("convex hull input is collinear");
    const Vec3 pn = normalized(cross(pts_[i1] - pts_[i0], pts_[i2] - pts_[i0]));
    int i3 = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(dot(pn, pts_[i] - pts_[i0]));
      if (d > best) {
        best = d;
        i3 = i;
      }
    }
    if (i3 < 0) throw DegenerateInput("convex hull input is coplanar");

    // Orient so that i3 lies behind face (i0, i1, i2).
    if (dot(pn, pts_[i3] - pts_[i0]) > 0.0) std::swap(i1, i2);
    const int f0 = make_face(i0, i1, i2);
    const int f1 = make_face(i0, i3, i1);
    const int f2 = make_face(i1, i3, i2);
    const int f3 = make_face(i2, i3, i0);
    link_all({f0, f1, f2, f3});

    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      assign(i, {f0, f1, f2, f3});
    }
  }

  // Pair up neighbours among a set of faces by matching reversed edges.
  void link_all(const std::vector<int>& fs) {
    for (int a : fs) {
      for (int i = 0; i < 3; ++i) {
        const int p = faces_[a].v[i], q = faces_[a].v[(i + 1) % 3];
        for (int b : fs) {
          if (a == b) continue;
          for (int j = 0; j < 3; ++j)
            if (faces_[b].v[j] == q && faces_[b].v[(j + 1) % 3] == p) faces_[a].nb[i] = b;
        }
      }
    }
  }

  void assign(int p, const std::vector<int>& candidates) {
    for (int f : candidates) {
      if (dist(faces_[f], p) > eps_) {
        faces_[f].outside.push_back(p);
        return;
      }
    }
  }

  void add_point(std::size_t start) {
    Face& sf = faces_[start];
    // Farthest outside point; ties go to the lowest index.
    int eye = sf.outside.front();
    double far = dist(sf, eye);
    for (int p : sf.outside) {
      const double d = dist(sf, p);
      if (d > far || (d == far && p < eye)) {
        far = d;
        eye = p;
      }
    }

    // Visible region by breadth-first search from the start face.
    std::vector<int> visible{static_cast<int>(start)};
    mark_[start] = 1;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      for (int nb : faces_[visible[k]].nb) {
        if (mark_[nb] != 0) continue;
        if (dist(faces_[nb], eye) > eps_) {
          mark_[nb] = 1;
          visible.push_back(nb);
        } else {
          mark_[nb] = 2;  // seen, not visible
        }
      }
    }

    // Horizon edges, oriented as in the visible face.
    struct HorizonEdge {
      int a, b, outer;
    };
    std::vector<HorizonEdge> horizon;
    for (int f : visible) {
      for (int i = 0; i < 3; ++i) {
        const int nb = faces_[f].nb[i];
        if (mark_[nb] != 1) horizon.push_back({faces_[f].v[i], faces_[f].v[(i + 1) % 3], nb});
      }
    }

    std::vector<int> orphans;
    for (int f : visible) {
      for (int p : faces_[f].outside)
        if (p != eye) orphans.push_back(p);
      faces_[f].outside.clear();
      faces_[f].outside.shrink_to_fit();
      faces_[f].alive = false;
    }
    for (int f : visible) mark_[f] = 0;
    for (const auto& h : horizon) mark_[h.outer] = 0;
    // Faces marked 2 but not on the horizon cannot exist: every non-visible
    // face reached by the search is adjacent to a visible one.

    std::vector<int> created;
    created.reserve(horizon.size());
    std::unordered_map<int, int> by_start;  // a -> new face with edge (eye, a)
    for (const auto& h : horizon) {
      const int nf = make_face(h.a, h.b, eye);
      created.push_back(nf);
      faces_[nf].nb[0] = h.outer;
      Face& outer = faces_[h.outer];
      for (int j = 0; j < 3; ++j)
        if (outer.v[j] == h.b && outer.v[(j + 1) % 3] == h.a) outer.nb[j] = nf;
      by_start[h.a] = nf;
    }
    for (int nf : created) {
      Face& f = faces_[nf];
      f.nb[1] = by_start.at(f.v[1]);  // edge (b, eye) meets the face starting at b
      const int a = f.v[0];
      for (int other : created)
        if (faces_[other].v[1] == a) f.nb[2] = other;  // edge (eye, a)
    }

    std::sort(orphans.begin(), orphans.end());
    for (int p : orphans) assign(p, created);
  }

  Polytope extract() const {
    Polytope poly;
    std::vector<int> remap(pts_.size(), -1);
    std::vector<int> face_index(faces_.size(), -1);
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (!faces_[f].alive) continue;
      face_index[f] = static_cast<int>(poly.facets.size());
      Polytope::Facet out;
      for (int i = 0; i < 3; ++i) {
        const int p = faces_[f].v[i];
        if (remap[p] < 0) {
          remap[p] = static_cast<int>(poly.vertices.size());
          poly.vertices.push_back(pts_[p]);
        }
        out.v[i] = remap[p];
      }
      out.normal = faces_[f].n;
      poly.facets.push_back(out);
    }
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (!faces_[f].alive) continue;
      for (int i = 0; i < 3; ++i) {
        const int a = remap[faces_[f].v[i]], b = remap[faces_[f].v[(i + 1) % 3]];
        if (a < b) poly.edges.push_back({a, b, face_index[f], face_index[faces_[f].nb[i]]});
      }
    }
    return poly;
  }
};

}  // namespace detail

/// Convex hull of at least four affinely independent points, triangulated.
inline Polytope convex_hull_3d(const std::vector<Vec3>& points) {
  return detail::Quickhull(points).run();
}

inline double poly_volume(const Polytope& p) {
  Vec3 c;
  for (const Vec3& v : p.vertices) c += v;
  c = c / static_cast<double>(p.vertices.size());
  double vol = 0.0;
  for (const auto& f : p.facets) {
    const Vec3 a = p.vertices[f.v[0]] - c, b = p.vertices[f.v[1]] - c, d = p.vertices[f.v[2]] - c;
    vol += dot(a, cross(b, d));
  }
  return vol / 6.0;
}

inline double poly_area(const Polytope& p) {
  double area = 0.0;
  for (const auto& f : p.facets) {
    const Vec3 a = p.vertices[f.v[0]], b = p.vertices[f.v[1]], d = p.vertices[f.v[2]];
    area += norm(cross(b - a, d - a));
  }
  return 0.5 * area;
}

/// Exterior dihedral angle at an edge: the angle between the two outward
/// facet normals.
inline double exterior_angle(const Polytope& p, const Polytope::Edge& e) {
  const Vec3 n0 = p.facets[e.f0].normal, n1 = p.facets[e.f1].normal;
  return std::atan2(norm(cross(n0, n1)), dot(n0, n1));
}

/// Mean width from the edge formula (1/4pi) sum length * exterior angle.
inline double poly_mean_width(const Polytope& p) {
  double sum = 0.0;
  for (const auto& e : p.edges) sum += norm(p.vertices[e.b] - p.vertices[e.a]) * exterior_angle(p, e);
  return sum / (4.0 * std::numbers::pi);
}

inline double poly_support(const Polytope& p, const Vec3& v) {
  double h = -std::numeric_limits<double>::infinity();
  for (const Vec3& x : p.vertices) h = std::max(h, dot(x, v));
  return h;
}

}  // namespace dischull
