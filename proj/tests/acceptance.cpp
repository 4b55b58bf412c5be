// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "dischull/metrics.hpp"

using namespace dischull;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double sqrt3 = std::numbers::sqrt3;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Target {
  const char* tag;
  BodyConfig cfg;
  Quantity q;
  double value;
};

std::vector<Target> nine_constants() {
  return {
      {"VL1", BodyConfig::example1(), Quantity::VL, 8.0 / 3.0},
      {"AR1", BodyConfig::example1(), Quantity::AR, 2.0 * (2.0 + pi)},
      {"MW1", BodyConfig::example1(), Quantity::MW, 1.8697727582861870},
      {"VL2", BodyConfig::example2(), Quantity::VL, pi},
      {"AR2", BodyConfig::example2(), Quantity::AR, 13.9235808852350105},
      {"MW2", BodyConfig::example2(), Quantity::MW, (sqrt2 + pi) / 2.0},
      {"VL3", BodyConfig::example3(), Quantity::VL, 2.0 * pi / sqrt3},
      {"AR3", BodyConfig::example3(), Quantity::AR, 15.9716335277272627},
      {"MW3", BodyConfig::example3(), Quantity::MW, sqrt2 + std::acos(1.0 / 3.0)},
  };
}

Outcome nine_constant_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string worst_tag;
  for (const Target& t : nine_constants()) {
    const Method m = t.q == Quantity::MW ? Method::Indirect : Method::Quadrature;
    const double d = std::abs(compute(t.cfg, t.q, m).value - t.value);
    if (d > worst || worst_tag.empty()) worst = d, worst_tag = t.tag;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-9 && secs <= 60.0,
          "max |delta| = " + sci(worst) + " (" + worst_tag + ", tol 1e-9), " + sci(secs) + " s (limit 60 s)"};
}

Outcome route_independence() {
  double worst = 0.0;
  for (const BodyConfig& cfg : {BodyConfig::example1(), BodyConfig::example2(), BodyConfig::example3()}) {
    const double a = mw_indirect(cfg).value;
    const double b = mw_direct_octant(cfg).value;
    const double c = mw_support(cfg).value;
    worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
  }
  return {worst <= 1e-9, "max pairwise MW spread = " + sci(worst) + " (tol 1e-9)"};
}

Outcome example2_double_coverage() {
  const BodyConfig cfg = BodyConfig::example2();
  const quad::QuadOptions o;
  const double dv = std::abs(volume_quadrature(cfg, o, Ex2Route::Graph).value -
                             volume_quadrature(cfg, o, Ex2Route::Parametric).value);
  const double da = std::abs(area_quadrature(cfg, o, Ex2Route::Graph).value -
                             area_quadrature(cfg, o, Ex2Route::Parametric).value);
  const double dm =
      std::abs(mw_indirect(cfg, o, Ex2Route::Graph).value - mw_indirect(cfg, o, Ex2Route::Parametric).value);
  const double worst = std::max({dv, da, dm});
  return {worst <= 1e-10, "graph vs parametric: VL " + sci(dv) + ", AR " + sci(da) + ", MW " + sci(dm) + " (tol 1e-10)"};
}

Outcome oloid_and_roller() {
  const struct {
    BodyConfig cfg;
    Quantity q;
    double value;
  } targets[] = {
      {BodyConfig::oloid(), Quantity::VL, 3.0524184684243749},
      {BodyConfig::oloid(), Quantity::AR, 4.0 * pi},
      {BodyConfig::roller(), Quantity::VL, 3.2818194874496894},
      {BodyConfig::roller(), Quantity::AR, 13.9235808852350105},
  };
  double worst = 0.0;
  for (const auto& t : targets) worst = std::max(worst, std::abs(compute(t.cfg, t.q, Method::Quadrature).value - t.value));
  const double dg = std::abs(integrals::roller_gamma({}).value - roller_gamma_closed());
  return {worst <= 1e-9 && dg <= 1e-10,
          "max |delta| VL/AR = " + sci(worst) + " (tol 1e-9), gamma integral vs closed form = " + sci(dg) + " (tol 1e-10)"};
}

Outcome vogt_identity() {
  const double d = std::abs(detail::ar3_vogt() - area_quadrature(BodyConfig::example3()).value);
  return {d <= 1e-10, "|Vogt - AR3 quadrature| = " + sci(d) + " (tol 1e-10)"};
}

Outcome cylinder_pin() {
  double worst = 0.0;
  for (auto [l, r] : {std::pair{2.0, 1.0}, std::pair{1.0, 3.0}})
    worst = std::max(worst, std::abs(mw_indirect(BodyConfig::cylinder(l, r)).value - (l + pi * r) / 2.0));
  return {worst <= 1e-10, "max |indirect - (l + pi r)/2| = " + sci(worst) + " over (2,1), (1,3) (tol 1e-10)"};
}

Outcome oracle_convergence() {
  const std::vector<int> ks{512, 1024, 2048, 4096};
  double worst_rel = 0.0, min_deficit = INFINITY, min_order = INFINITY;
  for (const BodyConfig& cfg : {BodyConfig::example1(), BodyConfig::example2(), BodyConfig::example3()}) {
    std::vector<HullMetrics> h;
    for (int K : ks) h.push_back(hull_metrics(cfg, K));
    for (const Target& t : nine_constants()) {
      if (t.cfg.kind != cfg.kind) continue;
      for (const HullMetrics& m : h) min_deficit = std::min(min_deficit, t.value - m.get(t.q));
      worst_rel = std::max(worst_rel, std::abs(h.back().get(t.q) - t.value) / t.value);
      if (t.q == Quantity::MW) continue;
      for (std::size_t i = 1; i < h.size(); ++i) {
        const double d0 = t.value - h[i - 1].get(t.q), d1 = t.value - h[i].get(t.q);
        if (d0 > 0.0 && d1 > 0.0) min_order = std::min(min_order, std::log2(d0 / d1));
        else min_order = -INFINITY;
      }
    }
  }
  return {worst_rel <= 1e-3 && min_deficit > 0.0 && min_order >= 1.9,
          "K=4096 max rel error = " + sci(worst_rel) + " (tol 1e-3), min deficit = " + sci(min_deficit) +
              " (> 0), min VL/AR order = " + sci(min_order) + " (>= 1.9)"};
}

double scaled_residual(const BodyConfig& cfg, const Vec3& x) {
  return std::abs(implicit_residual(cfg, x)) / std::max(1.0, norm(implicit_gradient(cfg, x)));
}

Outcome geometry_invariants() {
  double worst_res = 0.0;
  for (const BodyConfig& cfg : {BodyConfig::example2(), BodyConfig::example3()}) {
    const ParamPatch p = patches(cfg)[0];
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        const double u = p.domain.u0 + (p.domain.u1 - p.domain.u0) * i / 49.0;
        const double v = p.domain.v0 + (p.domain.v1 - p.domain.v0) * j / 49.0;
        worst_res = std::max(worst_res, scaled_residual(cfg, p.point(u, v)));
      }
  }

  double worst_h = 0.0;
  const ParamPatch g = patches(BodyConfig::example1())[0];
  for (int i = 0; i < 100; ++i) {
    const double x = -0.99 + 1.98 * (i + 0.5) / 100.0;
    const double v = 0.05 + 0.9 * ((i * 37) % 100) / 99.0;
    worst_h = std::max(worst_h, std::abs(mean_curvature(g, x, v) - std::pow(2.0 - x * x, -1.5)));
  }

  double worst_fd = 0.0;
  const double h = 1e-5;
  std::vector<ParamPatch> curved;
  for (const BodyConfig& cfg : {BodyConfig::example1(), BodyConfig::example3(), BodyConfig::cylinder(2.0, 1.0)})
    for (const ParamPatch& p : patches(cfg))
      if (p.kind != PatchKind::FlatDisk) curved.push_back(p);
  for (Ex2Route route : {Ex2Route::Graph, Ex2Route::Parametric})
    for (const ParamPatch& p : patches(BodyConfig::example2(), route))
      if (p.kind != PatchKind::FlatDisk) curved.push_back(p);
  for (const ParamPatch& p : curved) {
    const auto& d = p.domain;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        const double u = d.u0 + (d.u1 - d.u0) * (0.05 + 0.9 * i / 9.0);
        const double v = d.v0 + (d.v1 - d.v0) * (0.05 + 0.9 * j / 9.0);
        auto rel = [](const Vec3& fd, const Vec3& exact) { return norm(fd - exact) / std::max(1.0, norm(fd)); };
        worst_fd = std::max({worst_fd, rel((p.point(u + h, v) - p.point(u - h, v)) / (2 * h), p.du(u, v)),
                             rel((p.point(u, v + h) - p.point(u, v - h)) / (2 * h), p.dv(u, v)),
                             rel((p.normal(u + h, v) - p.normal(u - h, v)) / (2 * h), p.normal_du(u, v)),
                             rel((p.normal(u, v + h) - p.normal(u, v - h)) / (2 * h), p.normal_dv(u, v))});
      }
  }
  return {worst_res <= 1e-9 && worst_h <= 1e-8 && worst_fd <= 1e-6,
          "implicit residual " + sci(worst_res) + " (tol 1e-9), Ex1 H error " + sci(worst_h) +
              " (tol 1e-8), derivative vs finite difference " + sci(worst_fd) + " (tol 1e-6)"};
}

Outcome crossover_roots() {
  double worst = 0.0;
  const struct {
    BodyKind kind;
    double lo, hi;
  } ranges[] = {{BodyKind::Example1, 0.0, pi / 2}, {BodyKind::Example2, -pi / 2, pi / 2}, {BodyKind::Example3, 0.0, kappa()}};
  for (const auto& r : ranges)
    for (int i = 0; i < 100; ++i)
      worst = std::max(worst, std::abs(crossover_residual(r.kind, r.lo + (r.hi - r.lo) * i / 99.0)));
  return {worst <= 1e-12, "max crossover residual = " + sci(worst) + " over 3 x 100 samples (tol 1e-12)"};
}

Outcome open_problems() {
  bool ok = true;
  std::string detail;
  for (const auto& [name, cfg] : {std::pair{"oloid", BodyConfig::oloid()}, std::pair{"roller", BodyConfig::roller()}}) {
    const MetricsReport s = mw_support(cfg);
    const MetricsReport h = hull_oracle(cfg, Quantity::MW, default_hull_k);
    const double gap = std::abs(s.value - h.value), bar = s.error_estimate + h.error_estimate;
    ok = ok && gap <= bar;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%sMW_%s support %.12g +- %.2g, hull %.12g +- %.2g, gap %.2g",
                  detail.empty() ? "" : "; ", name, s.value, s.error_estimate, h.value, h.error_estimate, gap);
    detail += buf;
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"nine-constant reproduction", nine_constant_reproduction},
      {"MW route independence", route_independence},
      {"example 2 graph and parametric routes", example2_double_coverage},
      {"oloid and roller VL, AR, gamma", oloid_and_roller},
      {"Vogt identity", vogt_identity},
      {"cylinder mean-curvature convention", cylinder_pin},
      {"hull oracle convergence", oracle_convergence},
      {"geometry invariants", geometry_invariants},
      {"crossover roots", crossover_roots},
      {"open-problem MW error bars", open_problems},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
