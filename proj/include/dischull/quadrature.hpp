#pragma once

// Globally adaptive Gauss-Kronrod (10/21) quadrature in one dimension,
// iterated integration in two, and product-rule integration over the
// unit sphere.
//
// The error estimate of every panel is the raw |K21 - G10| difference,
// which overestimates the true error of the Kronrod value for smooth
// integrands. Endpoint singularities of inverse-square-root type are
// removed by a change of variables before adapting.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "dischull/errors.hpp"
#include "dischull/vec3.hpp"

namespace dischull::quad {

/// Endpoints at which the integrand may behave like 1/sqrt(distance).
struct SingularEndpoints {
  bool left = false;
  bool right = false;

  static constexpr SingularEndpoints none() { return {false, false}; }
  static constexpr SingularEndpoints both() { return {true, true}; }
  static constexpr SingularEndpoints at_left() { return {true, false}; }
  static constexpr SingularEndpoints at_right() { return {false, true}; }
};

struct QuadOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  int max_subdivisions = 2000;
  SingularEndpoints singular{};

  void validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
      throw DomainError("quadrature tolerances must be non-negative");
    if (abs_tol == 0.0 && rel_tol == 0.0)
      throw DomainError("quadrature tolerances must not both be zero");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
  }

  QuadOptions with_singular(SingularEndpoints s) const {
    QuadOptions o = *this;
    o.singular = s;
    return o;
  }

  /// Same options with both tolerances divided by `factor`.
  QuadOptions tightened(double factor) const {
    QuadOptions o = *this;
    o.abs_tol /= factor;
    o.rel_tol /= factor;
    return o;
  }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

// Kronrod abscissae on [-1, 1]; odd entries are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kronrod_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980223048, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

template <class F>
Panel gauss_kronrod_21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[10];
  double gauss = 0.0;
  double magnitude = std::abs(kronrod);
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kronrod_nodes[i];
    const double fl = f(center - dx);
    const double fr = f(center + dx);
    kronrod += kronrod_weights[i] * (fl + fr);
    magnitude += kronrod_weights[i] * (std::abs(fl) + std::abs(fr));
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * (fl + fr);
  }
  // Floor the estimate at the rounding level of the panel sum.
  constexpr double rounding = 50.0 * std::numeric_limits<double>::epsilon();
  const double error = std::max(std::abs(kronrod - gauss), rounding * magnitude) * std::abs(half);
  return {a, b, kronrod * half, error};
}

// Neumaier-compensated running sum; keeps the final panel summation exact
// enough that the result depends only on the panel set.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

template <class F>
QuadResult adaptive(F& f, double a, double b, const QuadOptions& opts) {
  constexpr std::size_t evals_per_panel = 21;
  auto by_error = [](const Panel& p, const Panel& q) {
    if (p.error != q.error) return p.error < q.error;
    return p.a > q.a;
  };

  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(opts.max_subdivisions) + 1);
  heap.push_back(gauss_kronrod_21(f, a, b));
  std::size_t evaluations = evals_per_panel;

  auto totals = [&heap]() {
    CompensatedSum value, error;
    std::vector<Panel> ordered = heap;
    std::sort(ordered.begin(), ordered.end(),
              [](const Panel& p, const Panel& q) { return p.a < q.a; });
    for (const Panel& p : ordered) {
      value.add(p.value);
      error.add(p.error);
    }
    return std::pair{value.value(), error.value()};
  };
  auto target = [&opts](double value) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };

  double value = heap.front().value;
  double error = heap.front().error;
  if (!std::isfinite(value) || !std::isfinite(error))
    throw QuadratureError("integrand is not finite on the interval", value, error);

  for (int subdivisions = 0;; ++subdivisions) {
    if (error <= target(value)) {
      auto [v, e] = totals();
      value = v;
      error = e;
      if (error <= target(value)) return {value, error, evaluations};
    }
    if (subdivisions >= opts.max_subdivisions) {
      auto [v, e] = totals();
      throw QuadratureError("quadrature did not converge within max_subdivisions", v, e);
    }

    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      auto [v, e] = totals();
      throw QuadratureError("quadrature panel cannot be subdivided further", v, e);
    }
    const Panel left = gauss_kronrod_21(f, worst.a, mid);
    const Panel right = gauss_kronrod_21(f, mid, worst.b);
    evaluations += 2 * evals_per_panel;
    if (!std::isfinite(left.value) || !std::isfinite(right.value))
      throw QuadratureError("integrand is not finite on the interval", value, error);

    value += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }
}

}  // namespace detail

/// Integrate f over [a, b]. Throws QuadratureError on non-convergence or a
/// non-finite integrand value.
template <class F>
QuadResult integrate_1d(F&& f, double a, double b, const QuadOptions& opts = {}) {
  opts.validate();
  if (!(a <= b)) throw DomainError("integrate_1d requires a <= b");
  if (a == b) return {};

  const double w = b - a;
  const auto& s = opts.singular;
  if (!s.left && !s.right) {
    auto g = [&f](double x) { return static_cast<double>(f(x)); };
    return detail::adaptive(g, a, b, opts);
  }
  // The Jacobians below are written in terms of the distances x - a and
  // b - x of the abscissa actually passed to f, so that rounding in x cannot
  // unbalance f(x) * jacobian next to a singular endpoint.
  if (s.left && s.right) {
    // x = a + w sin^2 t, written from the nearer endpoint.
    auto g = [&f, a, b, w](double t) {
      const double st = std::sin(t);
      const double ct = std::cos(t);
      const double x = t < 0.25 * std::numbers::pi ? a + w * st * st : b - w * ct * ct;
      const double jac = 2.0 * std::sqrt(std::max(0.0, (x - a) * (b - x)));
      if (jac == 0.0) return 0.0;
      return static_cast<double>(f(x)) * jac;
    };
    return detail::adaptive(g, 0.0, 0.5 * std::numbers::pi, opts);
  }
  if (s.left) {
    // x = a + w t^2.
    auto g = [&f, a, w](double t) {
      const double x = a + w * t * t;
      const double jac = 2.0 * std::sqrt(std::max(0.0, w * (x - a)));
      if (jac == 0.0) return 0.0;
      return static_cast<double>(f(x)) * jac;
    };
    return detail::adaptive(g, 0.0, 1.0, opts);
  }
  // x = b - w t^2.
  auto g = [&f, b, w](double t) {
    const double x = b - w * t * t;
    const double jac = 2.0 * std::sqrt(std::max(0.0, w * (b - x)));
    if (jac == 0.0) return 0.0;
    return static_cast<double>(f(x)) * jac;
  };
  return detail::adaptive(g, 0.0, 1.0, opts);
}

/// Iterated integral of f(x, y) for x in [a, b], y in [lo(x), hi(x)].
/// `opts.singular` applies to the outer variable, `inner_singular` to the
/// inner one. The inner integrals run with tolerances tightened tenfold.
template <class F, class Lo, class Hi>
QuadResult integrate_2d(F&& f, double a, double b, Lo&& lo, Hi&& hi, const QuadOptions& opts = {},
                        SingularEndpoints inner_singular = {}) {
  opts.validate();
  const QuadOptions inner = opts.tightened(10.0).with_singular(inner_singular);
  std::size_t inner_evaluations = 0;
  double worst_inner_error = 0.0;
  auto outer = [&](double x) {
    const double y0 = lo(x);
    const double y1 = hi(x);
    if (!(y1 > y0)) return 0.0;
    const QuadResult r = integrate_1d([&](double y) { return f(x, y); }, y0, y1, inner);
    inner_evaluations += r.evaluations;
    worst_inner_error = std::max(worst_inner_error, r.error_estimate);
    return r.value;
  };
  QuadResult r = integrate_1d(outer, a, b, opts);
  r.error_estimate += (b - a) * worst_inner_error;
  r.evaluations = inner_evaluations;
  return r;
}

/// Integral of g over the unit sphere with the uniform (area) measure.
/// g receives unit vectors.
template <class G>
QuadResult integrate_sphere(G&& g, const QuadOptions& opts = {}) {
  constexpr double pi = std::numbers::pi;
  return integrate_2d(
      [&g](double theta, double phi) { return g(spherical(theta, phi)) * std::sin(phi); }, 0.0,
      2.0 * pi, [](double) { return 0.0; }, [](double) { return pi; }, opts);
}

}  // namespace dischull::quad
