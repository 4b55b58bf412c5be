#pragma once

// Dilogarithm and Legendre elliptic integrals.
//
// Parameter convention: every elliptic integral takes the *parameter* m,
// which multiplies sin^2 directly,
//
//   F(phi, m)      = int_0^phi dt / sqrt(1 - m sin^2 t)
//   E(phi, m)      = int_0^phi sqrt(1 - m sin^2 t) dt
//   Pi(nu, phi, m) = int_0^phi dt / ((1 - nu sin^2 t) sqrt(1 - m sin^2 t))
//
// and K(m) = F(pi/2, m), E(m) = E(pi/2, m), Pi(nu, m) = Pi(nu, pi/2, m).
// This is NOT the modulus convention (k with m = k^2). m may be negative,
// and may exceed 1 for incomplete integrals whose amplitude keeps the
// integrand real.
//
// The elliptic integrals are evaluated by adaptive quadrature of these
// defining integrals, so the conventions above are the implementation.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dischull/errors.hpp"
#include "dischull/quadrature.hpp"

namespace dischull::specfun {

inline constexpr double default_tolerance = 1e-13;

struct EllipticArgs {
  double phi = std::numbers::pi / 2;  // amplitude, 0 <= phi <= pi/2
  double m = 0.0;                     // parameter
  double nu = 0.0;                    // characteristic (third kind only)
};

namespace detail {

inline double dilog_series(double x) {
  // |x| <= 1/2: terms fall at least as fast as 2^-k / k^2.
  double term = x;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    term *= x;
  }
  return sum;
}

inline quad::QuadOptions elliptic_options(double tol) {
  quad::QuadOptions o;
  o.abs_tol = tol;
  o.rel_tol = tol;
  o.max_subdivisions = 4000;
  return o;
}

inline void check_amplitude(double phi) {
  if (!(phi >= 0.0 && phi <= std::numbers::pi / 2))
    throw DomainError("elliptic amplitude must lie in [0, pi/2]");
}

// min over [0, phi] of 1 - m sin^2 t, attained at an endpoint.
inline double min_radicand(double phi, double m) {
  const double s = std::sin(phi);
  return std::min(1.0, 1.0 - m * s * s);
}

}  // namespace detail

/// Li2(x) = sum_{k>=1} x^k / k^2 for |x| <= 1.
inline double dilog(double x) {
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  if (!(std::abs(x) <= 1.0)) throw DomainError("dilog requires |x| <= 1");
  if (x == 1.0) return pi2_6;
  if (std::abs(x) <= 0.5) return detail::dilog_series(x);
  if (x > 0.5) {
    // Euler reflection.
    return pi2_6 - std::log(x) * std::log1p(-x) - detail::dilog_series(1.0 - x);
  }
  // x in [-1, -1/2): Landen, maps to x/(x-1) in [1/3, 1/2].
  const double l = std::log1p(-x);
  return -detail::dilog_series(x / (x - 1.0)) - 0.5 * l * l;
}

/// Incomplete integral of the third kind; F and K share this path with nu = 0.
inline double incomplete_pi(double nu, double phi, double m, double tol = default_tolerance) {
  detail::check_amplitude(phi);
  if (!(detail::min_radicand(phi, m) > 0.0))
    throw DomainError("elliptic integrand singular: 1 - m sin^2 vanishes in [0, phi]");
  const double s = std::sin(phi);
  if (nu > 0.0 && !(1.0 - nu * s * s > 0.0))
    throw DomainError("elliptic integrand has a pole: 1 - nu sin^2 vanishes in [0, phi]");
  if (phi == 0.0) return 0.0;
  auto integrand = [nu, m](double t) {
    const double s2 = std::sin(t) * std::sin(t);
    return 1.0 / ((1.0 - nu * s2) * std::sqrt(1.0 - m * s2));
  };
  return quad::integrate_1d(integrand, 0.0, phi, detail::elliptic_options(tol)).value;
}

inline double incomplete_f(double phi, double m, double tol = default_tolerance) {
  return incomplete_pi(0.0, phi, m, tol);
}

inline double incomplete_e(double phi, double m, double tol = default_tolerance) {
  detail::check_amplitude(phi);
  if (!(detail::min_radicand(phi, m) >= 0.0))
    throw DomainError("elliptic integrand not real: 1 - m sin^2 < 0 in [0, phi]");
  if (phi == 0.0) return 0.0;
  auto integrand = [m](double t) {
    const double s2 = std::sin(t) * std::sin(t);
    return std::sqrt(std::max(0.0, 1.0 - m * s2));
  };
  return quad::integrate_1d(integrand, 0.0, phi, detail::elliptic_options(tol)).value;
}

inline double complete_pi(double nu, double m, double tol = default_tolerance) {
  return incomplete_pi(nu, std::numbers::pi / 2, m, tol);
}

inline double complete_k(double m, double tol = default_tolerance) {
  return incomplete_pi(0.0, std::numbers::pi / 2, m, tol);
}

inline double complete_e(double m, double tol = default_tolerance) {
  return incomplete_e(std::numbers::pi / 2, m, tol);
}

/// Dispatch helpers taking the argument bundle.
inline double incomplete_f(const EllipticArgs& a) { return incomplete_f(a.phi, a.m); }
inline double incomplete_e(const EllipticArgs& a) { return incomplete_e(a.phi, a.m); }
inline double incomplete_pi(const EllipticArgs& a) { return incomplete_pi(a.nu, a.phi, a.m); }

}  // namespace dischull::specfun
