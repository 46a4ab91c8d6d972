#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <type_traits>

#include "kglab/errors.hpp"

namespace kg::quad {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr int kDefaultMaxDepth = 60;

namespace detail {

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

// Adaptive Simpson with the Richardson (S2 - S1)/15 correction.
template <class F, class T>
T simpson_recurse(F& f, double a, double b, const T& fa, const T& fm, const T& fb, const T& whole, double tol,
                  int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const T flm = f(lm), frm = f(rm);
  // Widths from the rounded midpoint, so each child's estimate matches `whole`
  // exactly; h / 12 would leave an ulp(a) * |f| mismatch that never shrinks.
  const T left = ((m - a) / 6.0) * (fa + 4.0 * flm + fm);
  const T right = ((b - m) / 6.0) * (fm + 4.0 * frm + fb);
  const T delta = left + right - whole;
  const double err = magnitude(delta);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (magnitude(left) + magnitude(right));
  if (depth >= 3 && (err <= 15.0 * tol || err <= floor)) return left + right + delta / 15.0;
  if (depth >= max_depth) throw NumericFailure("adaptive Simpson did not converge within depth limit");
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Integral of f over [a, b] to absolute tolerance `tol`. Antisymmetric in the
/// limits. Throws NumericFailure when the depth limit is hit.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, double tol = kDefaultTolerance, int max_depth = kDefaultMaxDepth) {
  using T = std::decay_t<decltype(f(a))>;
  if (a == b) return T{};
  if (b < a) return T(-adaptive_simpson(f, b, a, tol, max_depth));
  const T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const T whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  T out = detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
  if (!std::isfinite(detail::magnitude(out))) throw NumericFailure("non-finite quadrature result");
  return out;
}

/// Nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre16 {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};
};

inline const GaussLegendre16& gauss_legendre16() {
  static const GaussLegendre16 rule = [] {
    GaussLegendre16 r;
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
      long double dp = 0;
      for (int it = 0; it < 100; ++it) {
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const long double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-19L) break;
      }
      r.nodes[i] = static_cast<double>(x);
      r.weights[i] = static_cast<double>(2 / ((1 - x * x) * dp * dp));
    }
    return r;
  }();
  return rule;
}

/// Single-panel 16-point Gauss-Legendre integral of f over [a, b]. A smooth
/// function of the endpoints, which matters when results are differenced.
template <class F>
auto gauss_legendre(F&& f, double a, double b) {
  using T = std::decay_t<decltype(f(a))>;
  const auto& rule = gauss_legendre16();
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  T sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return T(half * sum);
}

}  // namespace kg::quad
