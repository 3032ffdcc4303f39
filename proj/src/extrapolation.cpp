#include "exactdiff/extrapolation.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "exactdiff/error.hpp"

namespace exactdiff {
namespace {

template <typename Real>
std::size_t nearest_node(std::span<const Real> xs, Real x) {
  std::size_t ns = 0;
  Real best = std::abs(x - xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const Real d = std::abs(x - xs[i]);
    if (d < best) {
      best = d;
      ns = i;
    }
  }
  return ns;
}

template <typename Real>
void check_inputs(std::span<const Real> xs, std::span<const Real> ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw Error(Errc::invalid_params, "extrapolation needs matching non-empty node arrays");
}

// the table "diverges" when the last column change jumps by more than a
// factor of 10 over the previous one and is material relative to the value
template <typename Real>
bool diverged(std::size_t n, Real y, Real last, Real prev) {
  return n > 2 && std::abs(last) > 10.0L * std::abs(prev) &&
         std::abs(last) > 1e-9L * std::max<Real>(1.0, std::abs(y));
}

template <typename Real>
ExtrapolationResult polynomial_impl(std::span<const Real> xs, std::span<const Real> ys,
                                    Real x) {
  check_inputs(xs, ys);
  const std::size_t n = xs.size();
  std::vector<Real> c(ys.begin(), ys.end()), d(ys.begin(), ys.end());
  std::size_t ns = nearest_node(xs, x);
  Real y = ys[ns];
  if (n == 1) return {double(y), std::abs(double(y)), false};
  std::ptrdiff_t pick = static_cast<std::ptrdiff_t>(ns) - 1;
  Real dy = 0.0, prev_dy = 0.0;
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const Real ho = xs[i] - x;
      const Real hp = xs[i + m] - x;
      const Real w = c[i + 1] - d[i];
      const Real den = ho - hp;
      if (den == Real(0)) throw Error(Errc::invalid_params, "duplicate extrapolation nodes");
      const Real f = w / den;
      d[i] = hp * f;
      c[i] = ho * f;
    }
    prev_dy = dy;
    if (2 * static_cast<std::size_t>(pick + 1) < n - m) {
      dy = c[static_cast<std::size_t>(pick + 1)];
    } else {
      dy = d[static_cast<std::size_t>(pick)];
      --pick;
    }
    y += dy;
  }
  return {double(y), double(std::abs(dy)), diverged(n, y, dy, prev_dy)};
}

template <typename Real>
ExtrapolationResult rational_impl(std::span<const Real> xs, std::span<const Real> ys, Real x) {
  check_inputs(xs, ys);
  const std::size_t n = xs.size();
  constexpr Real tiny = 1e-300;  // keeps degenerate denominators from producing NaN
  std::vector<Real> c(ys.begin(), ys.end()), d(ys.begin(), ys.end());
  std::size_t ns = nearest_node(xs, x);
  if (xs[ns] == x) return {double(ys[ns]), 0.0, false};
  Real y = ys[ns];
  if (n == 1) return {double(y), std::abs(double(y)), false};
  std::ptrdiff_t pick = static_cast<std::ptrdiff_t>(ns) - 1;
  Real dy = 0.0, prev_dy = 0.0;
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const Real w = c[i + 1] - d[i];
      const Real h = xs[i + m] - x;
      const Real t = (xs[i] - x) * d[i] / h;
      Real dd = t - c[i + 1];
      if (dd == Real(0)) dd = tiny;
      dd = w / dd;
      d[i] = c[i + 1] * dd;
      c[i] = t * dd;
    }
    prev_dy = dy;
    if (2 * static_cast<std::size_t>(pick + 1) < n - m) {
      dy = c[static_cast<std::size_t>(pick + 1)];
    } else {
      dy = d[static_cast<std::size_t>(pick)];
      --pick;
    }
    y += dy;
  }
  return {double(y), double(std::abs(dy)), diverged(n, y, dy, prev_dy)};
}

}  // namespace

ExtrapolationResult extrapolate_polynomial(std::span<const double> xs,
                                           std::span<const double> ys, double x) {
  return polynomial_impl(xs, ys, x);
}

ExtrapolationResult extrapolate_rational(std::span<const double> xs,
                                         std::span<const double> ys, double x) {
  return rational_impl(xs, ys, x);
}

ExtrapolationResult extrapolate_polynomial_ext(std::span<const long double> xs,
                                               std::span<const long double> ys,
                                               long double x) {
  return polynomial_impl(xs, ys, x);
}

ExtrapolationResult extrapolate_rational_ext(std::span<const long double> xs,
                                             std::span<const long double> ys, long double x) {
  return rational_impl(xs, ys, x);
}

}  // namespace exactdiff
