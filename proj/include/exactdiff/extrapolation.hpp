#pragma once

#include <span>

namespace exactdiff {

struct ExtrapolationResult {
  double value = 0.0;
  double abs_error = 0.0;  // magnitude of the last tableau correction
  bool unstable = false;   // last correction grew by more than 10x over the previous one
};

/// Neville polynomial interpolation through (xs, ys), evaluated at x.
ExtrapolationResult extrapolate_polynomial(std::span<const double> xs,
                                           std::span<const double> ys, double x);

/// Bulirsch-Stoer diagonal rational interpolation through (xs, ys), evaluated at x.
ExtrapolationResult extrapolate_rational(std::span<const double> xs,
                                         std::span<const double> ys, double x);

// Extended-precision variants: the Abel tables extrapolate a fair distance
// past the sampled radii, which amplifies tableau rounding by many orders of
// magnitude; carrying the table in the widest native format recovers the
// truncation-limited accuracy.
ExtrapolationResult extrapolate_polynomial_ext(std::span<const long double> xs,
                                               std::span<const long double> ys, long double x);
ExtrapolationResult extrapolate_rational_ext(std::span<const long double> xs,
                                             std::span<const long double> ys, long double x);

}  // namespace exactdiff
