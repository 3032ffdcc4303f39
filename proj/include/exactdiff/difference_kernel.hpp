#pragma once

#include <cstdint>
#include <memory>
#include <vector>

// Order-n coefficient family M_n(m) of the exact difference operator:
//   M_n(0) = pi^n cos(pi n/2)/(n+1)
//   M_n(m) = sum_k (-1)^{m+k} Gamma(n+1) pi^{n-2k-2} / (Gamma(n-2k+1) m^{2k+2})
//              * ((n-2k) cos(pi n/2) + pi m sin(pi n/2)),  m >= 1
// with 1/Gamma(nonpositive integer) = 0. Orders above 4 are refused: the
// generic formula is implemented but only validated where an independent
// oracle exists.

namespace exactdiff {

inline constexpr int max_difference_order = 4;

/// M_n(m) via the closed forms the finite sum collapses to for n <= 4.
/// Throws Error(unsupported_order) for n outside 1..4.
double kernel_coefficient(int order, std::uint64_t m);

/// M_n(m) in the widest native format (Abel node precision).
long double kernel_coefficient_ext(int order, std::uint64_t m);

/// M_n(m) evaluated term by term from the defining finite sum (the slow,
/// structure-faithful route; kept as the cross-check oracle target).
double kernel_coefficient_generic(int order, std::uint64_t m);

/// Cached coefficient table: (*table)[m] = M_n(m) for m = 0..count-1.
std::shared_ptr<const std::vector<double>> kernel_table(int order, std::size_t count);

/// Coefficient family descriptor (order, parity of the forward-shift term).
struct DifferenceKernel {
  int order;
  double parity() const { return order % 2 == 0 ? 1.0 : -1.0; }
  double coefficient(std::uint64_t m) const { return kernel_coefficient(order, m); }
};

}  // namespace exactdiff
