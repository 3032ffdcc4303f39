#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace exactdiff {

/// Si(x) = int_0^x sin(t)/t dt for x >= 0, absolute accuracy ~1e-15.
/// Maclaurin series for x <= 4, Lentz continued fraction for E1(ix) up to
/// x = 40, asymptotic auxiliary expansion beyond.
double sine_integral(double x);

/// Cached antidifference kernel: (*table)[k-1] = Si(pi*k)/pi for k = 1..count.
std::shared_ptr<const std::vector<double>> si_kernel_table(std::size_t count);

}  // namespace exactdiff
