#include "exactdiff/difference_kernel.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "exactdiff/error.hpp"

namespace exactdiff {
namespace {

constexpr double kPi = std::numbers::pi;

void check_order(int order) {
  if (order < 1 || order > max_difference_order)
    throw Error(Errc::unsupported_order,
                "exact-difference order must be in 1.." + std::to_string(max_difference_order));
}

// cos(pi n/2), sin(pi n/2) as exact integers; the float versions carry ~1e-16
// residue that would leak pi^n * m sized junk into the kernel.
int cos_half_pi(int n) {
  switch (n & 3) {
    case 0: return 1;
    case 2: return -1;
    default: return 0;
  }
}

int sin_half_pi(int n) {
  switch (n & 3) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
  }
}

}  // namespace

double kernel_coefficient(int order, std::uint64_t m) {
  check_order(order);
  if (m == 0) {
    switch (order) {
      case 1: return 0.0;
      case 2: return -kPi * kPi / 3.0;
      case 3: return 0.0;
      case 4: return kPi * kPi * kPi * kPi / 5.0;
    }
  }
  const double md = static_cast<double>(m);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  switch (order) {
    case 1: return sign / md;
    case 2: return -2.0 * sign / (md * md);
    case 3: return sign * (-kPi * kPi / md + 6.0 / (md * md * md));
    case 4: return sign * (4.0 * kPi * kPi / (md * md) - 24.0 / (md * md * md * md));
  }
  return 0.0;  // unreachable
}

long double kernel_coefficient_ext(int order, std::uint64_t m) {
  check_order(order);
  constexpr long double pi = std::numbers::pi_v<long double>;
  if (m == 0) {
    switch (order) {
      case 1: return 0.0L;
      case 2: return -pi * pi / 3.0L;
      case 3: return 0.0L;
      case 4: return pi * pi * pi * pi / 5.0L;
    }
  }
  const long double md = static_cast<long double>(m);
  const long double sign = (m % 2 == 0) ? 1.0L : -1.0L;
  switch (order) {
    case 1: return sign / md;
    case 2: return -2.0L * sign / (md * md);
    case 3: return sign * (-pi * pi / md + 6.0L / (md * md * md));
    case 4: return sign * (4.0L * pi * pi / (md * md) - 24.0L / (md * md * md * md));
  }
  return 0.0L;  // unreachable
}

double kernel_coefficient_generic(int order, std::uint64_t m) {
  check_order(order);
  const int n = order;
  if (m == 0) return std::pow(kPi, n) * cos_half_pi(n) / (n + 1);
  const double md = static_cast<double>(m);
  const double msign = (m % 2 == 0) ? 1.0 : -1.0;
  double total = 0.0;
  for (int k = 0; k <= (n + 1) / 2 + 1; ++k) {
    const int gamma_arg = n - 2 * k + 1;
    if (gamma_arg <= 0) continue;  // 1/Gamma(nonpositive integer) = 0
    const double ksign = (k % 2 == 0) ? 1.0 : -1.0;
    const double bracket =
        (n - 2 * k) * cos_half_pi(n) + kPi * md * sin_half_pi(n);
    total += msign * ksign * std::tgamma(n + 1.0) * std::pow(kPi, n - 2 * k - 2) /
             (std::tgamma(static_cast<double>(gamma_arg)) * std::pow(md, 2 * k + 2)) * bracket;
  }
  return total;
}

std::shared_ptr<const std::vector<double>> kernel_table(int order, std::size_t count) {
  check_order(order);
  static std::mutex mu;
  static std::array<std::shared_ptr<const std::vector<double>>, max_difference_order + 1> cache;

  std::lock_guard lock(mu);
  auto& slot = cache[static_cast<std::size_t>(order)];
  if (slot && slot->size() >= count) return slot;

  std::size_t n = slot ? slot->size() : 1024;
  while (n < count) n *= 2;
  auto table = std::make_shared<std::vector<double>>(n);
  for (std::size_t m = 0; m < n; ++m)
    (*table)[m] = kernel_coefficient(order, static_cast<std::uint64_t>(m));
  slot = table;
  return slot;
}

}  // namespace exactdiff
