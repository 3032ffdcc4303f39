#include "exactdiff/sine_integral.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include "exactdiff/error.hpp"

namespace exactdiff {
namespace {

constexpr double kPi = std::numbers::pi;

double si_maclaurin(double x) {
  // sum_k (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
  double term = x, total = x;
  for (int k = 1; k < 64; ++k) {
    term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
    const double add = term / (2.0 * k + 1.0);
    total += add;
    if (std::abs(add) < 1e-18 * std::abs(total)) break;
  }
  return total;
}

// Si(x) = pi/2 + Im E1(ix); E1 by the modified Lentz continued fraction.
double si_lentz(double x) {
  const std::complex<double> z(0.0, x);
  constexpr double tiny = 1e-300;
  std::complex<double> b = z + 1.0;
  std::complex<double> c = 1.0 / tiny;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i < 300; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const std::complex<double> e1 = h * std::exp(-z);
  return kPi / 2.0 + e1.imag();
}

// Auxiliary asymptotic series, truncated at the smallest term. Below x ~ 30
// the optimal-truncation floor exceeds 1e-12, hence the x >= 40 switch.
double si_asymptotic(double x) {
  const double x2 = x * x;
  double term = 1.0, f = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k) / x2;
    if (next >= term) break;
    term = next;
    f += (k % 2 == 0) ? term : -term;
  }
  f /= x;
  term = 1.0;
  double g = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double next = term * (2.0 * k) * (2.0 * k + 1.0) / x2;
    if (next >= term) break;
    term = next;
    g += (k % 2 == 0) ? term : -term;
  }
  g /= x2;
  return kPi / 2.0 - f * std::cos(x) - g * std::sin(x);
}

}  // namespace

double sine_integral(double x) {
  if (!(x >= 0.0)) throw Error(Errc::invalid_params, "sine_integral requires x >= 0");
  if (x <= 4.0) return si_maclaurin(x);
  if (x < 40.0) return si_lentz(x);
  return si_asymptotic(x);
}

std::shared_ptr<const std::vector<double>> si_kernel_table(std::size_t count) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<double>> cache;

  std::lock_guard lock(mu);
  if (cache && cache->size() >= count) return cache;

  std::size_t n = cache ? cache->size() : 1024;
  while (n < count) n *= 2;
  auto table = std::make_shared<std::vector<double>>(n);
  for (std::size_t k = 0; k < n; ++k)
    (*table)[k] = sine_integral(kPi * static_cast<double>(k + 1)) / kPi;
  cache = table;
  return cache;
}

}  // namespace exactdiff
