#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the series engine: ray generation along the
// lattice tails, damped term assembly, and compensated reduction. Scalar
// reference implementations plus AVX2 variants selected once at startup
// (override with EXACTDIFF_SIMD=scalar|avx2|auto). Recurrence-based fills
// reseed from libm every `reseed_stride` elements, so the scalar and SIMD
// paths track each other to a few ulps over arbitrarily long rays; the
// equivalence tests pin that down.

namespace exactdiff::kern {

inline constexpr std::size_t reseed_stride = 512;

struct Ops {
  const char* name;

  // out[i] += w * exp(a + i*g)
  void (*exp_ray_axpy)(double w, double a, double g, double* out, std::size_t n);

  // out[i] += w * exp(a + i*g) * {sin|cos}(phi + i*dphi)
  void (*osc_ray_axpy)(double w, double a, double g, double phi, double dphi,
                       bool use_sin, double* out, std::size_t n);

  // out[i] += w * (t0 + i*dt)^k * exp(a + i*g), 0 <= k <= 8
  void (*poly_ray_axpy)(double w, double t0, double dt, int k, double a, double g,
                        double* out, std::size_t n);

  // out[i] = coeff[i] * fma(parity, fwd[i], back[i])
  void (*combine_terms)(const double* coeff, const double* back, const double* fwd,
                        double parity, double* out, std::size_t n);

  // x[i] *= y[i]
  void (*mul_inplace)(double* x, const double* y, std::size_t n);

  // Neumaier-compensated sum of x[0..n)
  double (*sum_compensated)(const double* x, std::size_t n);
};

const Ops& scalar_ops();
const Ops& active_ops();

bool avx2_available() noexcept;

}  // namespace exactdiff::kern
