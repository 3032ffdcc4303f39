#include "exactdiff/kernels.hpp"

#include <cmath>

namespace exactdiff::kern {
namespace {

// Small integer power by repeated squaring; k <= 8 in practice.
inline double pow_small(double x, int k) {
  double p = 1.0, b = x;
  while (k > 0) {
    if (k & 1) p *= b;
    b *= b;
    k >>= 1;
  }
  return p;
}

void exp_ray_axpy_scalar(double w, double a, double g, double* out, std::size_t n) {
  const double step = std::exp(g);
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % reseed_stride == 0) v = std::exp(a + static_cast<double>(i) * g);
    out[i] += w * v;
    v *= step;
  }
}

void osc_ray_axpy_scalar(double w, double a, double g, double phi, double dphi,
                         bool use_sin, double* out, std::size_t n) {
  const double step = std::exp(g);
  const double cr = std::cos(dphi), ci = std::sin(dphi);
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % reseed_stride == 0) {
      const double amp = std::exp(a + static_cast<double>(i) * g);
      const double ang = phi + static_cast<double>(i) * dphi;
      re = amp * std::cos(ang);
      im = amp * std::sin(ang);
    }
    out[i] += w * (use_sin ? im : re);
    const double re2 = re * cr - im * ci;
    im = (re * ci + im * cr) * step;
    re = re2 * step;
  }
}

void poly_ray_axpy_scalar(double w, double t0, double dt, int k, double a, double g,
                          double* out, std::size_t n) {
  const double step = std::exp(g);
  double damp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % reseed_stride == 0) damp = std::exp(a + static_cast<double>(i) * g);
    const double t = std::fma(static_cast<double>(i), dt, t0);
    out[i] += w * pow_small(t, k) * damp;
    damp *= step;
  }
}

void combine_terms_scalar(const double* coeff, const double* back, const double* fwd,
                          double parity, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = coeff[i] * std::fma(parity, fwd[i], back[i]);
}

void mul_inplace_scalar(double* x, const double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= y[i];
}

double sum_compensated_scalar(const double* x, std::size_t n) {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = s + x[i];
    if (std::abs(s) >= std::abs(x[i]))
      c += (s - t) + x[i];
    else
      c += (x[i] - t) + s;
    s = t;
  }
  return s + c;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{
      "scalar",
      &exp_ray_axpy_scalar,
      &osc_ray_axpy_scalar,
      &poly_ray_axpy_scalar,
      &combine_terms_scalar,
      &mul_inplace_scalar,
      &sum_compensated_scalar,
  };
  return ops;
}

}  // namespace exactdiff::kern
