#include "exactdiff/kernels.hpp"

#ifdef EXACTDIFF_BUILD_AVX2

#include <immintrin.h>

#include <cmath>

namespace exactdiff::kern {
namespace {

inline __m256d abs_pd(__m256d x) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(x, mask);
}

void exp_ray_axpy_avx2(double w, double a, double g, double* out, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d stepv = _mm256_set1_pd(std::exp(4.0 * g));
  __m256d v = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    if (i % reseed_stride == 0) {
      const double di = static_cast<double>(i);
      v = _mm256_set_pd(std::exp(a + (di + 3) * g), std::exp(a + (di + 2) * g),
                        std::exp(a + (di + 1) * g), std::exp(a + di * g));
    }
    __m256d o = _mm256_loadu_pd(out + i);
    o = _mm256_fmadd_pd(wv, v, o);
    _mm256_storeu_pd(out + i, o);
    v = _mm256_mul_pd(v, stepv);
  }
  for (std::size_t i = body; i < n; ++i)
    out[i] += w * std::exp(a + static_cast<double>(i) * g);
}

void osc_ray_axpy_avx2(double w, double a, double g, double phi, double dphi,
                       bool use_sin, double* out, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  const __m256d wv = _mm256_set1_pd(w);
  const double s4 = std::exp(4.0 * g);
  const __m256d cr = _mm256_set1_pd(s4 * std::cos(4.0 * dphi));
  const __m256d ci = _mm256_set1_pd(s4 * std::sin(4.0 * dphi));
  __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    if (i % reseed_stride == 0) {
      alignas(32) double rl[4], il[4];
      for (int l = 0; l < 4; ++l) {
        const double amp = std::exp(a + (static_cast<double>(i) + l) * g);
        const double ang = phi + (static_cast<double>(i) + l) * dphi;
        rl[l] = amp * std::cos(ang);
        il[l] = amp * std::sin(ang);
      }
      re = _mm256_load_pd(rl);
      im = _mm256_load_pd(il);
    }
    __m256d o = _mm256_loadu_pd(out + i);
    o = _mm256_fmadd_pd(wv, use_sin ? im : re, o);
    _mm256_storeu_pd(out + i, o);
    const __m256d re2 = _mm256_fmsub_pd(re, cr, _mm256_mul_pd(im, ci));
    im = _mm256_fmadd_pd(re, ci, _mm256_mul_pd(im, cr));
    re = re2;
  }
  for (std::size_t i = body; i < n; ++i) {
    const double amp = std::exp(a + static_cast<double>(i) * g);
    const double ang = phi + static_cast<double>(i) * dphi;
    out[i] += w * amp * (use_sin ? std::sin(ang) : std::cos(ang));
  }
}

void poly_ray_axpy_avx2(double w, double t0, double dt, int k, double a, double g,
                        double* out, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d t0v = _mm256_set1_pd(t0);
  const __m256d dtv = _mm256_set1_pd(dt);
  const __m256d stepv = _mm256_set1_pd(std::exp(4.0 * g));
  __m256d damp = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    if (i % reseed_stride == 0) {
      const double di = static_cast<double>(i);
      damp = _mm256_set_pd(std::exp(a + (di + 3) * g), std::exp(a + (di + 2) * g),
                           std::exp(a + (di + 1) * g), std::exp(a + di * g));
    }
    const double di = static_cast<double>(i);
    const __m256d idx = _mm256_set_pd(di + 3, di + 2, di + 1, di);
    const __m256d t = _mm256_fmadd_pd(idx, dtv, t0v);
    __m256d p = _mm256_set1_pd(1.0);
    __m256d b = t;
    int kk = k;
    while (kk > 0) {
      if (kk & 1) p = _mm256_mul_pd(p, b);
      b = _mm256_mul_pd(b, b);
      kk >>= 1;
    }
    __m256d o = _mm256_loadu_pd(out + i);
    o = _mm256_fmadd_pd(wv, _mm256_mul_pd(p, damp), o);
    _mm256_storeu_pd(out + i, o);
    damp = _mm256_mul_pd(damp, stepv);
  }
  for (std::size_t i = body; i < n; ++i) {
    const double t = std::fma(static_cast<double>(i), dt, t0);
    double p = 1.0, b = t;
    int kk = k;
    while (kk > 0) {
      if (kk & 1) p *= b;
      b *= b;
      kk >>= 1;
    }
    out[i] += w * p * std::exp(a + static_cast<double>(i) * g);
  }
}

void combine_terms_avx2(const double* coeff, const double* back, const double* fwd,
                        double parity, double* out, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  const __m256d pv = _mm256_set1_pd(parity);
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d c = _mm256_loadu_pd(coeff + i);
    const __m256d b = _mm256_loadu_pd(back + i);
    const __m256d f = _mm256_loadu_pd(fwd + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(c, _mm256_fmadd_pd(pv, f, b)));
  }
  for (std::size_t i = body; i < n; ++i)
    out[i] = coeff[i] * std::fma(parity, fwd[i], back[i]);
}

void mul_inplace_avx2(double* x, const double* y, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (std::size_t i = body; i < n; ++i) x[i] *= y[i];
}

double sum_compensated_avx2(const double* x, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d t = _mm256_add_pd(s, v);
    // per-lane Neumaier: pick the compensation branch by |s| >= |v|
    const __m256d big_s = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    const __m256d big_v = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    const __m256d mask = _mm256_cmp_pd(abs_pd(s), abs_pd(v), _CMP_GE_OQ);
    c = _mm256_add_pd(c, _mm256_blendv_pd(big_v, big_s, mask));
    s = t;
  }
  alignas(32) double sl[4], cl[4];
  _mm256_store_pd(sl, s);
  _mm256_store_pd(cl, c);
  double total = 0.0, comp = 0.0;
  auto fold = [&](double v) {
    const double t = total + v;
    if (std::abs(total) >= std::abs(v))
      comp += (total - t) + v;
    else
      comp += (v - t) + total;
    total = t;
  };
  for (int l = 0; l < 4; ++l) fold(sl[l]);
  for (int l = 0; l < 4; ++l) fold(cl[l]);
  for (std::size_t i = body; i < n; ++i) fold(x[i]);
  return total + comp;
}

}  // namespace

const Ops* avx2_ops_impl() {
  static const Ops ops{
      "avx2",
      &exp_ray_axpy_avx2,
      &osc_ray_axpy_avx2,
      &poly_ray_axpy_avx2,
      &combine_terms_avx2,
      &mul_inplace_avx2,
      &sum_compensated_avx2,
  };
  return &ops;
}

}  // namespace exactdiff::kern

#else

namespace exactdiff::kern {
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace exactdiff::kern

#endif
