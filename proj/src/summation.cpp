#include "exactdiff/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

#include "exactdiff/error.hpp"
#include "exactdiff/extrapolation.hpp"
#include "exactdiff/kernels.hpp"

namespace exactdiff {
namespace {

constexpr std::size_t kBlock = 1024;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// ln(growth_hint) beyond which no usable Abel radius remains (spec guard:
// exponential rates with lambda*T > 1.1 are refused).
constexpr double kMaxLogGrowth = 1.1 + 1e-9;

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double total() const { return sum + comp; }
};

}  // namespace

const char* to_string(SummationMethod m) noexcept {
  switch (m) {
    case SummationMethod::direct: return "direct";
    case SummationMethod::cesaro: return "cesaro";
    case SummationMethod::abel: return "abel";
  }
  return "?";
}

void SummationSpec::validate() const {
  if (max_terms < 16) throw Error(Errc::invalid_params, "max_terms must be >= 16");
  if (!(rel_tol > 0.0)) throw Error(Errc::invalid_params, "rel_tol must be positive");
  if (method == SummationMethod::cesaro && (cesaro_order < 1 || cesaro_order > 8))
    throw Error(Errc::invalid_params, "cesaro_order must be in 1..8");
  double prev = 0.0;
  for (double r : abel_radii) {
    if (!(r > 0.0 && r < 1.0)) throw Error(Errc::invalid_params, "abel radius outside (0,1)");
    if (!(r > prev)) throw Error(Errc::invalid_params, "abel radii must be strictly increasing");
    prev = r;
  }
}

double TermSource::term_at(std::uint64_t m) const {
  double v = 0.0;
  fill(m, 0.0, {&v, 1});
  return v;
}

long double TermSource::term_scaled_ext(std::uint64_t m, long double log_damp) const {
  double v = 0.0;
  fill(m, static_cast<double>(log_damp), {&v, 1});
  return v;
}

void FunctionTermSource::fill(std::uint64_t m_first, double log_damp,
                              std::span<double> out) const {
  if (log_damp == 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f_(m_first + i);
    return;
  }
  double damp = 0.0;
  const double step = std::exp(log_damp);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % kern::reseed_stride == 0)
      damp = std::exp(static_cast<double>(m_first + i) * log_damp);
    out[i] = f_(m_first + i) * damp;
    damp *= step;
  }
}

double abel_radius_cap(std::optional<double> growth_hint) {
  double cap = 0.97;
  if (growth_hint && *growth_hint > 1.0) cap = std::min(cap, 0.9 / *growth_hint);
  return cap;
}

std::vector<double> default_abel_radii(std::optional<double> growth_hint) {
  const double cap = abel_radius_cap(growth_hint);
  const double lo = 0.30 * cap;
  constexpr int n = 12;
  std::vector<double> radii(n);
  for (int j = 0; j < n; ++j) {
    const double theta = std::numbers::pi * (2.0 * j + 1.0) / (2.0 * n);
    radii[j] = 0.5 * (lo + cap) + 0.5 * (cap - lo) * std::cos(theta);
  }
  std::sort(radii.begin(), radii.end());
  return radii;
}

// ------------------------------------------------------------------ direct

SummationReport direct_sum(const TermSource& src, const SummationSpec& spec) {
  spec.validate();
  if (spec.method != SummationMethod::direct)
    throw Error(Errc::invalid_params, "direct_sum requires method == direct");

  const auto& ops = kern::active_ops();
  const std::size_t budget = spec.max_terms;
  // checkpoint once per window; ~64 windows across the budget
  const std::size_t window =
      std::max<std::size_t>(kBlock, (budget / 64 + kBlock - 1) / kBlock * kBlock);

  double buf[kBlock];
  Neumaier acc;
  std::vector<double> cp_sum;       // partial sum at each window boundary
  std::vector<double> cp_max_term;  // largest |a_m| inside the window
  double win_max = 0.0;
  std::uint64_t consumed = 0;

  while (consumed < budget) {
    const std::size_t len = static_cast<std::size_t>(
        std::min<std::uint64_t>(kBlock, budget - consumed));
    src.fill(consumed + 1, 0.0, {buf, len});
    for (std::size_t i = 0; i < len; ++i) {
      const double a = buf[i];
      if (!std::isfinite(a) || std::abs(a) > 1e280)
        throw Error(Errc::non_convergent, "series terms overflow; regularization required");
      win_max = std::max(win_max, std::abs(a));
    }
    acc.add(ops.sum_compensated(buf, len));
    consumed += len;

    if (consumed % window == 0 || consumed == budget) {
      cp_sum.push_back(acc.total());
      cp_max_term.push_back(win_max);
      win_max = 0.0;
      const std::size_t k = cp_sum.size();
      if (k >= 3) {
        const double s = cp_sum[k - 1];
        const double tol = spec.rel_tol * std::max(1.0, std::abs(s));
        const double d1 = std::abs(cp_sum[k - 1] - cp_sum[k - 2]);
        const double d2 = std::abs(cp_sum[k - 2] - cp_sum[k - 3]);
        // stabilized partial sums alone are not enough: a period-2
        // oscillation returns to the same value at every even checkpoint,
        // so the terms themselves must have decayed as well
        if (d1 <= tol && d2 <= tol && cp_max_term[k - 1] <= tol) {
          SummationReport rep;
          rep.value = s;
          rep.abs_error_estimate =
              std::max(std::abs(cp_sum[k - 1] - cp_sum[k - 3]), 4.0 * kEps * std::abs(s));
          rep.terms_used = consumed;
          rep.method_used = SummationMethod::direct;
          rep.converged = true;
          return rep;
        }
      }
      // geometric blow-up bail: term magnitudes rising window over window
      const std::size_t k2 = cp_max_term.size();
      if (k2 >= 6) {
        bool growing = true;
        for (std::size_t i = k2 - 5; i < k2; ++i)
          growing = growing && cp_max_term[i] > 1.5 * cp_max_term[i - 1];
        if (growing && cp_max_term[k2 - 1] > 1e6 * (1.0 + std::abs(acc.total())))
          throw Error(Errc::non_convergent, "series terms grow geometrically");
      }
    }
  }

  // budget exhausted without stabilization: decide between "slowly
  // converging" (report, not converged) and NON_CONVERGENT
  const std::size_t k = cp_sum.size();
  const std::size_t q = std::max<std::size_t>(2, k / 4);  // final-quarter checkpoints
  bool magnitude_growing = true;
  double d_first = 0.0, d_last = 0.0;
  for (std::size_t i = k - q; i < k; ++i) {
    if (std::abs(cp_sum[i]) <= std::abs(cp_sum[i - 1])) magnitude_growing = false;
    const double d = std::abs(cp_sum[i] - cp_sum[i - 1]);
    if (i == k - q) d_first = d;
    d_last = d;
  }
  if (magnitude_growing)
    throw Error(Errc::non_convergent,
                "partial sums grow monotonically over the final quarter of the budget");
  const bool shrinking = d_last < 0.7 * d_first;
  if (!shrinking)
    throw Error(Errc::non_convergent, "partial sums do not stabilize within the budget");

  SummationReport rep;
  rep.value = acc.total();
  rep.abs_error_estimate = d_last + std::abs(cp_sum[k - 1] - cp_sum[k - q]);
  rep.terms_used = consumed;
  rep.method_used = SummationMethod::direct;
  rep.converged = false;
  return rep;
}

// ------------------------------------------------------------------ cesaro

namespace {

// Even-valued checkpoints at ~sqrt(2) spacing from m downward.
std::vector<std::size_t> ladder_checkpoints(std::size_t m) {
  std::vector<std::size_t> js;
  double x = static_cast<double>(m);
  while (js.size() < 7) {
    auto j = static_cast<std::size_t>(x);
    j -= j % 2;
    if (j < 32) break;
    js.push_back(j);
    x /= std::numbers::sqrt2;
  }
  return js;
}

// One delayed-mean pass: out[j] = mean of in over the trailing window
// (j - w, j], w = floor(j/2) forced even. Windows and checkpoints of even
// length cancel period-2 parity patterns exactly.
void delayed_mean_pass(const std::vector<double>& in, std::vector<double>& prefix,
                       std::vector<double>& out) {
  const std::size_t m = in.size();
  prefix.resize(m + 1);
  prefix[0] = 0.0;
  for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] + in[j];
  out.resize(m);
  for (std::size_t j = 1; j <= m; ++j) {
    std::size_t w = j / 2;
    w -= w % 2;
    w = std::max<std::size_t>(w, 1);
    out[j - 1] = (prefix[j] - prefix[j - w]) / static_cast<double>(w);
  }
}

// Full-range iterated-mean pass (classical Cesaro): out[j] = (1/j) sum in[1..j].
void full_mean_pass(const std::vector<double>& in, std::vector<double>& out) {
  const std::size_t m = in.size();
  out.resize(m);
  double run = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    run += in[j];
    out[j] = run / static_cast<double>(j + 1);
  }
}

}  // namespace

SummationReport cesaro_sum(const TermSource& src, const SummationSpec& spec) {
  spec.validate();
  if (spec.method != SummationMethod::cesaro)
    throw Error(Errc::invalid_params, "cesaro_sum requires method == cesaro");
  const int order = spec.cesaro_order;

  std::vector<double> terms;
  std::vector<double> partial;  // S_j
  Neumaier acc;
  std::vector<double> level, next, prefix, full;

  std::size_t stage = std::min<std::size_t>(spec.max_terms, 4096);
  for (;;) {
    // extend the materialized term/partial-sum buffers to `stage`
    const std::size_t old = terms.size();
    terms.resize(stage);
    double* dst = terms.data() + old;
    for (std::size_t done = old; done < stage; done += kBlock) {
      const std::size_t len = std::min(kBlock, stage - done);
      src.fill(done + 1, 0.0, {dst + (done - old), len});
    }
    partial.resize(stage);
    for (std::size_t j = old; j < stage; ++j) {
      if (!std::isfinite(terms[j]) || std::abs(terms[j]) > 1e280)
        throw Error(Errc::non_convergent, "series terms overflow; use Abel summation");
      acc.add(terms[j]);
      partial[j] = acc.total();
    }

    const auto js = ladder_checkpoints(stage);
    if (js.size() >= 3) {
      level = partial;
      for (int l = 0; l < order; ++l) {
        delayed_mean_pass(level, prefix, next);
        level.swap(next);
      }
      const double v = level[js[0] - 1];
      const double d01 = std::abs(level[js[0] - 1] - level[js[1] - 1]);
      const double d12 = std::abs(level[js[1] - 1] - level[js[2] - 1]);
      const double err = d01 + d12 + 8.0 * kEps * std::abs(v);
      const double tol = spec.rel_tol * std::max(1.0, std::abs(v));
      // even windows cancel period-2 patterns exactly, which can hide an
      // odd/even oscillation of the means themselves; the adjacent odd index
      // must agree or the sequence is not (C,k)-convergent
      const double parity_gap = std::abs(level[js[0] - 1] - level[js[0] - 2]);

      if (std::isfinite(v) && err <= tol && parity_gap <= std::max(4.0 * err, tol)) {
        // consistency safeguard: the delayed-mean ladder can phase-lock on
        // series that are not (C,order)-summable; compare against the
        // classical full-range means before trusting it
        full = partial;
        for (int l = 0; l < order; ++l) {
          full_mean_pass(full, next);
          full.swap(next);
        }
        const double f1 = full[js[0] - 1];
        const double f2 = full[js[0] / 2 - 1];
        const bool consistent = std::abs(v - f1) <= 10.0 * std::abs(f1 - f2) + tol;
        if (consistent) {
          SummationReport rep;
          rep.value = v;
          rep.abs_error_estimate = err;
          rep.terms_used = stage;
          rep.method_used = SummationMethod::cesaro;
          rep.cesaro_order_used = order;
          rep.converged = true;
          return rep;
        }
        throw Error(Errc::non_convergent,
                    "(C,k) delayed means disagree with full-range means; raise k or use Abel");
      }
    }

    if (stage >= spec.max_terms) break;
    stage = std::min(spec.max_terms, stage * 4);
  }
  throw Error(Errc::non_convergent, "(C,k) means still drift at budget exhaustion");
}

// -------------------------------------------------------------------- abel

SummationReport abel_sum(const TermSource& src, const SummationSpec& spec) {
  spec.validate();
  if (spec.method != SummationMethod::abel)
    throw Error(Errc::invalid_params, "abel_sum requires method == abel");

  const std::optional<double> hint = src.growth_hint();
  if (hint && std::log(*hint) > kMaxLogGrowth)
    throw Error(Errc::radius_infeasible,
                "growth hint leaves no usable Abel radius (ln rho > 1.1)");

  std::vector<double> radii = spec.abel_radii;
  if (radii.empty()) {
    radii = default_abel_radii(hint);
  } else if (hint) {
    for (double r : radii)
      if (r * *hint >= 1.0)
        throw Error(Errc::radius_infeasible, "scheduled radius outside the convergence disc");
  }

  // node sums and the extrapolation table run in the widest native format:
  // extrapolating to r = 1 from radii capped at 0.9/rho amplifies rounding
  // by many orders of magnitude, and extended precision recovers the
  // truncation-limited accuracy
  constexpr long double eps_ext = std::numeric_limits<long double>::epsilon();
  std::vector<long double> xs(radii.begin(), radii.end());
  std::vector<long double> ys(radii.size());
  std::size_t total_terms = 0;

  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const long double log_damp = std::log(static_cast<long double>(radii[ri]));
    long double sum = 0.0L, comp = 0.0L;
    std::uint64_t consumed = 0;
    int small_streak = 0;
    while (consumed < spec.max_terms) {
      const long double a = src.term_scaled_ext(consumed + 1, log_damp);
      if (!std::isfinite(static_cast<double>(a)))
        throw Error(Errc::non_convergent, "damped series terms are not finite");
      const long double t = sum + a;
      if (std::abs(sum) >= std::abs(a))
        comp += (sum - t) + a;
      else
        comp += (a - t) + sum;
      sum = t;
      ++consumed;
      if (consumed >= 48 && std::abs(a) <= 0.25L * eps_ext * std::abs(sum + comp)) {
        if (++small_streak >= 8) break;
      } else {
        small_streak = 0;
      }
    }
    ys[ri] = sum + comp;
    total_terms += consumed;
  }

  const ExtrapolationResult res = spec.abel_extrapolation == AbelExtrapolation::rational
                                      ? extrapolate_rational_ext(xs, ys, 1.0L)
                                      : extrapolate_polynomial_ext(xs, ys, 1.0L);
  // a last-column jump that stays inside the requested tolerance band is
  // noise wobble on an already-collapsed table, not divergence
  const bool material =
      res.abs_error > spec.rel_tol * std::max(1.0, std::abs(res.value));
  if ((res.unstable && material) || !std::isfinite(res.value))
    throw Error(Errc::extrapolation_unstable, "extrapolation table diverges towards r = 1");

  SummationReport rep;
  rep.value = res.value;
  rep.abs_error_estimate = res.abs_error + 4.0 * kEps * (1.0 + std::abs(res.value));
  rep.terms_used = total_terms;
  rep.method_used = SummationMethod::abel;
  rep.converged = rep.abs_error_estimate <= spec.rel_tol * std::max(1.0, std::abs(rep.value));
  return rep;
}

// -------------------------------------------------------------------- auto

SummationReport auto_sum(const TermSource& src, SummationSpec spec) {
  const std::optional<double> hint = src.growth_hint();
  const bool bounded = !hint || *hint <= 1.0 + 1e-9;
  if (bounded) {
    spec.method = SummationMethod::direct;
    try {
      SummationReport rep = direct_sum(src, spec);
      if (rep.converged) return rep;
    } catch (const Error& e) {
      if (e.code() != Errc::non_convergent) throw;
    }
    spec.method = SummationMethod::cesaro;
    spec.cesaro_order = std::max(spec.cesaro_order, 2);
    try {
      return cesaro_sum(src, spec);
    } catch (const Error& e) {
      if (e.code() != Errc::non_convergent) throw;
    }
  }
  spec.method = SummationMethod::abel;
  return abel_sum(src, spec);
}

}  // namespace exactdiff
