#include "exactdiff/difference.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "exactdiff/difference_kernel.hpp"
#include "exactdiff/error.hpp"
#include "exactdiff/kernels.hpp"
#include "exactdiff/sine_integral.hpp"

namespace exactdiff {
namespace {

void check_signal_lattice(const LatticeSignal& x, const OperatorConfig& cfg) {
  if (!(x.lattice() == cfg.lattice))
    throw Error(Errc::invalid_params, "signal and operator config disagree on the lattice");
}

void check_aliasing(const LatticeSignal& x) {
  if (!(x.trig_rate_bound() < std::numbers::pi - 1e-12))
    throw Error(Errc::aliasing_bound,
                "trigonometric rate |lambda|*T must stay below pi for exactness");
}

// Terms of the exact-difference series:
//   a_m = M_n(m) * (X(base - m) + parity * X(base + m))
class DifferenceTermSource final : public TermSource {
public:
  DifferenceTermSource(const LatticeSignal& x, int order, std::int64_t base)
      : x_(x), order_(order), base_(base) {}

  void fill(std::uint64_t m_first, double log_damp, std::span<double> out) const override {
    const std::size_t len = out.size();
    std::vector<double> back(len), fwd(len);
    x_.fill_ray(base_, -1, m_first, log_damp, back);
    x_.fill_ray(base_, +1, m_first, log_damp, fwd);
    const auto table = kernel_table(order_, static_cast<std::size_t>(m_first) + len);
    const double parity = order_ % 2 == 0 ? 1.0 : -1.0;
    kern::active_ops().combine_terms(table->data() + m_first, back.data(), fwd.data(), parity,
                                     out.data(), len);
  }

  long double term_scaled_ext(std::uint64_t m, long double log_damp) const override {
    // undamped signal values stay in range here: the growth guard caps
    // ln(rho) at 1.1 and the Abel stop rule settles well before e^{1.1 m}
    // can overflow the extended format
    const long double parity = order_ % 2 == 0 ? 1.0L : -1.0L;
    const auto mi = static_cast<std::int64_t>(m);
    const long double pair =
        x_.value_ext(base_ - mi) + parity * x_.value_ext(base_ + mi);
    return kernel_coefficient_ext(order_, m) * pair *
           std::exp(static_cast<long double>(m) * log_damp);
  }

  std::optional<double> growth_hint() const override { return x_.growth_hint(); }

private:
  const LatticeSignal& x_;
  int order_;
  std::int64_t base_;
};

// Terms of the antidifference series:
//   a_k = (Si(pi k)/pi) * (I(base - k) - I(base + k))
class AntidifferenceTermSource final : public TermSource {
public:
  AntidifferenceTermSource(const LatticeSignal& i, std::int64_t base) : i_(i), base_(base) {}

  void fill(std::uint64_t m_first, double log_damp, std::span<double> out) const override {
    const std::size_t len = out.size();
    std::vector<double> back(len), fwd(len);
    i_.fill_ray(base_, -1, m_first, log_damp, back);
    i_.fill_ray(base_, +1, m_first, log_damp, fwd);
    const auto table = si_kernel_table(static_cast<std::size_t>(m_first) + len);
    // table[k-1] = Si(pi k)/pi
    kern::active_ops().combine_terms(table->data() + (m_first - 1), back.data(), fwd.data(),
                                     -1.0, out.data(), len);
  }

  long double term_scaled_ext(std::uint64_t m, long double log_damp) const override {
    const auto table = si_kernel_table(static_cast<std::size_t>(m));
    const auto mi = static_cast<std::int64_t>(m);
    const long double pair = i_.value_ext(base_ - mi) - i_.value_ext(base_ + mi);
    return static_cast<long double>((*table)[m - 1]) * pair *
           std::exp(static_cast<long double>(m) * log_damp);
  }

  std::optional<double> growth_hint() const override { return i_.growth_hint(); }

private:
  const LatticeSignal& i_;
  std::int64_t base_;
};

}  // namespace

void OperatorConfig::validate() const {
  lattice.validate();
  summation.validate();
}

double backward_difference(const LatticeSignal& x, std::int64_t n) {
  return x.value(n) - x.value(n - 1);
}

double forward_difference(const LatticeSignal& x, std::int64_t n) {
  return x.value(n + 1) - x.value(n);
}

double leibniz_violation(const LatticeSignal& x1, const LatticeSignal& x2, std::int64_t n) {
  const double p = x1.value(n) * x2.value(n);
  const double p_prev = x1.value(n - 1) * x2.value(n - 1);
  const double d1 = backward_difference(x1, n);
  const double d2 = backward_difference(x2, n);
  return (p - p_prev) - (d1 * x2.value(n) + x1.value(n) * d2);
}

double nonstandard_product_identity_residual(const LatticeSignal& x1, const LatticeSignal& x2,
                                             std::int64_t n) {
  const double d1 = backward_difference(x1, n);
  const double d2 = backward_difference(x2, n);
  return leibniz_violation(x1, x2, n) + d1 * d2;
}

SummationReport exact_difference(const LatticeSignal& x, int order, std::int64_t n,
                                 const OperatorConfig& cfg) {
  cfg.validate();
  check_signal_lattice(x, cfg);
  check_aliasing(x);
  if (order < 1 || order > max_difference_order)
    throw Error(Errc::unsupported_order, "exact_difference supports orders 1..4");

  DifferenceTermSource src(x, order, n);
  SummationReport rep = auto_sum(src, cfg.summation);

  const double scale = std::pow(cfg.lattice.step, -order);
  rep.value = (rep.value + kernel_coefficient(order, 0) * x.value(n)) * scale;
  rep.abs_error_estimate *= std::abs(scale);
  return rep;
}

SummationReport exact_difference_by_recurrence(const LatticeSignal& x, int order,
                                               std::int64_t n, const OperatorConfig& cfg) {
  if (order < 2 || order > 3)
    throw Error(Errc::unsupported_order, "recurrence path supports orders 2..3");
  cfg.validate();
  check_signal_lattice(x, cfg);

  // inner evaluations pay a full series per lattice point; cap their budget
  OperatorConfig inner_cfg = cfg;
  inner_cfg.summation.max_terms = std::min<std::size_t>(cfg.summation.max_terms, 20000);

  std::shared_ptr<const LatticeSignal> chain(&x, [](const LatticeSignal*) {});
  std::vector<std::shared_ptr<ExactDifferenceSignal>> inner;
  for (int k = 1; k < order; ++k) {
    auto wrapped = std::make_shared<ExactDifferenceSignal>(chain, 1, inner_cfg);
    inner.push_back(wrapped);
    chain = wrapped;
  }

  SummationReport rep = exact_difference(*chain, 1, n, cfg);
  // propagate inner error estimates through the outer kernel weights
  double inner_err = 0.0;
  for (const auto& sig : inner) inner_err = std::max(inner_err, sig->worst_inner_error());
  const double harmonic = std::log(static_cast<double>(std::max<std::size_t>(rep.terms_used, 2)));
  rep.abs_error_estimate += inner_err * 2.0 * (harmonic + 1.0) / cfg.lattice.step;
  return rep;
}

SummationReport exact_antidifference(const LatticeSignal& i, std::int64_t n,
                                     const OperatorConfig& cfg, double base_value) {
  cfg.validate();
  check_signal_lattice(i, cfg);
  check_aliasing(i);

  AntidifferenceTermSource src(i, n);
  SummationReport rep = auto_sum(src, cfg.summation);

  rep.value = base_value + cfg.lattice.step * rep.value;
  rep.abs_error_estimate *= cfg.lattice.step;
  return rep;
}

ExactDifferenceSignal::ExactDifferenceSignal(std::shared_ptr<const LatticeSignal> base,
                                             int order, OperatorConfig cfg)
    : base_(std::move(base)), order_(order), cfg_(std::move(cfg)) {
  if (!base_) throw Error(Errc::invalid_params, "null base signal");
}

double ExactDifferenceSignal::value(std::int64_t n) const {
  {
    std::lock_guard lock(mu_);
    if (const auto it = memo_.find(n); it != memo_.end()) return it->second;
  }
  const SummationReport rep = exact_difference(*base_, order_, n, cfg_);
  std::lock_guard lock(mu_);
  memo_.emplace(n, rep.value);
  worst_err_ = std::max(worst_err_, rep.abs_error_estimate);
  return rep.value;
}

double ExactDifferenceSignal::worst_inner_error() const {
  std::lock_guard lock(mu_);
  return worst_err_;
}

AntidifferenceSignal::AntidifferenceSignal(std::shared_ptr<const LatticeSignal> base,
                                           OperatorConfig cfg, double base_value)
    : base_(std::move(base)), cfg_(std::move(cfg)), base_value_(base_value) {
  if (!base_) throw Error(Errc::invalid_params, "null base signal");
}

double AntidifferenceSignal::value(std::int64_t n) const {
  {
    std::lock_guard lock(mu_);
    if (const auto it = memo_.find(n); it != memo_.end()) return it->second;
  }
  const SummationReport rep = exact_antidifference(*base_, n, cfg_, base_value_);
  std::lock_guard lock(mu_);
  memo_.emplace(n, rep.value);
  worst_err_ = std::max(worst_err_, rep.abs_error_estimate);
  return rep.value;
}

double AntidifferenceSignal::worst_inner_error() const {
  std::lock_guard lock(mu_);
  return worst_err_;
}

}  // namespace exactdiff
