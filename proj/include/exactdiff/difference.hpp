#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "exactdiff/signal.hpp"
#include "exactdiff/summation.hpp"

// Standard (backward/forward) one-step differences and the exact operators:
// the order-n exact difference
//   Delta_T^n X(t) = (1/T^n) [ sum_{m>=1} M_n(m) (X(t-Tm) + (-1)^n X(t+Tm))
//                              + M_n(0) X(t) ]
// and the exact antidifference with sine-integral kernel
//   Delta_T^{-1} I(t) = base + T sum_{k>=1} (Si(pi k)/pi) (I(t-Tk) - I(t+Tk)).
// The 1/T^n (resp. T) factor is the per-step normalization that makes the
// operator agree with d^n/dt^n for every lattice step, not only T = 1.
// Series are evaluated through the summation engine with automatic
// DIRECT -> CESARO(2) -> ABEL escalation.

namespace exactdiff {

struct OperatorConfig {
  Lattice lattice{1.0};
  SummationSpec summation{};

  void validate() const;
};

/// Y(n) - Y(n-1); unit step in lattice index.
double backward_difference(const LatticeSignal& x, std::int64_t n);

/// Y(n+1) - Y(n).
double forward_difference(const LatticeSignal& x, std::int64_t n);

/// D(x1*x2) - [D(x1)*x2 + x1*D(x2)] with D the backward difference;
/// equals -D(x1)*D(x2) identically, nonzero for generic inputs.
double leibniz_violation(const LatticeSignal& x1, const LatticeSignal& x2, std::int64_t n);

/// D(x1*x2) - [D(x1)*x2 + x1*D(x2) - D(x1)*D(x2)]; zero up to rounding.
double nonstandard_product_identity_residual(const LatticeSignal& x1, const LatticeSignal& x2,
                                             std::int64_t n);

SummationReport exact_difference(const LatticeSignal& x, int order, std::int64_t n,
                                 const OperatorConfig& cfg);

/// Delta^order via nested first-order applications (Delta^{k+1} = Delta^1 Delta^k);
/// the independent oracle for the kernel path. order in {2,3}.
SummationReport exact_difference_by_recurrence(const LatticeSignal& x, int order,
                                               std::int64_t n, const OperatorConfig& cfg);

SummationReport exact_antidifference(const LatticeSignal& i, std::int64_t n,
                                     const OperatorConfig& cfg, double base_value);

/// Exact-difference output wrapped as a signal (memoized); feeds the
/// recurrence oracle and the inverse-pair tests.
class ExactDifferenceSignal final : public LatticeSignal {
public:
  ExactDifferenceSignal(std::shared_ptr<const LatticeSignal> base, int order,
                        OperatorConfig cfg);

  double value(std::int64_t n) const override;
  Lattice lattice() const override { return cfg_.lattice; }
  std::optional<double> growth_hint() const override { return base_->growth_hint(); }
  double trig_rate_bound() const override { return base_->trig_rate_bound(); }

  /// Largest inner error estimate seen so far (for combined error reporting).
  double worst_inner_error() const;

private:
  std::shared_ptr<const LatticeSignal> base_;
  int order_;
  OperatorConfig cfg_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::int64_t, double> memo_;
  mutable double worst_err_ = 0.0;
};

/// Antidifference output wrapped as a signal (memoized).
class AntidifferenceSignal final : public LatticeSignal {
public:
  AntidifferenceSignal(std::shared_ptr<const LatticeSignal> base, OperatorConfig cfg,
                       double base_value);

  double value(std::int64_t n) const override;
  Lattice lattice() const override { return cfg_.lattice; }
  std::optional<double> growth_hint() const override { return base_->growth_hint(); }
  double trig_rate_bound() const override { return base_->trig_rate_bound(); }

  double worst_inner_error() const;

private:
  std::shared_ptr<const LatticeSignal> base_;
  OperatorConfig cfg_;
  double base_value_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::int64_t, double> memo_;
  mutable double worst_err_ = 0.0;
};

}  // namespace exactdiff
