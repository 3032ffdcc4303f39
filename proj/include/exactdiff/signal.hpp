#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>

#include "exactdiff/closed_form.hpp"

// Functions sampled on the uniform lattice t = n*T. The exact operators read
// a signal along both infinite tails t -/+ T*m, so signals must be total over
// all integers n; array-backed signals are deliberately absent. fill_ray is
// the batch access path the series engine drives: values along one tail,
// optionally damped by exp(m * log_damp) for Abel evaluation (the damping is
// fused into the generators so geometrically growing signals never overflow).

namespace exactdiff {

struct Lattice {
  double step = 1.0;
  void validate() const;
  bool operator==(const Lattice&) const = default;
};

class LatticeSignal {
public:
  virtual ~LatticeSignal() = default;

  virtual double value(std::int64_t n) const = 0;
  virtual Lattice lattice() const = 0;

  /// value(n) in the widest native format (feeds the Abel node sums).
  virtual long double value_ext(std::int64_t n) const { return value(n); }

  /// out[i] = value(base + direction*(m_first+i)) * exp((m_first+i)*log_damp)
  virtual void fill_ray(std::int64_t base, int direction, std::uint64_t m_first,
                        double log_damp, std::span<double> out) const;

  /// rho with |value(base +/- m)| <= C * rho^m * poly(m), when known.
  virtual std::optional<double> growth_hint() const { return std::nullopt; }

  /// Largest trigonometric phase advance per lattice step (|lambda|*T),
  /// summed over product factors; must stay below pi for exactness.
  virtual double trig_rate_bound() const { return 0.0; }
};

/// Closed form sampled on a lattice; evaluate(n) = form(n*T).
class ClosedFormSignal final : public LatticeSignal {
public:
  ClosedFormSignal(ClosedForm form, Lattice lattice);

  double value(std::int64_t n) const override;
  long double value_ext(std::int64_t n) const override;
  Lattice lattice() const override { return lattice_; }
  void fill_ray(std::int64_t base, int direction, std::uint64_t m_first, double log_damp,
                std::span<double> out) const override;
  std::optional<double> growth_hint() const override;
  double trig_rate_bound() const override;

  const ClosedForm& form() const { return form_; }

private:
  ClosedForm form_;
  Lattice lattice_;
};

ClosedFormSignal sample(const ClosedForm& form, Lattice lattice);

/// Pointwise product of two signals on the same lattice (entire * entire).
class ProductSignal final : public LatticeSignal {
public:
  ProductSignal(std::shared_ptr<const LatticeSignal> a, std::shared_ptr<const LatticeSignal> b);

  double value(std::int64_t n) const override;
  long double value_ext(std::int64_t n) const override;
  Lattice lattice() const override;
  void fill_ray(std::int64_t base, int direction, std::uint64_t m_first, double log_damp,
                std::span<double> out) const override;
  std::optional<double> growth_hint() const override;
  double trig_rate_bound() const override;

private:
  std::shared_ptr<const LatticeSignal> a_, b_;
};

/// Signal backed by an arbitrary callable; metadata supplied by the caller.
class FunctionSignal final : public LatticeSignal {
public:
  FunctionSignal(std::function<double(std::int64_t)> f, Lattice lattice,
                 std::optional<double> hint = std::nullopt, double trig_bound = 0.0)
      : f_(std::move(f)), lattice_(lattice), hint_(hint), trig_bound_(trig_bound) {}

  double value(std::int64_t n) const override { return f_(n); }
  Lattice lattice() const override { return lattice_; }
  std::optional<double> growth_hint() const override { return hint_; }
  double trig_rate_bound() const override { return trig_bound_; }

private:
  std::function<double(std::int64_t)> f_;
  Lattice lattice_;
  std::optional<double> hint_;
  double trig_bound_;
};

}  // namespace exactdiff
