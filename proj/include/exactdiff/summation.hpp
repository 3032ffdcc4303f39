#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

// Regularized evaluation of series sum_{m>=1} a_m that may converge, need
// Cesaro or Abel-Poisson summation, or properly diverge. direct_sum handles
// the convergent case, cesaro_sum assigns (C,k) values through iterated
// delayed means (with a consistency check against the classical full-range
// means), abel_sum evaluates f(r) = sum a_m r^m inside the disc and
// extrapolates to r = 1. auto_sum runs the DIRECT -> CESARO(2) -> ABEL
// escalation, skipping stages that a geometric growth hint rules out.

namespace exactdiff {

enum class SummationMethod { direct, cesaro, abel };
enum class AbelExtrapolation { polynomial, rational };

const char* to_string(SummationMethod m) noexcept;

struct SummationSpec {
  SummationMethod method = SummationMethod::direct;
  int cesaro_order = 1;            // k for (C,k); >= 1
  std::size_t max_terms = 100000;  // >= 16
  double rel_tol = 1e-8;
  std::vector<double> abel_radii;  // strictly increasing, in (0,1); empty = derive from hint
  AbelExtrapolation abel_extrapolation = AbelExtrapolation::rational;

  void validate() const;  // throws Error(invalid_params)
};

struct SummationReport {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t terms_used = 0;
  SummationMethod method_used = SummationMethod::direct;
  int cesaro_order_used = 0;  // 0 unless method_used == cesaro
  bool converged = false;
};

/// A deterministic stream of series coefficients a_m (m >= 1), addressable in
/// blocks. fill() writes a_m scaled by exp(m * log_damp) so geometrically
/// growing sources stay finite under Abel damping.
class TermSource {
public:
  virtual ~TermSource() = default;

  virtual void fill(std::uint64_t m_first, double log_damp, std::span<double> out) const = 0;

  /// a_m * exp(m*log_damp) in the widest native format. The Abel evaluator
  /// extrapolates far beyond the sampled radii, so its nodes are summed at
  /// extended precision; the default bridges through the double fill.
  virtual long double term_scaled_ext(std::uint64_t m, long double log_damp) const;

  /// rho such that |a_m| <= C * rho^m * poly(m), when known.
  virtual std::optional<double> growth_hint() const { return std::nullopt; }

  double term_at(std::uint64_t m) const;
};

/// Term source backed by a plain callable; for tests and ad-hoc series.
class FunctionTermSource final : public TermSource {
public:
  explicit FunctionTermSource(std::function<double(std::uint64_t)> f,
                              std::optional<double> hint = std::nullopt)
      : f_(std::move(f)), hint_(hint) {}

  void fill(std::uint64_t m_first, double log_damp, std::span<double> out) const override;
  std::optional<double> growth_hint() const override { return hint_; }

private:
  std::function<double(std::uint64_t)> f_;
  std::optional<double> hint_;
};

SummationReport direct_sum(const TermSource& src, const SummationSpec& spec);
SummationReport cesaro_sum(const TermSource& src, const SummationSpec& spec);
SummationReport abel_sum(const TermSource& src, const SummationSpec& spec);
SummationReport auto_sum(const TermSource& src, SummationSpec spec);

/// min(0.97, 0.9/rho): largest usable Abel radius under a growth hint.
double abel_radius_cap(std::optional<double> growth_hint);

/// Default radius schedule: 12 Chebyshev points on [0.30*cap, cap].
std::vector<double> default_abel_radii(std::optional<double> growth_hint);

}  // namespace exactdiff
