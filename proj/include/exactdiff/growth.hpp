#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "exactdiff/difference.hpp"
#include "exactdiff/signal.hpp"
#include "exactdiff/summation.hpp"

// Harrod-Domar growth model in three variants sharing one parameter set:
//   CM  (continuous):        dY/dt = lambda Y - A/v,   Y = A/s + (Y0-A/s) e^{lambda t}
//   SDM (standard discrete): D_b Y = lambda Y_{t-1} - A/v,  Y = A/s + (Y0-A/s)(1+lambda T)^n
//   EDM (exact discrete):    Delta_T^1 Y = lambda Y - A/v,  same solution as CM
// with lambda = s/v. The comparison table quantifies how far the SDM growth
// rate ln(1+lambda) falls below lambda.

namespace exactdiff {

struct HarrodDomarParams {
  double s;   // marginal propensity to save
  double v;   // investment coefficient
  double c;   // marginal propensity to consume, s = 1 - c
  double A;   // autonomous expenditure
  double Y0;  // initial output
  double T;   // lattice step

  double lambda() const { return s / v; }
  double equilibrium() const { return A / s; }

  void validate() const;  // throws Error(invalid_params)

  /// Convenience construction from a target growth rate (s = c = 1/2, v = s/lambda).
  static HarrodDomarParams from_lambda(double lambda, double A = 0.0, double Y0 = 1.0,
                                       double T = 1.0);
};

struct ComparisonRow {
  double lambda;     // CM (= EDM) growth rate
  double rate_sdm;   // ln(1 + lambda)
  double d_percent;  // 100 (lambda - ln(1+lambda)) / lambda
  double g_factor;   // e^{10 lambda} / (1+lambda)^{10}: EDM/SDM output ratio at t = 10T
};

/// Standard accelerator I_n = (v/T)(Y_n - Y_{n-1}).
double accelerator_standard(const LatticeSignal& y, std::int64_t n, double v, double T);

/// Exact accelerator I(t) = v * Delta_T^1 Y(t).
SummationReport accelerator_exact(const LatticeSignal& y, std::int64_t n, double v,
                                  const OperatorConfig& cfg);

/// Exact multiplier Y(t) = Y0 + (1/v) * Delta_T^{-1} I(t).
SummationReport multiplier_exact(const LatticeSignal& i, std::int64_t n, double v, double y0,
                                 const OperatorConfig& cfg);

/// Actual consumption C_t = Y_t - s*Y_{t-1}.
double consumption_actual(double y_t, double y_prev, double s);

double cm_solution(const HarrodDomarParams& p, double t);
double sdm_solution(const HarrodDomarParams& p, std::int64_t n);
double edm_solution(const HarrodDomarParams& p, std::int64_t n);

/// D_b Y(n) - lambda Y(n-1) + A/v with Y the SDM solution; ~0 verifies it.
double sdm_residual(const HarrodDomarParams& p, std::int64_t n);

/// Delta_T^1 Y(n) - lambda Y(n) + A/v with Y the EDM solution as a closed
/// form; ~0 within the series error verifies the exact-discrete solution.
double edm_residual(const HarrodDomarParams& p, std::int64_t n, const OperatorConfig& cfg);

ComparisonRow comparison_row(double lambda);

/// The ten growth rates of the published comparison table.
std::array<double, 10> comparison_lambdas();

/// Published comparison-table values (printed precision).
std::array<ComparisonRow, 10> published_comparison_table();

/// True when a computed row matches the published row at printed precision:
/// rate +-0.001, D +-0.05, G within 0.5% relative.
bool matches_published(const ComparisonRow& computed, const ComparisonRow& published);

}  // namespace exactdiff
