#include "exactdiff/growth.hpp"

#include <cmath>

#include "exactdiff/error.hpp"

namespace exactdiff {

void HarrodDomarParams::validate() const {
  if (!(c > 0.0 && c < 1.0)) throw Error(Errc::invalid_params, "need 0 < c < 1");
  if (std::abs(s - (1.0 - c)) > 1e-12) throw Error(Errc::invalid_params, "s must equal 1 - c");
  if (!(v > 0.0)) throw Error(Errc::invalid_params, "need v > 0");
  if (!(T > 0.0)) throw Error(Errc::invalid_params, "need T > 0");
  if (!(lambda() > 0.0)) throw Error(Errc::invalid_params, "need lambda = s/v > 0");
}

HarrodDomarParams HarrodDomarParams::from_lambda(double lambda, double A, double Y0, double T) {
  if (!(lambda > 0.0)) throw Error(Errc::invalid_params, "need lambda > 0");
  HarrodDomarParams p{0.5, 0.5 / lambda, 0.5, A, Y0, T};
  p.validate();
  return p;
}

double accelerator_standard(const LatticeSignal& y, std::int64_t n, double v, double T) {
  if (!(v > 0.0) || !(T > 0.0)) throw Error(Errc::invalid_params, "need v > 0 and T > 0");
  return v / T * backward_difference(y, n);
}

SummationReport accelerator_exact(const LatticeSignal& y, std::int64_t n, double v,
                                  const OperatorConfig& cfg) {
  SummationReport rep = exact_difference(y, 1, n, cfg);
  rep.value *= v;
  rep.abs_error_estimate *= std::abs(v);
  return rep;
}

SummationReport multiplier_exact(const LatticeSignal& i, std::int64_t n, double v, double y0,
                                 const OperatorConfig& cfg) {
  SummationReport rep = exact_antidifference(i, n, cfg, 0.0);
  rep.value = y0 + rep.value / v;
  rep.abs_error_estimate /= std::abs(v);
  return rep;
}

double consumption_actual(double y_t, double y_prev, double s) {
  if (!(s > 0.0 && s < 1.0)) throw Error(Errc::invalid_params, "need 0 < s < 1");
  return y_t - s * y_prev;
}

double cm_solution(const HarrodDomarParams& p, double t) {
  const double eq = p.equilibrium();
  return eq + (p.Y0 - eq) * std::exp(p.lambda() * t);
}

double sdm_solution(const HarrodDomarParams& p, std::int64_t n) {
  const double base = 1.0 + p.lambda() * p.T;
  if (!(base > 0.0))
    throw Error(Errc::nonpositive_base, "1 + lambda*T must be positive for the SDM solution");
  const double eq = p.equilibrium();
  return eq + (p.Y0 - eq) * std::pow(base, static_cast<double>(n));
}

double edm_solution(const HarrodDomarParams& p, std::int64_t n) {
  // coincides with the continuous solution at lattice points, same arithmetic path
  return cm_solution(p, static_cast<double>(n) * p.T);
}

double sdm_residual(const HarrodDomarParams& p, std::int64_t n) {
  p.validate();
  const double y_n = sdm_solution(p, n);
  const double y_prev = sdm_solution(p, n - 1);
  return (y_n - y_prev) - p.lambda() * p.T * y_prev + p.A / p.v * p.T;
}

double edm_residual(const HarrodDomarParams& p, std::int64_t n, const OperatorConfig& cfg) {
  p.validate();
  const double eq = p.equilibrium();
  ClosedForm y = ClosedForm::constant(eq) + (p.Y0 - eq) * ClosedForm::exponential(p.lambda());
  const ClosedFormSignal sig(y, Lattice{p.T});
  const SummationReport d = exact_difference(sig, 1, n, cfg);
  return d.value - p.lambda() * sig.value(n) + p.A / p.v;
}

ComparisonRow comparison_row(double lambda) {
  if (!(lambda > 0.0)) throw Error(Errc::invalid_params, "need lambda > 0");
  const double rate_sdm = std::log1p(lambda);
  const double d_percent = 100.0 * (lambda - rate_sdm) / lambda;
  const double g_factor = std::exp(10.0 * lambda) / std::pow(1.0 + lambda, 10.0);
  return {lambda, rate_sdm, d_percent, g_factor};
}

std::array<double, 10> comparison_lambdas() {
  return {0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9};
}

std::array<ComparisonRow, 10> published_comparison_table() {
  return {{
      {0.1, 0.095, 4.69, 1.048},
      {0.3, 0.262, 12.54, 1.457},
      {0.5, 0.405, 18.90, 2.574},
      {0.7, 0.531, 24.19, 5.440},
      {0.9, 0.642, 28.68, 13.22},
      {1.1, 0.742, 32.55, 35.90},
      {1.3, 0.833, 35.93, 106.8},
      {1.5, 0.916, 38.91, 342.7},
      {1.7, 0.993, 41.57, 1173.0},
      {1.9, 1.065, 43.96, 4242.0},
  }};
}

bool matches_published(const ComparisonRow& computed, const ComparisonRow& published) {
  return std::abs(computed.rate_sdm - published.rate_sdm) <= 1e-3 &&
         std::abs(computed.d_percent - published.d_percent) <= 0.05 &&
         std::abs(computed.g_factor - published.g_factor) <= 0.005 * published.g_factor;
}

}  // namespace exactdiff
