#include "exactdiff/signal.hpp"

#include <cmath>
#include <vector>

#include "exactdiff/error.hpp"
#include "exactdiff/kernels.hpp"

namespace exactdiff {

void Lattice::validate() const {
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(Errc::invalid_params, "lattice step must be positive and finite");
}

void LatticeSignal::fill_ray(std::int64_t base, int direction, std::uint64_t m_first,
                             double log_damp, std::span<double> out) const {
  // generic scalar path; damp by recurrence with periodic reseed
  const double step = std::exp(log_damp);
  double damp = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % kern::reseed_stride == 0)
      damp = std::exp(static_cast<double>(m_first + i) * log_damp);
    const std::int64_t n = base + direction * static_cast<std::int64_t>(m_first + i);
    out[i] = value(n) * damp;
    damp *= step;
  }
}

ClosedFormSignal::ClosedFormSignal(ClosedForm form, Lattice lattice)
    : form_(std::move(form)), lattice_(lattice) {
  lattice_.validate();
}

double ClosedFormSignal::value(std::int64_t n) const {
  return form_(static_cast<double>(n) * lattice_.step);
}

long double ClosedFormSignal::value_ext(std::int64_t n) const {
  return form_.value_ext(static_cast<long double>(n) * lattice_.step);
}

void ClosedFormSignal::fill_ray(std::int64_t base, int direction, std::uint64_t m_first,
                                double log_damp, std::span<double> out) const {
  const auto& ops = kern::active_ops();
  const double T = lattice_.step;
  const double t_base = static_cast<double>(base) * T;
  const double dir = static_cast<double>(direction);
  const double m0 = static_cast<double>(m_first);

  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& p : form_.parts()) {
    std::visit(
        [&](const auto& atom) {
          using A = std::decay_t<decltype(atom)>;
          if constexpr (std::is_same_v<A, ExpAtom>) {
            // w * exp(lambda*(t_base + dir*T*m)) * exp(m*log_damp)
            const double g = atom.rate * dir * T + log_damp;
            const double a = atom.rate * t_base + m0 * g;
            ops.exp_ray_axpy(p.weight, a, g, out.data(), out.size());
          } else if constexpr (std::is_same_v<A, SinAtom> || std::is_same_v<A, CosAtom>) {
            const double dphi = atom.rate * dir * T;
            const double phi = atom.rate * t_base + m0 * dphi;
            const double a = m0 * log_damp;
            ops.osc_ray_axpy(p.weight, a, log_damp, phi, dphi, std::is_same_v<A, SinAtom>,
                             out.data(), out.size());
          } else if constexpr (std::is_same_v<A, MonomialAtom>) {
            const double dt = dir * T;
            const double t0 = t_base + m0 * dt;
            const double a = m0 * log_damp;
            ops.poly_ray_axpy(p.weight, t0, dt, atom.degree, a, log_damp, out.data(),
                              out.size());
          } else if constexpr (std::is_same_v<A, ConstantAtom>) {
            const double a = m0 * log_damp;
            ops.exp_ray_axpy(p.weight * atom.value, a, log_damp, out.data(), out.size());
          }
        },
        p.atom);
  }
}

std::optional<double> ClosedFormSignal::growth_hint() const {
  return std::exp(form_.max_exp_rate() * lattice_.step);
}

double ClosedFormSignal::trig_rate_bound() const {
  return form_.max_trig_rate() * lattice_.step;
}

ClosedFormSignal sample(const ClosedForm& form, Lattice lattice) {
  return ClosedFormSignal(form, lattice);
}

ProductSignal::ProductSignal(std::shared_ptr<const LatticeSignal> a,
                             std::shared_ptr<const LatticeSignal> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (!a_ || !b_) throw Error(Errc::invalid_params, "product of null signals");
  if (!(a_->lattice() == b_->lattice()))
    throw Error(Errc::invalid_params, "product factors live on different lattices");
}

double ProductSignal::value(std::int64_t n) const { return a_->value(n) * b_->value(n); }

long double ProductSignal::value_ext(std::int64_t n) const {
  return a_->value_ext(n) * b_->value_ext(n);
}

Lattice ProductSignal::lattice() const { return a_->lattice(); }

void ProductSignal::fill_ray(std::int64_t base, int direction, std::uint64_t m_first,
                             double log_damp, std::span<double> out) const {
  // split the damping between the factors so each stays finite on its own
  std::vector<double> tmp(out.size());
  a_->fill_ray(base, direction, m_first, 0.5 * log_damp, out);
  b_->fill_ray(base, direction, m_first, 0.5 * log_damp, tmp);
  kern::active_ops().mul_inplace(out.data(), tmp.data(), out.size());
}

std::optional<double> ProductSignal::growth_hint() const {
  const auto ha = a_->growth_hint();
  const auto hb = b_->growth_hint();
  if (!ha || !hb) return std::nullopt;
  return *ha * *hb;
}

double ProductSignal::trig_rate_bound() const {
  return a_->trig_rate_bound() + b_->trig_rate_bound();
}

}  // namespace exactdiff
