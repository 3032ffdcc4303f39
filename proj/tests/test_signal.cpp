#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "exactdiff/error.hpp"
#include "exactdiff/signal.hpp"

using namespace exactdiff;

namespace {

// reference ray: scalar value() calls with exact per-element damping
std::vector<double> reference_ray(const LatticeSignal& sig, std::int64_t base, int dir,
                                  std::uint64_t m_first, double log_damp, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto m = static_cast<double>(m_first + i);
    out[i] = sig.value(base + dir * static_cast<std::int64_t>(m_first + i)) *
             std::exp(m * log_damp);
  }
  return out;
}

void check_ray(const LatticeSignal& sig, std::int64_t base, int dir, std::uint64_t m_first,
               double log_damp, std::size_t n) {
  std::vector<double> out(n);
  sig.fill_ray(base, dir, m_first, log_damp, out);
  const auto ref = reference_ray(sig, base, dir, m_first, log_damp, n);
  double scale = 1.0;
  for (double v : ref) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i) {
    INFO("i=", i, " dir=", dir, " damp=", log_damp);
    CHECK(std::abs(out[i] - ref[i]) < 1e-11 * scale);
  }
}

}  // namespace

TEST_CASE("closed-form rays match scalar sampling") {
  const Lattice lat{0.5};
  const std::vector<ClosedForm> forms = {
      ClosedForm::exponential(0.4),
      ClosedForm::sine(1.7),
      ClosedForm::cosine(0.9),
      ClosedForm::monomial(4),
      ClosedForm::constant(2.5),
      ClosedForm::parse("0.5*exp:0.2+1.5*cos:1.1+-2*pow:2"),
  };
  for (const auto& f : forms) {
    const ClosedFormSignal sig(f, lat);
    for (int dir : {-1, +1}) {
      check_ray(sig, 3, dir, 1, 0.0, 700);
      check_ray(sig, -2, dir, 1, -0.01, 1300);  // crosses the reseed stride
      check_ray(sig, 0, dir, 513, -0.2, 97);
    }
  }
}

TEST_CASE("exponential rays stay finite under Abel damping") {
  // e^{0.9 m} overflows near m ~ 780 undamped; with r e^{0.9} < 1 the damped
  // ray must decay instead
  const ClosedFormSignal sig(ClosedForm::exponential(0.9), Lattice{1.0});
  const double log_damp = std::log(0.9 * std::exp(-0.9));
  std::vector<double> out(20000);
  sig.fill_ray(0, +1, 1, log_damp, out);
  for (double v : out) CHECK(std::isfinite(v));
  CHECK(std::abs(out.back()) < 1e-300 + std::abs(out.front()));
}

TEST_CASE("signal metadata") {
  const ClosedFormSignal e(ClosedForm::exponential(0.5), Lattice{2.0});
  CHECK(e.growth_hint().value() == doctest::Approx(std::exp(1.0)));
  CHECK(e.trig_rate_bound() == 0.0);

  const ClosedFormSignal s(ClosedForm::sine(1.5), Lattice{2.0});
  CHECK(s.trig_rate_bound() == doctest::Approx(3.0));
  CHECK(s.growth_hint().value() == doctest::Approx(1.0));
}

TEST_CASE("product signals") {
  const Lattice lat{1.0};
  auto a = std::make_shared<ClosedFormSignal>(ClosedForm::exponential(0.3), lat);
  auto b = std::make_shared<ClosedFormSignal>(ClosedForm::sine(1.0), lat);
  const ProductSignal p(a, b);
  CHECK(p.value(2) == doctest::Approx(std::exp(0.6) * std::sin(2.0)));
  CHECK(p.growth_hint().value() == doctest::Approx(std::exp(0.3)));
  CHECK(p.trig_rate_bound() == doctest::Approx(1.0));
  check_ray(p, 1, -1, 1, 0.0, 600);
  check_ray(p, 1, +1, 1, -0.35, 600);

  auto other = std::make_shared<ClosedFormSignal>(ClosedForm::sine(1.0), Lattice{0.5});
  CHECK_THROWS_AS(ProductSignal(a, other), Error);
}

TEST_CASE("function signals carry caller metadata") {
  const FunctionSignal f([](std::int64_t n) { return double(n % 7); }, Lattice{1.0}, 1.0, 0.5);
  CHECK(f.value(9) == 2.0);
  CHECK(f.growth_hint().value() == 1.0);
  CHECK(f.trig_rate_bound() == 0.5);
  check_ray(f, 0, +1, 1, -0.05, 800);
}

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(Lattice{0.0}.validate(), Error);
  CHECK_THROWS_AS(Lattice{-1.0}.validate(), Error);
  CHECK_NOTHROW(Lattice{0.25}.validate());
}
