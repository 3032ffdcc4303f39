#include <doctest.h>

#include <cmath>

#include "exactdiff/error.hpp"
#include "exactdiff/summation.hpp"
#include "oracles.hpp"

using namespace exactdiff;

namespace {

double sign_of(std::uint64_t m) { return m % 2 == 0 ? 1.0 : -1.0; }

SummationSpec spec_for(SummationMethod method, int k = 1) {
  SummationSpec s;
  s.method = method;
  s.cesaro_order = k;
  return s;
}

}  // namespace

TEST_CASE("direct_sum: geometric series") {
  FunctionTermSource src([](std::uint64_t m) { return std::pow(0.5, double(m)); });
  const auto rep = direct_sum(src, spec_for(SummationMethod::direct));
  CHECK(rep.converged);
  CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.terms_used < 100000);
}

TEST_CASE("direct_sum: alternating exponential over m") {
  // sum (-1)^m e^{-m/2}/m = -ln(1 + e^{-1/2})
  FunctionTermSource src(
      [](std::uint64_t m) { return sign_of(m) * std::exp(-0.5 * double(m)) / double(m); });
  const auto rep = direct_sum(src, spec_for(SummationMethod::direct));
  const double expected = -std::log1p(std::exp(-0.5));
  CHECK(rep.converged);
  CHECK(rep.value == doctest::Approx(expected).epsilon(1e-10));

  // cross-check through the Cohen-Villegas-Zagier accelerator (independent route)
  const double cvz =
      -oracles::cohen_alternating([](int k) { return std::exp(-0.5 * (k + 1.0)) / (k + 1.0); });
  CHECK(rep.value == doctest::Approx(cvz).epsilon(1e-10));
}

TEST_CASE("direct_sum: bounded oscillation is NON_CONVERGENT") {
  FunctionTermSource src([](std::uint64_t m) { return sign_of(m); });
  CHECK_THROWS_WITH_AS((void)direct_sum(src, spec_for(SummationMethod::direct)),
                       doctest::Contains("NON_CONVERGENT"), Error);
}

TEST_CASE("cesaro_sum: (C,1) of sum (-1)^m is -1/2") {
  FunctionTermSource src([](std::uint64_t m) { return sign_of(m); });
  const auto rep = cesaro_sum(src, spec_for(SummationMethod::cesaro, 1));
  CHECK(rep.converged);
  CHECK(rep.method_used == SummationMethod::cesaro);
  CHECK(rep.cesaro_order_used == 1);
  CHECK(rep.value == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("cesaro_sum: method escalation on sum (-1)^m m") {
  FunctionTermSource src([](std::uint64_t m) { return sign_of(m) * double(m); });
  // (C,1) does not settle; (C,2) gives -1/4 (Abel oracle -r/(1+r)^2 at r->1)
  CHECK_THROWS_AS((void)cesaro_sum(src, spec_for(SummationMethod::cesaro, 1)), Error);
  const auto rep = cesaro_sum(src, spec_for(SummationMethod::cesaro, 2));
  CHECK(rep.converged);
  CHECK(rep.value == doctest::Approx(-0.25).epsilon(1e-8));
}

TEST_CASE("cesaro_sum is regular on convergent series") {
  FunctionTermSource src([](std::uint64_t m) { return std::pow(0.5, double(m)); });
  for (int k : {1, 2}) {
    const auto rep = cesaro_sum(src, spec_for(SummationMethod::cesaro, k));
    CHECK(rep.converged);
    CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("cesaro_sum refuses series needing a higher order") {
  // sum (-1)^m m^2 is (C,3)-summable but not (C,2); the consistency guard
  // must keep the delayed ladder from phase-locking to a wrong value
  FunctionTermSource src([](std::uint64_t m) { return sign_of(m) * double(m) * double(m); });
  CHECK_THROWS_AS((void)cesaro_sum(src, spec_for(SummationMethod::cesaro, 2)), Error);
  CHECK_THROWS_AS((void)cesaro_sum(src, spec_for(SummationMethod::cesaro, 3)), Error);
}

TEST_CASE("abel_sum: conditionally convergent benchmark -ln 2") {
  FunctionTermSource src([](std::uint64_t m) { return sign_of(m) / double(m); });
  const auto rep = abel_sum(src, spec_for(SummationMethod::abel));
  CHECK(rep.value == doctest::Approx(-std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("abel_sum: polynomial-divergent series") {
  FunctionTermSource src([](std::uint64_t m) { return sign_of(m) * double(m) * double(m); },
                         1.0);
  const auto rep = abel_sum(src, spec_for(SummationMethod::abel));
  CHECK(std::abs(rep.value) < 1e-6);  // f(r) = -r(1-r)/(1+r)^3 -> 0
}

TEST_CASE("abel_sum: geometric growth under the feasibility cap") {
  // sum (-1)^m e^{m/2}/m = -ln(1 + e^{1/2}) by continuation of -ln(1+x)
  const double rho = std::exp(0.5);
  FunctionTermSource src(
      [](std::uint64_t m) { return sign_of(m) * std::exp(0.5 * double(m)) / double(m); }, rho);
  const auto rep = abel_sum(src, spec_for(SummationMethod::abel));
  CHECK(rep.value == doctest::Approx(-std::log1p(std::exp(0.5))).epsilon(1e-8));
}

TEST_CASE("abel_sum: infeasible growth hint is refused") {
  const double rho = std::exp(1.2);  // ln rho = 1.2 > 1.1
  FunctionTermSource src(
      [](std::uint64_t m) { return sign_of(m) * std::exp(1.2 * double(m)) / double(m); }, rho);
  CHECK_THROWS_WITH_AS((void)abel_sum(src, spec_for(SummationMethod::abel)),
                       doctest::Contains("RADIUS_INFEASIBLE"), Error);
}

TEST_CASE("abel_sum: scheduled radii outside the disc are refused") {
  SummationSpec s = spec_for(SummationMethod::abel);
  s.abel_radii = {0.5, 0.9};
  FunctionTermSource src(
      [](std::uint64_t m) { return sign_of(m) * std::exp(0.5 * double(m)); }, std::exp(0.5));
  CHECK_THROWS_AS((void)abel_sum(src, s), Error);  // 0.9 * e^0.5 > 1
}

TEST_CASE("abel matches the closed form for alternating polynomial series") {
  // sum (-1)^m p(m) with p cubic; oracle by differentiating the geometric
  // series: sum (-1)^m = -1/2, sum (-1)^m m = -1/4, sum (-1)^m m^2 = 0,
  // sum (-1)^m m^3 = 1/8 (Abel values at r -> 1)
  const double c0 = 0.7, c1 = -1.3, c2 = 0.4, c3 = 0.2;
  FunctionTermSource src(
      [=](std::uint64_t mu) {
        const double m = double(mu);
        return sign_of(mu) * (c0 + m * (c1 + m * (c2 + m * c3)));
      },
      1.0);
  const double expected = c0 * -0.5 + c1 * -0.25 + c2 * 0.0 + c3 * 0.125;
  const auto rep = abel_sum(src, spec_for(SummationMethod::abel));
  CHECK(rep.value == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("regularity: all three methods agree on a convergent series") {
  FunctionTermSource src(
      [](std::uint64_t m) { return sign_of(m) * std::exp(-0.3 * double(m)) / double(m); });
  SummationSpec spec = spec_for(SummationMethod::direct);
  const double d = direct_sum(src, spec).value;
  spec.method = SummationMethod::cesaro;
  spec.cesaro_order = 2;
  const double c = cesaro_sum(src, spec).value;
  spec.method = SummationMethod::abel;
  const double a = abel_sum(src, spec).value;
  CHECK(std::abs(c - d) < 10.0 * spec.rel_tol * std::max(1.0, std::abs(d)));
  CHECK(std::abs(a - d) < 10.0 * spec.rel_tol * std::max(1.0, std::abs(d)));
}

TEST_CASE("linearity across term sources") {
  const double alpha = 2.5, beta = -1.25;
  auto fa = [](std::uint64_t m) { return sign_of(m) / (double(m) * double(m)); };
  auto fb = [](std::uint64_t m) { return std::pow(1.0 / 3.0, double(m)); };
  FunctionTermSource a(fa), b(fb);
  FunctionTermSource combo([&](std::uint64_t m) { return alpha * fa(m) + beta * fb(m); });
  const SummationSpec spec = spec_for(SummationMethod::direct);
  const auto ra = direct_sum(a, spec);
  const auto rb = direct_sum(b, spec);
  const auto rc = direct_sum(combo, spec);
  const double tol = std::abs(alpha) * ra.abs_error_estimate +
                     std::abs(beta) * rb.abs_error_estimate + rc.abs_error_estimate + 1e-12;
  CHECK(std::abs(rc.value - (alpha * ra.value + beta * rb.value)) <= tol);
}

TEST_CASE("auto_sum follows the escalation policy") {
  // convergent: stays direct
  FunctionTermSource geostack([](std::uint64_t m) { return std::pow(0.5, double(m)); });
  CHECK(auto_sum(geostack, SummationSpec{}).method_used == SummationMethod::direct);

  // bounded oscillation: escalates to cesaro
  FunctionTermSource alt([](std::uint64_t m) { return sign_of(m); });
  const auto rep = auto_sum(alt, SummationSpec{});
  CHECK(rep.method_used == SummationMethod::cesaro);
  CHECK(rep.value == doctest::Approx(-0.5).epsilon(1e-8));

  // polynomial divergence: lands on abel
  FunctionTermSource poly([](std::uint64_t m) { return sign_of(m) * double(m) * double(m); },
                          1.0);
  CHECK(auto_sum(poly, SummationSpec{}).method_used == SummationMethod::abel);

  // geometric growth: skips straight to abel
  FunctionTermSource geo(
      [](std::uint64_t m) { return sign_of(m) * std::exp(0.5 * double(m)) / double(m); },
      std::exp(0.5));
  CHECK(auto_sum(geo, SummationSpec{}).method_used == SummationMethod::abel);
}

TEST_CASE("spec validation") {
  SummationSpec s;
  s.max_terms = 8;
  CHECK_THROWS_AS(s.validate(), Error);
  s = SummationSpec{};
  s.rel_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = SummationSpec{};
  s.abel_radii = {0.5, 0.4};
  CHECK_THROWS_AS(s.validate(), Error);
  s = SummationSpec{};
  s.abel_radii = {0.5, 1.2};
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("term sources are re-entrant and deterministic") {
  FunctionTermSource src([](std::uint64_t m) { return sign_of(m) / double(m); });
  double block1[64], block2[64];
  src.fill(17, -0.01, {block1, 64});
  src.fill(17, -0.01, {block2, 64});
  for (int i = 0; i < 64; ++i) CHECK(block1[i] == block2[i]);
  CHECK(src.term_at(3) == doctest::Approx(-1.0 / 3.0));
}
