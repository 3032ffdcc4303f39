#include <doctest.h>

#include <cmath>

#include "exactdiff/closed_form.hpp"
#include "exactdiff/error.hpp"
#include "exactdiff/signal.hpp"

using namespace exactdiff;

TEST_CASE("sampling the base families") {
  const Lattice lat{1.0};
  CHECK(sample(ClosedForm::exponential(0.5), lat).value(0) == doctest::Approx(1.0));
  CHECK(sample(ClosedForm::monomial(2), lat).value(3) == doctest::Approx(9.0));
  CHECK(sample(ClosedForm::sine(2.0), lat).value(1) == doctest::Approx(std::sin(2.0)));
  const Lattice half{0.5};
  CHECK(sample(ClosedForm::monomial(3), half).value(4) == doctest::Approx(8.0));
}

TEST_CASE("derivatives of the families") {
  const ClosedForm e = ClosedForm::exponential(0.5).derivative(1);
  CHECK(e(2.0) == doctest::Approx(0.5 * std::exp(1.0)));

  const ClosedForm m = ClosedForm::monomial(3).derivative(1);
  CHECK(m(2.0) == doctest::Approx(3.0 * 4.0));

  const ClosedForm c = ClosedForm::constant(4.2).derivative(1);
  CHECK(c(1.7) == doctest::Approx(0.0));

  const ClosedForm s = ClosedForm::sine(2.0).derivative(1);
  CHECK(s(0.3) == doctest::Approx(2.0 * std::cos(0.6)));

  const ClosedForm cc = ClosedForm::cosine(1.5).derivative(2);
  CHECK(cc(0.4) == doctest::Approx(-1.5 * 1.5 * std::cos(0.6)));

  CHECK_THROWS_AS((void)ClosedForm::monomial(2).derivative(4), Error);
}

TEST_CASE("central difference agrees with the symbolic derivative") {
  const double h = 1e-5;
  const Lattice lat{1.0};
  const std::vector<ClosedForm> forms = {
      ClosedForm::exponential(0.4), ClosedForm::sine(1.3), ClosedForm::cosine(0.7),
      ClosedForm::monomial(3),
      0.5 * ClosedForm::exponential(0.2) + 2.0 * ClosedForm::monomial(2)};
  for (const auto& f : forms) {
    const ClosedForm df = derivative_closed_form(f, 1);
    for (int n = -10; n <= 10; ++n) {
      const double t = double(n);
      const double numeric = (f(t + h) - f(t - h)) / (2.0 * h);
      const double exact = df(t);
      CHECK(std::abs(numeric - exact) <=
            1e-6 * std::max(1.0, std::abs(exact)) + 1e-8);
    }
  }
}

TEST_CASE("linear combinations evaluate linearly") {
  const ClosedForm f = 2.0 * ClosedForm::sine(1.0) + (-3.0) * ClosedForm::monomial(2);
  for (double t : {-2.0, 0.0, 1.5}) {
    CHECK(f(t) == 2.0 * std::sin(t) - 3.0 * t * t);
  }
}

TEST_CASE("expression grammar round trips") {
  const char* exprs[] = {"exp:0.5", "sin:2", "cos:2", "pow:3", "const:1.5",
                         "1.0*exp:0.5+2.0*pow:2", "-1.5*pow:2+0.25*sin:1"};
  for (const char* e : exprs) {
    const ClosedForm f = ClosedForm::parse(e);
    const ClosedForm g = ClosedForm::parse(f.str());
    for (double t : {-1.0, 0.3, 2.0}) CHECK(f(t) == doctest::Approx(g(t)).epsilon(1e-15));
  }
  CHECK(ClosedForm::parse("1.0*exp:0.5+2.0*pow:2")(1.0) ==
        doctest::Approx(std::exp(0.5) + 2.0));
}

TEST_CASE("parse errors carry PARSE_ERROR") {
  for (const char* bad : {"", "foo:1", "pow:2.5", "pow:9", "exp", "exp:abc", "2**exp:1"}) {
    try {
      (void)ClosedForm::parse(bad);
      FAIL_CHECK("expected parse error for '", bad, "'");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse_error);
    }
  }
}

TEST_CASE("rate and degree metadata") {
  const ClosedForm f = ClosedForm::parse("exp:0.5+2*sin:1.5+pow:4");
  CHECK(f.max_exp_rate() == doctest::Approx(0.5));
  CHECK(f.max_trig_rate() == doctest::Approx(1.5));
  CHECK(f.max_monomial_degree() == 4);
  CHECK(ClosedForm::constant(1.0).max_monomial_degree() == -1);
}
