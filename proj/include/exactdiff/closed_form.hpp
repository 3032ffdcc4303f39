#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Closed-form function families the operators are exercised on: exp, sin,
// cos, monomials up to degree 6, constants, and weighted sums of these.
// Expressible as CLI strings: `exp:0.5`, `sin:2.0`, `cos:2.0`, `pow:3`,
// `const:1.0`, and `+`-joined weighted combinations like
// `1.0*exp:0.5+2.0*pow:2`.

namespace exactdiff {

struct ExpAtom {
  double rate;
};
struct SinAtom {
  double rate;
};
struct CosAtom {
  double rate;
};
struct MonomialAtom {
  int degree;  // 0..6
};
struct ConstantAtom {
  double value;
};

using Atom = std::variant<ExpAtom, SinAtom, CosAtom, MonomialAtom, ConstantAtom>;

struct WeightedAtom {
  double weight;
  Atom atom;
};

class ClosedForm {
public:
  ClosedForm() = default;  // identically zero

  static ClosedForm exponential(double rate);
  static ClosedForm sine(double rate);
  static ClosedForm cosine(double rate);
  static ClosedForm monomial(int degree);  // throws on degree outside 0..6
  static ClosedForm constant(double value);

  double operator()(double t) const;

  /// Evaluation in the widest native format (Abel node precision).
  long double value_ext(long double t) const;

  ClosedForm& operator+=(const ClosedForm& other);
  friend ClosedForm operator+(ClosedForm a, const ClosedForm& b) { return a += b; }
  friend ClosedForm operator*(double w, ClosedForm f);

  /// Exact symbolic derivative; order in 1..3.
  ClosedForm derivative(int order = 1) const;

  double max_exp_rate() const;      // max |rate| over exp atoms, 0 if none
  double max_trig_rate() const;     // max |rate| over sin/cos atoms, 0 if none
  int max_monomial_degree() const;  // -1 if no monomial atom

  const std::vector<WeightedAtom>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  std::string str() const;
  static ClosedForm parse(std::string_view text);  // throws Error(parse_error)

private:
  std::vector<WeightedAtom> parts_;
};

/// Exact symbolic derivative of a closed form (oracle for exactness tests).
ClosedForm derivative_closed_form(const ClosedForm& form, int order);

}  // namespace exactdiff
