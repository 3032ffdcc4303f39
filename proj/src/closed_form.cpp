#include "exactdiff/closed_form.hpp"

#include <cmath>
#include <charconv>
#include <sstream>

#include "exactdiff/error.hpp"

namespace exactdiff {
namespace {

constexpr int kMaxMonomialDegree = 6;

double atom_value(const Atom& a, double t) {
  return std::visit(
      [t](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ExpAtom>) return std::exp(x.rate * t);
        if constexpr (std::is_same_v<T, SinAtom>) return std::sin(x.rate * t);
        if constexpr (std::is_same_v<T, CosAtom>) return std::cos(x.rate * t);
        if constexpr (std::is_same_v<T, MonomialAtom>) {
          double p = 1.0;
          for (int i = 0; i < x.degree; ++i) p *= t;
          return p;
        }
        if constexpr (std::is_same_v<T, ConstantAtom>) return x.value;
      },
      a);
}

std::string atom_str(const Atom& a) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ExpAtom>) os << "exp:" << x.rate;
        if constexpr (std::is_same_v<T, SinAtom>) os << "sin:" << x.rate;
        if constexpr (std::is_same_v<T, CosAtom>) os << "cos:" << x.rate;
        if constexpr (std::is_same_v<T, MonomialAtom>) os << "pow:" << x.degree;
        if constexpr (std::is_same_v<T, ConstantAtom>) os << "const:" << x.value;
      },
      a);
  return os.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, const char* what) {
  s = trim(s);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end)
    throw Error(Errc::parse_error, std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

WeightedAtom parse_term(std::string_view term) {
  term = trim(term);
  double weight = 1.0;
  if (const auto star = term.find('*'); star != std::string_view::npos) {
    weight = parse_number(term.substr(0, star), "weight");
    term = trim(term.substr(star + 1));
  }
  const auto colon = term.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::parse_error, "expected name:value, got '" + std::string(term) + "'");
  const std::string_view name = trim(term.substr(0, colon));
  const std::string_view arg = term.substr(colon + 1);
  if (name == "exp") return {weight, ExpAtom{parse_number(arg, "rate")}};
  if (name == "sin") return {weight, SinAtom{parse_number(arg, "rate")}};
  if (name == "cos") return {weight, CosAtom{parse_number(arg, "rate")}};
  if (name == "const") return {weight, ConstantAtom{parse_number(arg, "value")}};
  if (name == "pow") {
    const double d = parse_number(arg, "degree");
    const int k = static_cast<int>(d);
    if (d != k || k < 0 || k > kMaxMonomialDegree)
      throw Error(Errc::parse_error, "pow degree must be an integer in 0..6");
    return {weight, MonomialAtom{k}};
  }
  throw Error(Errc::parse_error, "unknown family '" + std::string(name) + "'");
}

}  // namespace

ClosedForm ClosedForm::exponential(double rate) {
  ClosedForm f;
  f.parts_.push_back({1.0, ExpAtom{rate}});
  return f;
}

ClosedForm ClosedForm::sine(double rate) {
  ClosedForm f;
  f.parts_.push_back({1.0, SinAtom{rate}});
  return f;
}

ClosedForm ClosedForm::cosine(double rate) {
  ClosedForm f;
  f.parts_.push_back({1.0, CosAtom{rate}});
  return f;
}

ClosedForm ClosedForm::monomial(int degree) {
  if (degree < 0 || degree > kMaxMonomialDegree)
    throw Error(Errc::invalid_params, "monomial degree must be in 0..6");
  ClosedForm f;
  f.parts_.push_back({1.0, MonomialAtom{degree}});
  return f;
}

ClosedForm ClosedForm::constant(double value) {
  ClosedForm f;
  f.parts_.push_back({1.0, ConstantAtom{value}});
  return f;
}

double ClosedForm::operator()(double t) const {
  double v = 0.0;
  for (const auto& p : parts_) v += p.weight * atom_value(p.atom, t);
  return v;
}

long double ClosedForm::value_ext(long double t) const {
  long double v = 0.0L;
  for (const auto& p : parts_) {
    const long double a = std::visit(
        [t](const auto& x) -> long double {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ExpAtom>) return std::exp(x.rate * t);
          if constexpr (std::is_same_v<T, SinAtom>) return std::sin(x.rate * t);
          if constexpr (std::is_same_v<T, CosAtom>) return std::cos(x.rate * t);
          if constexpr (std::is_same_v<T, MonomialAtom>) {
            long double p = 1.0L;
            for (int i = 0; i < x.degree; ++i) p *= t;
            return p;
          }
          if constexpr (std::is_same_v<T, ConstantAtom>) return x.value;
        },
        p.atom);
    v += static_cast<long double>(p.weight) * a;
  }
  return v;
}

ClosedForm& ClosedForm::operator+=(const ClosedForm& other) {
  parts_.insert(parts_.end(), other.parts_.begin(), other.parts_.end());
  return *this;
}

ClosedForm operator*(double w, ClosedForm f) {
  for (auto& p : f.parts_) p.weight *= w;
  return f;
}

ClosedForm ClosedForm::derivative(int order) const {
  if (order < 1 || order > 3)
    throw Error(Errc::invalid_params, "derivative order must be in 1..3");
  ClosedForm cur = *this;
  for (int o = 0; o < order; ++o) {
    ClosedForm next;
    for (const auto& p : cur.parts_) {
      std::visit(
          [&next, &p](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ExpAtom>)
              next.parts_.push_back({p.weight * x.rate, ExpAtom{x.rate}});
            if constexpr (std::is_same_v<T, SinAtom>)
              next.parts_.push_back({p.weight * x.rate, CosAtom{x.rate}});
            if constexpr (std::is_same_v<T, CosAtom>)
              next.parts_.push_back({-p.weight * x.rate, SinAtom{x.rate}});
            if constexpr (std::is_same_v<T, MonomialAtom>) {
              if (x.degree > 0)
                next.parts_.push_back({p.weight * x.degree, MonomialAtom{x.degree - 1}});
            }
            // constants vanish
          },
          p.atom);
    }
    cur = std::move(next);
  }
  if (cur.parts_.empty()) cur.parts_.push_back({1.0, ConstantAtom{0.0}});
  return cur;
}

double ClosedForm::max_exp_rate() const {
  double r = 0.0;
  for (const auto& p : parts_)
    if (const auto* e = std::get_if<ExpAtom>(&p.atom)) r = std::max(r, std::abs(e->rate));
  return r;
}

double ClosedForm::max_trig_rate() const {
  double r = 0.0;
  for (const auto& p : parts_) {
    if (const auto* s = std::get_if<SinAtom>(&p.atom)) r = std::max(r, std::abs(s->rate));
    if (const auto* c = std::get_if<CosAtom>(&p.atom)) r = std::max(r, std::abs(c->rate));
  }
  return r;
}

int ClosedForm::max_monomial_degree() const {
  int d = -1;
  for (const auto& p : parts_)
    if (const auto* m = std::get_if<MonomialAtom>(&p.atom)) d = std::max(d, m->degree);
  return d;
}

std::string ClosedForm::str() const {
  if (parts_.empty()) return "const:0";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) os << "+";
    if (parts_[i].weight != 1.0) os << parts_[i].weight << "*";
    os << atom_str(parts_[i].atom);
  }
  return os.str();
}

ClosedForm ClosedForm::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error(Errc::parse_error, "empty signal expression");
  ClosedForm f;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto plus = text.find('+', start);
    if (plus == std::string_view::npos) plus = text.size();
    f.parts_.push_back(parse_term(text.substr(start, plus - start)));
    start = plus + 1;
    if (plus == text.size()) break;
  }
  return f;
}

ClosedForm derivative_closed_form(const ClosedForm& form, int order) {
  return form.derivative(order);
}

}  // namespace exactdiff
