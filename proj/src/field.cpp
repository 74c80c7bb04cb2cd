#include "quniv/field.hpp"

#include <cctype>

#include "quniv/errors.hpp"

namespace quniv {

NumberField NumberField::imaginary_quadratic(long d) {
  if (d >= 0) throw InputError("imaginary quadratic field needs d < 0, got " + std::to_string(d));
  if (d != -1 && !is_squarefree(Integer(d)))
    throw InputError("d must be squarefree, got " + std::to_string(d));
  return NumberField(d);
}

long NumberField::omega_trace() const {
  if (is_rational()) return 0;
  return (((d_ % 4) + 4) % 4 == 1) ? 1 : 0;
}

Integer NumberField::omega_norm() const {
  if (is_rational()) return 0;
  if (omega_trace() == 1) return Integer((1 - d_) / 4);
  return Integer(-d_);
}

Integer NumberField::discriminant() const {
  if (is_rational()) return 1;
  return omega_trace() == 1 ? Integer(d_) : Integer(4 * d_);
}

std::string NumberField::name() const {
  if (is_rational()) return "Q";
  return "Q(sqrt(" + std::to_string(d_) + "))";
}

FieldElem::FieldElem(const NumberField& k, const Rational& a, const Rational& b) : k_(k), a_(a), b_(b) {
  if (k.is_rational() && b != 0) throw InputError("element of Q with nonzero w-coordinate");
}

void FieldElem::adopt_field(const FieldElem& o) {
  if (k_ == o.k_) return;
  if (o.k_.is_rational()) return;
  if (k_.is_rational()) {
    k_ = o.k_;
    return;
  }
  throw InputError("mixing elements of " + k_.name() + " and " + o.k_.name());
}

bool FieldElem::is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }

Integer FieldElem::denominator() const {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
  return r;
}

FieldElem FieldElem::conj() const {
  // conj(w) = t - w
  FieldElem r = *this;
  r.a_ = a_ + b_ * k_.omega_trace();
  r.b_ = -b_;
  return r;
}

Rational FieldElem::norm() const {
  // (a + b w)(a + b(t - w)) = a^2 + t a b + n b^2
  return a_ * a_ + Rational(k_.omega_trace()) * a_ * b_ + Rational(k_.omega_norm()) * b_ * b_;
}

Rational FieldElem::trace() const { return 2 * a_ + Rational(k_.omega_trace()) * b_; }

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw InputError("division by zero in field arithmetic");
  Rational n = norm();
  FieldElem c = conj();
  c.a_ /= n;
  c.b_ /= n;
  return c;
}

FieldElem FieldElem::pow(unsigned e) const {
  FieldElem r(k_, 1), base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  adopt_field(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  adopt_field(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  adopt_field(o);
  // (a + b w)(c + d w) = ac - n bd + (ad + bc + t bd) w
  Rational bd = b_ * o.b_;
  Rational na = a_ * o.a_ - Rational(k_.omega_norm()) * bd;
  Rational nb = a_ * o.b_ + b_ * o.a_ + Rational(k_.omega_trace()) * bd;
  a_ = na;
  b_ = nb;
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  adopt_field(o);
  return *this *= o.inverse();
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (a_ != o.a_ || b_ != o.b_) return false;
  return k_ == o.k_ || k_.is_rational() || o.k_.is_rational();
}

bool FieldElem::lex_less(const FieldElem& o) const {
  if (a_ != o.a_) return a_ < o.a_;
  return b_ < o.b_;
}

std::string FieldElem::str() const {
  if (b_ == 0) return to_string(a_);
  std::string s = a_ == 0 ? "" : to_string(a_);
  Rational mag = abs(b_);
  if (b_ < 0)
    s += "-";
  else if (!s.empty())
    s += "+";
  if (mag != 1) s += to_string(mag) + "*";
  return s + "w";
}

FieldElem FieldElem::parse(const NumberField& k, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty field element");
  FieldElem acc(k, 0);
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw InputError("malformed field element: '" + std::string(text) + "'");
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw InputError("malformed field element: '" + std::string(text) + "'");
    bool has_w = term.back() == 'w';
    if (has_w) {
      if (k.is_rational()) throw InputError("'w' used in an element of Q: '" + std::string(text) + "'");
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
      if (term.empty()) term = "1";
    }
    for (char c : term)
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/'))
        throw InputError("malformed field element: '" + std::string(text) + "'");
    Rational v = parse_rational(term) * sign;
    acc += has_w ? FieldElem(k, 0, v) : FieldElem(k, v);
    i = j;
  }
  return acc;
}

std::optional<FieldElem> sqrt_in_field(const FieldElem& x) {
  const NumberField& k = x.field();
  if (x.is_zero()) return x;
  if (k.is_rational() || x.b() == 0) {
    Rational r;
    if (is_perfect_square(x.a(), &r)) return FieldElem(k, r);
    if (k.is_rational()) return std::nullopt;
  }
  // y^2 = x with N(y) = n = sqrt(N(x)) >= 0 and Tr(y)^2 = Tr(x) + 2n.
  Rational n, t;
  if (!is_perfect_square(x.norm(), &n)) return std::nullopt;
  FieldElem y;
  if (is_perfect_square(Rational(x.trace() + 2 * n), &t) && t != 0) {
    y = (x + FieldElem(k, n)) / FieldElem(k, t);
  } else {
    // Tr(y) = 0: y = c*sqrt(d), x = c^2 d.
    if (x.b() != 0) return std::nullopt;
    Rational c;
    if (!is_perfect_square(Rational(x.a() / k.d()), &c)) return std::nullopt;
    FieldElem sqrt_d = k.omega_trace() == 1 ? FieldElem(k, -1, 2) : FieldElem(k, 0, 1);
    y = FieldElem(k, c) * sqrt_d;
  }
  if (y * y != x) return std::nullopt;
  if (y.b() < 0 || (y.b() == 0 && y.a() < 0)) y = -y;
  return y;
}

std::string poly_str(const Poly& p) {
  std::string s;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + p[i].str() + ")";
    if (i >= 1) s += "*x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace quniv
