#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "quniv/arith.hpp"

namespace quniv {

// Q, or Q(sqrt d) with d < 0 squarefree. The ring of integers is Z[w] where
// w = sqrt d (d = 2,3 mod 4) or (1 + sqrt d)/2 (d = 1 mod 4); w^2 = t*w - n.
class NumberField {
 public:
  NumberField() = default;
  static NumberField rationals() { return NumberField(); }
  static NumberField imaginary_quadratic(long d);

  bool is_rational() const { return d_ == 0; }
  long d() const { return d_; }
  long omega_trace() const;    // t
  Integer omega_norm() const;  // n
  Integer discriminant() const;
  std::string name() const;

  bool operator==(const NumberField&) const = default;

 private:
  explicit NumberField(long d) : d_(d) {}
  long d_ = 0;
};

// a + b*w with rational coordinates.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long v) : a_(v) {}  // NOLINT: integers promote into any field
  FieldElem(const Integer& v) : a_(v) {}  // NOLINT
  FieldElem(const Rational& v) : a_(v) {}  // NOLINT
  FieldElem(const NumberField& k, const Rational& a, const Rational& b = 0);

  static FieldElem omega(const NumberField& k) { return FieldElem(k, 0, 1); }

  const NumberField& field() const { return k_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  bool is_integral() const;
  Integer denominator() const;  // least D with D*x integral

  FieldElem conj() const;
  Rational norm() const;
  Rational trace() const;
  FieldElem inverse() const;
  FieldElem pow(unsigned e) const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
  friend FieldElem operator/(FieldElem x, const FieldElem& y) { return x /= y; }
  bool operator==(const FieldElem& o) const;

  // Lexicographic on (a, b); used for deterministic tie-breaks only.
  bool lex_less(const FieldElem& o) const;

  std::string str() const;  // "a/b+c/e*w" style, exact
  static FieldElem parse(const NumberField& k, std::string_view s);

 private:
  void adopt_field(const FieldElem& o);
  NumberField k_;
  Rational a_, b_;
};

// Exact square root in k if one exists (canonical sign: b > 0, else a > 0).
std::optional<FieldElem> sqrt_in_field(const FieldElem& x);

// Polynomial helpers over k, coefficient i is the x^i term.
using Poly = std::vector<FieldElem>;
std::string poly_str(const Poly& p);

}  // namespace quniv
