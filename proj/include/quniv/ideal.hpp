#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quniv/field.hpp"

namespace quniv {

// Nonzero fractional ideal of the maximal order of k, stored as (1/den) * I with
// I integral and given by its Hermite basis {a, b + c*w} (a, c > 0, 0 <= b < a).
// Over Q the ideal is (a/den).
class Ideal {
 public:
  Ideal() = default;  // the unit ideal of Z
  static Ideal unit(const NumberField& k);
  static Ideal principal(const FieldElem& x);
  static Ideal generated_by(const NumberField& k, const std::vector<FieldElem>& gens);

  const NumberField& field() const { return k_; }
  Rational norm() const;
  bool is_integral() const { return den_ == 1; }

  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal inverse() const;
  Ideal conj() const;
  Ideal intersect(const Ideal& o) const;
  Ideal pow(int e) const;
  bool contains(const FieldElem& x) const;
  bool divides(const Ideal& o) const { return (*this + o) == *this; }
  bool operator==(const Ideal& o) const;

  // Z-basis (two elements; over Q the second is zero).
  std::array<FieldElem, 2> z_basis() const;
  std::pair<FieldElem, FieldElem> two_generators() const;
  // Largest integer m with ideal inside m*O (for integral ideals); the content.
  const Integer& den() const { return den_; }

  // Generator if principal (canonical choice), else nullopt.
  std::optional<FieldElem> generator() const;
  bool is_principal() const { return generator().has_value(); }

  std::string str() const;

 private:
  void normalize();
  NumberField k_;
  Integer den_ = 1;
  Integer a_ = 1, b_ = 0, c_ = 0;
};

// Elements x of the Z-lattice with basis {v1, v2} satisfying N(x) <= bound,
// sorted by norm then lexicographically. Positive definite norm form assumed.
std::vector<FieldElem> lattice_elements_up_to_norm(const FieldElem& v1, const FieldElem& v2,
                                                   const Rational& bound);
std::vector<FieldElem> ideal_elements_up_to_norm(const Ideal& I, const Rational& bound);

// Prime ideals above a rational prime p, with their ramification index.
struct PrimeIdeal {
  Ideal ideal;
  Integer p;
  int e = 1;
  int f = 1;
};
std::vector<PrimeIdeal> primes_above(const NumberField& k, const Integer& p);

// Exact valuation of a nonzero element / ideal at a prime ideal.
int prime_valuation(const PrimeIdeal& P, const FieldElem& x);
int prime_valuation(const PrimeIdeal& P, const Ideal& I);

// Factorization of a nonzero fractional ideal into prime ideals.
std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const Ideal& I);

// All integral ideals dividing the integral ideal I.
std::vector<Ideal> integral_divisors(const Ideal& I);

// Prime ideals of norm <= bound, ordered by norm.
std::vector<PrimeIdeal> primes_up_to_norm(const NumberField& k, const Integer& bound);

}  // namespace quniv
