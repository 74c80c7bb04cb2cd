#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quniv/field.hpp"
#include "quniv/ideal.hpp"

namespace quniv {

enum class PrimeKind { Rational, Split, Inert, Ramified };

// Completion of k at a finite prime P. Elements stay global and exact;
// residue computations go through ResidueRing.
class LocalContext {
 public:
  LocalContext(const NumberField& k, const PrimeIdeal& P, int precision);

  const NumberField& field() const { return k_; }
  const PrimeIdeal& prime() const { return P_; }
  const Integer& p() const { return P_.p; }
  PrimeKind kind() const { return kind_; }
  int e_abs() const { return P_.e; }
  int f() const { return P_.f; }
  int e2() const { return e2_; }
  bool is_dyadic() const { return e2_ > 0; }
  const FieldElem& uniformizer() const { return pi_; }
  int precision() const { return precision_; }
  const FieldElem& delta() const { return delta_; }
  const FieldElem& rho() const { return rho_; }
  Integer residue_field_size() const;
  std::string label() const;

  LocalContext with_precision(int N) const;

  int valuation(const FieldElem& x) const;  // x != 0
  std::optional<int> valuation_or_inf(const FieldElem& x) const;
  int valuation(const Ideal& I) const;
  FieldElem unit_part(const FieldElem& x) const;  // x / pi^v(x)

  // Image of w in Z_p modulo p^k (split primes only).
  Integer split_root(int k) const;
  // Global representatives of the residue field.
  std::vector<FieldElem> residue_reps() const;

 private:
  friend std::vector<LocalContext> local_context(const NumberField&, const Integer&, int);
  NumberField k_;
  PrimeIdeal P_;
  PrimeKind kind_;
  int e2_ = 0;
  FieldElem pi_;
  int precision_;
  FieldElem delta_, rho_;
  Integer root_mod_p_;  // split primes: P = (p, w - root)
};

int precision_floor(int e2);
// One context per prime above p. precision 0 means the floor.
std::vector<LocalContext> local_context(const NumberField& k, const Integer& p, int precision = 0);

// O_v / pi^K, computed inside O (x) Z/p^M with basis {1, theta}: theta = w (inert) or
// pi (ramified); a single coordinate for Q and split primes.
class ResidueRing {
 public:
  struct Elem {
    int64_t a = 0, b = 0;
    bool operator==(const Elem&) const = default;
  };

  ResidueRing(const LocalContext& ctx, int K);

  int K() const { return K_; }
  uint64_t size() const;
  const LocalContext& context() const { return ctx_; }

  Elem reduce(const FieldElem& x) const;  // requires v(x) >= 0
  Elem from_int(int64_t v) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem pow(Elem x, uint64_t e) const;
  int val(const Elem& x) const;  // K when x = 0 mod pi^K
  bool is_unit(const Elem& x) const { return val(x) == 0; }

  uint64_t key(const Elem& x) const;  // canonical index of x mod pi^K in [0, size)
  Elem from_key(uint64_t k) const;
  FieldElem lift(const Elem& x) const;

 private:
  int64_t mod(int64_t v) const;
  int64_t mulmod(int64_t x, int64_t y) const;
  int pval(int64_t v, int cap) const;

  LocalContext ctx_;
  int K_;
  int deg_;
  int64_t p_, q_, pa_, pb_;
  int M_;
  int64_t t_ = 0, n_ = 0;  // theta^2 = t theta - n
  int64_t shift_ = 0;      // ramified: w = theta - shift
};

struct DefectIdeal {
  bool zero = false;
  int exponent = 0;  // ord_v of the defect of x / pi^(2k), v(x / pi^(2k)) in {0, 1}
  bool operator==(const DefectIdeal&) const = default;
  std::string str() const;
};

bool is_square_local(const FieldElem& x, const LocalContext& ctx);
DefectIdeal quadratic_defect(const FieldElem& x, const LocalContext& ctx);

struct Place {
  enum class Kind { Finite, Real, Complex };
  Kind kind = Kind::Real;
  std::optional<LocalContext> ctx;

  static Place real() { return Place{Kind::Real, std::nullopt}; }
  static Place complex() { return Place{Kind::Complex, std::nullopt}; }
  static Place finite(const LocalContext& c) { return Place{Kind::Finite, c}; }
  std::string label() const;
};

int hilbert_symbol(const FieldElem& a, const FieldElem& b, const Place& v);
int hilbert_symbol(const FieldElem& a, const FieldElem& b, const LocalContext& ctx);
// Primitive-solution search mod pi^(2e2+3); valid at every finite place.
int hilbert_symbol_search(const FieldElem& a, const FieldElem& b, const LocalContext& ctx);

}  // namespace quniv
