#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quniv {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical num/den (den > 0, lowest terms).
Rational make_rational(const Integer& num, const Integer& den = 1);

struct Factorization {
  int sign = 1;
  std::vector<std::pair<Integer, unsigned>> factors;  // primes strictly increasing

  Integer product() const;
};

Factorization factorize(const Integer& n);
bool is_prime(const Integer& n);
Integer next_prime(const Integer& n);  // smallest prime > n

int jacobi(const Integer& a, const Integer& n);

// x^2 + y^2 = n with x >= y >= 0, or nullopt if impossible.
std::optional<std::pair<Integer, Integer>> cornacchia_sum_two_squares(const Integer& n);

int ord_p(const Integer& n, const Integer& p);
int ord_p(const Rational& x, const Integer& p);

bool is_perfect_square(const Integer& n, Integer* root = nullptr);
bool is_perfect_square(const Rational& x, Rational* root = nullptr);
bool is_squarefree(const Integer& n);

Integer mod_floor(const Integer& a, const Integer& m);
std::optional<Integer> inverse_mod(const Integer& a, const Integer& m);
Integer pow_mod(const Integer& b, const Integer& e, const Integer& m);
Integer sqrt_mod_prime(const Integer& a, const Integer& p);  // p odd prime, a a residue
Integer binomial(unsigned n, unsigned k);
Integer ipow(const Integer& b, unsigned e);

int64_t to_i64(const Integer& n);
std::string to_string(const Integer& n);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

}  // namespace quniv
