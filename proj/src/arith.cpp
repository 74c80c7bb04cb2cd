#include "quniv/arith.hpp"

#include <algorithm>
#include <map>

#include "quniv/errors.hpp"

namespace quniv {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer Factorization::product() const {
  Integer r = sign;
  for (const auto& [p, e] : factors) r *= ipow(p, e);
  return r;
}

namespace {

constexpr unsigned long kTrialLimit = 1000000;

// Deterministic Miller-Rabin bases, valid below 3.3e24.
bool miller_rabin(const Integer& n) {
  static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (unsigned long a : bases) {
    if (n == a) return true;
    Integer x = pow_mod(Integer(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n odd composite.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  split_into(d, out);
  split_into(n / d, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 80) return miller_rabin(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer next_prime(const Integer& n) {
  Integer c = n + 1;
  if (c < 2) return 2;
  while (!is_prime(c)) ++c;
  return c;
}

Factorization factorize(const Integer& n) {
  if (n == 0) throw InputError("factorize: n must be nonzero");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  Integer m = abs(n);
  std::map<Integer, unsigned> acc;
  for (unsigned long p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > m) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e) acc[Integer(p)] = e;
  }
  split_into(m, acc);
  f.factors.assign(acc.begin(), acc.end());
  return f;
}

int jacobi(const Integer& a, const Integer& n) {
  if (n < 1 || mpz_even_p(n.get_mpz_t())) throw InputError("jacobi: n must be odd and positive");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

Integer pow_mod(const Integer& b, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer sqrt_mod_prime(const Integer& a, const Integer& p) {
  Integer x = mod_floor(a, p);
  if (x == 0) return 0;
  if (jacobi(x, p) != 1) throw InputError("sqrt_mod_prime: not a quadratic residue");
  // Tonelli-Shanks
  Integer q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++s;
  }
  Integer z = 2;
  while (jacobi(z, p) != -1) ++z;
  Integer c = pow_mod(z, q, p);
  Integer r = pow_mod(x, (q + 1) / 2, p);
  Integer t = pow_mod(x, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Integer b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

std::optional<std::pair<Integer, Integer>> cornacchia_sum_two_squares(const Integer& n) {
  if (n < 1) throw InputError("cornacchia_sum_two_squares: n must be positive");
  // Multiply Gaussian prime factors: x + y i accumulates the product.
  Integer x = 1, y = 0;
  auto mul = [&](const Integer& a, const Integer& b) {
    Integer nx = x * a - y * b;
    Integer ny = x * b + y * a;
    x = nx;
    y = ny;
  };
  for (const auto& [p, e] : factorize(n).factors) {
    if (p == 2) {
      for (unsigned i = 0; i < e; ++i) mul(1, 1);
    } else if (mod_floor(p, 4) == 3) {
      if (e % 2) return std::nullopt;
      for (unsigned i = 0; i < e / 2; ++i) mul(p, 0);
    } else {
      // Cornacchia: reduce p, r0 = sqrt(-1) by Euclid until r < sqrt(p).
      Integer r0 = sqrt_mod_prime(Integer(-1), p);
      if (2 * r0 > p) r0 = p - r0;
      Integer a = p, b = r0;
      while (b * b > p) {
        Integer t = a % b;
        a = b;
        b = t;
      }
      Integer c = sqrt(Integer(p - b * b));
      for (unsigned i = 0; i < e; ++i) mul(b, c);
    }
  }
  x = abs(x);
  y = abs(y);
  if (x < y) std::swap(x, y);
  return std::make_pair(x, y);
}

int ord_p(const Integer& n, const Integer& p) {
  if (n == 0) throw InputError("ord_p of zero");
  if (p < 2) throw InputError("ord_p: bad prime");
  Integer m = n;
  return static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

int ord_p(const Rational& x, const Integer& p) {
  return ord_p(Integer(x.get_num()), p) - ord_p(Integer(x.get_den()), p);
}

bool is_perfect_square(const Integer& n, Integer* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) *root = sqrt(n);
  return true;
}

bool is_perfect_square(const Rational& x, Rational* root) {
  Integer rn, rd;
  if (!is_perfect_square(Integer(x.get_num()), &rn) || !is_perfect_square(Integer(x.get_den()), &rd))
    return false;
  if (root) *root = make_rational(rn, rd);
  return true;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (const auto& f : factorize(n).factors)
    if (f.second > 1) return false;
  return true;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) {
    if (abs(m) == 1) return Integer(0);
    return std::nullopt;
  }
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer ipow(const Integer& b, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

int64_t to_i64(const Integer& n) {
  if (!n.fits_slong_p()) throw PrecisionError("integer exceeds 64 bits: " + n.get_str());
  return n.get_si();
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational: '" + s + "'");
  }
}

}  // namespace quniv
