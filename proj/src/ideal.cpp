#include "quniv/ideal.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "quniv/errors.hpp"

namespace quniv {

namespace {

struct Hnf {
  Integer a, b, c;
};

// Hermite basis of the Z-span of integer vectors (x, y) meaning x + y*w.
Hnf hnf(const std::vector<std::pair<Integer, Integer>>& vecs) {
  Integer px = 0, py = 0, a = 0;
  for (const auto& [x, y] : vecs) {
    if (y == 0) {
      mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), x.get_mpz_t());
      continue;
    }
    if (py == 0) {
      px = x;
      py = y;
      continue;
    }
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), py.get_mpz_t(), y.get_mpz_t());
    Integer nx = s * px + t * x;
    Integer ex = Integer(y / g) * px - Integer(py / g) * x;  // y-part cancels
    mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), ex.get_mpz_t());
    px = nx;
    py = g;
  }
  if (a == 0 || py == 0) throw InputError("ideal generators span a degenerate lattice");
  if (py < 0) {
    px = -px;
    py = -py;
  }
  return {abs(a), mod_floor(px, a), py};
}

std::pair<Integer, Integer> coords(const FieldElem& x) {
  return {Integer(x.a().get_num()), Integer(x.b().get_num())};
}

}  // namespace

Ideal Ideal::unit(const NumberField& k) {
  Ideal I;
  I.k_ = k;
  I.den_ = 1;
  I.a_ = 1;
  I.b_ = 0;
  I.c_ = k.is_rational() ? 0 : 1;
  return I;
}

Ideal Ideal::principal(const FieldElem& x) { return generated_by(x.field(), {x}); }

Ideal Ideal::generated_by(const NumberField& k, const std::vector<FieldElem>& gens) {
  Integer D = 1;
  bool any = false;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    any = true;
    Integer gd = g.denominator();
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), gd.get_mpz_t());
  }
  if (!any) throw InputError("the zero ideal is not a fractional ideal");
  Ideal I;
  I.k_ = k;
  I.den_ = D;
  if (k.is_rational()) {
    Integer a = 0;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      Integer v = Integer(Rational(g.a() * D).get_num());
      mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), v.get_mpz_t());
    }
    I.a_ = a;
    I.b_ = 0;
    I.c_ = 0;
  } else {
    std::vector<std::pair<Integer, Integer>> vecs;
    FieldElem w = FieldElem::omega(k);
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      FieldElem s = g * FieldElem(k, Rational(D));
      vecs.push_back(coords(s));
      vecs.push_back(coords(s * w));
    }
    Hnf h = hnf(vecs);
    I.a_ = h.a;
    I.b_ = h.b;
    I.c_ = h.c;
  }
  I.normalize();
  return I;
}

void Ideal::normalize() {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
    den_ /= g;
  }
  if (!k_.is_rational()) b_ = mod_floor(b_, a_);
}

Rational Ideal::norm() const {
  if (k_.is_rational()) return make_rational(a_, den_);
  return make_rational(a_ * c_, den_ * den_);
}

std::array<FieldElem, 2> Ideal::z_basis() const {
  Rational inv = make_rational(1, den_);
  if (k_.is_rational()) return {FieldElem(k_, Rational(a_) * inv), FieldElem(k_, 0)};
  return {FieldElem(k_, Rational(a_) * inv), FieldElem(k_, Rational(b_) * inv, Rational(c_) * inv)};
}

std::pair<FieldElem, FieldElem> Ideal::two_generators() const {
  auto zb = z_basis();
  return {zb[0], zb[1]};
}

Ideal Ideal::operator+(const Ideal& o) const {
  auto x = z_basis(), y = o.z_basis();
  return generated_by(k_.is_rational() ? o.k_ : k_, {x[0], x[1], y[0], y[1]});
}

Ideal Ideal::operator*(const Ideal& o) const {
  auto x = z_basis(), y = o.z_basis();
  std::vector<FieldElem> g;
  for (const auto& u : x)
    for (const auto& v : y) g.push_back(u * v);
  return generated_by(k_.is_rational() ? o.k_ : k_, g);
}

Ideal Ideal::conj() const {
  auto x = z_basis();
  return generated_by(k_, {x[0].conj(), x[1].conj()});
}

Ideal Ideal::inverse() const {
  FieldElem n(k_, norm());
  auto x = conj().z_basis();
  return generated_by(k_, {x[0] / n, x[1] / n});
}

Ideal Ideal::intersect(const Ideal& o) const { return (inverse() + o.inverse()).inverse(); }

Ideal Ideal::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Ideal r = unit(k_), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool Ideal::contains(const FieldElem& x) const {
  if (x.is_zero()) return true;
  FieldElem y = x * FieldElem(k_, Rational(den_));
  if (!y.is_integral()) return false;
  auto [X, Y] = coords(y);
  if (k_.is_rational()) return mpz_divisible_p(X.get_mpz_t(), a_.get_mpz_t());
  if (!mpz_divisible_p(Y.get_mpz_t(), c_.get_mpz_t())) return false;
  Integer r = X - Integer(Y / c_) * b_;
  return mpz_divisible_p(r.get_mpz_t(), a_.get_mpz_t());
}

bool Ideal::operator==(const Ideal& o) const {
  return den_ == o.den_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_ &&
         (k_ == o.k_ || (k_.is_rational() && o.k_.is_rational()));
}

std::optional<FieldElem> Ideal::generator() const {
  if (k_.is_rational()) return FieldElem(k_, make_rational(a_, den_));
  Integer n = a_ * c_;
  FieldElem v1(k_, Rational(a_)), v2(k_, Rational(b_), Rational(c_));
  std::optional<FieldElem> best;
  for (const auto& x : lattice_elements_up_to_norm(v1, v2, Rational(n))) {
    if (x.norm() != n) continue;
    if (!best || best->lex_less(x)) best = x;
  }
  if (!best) return std::nullopt;
  return *best / FieldElem(k_, Rational(den_));
}

std::string Ideal::str() const {
  auto g = two_generators();
  if (k_.is_rational()) return "(" + g.first.str() + ")";
  return "(" + g.first.str() + ", " + g.second.str() + ")";
}

std::vector<FieldElem> lattice_elements_up_to_norm(const FieldElem& v1, const FieldElem& v2,
                                                   const Rational& bound) {
  const NumberField& k = v1.field().is_rational() ? v2.field() : v1.field();
  if (k.is_rational()) throw InputError("element enumeration needs an imaginary quadratic field");
  // Lagrange-Gauss reduction keeps the scan proportional to the output size.
  FieldElem u1 = v1, u2 = v2;
  if (u2.norm() < u1.norm()) std::swap(u1, u2);
  for (;;) {
    Rational mu = (u1 * u2.conj()).trace() / (2 * u1.norm());
    Integer m;
    mpz_fdiv_q(m.get_mpz_t(), Rational(mu + Rational(1, 2)).get_num_mpz_t(),
               Rational(mu + Rational(1, 2)).get_den_mpz_t());
    if (m != 0) u2 -= FieldElem(k, Rational(m)) * u1;
    if (u2.norm() >= u1.norm()) break;
    std::swap(u1, u2);
  }
  Rational A = u1.norm(), C = u2.norm(), B = (u1 * u2.conj()).trace();
  Rational disc = 4 * A * C - B * B;
  if (disc <= 0) throw InputError("degenerate lattice in element enumeration");
  auto isqrt_floor = [](const Rational& q) -> Integer {
    if (q <= 0) return 0;
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return sqrt(f);
  };
  Integer tmax = isqrt_floor(Rational(4 * A * bound / disc)) + 1;
  std::vector<std::pair<Rational, FieldElem>> out;
  for (Integer t = -tmax; t <= tmax; ++t) {
    Rational tq(t);
    Rational dt = 4 * A * bound - disc * tq * tq;
    if (dt < 0) continue;
    Rational center = -B * tq / (2 * A);
    Integer hw = isqrt_floor(Rational(dt / (4 * A * A))) + 1;
    Integer c;
    mpz_fdiv_q(c.get_mpz_t(), center.get_num_mpz_t(), center.get_den_mpz_t());
    for (Integer s = c - hw; s <= c + hw + 1; ++s) {
      FieldElem x = FieldElem(k, Rational(s)) * u1 + FieldElem(k, tq) * u2;
      Rational nx = x.norm();
      if (nx <= bound) out.emplace_back(nx, x);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first < r.first;
    return l.second.lex_less(r.second);
  });
  std::vector<FieldElem> res;
  for (auto& e : out) res.push_back(e.second);
  return res;
}

std::vector<FieldElem> ideal_elements_up_to_norm(const Ideal& I, const Rational& bound) {
  auto zb = I.z_basis();
  return lattice_elements_up_to_norm(zb[0], zb[1], bound);
}

std::vector<PrimeIdeal> primes_above(const NumberField& k, const Integer& p) {
  if (!is_prime(p)) throw InputError("primes_above: " + p.get_str() + " is not prime");
  if (k.is_rational()) return {PrimeIdeal{Ideal::principal(FieldElem(k, Rational(p))), p, 1, 1}};
  Integer D = k.discriminant();
  FieldElem w = FieldElem::omega(k);
  FieldElem P(k, Rational(p));
  if (mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t())) {
    for (long a0 = 0;; ++a0) {
      FieldElem pi = FieldElem(k, a0) + w;
      if (ord_p(Integer(pi.norm().get_num()), p) == 1)
        return {PrimeIdeal{Ideal::generated_by(k, {P, pi}), p, 2, 1}};
    }
  }
  int split;
  if (p == 2)
    split = mod_floor(Integer(k.d()), 8) == 1 ? 1 : -1;
  else
    split = jacobi(D, p);
  if (split == -1) return {PrimeIdeal{Ideal::principal(P), p, 1, 2}};
  // roots of x^2 - t x + n mod p
  std::vector<Integer> roots;
  Integer t = k.omega_trace(), n = k.omega_norm();
  for (Integer r = 0; r < p && roots.size() < 2 && p == 2; ++r)
    if (mod_floor(r * r - t * r + n, p) == 0) roots.push_back(r);
  if (p != 2) {
    Integer s = sqrt_mod_prime(D, p);
    Integer inv2 = *inverse_mod(Integer(2), p);
    roots = {mod_floor((t + s) * inv2, p), mod_floor((t - s) * inv2, p)};
    std::sort(roots.begin(), roots.end());
  }
  std::vector<PrimeIdeal> out;
  for (const auto& r : roots)
    out.push_back(PrimeIdeal{Ideal::generated_by(k, {P, w - FieldElem(k, Rational(r))}), p, 1, 1});
  return out;
}

int prime_valuation(const PrimeIdeal& P, const FieldElem& x) {
  if (x.is_zero()) throw InputError("valuation of zero");
  Integer D = x.denominator();
  FieldElem y = x * FieldElem(x.field(), Rational(D));
  int base = D == 1 ? 0 : -P.e * ord_p(D, P.p);
  Rational ny = y.norm();
  int bound = ord_p(Integer(ny.get_num()), P.p) / P.f;
  int v = 0;
  Ideal pw = P.ideal;
  while (v < bound && pw.contains(y)) {
    ++v;
    pw = pw * P.ideal;
  }
  return base + v;
}

int prime_valuation(const PrimeIdeal& P, const Ideal& I) {
  auto zb = I.z_basis();
  int v = prime_valuation(P, zb[0]);
  if (!zb[1].is_zero()) v = std::min(v, prime_valuation(P, zb[1]));
  return v;
}

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const Ideal& I) {
  Rational n = I.norm();
  Integer m = Integer(n.get_num()) * Integer(n.get_den()) * I.den();
  std::vector<std::pair<PrimeIdeal, int>> out;
  for (const auto& [p, e] : factorize(m).factors) {
    (void)e;
    for (const auto& P : primes_above(I.field(), p)) {
      int v = prime_valuation(P, I);
      if (v != 0) out.emplace_back(P, v);
    }
  }
  return out;
}

std::vector<Ideal> integral_divisors(const Ideal& I) {
  if (!I.is_integral()) throw InputError("integral_divisors of a non-integral ideal");
  auto fac = factor_ideal(I);
  std::vector<Ideal> out{Ideal::unit(I.field())};
  for (const auto& [P, e] : fac) {
    std::vector<Ideal> next;
    for (const auto& d : out) {
      Ideal cur = d;
      for (int j = 0; j <= e; ++j) {
        next.push_back(cur);
        cur = cur * P.ideal;
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<PrimeIdeal> primes_up_to_norm(const NumberField& k, const Integer& bound) {
  std::vector<PrimeIdeal> out;
  for (Integer p = 2; p <= bound; p = next_prime(p))
    for (auto& P : primes_above(k, p))
      if (P.ideal.norm() <= Rational(bound)) out.push_back(P);
  std::stable_sort(out.begin(), out.end(),
                   [](const PrimeIdeal& l, const PrimeIdeal& r) { return l.ideal.norm() < r.ideal.norm(); });
  return out;
}

}  // namespace quniv
