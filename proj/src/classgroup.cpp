#include <algorithm>
#include <map>
#include <mutex>

#include "quniv/errors.hpp"
#include "quniv/global.hpp"

namespace quniv {

std::string BinaryForm::str() const { return "(" + a.get_str() + ", " + b.get_str() + ", " + c.get_str() + ")"; }

bool is_reduced(const BinaryForm& f) {
  if (abs(f.b) > f.a || f.a > f.c) return false;
  if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

BinaryForm reduce_form(const BinaryForm& f) {
  Integer D = f.discriminant();
  if (D >= 0 || f.a <= 0) throw InputError("reduce_form: not positive definite: " + f.str());
  BinaryForm g = f;
  for (;;) {
    // b into (-a, a].
    Integer two_a = 2 * g.a;
    Integer r = mod_floor(g.b, two_a);
    if (r > g.a) r -= two_a;
    if (r != g.b) {
      g.b = r;
      g.c = (g.b * g.b - D) / (4 * g.a);
    }
    if (g.a > g.c) {
      std::swap(g.a, g.c);
      g.b = -g.b;
      continue;
    }
    if (g.a == g.c && g.b < 0) g.b = -g.b;
    return g;
  }
}

BinaryForm compose_forms(const BinaryForm& f, const BinaryForm& g) {
  Integer D = f.discriminant();
  if (g.discriminant() != D) throw InputError("compose_forms: discriminants differ");
  Integer h = (f.b + g.b) / 2;
  Integer g1, s, t, e, x, y;
  mpz_gcdext(g1.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), f.a.get_mpz_t(), g.a.get_mpz_t());
  mpz_gcdext(e.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), g1.get_mpz_t(), h.get_mpz_t());
  Integer u = x * s, v = x * t, w = y;
  Integer A = f.a * g.a / (e * e);
  Integer B = (u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + D) / 2) / e;
  B = mod_floor(B, 2 * A);
  return {A, B, (B * B - D) / (4 * A)};
}

std::vector<BinaryForm> reduced_forms(const Integer& D) {
  if (D >= 0 || mod_floor(D, 4) > 1) throw InputError("reduced_forms: D must be a negative discriminant");
  std::vector<BinaryForm> out;
  for (Integer a = 1; 3 * a * a <= -D; ++a)
    for (Integer b = -a + 1; b <= a; ++b) {
      Integer num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Integer c = num / (4 * a);
      BinaryForm f{a, b, c};
      if (!is_reduced(f)) continue;
      Integer g = gcd(gcd(a, b), c);
      if (g != 1) continue;
      out.push_back(f);
    }
  return out;
}

size_t ClassGroup::index_of(const BinaryForm& f) const {
  BinaryForm r = reduce_form(f);
  for (size_t i = 0; i < forms_.size(); ++i)
    if (forms_[i] == r) return i;
  throw InputError("form " + f.str() + " has the wrong discriminant or is not primitive");
}

size_t ClassGroup::inverse(size_t i) const {
  const BinaryForm& f = forms_[i];
  return index_of({f.a, -f.b, f.c});
}

size_t ClassGroup::element_order(size_t i) const {
  size_t r = 1, x = i;
  while (x != 0) {
    x = compose(x, i);
    ++r;
  }
  return r;
}

std::vector<size_t> ClassGroup::squares() const {
  std::vector<char> seen(order(), 0);
  for (size_t i = 0; i < order(); ++i) seen[compose(i, i)] = 1;
  std::vector<size_t> out;
  for (size_t i = 0; i < order(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

size_t ClassGroup::ideal_class(const Ideal& I) const {
  if (!(I.field() == k_)) throw InputError("ideal_class: ideal over a different field");
  Ideal J = I * Ideal::principal(FieldElem(k_, Rational(I.den())));
  auto zb = J.z_basis();
  Integer a(zb[0].a().get_num()), b(zb[1].a().get_num()), c(zb[1].b().get_num());
  a /= c;
  b /= c;
  Integer B = -(2 * b + k_.omega_trace());
  Integer C = (B * B - D_) / (4 * a);
  return index_of({a, B, C});
}

Ideal ClassGroup::ideal_of(size_t i) const {
  const BinaryForm& f = forms_[i];
  Integer t = k_.omega_trace();
  Rational shift = make_rational(-f.b - t, 2);
  return Ideal::generated_by(k_, {FieldElem(k_, Rational(f.a)), FieldElem(k_, shift, 1)});
}

const ClassGroup& class_group(long d) {
  if (d >= 0) throw InputError("class_group: d must be negative");
  if (d < -10000) throw InputError("class_group: |d| above 10^4");
  if (!is_squarefree(Integer(-d))) throw InputError("class_group: d must be squarefree");
  static std::mutex mu;
  static std::map<long, ClassGroup> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  ClassGroup G;
  G.k_ = NumberField::imaginary_quadratic(d);
  G.D_ = G.k_.discriminant();
  G.forms_ = reduced_forms(G.D_);
  // The principal form is the first reduced form (a = 1).
  size_t n = G.forms_.size();
  G.table_.assign(n, std::vector<size_t>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      size_t r = G.index_of(compose_forms(G.forms_[i], G.forms_[j]));
      G.table_[i][j] = G.table_[j][i] = r;
    }
  return cache.emplace(d, std::move(G)).first->second;
}

size_t class_number(const NumberField& k) { return k.is_rational() ? 1 : class_group(k.d()).order(); }

size_t pic_two_part(long d) {
  const ClassGroup& G = class_group(d);
  return G.order() / G.squares().size();
}

std::vector<Ideal> integral_ideals_up_to_norm(const NumberField& k, const Integer& bound) {
  std::vector<Ideal> out;
  for (Integer n = 1; n <= bound; ++n) {
    if (k.is_rational()) {
      out.push_back(Ideal::principal(FieldElem(k, Rational(n))));
      continue;
    }
    for (Integer c = 1; c * c <= n; ++c) {
      if (n % (c * c) != 0) continue;
      Integer a = n / c;
      for (Integer b = 0; b < a; b += c) {
        Ideal J = Ideal::generated_by(k, {FieldElem(k, Rational(a)), FieldElem(k, Rational(b), Rational(c))});
        if (J.norm() != Rational(n)) continue;
        auto zb = J.z_basis();
        if (zb[0].a() == Rational(a) && zb[1] == FieldElem(k, Rational(b), Rational(c))) out.push_back(J);
      }
    }
  }
  return out;
}

std::vector<FieldElem> elements_up_to_norm(const Ideal& I, const Rational& bound) {
  const NumberField& k = I.field();
  if (!k.is_rational()) return ideal_elements_up_to_norm(I, bound);
  // Over Q the norm is the absolute value.
  Rational g = I.z_basis()[0].a();
  std::vector<FieldElem> out{FieldElem(k, 0)};
  for (Integer m = 1; Rational(m) * g <= bound; ++m) {
    out.emplace_back(k, Rational(-m) * g);
    out.emplace_back(k, Rational(m) * g);
  }
  return out;
}

}  // namespace quniv
