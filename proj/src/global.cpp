#include <algorithm>
#include <tuple>

#include "quniv/errors.hpp"
#include "quniv/global.hpp"

namespace quniv {

namespace {

Rational abs_norm(const FieldElem& x) { return x.field().is_rational() ? Rational(abs(x.a())) : x.norm(); }

FieldElem half(const NumberField& k) { return FieldElem(k, make_rational(1, 2)); }

Matrix binary_gram(const FieldElem& a, const FieldElem& b, const FieldElem& c) {
  const NumberField& k = a.field().is_rational() ? (b.field().is_rational() ? c.field() : b.field()) : a.field();
  Matrix G(2, 2, FieldElem(k, 0));
  G(0, 0) = a;
  G(1, 1) = c;
  G(0, 1) = G(1, 0) = b * half(k);
  return G;
}

// {t : t v in L} for the coordinate vector v.
Ideal line_ideal(const QuadLattice& L, const std::vector<FieldElem>& v) {
  std::optional<Ideal> acc;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Ideal part = L.coeff_ideals()[i] * Ideal::principal(v[i].inverse());
    acc = acc ? acc->intersect(part) : part;
  }
  return *acc;
}

FieldElem bilinear(const Matrix& G, const std::vector<FieldElem>& u, const std::vector<FieldElem>& v) {
  FieldElem s(u[0].field().is_rational() ? G(0, 0).field() : u[0].field(), 0);
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) s += u[i] * G(i, j) * v[j];
  return s;
}

struct Shape {
  Ideal A;          // binary part is A x + A^-1 y
  FieldElem gamma;  // Q(z)
  Ideal cz;         // coefficient ideal of z
};

std::optional<Shape> ternary_shape(const QuadLattice& L) {
  const Matrix& G = L.gram();
  for (size_t z : {size_t(2), size_t(1), size_t(0)}) {
    size_t i = z == 0 ? 1 : 0, j = z == 2 ? 1 : 2;
    if (!G(i, z).is_zero() || !G(j, z).is_zero()) continue;
    Matrix B(2, 2, G(0, 0));
    B(0, 0) = G(i, i);
    B(0, 1) = G(i, j);
    B(1, 0) = G(j, i);
    B(1, 1) = G(j, j);
    QuadLattice bin(L.field(), B, {L.coeff_ideals()[i], L.coeff_ideals()[j]});
    if (auto A = hyperbolic_ideal(bin)) return Shape{*A, G(z, z), L.coeff_ideals()[z]};
  }
  return std::nullopt;
}

bool shape_represents(const Shape& s, const FieldElem& alpha, const Integer& bound) {
  for (const auto& c : elements_up_to_norm(s.cz, Rational(bound))) {
    FieldElem r = alpha - s.gamma * c * c;
    if (r.is_zero() || binary_hyperbolic_represents(s.A, r)) return true;
  }
  return false;
}

// Nonzero integral targets with |N| <= bound; 1 first, then by norm.
std::vector<FieldElem> small_targets(const NumberField& k, const Integer& bound) {
  auto elems = elements_up_to_norm(Ideal::unit(k), Rational(bound));
  std::vector<FieldElem> out{FieldElem(k, 1)};
  for (const auto& x : elems)
    if (!x.is_zero() && !(x == FieldElem(k, 1))) out.push_back(x);
  return out;
}

}  // namespace

std::optional<HyperbolicWitness> binary_hyperbolic_represents(const Ideal& A, const FieldElem& alpha) {
  if (alpha.is_zero()) throw InputError("binary_hyperbolic_represents: alpha = 0");
  if (!alpha.is_integral()) return std::nullopt;
  const NumberField& k = A.field();
  FieldElem al = alpha.field().is_rational() ? FieldElem(k, alpha.a()) : alpha;
  auto divisors = integral_divisors(Ideal::principal(al));
  std::stable_sort(divisors.begin(), divisors.end(),
                   [](const Ideal& l, const Ideal& r) { return l.norm() < r.norm(); });
  for (const auto& C : divisors) {
    if (auto g = (A * C).generator()) return HyperbolicWitness{*g, al / *g};
  }
  return std::nullopt;
}

std::optional<Ideal> hyperbolic_ideal(const QuadLattice& L) {
  if (L.rank() != 2) return std::nullopt;
  const NumberField& k = L.field();
  const Matrix& G = L.gram();
  auto s = sqrt_in_field(G(0, 1) * G(0, 1) - G(0, 0) * G(1, 1));
  if (!s) return std::nullopt;
  std::vector<FieldElem> v1, v2;
  if (G(0, 0).is_zero()) {
    v1 = {FieldElem(k, 1), FieldElem(k, 0)};
    v2 = {-G(1, 1), FieldElem(k, 2) * G(0, 1)};
  } else {
    v1 = {-G(0, 1) + *s, G(0, 0)};
    v2 = {-G(0, 1) - *s, G(0, 0)};
  }
  FieldElem beta = bilinear(G, v1, v2);
  Ideal b1 = line_ideal(L, v1), b2 = line_ideal(L, v2);
  if (!(b1 * b2 * Ideal::principal(FieldElem(k, 2) * beta) == Ideal::unit(k))) return std::nullopt;
  if (!(L.volume() == Ideal::principal(FieldElem(k, make_rational(1, 4))))) return std::nullopt;
  return b1;
}

BinaryConstruction construct_binary(const Ideal& A) {
  const NumberField& k = A.field();
  Ideal Ainv = A.inverse(), O = Ideal::unit(k);
  Matrix H = binary_gram(FieldElem(k, 0), FieldElem(k, 1), FieldElem(k, 0));
  BinaryConstruction out{A, QuadLattice(k, H, {A, Ainv}), {}, {}, QuadLattice(k, H), {}};
  Rational nA = abs_norm(A.z_basis()[0]).get_den() == 1 && k.is_rational() ? Rational(abs(A.z_basis()[0].a()))
                                                                         : A.norm();
  using Key = std::tuple<Rational, Rational, Rational>;
  for (Rational X : {Rational(8), Rational(32), Rational(128), Rational(512)}) {
    auto as = elements_up_to_norm(A, X * nA), bs = elements_up_to_norm(Ainv, X / nA);
    // Primitive first vectors eta_1 = a1 x + b1 y, grouped by |N(Q(eta_1))|.
    std::vector<std::pair<FieldElem, FieldElem>> firsts;
    for (const auto& a1 : as)
      for (const auto& b1 : bs) {
        if (a1.is_zero() && b1.is_zero()) continue;
        std::optional<Ideal> span;
        if (!a1.is_zero()) span = Ideal::principal(a1) * Ainv;
        if (!b1.is_zero()) span = span ? *span + Ideal::principal(b1) * A : Ideal::principal(b1) * A;
        if (*span == O) firsts.emplace_back(a1, b1);
      }
    std::stable_sort(firsts.begin(), firsts.end(), [](const auto& l, const auto& r) {
      return abs_norm(l.first * l.second) < abs_norm(r.first * r.second);
    });
    std::optional<Key> best;
    for (const auto& [a1, b1] : firsts) {
      Rational na = abs_norm(a1 * b1);
      if (best && na > std::get<0>(*best)) break;
      std::vector<std::pair<FieldElem, FieldElem>> seconds;
      if (!a1.is_zero()) {
        for (const auto& a2 : as) {
          FieldElem b2 = (FieldElem(k, 1) + b1 * a2) / a1;
          if (Ainv.contains(b2)) seconds.emplace_back(a2, b2);
        }
      } else {
        FieldElem a2 = -(FieldElem(k, 1) / b1);
        if (A.contains(a2))
          for (const auto& b2 : bs) seconds.emplace_back(a2, b2);
      }
      for (const auto& [a2, b2] : seconds) {
        FieldElem fa = a1 * b1, fb = a1 * b2 + a2 * b1, fc = a2 * b2;
        Key key{abs_norm(fa), abs_norm(fc), abs_norm(fb)};
        bool better = !best || key < *best;
        if (!better && key == *best) {
          // Ties: lexicographically largest (a, b, c).
          const auto& c = out.coeffs;
          if (!(fa == c[0]))
            better = c[0].lex_less(fa);
          else if (!(fb == c[1]))
            better = c[1].lex_less(fb);
          else
            better = c[2].lex_less(fc);
        }
        if (better) {
          best = key;
          out.alpha = {a1, a2};
          out.beta = {b1, b2};
          out.coeffs = {fa, fb, fc};
        }
      }
    }
    if (best) {
      out.free = QuadLattice(k, binary_gram(out.coeffs[0], out.coeffs[1], out.coeffs[2]));
      return out;
    }
  }
  throw PrecisionError("construct_binary: no free basis found within the search bound");
}

bool is_unramified_quadratic(const FieldElem& a) {
  const NumberField& k = a.field();
  if (a.is_zero() || !a.is_integral() || sqrt_in_field(a)) return false;
  Integer n(abs_norm(a).get_num());
  std::vector<Integer> ps{2};
  for (const auto& [p, e] : factorize(n).factors)
    if (p != 2) ps.push_back(p);
  for (const auto& p : ps)
    for (const auto& ctx : local_context(k, p)) {
      int v = ctx.valuation(a);
      if (v % 2 != 0) return false;
      if (ctx.is_dyadic()) {
        DefectIdeal d = quadratic_defect(a, ctx);
        if (!d.zero && d.exponent < 2 * ctx.e2()) return false;
      }
    }
  return true;
}

std::optional<FieldElem> find_unramified_quadratic(long d) {
  const ClassGroup& G = class_group(d);
  if (G.order() % 2 == 1) return std::nullopt;
  const NumberField& k = G.field();
  Integer D = abs(G.discriminant());
  for (Integer m = 1; m <= D; ++m)
    for (int sign : {-1, 1}) {
      FieldElem a(k, Rational(sign * m));
      if (is_unramified_quadratic(a)) return a;
    }
  return std::nullopt;
}

int artin_symbol(const Ideal& A, const FieldElem& a) {
  const NumberField& k = A.field();
  const ClassGroup& G = class_group(k.d());
  size_t target = G.ideal_class(A);
  Integer bad = 2 * Integer(abs_norm(a).get_num());
  for (Integer bound = 50;; bound *= 4) {
    for (const auto& P : primes_up_to_norm(k, bound)) {
      if (bad % P.p == 0 || G.ideal_class(P.ideal) != target) continue;
      for (const auto& ctx : local_context(k, P.p))
        if (ctx.prime().ideal == P.ideal) return is_square_local(a, ctx) ? 1 : -1;
    }
    if (bound > 100000) throw PrecisionError("artin_symbol: no prime found in the class");
  }
}

TernaryFamily construct_ternary_family(long d, const Ideal& A, const std::vector<Integer>& primes) {
  const ClassGroup& G = class_group(d);
  const NumberField& k = G.field();
  if (!(A.field() == k)) throw InputError("construct_ternary_family: ideal over a different field");
  if (G.order() % 2 == 1) throw InputError("construct_ternary_family: class number is odd");
  auto a = find_unramified_quadratic(d);
  if (!a) throw InputError("construct_ternary_family: no unramified quadratic extension found");
  if (artin_symbol(A, *a) == 1)
    throw InputError("construct_ternary_family: " + A.str() + " has trivial image in Gal(k(sqrt " + a->str() + ")/k)");
  TernaryFamily fam{*a, construct_binary(A), QuadLattice(k, Matrix::identity(3, k)), primes, {}};
  FieldElem four_a = FieldElem(k, 4) * *a;
  Matrix one(1, 1, four_a);
  fam.base = QuadLattice(k, block_diagonal({fam.binary.free.gram(), one}));
  for (const auto& p : primes) {
    std::string tag = "construct_ternary_family: p = " + p.get_str() + ": ";
    if (p <= 2 || !is_prime(p)) throw InputError(tag + "not an odd prime");
    auto above = primes_above(k, p);
    if (above.size() != 1 || above[0].f != 2) throw InputError(tag + "(p) is not a prime ideal of O_k");
    if (d == -5 && mod_floor(p, 4) != 1) throw InputError(tag + "p is not 1 mod 4");
    Matrix c(1, 1, four_a * FieldElem(k, Rational(p * p)));
    fam.members.emplace_back(k, block_diagonal({fam.binary.free.gram(), c}));
  }
  return fam;
}

std::string status_name(GlobalStatus s) {
  switch (s) {
    case GlobalStatus::Universal: return "Universal";
    case GlobalStatus::NotUniversal: return "NotUniversal";
    case GlobalStatus::UnknownWithinBound: return "UnknownWithinBound";
  }
  return "";
}

std::string proof_name(ProofKind p) {
  switch (p) {
    case ProofKind::None: return "None";
    case ProofKind::IdealClassObstruction: return "IdealClassObstruction";
    case ProofKind::LocalFailure: return "LocalFailure";
    case ProofKind::SearchBoundOnly: return "SearchBoundOnly";
  }
  return "";
}

std::optional<std::vector<FieldElem>> search_representation(const QuadLattice& L, const FieldElem& alpha,
                                                            const Integer& height) {
  const NumberField& k = L.field();
  const Matrix& G = L.gram();
  size_t n = L.rank(), last = n - 1;
  std::vector<std::vector<FieldElem>> pools(last);
  for (size_t i = 0; i < last; ++i) pools[i] = elements_up_to_norm(L.coeff_ideals()[i], Rational(height));
  const Ideal& cl = L.coeff_ideals()[last];
  for (const auto& pool : pools)
    if (pool.empty()) return std::nullopt;
  const FieldElem g = G(last, last), two(k, 2);
  // Try x' = (x_0, ..., x_{n-2}) with Q(x', t) = g t^2 + 2 b t + q; t is solved exactly.
  auto solve_last = [&](const FieldElem& b, const FieldElem& q) -> std::optional<FieldElem> {
    std::vector<FieldElem> roots;
    if (g.is_zero()) {
      if (!b.is_zero())
        roots.push_back((alpha - q) / (two * b));
      else if (q == alpha)
        roots.push_back(FieldElem(k, 0));
    } else if (auto s = sqrt_in_field(b * b - g * (q - alpha))) {
      roots.push_back((-b + *s) / g);
      roots.push_back((-b - *s) / g);
    }
    for (const auto& t : roots)
      if (t.is_zero() || cl.contains(t)) return t;
    return std::nullopt;
  };
  std::vector<FieldElem> x(n, FieldElem(k, 0));
  if (last == 0) {
    if (auto t = solve_last(FieldElem(k, 0), FieldElem(k, 0))) return std::vector<FieldElem>{*t};
    return std::nullopt;
  }
  // x_0 moves fastest: its square and linear terms are tabulated once.
  std::vector<FieldElem> sq0, lin0;
  for (const auto& e : pools[0]) {
    sq0.push_back(G(0, 0) * e * e);
    lin0.push_back(G(0, last) * e);
  }
  std::vector<size_t> idx(last, 0);
  for (;;) {
    FieldElem b_out(k, 0), q_out(k, 0), cross(k, 0);
    for (size_t i = 1; i < last; ++i) {
      x[i] = pools[i][idx[i]];
      b_out += G(i, last) * x[i];
      cross += two * G(0, i) * x[i];
      for (size_t j = 1; j < last; ++j) q_out += x[i] * G(i, j) * x[j];
    }
    for (size_t i0 = 0; i0 < pools[0].size(); ++i0) {
      const FieldElem& x0 = pools[0][i0];
      FieldElem q = q_out + sq0[i0];
      if (!cross.is_zero() && !x0.is_zero()) q += cross * x0;
      if (auto t = solve_last(b_out + lin0[i0], q)) {
        x[0] = x0;
        x[last] = *t;
        return x;
      }
    }
    size_t i = 1;
    while (i < last && ++idx[i] == pools[i].size()) idx[i++] = 0;
    if (i == last) break;
  }
  return std::nullopt;
}

GlobalVerdict is_globally_universal(const QuadLattice& L, const GlobalOptions& opts) {
  const NumberField& k = L.field();
  if (!L.norm_ideal().is_integral()) throw InputError("is_globally_universal: norm ideal is not integral");
  GlobalVerdict v;
  v.bound = opts.bound;
  v.local = is_locally_universal(L, opts.local);
  if (!v.local.universal) {
    v.status = GlobalStatus::NotUniversal;
    v.proof = ProofKind::LocalFailure;
    for (const auto& lv : v.local.verdicts) {
      if (lv.universal) continue;
      v.witness_place = lv.place;
      v.witness = lv.witness;
      if (lv.rule == LocalRule::Archimedean) {
        // Definite: the sign opposite to the form's values is missed.
        auto diag = diagonalize(L.gram());
        v.witness = FieldElem(k, diag[0].a() > 0 ? -1 : 1);
      }
      break;
    }
    if (v.witness_place.empty()) {
      v.witness_place = "generic";
      v.reason = v.local.generic_reason;
    } else {
      v.reason = "not locally universal at " + v.witness_place;
    }
    return v;
  }
  if (v.local.restricted) {
    v.reason = "local check restricted to the listed places";
    return v;
  }
  size_t n = L.rank();
  if (n >= 4) {
    v.status = GlobalStatus::Universal;
    v.reason = "locally universal of rank >= 4 (strong approximation)";
    return v;
  }
  if (n == 2) {
    auto A = hyperbolic_ideal(L);
    if (!A) {
      v.reason = "locally universal binary lattice without a hyperbolic pseudo-basis";
      return v;
    }
    if (binary_hyperbolic_represents(*A, FieldElem(k, 1))) {
      v.status = GlobalStatus::Universal;
      v.reason = "binary hyperbolic lattice with principal ideal class represents 1";
    } else {
      v.status = GlobalStatus::NotUniversal;
      v.proof = ProofKind::IdealClassObstruction;
      v.witness = FieldElem(k, 1);
      v.witness_place = "global";
      v.reason = "binary hyperbolic lattice over the non-principal class of " + A->str() + " misses 1";
    }
    return v;
  }
  // Rank 3.
  size_t h = class_number(k);
  if (h % 2 == 1) {
    v.status = GlobalStatus::Universal;
    v.reason = "locally universal ternary with odd class number: the genus is one proper class";
    return v;
  }
  auto shape = ternary_shape(L);
  for (const auto& alpha : small_targets(k, opts.target_norm)) {
    bool found = shape ? shape_represents(*shape, alpha, opts.bound)
                       : search_representation(L, alpha, opts.generic_height).has_value();
    if (!found) {
      v.status = GlobalStatus::NotUniversal;
      v.proof = ProofKind::SearchBoundOnly;
      v.witness = alpha;
      v.witness_place = "global";
      v.reason = shape ? "no representation of " + alpha.str() + " with |N(z)| <= " + opts.bound.get_str() +
                             " (each z decided exactly on the hyperbolic part)"
                       : "no representation of " + alpha.str() + " with coordinate norms <= " +
                             opts.generic_height.get_str();
      return v;
    }
  }
  v.reason = "even class number; every target with |N| <= " + opts.target_norm.get_str() + " is represented";
  return v;
}

bool single_class_condition(const QuadLattice& L) {
  if (L.rank() < 3) throw InputError("single_class_condition: rank must be at least 3");
  return class_number(L.field()) % 2 == 1 && is_locally_universal(L).universal;
}

RangeReport represents_range_check(const QuadLattice& f, const Integer& N, const Integer& z_bound) {
  if (!f.field().is_rational() || f.rank() != 3) throw InputError("represents_range_check: ternary over Z expected");
  const Matrix& G = f.gram();
  bool shape = G(0, 0) == FieldElem(1) && G(1, 1) == FieldElem(1) && G(2, 2).a() < 0;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      if (i != j && !G(i, j).is_zero()) shape = false;
  if (shape && G(2, 2).a().get_den() != 1) shape = false;
  Integer D = shape ? Integer(-G(2, 2).a()) : Integer(0);
  RangeReport rep;
  for (Integer n = -N; n <= N; ++n) {
    RangeEntry e{n, std::nullopt};
    if (n == 0) {
      e.witness = std::array<Integer, 3>{0, 0, 0};
    } else if (shape) {
      for (Integer z = 0; z <= z_bound && !e.witness; ++z) {
        Integer m = n + D * z * z;
        if (m < 0) continue;
        if (auto xy = cornacchia_sum_two_squares(m)) e.witness = std::array<Integer, 3>{xy->first, xy->second, z};
      }
    } else {
      for (Integer x = -z_bound; x <= z_bound && !e.witness; ++x)
        for (Integer y = -z_bound; y <= z_bound && !e.witness; ++y)
          for (Integer z = -z_bound; z <= z_bound && !e.witness; ++z)
            if (f.evaluate({FieldElem(x), FieldElem(y), FieldElem(z)}) == FieldElem(n))
              e.witness = std::array<Integer, 3>{x, y, z};
    }
    if (!e.witness) rep.unresolved.push_back(n);
    rep.entries.push_back(e);
  }
  return rep;
}

Counterexample counterexample_family(const Integer& N) {
  if (N < 1) throw InputError("counterexample_family: N must be at least 1");
  auto next3 = [](Integer x) {
    do x = next_prime(x);
    while (mod_floor(x, 4) != 3);
    return x;
  };
  Integer p = next3(N), q = next3(p);
  NumberField Q;
  return {p, q, QuadLattice::diagonal(Q, {1, 1, FieldElem(Q, Rational(-p * q))})};
}

std::string form_polynomial(const Matrix& G) {
  size_t n = G.rows();
  auto var = [](size_t i) { return i < 3 ? std::string(1, "xyz"[i]) : "x" + std::to_string(i + 1); };
  std::string out;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      FieldElem c = i == j ? G(i, i) : FieldElem(2) * G(i, j);
      if (c.is_zero()) continue;
      std::string mono = i == j ? var(i) + "^2" : var(i) + "*" + var(j);
      bool neg = c.is_rational() && c.a() < 0;
      if (neg) c = -c;
      std::string coef;
      if (!(c == FieldElem(1))) coef = (c.is_rational() ? c.str() : "(" + c.str() + ")") + "*";
      if (out.empty())
        out = (neg ? "-" : "") + coef + mono;
      else
        out += (neg ? " - " : " + ") + coef + mono;
    }
  return out.empty() ? "0" : out;
}

}  // namespace quniv
