#include <doctest.h>

#include <random>

#include "quniv/errors.hpp"
#include "quniv/global.hpp"
#include "quniv/potential.hpp"
#include "support.hpp"

using namespace quniv;
using namespace quniv::testing;

namespace {

NumberField kf(long d) { return NumberField::imaginary_quadratic(d); }

FieldElem eval(const Poly& p, const FieldElem& x) {
  FieldElem acc(x.field(), 0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// delta^m g(x) = gamma^m f((1 + delta x) / gamma), checked by evaluation at m + 2 points.
bool identity_by_evaluation(const UnitShiftCertificate& c) {
  const NumberField& k = c.gamma.field().is_rational() ? c.delta.field() : c.gamma.field();
  for (long x = -1; x <= long(c.m) + 1; ++x) {
    FieldElem X(k, x);
    FieldElem lhs = c.delta.pow(c.m) * eval(c.g, X);
    FieldElem rhs = c.gamma.pow(c.m) * eval(c.f, (FieldElem(k, 1) + c.delta * X) / c.gamma);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

Poly ints(std::vector<long> v) {
  Poly p;
  for (long x : v) p.emplace_back(x);
  return p;
}

bool polys_equal(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("extension ring arithmetic") {
  NumberField Q;
  ExtRing R(Q, {FieldElem(-1), FieldElem(2)});
  ExtElem i = R.gen(0), s = R.gen(1);
  CHECK(i * i == R.embed(-1));
  CHECK(s * s == R.embed(2));
  CHECK((i * s) * (i * s) == R.embed(-2));
  CHECK((R.one() + i) * (R.one() - i) == R.embed(2));
  CHECK((i + s).str() == "sqrt(-1) + sqrt(2)");
  CHECK((R.embed(3) - (i * s).scaled(FieldElem(2))).str() == "3 - 2*sqrt(-1)*sqrt(2)");
  CHECK(R.str() == "Z[sqrt(-1), sqrt(2)]");
  CHECK(R.sqrt_of(FieldElem(4)).value() == R.embed(2));
  CHECK_FALSE(R.sqrt_of(FieldElem(3)));
  CHECK_FALSE(i.scaled(FieldElem(make_rational(1, 2))).is_integral());
  CHECK_THROWS_AS(R.one() + ExtRing(Q, {FieldElem(3)}).one(), InputError);
  CHECK_THROWS_AS(ExtRing(Q, {FieldElem(0)}), InputError);

  // Associativity and distributivity on random elements of a three-generator ring over Z[w].
  auto k = kf(-5);
  ExtRing T(k, {FieldElem(k, -1), FieldElem(k, 0, 1), FieldElem(k, 3)});
  std::mt19937_64 rng(3);
  auto rnd = [&] {
    ExtElem e = T.zero();
    for (size_t m = 0; m < 8; ++m) {
      ExtElem mono = T.one();
      for (size_t j = 0; j < 3; ++j)
        if (m >> j & 1) mono *= T.gen(j);
      e += mono.scaled(random_integer(k, rng, 3));
    }
    return e;
  };
  for (int it = 0; it < 30; ++it) {
    ExtElem a = rnd(), b = rnd(), c = rnd();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("potential universality") {
  NumberField Q;
  CHECK(is_potentially_universal(QuadLattice::diagonal(Q, {2, 3})));
  CHECK_FALSE(is_potentially_universal(QuadLattice::diagonal(Q, {2, 4})));
  CHECK_THROWS_AS(is_potentially_universal(QuadLattice::diagonal(Q, {1})), InputError);
  auto k = kf(-5);
  auto ex = construct_binary(Ideal::generated_by(k, {FieldElem(k, 2), FieldElem(k, 1, 1)}));
  CHECK(is_potentially_universal(ex.free));
  CHECK(is_potentially_universal(ex.pseudo));
  // (w, 2) is the unit ideal, (2, 1 + w) is the ramified prime above 2.
  CHECK(is_potentially_universal(QuadLattice::diagonal(k, {FieldElem(k, 0, 1), FieldElem(k, 2)})));
  CHECK_FALSE(is_potentially_universal(QuadLattice::diagonal(k, {FieldElem(k, 2), FieldElem(k, 1, 1)})));
}

TEST_CASE("potential witnesses") {
  NumberField Q;
  auto w5 = potential_witness(5, -1);
  CHECK(w5.kind == WitnessKind::Direct);
  CHECK(w5.X == w5.ring.embed(3));
  CHECK(w5.Y == w5.ring.embed(2));
  CHECK(w5.verify());

  auto w1 = potential_witness(1, 7);
  CHECK(w1.kind == WitnessKind::Direct);
  CHECK(w1.X == w1.ring.one());
  CHECK(w1.Y.is_zero());

  auto w2 = potential_witness(2, -1);
  CHECK(w2.kind == WitnessKind::Fallback);
  CHECK(w2.X.str() == "sqrt(2)");
  CHECK(w2.Y.is_zero());
  CHECK(w2.verify());

  CHECK_THROWS_AS(potential_witness(3, 0), InputError);
  CHECK_THROWS_AS(potential_witness(0, 3), InputError);

  // Random (alpha, delta) over Z and Z[w]: every witness satisfies its identity.
  std::mt19937_64 rng(17);
  for (long d : {0L, -1L, -5L, -7L}) {
    NumberField k = d == 0 ? Q : kf(d);
    for (int it = 0; it < 40; ++it) {
      FieldElem a = random_integer(k, rng, 20), del = random_integer(k, rng, 6);
      if (a.is_zero() || del.is_zero()) continue;
      auto w = potential_witness(a, del);
      CHECK(w.verify());
      CHECK(w.X.is_integral());
      CHECK(w.Y.is_integral());
    }
  }
  // alpha = 1 + 2 delta t always takes the direct route, with rho = t sqrt(delta).
  for (long d : {0L, -1L, -5L}) {
    NumberField k = d == 0 ? Q : kf(d);
    for (int it = 0; it < 20; ++it) {
      FieldElem del = random_integer(k, rng, 6), t = random_integer(k, rng, 6);
      if (del.is_zero()) continue;
      auto w = potential_witness(FieldElem(k, 1) + FieldElem(k, 2) * del * t, del);
      CHECK(w.kind == WitnessKind::Direct);
      CHECK(w.verify());
      CHECK(*w.rho == w.ring.sqrt_of(del)->scaled(t));
    }
  }
}

TEST_CASE("witness identity for random rho") {
  // (1 + sqrt(delta) rho)^2 + delta (sqrt(-1) rho)^2 = 1 + 2 sqrt(delta) rho in Z[sqrt(delta), sqrt(-1)].
  std::mt19937_64 rng(23);
  NumberField Q;
  for (int it = 0; it < 100; ++it) {
    long dv = long(rng() % 41) - 20;
    if (dv == 0 || dv == -1 || dv == 1 || dv == 4 || dv == 9 || dv == 16) dv = 2;
    ExtRing R(Q, {FieldElem(dv), FieldElem(-1)});
    ExtElem sd = R.gen(0), si = R.gen(1);
    ExtElem rho = R.zero();
    for (size_t m = 0; m < 4; ++m) {
      ExtElem mono = R.one();
      if (m & 1) mono *= sd;
      if (m & 2) mono *= si;
      rho += mono.scaled(FieldElem(long(rng() % 11) - 5));
    }
    ExtElem lhs = (R.one() + sd * rho).pow(2) + (si * rho).pow(2).scaled(FieldElem(dv));
    CHECK(lhs == R.one() + (sd * rho).scaled(FieldElem(2)));
  }
}

TEST_CASE("decompositions") {
  NumberField Q;
  ExtRing R(Q, {FieldElem(-1)});
  ExtElem i = R.gen(0);
  CHECK(verify_decomposition({R.embed(5), FieldElem(-1), {}, {}, i.scaled(FieldElem(-2))}));
  CHECK(verify_decomposition({R.one(), FieldElem(-1), {}, {}, R.zero()}));
  CHECK(verify_decomposition({R.embed(-1), FieldElem(-1), {R.embed(-1)}, {1}, R.zero()}));
  CHECK_FALSE(verify_decomposition({R.embed(3), FieldElem(-1), {}, {}, R.zero()}));
  CHECK_THROWS_AS(verify_decomposition({R.embed(5), FieldElem(3), {}, {}, R.zero()}), InputError);

  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b) {
      if (a == 0 && b == 0) continue;
      auto dec = gaussian_decomposition(a, b);
      CHECK(verify_decomposition(dec));
      CHECK(dec.r[0] <= 1);
      auto w = decomposition_witness(dec);
      CHECK(w.verify());
      CHECK(w.X.is_integral());
      CHECK(w.Y.is_integral());
    }
  auto two = gaussian_decomposition(2, 0);
  CHECK(two.r == std::vector<unsigned>{1, 2});  // 2 = i (1 + i)^2 (1 + 2 i i)
  CHECK_THROWS_AS(gaussian_decomposition(0, 0), InputError);
}

TEST_CASE("unit shift certificates") {
  auto c32 = unit_shift_certificate(3, 2);
  CHECK_FALSE(c32.trivial);
  CHECK(c32.m == 2);
  CHECK(polys_equal(c32.f, ints({1, 2, 1})));
  CHECK(polys_equal(c32.g, ints({4, 4, 1})));
  CHECK(identity_by_evaluation(c32));

  auto c23 = unit_shift_certificate(2, 3);
  CHECK(c23.m == 2);
  CHECK(polys_equal(c23.f, ints({1, 2, 1})));
  CHECK(polys_equal(c23.g, ints({1, 2, 1})));

  auto c16 = unit_shift_certificate(1, 6);
  CHECK(c16.trivial);
  CHECK(c16.u == FieldElem(1));
  CHECK(c16.verify());
  CHECK(unit_shift_certificate(5, 1).trivial);
  CHECK_THROWS_AS(unit_shift_certificate(2, 4), InputError);
  CHECK_THROWS_AS(unit_shift_certificate(2, 0), InputError);
  CHECK(unit_shift_certificate(-1, 0).trivial);
}

TEST_CASE("unit shift certificates on random coprime pairs") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (long d : {0L, -1L, -2L, -5L, -7L}) {
    NumberField k = d == 0 ? NumberField() : kf(d);
    for (int it = 0; it < 30; ++it) {
      FieldElem g = random_integer(k, rng, 9), del = random_integer(k, rng, 4);
      if (g.is_zero() || del.is_zero()) continue;
      if (!(Ideal::generated_by(k, {g, del}) == Ideal::unit(k))) continue;
      UnitShiftCertificate c;
      try {
        c = unit_shift_certificate(g, del);
      } catch (const PrecisionError&) {
        continue;
      }
      INFO(k.name(), " gamma = ", g.str(), " delta = ", del.str());
      CHECK(c.verify());
      if (c.trivial) continue;
      ++checked;
      CHECK(c.m % 2 == 0);
      CHECK(Ideal::principal(del).contains(g.pow(c.m) - FieldElem(k, 1)));
      CHECK(c.f.front() == FieldElem(k, 1));
      CHECK(c.f.back() == FieldElem(k, 1));
      CHECK(c.g.back() == FieldElem(k, 1));
      CHECK(identity_by_evaluation(c));
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("base change stability") {
  NumberField Q;
  CHECK(base_change_stability(QuadLattice::diagonal(Q, {2, 3}), FieldElem(-1)));
  CHECK_FALSE(base_change_stability(QuadLattice::diagonal(Q, {2, 4}), FieldElem(3)));
  CHECK(base_change_stability(QuadLattice::diagonal(Q, {1, 1}), FieldElem(5)));
  CHECK_THROWS_AS(base_change_stability(QuadLattice::diagonal(Q, {1, 1}), FieldElem(4)), InputError);
  CHECK_THROWS_AS(base_change_stability(QuadLattice::diagonal(Q, {1, 1}), FieldElem(0)), InputError);
}

TEST_CASE("norm ideal audit over Z") {
  std::mt19937_64 rng(99);
  NumberField Q;
  int full = 0, proper = 0, tried = 0, represented = 0;
  for (int it = 0; it < 300 && (full < 100 || proper < 30); ++it) {
    size_t n = 2 + rng() % 2;
    Matrix G(n, n, FieldElem(0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) {
        FieldElem x(long(rng() % 13) - 6);
        if (i != j && rng() % 2) x *= FieldElem(make_rational(1, 2));
        G(i, j) = G(j, i) = x;
      }
    if (G.det().is_zero()) continue;
    QuadLattice L(Q, G);
    Ideal nL = L.norm_ideal();
    if (is_potentially_universal(L)) {
      if (full >= 100) continue;
      ++full;
      FieldElem delta = -(G.det() * FieldElem(4));
      for (long a = -20; a <= 20; ++a) {
        if (a == 0) continue;
        auto w = potential_witness(FieldElem(a), delta);
        CHECK(w.verify());
        CHECK(w.X.is_integral());
        CHECK(w.Y.is_integral());
        ++tried;
        if (auto rep = represent_over_extension(L, FieldElem(a), 3)) {
          ++represented;
          CHECK(rep->value == rep->ring.embed(FieldElem(a)));
          for (const auto& c : rep->coords) CHECK(c.is_integral());
        }
      }
    } else {
      if (proper >= 30) continue;
      ++proper;
      // Values of integral vectors over Z[sqrt(2), sqrt(-3)] stay in n(L) coefficientwise.
      ExtRing R(Q, {FieldElem(2), FieldElem(-3)});
      for (int t = 0; t < 10; ++t) {
        std::vector<ExtElem> x;
        for (size_t i = 0; i < n; ++i) {
          ExtElem e = R.zero();
          for (size_t m = 0; m < 4; ++m) {
            ExtElem mono = R.one();
            if (m & 1) mono *= R.gen(0);
            if (m & 2) mono *= R.gen(1);
            e += mono.scaled(FieldElem(long(rng() % 9) - 4));
          }
          x.push_back(e);
        }
        ExtElem q = R.zero();
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) q += x[i] * x[j].scaled(G(i, j));
        for (const auto& c : q.coeffs()) CHECK(nL.contains(c));
      }
    }
  }
  CHECK(full == 100);
  CHECK(proper == 30);
  // The box search finds an orthogonal representation for most, not all, pairs.
  MESSAGE("orthogonal representations found for ", represented, " of ", tried);
  CHECK(represented * 10 >= tried * 8);
}
