#include <doctest.h>

#include <random>
#include <set>

#include "quniv/errors.hpp"
#include "quniv/global.hpp"
#include "support.hpp"

using namespace quniv;
using namespace quniv::testing;

namespace {

NumberField kf(long d) { return NumberField::imaginary_quadratic(d); }

Ideal ideal(const NumberField& k, std::vector<const char*> gens) {
  std::vector<FieldElem> g;
  for (auto s : gens) g.push_back(el(k, s));
  return Ideal::generated_by(k, g);
}

// Ideal classes counted by principality of I J^-1, independent of binary forms.
size_t class_number_by_ideals(const NumberField& k) {
  // Minkowski bound (2/pi) sqrt|D| < sqrt|D|.
  Integer D = abs(k.discriminant()), m = sqrt(D) + 1;
  std::vector<Ideal> reps;
  for (const auto& I : integral_ideals_up_to_norm(k, m)) {
    bool fresh = true;
    for (const auto& J : reps)
      if ((I * J.inverse()).is_principal()) fresh = false;
    if (fresh) reps.push_back(I);
  }
  return reps.size();
}

// Exhaustive search: a in A with N(a) <= N(A) N(alpha) and alpha / a in A^-1.
bool hyperbolic_by_search(const Ideal& A, const FieldElem& alpha) {
  for (const auto& a : elements_up_to_norm(A, A.norm() * alpha.norm()))
    if (!a.is_zero() && A.inverse().contains(alpha / a)) return true;
  return false;
}

size_t omega(const Integer& n) { return factorize(n).factors.size(); }

std::set<Integer> failing_places(const LocalReport& r) {
  std::set<Integer> out;
  for (const auto& v : r.verdicts)
    if (!v.universal && v.place != "inf" && v.place != "complex") out.insert(Integer(v.place.substr(0, v.place.find('/'))));
  return out;
}

}  // namespace

TEST_CASE("class groups") {
  CHECK(class_group(-1).order() == 1);
  CHECK(class_group(-5).order() == 2);
  CHECK(class_group(-23).order() == 3);
  CHECK(class_number(NumberField()) == 1);
  CHECK_THROWS_AS(class_group(5), InputError);
  CHECK_THROWS_AS(class_group(-12), InputError);
  CHECK_THROWS_AS(class_group(-20000), InputError);
  for (long d : {-1L, -2L, -3L, -5L, -6L, -14L, -15L, -23L, -26L, -47L, -51L, -65L, -71L, -105L})
    CHECK_MESSAGE(class_group(d).order() == class_number_by_ideals(kf(d)), "d = ", d);
}

TEST_CASE("class group axioms") {
  for (long d : {-5L, -14L, -21L, -23L, -47L, -65L, -105L, -199L}) {
    const auto& G = class_group(d);
    size_t h = G.order();
    CHECK(G.forms()[0].a == 1);
    for (size_t i = 0; i < h; ++i) {
      CHECK(G.compose(0, i) == i);
      CHECK(G.compose(i, G.inverse(i)) == 0);
      CHECK(h % G.element_order(i) == 0);
      std::set<size_t> row;
      for (size_t j = 0; j < h; ++j) {
        CHECK(G.compose(i, j) == G.compose(j, i));
        row.insert(G.compose(i, j));
        for (size_t l = 0; l < h; ++l) CHECK(G.compose(G.compose(i, j), l) == G.compose(i, G.compose(j, l)));
      }
      CHECK(row.size() == h);
      CHECK(G.ideal_class(G.ideal_of(i)) == i);
    }
  }
}

TEST_CASE("ideal multiplication matches form composition") {
  std::mt19937_64 rng(31);
  int pairs = 0;
  for (long d : {-5L, -14L, -23L, -47L, -65L}) {
    auto k = kf(d);
    const auto& G = class_group(d);
    auto ideals = integral_ideals_up_to_norm(k, 60);
    for (int it = 0; it < 40; ++it, ++pairs) {
      const Ideal& I = ideals[rng() % ideals.size()];
      const Ideal& J = ideals[rng() % ideals.size()];
      CHECK(G.ideal_class(I * J) == G.compose(G.ideal_class(I), G.ideal_class(J)));
      CHECK(G.ideal_class(I.inverse()) == G.inverse(G.ideal_class(I)));
      CHECK((G.ideal_class(I) == G.ideal_class(J)) == (I * J.inverse()).is_principal());
    }
  }
  CHECK(pairs == 200);
}

TEST_CASE("two-part of the class group") {
  CHECK(pic_two_part(-5) == 2);
  CHECK(pic_two_part(-1) == 1);
  CHECK(pic_two_part(-51) == 2);
  CHECK(class_group(-51).order() == 2);
  // Genus theory: [Pic : Pic^2] = 2^(t - 1) with t distinct primes dividing D.
  for (long d = -1; d >= -400; --d) {
    if (!is_squarefree(Integer(-d))) continue;
    size_t t = omega(abs(kf(d).discriminant()));
    CHECK_MESSAGE(pic_two_part(d) == (size_t(1) << (t - 1)), "d = ", d);
  }
}

TEST_CASE("binary hyperbolic representation") {
  auto k = kf(-5);
  Ideal A = ideal(k, {"2", "1+w"}), O = Ideal::unit(k);
  CHECK_FALSE(binary_hyperbolic_represents(A, FieldElem(k, 1)));
  auto w1 = binary_hyperbolic_represents(O, FieldElem(k, 1));
  REQUIRE(w1);
  CHECK(w1->a * w1->b == FieldElem(k, 1));
  CHECK(abs(w1->a.a()) == 1);
  auto w2 = binary_hyperbolic_represents(A, FieldElem(k, 2));
  REQUIRE(w2);
  CHECK(w2->a == FieldElem(k, 2));
  CHECK(w2->b == FieldElem(k, 1));
  CHECK_THROWS_AS(binary_hyperbolic_represents(A, FieldElem(k, 0)), InputError);
  CHECK_FALSE(binary_hyperbolic_represents(A, el(k, "1/2")));
}

TEST_CASE("binary hyperbolic representation agrees with direct search") {
  std::mt19937_64 rng(5);
  for (long d : {-5L, -23L}) {
    auto k = kf(d);
    auto ideals = integral_ideals_up_to_norm(k, 30);
    for (int it = 0; it < 50; ++it) {
      Ideal A = ideals[rng() % ideals.size()];
      if (rng() % 2) A = A.inverse();
      FieldElem alpha = random_integer(k, rng, 6);
      if (alpha.is_zero()) continue;
      auto w = binary_hyperbolic_represents(A, alpha);
      INFO(A.str(), " ", alpha.str());
      CHECK(w.has_value() == hyperbolic_by_search(A, alpha));
      if (w) {
        CHECK(A.contains(w->a));
        CHECK(A.inverse().contains(w->b));
        CHECK(w->a * w->b == alpha);
      }
    }
  }
}

TEST_CASE("binary constructions") {
  auto k = kf(-5);
  auto xy = construct_binary(Ideal::unit(k));
  CHECK(form_polynomial(xy.free.gram()) == "x*y");

  auto ex = construct_binary(ideal(k, {"2", "1+w"}));
  CHECK(form_polynomial(ex.free.gram()) == "(1+w)*x^2 + 5*x*y + (1-w)*y^2");
  CHECK(ex.alpha[0] * ex.beta[1] - ex.alpha[1] * ex.beta[0] == FieldElem(k, 1));
  CHECK(hyperbolic_ideal(ex.pseudo).has_value());

  auto b3 = construct_binary(ideal(k, {"3", "1+w"}));
  const auto& F = b3.free;
  CHECK(F.scale_ideal() == Ideal::principal(el(k, "1/2")));
  CHECK(F.norm_ideal() == Ideal::unit(k));
  CHECK(FieldElem(k, -4) * F.det() == FieldElem(k, 1));
  CHECK(ideal(k, {"3", "1+w"}).contains(b3.alpha[0]));
  CHECK(ideal(k, {"3", "1+w"}).inverse().contains(b3.beta[0]));

  // Over a field with class number 3 the same identities hold.
  auto k23 = kf(-23);
  for (size_t i = 0; i < class_group(-23).order(); ++i) {
    auto c = construct_binary(class_group(-23).ideal_of(i));
    CHECK(FieldElem(k23, -4) * c.free.det() == FieldElem(k23, 1));
    CHECK(c.free.norm_ideal() == Ideal::unit(k23));
  }
}

TEST_CASE("hyperbolic ideal recovery") {
  auto k = kf(-5);
  Ideal A = ideal(k, {"2", "1+w"});
  auto c = construct_binary(A);
  auto B = hyperbolic_ideal(c.free);
  REQUIRE(B);
  CHECK(class_group(-5).ideal_class(*B) == class_group(-5).ideal_class(A));
  CHECK_FALSE(hyperbolic_ideal(QuadLattice::diagonal(k, {1, 1})).has_value());
}

TEST_CASE("unramified quadratic extensions") {
  auto m5 = find_unramified_quadratic(-5);
  REQUIRE(m5);
  CHECK(*m5 == FieldElem(kf(-5), -1));
  CHECK_FALSE(find_unramified_quadratic(-1));
  CHECK_FALSE(find_unramified_quadratic(-23));
  auto m15 = find_unramified_quadratic(-15);
  REQUIRE(m15);
  CHECK((*m15 == FieldElem(kf(-15), -3) || *m15 == FieldElem(kf(-15), 5)));
  CHECK(is_unramified_quadratic(FieldElem(kf(-15), 5)));
  CHECK(is_unramified_quadratic(FieldElem(kf(-15), -3)));
  CHECK_FALSE(is_unramified_quadratic(FieldElem(kf(-5), 2)));
  CHECK(is_unramified_quadratic(FieldElem(kf(-5), 5)));  // -1 times a square
  CHECK_FALSE(is_unramified_quadratic(FieldElem(kf(-1), -1)));  // a square
  // Every even class number has one (genus field), never for odd.
  for (long d : {-6L, -10L, -14L, -21L, -26L, -30L, -47L, -71L})
    CHECK(find_unramified_quadratic(d).has_value() == (class_group(d).order() % 2 == 0));
}

TEST_CASE("Artin symbol on classes") {
  auto k = kf(-5);
  FieldElem a(k, -1);
  CHECK(artin_symbol(Ideal::unit(k), a) == 1);
  CHECK(artin_symbol(ideal(k, {"2", "1+w"}), a) == -1);
  CHECK(artin_symbol(ideal(k, {"3", "1+w"}), a) == -1);
  CHECK(artin_symbol(Ideal::principal(el(k, "1+w")), a) == 1);
}

TEST_CASE("ternary families") {
  auto k = kf(-5);
  Ideal A = ideal(k, {"2", "1+w"});
  auto fam = construct_ternary_family(-5, A, {13, 17});
  CHECK(fam.a == FieldElem(k, -1));
  CHECK(form_polynomial(fam.base.gram()) == "(1+w)*x^2 + 5*x*y + (1-w)*y^2 - 4*z^2");
  REQUIRE(fam.members.size() == 2);
  CHECK(form_polynomial(fam.members[0].gram()) == "(1+w)*x^2 + 5*x*y + (1-w)*y^2 - 676*z^2");
  CHECK(form_polynomial(fam.members[1].gram()) == "(1+w)*x^2 + 5*x*y + (1-w)*y^2 - 1156*z^2");
  CHECK_THROWS_AS(construct_ternary_family(-5, A, {3}), InputError);
  CHECK_THROWS_AS(construct_ternary_family(-5, A, {7}), InputError);  // splits
  CHECK_THROWS_AS(construct_ternary_family(-5, A, {2}), InputError);
  CHECK_THROWS_AS(construct_ternary_family(-5, Ideal::unit(k), {13}), InputError);
  CHECK_THROWS_AS(construct_ternary_family(-23, class_group(-23).ideal_of(1), {}), InputError);
}

TEST_CASE("global verdicts") {
  NumberField Q;
  Matrix H(2, 2, FieldElem(0));
  H(0, 1) = H(1, 0) = FieldElem(make_rational(1, 2));
  auto xy = is_globally_universal(QuadLattice(Q, H));
  CHECK(xy.status == GlobalStatus::Universal);

  auto k = kf(-5);
  auto ex = construct_binary(ideal(k, {"2", "1+w"}));
  auto v = is_globally_universal(ex.free);
  CHECK(v.status == GlobalStatus::NotUniversal);
  CHECK(v.proof == ProofKind::IdealClassObstruction);
  REQUIRE(v.witness);
  CHECK(*v.witness == FieldElem(k, 1));
  CHECK(v.local.universal);

  CHECK(is_globally_universal(QuadLattice::diagonal(Q, {1, 1, 1, -1})).status == GlobalStatus::Universal);

  auto f = is_globally_universal(QuadLattice::diagonal(Q, {1, 1, -77}));
  CHECK(f.status == GlobalStatus::NotUniversal);
  CHECK(f.proof == ProofKind::LocalFailure);
  CHECK(f.witness_place == "7");
  CHECK(failing_places(f.local) == std::set<Integer>{7, 11});

  auto pos = is_globally_universal(QuadLattice::diagonal(Q, {1, 1, 1, 1}));
  CHECK(pos.status == GlobalStatus::NotUniversal);
  CHECK(pos.witness_place == "inf");
  CHECK(*pos.witness == FieldElem(-1));

  // Hyperbolic plane plus <1> over Z: odd class number.
  auto t = is_globally_universal(QuadLattice(Q, block_diagonal({H, Matrix(1, 1, FieldElem(1))})));
  CHECK(t.status == GlobalStatus::Universal);

  // The ternary base lattice over Q(sqrt -5) is locally universal with even class number:
  // the search finds a missing small target.
  auto fam = construct_ternary_family(-5, ideal(k, {"2", "1+w"}), {13});
  GlobalOptions opts;
  opts.bound = 200;
  auto m = is_globally_universal(fam.members[0], opts);
  CHECK(m.local.universal);
  CHECK(m.status != GlobalStatus::Universal);

  LocalOptions only5;
  only5.places = std::vector<Integer>{5};
  GlobalOptions r;
  r.local = only5;
  CHECK(is_globally_universal(QuadLattice::diagonal(Q, {1, 1, 1, -1}), r).status == GlobalStatus::UnknownWithinBound);

  CHECK_THROWS_AS(is_globally_universal(QuadLattice::diagonal(Q, {make_rational(1, 2), 1})), InputError);
}

TEST_CASE("verdicts are consistent with bounded searches") {
  NumberField Q;
  auto k = kf(-5);
  Matrix H(2, 2, FieldElem(0));
  H(0, 1) = H(1, 0) = FieldElem(make_rational(1, 2));
  std::vector<QuadLattice> lattices{QuadLattice(Q, H), QuadLattice::diagonal(Q, {1, 1, 1, -1}),
                                    QuadLattice(Q, block_diagonal({H, Matrix(1, 1, FieldElem(3))})),
                                    construct_binary(Ideal::unit(k)).free,
                                    construct_binary(ideal(k, {"2", "1+w"})).free,
                                    construct_binary(ideal(k, {"3", "1+w"})).free};
  for (const auto& L : lattices) {
    auto v = is_globally_universal(L);
    const NumberField& f = L.field();
    if (v.status == GlobalStatus::Universal) {
      for (const auto& alpha : elements_up_to_norm(Ideal::unit(f), Rational(30)))
        if (!alpha.is_zero()) CHECK_MESSAGE(search_representation(L, alpha, !f.is_rational() ? 200 : L.rank() > 3 ? 12 : 30), alpha.str());
    }
    if (v.proof == ProofKind::IdealClassObstruction)
      CHECK_FALSE(search_representation(L, *v.witness, 10000).has_value());
  }
}

TEST_CASE("ideal class buckets of hyperbolic planes") {
  auto k = kf(-5);
  const auto& G = class_group(-5);
  std::set<size_t> classes_representing_one, classes_seen;
  for (const auto& A : integral_ideals_up_to_norm(k, 50)) {
    size_t c = G.ideal_class(A);
    classes_seen.insert(c);
    // Same class, same answer; only the principal bucket represents 1.
    bool rep = binary_hyperbolic_represents(A, FieldElem(k, 1)).has_value();
    CHECK(rep == (c == 0));
    if (rep) classes_representing_one.insert(c);
  }
  CHECK(classes_seen.size() == 2);
  CHECK(classes_representing_one == std::set<size_t>{0});
}

TEST_CASE("isotropic ternaries over Q") {
  // A locally universal ternary over Z is isotropic: its determinant class and
  // Hasse invariants force the hyperbolic plane (checked against a direct search).
  NumberField Q;
  std::mt19937_64 rng(12);
  int hits = 0;
  for (int it = 0; it < 400 && hits < 15; ++it) {
    std::vector<FieldElem> d;
    for (int i = 0; i < 3; ++i) {
      long v = long(rng() % 13) - 6;
      d.emplace_back(v == 0 ? 1 : v);
    }
    auto L = QuadLattice::diagonal(Q, d);
    if (!is_locally_universal(L).universal) continue;
    ++hits;
    CHECK(is_isotropic_globally(d));
  }
  CHECK(hits > 3);
}

TEST_CASE("range checks and the counterexample family") {
  NumberField Q;
  auto f = QuadLattice::diagonal(Q, {1, 1, -77});
  auto rep = represents_range_check(f, 5, 10);
  CHECK(rep.unresolved.empty());
  REQUIRE(rep.entries.size() == 11);
  for (const auto& e : rep.entries) {
    REQUIRE(e.witness);
    const auto& w = *e.witness;
    CHECK(w[0] * w[0] + w[1] * w[1] - 77 * w[2] * w[2] == e.n);
  }
  CHECK(*rep.entries[5 - 3].witness == std::array<Integer, 3>{7, 5, 1});
  CHECK(*rep.entries[5 + 5].witness == std::array<Integer, 3>{2, 1, 0});
  CHECK(*rep.entries[5].witness == std::array<Integer, 3>{0, 0, 0});

  auto g = represents_range_check(QuadLattice::diagonal(Q, {1, 1, 1}), 8, 3);
  CHECK(g.unresolved == std::vector<Integer>{-8, -7, -6, -5, -4, -3, -2, -1, 7});

  auto c5 = counterexample_family(5);
  CHECK(c5.p == 7);
  CHECK(c5.q == 11);
  CHECK(form_polynomial(c5.form.gram()) == "x^2 + y^2 - 77*z^2");
  auto c2 = counterexample_family(2);
  CHECK(c2.p == 3);
  CHECK(c2.q == 7);
  CHECK_THROWS_AS(counterexample_family(0), InputError);

  for (long N : {1L, 5L, 10L, 20L}) {
    auto c = counterexample_family(N);
    CHECK(failing_places(is_locally_universal(c.form)) == std::set<Integer>{c.p, c.q});
    CHECK(represents_range_check(c.form, N, 40).unresolved.empty());
  }
}

TEST_CASE("single class condition") {
  NumberField Q;
  Matrix H(2, 2, FieldElem(0));
  H(0, 1) = H(1, 0) = FieldElem(make_rational(1, 2));
  CHECK_FALSE(single_class_condition(QuadLattice::diagonal(Q, {1, 1, 1})));
  CHECK(single_class_condition(QuadLattice(Q, block_diagonal({H, Matrix(1, 1, FieldElem(1))}))));
  auto fam = construct_ternary_family(-5, ideal(kf(-5), {"2", "1+w"}), {});
  CHECK_FALSE(single_class_condition(fam.base));
  CHECK_THROWS_AS(single_class_condition(QuadLattice(Q, H)), InputError);
}

TEST_CASE("sum of three squares over Q(sqrt -155) is locally universal") {
  auto k = kf(-155);
  CHECK(is_locally_universal(QuadLattice::diagonal(k, {1, 1, 1})).universal);
}
