#include <doctest.h>

#include <map>
#include <random>

#include "quniv/errors.hpp"
#include "quniv/local_universality.hpp"
#include "support.hpp"

using namespace quniv;
using namespace quniv::testing;

namespace {

LocalContext ctx_q(long p) { return local_context(NumberField(), p)[0]; }

LocalLattice diag_local(const LocalContext& ctx, std::vector<FieldElem> d) {
  return localize(QuadLattice::diagonal(ctx.field(), d), ctx);
}

Matrix gram(const NumberField& k, std::vector<std::vector<const char*>> rows) {
  Matrix G(rows.size(), rows.size(), FieldElem(k, 0));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.size(); ++j) G(i, j) = el(k, rows[i][j]);
  return G;
}

// Raw enumeration when it is cheap, otherwise the Jordan block sumset.
OracleMode cheap_mode(const LocalLattice& L, int K) {
  uint64_t size = ResidueRing(L.ctx, K).size(), total = 1;
  for (size_t i = 0; i < L.rank(); ++i) total *= size;
  return total <= (uint64_t(1) << 14) ? OracleMode::Raw : OracleMode::Blocks;
}

// Every a with 0 <= ord(a) <= top is represented, checked class by class.
bool represents_range(const LocalLattice& L, int top) {
  const LocalContext& ctx = L.ctx;
  for (int m = 0; m <= top; ++m) {
    int K = m + 2 * ctx.e2() + 1;
    ResidueRing R(ctx, K);
    auto hit = image_mod(L, K, cheap_mode(L, K));
    for (uint64_t k = 0; k < R.size(); ++k)
      if (R.val(R.from_key(k)) == m && !hit[k]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("represents_locally examples") {
  auto q5 = ctx_q(5), q2 = ctx_q(2);
  CHECK(represents_locally(diag_local(q5, {1, 1}), 2));
  CHECK_FALSE(represents_locally(diag_local(q2, {1, 1}), -1));
  CHECK(represents_locally(diag_local(q5, {2, 3}), 1));
  CHECK(represents_locally(diag_local(q2, {1, 1, 1}), 3));
  CHECK_FALSE(represents_locally(diag_local(q2, {1, 1, 1}), 7));
  CHECK_FALSE(represents_locally(diag_local(q2, {1, 1, 1}), 28));
  CHECK_THROWS_AS(represents_locally(diag_local(q5, {1, 1}), 0), InputError);
}

TEST_CASE("local universality examples") {
  NumberField Q;
  auto q5 = ctx_q(5), q2 = ctx_q(2), q7 = ctx_q(7);
  auto v1 = is_locally_universal_at(diag_local(q5, {1, 1, 1}));
  CHECK(v1.universal);
  CHECK(v1.rule == LocalRule::NonDyadic_P23_1);

  auto v2 = is_locally_universal_at(QuadLattice(Q, gram(Q, {{"0", "1/2"}, {"1/2", "0"}})), q2);
  CHECK(v2.universal);
  CHECK(v2.rule == LocalRule::Dyadic_Binary_C29);

  auto v3 = is_locally_universal_at(diag_local(q2, {1, 1, 1}));
  CHECK_FALSE(v3.universal);
  CHECK(v3.rule == LocalRule::Dyadic_Ternary_Unimod_P215);
  REQUIRE(v3.witness);
  CHECK(mod_floor(Integer(v3.witness->a().get_num()), 8) == 7);

  auto v4 = is_locally_universal_at(diag_local(q7, {1, 7, 77}));
  CHECK_FALSE(v4.universal);
  REQUIRE(v4.witness);
  CHECK_FALSE(represents_locally(diag_local(q7, {1, 7, 77}), *v4.witness));

  auto v5 = is_locally_universal_at(diag_local(q5, {1, 5}));
  CHECK_FALSE(v5.universal);
  auto v6 = is_locally_universal_at(diag_local(q5, {1, 2, 5, 10}));
  CHECK(v6.universal);
  CHECK(v6.rule == LocalRule::NonDyadic_P23_2);
  auto v7 = is_locally_universal_at(diag_local(q5, {3}));
  CHECK(v7.rule == LocalRule::RankOne_Never);
  CHECK_FALSE(v7.universal);
  CHECK(is_locally_universal_at(diag_local(q2, {1, 1, 1, -1})).rule == LocalRule::Oracle);
  CHECK(is_locally_universal_at(diag_local(q2, {1, 1, 1, -1})).universal);
}

TEST_CASE("archimedean places") {
  NumberField Q;
  CHECK(archimedean_universal(QuadLattice::diagonal(Q, {1, 1, -77}), Place::real()));
  CHECK_FALSE(archimedean_universal(QuadLattice::diagonal(Q, {1, 1, 1}), Place::real()));
  auto k = NumberField::imaginary_quadratic(-5);
  CHECK(archimedean_universal(QuadLattice::diagonal(k, {1, 1}), Place::complex()));
}

TEST_CASE("global local-universality reports") {
  NumberField Q;
  auto xy = is_locally_universal(QuadLattice(Q, gram(Q, {{"0", "1/2"}, {"1/2", "0"}})));
  CHECK(xy.universal);

  auto f = is_locally_universal(QuadLattice::diagonal(Q, {1, 1, -77}));
  CHECK_FALSE(f.universal);
  std::vector<std::string> failing;
  for (const auto& v : f.verdicts)
    if (!v.universal) failing.push_back(v.place);
  CHECK(failing == std::vector<std::string>{"7", "11"});

  CHECK(is_locally_universal(QuadLattice::diagonal(Q, {1, 1, 1, -1})).universal);
  auto d111 = is_locally_universal(QuadLattice::diagonal(Q, {1, 1, 1}));
  CHECK_FALSE(d111.universal);

  // Binary with -det not a square fails at some good place.
  auto b = is_locally_universal(QuadLattice::diagonal(Q, {1, -3}));
  CHECK_FALSE(b.universal);
  CHECK_FALSE(b.generic_universal);

  LocalOptions only5;
  only5.places = std::vector<Integer>{5};
  auto r = is_locally_universal(QuadLattice::diagonal(Q, {1, 1, -77}), only5);
  CHECK(r.restricted);
  CHECK(r.universal);
}

TEST_CASE("classifier agrees with the oracle on random lattices") {
  std::mt19937_64 rng(2024);
  std::map<std::string, std::pair<int, int>> tally;  // universal, total
  for (const auto& ctx : all_contexts()) {
    int per = ctx.residue_field_size() > 5 ? 25 : 60;
    for (size_t n = 1; n <= 3; ++n)
      for (int it = 0; it < per; ++it) {
        LocalLattice L{ctx, random_gram(ctx, n, rng, 2, ctx.is_dyadic())};
        if (L.norm() < 0) continue;
        auto v = is_locally_universal_at(L);
        auto o = universality_oracle(L, cheap_mode(L, 2 * ctx.e2() + 2));
        INFO(ctx.field().name(), " ", ctx.label(), " ", L.gram.str());
        CHECK(v.universal == o.universal);
        auto& t = tally[ctx.field().name() + "@" + ctx.label()];
        t.first += v.universal;
        t.second += 1;
        if (!v.universal && v.witness) CHECK_FALSE(represents_locally(L, *v.witness));
        if (v.universal && n == 3 && ctx.is_dyadic()) {
          // A universal ternary has a Jordan component of rank >= 2.
          auto ranks = jordan_split(L).ranks();
          CHECK(*std::max_element(ranks.begin(), ranks.end()) >= 2);
        }
      }
  }
  int universal = 0;
  for (const auto& [k, t] : tally) universal += t.first;
  CHECK(universal > 20);
}

TEST_CASE("units and pi-units decide universality") {
  std::mt19937_64 rng(7);
  for (const auto& ctx : all_contexts()) {
    if (ctx.residue_field_size() > 3 || ctx.e2() > 1) continue;
    for (int it = 0; it < 12; ++it) {
      LocalLattice L{ctx, random_gram(ctx, 1 + rng() % 3, rng, 2, ctx.is_dyadic())};
      if (L.norm() < 0) continue;
      CHECK(universality_oracle(L, cheap_mode(L, 2 * ctx.e2() + 2)).universal == represents_range(L, 4));
    }
  }
}

TEST_CASE("block oracle matches raw enumeration") {
  std::mt19937_64 rng(8);
  for (const auto& ctx : all_contexts()) {
    for (int it = 0; it < 10; ++it) {
      LocalLattice L{ctx, random_gram(ctx, 1 + rng() % 3, rng, 3, ctx.is_dyadic())};
      if (L.norm() < 0) continue;
      int K = 2 * ctx.e2() + 2;
      if (cheap_mode(L, K) != OracleMode::Raw) continue;
      CHECK(image_mod(L, K, OracleMode::Raw) == image_mod(L, K, OracleMode::Blocks));
    }
  }
}

TEST_CASE("<1, eps pi, delta pi^k> represents all units iff k is even") {
  for (long d : {-1L, -5L}) {
    auto k = NumberField::imaginary_quadratic(d);
    auto ctx = local_context(k, 2)[0];
    REQUIRE(ctx.e2() == 2);
    const FieldElem& pi = ctx.uniformizer();
    std::vector<FieldElem> units{FieldElem(k, 1), FieldElem(k, -1), FieldElem(k, 3), ctx.delta()};
    for (const auto& eps : units)
      for (const auto& del : units)
        for (unsigned e = 1; e <= 4; ++e) {
          LocalLattice L = diag_local(ctx, {FieldElem(k, 1), eps * pi, del * pi.pow(e)});
          ResidueRing R(ctx, 2 * ctx.e2() + 1);
          auto hit = image_mod(L, R.K(), OracleMode::Blocks);
          bool all_units = true;
          for (uint64_t key = 0; key < R.size(); ++key)
            if (R.is_unit(R.from_key(key)) && !hit[key]) all_units = false;
          CHECK(all_units == (e % 2 == 0));
        }
  }
}
