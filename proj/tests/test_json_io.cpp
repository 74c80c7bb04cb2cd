#include <doctest.h>

#include <random>

#include "quniv/errors.hpp"
#include "quniv/json_io.hpp"
#include "support.hpp"

using namespace quniv;
using namespace quniv::testing;

namespace {

bool same_lattice(const QuadLattice& a, const QuadLattice& b) {
  if (!(a.field() == b.field()) || a.rank() != b.rank()) return false;
  for (size_t i = 0; i < a.rank(); ++i) {
    if (!(a.coeff_ideals()[i] == b.coeff_ideals()[i])) return false;
    for (size_t j = 0; j < a.rank(); ++j)
      if (!(a.gram()(i, j) == b.gram()(i, j))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("lattice JSON examples") {
  auto L = parse_lattice(R"({"field": {"kind": "Q"}, "gram": [["1", "1/2"], ["1/2", "-3"]]})");
  CHECK(L.field().is_rational());
  CHECK(L.gram()(0, 1) == FieldElem(make_rational(1, 2)));
  CHECK(dump(lattice_json(L)) ==
        "{\n  \"field\": {\n    \"kind\": \"Q\"\n  },\n  \"gram\": [\n    [\n      \"1\",\n      \"1/2\"\n    ],\n"
        "    [\n      \"1/2\",\n      \"-3\"\n    ]\n  ]\n}\n");

  auto M = parse_lattice(R"({"field": {"kind": "imquad", "d": -5}, "gram": [["1+w", "5/2"], ["5/2", "1-w"]]})");
  CHECK(M.field() == NumberField::imaginary_quadratic(-5));
  CHECK(lattice_json(M).dump() ==
        R"({"field":{"kind":"imquad","d":-5},"gram":[["1+w","5/2"],["5/2","1-w"]]})");

  auto k = NumberField::imaginary_quadratic(-5);
  auto ex = construct_binary(Ideal::generated_by(k, {FieldElem(k, 2), FieldElem(k, 1, 1)}));
  Json pj = lattice_json(ex.pseudo);
  REQUIRE(pj.contains("coeff_ideals"));
  CHECK(pj["coeff_ideals"].size() == 2);
  CHECK(same_lattice(lattice_from_json(pj), ex.pseudo));
}

TEST_CASE("lattice JSON round trips on random lattices") {
  std::mt19937_64 rng(5);
  for (long d : {0L, -1L, -3L, -5L, -23L}) {
    NumberField k = d == 0 ? NumberField() : NumberField::imaginary_quadratic(d);
    for (int it = 0; it < 40; ++it) {
      size_t n = 1 + rng() % 4;
      Matrix G(n, n, FieldElem(k, 0));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) G(i, j) = G(j, i) = random_elem(k, rng, 30);
      if (G.det().is_zero()) continue;
      std::vector<Ideal> ideals;
      for (size_t i = 0; i < n; ++i)
        ideals.push_back(rng() % 2 ? Ideal::unit(k)
                                   : Ideal::generated_by(k, {random_integer(k, rng, 9) + FieldElem(k, 10),
                                                             random_elem(k, rng, 9)}));
      QuadLattice L(k, G, ideals);
      std::string text = dump(lattice_json(L));
      QuadLattice back = parse_lattice(text);
      CHECK(same_lattice(L, back));
      CHECK(dump(lattice_json(back)) == text);
    }
  }
}

TEST_CASE("malformed lattice JSON") {
  for (const char* bad : {
           "not json",
           R"({"gram": [["1"]]})",
           R"({"field": {"kind": "R"}, "gram": [["1"]]})",
           R"({"field": {"kind": "imquad"}, "gram": [["1"]]})",
           R"({"field": {"kind": "imquad", "d": -4}, "gram": [["1"]]})",
           R"({"field": {"kind": "imquad", "d": 5}, "gram": [["1"]]})",
           R"({"field": {"kind": "Q"}, "gram": [["1", "0"]]})",
           R"({"field": {"kind": "Q"}, "gram": [[1]]})",
           R"({"field": {"kind": "Q"}, "gram": [["w"]]})",
           R"({"field": {"kind": "Q"}, "gram": [["1/0"]]})",
           R"({"field": {"kind": "Q"}, "gram": [["1", "2"], ["3", "1"]]})",
           R"({"field": {"kind": "Q"}, "gram": [["0"]]})",
           R"({"field": {"kind": "Q"}, "gram": []})",
           R"({"field": {"kind": "Q"}, "gram": [["1"]], "coeff_ideals": [["1"]]})",
           R"({"field": {"kind": "Q"}, "gram": [["1"]], "coeff_ideals": [["0", "0"]]})",
           R"({"field": {"kind": "Q"}, "gram": [["1"]], "extra": 1})",
       }) {
    INFO(bad);
    CHECK_THROWS_AS(parse_lattice(bad), InputError);
  }
}

TEST_CASE("verdict and certificate serialization") {
  NumberField Q;
  auto v = is_globally_universal(QuadLattice::diagonal(Q, {1, 1, -77}));
  Json j = serialize(v);
  CHECK(j["status"] == "NotUniversal");
  CHECK(j["proof_kind"] == "LocalFailure");
  CHECK(j["witness_place"] == "7");
  Json r = serialize(v.local);
  CHECK(r["places"][0]["place"] == "inf");
  CHECK(r["places"][0]["rule"] == rule_name(LocalRule::Archimedean));
  CHECK(serialize(v).dump() == j.dump());

  auto c = serialize(unit_shift_certificate(3, 2));
  CHECK(c["m"] == 2);
  CHECK(c["f"] == Json::array({"1", "2", "1"}));
  CHECK(c["g"] == Json::array({"4", "4", "1"}));
  CHECK(c["verified"] == true);

  auto w = serialize(potential_witness(5, -1));
  CHECK(w["kind"] == "Direct");
  CHECK(w["X"]["value"] == "3");
  CHECK(w["Y"]["value"] == "2");
  CHECK(w["verified"] == true);

  auto d = serialize(decomposition_witness(gaussian_decomposition(2, 0)));
  CHECK(d["verified"] == true);

  auto rr = serialize(represents_range_check(QuadLattice::diagonal(Q, {1, 1, -77}), 5, 10));
  CHECK(rr["entries"][2]["witness"] == Json::array({"7", "5", "1"}));
  CHECK(rr["unresolved"].empty());

  auto ce = serialize(counterexample_family(5));
  CHECK(ce["polynomial"] == "x^2 + y^2 - 77*z^2");
  CHECK(same_lattice(lattice_from_json(ce["lattice"]), counterexample_family(5).form));
}
