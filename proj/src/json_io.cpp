#include "quniv/json_io.hpp"

#include "quniv/errors.hpp"

namespace quniv {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("lattice JSON: missing \"") + key + "\"");
  return j.at(key);
}

FieldElem elem_from_json(const NumberField& k, const Json& j) {
  if (!j.is_string()) throw InputError("lattice JSON: elements must be strings, got " + j.dump());
  return FieldElem::parse(k, j.get<std::string>());
}

Json elems(const std::vector<FieldElem>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Json opt_elem(const std::optional<FieldElem>& x) { return x ? Json(x->str()) : Json(nullptr); }

}  // namespace

Json field_json(const NumberField& k) {
  if (k.is_rational()) return Json{{"kind", "Q"}};
  return Json{{"kind", "imquad"}, {"d", k.d()}};
}

NumberField field_from_json(const Json& j) {
  const Json& kind = member(j, "kind");
  if (kind == "Q") return NumberField();
  if (kind != "imquad") throw InputError("lattice JSON: field kind must be \"Q\" or \"imquad\"");
  const Json& d = member(j, "d");
  if (!d.is_number_integer()) throw InputError("lattice JSON: \"d\" must be an integer");
  return NumberField::imaginary_quadratic(d.get<long>());
}

Json lattice_json(const QuadLattice& L) {
  Json out{{"field", field_json(L.field())}};
  if (!L.is_free()) {
    Json ideals = Json::array();
    for (const auto& a : L.coeff_ideals()) ideals.push_back(serialize(a));
    out["coeff_ideals"] = ideals;
  }
  Json gram = Json::array();
  for (size_t i = 0; i < L.rank(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < L.rank(); ++j) row.push_back(L.gram()(i, j).str());
    gram.push_back(row);
  }
  out["gram"] = gram;
  return out;
}

QuadLattice lattice_from_json(const Json& j) {
  NumberField k = field_from_json(member(j, "field"));
  const Json& rows = member(j, "gram");
  if (!rows.is_array() || rows.empty()) throw InputError("lattice JSON: \"gram\" must be a non-empty array");
  size_t n = rows.size();
  Matrix G(n, n, FieldElem(k, 0));
  for (size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw InputError("lattice JSON: \"gram\" must be square");
    for (size_t c = 0; c < n; ++c) G(i, c) = elem_from_json(k, rows[i][c]);
  }
  std::vector<Ideal> ideals;
  if (j.contains("coeff_ideals")) {
    const Json& arr = j.at("coeff_ideals");
    if (!arr.is_array()) throw InputError("lattice JSON: \"coeff_ideals\" must be an array");
    for (const auto& gens : arr) {
      if (!gens.is_array() || gens.size() != 2)
        throw InputError("lattice JSON: each coefficient ideal needs exactly two generators");
      FieldElem g1 = elem_from_json(k, gens[0]), g2 = elem_from_json(k, gens[1]);
      if (g1.is_zero() && g2.is_zero()) throw InputError("lattice JSON: zero coefficient ideal");
      std::vector<FieldElem> nz;
      for (const auto& g : {g1, g2})
        if (!g.is_zero()) nz.push_back(g);
      ideals.push_back(Ideal::generated_by(k, nz));
    }
  }
  for (const auto& [key, value] : j.items())
    if (key != "field" && key != "gram" && key != "coeff_ideals")
      throw InputError("lattice JSON: unknown key \"" + key + "\"");
  return QuadLattice(k, G, ideals);
}

QuadLattice parse_lattice(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("lattice JSON: ") + e.what());
  }
  return lattice_from_json(j);
}

Json serialize(const Ideal& I) {
  auto [g1, g2] = I.two_generators();
  return Json::array({g1.str(), g2.str()});
}

Json serialize(const Poly& p) { return elems(p); }

Json serialize(const ExtElem& x) {
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.str());
  return Json{{"ring", x.ring().str()}, {"value", x.str()}, {"coeffs", coeffs}};
}

Json serialize(const LocalVerdict& v) {
  return Json{{"place", v.place}, {"universal", v.universal}, {"rule", rule_name(v.rule)}, {"witness", opt_elem(v.witness)}};
}

Json serialize(const LocalReport& r) {
  Json places = Json::array();
  for (const auto& v : r.verdicts) places.push_back(serialize(v));
  return Json{{"universal", r.universal},
              {"restricted", r.restricted},
              {"places", places},
              {"generic_universal", r.generic_universal},
              {"generic_reason", r.generic_reason}};
}

Json serialize(const GlobalVerdict& v) {
  return Json{{"status", status_name(v.status)}, {"proof_kind", proof_name(v.proof)},
              {"reason", v.reason},              {"witness", opt_elem(v.witness)},
              {"witness_place", v.witness_place}, {"bound", v.bound.get_str()}};
}

Json serialize(const BinaryConstruction& c) {
  return Json{{"ideal", serialize(c.ideal)},
              {"pseudo", lattice_json(c.pseudo)},
              {"alpha", elems({c.alpha[0], c.alpha[1]})},
              {"beta", elems({c.beta[0], c.beta[1]})},
              {"free", lattice_json(c.free)},
              {"coeffs", elems({c.coeffs[0], c.coeffs[1], c.coeffs[2]})},
              {"polynomial", form_polynomial(c.free.gram())}};
}

Json serialize(const TernaryFamily& f) {
  Json primes = Json::array(), members = Json::array();
  for (const auto& p : f.primes) primes.push_back(p.get_str());
  for (const auto& m : f.members)
    members.push_back(Json{{"lattice", lattice_json(m)}, {"polynomial", form_polynomial(m.gram())}});
  return Json{{"a", f.a.str()},
              {"binary", serialize(f.binary)},
              {"base", lattice_json(f.base)},
              {"base_polynomial", form_polynomial(f.base.gram())},
              {"primes", primes},
              {"members", members}};
}

Json serialize(const RangeReport& r) {
  Json entries = Json::array(), unresolved = Json::array();
  for (const auto& e : r.entries) {
    Json w = nullptr;
    if (e.witness) w = Json::array({(*e.witness)[0].get_str(), (*e.witness)[1].get_str(), (*e.witness)[2].get_str()});
    entries.push_back(Json{{"n", e.n.get_str()}, {"witness", w}});
  }
  for (const auto& n : r.unresolved) unresolved.push_back(n.get_str());
  return Json{{"entries", entries}, {"unresolved", unresolved}};
}

Json serialize(const Counterexample& c) {
  return Json{{"p", c.p.get_str()},
              {"q", c.q.get_str()},
              {"lattice", lattice_json(c.form)},
              {"polynomial", form_polynomial(c.form.gram())}};
}

Json serialize(const PotentialWitness& w) {
  return Json{{"kind", w.kind == WitnessKind::Direct ? "Direct" : "Fallback"},
              {"alpha", w.alpha.str()},
              {"delta", w.delta.str()},
              {"ring", w.ring.str()},
              {"X", serialize(w.X)},
              {"Y", serialize(w.Y)},
              {"rho", w.rho ? serialize(*w.rho) : Json(nullptr)},
              {"verified", w.verify()}};
}

Json serialize(const PotentialDecomposition& d) {
  Json b = Json::array(), r = Json::array();
  for (const auto& x : d.b) b.push_back(serialize(x));
  for (unsigned e : d.r) r.push_back(e);
  return Json{{"x", serialize(d.x)},     {"delta", d.delta.str()}, {"b", b},
              {"r", r},                  {"rho", serialize(d.rho)}, {"verified", verify_decomposition(d)}};
}

Json serialize(const DecompositionWitness& w) {
  return Json{{"ring", w.ring.str()},
              {"x", serialize(w.x)},
              {"X", serialize(w.X)},
              {"Y", serialize(w.Y)},
              {"verified", w.verify()}};
}

Json serialize(const UnitShiftCertificate& c) {
  Json out{{"gamma", c.gamma.str()}, {"delta", c.delta.str()}, {"trivial", c.trivial}};
  if (c.trivial) {
    out["u"] = c.u.str();
  } else {
    out["m"] = c.m;
    out["f"] = serialize(c.f);
    out["g"] = serialize(c.g);
  }
  out["verified"] = c.verify();
  return out;
}

Json serialize(const OrthogonalRepresentation& r) {
  Json vectors = Json::array(), coords = Json::array();
  for (const auto& v : r.vectors) vectors.push_back(elems(v));
  for (const auto& c : r.coords) coords.push_back(serialize(c));
  return Json{{"vectors", vectors},  {"values", elems(r.values)}, {"weights", elems(r.weights)},
              {"ring", r.ring.str()}, {"coords", coords},          {"value", serialize(r.value)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace quniv
