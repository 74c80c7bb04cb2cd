#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "quniv/global.hpp"
#include "quniv/potential.hpp"

namespace quniv {

// Insertion-ordered objects keep every dump byte-identical across runs.
using Json = nlohmann::ordered_json;

// Lattice schema:
//   {"field": {"kind": "Q"} | {"kind": "imquad", "d": -5},
//    "coeff_ideals": [[g1, g2], ...]   (optional, two generators each),
//    "gram": [[entry, ...], ...]}
// Elements are exact strings such as "3", "-1/2" or "1/2+3/4*w". Malformed input raises InputError.
Json field_json(const NumberField& k);
NumberField field_from_json(const Json& j);
Json lattice_json(const QuadLattice& L);
QuadLattice lattice_from_json(const Json& j);
QuadLattice parse_lattice(std::string_view text);

Json serialize(const Ideal& I);  // two generators
Json serialize(const Poly& p);   // coefficient strings, constant term first
Json serialize(const ExtElem& x);
Json serialize(const LocalVerdict& v);
Json serialize(const LocalReport& r);
Json serialize(const GlobalVerdict& v);
Json serialize(const BinaryConstruction& c);
Json serialize(const TernaryFamily& f);
Json serialize(const RangeReport& r);
Json serialize(const Counterexample& c);
Json serialize(const PotentialWitness& w);
Json serialize(const PotentialDecomposition& d);
Json serialize(const DecompositionWitness& w);
Json serialize(const UnitShiftCertificate& c);
Json serialize(const OrthogonalRepresentation& r);

// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace quniv
