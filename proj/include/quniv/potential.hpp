#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quniv/extring.hpp"
#include "quniv/lattice.hpp"

namespace quniv {

// True iff the norm ideal of L is O_k. Rank 1 is rejected.
bool is_potentially_universal(const QuadLattice& L);

// alpha = X^2 + delta Y^2 over an explicit ring.
enum class WitnessKind { Direct, Fallback };
struct PotentialWitness {
  WitnessKind kind = WitnessKind::Direct;
  FieldElem alpha, delta;
  ExtRing ring;
  ExtElem X, Y;
  std::optional<ExtElem> rho;  // Direct only
  bool verify() const;
};
// Direct: rho = (alpha - 1) / (2 sqrt delta) with integral coefficients, X = 1 + sqrt(delta) rho,
// Y = sqrt(-1) rho. Otherwise X = sqrt(alpha), Y = 0.
PotentialWitness potential_witness(const FieldElem& alpha, const FieldElem& delta);

// x = prod b_i^r_i (1 + 2 rho sqrt(delta)) inside ring.
struct PotentialDecomposition {
  ExtElem x;
  FieldElem delta;
  std::vector<ExtElem> b;
  std::vector<unsigned> r;
  ExtElem rho;
};
bool verify_decomposition(const PotentialDecomposition& dec);

// k = Q, delta = -1: every nonzero x in Z[i] is i^k (1+i)^l (1 + 2 rho i), in the ring Z[sqrt(-1)].
PotentialDecomposition gaussian_decomposition(const Integer& re, const Integer& im);
// The matching witness over Z[i][sqrt(i), sqrt(1+i)]: X = prod sqrt(b_i)^r_i (1 + i rho),
// Y = prod sqrt(b_i)^r_i i rho, so that X^2 - Y^2 = x.
struct DecompositionWitness {
  ExtRing ring;
  ExtElem x, X, Y;
  bool verify() const;
};
DecompositionWitness decomposition_witness(const PotentialDecomposition& dec);

// delta^m g(x) = gamma^m f((1 + delta x) / gamma), f monic with constant term 1, g monic.
struct UnitShiftCertificate {
  FieldElem gamma, delta;
  bool trivial = false;  // gamma or delta a unit: u = gamma^-1 (or 1) already works
  FieldElem u;           // trivial case only
  unsigned m = 0;
  Poly f, g;             // coefficient i is the x^i term
  bool verify() const;
};
// m is the multiplicative order of gamma mod delta, doubled when odd; orders above
// kMaxShiftOrder are reported as PrecisionError.
inline constexpr unsigned kMaxShiftOrder = 64;
UnitShiftCertificate unit_shift_certificate(const FieldElem& gamma, const FieldElem& delta);

// n(L) O_K = O_K for K = k(sqrt t). Rejects t = 0 and squares t.
bool base_change_stability(const QuadLattice& L, const FieldElem& t);

// sum_j c_j^2 Q(v_j) = alpha with pairwise orthogonal v_j and coefficients c_j = sqrt(u_j alpha / g)
// where sum u_j Q(v_j) = g divides alpha: a representation of alpha over Z[sqrt(u_j alpha / g)].
// Box search only, so nullopt does not mean alpha is unrepresentable.
struct OrthogonalRepresentation {
  std::vector<std::vector<FieldElem>> vectors;
  std::vector<FieldElem> values, weights;
  ExtRing ring;
  std::vector<ExtElem> coords;  // coordinates in the basis of L
  ExtElem value;
};
std::optional<OrthogonalRepresentation> represent_over_extension(const QuadLattice& L, const FieldElem& alpha,
                                                                 long box = 2);

}  // namespace quniv
