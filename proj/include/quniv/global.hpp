#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quniv/ideal.hpp"
#include "quniv/lattice.hpp"
#include "quniv/local_universality.hpp"

namespace quniv {

// a x^2 + b xy + c y^2 over Z.
struct BinaryForm {
  Integer a, b, c;
  Integer discriminant() const { return b * b - 4 * a * c; }
  bool operator==(const BinaryForm&) const = default;
  std::string str() const;
};

// Positive definite forms only.
BinaryForm reduce_form(const BinaryForm& f);
bool is_reduced(const BinaryForm& f);
// Dirichlet composition of primitive forms of equal discriminant (not reduced).
BinaryForm compose_forms(const BinaryForm& f, const BinaryForm& g);
// Reduced primitive positive definite forms of discriminant D < 0, sorted by (a, b).
std::vector<BinaryForm> reduced_forms(const Integer& D);

// Pic(O_k) for k = Q(sqrt d), d < 0, as reduced forms of the field discriminant.
// Element 0 is the principal class.
class ClassGroup {
 public:
  const NumberField& field() const { return k_; }
  const Integer& discriminant() const { return D_; }
  size_t order() const { return forms_.size(); }
  const std::vector<BinaryForm>& forms() const { return forms_; }

  size_t index_of(const BinaryForm& f) const;
  size_t compose(size_t i, size_t j) const { return table_[i][j]; }
  size_t inverse(size_t i) const;
  size_t element_order(size_t i) const;
  std::vector<size_t> squares() const;

  // Class of a fractional ideal, and an integral ideal in a given class.
  size_t ideal_class(const Ideal& I) const;
  Ideal ideal_of(size_t i) const;

 private:
  friend const ClassGroup& class_group(long d);
  NumberField k_;
  Integer D_;
  std::vector<BinaryForm> forms_;
  std::vector<std::vector<size_t>> table_;
};

// Cached per d; rejects d >= 0, non-squarefree d and |d| > 10^4.
const ClassGroup& class_group(long d);
// Class number of k; 1 for Q.
size_t class_number(const NumberField& k);
// [Pic : Pic^2].
size_t pic_two_part(long d);

// Integral ideals of norm <= bound, ordered by norm then by Hermite basis.
std::vector<Ideal> integral_ideals_up_to_norm(const NumberField& k, const Integer& bound);

// Elements of a fractional ideal with |N(x)| <= bound, ordered by norm; zero included.
std::vector<FieldElem> elements_up_to_norm(const Ideal& I, const Rational& bound);

// Q(a x + b y) = ab on A x + A^-1 y: alpha = a b with a in A, b in A^-1.
struct HyperbolicWitness {
  FieldElem a, b;
};
std::optional<HyperbolicWitness> binary_hyperbolic_represents(const Ideal& A, const FieldElem& alpha);

// If L is A x + A^-1 y with Q(x) = Q(y) = 0 and B(x, y) = 1/2, returns A (up to a principal factor).
std::optional<Ideal> hyperbolic_ideal(const QuadLattice& L);

// A x + A^-1 y and a free basis eta_i = alpha_i x + beta_i y with alpha_1 beta_2 - alpha_2 beta_1 = 1.
struct BinaryConstruction {
  Ideal ideal;
  QuadLattice pseudo;
  std::array<FieldElem, 2> alpha, beta;
  QuadLattice free;
  std::array<FieldElem, 3> coeffs;  // a x^2 + b xy + c y^2
};
BinaryConstruction construct_binary(const Ideal& A);

// k(sqrt a)/k unramified at every finite place and a not a square in k.
bool is_unramified_quadratic(const FieldElem& a);
std::optional<FieldElem> find_unramified_quadratic(long d);

// +1 or -1: image of the class of A in Gal(k(sqrt a)/k).
int artin_symbol(const Ideal& A, const FieldElem& a);

struct TernaryFamily {
  FieldElem a;  // k(sqrt a) unramified
  BinaryConstruction binary;
  QuadLattice base;  // (A x + A^-1 y) + O z, Q(z) = 4a, free Gram
  std::vector<Integer> primes;
  std::vector<QuadLattice> members;  // (A x + A^-1 y) + (p) z
};
TernaryFamily construct_ternary_family(long d, const Ideal& A, const std::vector<Integer>& primes);

enum class GlobalStatus { Universal, NotUniversal, UnknownWithinBound };
enum class ProofKind { None, IdealClassObstruction, LocalFailure, SearchBoundOnly };
std::string status_name(GlobalStatus s);
std::string proof_name(ProofKind p);

struct GlobalVerdict {
  GlobalStatus status = GlobalStatus::UnknownWithinBound;
  ProofKind proof = ProofKind::None;
  std::string reason;
  std::optional<FieldElem> witness;
  std::string witness_place;
  Integer bound = 0;
  LocalReport local;
};

struct GlobalOptions {
  Integer bound = 1000;        // norm bound for the z-coordinate scan and direct searches
  Integer target_norm = 30;    // small targets checked in the bounded regime
  Integer generic_height = 40;  // coordinate norm bound for unstructured ternary searches
  LocalOptions local;
};
GlobalVerdict is_globally_universal(const QuadLattice& L, const GlobalOptions& opts = {});

// Vector with Q(v) = alpha: all coordinates but the last have norm <= height, the last is
// solved exactly. Coordinates lie in the coefficient ideals.
std::optional<std::vector<FieldElem>> search_representation(const QuadLattice& L, const FieldElem& alpha,
                                                            const Integer& height);

// Sufficient condition for gen(L) to be a single proper class.
bool single_class_condition(const QuadLattice& L);

struct RangeEntry {
  Integer n;
  std::optional<std::array<Integer, 3>> witness;
};
struct RangeReport {
  std::vector<RangeEntry> entries;  // n = -N..N, zero included with its trivial witness
  std::vector<Integer> unresolved;
};
// Ternary over Z. Gram diag(1, 1, -D) uses the two-squares scan over |z| <= z_bound;
// anything else uses a box search with |x|, |y|, |z| <= z_bound.
RangeReport represents_range_check(const QuadLattice& f, const Integer& N, const Integer& z_bound);

struct Counterexample {
  Integer p, q;
  QuadLattice form;  // x^2 + y^2 - pq z^2
};
Counterexample counterexample_family(const Integer& N);

// Polynomial text of a Gram, e.g. "(1+w)*x^2 + 5*x*y + (1-w)*y^2"; variables x, y, z, x4, ...
std::string form_polynomial(const Matrix& G);

}  // namespace quniv
