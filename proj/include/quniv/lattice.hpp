#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quniv/ideal.hpp"
#include "quniv/localfield.hpp"
#include "quniv/matrix.hpp"

namespace quniv {

// L = a_1 x_1 + ... + a_n x_n with Gram matrix B(x_i, x_j). Free when every a_i is the unit ideal.
class QuadLattice {
 public:
  QuadLattice(const NumberField& k, Matrix gram, std::vector<Ideal> coeff_ideals = {});
  static QuadLattice diagonal(const NumberField& k, const std::vector<FieldElem>& entries);

  const NumberField& field() const { return k_; }
  size_t rank() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  const std::vector<Ideal>& coeff_ideals() const { return coeffs_; }
  bool is_free() const;

  FieldElem det() const { return gram_.det(); }
  // det(gram) * prod a_i^2.
  Ideal volume() const;
  Ideal scale_ideal() const;
  Ideal norm_ideal() const;
  // Q(sum c_i x_i).
  FieldElem evaluate(const std::vector<FieldElem>& coords) const;

 private:
  NumberField k_;
  Matrix gram_;
  std::vector<Ideal> coeffs_;
};

// Free O_v-lattice given by a Gram matrix of global elements.
struct LocalLattice {
  LocalContext ctx;
  Matrix gram;
  size_t rank() const { return gram.rows(); }
  int scale() const;  // ord s(L)
  int norm() const;   // ord n(L)
  int det_valuation() const;
};

// Local generator of a fractional ideal: an element of I with the same valuation.
FieldElem local_generator(const Ideal& I, const LocalContext& ctx);
// The context's precision is raised when 2 ord(det) + 2e2 + 3 exceeds it.
LocalLattice localize(const QuadLattice& L, const LocalContext& ctx);

struct JordanComponent {
  int scale = 0;  // ord s(L_i)
  int norm = 0;   // ord n(L_i)
  Matrix gram;    // actual Gram of the component
  size_t rank() const { return gram.rows(); }
  // Gram divided by pi^scale.
  Matrix rescaled(const LocalContext& ctx) const;
};

struct JordanSplitting {
  LocalContext ctx;
  Matrix input;
  Matrix transform;  // columns: new basis in old coordinates; transform^T input transform = assembled()
  std::vector<JordanComponent> components;
  bool refined = false;
  bool minimality_guaranteed = false;

  Matrix assembled() const;
  int scale() const { return components.front().scale; }
  int norm() const;
  // i(L): largest 1-based index with n(L_i) = n(L).
  int index() const;
  std::vector<int> scales() const;
  std::vector<size_t> ranks() const;
};

JordanSplitting jordan_split(const LocalLattice& L);

// Modular binary component that is pi^s A(0,0) (requires n = 2s and -det pi^{-2s} a square).
bool is_hyperbolic_plane(const Matrix& binary, const LocalContext& ctx);

// Minimal norm splitting by exhaustive search over the basis changes that preserve the
// Jordan type (rank <= 3). Higher ranks pass through with minimality_guaranteed = false.
JordanSplitting minimal_norm_refine(const JordanSplitting& split);

struct WeightNormGroup {
  int weight = 0;  // ord w(L)
  int m = 0;       // ord m(L)
};
WeightNormGroup weight_and_norm_group(const LocalLattice& L);

// Isotropy of the space with diagonal coefficients (rank 2 or 3) at a place.
bool is_isotropic(const std::vector<FieldElem>& diag, const Place& v);
// Hasse-Minkowski for ternary spaces over k.
bool is_isotropic_globally(const std::vector<FieldElem>& diag);

}  // namespace quniv
