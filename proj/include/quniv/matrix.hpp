#pragma once

#include <string>
#include <vector>

#include "quniv/field.hpp"

namespace quniv {

// Dense matrix over k, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const FieldElem& fill = FieldElem());
  static Matrix identity(size_t n, const NumberField& k = NumberField());

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  FieldElem& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const FieldElem& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  bool is_symmetric() const;
  Matrix submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const;
  FieldElem det() const;

  // Column operations in place.
  void add_col_multiple(size_t dst, size_t src, const FieldElem& c);
  void swap_cols(size_t i, size_t j);

  std::string str() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElem> data_;
};

// Block-diagonal assembly.
Matrix block_diagonal(const std::vector<Matrix>& blocks);

// Symmetric congruence helpers acting on a Gram matrix G and basis transform U:
// new basis vector dst <- dst + c * src.
void congruence_add(Matrix& G, Matrix& U, size_t dst, size_t src, const FieldElem& c);
void congruence_swap(Matrix& G, Matrix& U, size_t i, size_t j);

// Diagonal entries of an orthogonal basis of the quadratic space with Gram G (exact).
std::vector<FieldElem> diagonalize(const Matrix& G);

}  // namespace quniv
