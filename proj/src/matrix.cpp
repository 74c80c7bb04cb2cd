#include "quniv/matrix.hpp"

#include "quniv/errors.hpp"

namespace quniv {

Matrix::Matrix(size_t rows, size_t cols, const FieldElem& fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(size_t n, const NumberField& k) {
  Matrix m(n, n, FieldElem(k, 0));
  for (size_t i = 0; i < n; ++i) m(i, i) = FieldElem(k, 1);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw InputError("matrix dimension mismatch");
  Matrix r(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < o.cols_; ++j) {
      FieldElem s;
      for (size_t l = 0; l < cols_; ++l) s += (*this)(i, l) * o(l, j);
      r(i, j) = s;
    }
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (!(data_[i] == o.data_[i])) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = i + 1; j < cols_; ++j)
      if (!((*this)(i, j) == (*this)(j, i))) return false;
  return true;
}

Matrix Matrix::submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const {
  Matrix s(nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
  return s;
}

FieldElem Matrix::det() const {
  if (rows_ != cols_) throw InputError("det of non-square matrix");
  Matrix m = *this;
  FieldElem d(1);
  for (size_t c = 0; c < cols_; ++c) {
    size_t piv = c;
    while (piv < rows_ && m(piv, c).is_zero()) ++piv;
    if (piv == rows_) return FieldElem(d.field(), 0);
    if (piv != c) {
      for (size_t j = 0; j < cols_; ++j) std::swap(m(piv, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    FieldElem inv = m(c, c).inverse();
    for (size_t i = c + 1; i < rows_; ++i) {
      if (m(i, c).is_zero()) continue;
      FieldElem f = m(i, c) * inv;
      for (size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

void Matrix::add_col_multiple(size_t dst, size_t src, const FieldElem& c) {
  for (size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
}

void Matrix::swap_cols(size_t i, size_t j) {
  for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

std::string Matrix::str() const {
  std::string s = "[";
  for (size_t i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
    s += "]";
  }
  return s + "]";
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix m(n, n);
  size_t off = 0;
  for (const auto& b : blocks) {
    for (size_t i = 0; i < b.rows(); ++i)
      for (size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

void congruence_add(Matrix& G, Matrix& U, size_t dst, size_t src, const FieldElem& c) {
  // Row then column update keeps G symmetric: G' = E^T G E.
  for (size_t j = 0; j < G.cols(); ++j) G(dst, j) += c * G(src, j);
  for (size_t i = 0; i < G.rows(); ++i) G(i, dst) += c * G(i, src);
  U.add_col_multiple(dst, src, c);
}

void congruence_swap(Matrix& G, Matrix& U, size_t i, size_t j) {
  if (i == j) return;
  for (size_t c = 0; c < G.cols(); ++c) std::swap(G(i, c), G(j, c));
  G.swap_cols(i, j);
  U.swap_cols(i, j);
}

std::vector<FieldElem> diagonalize(const Matrix& G0) {
  Matrix G = G0, U = Matrix::identity(G0.rows());
  size_t n = G.rows();
  std::vector<FieldElem> out;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && G(piv, piv).is_zero()) ++piv;
    if (piv == n) {
      // No anisotropic basis vector left: x_k + x_j has Q = 2 B(x_k, x_j).
      bool fixed = false;
      for (size_t i = k; i < n && !fixed; ++i)
        for (size_t j = i + 1; j < n && !fixed; ++j)
          if (!G(i, j).is_zero()) {
            congruence_add(G, U, i, j, FieldElem(1));
            piv = i;
            fixed = true;
          }
      if (!fixed) throw InputError("degenerate quadratic space");
    }
    congruence_swap(G, U, k, piv);
    FieldElem inv = G(k, k).inverse();
    for (size_t j = k + 1; j < n; ++j)
      if (!G(k, j).is_zero()) congruence_add(G, U, j, k, -(G(k, j) * inv));
    out.push_back(G(k, k));
  }
  return out;
}

}  // namespace quniv
