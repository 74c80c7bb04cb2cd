#include "quniv/lattice.hpp"

#include <algorithm>
#include <climits>
#include <tuple>

#include "quniv/errors.hpp"

namespace quniv {

namespace {

FieldElem coerce(const NumberField& k, const FieldElem& x) {
  if (!x.is_rational() && !(x.field() == k)) throw InputError("gram entry lies in a different field");
  return FieldElem(k, x.a(), x.b());
}

FieldElem pi_power(const LocalContext& ctx, int e) {
  FieldElem p = ctx.uniformizer().pow(static_cast<unsigned>(std::abs(e)));
  return e >= 0 ? p : p.inverse();
}

int min_entry_valuation(const Matrix& G, const LocalContext& ctx) {
  int s = INT_MAX;
  for (size_t i = 0; i < G.rows(); ++i)
    for (size_t j = 0; j < G.cols(); ++j)
      if (!G(i, j).is_zero()) s = std::min(s, ctx.valuation(G(i, j)));
  if (s == INT_MAX) throw InputError("zero Gram matrix");
  return s;
}

int norm_of(const Matrix& G, int scale, const LocalContext& ctx) {
  int n = scale + ctx.e2();
  for (size_t i = 0; i < G.rows(); ++i)
    if (!G(i, i).is_zero()) n = std::min(n, ctx.valuation(G(i, i)));
  return n;
}

}  // namespace

QuadLattice::QuadLattice(const NumberField& k, Matrix gram, std::vector<Ideal> coeff_ideals)
    : k_(k), gram_(std::move(gram)), coeffs_(std::move(coeff_ideals)) {
  size_t n = gram_.rows();
  if (n == 0 || gram_.cols() != n) throw InputError("gram matrix must be square and non-empty");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) gram_(i, j) = coerce(k, gram_(i, j));
  if (!gram_.is_symmetric()) throw InputError("gram matrix must be symmetric");
  if (gram_.det().is_zero()) throw InputError("gram matrix is degenerate");
  if (coeffs_.empty()) coeffs_.assign(n, Ideal::unit(k));
  if (coeffs_.size() != n) throw InputError("need one coefficient ideal per basis vector");
  for (const auto& a : coeffs_)
    if (!(a.field() == k) && !(a.field().is_rational() && k.is_rational()))
      throw InputError("coefficient ideal lies in a different field");
}

QuadLattice QuadLattice::diagonal(const NumberField& k, const std::vector<FieldElem>& entries) {
  Matrix G(entries.size(), entries.size(), FieldElem(k, 0));
  for (size_t i = 0; i < entries.size(); ++i) G(i, i) = entries[i];
  return QuadLattice(k, G);
}

bool QuadLattice::is_free() const {
  Ideal one = Ideal::unit(k_);
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Ideal& a) { return a == one; });
}

Ideal QuadLattice::volume() const {
  Ideal v = Ideal::principal(FieldElem(k_, 1) * det());
  for (const auto& a : coeffs_) v = v * a * a;
  return v;
}

Ideal QuadLattice::scale_ideal() const {
  std::optional<Ideal> s;
  for (size_t i = 0; i < rank(); ++i)
    for (size_t j = i; j < rank(); ++j) {
      if (gram_(i, j).is_zero()) continue;
      Ideal t = Ideal::principal(gram_(i, j)) * coeffs_[i] * coeffs_[j];
      s = s ? *s + t : t;
    }
  return *s;
}

Ideal QuadLattice::norm_ideal() const {
  Ideal n = Ideal::principal(FieldElem(k_, 2)) * scale_ideal();
  for (size_t i = 0; i < rank(); ++i)
    if (!gram_(i, i).is_zero()) n = n + Ideal::principal(gram_(i, i)) * coeffs_[i] * coeffs_[i];
  return n;
}

FieldElem QuadLattice::evaluate(const std::vector<FieldElem>& c) const {
  if (c.size() != rank()) throw InputError("coordinate vector has the wrong length");
  FieldElem q(k_, 0);
  for (size_t i = 0; i < rank(); ++i)
    for (size_t j = 0; j < rank(); ++j) q += gram_(i, j) * c[i] * c[j];
  return q;
}

int LocalLattice::scale() const { return min_entry_valuation(gram, ctx); }
int LocalLattice::norm() const { return norm_of(gram, scale(), ctx); }
int LocalLattice::det_valuation() const { return ctx.valuation(gram.det()); }

FieldElem local_generator(const Ideal& I, const LocalContext& ctx) {
  auto zb = I.z_basis();
  if (zb[1].is_zero()) return zb[0];
  return ctx.valuation(zb[1]) < ctx.valuation(zb[0]) ? zb[1] : zb[0];
}

LocalLattice localize(const QuadLattice& L, const LocalContext& ctx) {
  size_t n = L.rank();
  std::vector<FieldElem> gen;
  for (const auto& a : L.coeff_ideals()) gen.push_back(local_generator(a, ctx));
  Matrix G(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) G(i, j) = L.gram()(i, j) * gen[i] * gen[j];
  int need = 2 * std::abs(ctx.valuation(G.det())) + 2 * ctx.e2() + 3;
  LocalContext c = ctx.precision() < need ? ctx.with_precision(need) : ctx;
  return LocalLattice{c, G};
}

Matrix JordanComponent::rescaled(const LocalContext& ctx) const {
  FieldElem f = pi_power(ctx, -scale);
  Matrix R = gram;
  for (size_t i = 0; i < R.rows(); ++i)
    for (size_t j = 0; j < R.cols(); ++j) R(i, j) *= f;
  return R;
}

Matrix JordanSplitting::assembled() const {
  std::vector<Matrix> blocks;
  for (const auto& c : components) blocks.push_back(c.gram);
  return block_diagonal(blocks);
}

int JordanSplitting::norm() const {
  int n = INT_MAX;
  for (const auto& c : components) n = std::min(n, c.norm);
  return n;
}

int JordanSplitting::index() const {
  int n = norm(), idx = 0;
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].norm == n) idx = static_cast<int>(i) + 1;
  return idx;
}

std::vector<int> JordanSplitting::scales() const {
  std::vector<int> out;
  for (const auto& c : components) out.push_back(c.scale);
  return out;
}

std::vector<size_t> JordanSplitting::ranks() const {
  std::vector<size_t> out;
  for (const auto& c : components) out.push_back(c.rank());
  return out;
}

JordanSplitting jordan_split(const LocalLattice& L) {
  const LocalContext& ctx = L.ctx;
  const NumberField& k = ctx.field();
  size_t n = L.rank();
  Matrix G = L.gram, U = Matrix::identity(n, k);
  std::vector<std::pair<int, size_t>> blocks;  // (scale, size), in order
  size_t pos = 0;
  while (pos < n) {
    Matrix rest = G.submatrix(pos, pos, n - pos, n - pos);
    int s = min_entry_valuation(rest, ctx);
    size_t piv = n;
    for (size_t i = pos; i < n && piv == n; ++i)
      if (!G(i, i).is_zero() && ctx.valuation(G(i, i)) == s) piv = i;
    if (piv != n) {
      congruence_swap(G, U, pos, piv);
      FieldElem inv = G(pos, pos).inverse();
      for (size_t j = pos + 1; j < n; ++j)
        if (!G(pos, j).is_zero()) congruence_add(G, U, j, pos, -(G(pos, j) * inv));
      blocks.emplace_back(s, 1);
      ++pos;
      continue;
    }
    size_t bi = n, bj = n;
    for (size_t i = pos; i < n && bi == n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (!G(i, j).is_zero() && ctx.valuation(G(i, j)) == s) {
          bi = i;
          bj = j;
          break;
        }
    if (!ctx.is_dyadic()) {
      // Q(x_i + x_j) = Q(x_i) + 2B(x_i, x_j) + Q(x_j) attains the scale.
      congruence_add(G, U, bi, bj, FieldElem(k, 1));
      continue;
    }
    congruence_swap(G, U, pos, bi);
    congruence_swap(G, U, pos + 1, bj == pos ? bi : bj);
    FieldElem a = G(pos, pos), b = G(pos, pos + 1), d = G(pos + 1, pos + 1);
    FieldElem det = a * d - b * b;
    for (size_t j = pos + 2; j < n; ++j) {
      FieldElem u = G(pos, j), v = G(pos + 1, j);
      if (u.is_zero() && v.is_zero()) continue;
      FieldElem c1 = -(d * u - b * v) / det, c2 = -(a * v - b * u) / det;
      congruence_add(G, U, j, pos, c1);
      congruence_add(G, U, j, pos + 1, c2);
    }
    blocks.emplace_back(s, 2);
    pos += 2;
  }
  JordanSplitting out{ctx, L.gram, U, {}, false, false};
  size_t at = 0;
  for (size_t b = 0; b < blocks.size();) {
    size_t e = b, size = 0;
    while (e < blocks.size() && blocks[e].first == blocks[b].first) size += blocks[e++].second;
    JordanComponent c;
    c.scale = blocks[b].first;
    c.gram = G.submatrix(at, at, size, size);
    c.norm = norm_of(c.gram, c.scale, ctx);
    out.components.push_back(c);
    at += size;
    b = e;
  }
  return out;
}

bool is_hyperbolic_plane(const Matrix& B, const LocalContext& ctx) {
  if (B.rows() != 2) return false;
  int s = min_entry_valuation(B, ctx);
  if (norm_of(B, s, ctx) != s + ctx.e2()) return false;
  FieldElem d = B.det();
  if (ctx.valuation(d) != 2 * s) return false;
  return is_square_local(-d, ctx);
}

namespace {

// Score of a candidate splitting: larger is better.
using Score = std::tuple<int, int, int>;

Score binary_score(const Matrix& B, int scale, const LocalContext& ctx, bool with_defect,
                   const std::optional<Score>& best) {
  int n = norm_of(B, scale, ctx);
  if (best && n < std::get<0>(*best)) return {n, 0, 0};
  int hyp = is_hyperbolic_plane(B, ctx) ? 1 : 0;
  int def = 0;
  if (with_defect) {
    auto d = quadratic_defect(-(B.det() * pi_power(ctx, -2 * scale)), ctx);
    def = d.zero ? INT_MAX : d.exponent;
  }
  return {n, hyp, def};
}

}  // namespace

JordanSplitting minimal_norm_refine(const JordanSplitting& split) {
  const LocalContext& ctx = split.ctx;
  if (!ctx.is_dyadic()) throw InputError("minimal norm refinement is only defined at dyadic places");
  JordanSplitting out = split;
  out.refined = true;
  size_t n = split.input.rows();
  if (n > 3) {
    out.minimality_guaranteed = false;
    return out;
  }
  out.minimality_guaranteed = true;
  auto ranks = split.ranks();
  bool two_one = ranks == std::vector<size_t>{2, 1};
  bool one_two = ranks == std::vector<size_t>{1, 2};
  if (!two_one && !one_two) return out;

  const NumberField& k = ctx.field();
  Matrix B = split.assembled();
  // Moves by multiples of pi^(2e2) change neither norms nor square classes of the
  // rescaled determinants, so residues mod pi^(2e2) suffice.
  ResidueRing R(ctx, 2 * ctx.e2());
  std::vector<FieldElem> reps;
  for (uint64_t key = 0; key < R.size(); ++key) reps.push_back(R.lift(R.from_key(key)));

  // The rank-2 component is spanned by {e_p, e_q}; the rank-1 component by e_r.
  size_t p = two_one ? 0 : 1, q = two_one ? 1 : 2, r = two_one ? 2 : 0;
  int s_bin = split.components[two_one ? 0 : 1].scale;

  std::optional<Score> best;
  Matrix bestV;
  for (const auto& c : reps)
    for (const auto& d : reps) {
      Matrix V = Matrix::identity(3, k);
      if (two_one) {
        // x' = x + c z, y' = y + d z; z' = z minus its projection to span(x', y').
        V(r, p) = c;
        V(r, q) = d;
        Matrix W = V.transpose() * B * V;
        FieldElem a = W(p, p), b = W(p, q), e = W(q, q), det = a * e - b * b;
        FieldElem u = W(p, r), v = W(q, r);
        FieldElem al = (e * u - b * v) / det, be = (a * v - b * u) / det;
        for (size_t i = 0; i < 3; ++i) V(i, r) = V(i, r) - al * V(i, p) - be * V(i, q);
      } else {
        // x' = x + c u + d v; u', v' projected away from x'.
        V(p, r) = c;
        V(q, r) = d;
        Matrix W = V.transpose() * B * V;
        FieldElem qx = W(r, r);
        FieldElem tu = W(p, r) / qx, tv = W(q, r) / qx;
        for (size_t i = 0; i < 3; ++i) {
          V(i, p) = V(i, p) - tu * V(i, r);
          V(i, q) = V(i, q) - tv * V(i, r);
        }
      }
      Matrix W = V.transpose() * B * V;
      Matrix bin = W.submatrix(p, p, 2, 2);
      Score sc = binary_score(bin, s_bin, ctx, two_one, best);
      if (!best || sc > *best) {
        best = sc;
        bestV = V;
      }
    }
  Matrix W = bestV.transpose() * B * bestV;
  out.transform = split.transform * bestV;
  for (size_t i = 0; i < out.components.size(); ++i) {
    auto& comp = out.components[i];
    size_t at = two_one ? (i == 0 ? 0 : 2) : (i == 0 ? 0 : 1);
    comp.gram = W.submatrix(at, at, comp.rank(), comp.rank());
    comp.norm = norm_of(comp.gram, comp.scale, ctx);
  }
  return out;
}

WeightNormGroup weight_and_norm_group(const LocalLattice& L) {
  const LocalContext& ctx = L.ctx;
  if (!ctx.is_dyadic()) throw InputError("weight is computed at dyadic places only");
  if (L.scale() != 0 || L.det_valuation() != 0) throw InputError("lattice is not unimodular");
  int e = ctx.e2();
  size_t n = L.rank();
  ResidueRing R(ctx, e);
  // Coefficients of Q: g_ii and 2 g_ij.
  std::vector<std::vector<ResidueRing::Elem>> coef(n, std::vector<ResidueRing::Elem>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      coef[i][j] = R.reduce(i == j ? L.gram(i, i) : L.gram(i, j) * FieldElem(2));
  uint64_t size = R.size();
  std::vector<char> hit(size, 0);
  std::vector<uint64_t> digits(n, 0);
  for (;;) {
    std::vector<ResidueRing::Elem> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = R.from_key(digits[i]);
    ResidueRing::Elem v = R.from_int(0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) v = R.add(v, R.mul(coef[i][j], R.mul(x[i], x[j])));
    hit[R.key(v)] = 1;
    size_t i = 0;
    while (i < n && ++digits[i] == size) digits[i++] = 0;
    if (i == n) break;
  }
  int j = 0;
  for (; j < e; ++j) {
    bool all = true;
    for (uint64_t key = 0; key < size && all; ++key)
      if (R.val(R.from_key(key)) >= j && !hit[key]) all = false;
    if (all) break;
  }
  return {std::min(j + 1, e), j};
}

bool is_isotropic(const std::vector<FieldElem>& diag, const Place& v) {
  for (const auto& a : diag)
    if (a.is_zero()) throw InputError("degenerate diagonal coefficient");
  if (diag.size() != 2 && diag.size() != 3) throw InputError("isotropy test supports rank 2 and 3");
  if (v.kind == Place::Kind::Complex) return true;
  if (v.kind == Place::Kind::Real) {
    bool pos = false, neg = false;
    for (const auto& a : diag) {
      if (!a.is_rational()) throw InputError("real place needs rational coefficients");
      (a.a() > 0 ? pos : neg) = true;
    }
    return pos && neg;
  }
  if (diag.size() == 2) return is_square_local(-(diag[0] * diag[1]), *v.ctx);
  return hilbert_symbol(-(diag[0] * diag[2]), -(diag[1] * diag[2]), *v.ctx) == 1;
}

bool is_isotropic_globally(const std::vector<FieldElem>& diag) {
  for (const auto& a : diag)
    if (a.is_zero()) throw InputError("degenerate diagonal coefficient");
  if (diag.size() == 2) return sqrt_in_field(-(diag[0] * diag[1])).has_value();
  if (diag.size() != 3) throw InputError("isotropy test supports rank 2 and 3");
  NumberField k = diag[0].field();
  for (const auto& a : diag)
    if (!a.field().is_rational()) k = a.field();
  if (k.is_rational() && !is_isotropic(diag, Place::real())) return false;
  Integer m = 2;
  for (const auto& a : diag) {
    Rational nm = a.norm();
    m *= Integer(nm.get_num()) * Integer(nm.get_den());
  }
  if (m < 0) m = -m;
  for (const auto& [p, e] : factorize(m).factors)
    for (const auto& ctx : local_context(k, p))
      if (!is_isotropic(diag, Place::finite(ctx))) return false;
  return true;
}

}  // namespace quniv
