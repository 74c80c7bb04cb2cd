#include "quniv/potential.hpp"

#include <algorithm>

#include "quniv/errors.hpp"

namespace quniv {

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

const NumberField& common_field(const FieldElem& x, const FieldElem& y) {
  return x.field().is_rational() ? y.field() : x.field();
}

bool is_unit(const FieldElem& x) { return x.is_integral() && !x.is_zero() && abs(x.norm()) == 1; }

bool coprime(const FieldElem& x, const FieldElem& y) {
  const NumberField& k = common_field(x, y);
  if (x.is_zero() && y.is_zero()) return false;
  std::vector<FieldElem> g;
  if (!x.is_zero()) g.push_back(x);
  if (!y.is_zero()) g.push_back(y);
  return Ideal::generated_by(k, g) == Ideal::unit(k);
}

// Coordinates of x in the Z-basis {1, w} of O_k (one coordinate over Q).
std::vector<Integer> coords(const FieldElem& x, size_t deg) {
  std::vector<Integer> c{Integer(x.a().get_num())};
  if (deg == 2) c.push_back(Integer(x.b().get_num()));
  return c;
}

// Solves A x = b modulo a lattice that contains N Z^rows, tracking only the first `tracked`
// coordinates of x. Column echelon with an extra N e_r column per row keeps every entry below N.
// Returns the tracked part of one solution and generators of the tracked kernel.
struct ModSolution {
  std::vector<Integer> x;
  IntMatrix kernel;
};

std::optional<ModSolution> solve_modular(const IntMatrix& A, const std::vector<Integer>& b, const Integer& N,
                                         size_t tracked) {
  size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  struct Col {
    std::vector<Integer> v, u;
  };
  auto reduce = [&](Integer& x) { x = mod_floor(x, N); };
  std::vector<Col> W;
  for (size_t c = 0; c < cols; ++c) {
    Col col{std::vector<Integer>(rows), std::vector<Integer>(tracked, 0)};
    for (size_t r = 0; r < rows; ++r) col.v[r] = mod_floor(A[r][c], N);
    if (c < tracked) col.u[c] = 1;
    W.push_back(std::move(col));
  }
  // The gcd pivot is positive since the N e_r column takes part in every row.
  auto combine = [&](Col& c1, Col& c2, const Integer& s, const Integer& t, const Integer& p, const Integer& q,
                     size_t r) {
    // (c1, c2) <- (s c1 + t c2, -q c1 + p c2); rows above r are already zero in both.
    for (size_t i = r; i < rows; ++i) {
      Integer x = c1.v[i], y = c2.v[i];
      c1.v[i] = s * x + t * y;
      c2.v[i] = -q * x + p * y;
      if (i > r) {
        reduce(c1.v[i]);
        reduce(c2.v[i]);
      }
    }
    for (size_t i = 0; i < tracked; ++i) {
      Integer x = c1.u[i], y = c2.u[i];
      c1.u[i] = s * x + t * y;
      c2.u[i] = -q * x + p * y;
      reduce(c1.u[i]);
      reduce(c2.u[i]);
    }
  };
  size_t col = 0;
  for (size_t r = 0; r < rows; ++r) {
    Col extra{std::vector<Integer>(rows, 0), std::vector<Integer>(tracked, 0)};
    extra.v[r] = N;
    W.push_back(std::move(extra));
    for (size_t c = col + 1; c < W.size(); ++c) {
      if (W[c].v[r] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), W[col].v[r].get_mpz_t(), W[c].v[r].get_mpz_t());
      Integer p = W[col].v[r] / g, q = W[c].v[r] / g;
      combine(W[col], W[c], s, t, p, q, r);
    }
    ++col;
  }
  // Every row has a pivot; forward substitution modulo N.
  ModSolution sol{std::vector<Integer>(tracked, 0), {}};
  std::vector<Integer> y(rows, 0);
  for (size_t r = 0; r < rows; ++r) {
    Integer acc = b[r];
    for (size_t c = 0; c < r; ++c) acc -= W[c].v[r] * y[c];
    acc = mod_floor(acc, N);
    const Integer& h = W[r].v[r];
    if (!mpz_divisible_p(acc.get_mpz_t(), h.get_mpz_t())) return std::nullopt;
    y[r] = acc / h;
    for (size_t i = 0; i < tracked; ++i) sol.x[i] = mod_floor(sol.x[i] + y[r] * W[r].u[i], N);
  }
  for (size_t c = rows; c < W.size(); ++c) sol.kernel.push_back(W[c].u);
  for (size_t i = 0; i < tracked; ++i) {
    std::vector<Integer> e(tracked, 0);
    e[i] = N;
    sol.kernel.push_back(std::move(e));
  }
  return sol;
}

// Row Hermite form of a lattice containing N Z^dim (upper triangular, positive pivots dividing N,
// reduced above). Entries right of the current column are kept below N.
IntMatrix row_hnf_mod(IntMatrix rows, size_t dim, const Integer& N) {
  IntMatrix out;
  for (size_t c = 0; c < dim; ++c) {
    std::vector<Integer> piv(dim, 0);
    piv[c] = N;
    for (auto& row : rows) {
      if (row[c] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), piv[c].get_mpz_t(), row[c].get_mpz_t());
      Integer p = piv[c] / g, q = row[c] / g;
      for (size_t j = c; j < dim; ++j) {
        Integer x = piv[j], y = row[j];
        piv[j] = s * x + t * y;
        row[j] = -q * x + p * y;
        if (j > c) {
          piv[j] = mod_floor(piv[j], N);
          row[j] = mod_floor(row[j], N);
        }
      }
    }
    for (auto& prev : out) {
      Integer m;
      mpz_fdiv_q(m.get_mpz_t(), prev[c].get_mpz_t(), piv[c].get_mpz_t());
      for (size_t j = c; j < dim; ++j) prev[j] -= m * piv[j];
    }
    out.push_back(std::move(piv));
  }
  return out;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  const NumberField& k = p.empty() ? q[0].field() : p[0].field();
  Poly r(p.size() + q.size() - 1, FieldElem(k, 0));
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

}  // namespace

bool is_potentially_universal(const QuadLattice& L) {
  if (L.rank() < 2) throw InputError("is_potentially_universal: rank 1 lattices are never potentially universal");
  return L.norm_ideal() == Ideal::unit(L.field());
}

bool PotentialWitness::verify() const { return X * X + Y * Y * ring.embed(delta) == ring.embed(alpha); }

PotentialWitness potential_witness(const FieldElem& alpha, const FieldElem& delta) {
  if (delta.is_zero()) throw InputError("potential_witness: delta = 0");
  if (alpha.is_zero()) throw InputError("potential_witness: alpha = 0");
  if (!alpha.is_integral() || !delta.is_integral()) throw InputError("potential_witness: inputs must be integral");
  const NumberField& k = common_field(alpha, delta);
  FieldElem a(k, alpha.a(), alpha.b()), d(k, delta.a(), delta.b()), minus_one(k, -1);

  std::vector<FieldElem> rad;
  if (!sqrt_in_field(d)) rad.push_back(d);
  if (!sqrt_in_field(minus_one) && !(d == minus_one)) rad.push_back(minus_one);
  ExtRing R(k, rad);
  ExtElem sd = *R.sqrt_of(d), si = *R.sqrt_of(minus_one);
  // rho = (alpha - 1) / (2 sqrt delta) = (alpha - 1) / (2 delta) * sqrt delta.
  ExtElem rho = sd.scaled((a - FieldElem(k, 1)) / (FieldElem(k, 2) * d));
  if (rho.is_integral()) {
    ExtElem X = R.one() + sd * rho, Y = si * rho;
    return {WitnessKind::Direct, a, d, R, X, Y, rho};
  }
  std::vector<FieldElem> fr;
  if (!sqrt_in_field(a)) fr.push_back(a);
  ExtRing F(k, fr);
  return {WitnessKind::Fallback, a, d, F, *F.sqrt_of(a), F.zero(), std::nullopt};
}

bool verify_decomposition(const PotentialDecomposition& dec) {
  const ExtRing& R = dec.x.ring();
  if (dec.b.size() != dec.r.size()) throw InputError("verify_decomposition: b and r differ in length");
  auto sd = R.sqrt_of(dec.delta);
  if (!sd) throw InputError("verify_decomposition: sqrt(" + dec.delta.str() + ") is not in " + R.str());
  if (!(dec.rho.ring() == R)) throw InputError("verify_decomposition: rho lives in a different ring");
  ExtElem prod = R.one();
  for (size_t i = 0; i < dec.b.size(); ++i) {
    if (!(dec.b[i].ring() == R)) throw InputError("verify_decomposition: b_i lives in a different ring");
    prod *= dec.b[i].pow(dec.r[i]);
  }
  ExtElem tail = R.one() + (dec.rho * *sd).scaled(FieldElem(R.base(), 2));
  return dec.rho.is_integral() && dec.x == prod * tail;
}

PotentialDecomposition gaussian_decomposition(const Integer& re, const Integer& im) {
  if (re == 0 && im == 0) throw InputError("gaussian_decomposition: x = 0");
  NumberField Q;
  ExtRing R(Q, {FieldElem(-1)});
  ExtElem i = R.gen(0);
  auto make = [&](const Integer& a, const Integer& b) { return R.embed(FieldElem(a)) + i.scaled(FieldElem(b)); };
  // Strip (1+i): (a + bi) / (1 + i) = ((a + b) + (b - a) i) / 2.
  Integer a = re, b = im;
  unsigned l = 0;
  while (mod_floor(a - b, 2) == 0) {
    Integer na = (a + b) / 2, nb = (b - a) / 2;
    a = na;
    b = nb;
    ++l;
  }
  // Odd part: u = 1 or i mod 2.
  unsigned kexp = 0;
  if (mod_floor(a, 2) == 0) {
    // u * (-i) = b - a i
    Integer na = b, nb = -a;
    a = na;
    b = nb;
    kexp = 1;
  }
  // u' = 1 + 2 (c + d i), rho = (c + d i) / i = d - c i.
  Integer c = (a - 1) / 2, d = b / 2;
  PotentialDecomposition dec{make(re, im), FieldElem(Q, -1), {i, make(1, 1)}, {kexp, l}, make(d, -c)};
  if (!verify_decomposition(dec)) throw PrecisionError("gaussian_decomposition: identity check failed");
  return dec;
}

bool DecompositionWitness::verify() const { return X * X - Y * Y == x; }

DecompositionWitness decomposition_witness(const PotentialDecomposition& dec) {
  NumberField Q;
  if (!(dec.x.ring() == ExtRing(Q, {FieldElem(-1)})) || !(dec.delta == FieldElem(-1)))
    throw InputError("decomposition_witness: supported for Z[sqrt(-1)] with delta = -1 only");
  NumberField Qi = NumberField::imaginary_quadratic(-1);
  auto to_qi = [&](const ExtElem& e) { return FieldElem(Qi, e.coeffs()[0].a(), e.coeffs()[1].a()); };
  std::vector<FieldElem> rad;
  FieldElem square_part(Qi, 1);
  for (size_t j = 0; j < dec.b.size(); ++j) {
    FieldElem bj = to_qi(dec.b[j]);
    square_part *= bj.pow(dec.r[j] / 2);
    if (dec.r[j] % 2 == 0) continue;
    if (auto s = sqrt_in_field(bj))
      square_part *= *s;
    else
      rad.push_back(bj);
  }
  ExtRing R(Qi, rad);
  ExtElem P = R.embed(square_part);
  for (size_t j = 0; j < rad.size(); ++j) P *= R.gen(j);
  ExtElem irho = R.embed(FieldElem::omega(Qi) * to_qi(dec.rho));
  DecompositionWitness w{R, R.embed(to_qi(dec.x)), P * (R.one() + irho), P * irho};
  if (!w.verify()) throw PrecisionError("decomposition_witness: identity check failed");
  return w;
}

bool UnitShiftCertificate::verify() const {
  const NumberField& k = common_field(gamma, delta);
  if (trivial) {
    if (!is_unit(u)) return false;
    if (delta.is_zero()) return gamma * u == FieldElem(k, 1);
    return is_unit(delta) || Ideal::principal(delta).contains(gamma * u - FieldElem(k, 1));
  }
  if (m == 0 || m % 2 != 0 || f.size() != m + 1 || g.size() != m + 1) return false;
  if (!(f[0] == FieldElem(k, 1)) || !(f[m] == FieldElem(k, 1)) || !(g[m] == FieldElem(k, 1))) return false;
  for (const auto& c : f)
    if (!c.is_integral()) return false;
  for (const auto& c : g)
    if (!c.is_integral()) return false;
  // gamma^m f((1 + delta x) / gamma) = sum_i f_i gamma^(m-i) (1 + delta x)^i.
  Poly lin{FieldElem(k, 1), delta}, rhs(m + 1, FieldElem(k, 0)), power{FieldElem(k, 1)};
  for (unsigned i = 0; i <= m; ++i) {
    FieldElem c = f[i] * gamma.pow(m - i);
    for (size_t j = 0; j < power.size(); ++j) rhs[j] += c * power[j];
    power = poly_mul(power, lin);
  }
  FieldElem dm = delta.pow(m);
  for (unsigned j = 0; j <= m; ++j)
    if (!(dm * g[j] == rhs[j])) return false;
  return true;
}

UnitShiftCertificate unit_shift_certificate(const FieldElem& gamma, const FieldElem& delta) {
  const NumberField& k = common_field(gamma, delta);
  FieldElem gm(k, gamma.a(), gamma.b()), dl(k, delta.a(), delta.b()), one(k, 1);
  if (!gm.is_integral() || !dl.is_integral()) throw InputError("unit_shift_certificate: inputs must be integral");
  if (!coprime(gm, dl)) throw InputError("unit_shift_certificate: gamma and delta are not coprime");
  UnitShiftCertificate cert{gm, dl, false, one, 0, {}, {}};
  if (is_unit(dl)) {
    cert.trivial = true;
    return cert;
  }
  if (is_unit(gm)) {
    cert.trivial = true;
    cert.u = gm.inverse();
    return cert;
  }
  Ideal D = Ideal::principal(dl);
  unsigned order = 0;
  FieldElem p = gm;
  for (unsigned j = 1; j <= kMaxShiftOrder; ++j, p *= gm)
    if (D.contains(p - one)) {
      order = j;
      break;
    }
  if (order == 0)
    throw PrecisionError("unit_shift_certificate: order of " + gm.str() + " mod " + dl.str() + " exceeds " +
                         std::to_string(kMaxShiftOrder));
  unsigned m = order % 2 == 0 ? order : 2 * order;
  if (m > kMaxShiftOrder) throw PrecisionError("unit_shift_certificate: m = " + std::to_string(m) + " exceeds the bound");

  // Unknowns: a_1..a_{m-1} and z_0..z_{m-1} in O_k, each as deg integers.
  // Equations: S_j - delta^(m-j) z_j = 0 with S_j = sum_{i >= j} C(i, j) gamma^(m-i) a_i, a_0 = a_m = 1.
  size_t deg = k.is_rational() ? 1 : 2;
  FieldElem w = k.is_rational() ? one : FieldElem::omega(k);
  size_t na = (m - 1) * deg, cols = na + m * deg;
  IntMatrix A(m * deg, std::vector<Integer>(cols, 0));
  std::vector<Integer> rhs(m * deg, 0);
  auto put = [&](size_t eq, size_t var, const FieldElem& e) {
    // Column block of multiplication by e on {1, w}.
    auto c1 = coords(e, deg);
    for (size_t r = 0; r < deg; ++r) A[eq * deg + r][var * deg] += c1[r];
    if (deg == 2) {
      auto c2 = coords(e * w, deg);
      for (size_t r = 0; r < deg; ++r) A[eq * deg + r][var * deg + 1] += c2[r];
    }
  };
  for (unsigned j = 0; j < m; ++j) {
    FieldElem cst = FieldElem(k, Rational(binomial(m, j)));
    if (j == 0) cst += gm.pow(m);
    auto cc = coords(cst, deg);
    for (size_t r = 0; r < deg; ++r) rhs[j * deg + r] = -cc[r];
    for (unsigned i = std::max(j, 1u); i < m; ++i)
      put(j, i - 1, FieldElem(k, Rational(binomial(i, j))) * gm.pow(m - i));
    put(j, (m - 1) + j, -dl.pow(m - j));
  }
  // delta^(m-j) O_k contains N(delta)^m for every j, so the system can be solved modulo it.
  Integer N = k.is_rational() ? Integer(abs(dl.a().get_num())) : Integer(dl.norm().get_num());
  mpz_pow_ui(N.get_mpz_t(), N.get_mpz_t(), m);
  auto sol = solve_modular(A, rhs, N, na);
  if (!sol) throw PrecisionError("unit_shift_certificate: the linear system has no integral solution");

  // Canonical representative of the a-part modulo the kernel lattice.
  std::vector<Integer> x = sol->x;
  IntMatrix H = row_hnf_mod(sol->kernel, na, N);
  for (const auto& row : H) {
    size_t c = 0;
    while (row[c] == 0) ++c;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x[c].get_mpz_t(), row[c].get_mpz_t());
    for (size_t j = 0; j < na; ++j) x[j] -= q * row[j];
  }

  cert.m = m;
  cert.f.assign(m + 1, FieldElem(k, 0));
  cert.f[0] = cert.f[m] = one;
  for (unsigned i = 1; i < m; ++i) {
    FieldElem a(k, Rational(x[(i - 1) * deg]));
    if (deg == 2) a += FieldElem(k, Rational(x[(i - 1) * deg + 1])) * w;
    cert.f[i] = a;
  }
  cert.g.assign(m + 1, FieldElem(k, 0));
  cert.g[m] = one;
  for (unsigned j = 0; j < m; ++j) {
    FieldElem S(k, 0);
    for (unsigned i = j; i <= m; ++i) S += FieldElem(k, Rational(binomial(i, j))) * gm.pow(m - i) * cert.f[i];
    cert.g[j] = S / dl.pow(m - j);
  }
  if (!cert.verify()) throw PrecisionError("unit_shift_certificate: identity check failed");
  return cert;
}

bool base_change_stability(const QuadLattice& L, const FieldElem& t) {
  const NumberField& k = L.field();
  FieldElem tt(k, t.a(), t.b());
  if (tt.is_zero()) throw InputError("base_change_stability: t = 0");
  if (sqrt_in_field(tt)) throw InputError("base_change_stability: " + tt.str() + " is a square in " + k.name());
  // O_K is integral over O_k and O_K meets k in O_k, so n(L) O_K = O_K iff n(L) = O_k.
  return L.norm_ideal() == Ideal::unit(k);
}

std::optional<OrthogonalRepresentation> represent_over_extension(const QuadLattice& L, const FieldElem& alpha,
                                                                 long box) {
  const NumberField& k = L.field();
  if (!k.is_rational()) throw InputError("represent_over_extension: lattices over Z only");
  if (!L.is_free()) throw InputError("represent_over_extension: free lattices only");
  if (alpha.is_zero() || !alpha.is_integral()) throw InputError("represent_over_extension: alpha must be a nonzero integer");
  const Matrix& G = L.gram();
  size_t n = L.rank();
  // Small vectors with nonzero Q, in a fixed order; Q and B are computed from the integral matrix D G.
  Integer D = 1;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) D = lcm(D, Integer(G(i, j).a().get_den()));
  // 128-bit accumulation is exact while |D G| < 2^62 and box < 2^20.
  using Wide = __int128;
  if (box > (1L << 20)) throw InputError("represent_over_extension: box too large");
  if (D >= Integer(1L << 62)) throw PrecisionError("represent_over_extension: Gram denominators too large");
  std::vector<std::vector<Wide>> DG(n, std::vector<Wide>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Integer e(G(i, j).a() * D);
      if (abs(e) >= Integer(1L << 62)) throw PrecisionError("represent_over_extension: Gram entries too large");
      DG[i][j] = e.get_si();
    }
  std::vector<std::vector<long>> vecs;
  std::vector<std::vector<Wide>> DGv;
  std::vector<Integer> vals;
  Wide Dw = D.get_si();
  std::vector<long> c(n, -box);
  for (;;) {
    if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) {
      std::vector<Wide> img(n, 0);
      Wide q = 0;
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) img[i] += DG[i][j] * c[j];
        q += img[i] * c[i];
      }
      // Non-integral values cannot enter a Bezout relation over Z.
      if (q != 0 && q % Dw == 0) {
        vecs.push_back(c);
        DGv.push_back(std::move(img));
        vals.push_back(Integer(long(q / Dw)));
      }
    }
    size_t i = 0;
    while (i < n && ++c[i] > box) c[i++] = -box;
    if (i == n) break;
  }
  std::vector<std::vector<char>> orth(vecs.size(), std::vector<char>(vecs.size(), 0));
  std::vector<std::vector<size_t>> later(vecs.size());
  for (size_t s1 = 0; s1 < vecs.size(); ++s1)
    for (size_t s2 = s1 + 1; s2 < vecs.size(); ++s2) {
      Wide b = 0;
      for (size_t i = 0; i < n; ++i) b += vecs[s1][i] * DGv[s2][i];
      if (b == 0) {
        orth[s1][s2] = orth[s2][s1] = 1;
        later[s1].push_back(s2);
      }
    }
  Integer a(alpha.a().get_num());
  auto divides_alpha = [&](const Integer& g) { return g != 0 && mpz_divisible_p(a.get_mpz_t(), g.get_mpz_t()); };
  std::optional<std::vector<size_t>> pick;
  for (size_t i = 0; i < vecs.size() && !pick; ++i) {
    if (divides_alpha(vals[i])) pick = std::vector<size_t>{i};
    for (size_t j : later[i]) {
      if (pick) break;
      Integer gij = gcd(vals[i], vals[j]);
      if (divides_alpha(gij)) pick = std::vector<size_t>{i, j};
      for (size_t l : later[j]) {
        if (pick || n < 3) break;
        if (orth[i][l] && divides_alpha(gcd(gij, vals[l]))) pick = std::vector<size_t>{i, j, l};
      }
    }
  }
  if (!pick) return std::nullopt;
  // Bezout weights u_j with sum u_j Q(v_j) = g, g dividing alpha.
  std::vector<Integer> u(pick->size(), 0);
  Integer g = vals[(*pick)[0]];
  u[0] = 1;
  for (size_t j = 1; j < pick->size(); ++j) {
    Integer gg, s, t;
    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), vals[(*pick)[j]].get_mpz_t());
    for (size_t l = 0; l < j; ++l) u[l] *= s;
    u[j] = t;
    g = gg;
  }
  Integer scale = a / g;
  std::vector<FieldElem> rad;
  for (size_t j = 0; j < u.size(); ++j) {
    FieldElem r{Integer(u[j] * scale)};
    if (!r.is_zero() && !sqrt_in_field(r) && std::find(rad.begin(), rad.end(), r) == rad.end()) rad.push_back(r);
  }
  ExtRing R(k, rad);
  OrthogonalRepresentation out{{}, {}, {}, R, std::vector<ExtElem>(n, R.zero()), R.zero()};
  for (size_t j = 0; j < u.size(); ++j) {
    const auto& v = vecs[(*pick)[j]];
    out.vectors.emplace_back(v.begin(), v.end());
    out.values.emplace_back(vals[(*pick)[j]]);
    out.weights.emplace_back(u[j]);
    FieldElem r{Integer(u[j] * scale)};
    ExtElem cj = r.is_zero() ? R.zero() : *R.sqrt_of(r);
    for (size_t i = 0; i < n; ++i) out.coords[i] += cj.scaled(v[i]);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.value += out.coords[i] * out.coords[j].scaled(G(i, j));
  if (!(out.value == R.embed(alpha))) throw PrecisionError("represent_over_extension: identity check failed");
  return out;
}

}  // namespace quniv
