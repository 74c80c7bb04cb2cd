#include "quniv/local_universality.hpp"

#include <algorithm>
#include <set>

#include "quniv/errors.hpp"

namespace quniv {

std::string rule_name(LocalRule r) {
  switch (r) {
    case LocalRule::NonDyadic_P23_1: return "NonDyadic_P23_1";
    case LocalRule::NonDyadic_P23_2: return "NonDyadic_P23_2";
    case LocalRule::Dyadic_Binary_C29: return "Dyadic_Binary_C29";
    case LocalRule::Dyadic_Ternary_TwoComp_P214: return "Dyadic_Ternary_TwoComp_P214";
    case LocalRule::Dyadic_Ternary_Unimod_P215: return "Dyadic_Ternary_Unimod_P215";
    case LocalRule::RankOne_Never: return "RankOne_Never";
    case LocalRule::Oracle: return "Oracle";
    case LocalRule::Archimedean: return "Archimedean";
  }
  return "";
}

namespace {

using Elem = ResidueRing::Elem;

uint64_t capped_power(uint64_t base, size_t e, uint64_t cap) {
  uint64_t r = 1;
  for (size_t i = 0; i < e; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Hit table of the quadratic polynomial with Gram G over (O/pi^K)^n.
std::vector<char> enumerate_image(const ResidueRing& R, const Matrix& G) {
  size_t n = G.rows();
  uint64_t size = R.size();
  std::vector<std::vector<Elem>> coef(n, std::vector<Elem>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) coef[i][j] = R.reduce(i == j ? G(i, i) : G(i, j) * FieldElem(2));
  std::vector<Elem> elems(size);
  for (uint64_t k = 0; k < size; ++k) elems[k] = R.from_key(k);
  std::vector<char> hit(size, 0);
  std::vector<uint64_t> digits(n, 0);
  for (;;) {
    Elem v = R.from_int(0);
    for (size_t i = 0; i < n; ++i) {
      const Elem& xi = elems[digits[i]];
      Elem row = R.mul(coef[i][i], xi);
      for (size_t j = i + 1; j < n; ++j) row = R.add(row, R.mul(coef[i][j], elems[digits[j]]));
      v = R.add(v, R.mul(row, xi));
    }
    hit[R.key(v)] = 1;
    size_t i = 0;
    while (i < n && ++digits[i] == size) digits[i++] = 0;
    if (i == n) break;
  }
  return hit;
}

std::vector<char> sumset(const ResidueRing& R, const std::vector<char>& A, const std::vector<char>& B) {
  std::vector<uint64_t> a, b;
  for (uint64_t k = 0; k < A.size(); ++k)
    if (A[k]) a.push_back(k);
  for (uint64_t k = 0; k < B.size(); ++k)
    if (B[k]) b.push_back(k);
  std::vector<char> out(A.size(), 0);
  for (auto x : a) {
    Elem ex = R.from_key(x);
    for (auto y : b) out[R.key(R.add(ex, R.from_key(y)))] = 1;
  }
  return out;
}

}  // namespace

std::vector<char> image_mod(const LocalLattice& L, int K, OracleMode mode) {
  if (L.norm() < 0) throw InputError("norm ideal is not integral at " + L.ctx.label());
  ResidueRing R(L.ctx, K);
  uint64_t size = R.size();
  uint64_t raw = capped_power(size, L.rank(), kOracleBudget);
  if (mode == OracleMode::Raw || (mode == OracleMode::Auto && raw <= kOracleRawPreferred)) {
    if (raw > kOracleBudget) throw PrecisionError("raw oracle enumeration exceeds budget");
    return enumerate_image(R, L.gram);
  }
  // Q(L) is the sumset of the images of orthogonal blocks.
  JordanSplitting sp = jordan_split(L);
  Matrix M = sp.assembled();
  size_t n = M.rows();
  std::vector<char> acc;
  for (size_t at = 0; at < n;) {
    size_t len = (at + 1 < n && !M(at, at + 1).is_zero()) ? 2 : 1;
    if (capped_power(size, len, kOracleBudget) > kOracleBudget)
      throw PrecisionError("block oracle enumeration exceeds budget");
    auto img = enumerate_image(R, M.submatrix(at, at, len, len));
    acc = acc.empty() ? img : sumset(R, acc, img);
    at += len;
  }
  return acc;
}

bool represents_locally(const LocalLattice& L, const FieldElem& a, OracleMode mode) {
  if (a.is_zero()) throw InputError("0 is trivially represented");
  int m = L.ctx.valuation(a);
  if (m < 0) return false;
  int K = m + 2 * L.ctx.e2() + 1;
  ResidueRing R(L.ctx, K);
  auto hit = image_mod(L, K, mode);
  return hit[R.key(R.reduce(a))];
}

OracleResult universality_oracle(const LocalLattice& L, OracleMode mode) {
  const LocalContext& ctx = L.ctx;
  if (L.norm() < 0) return {false, std::nullopt};
  int K0 = 2 * ctx.e2() + 1, K1 = K0 + 1;
  ResidueRing R0(ctx, K0), R1(ctx, K1);
  auto hit1 = image_mod(L, K1, mode);
  std::vector<char> hit0(R0.size(), 0);
  for (uint64_t k = 0; k < R1.size(); ++k)
    if (hit1[k]) hit0[R0.key(R0.reduce(R1.lift(R1.from_key(k))))] = 1;
  for (uint64_t k = 0; k < R0.size(); ++k) {
    Elem u = R0.from_key(k);
    if (R0.val(u) == 0 && !hit0[k]) return {false, R0.lift(u)};
  }
  for (uint64_t k = 0; k < R1.size(); ++k) {
    Elem u = R1.from_key(k);
    if (R1.val(u) == 1 && !hit1[k]) return {false, R1.lift(u)};
  }
  return {true, std::nullopt};
}

namespace {

LocalVerdict verdict(const LocalContext& ctx, bool u, LocalRule r) { return {ctx.label(), u, r, std::nullopt}; }

LocalVerdict decide_nondyadic(const LocalLattice& L) {
  auto sp = jordan_split(L);
  const auto& c = sp.components;
  if (c[0].scale != 0) return verdict(L.ctx, false, LocalRule::NonDyadic_P23_1);
  size_t r1 = c[0].rank();
  if (r1 >= 3) return verdict(L.ctx, true, LocalRule::NonDyadic_P23_1);
  if (r1 == 2 && is_hyperbolic_plane(c[0].gram, L.ctx)) return verdict(L.ctx, true, LocalRule::NonDyadic_P23_1);
  if (r1 == 2) {
    bool ok = c.size() >= 2 && c[1].scale == 1 && c[1].rank() >= 2;
    return verdict(L.ctx, ok, LocalRule::NonDyadic_P23_2);
  }
  return verdict(L.ctx, false, LocalRule::NonDyadic_P23_1);
}

bool space_isotropic(const LocalLattice& L) { return is_isotropic(diagonalize(L.gram), Place::finite(L.ctx)); }

std::optional<LocalVerdict> decide_dyadic(const LocalLattice& L) {
  const LocalContext& ctx = L.ctx;
  int e = ctx.e2();
  if (L.rank() == 2) {
    auto sp = jordan_split(L);
    bool ok = sp.components.size() == 1 && sp.components[0].scale == -e && sp.components[0].norm == 0 &&
              is_hyperbolic_plane(sp.components[0].gram, ctx);
    return verdict(ctx, ok, LocalRule::Dyadic_Binary_C29);
  }
  if (L.rank() != 3) return std::nullopt;
  auto sp = minimal_norm_refine(jordan_split(L));
  const auto& c = sp.components;
  if (c.size() == 1) {
    if (sp.norm() != 0) return verdict(ctx, false, LocalRule::Dyadic_Ternary_Unimod_P215);
    if (c[0].scale != 0) return std::nullopt;
    bool ok = weight_and_norm_group(L).weight == 1 && space_isotropic(L);
    return verdict(ctx, ok, LocalRule::Dyadic_Ternary_Unimod_P215);
  }
  // Two components by the minimal norm splitting; three rank-one components never work.
  if (sp.norm() != 0 || c.size() == 3 || c[0].rank() != 2)
    return verdict(ctx, false, LocalRule::Dyadic_Ternary_TwoComp_P214);
  if (c[0].scale == -e && is_hyperbolic_plane(c[0].gram, ctx))
    return verdict(ctx, true, LocalRule::Dyadic_Ternary_TwoComp_P214);
  int n1 = c[0].norm, n2 = c[1].norm;
  bool step = (n1 == 0 && n2 == 1) || (n1 == 1 && n2 == 0);
  return verdict(ctx, step && space_isotropic(L), LocalRule::Dyadic_Ternary_TwoComp_P214);
}

}  // namespace

LocalVerdict is_locally_universal_at(const LocalLattice& L, bool oracle_only) {
  const LocalContext& ctx = L.ctx;
  std::optional<LocalVerdict> v;
  if (oracle_only) {
    auto o = universality_oracle(L);
    return {ctx.label(), o.universal, LocalRule::Oracle, o.witness};
  }
  if (L.rank() == 1) {
    v = verdict(ctx, false, LocalRule::RankOne_Never);
  } else if (L.norm() < 0) {
    // Q(L) leaves O_v.
    LocalRule r = LocalRule::NonDyadic_P23_1;
    if (ctx.is_dyadic())
      r = L.rank() == 2 ? LocalRule::Dyadic_Binary_C29
                        : (L.rank() == 3 ? LocalRule::Dyadic_Ternary_TwoComp_P214 : LocalRule::Oracle);
    return verdict(ctx, false, r);
  } else if (!ctx.is_dyadic()) {
    v = decide_nondyadic(L);
  } else {
    v = decide_dyadic(L);
  }
  if (!v) {
    auto o = universality_oracle(L);
    return {ctx.label(), o.universal, LocalRule::Oracle, o.witness};
  }
  if (!v->universal) v->witness = universality_oracle(L).witness;
  return *v;
}

LocalVerdict is_locally_universal_at(const QuadLattice& L, const LocalContext& ctx, bool oracle_only) {
  return is_locally_universal_at(localize(L, ctx), oracle_only);
}

bool archimedean_universal(const QuadLattice& L, const Place& v) {
  if (v.kind == Place::Kind::Complex) return true;
  if (v.kind != Place::Kind::Real) throw InputError("not an archimedean place");
  if (!L.field().is_rational()) throw InputError("real places exist only over Q here");
  bool pos = false, neg = false;
  for (const auto& d : diagonalize(L.gram())) (d.a() > 0 ? pos : neg) = true;
  return pos && neg;
}

std::vector<Integer> bad_primes(const QuadLattice& L) {
  std::set<Integer> ps{2};
  auto add = [&](const Rational& x) {
    for (const Integer& m : {Integer(x.get_num()), Integer(x.get_den())})
      if (m != 0)
        for (const auto& [p, e] : factorize(m).factors) ps.insert(p);
  };
  add(L.volume().norm());
  add(L.scale_ideal().norm());
  add(L.norm_ideal().norm());
  return {ps.begin(), ps.end()};
}

LocalReport is_locally_universal(const QuadLattice& L, const LocalOptions& opts) {
  const NumberField& k = L.field();
  LocalReport rep;
  Place inf = k.is_rational() ? Place::real() : Place::complex();
  rep.verdicts.push_back({inf.label(), archimedean_universal(L, inf), LocalRule::Archimedean, std::nullopt});

  auto bad = bad_primes(L);
  std::vector<Integer> check = bad;
  if (opts.places) {
    rep.restricted = true;
    check = *opts.places;
    std::sort(check.begin(), check.end());
  }
  for (const auto& p : check)
    for (const auto& ctx : local_context(k, p, opts.precision))
      rep.verdicts.push_back(is_locally_universal_at(L, ctx, opts.oracle_only));

  // Remaining places: L_v unimodular and non-dyadic.
  FieldElem mdet = -L.det();
  if (L.rank() >= 3) {
    rep.generic_universal = true;
    rep.generic_reason = "unimodular of rank >= 3 at every other place";
  } else if (L.rank() == 2 && sqrt_in_field(mdet)) {
    rep.generic_universal = true;
    rep.generic_reason = "-det is a global square, so every other unimodular binary component is hyperbolic";
  } else {
    rep.generic_universal = false;
    rep.generic_reason = L.rank() == 1 ? "rank one is never universal"
                                       : "-det is not a global square, so infinitely many places fail";
    if (L.rank() == 2 && !rep.restricted) {
      // Report the first good place where -det is not a local square.
      for (Integer p = 3;; p = next_prime(p)) {
        if (std::binary_search(bad.begin(), bad.end(), p)) continue;
        bool found = false;
        for (const auto& ctx : local_context(k, p, opts.precision))
          if (!is_square_local(mdet, ctx)) {
            rep.verdicts.push_back(is_locally_universal_at(L, ctx, opts.oracle_only));
            found = true;
            break;
          }
        if (found) break;
      }
    }
  }
  rep.universal = rep.generic_universal;
  for (const auto& v : rep.verdicts) rep.universal = rep.universal && v.universal;
  return rep;
}

}  // namespace quniv
