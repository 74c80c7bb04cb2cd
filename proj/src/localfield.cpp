#include "quniv/localfield.hpp"

#include <algorithm>
#include <map>

#include "quniv/errors.hpp"

namespace quniv {

int precision_floor(int e2) { return 2 * e2 + 6; }

LocalContext::LocalContext(const NumberField& k, const PrimeIdeal& P, int precision)
    : k_(k), P_(P), precision_(precision) {
  if (k.is_rational())
    kind_ = PrimeKind::Rational;
  else if (P.e == 2)
    kind_ = PrimeKind::Ramified;
  else if (P.f == 2)
    kind_ = PrimeKind::Inert;
  else
    kind_ = PrimeKind::Split;
  e2_ = P.p == 2 ? P.e : 0;
  if (precision_ < precision_floor(e2_))
    throw InputError("precision " + std::to_string(precision) + " below floor " +
                     std::to_string(precision_floor(e2_)));
  pi_ = FieldElem(k, Rational(P.p));
  if (kind_ == PrimeKind::Ramified) {
    FieldElem w = FieldElem::omega(k);
    for (long a0 = 0;; ++a0) {
      FieldElem c = FieldElem(k, a0) + w;
      if (ord_p(Integer(c.norm().get_num()), P.p) == 1) {
        pi_ = c;
        break;
      }
    }
  }
  if (kind_ == PrimeKind::Split) {
    // P = (p, w - r): recover r from the Hermite basis.
    FieldElem w = FieldElem::omega(k);
    for (Integer r = 0; r < P.p; ++r)
      if (P.ideal.contains(w - FieldElem(k, Rational(r)))) {
        root_mod_p_ = r;
        break;
      }
  }
}

Integer LocalContext::residue_field_size() const { return ipow(p(), f()); }

std::string LocalContext::label() const {
  if (k_.is_rational()) return p().get_str();
  return P_.ideal.str();
}

LocalContext LocalContext::with_precision(int N) const {
  LocalContext c = *this;
  if (N < precision_floor(e2_)) throw InputError("precision below floor");
  c.precision_ = N;
  return c;
}

Integer LocalContext::split_root(int k) const {
  if (kind_ != PrimeKind::Split) throw InputError("split_root on a non-split prime");
  // Newton lift of the simple root of x^2 - t x + n.
  Integer t = k_.omega_trace(), n = k_.omega_norm();
  Integer r = root_mod_p_;
  int prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    Integer mod = ipow(p(), prec);
    Integer fx = r * r - t * r + n;
    Integer inv = *inverse_mod(mod_floor(2 * r - t, mod), mod);
    r = mod_floor(r - fx * inv, mod);
  }
  return mod_floor(r, ipow(p(), std::max(k, 1)));
}

int LocalContext::valuation(const FieldElem& x) const {
  if (x.is_zero()) throw InputError("valuation of zero");
  const Integer& pp = p();
  switch (kind_) {
    case PrimeKind::Rational:
      return ord_p(x.a(), pp);
    case PrimeKind::Inert: {
      int v = x.a() == 0 ? INT32_MAX : ord_p(x.a(), pp);
      if (x.b() != 0) v = std::min(v, ord_p(x.b(), pp));
      return v;
    }
    case PrimeKind::Ramified:
      return ord_p(x.norm(), pp);
    case PrimeKind::Split: {
      Integer D = x.denominator();
      FieldElem y = x * FieldElem(k_, Rational(D));
      Integer A(y.a().get_num()), B(y.b().get_num());
      int bound = ord_p(Integer(y.norm().get_num()), pp) + 1;
      Integer r = split_root(bound);
      Integer img = mod_floor(A + B * r, ipow(pp, bound));
      int vy = img == 0 ? bound : ord_p(img, pp);
      return vy - ord_p(D, pp);
    }
  }
  return 0;
}

std::optional<int> LocalContext::valuation_or_inf(const FieldElem& x) const {
  if (x.is_zero()) return std::nullopt;
  return valuation(x);
}

int LocalContext::valuation(const Ideal& I) const {
  auto zb = I.z_basis();
  int v = valuation(zb[0]);
  if (!zb[1].is_zero()) v = std::min(v, valuation(zb[1]));
  return v;
}

FieldElem LocalContext::unit_part(const FieldElem& x) const {
  int v = valuation(x);
  if (v >= 0) return x / pi_.pow(v);
  return x * pi_.pow(-v);
}

std::vector<FieldElem> LocalContext::residue_reps() const {
  std::vector<FieldElem> out;
  long pp = p().get_si();
  if (kind_ == PrimeKind::Inert) {
    for (long b = 0; b < pp; ++b)
      for (long a = 0; a < pp; ++a) out.emplace_back(k_, a, b);
  } else {
    for (long a = 0; a < pp; ++a) out.emplace_back(k_, a);
  }
  return out;
}

// ---------------------------------------------------------------------------

ResidueRing::ResidueRing(const LocalContext& ctx, int K) : ctx_(ctx), K_(K) {
  if (K < 1) throw InputError("residue ring needs K >= 1");
  if (!ctx.p().fits_slong_p()) throw PrecisionError("prime too large for residue arithmetic");
  p_ = ctx.p().get_si();
  deg_ = (ctx.kind() == PrimeKind::Inert || ctx.kind() == PrimeKind::Ramified) ? 2 : 1;
  int e = ctx.e_abs();
  M_ = (K + e - 1) / e;
  int kb = ctx.kind() == PrimeKind::Inert ? K : (ctx.kind() == PrimeKind::Ramified ? K / 2 : 0);
  Integer q = ipow(ctx.p(), M_);
  if (q >= (Integer(1) << 62)) throw PrecisionError("residue ring modulus exceeds 62 bits");
  q_ = q.get_si();
  pa_ = q_;
  pb_ = ipow(ctx.p(), kb).get_si();
  const NumberField& k = ctx.field();
  if (ctx.kind() == PrimeKind::Inert) {
    t_ = k.omega_trace();
    n_ = mod(to_i64(mod_floor(k.omega_norm(), q)));
  } else if (ctx.kind() == PrimeKind::Ramified) {
    const FieldElem& pi = ctx.uniformizer();
    shift_ = mod(to_i64(Integer(pi.a().get_num())));
    t_ = mod(to_i64(mod_floor(Integer(pi.trace().get_num()), q)));
    n_ = mod(to_i64(mod_floor(Integer(pi.norm().get_num()), q)));
  }
}

uint64_t ResidueRing::size() const {
  Integer s = ipow(ctx_.p(), ctx_.f() * K_);
  if (s >= (Integer(1) << 62)) throw PrecisionError("residue ring too large to enumerate");
  return s.get_ui();
}

int64_t ResidueRing::mod(int64_t v) const {
  v %= q_;
  return v < 0 ? v + q_ : v;
}

int64_t ResidueRing::mulmod(int64_t x, int64_t y) const {
  return static_cast<int64_t>(static_cast<__int128>(x) * y % q_);
}

ResidueRing::Elem ResidueRing::reduce(const FieldElem& x) const {
  Integer q = q_;
  auto red = [&](const Rational& r) -> int64_t {
    auto inv = inverse_mod(Integer(r.get_den()), q);
    if (!inv) throw InputError("reduce: element is not integral at " + ctx_.label());
    return mod_floor(Integer(r.get_num()) * *inv, q).get_si();
  };
  switch (ctx_.kind()) {
    case PrimeKind::Rational:
      return {red(x.a()), 0};
    case PrimeKind::Inert:
      return {red(x.a()), red(x.b())};
    case PrimeKind::Ramified: {
      int64_t a = red(x.a()), b = red(x.b());
      return {mod(a - mulmod(b, shift_)), b};
    }
    case PrimeKind::Split: {
      Integer D = x.denominator();
      int vD = ord_p(D, ctx_.p());
      Integer big = ipow(ctx_.p(), M_ + vD);
      Integer r = ctx_.split_root(M_ + vD);
      FieldElem y = x * FieldElem(x.field(), Rational(D));
      Integer img = mod_floor(Integer(y.a().get_num()) + Integer(y.b().get_num()) * r, big);
      Integer pv = ipow(ctx_.p(), vD);
      if (!mpz_divisible_p(img.get_mpz_t(), pv.get_mpz_t()))
        throw InputError("reduce: element is not integral at " + ctx_.label());
      Integer Du = D / pv;
      return {mod_floor(Integer(img / pv) * *inverse_mod(Du, q), q).get_si(), 0};
    }
  }
  return {};
}

ResidueRing::Elem ResidueRing::from_int(int64_t v) const { return {mod(v), 0}; }

ResidueRing::Elem ResidueRing::add(const Elem& x, const Elem& y) const {
  return {mod(x.a + y.a), deg_ == 2 ? mod(x.b + y.b) : 0};
}

ResidueRing::Elem ResidueRing::sub(const Elem& x, const Elem& y) const {
  return {mod(x.a - y.a), deg_ == 2 ? mod(x.b - y.b) : 0};
}

ResidueRing::Elem ResidueRing::neg(const Elem& x) const { return {mod(-x.a), deg_ == 2 ? mod(-x.b) : 0}; }

ResidueRing::Elem ResidueRing::mul(const Elem& x, const Elem& y) const {
  if (deg_ == 1) return {mulmod(x.a, y.a), 0};
  int64_t bd = mulmod(x.b, y.b);
  int64_t a = mod(mulmod(x.a, y.a) - mulmod(n_, bd));
  int64_t b = mod(mulmod(x.a, y.b) + mulmod(x.b, y.a) + mulmod(t_, bd));
  return {a, b};
}

ResidueRing::Elem ResidueRing::pow(Elem x, uint64_t e) const {
  Elem r = from_int(1);
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

int ResidueRing::pval(int64_t v, int cap) const {
  if (v == 0) return cap;
  int r = 0;
  while (v % p_ == 0 && r < cap) {
    v /= p_;
    ++r;
  }
  return r;
}

int ResidueRing::val(const Elem& x) const {
  switch (ctx_.kind()) {
    case PrimeKind::Rational:
    case PrimeKind::Split:
      return pval(x.a, K_);
    case PrimeKind::Inert:
      return std::min(pval(x.a, K_), pval(x.b, K_));
    case PrimeKind::Ramified: {
      int va = pval(x.a, K_);
      int vb = pval(x.b % std::max<int64_t>(pb_, 1), K_);
      if (pb_ == 1) vb = K_;
      return std::min({2 * va, 2 * vb + 1, K_});
    }
  }
  return 0;
}

uint64_t ResidueRing::key(const Elem& x) const {
  if (deg_ == 1) return static_cast<uint64_t>(x.a);
  return static_cast<uint64_t>(x.a) + static_cast<uint64_t>(pa_) * static_cast<uint64_t>(x.b % pb_);
}

ResidueRing::Elem ResidueRing::from_key(uint64_t k) const {
  if (deg_ == 1) return {static_cast<int64_t>(k), 0};
  return {static_cast<int64_t>(k % pa_), static_cast<int64_t>(k / pa_)};
}

FieldElem ResidueRing::lift(const Elem& x) const {
  const NumberField& k = ctx_.field();
  switch (ctx_.kind()) {
    case PrimeKind::Rational:
    case PrimeKind::Split:
      return FieldElem(k, Rational(x.a));
    case PrimeKind::Inert:
      return FieldElem(k, Rational(x.a), Rational(x.b % pb_));
    case PrimeKind::Ramified:
      return FieldElem(k, Rational(x.a)) + FieldElem(k, Rational(x.b % std::max<int64_t>(pb_, 1))) * ctx_.uniformizer();
  }
  return {};
}

// ---------------------------------------------------------------------------

std::string DefectIdeal::str() const { return zero ? "0" : "(pi^" + std::to_string(exponent) + ")"; }

namespace {

// Quadratic character of a unit at a non-dyadic place.
int unit_character(const FieldElem& u, const LocalContext& ctx) {
  ResidueRing R(ctx, 1);
  auto x = R.reduce(u);
  uint64_t e = Integer(ctx.residue_field_size() - 1).get_ui() / 2;
  auto y = R.pow(x, e);
  return R.key(y) == R.key(R.from_int(1)) ? 1 : -1;
}

std::vector<uint64_t> unit_square_keys(const ResidueRing& R) {
  std::vector<char> seen(R.size(), 0);
  for (uint64_t k = 0; k < R.size(); ++k) {
    auto x = R.from_key(k);
    if (!R.is_unit(x)) continue;
    seen[R.key(R.mul(x, x))] = 1;
  }
  std::vector<uint64_t> out;
  for (uint64_t k = 0; k < seen.size(); ++k)
    if (seen[k]) out.push_back(k);
  return out;
}

bool dyadic_unit_is_square(const FieldElem& u, const LocalContext& ctx) {
  ResidueRing R(ctx, 2 * ctx.e2() + 1);
  // Per-thread cache: the key set depends only on the place.
  thread_local std::map<std::string, std::vector<uint64_t>> cache;
  std::string id = ctx.field().name() + "@" + ctx.label();
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, unit_square_keys(R)).first;
  const auto& keys = it->second;
  return std::binary_search(keys.begin(), keys.end(), R.key(R.reduce(u)));
}

// Defect exponent of a dyadic unit by completing squares; nullopt means zero.
std::optional<int> dyadic_unit_defect(const FieldElem& u, const LocalContext& ctx) {
  int top = 2 * ctx.e2() + 1;
  ResidueRing R(ctx, top);
  auto U = R.reduce(u);
  auto eta = R.from_int(1);
  auto pi = R.reduce(ctx.uniformizer());
  std::vector<ResidueRing::Elem> reps;
  for (const auto& r : ctx.residue_reps()) reps.push_back(R.reduce(r));
  for (;;) {
    int r = R.val(R.sub(U, R.mul(eta, eta)));
    if (r >= top) return std::nullopt;
    if (r % 2 == 1) return r;
    auto step = R.pow(pi, r / 2);
    bool improved = false;
    for (const auto& t : reps) {
      auto cand = R.add(eta, R.mul(t, step));
      if (R.val(R.sub(U, R.mul(cand, cand))) > r) {
        eta = cand;
        improved = true;
        break;
      }
    }
    if (!improved) return r;
  }
}

}  // namespace

bool is_square_local(const FieldElem& x, const LocalContext& ctx) {
  if (x.is_zero()) throw InputError("is_square_local of zero");
  int v = ctx.valuation(x);
  if (v % 2 != 0) return false;
  FieldElem u = ctx.unit_part(x);
  if (!ctx.is_dyadic()) return unit_character(u, ctx) == 1;
  return dyadic_unit_is_square(u, ctx);
}

DefectIdeal quadratic_defect(const FieldElem& x, const LocalContext& ctx) {
  if (x.is_zero()) throw InputError("quadratic_defect of zero");
  // Exponents are taken after removing the even part pi^(2k) of x, so the
  // result depends only on the square class.
  int v = ctx.valuation(x);
  if (v % 2 != 0) return {false, 1};
  FieldElem u = ctx.unit_part(x);
  if (!ctx.is_dyadic()) {
    if (unit_character(u, ctx) == 1) return {true, 0};
    return {false, 0};
  }
  auto d = dyadic_unit_defect(u, ctx);
  if (!d) return {true, 0};
  return {false, *d};
}

std::vector<LocalContext> local_context(const NumberField& k, const Integer& p, int precision) {
  std::vector<LocalContext> out;
  for (const auto& P : primes_above(k, p)) {
    int e2 = p == 2 ? P.e : 0;
    int N = precision == 0 ? precision_floor(e2) : precision;
    LocalContext ctx(k, P, N);
    if (ctx.is_dyadic()) {
      for (const auto& r : ctx.residue_reps()) {
        FieldElem D = FieldElem(k, 1) + FieldElem(k, 4) * r;
        auto d = quadratic_defect(D, ctx);
        if (!d.zero && d.exponent == 2 * e2) {
          ctx.delta_ = D;
          ctx.rho_ = r;
          break;
        }
      }
      if (ctx.delta_.is_zero()) throw PrecisionError("no unit of defect 4 found");
    } else {
      // Any non-square unit represents the non-trivial unit square class.
      for (const auto& r : ctx.residue_reps()) {
        if (r.is_zero() || is_square_local(r, ctx)) continue;
        ctx.delta_ = r;
        ctx.rho_ = (r - FieldElem(k, 1)) / FieldElem(k, 4);
        break;
      }
    }
    out.push_back(ctx);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string Place::label() const {
  switch (kind) {
    case Kind::Real:
      return "inf";
    case Kind::Complex:
      return "inf(complex)";
    case Kind::Finite:
      return ctx->label();
  }
  return "";
}

int hilbert_symbol_search(const FieldElem& a0, const FieldElem& b0, const LocalContext& ctx) {
  if (a0.is_zero() || b0.is_zero()) throw InputError("hilbert_symbol of zero");
  // Normalize to valuations 0 or 1 by removing even powers of pi.
  auto normalize = [&](const FieldElem& x) {
    int v = ctx.valuation(x);
    int h = (v >= 0 ? v / 2 : -((-v + 1) / 2));
    FieldElem pi2 = ctx.uniformizer() * ctx.uniformizer();
    return h >= 0 ? x / pi2.pow(h) : x * pi2.pow(-h);
  };
  FieldElem a = normalize(a0), b = normalize(b0);
  ResidueRing R(ctx, 2 * ctx.e2() + 3);
  uint64_t n = R.size();
  std::vector<char> sq_all(n, 0), sq_unit(n, 0);
  std::vector<ResidueRing::Elem> squares(n);
  std::vector<char> unit(n, 0);
  for (uint64_t k = 0; k < n; ++k) {
    auto x = R.from_key(k);
    auto s = R.mul(x, x);
    squares[k] = s;
    unit[k] = R.is_unit(x);
    sq_all[R.key(s)] = 1;
    if (unit[k]) sq_unit[R.key(s)] = 1;
  }
  auto A = R.reduce(a), B = R.reduce(b);
  for (uint64_t y = 0; y < n; ++y) {
    auto ay = R.mul(A, squares[y]);
    for (uint64_t z = 0; z < n; ++z) {
      auto t = R.key(R.add(ay, R.mul(B, squares[z])));
      if ((unit[y] || unit[z]) ? sq_all[t] : sq_unit[t]) return 1;
    }
  }
  return -1;
}

int hilbert_symbol(const FieldElem& a, const FieldElem& b, const LocalContext& ctx) {
  if (a.is_zero() || b.is_zero()) throw InputError("hilbert_symbol of zero");
  if (ctx.is_dyadic()) return hilbert_symbol_search(a, b, ctx);
  int alpha = ctx.valuation(a), beta = ctx.valuation(b);
  FieldElem u = ctx.unit_part(a), w = ctx.unit_part(b);
  int s = 1;
  if ((alpha & 1) && (beta & 1)) s *= unit_character(FieldElem(ctx.field(), -1), ctx);
  if (beta & 1) s *= unit_character(u, ctx);
  if (alpha & 1) s *= unit_character(w, ctx);
  return s;
}

int hilbert_symbol(const FieldElem& a, const FieldElem& b, const Place& v) {
  if (a.is_zero() || b.is_zero()) throw InputError("hilbert_symbol of zero");
  switch (v.kind) {
    case Place::Kind::Real:
      if (!a.is_rational() || !b.is_rational()) throw InputError("real place needs rational arguments");
      return (a.a() < 0 && b.a() < 0) ? -1 : 1;
    case Place::Kind::Complex:
      return 1;
    case Place::Kind::Finite:
      return hilbert_symbol(a, b, *v.ctx);
  }
  return 1;
}

}  // namespace quniv
