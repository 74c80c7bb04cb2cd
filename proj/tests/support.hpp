#pragma once

#include <random>
#include <vector>

#include "quniv/lattice.hpp"
#include "quniv/localfield.hpp"

namespace quniv::testing {

inline FieldElem el(const NumberField& k, const char* s) { return FieldElem::parse(k, s); }

inline std::vector<LocalContext> all_contexts() {
  std::vector<LocalContext> out;
  for (long p : {2L, 3L, 5L, 7L}) out.push_back(local_context(NumberField(), p)[0]);
  for (long d : {-1L, -3L, -5L, -7L}) {
    auto k = NumberField::imaginary_quadratic(d);
    for (long p : {2L, 3L, 5L})
      for (auto& c : local_context(k, p)) out.push_back(c);
  }
  return out;
}

inline FieldElem random_elem(const NumberField& k, std::mt19937_64& rng, long range = 40) {
  for (;;) {
    Rational a = make_rational(long(rng() % (2 * range + 1)) - range, long(rng() % 4) + 1);
    Rational b = k.is_rational() ? Rational(0) : make_rational(long(rng() % (2 * range + 1)) - range, long(rng() % 3) + 1);
    FieldElem x(k, a, b);
    if (!x.is_zero()) return x;
  }
}

inline FieldElem random_integer(const NumberField& k, std::mt19937_64& rng, long range) {
  long a = long(rng() % (2 * range + 1)) - range;
  long b = k.is_rational() ? 0 : long(rng() % (2 * range + 1)) - range;
  return FieldElem(k, a, b);
}

// Random non-degenerate symmetric Gram: entries p^v * (small unit-ish integer), v <= maxv.
inline Matrix random_gram(const LocalContext& ctx, size_t n, std::mt19937_64& rng, int maxv = 3,
                          bool half_offdiag = false) {
  const NumberField& k = ctx.field();
  for (;;) {
    Matrix G(n, n, FieldElem(k, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) {
        if (i != j && rng() % 3 == 0) continue;
        FieldElem x = random_integer(k, rng, 4);
        if (x.is_zero()) continue;
        x *= ctx.uniformizer().pow(static_cast<unsigned>(rng() % (maxv + 1)));
        if (i != j && half_offdiag && rng() % 2 == 0) x *= FieldElem(make_rational(1, 2));
        G(i, j) = x;
        G(j, i) = x;
      }
    if (!G.det().is_zero()) return G;
  }
}

}  // namespace quniv::testing
