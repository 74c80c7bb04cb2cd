#include "quniv/extring.hpp"

#include "quniv/errors.hpp"

namespace quniv {

ExtRing::ExtRing(const NumberField& k, std::vector<FieldElem> radicands) {
  if (radicands.size() > 6) throw InputError("ExtRing: at most 6 adjoined square roots");
  for (auto& t : radicands) {
    if (t.is_zero()) throw InputError("ExtRing: radicand 0");
    if (!t.is_integral()) throw InputError("ExtRing: radicand " + t.str() + " is not integral");
    t = FieldElem(k, t.a(), t.b());
  }
  d_ = std::make_shared<const Data>(Data{k, std::move(radicands)});
}

ExtElem ExtRing::zero() const { return ExtElem(*this, std::vector<FieldElem>(rank(), FieldElem(base(), 0))); }

ExtElem ExtRing::one() const { return embed(FieldElem(base(), 1)); }

ExtElem ExtRing::embed(const FieldElem& x) const {
  ExtElem r = zero();
  r.c_[0] = FieldElem(base(), x.a(), x.b());
  return r;
}

ExtElem ExtRing::gen(size_t i) const {
  if (i >= radicands().size()) throw InputError("ExtRing: generator index out of range");
  ExtElem r = zero();
  r.c_[size_t(1) << i] = FieldElem(base(), 1);
  return r;
}

std::optional<ExtElem> ExtRing::sqrt_of(const FieldElem& t) const {
  FieldElem x(base(), t.a(), t.b());
  for (size_t i = 0; i < radicands().size(); ++i)
    if (radicands()[i] == x) return gen(i);
  if (auto s = sqrt_in_field(x)) return embed(*s);
  return std::nullopt;
}

std::string ExtRing::str() const {
  std::string s = base().is_rational() ? "Z" : "Z[w]";
  if (radicands().empty()) return s;
  s = base().is_rational() ? "Z[" : "Z[w, ";
  for (size_t i = 0; i < radicands().size(); ++i) s += (i ? ", sqrt(" : "sqrt(") + radicands()[i].str() + ")";
  return s + "]";
}

ExtElem::ExtElem(const ExtRing& r, std::vector<FieldElem> c) : ring_(r), c_(std::move(c)) {}

void ExtElem::check_same(const ExtElem& o) const {
  if (!(ring_ == o.ring_)) throw InputError("ExtElem: elements of different rings");
}

bool ExtElem::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool ExtElem::is_integral() const {
  for (const auto& c : c_)
    if (!c.is_integral()) return false;
  return true;
}

std::optional<FieldElem> ExtElem::as_base() const {
  for (size_t m = 1; m < c_.size(); ++m)
    if (!c_[m].is_zero()) return std::nullopt;
  return c_[0];
}

ExtElem ExtElem::operator-() const {
  ExtElem r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

ExtElem& ExtElem::operator+=(const ExtElem& o) {
  check_same(o);
  for (size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
  return *this;
}

ExtElem& ExtElem::operator-=(const ExtElem& o) {
  check_same(o);
  for (size_t m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
  return *this;
}

ExtElem& ExtElem::operator*=(const ExtElem& o) {
  check_same(o);
  const auto& t = ring_.radicands();
  std::vector<FieldElem> out(c_.size(), FieldElem(ring_.base(), 0));
  for (size_t m1 = 0; m1 < c_.size(); ++m1) {
    if (c_[m1].is_zero()) continue;
    for (size_t m2 = 0; m2 < c_.size(); ++m2) {
      if (o.c_[m2].is_zero()) continue;
      FieldElem c = c_[m1] * o.c_[m2];
      // s_i^2 = t_i for every shared generator.
      for (size_t both = m1 & m2, i = 0; both; both >>= 1, ++i)
        if (both & 1) c *= t[i];
      out[m1 ^ m2] += c;
    }
  }
  c_ = std::move(out);
  return *this;
}

ExtElem ExtElem::scaled(const FieldElem& x) const {
  ExtElem r = *this;
  for (auto& c : r.c_) c *= x;
  return r;
}

ExtElem ExtElem::pow(unsigned e) const {
  ExtElem r = ring_.one(), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool ExtElem::operator==(const ExtElem& o) const { return ring_ == o.ring_ && c_ == o.c_; }

std::string ExtElem::str() const {
  std::string out;
  const auto& t = ring_.radicands();
  for (size_t m = 0; m < c_.size(); ++m) {
    if (c_[m].is_zero()) continue;
    std::string mono;
    for (size_t i = 0; i < t.size(); ++i)
      if (m >> i & 1) mono += (mono.empty() ? "sqrt(" : "*sqrt(") + t[i].str() + ")";
    FieldElem c = c_[m];
    bool neg = c.is_rational() && c.a() < 0;
    if (neg) c = -c;
    std::string coef = c.is_rational() ? c.str() : "(" + c.str() + ")";
    std::string term = mono.empty() ? coef : (c == FieldElem(1) ? mono : coef + "*" + mono);
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace quniv
