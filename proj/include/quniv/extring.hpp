#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quniv/field.hpp"

namespace quniv {

class ExtElem;

// O_k[s_1, ..., s_r] / (s_i^2 - t_i) with t_i in k. Elements are coefficient vectors over the
// monomials prod_{i in S} s_i, indexed by the bit mask of S.
class ExtRing {
 public:
  ExtRing(const NumberField& k, std::vector<FieldElem> radicands);

  const NumberField& base() const { return d_->k; }
  const std::vector<FieldElem>& radicands() const { return d_->t; }
  size_t rank() const { return size_t(1) << d_->t.size(); }

  ExtElem zero() const;
  ExtElem one() const;
  ExtElem embed(const FieldElem& x) const;
  ExtElem gen(size_t i) const;  // s_i
  // A square root of t: s_i when t = t_i, a base element when t is a square in k.
  std::optional<ExtElem> sqrt_of(const FieldElem& t) const;

  bool operator==(const ExtRing& o) const { return base() == o.base() && radicands() == o.radicands(); }
  std::string str() const;  // e.g. "Z[w, sqrt(-1)]"

 private:
  // Shared so that elements stay valid when rings are copied around.
  struct Data {
    NumberField k;
    std::vector<FieldElem> t;
  };
  std::shared_ptr<const Data> d_;
};

class ExtElem {
 public:
  const ExtRing& ring() const { return ring_; }
  const std::vector<FieldElem>& coeffs() const { return c_; }

  bool is_zero() const;
  // Every coefficient lies in O_k; a sufficient condition for integrality over O_k.
  bool is_integral() const;
  std::optional<FieldElem> as_base() const;  // when only the constant monomial is used

  ExtElem operator-() const;
  ExtElem& operator+=(const ExtElem& o);
  ExtElem& operator-=(const ExtElem& o);
  ExtElem& operator*=(const ExtElem& o);
  friend ExtElem operator+(ExtElem x, const ExtElem& y) { return x += y; }
  friend ExtElem operator-(ExtElem x, const ExtElem& y) { return x -= y; }
  friend ExtElem operator*(ExtElem x, const ExtElem& y) { return x *= y; }
  ExtElem scaled(const FieldElem& x) const;
  ExtElem pow(unsigned e) const;
  bool operator==(const ExtElem& o) const;

  std::string str() const;

 private:
  friend class ExtRing;
  ExtElem(const ExtRing& r, std::vector<FieldElem> c);
  void check_same(const ExtElem& o) const;
  ExtRing ring_;
  std::vector<FieldElem> c_;
};

}  // namespace quniv
