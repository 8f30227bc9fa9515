#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/field.hpp"
#include "jetmetric/poly/monomial.hpp"

namespace jetmetric::poly {

// Sparse multivariate polynomial; zero coefficients are never stored.
template <class F>
class Poly {
 public:
  using Element = typename F::Element;
  using Terms = std::map<Monomial, Element, GrlexLess>;

  Poly(F field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

  static Poly constant(F field, std::size_t nvars, const Element& c) {
    Poly p(std::move(field), nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static Poly variable(F field, std::size_t nvars, std::size_t i) {
    Poly p(field, nvars);
    p.add_term(Monomial::variable(nvars, i), field.one());
    return p;
  }
  static Poly monomial(F field, const Monomial& m) {
    Poly p(field, m.nvars());
    p.add_term(m, field.one());
    return p;
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Element& c) {
    if (F::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second = field_.add(it->second, c);
    if (F::is_zero(it->second)) terms_.erase(it);
  }

  Element coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }
  Element constant_term() const { return coefficient(Monomial(nvars_)); }

  // Degree of the highest / lowest term; undefined for zero.
  unsigned degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  unsigned order() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }
  bool is_homogeneous() const { return terms_.empty() || degree() == order(); }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  Poly operator-() const {
    Poly r(field_, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
    return r;
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    Poly r(field_, nvars_);
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, field_.mul(c1, c2));
    return r;
  }
  Poly scaled(const Element& s) const {
    Poly r(field_, nvars_);
    if (F::is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.mul(c, s));
    return r;
  }
  Poly times_monomial(const Monomial& mono) const {
    Poly r(field_, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m * mono, c);
    return r;
  }
  Poly pow(unsigned e) const {
    Poly r = constant(field_, nvars_, field_.one());
    Poly base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return r;
  }
  // Terms of degree < cap.
  Poly truncated(unsigned cap) const {
    Poly r(field_, nvars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() < cap) r.terms_.emplace(m, c);
    return r;
  }

  bool operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
      if (!(a->first == b->first) || !F::equal(a->second, b->second)) return false;
    return true;
  }

  // Terms in descending grlex order, e.g. "-x^3 + y^2".
  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string coef = field_.to_string(c);
      bool negative = false;
      if constexpr (std::is_same_v<F, exact::Rationals>) {
        if (sgn(c) < 0) {
          negative = true;
          coef = field_.to_string(field_.neg(c));
        }
      }
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      first = false;
      if (m.is_one()) {
        out += coef;
      } else {
        if (coef != "1") out += coef + "*";
        out += m.to_string(names);
      }
    }
    return out;
  }

 private:
  F field_;
  std::size_t nvars_;
  Terms terms_;
};

}  // namespace jetmetric::poly
