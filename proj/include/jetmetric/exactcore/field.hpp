#pragma once

// Coefficient fields: the rationals (GMP-backed) and finite fields F_{p^m}.
//
// Algorithms throughout the library are templates over a field type that
// provides an Element type plus the arithmetic below. Elements are plain
// values; the field object carries any runtime parameters (p, tables).

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "jetmetric/errors.hpp"

namespace jetmetric::exact {

struct FieldDesc {
  enum class Kind { rationals, prime, extension };

  Kind kind = Kind::rationals;
  std::uint32_t p = 0;
  unsigned m = 1;
  // Monic minimal polynomial c_0..c_m of the generator `a`, present iff m > 1.
  std::vector<std::uint32_t> minpoly;

  static FieldDesc rationals() { return {}; }
  static FieldDesc prime_field(std::uint32_t p) { return {Kind::prime, p, 1, {}}; }
  static FieldDesc extension(std::uint32_t p, std::vector<std::uint32_t> minpoly) {
    const auto m = static_cast<unsigned>(minpoly.size() - 1);
    if (m == 1) return prime_field(p);
    return {Kind::extension, p, m, std::move(minpoly)};
  }

  bool is_finite() const { return kind != Kind::rationals; }
  std::uint64_t order() const {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    return q;
  }

  std::string minpoly_string() const {
    std::ostringstream out;
    bool first = true;
    for (int i = static_cast<int>(minpoly.size()) - 1; i >= 0; --i) {
      const auto c = minpoly[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!first) out << "+";
      first = false;
      if (i == 0) {
        out << c;
        continue;
      }
      if (c != 1) out << c << "*";
      out << "a";
      if (i > 1) out << "^" << i;
    }
    return out.str();
  }

  // "Q", "F_7", "F_2^2 minpoly a^2+a+1" (the presentation-file spelling).
  std::string name() const {
    switch (kind) {
      case Kind::rationals: return "Q";
      case Kind::prime: return "F_" + std::to_string(p);
      case Kind::extension:
        return "F_" + std::to_string(p) + "^" + std::to_string(m) + " minpoly " + minpoly_string();
    }
    return "?";
  }

  bool operator==(const FieldDesc&) const = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

using Coeffs = std::vector<std::uint32_t>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    const std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo b over F_p; b nonzero.
inline Coeffs poly_mod(Coeffs a, Coeffs b, std::uint32_t p) {
  trim(a);
  trim(b);
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    const std::uint64_t f = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = (f * b[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& mod, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  return poly_mod(std::move(prod), mod, p);
}

inline Coeffs index_to_coeffs(std::uint64_t index, std::uint32_t p, unsigned m) {
  Coeffs c(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    c[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return c;
}

inline std::uint32_t coeffs_to_index(const Coeffs& c, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

// Trial division by every monic polynomial of degree 1..m/2.
inline bool is_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint32_t p) {
  detail::Coeffs f = coeffs;
  detail::trim(f);
  if (f.size() < 2) return false;
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      auto g = detail::index_to_coeffs(idx, p, d);
      g.push_back(1);
      if (detail::poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// The first monic irreducible of degree m, enumerating lower coefficients in
// index order (c_0 fastest). Deterministic choice for extension towers.
inline std::vector<std::uint32_t> first_irreducible(std::uint32_t p, unsigned m) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    auto g = detail::index_to_coeffs(idx, p, m);
    g.push_back(1);
    if (is_irreducible(g, p)) return g;
  }
  fail(ErrorKind::Field, "no irreducible polynomial found");
}

class Rationals {
 public:
  using Element = mpq_class;

  FieldDesc desc() const { return FieldDesc::rationals(); }
  std::uint32_t characteristic() const { return 0; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long long v) const { return Element(static_cast<long>(v)); }
  Element from_mpz(const mpz_class& v) const { return Element(v); }
  Element from_fraction(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) fail(ErrorKind::Syntax, "division by zero");
    Element r(num, den);
    r.canonicalize();
    return r;
  }

  static bool is_zero(const Element& a) { return sgn(a) == 0; }
  static bool is_one(const Element& a) { return a == 1; }
  static bool equal(const Element& a, const Element& b) { return a == b; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (is_zero(a)) fail(ErrorKind::Inconsistency, "inverse of zero");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const {
    if (is_zero(b)) fail(ErrorKind::Inconsistency, "division by zero");
    return a / b;
  }
  // y += a * x
  void axpy(Element& y, const Element& a, const Element& x) const { y += a * x; }

  std::string to_string(const Element& a) const { return a.get_str(); }
  bool operator==(const Rationals&) const { return true; }
};

class GaloisField {
 public:
  using Element = std::uint32_t;

  explicit GaloisField(const FieldDesc& d) {
    if (!d.is_finite()) fail(ErrorKind::Field, "GaloisField requires a finite field description");
    if (!is_prime(d.p)) fail(ErrorKind::Field, std::to_string(d.p) + " is not prime");
    if (d.p >= (1u << 31)) fail(ErrorKind::Field, "characteristic too large");
    auto t = std::make_shared<Tables>();
    t->desc = d;
    t->p = d.p;
    t->m = d.m;
    if (d.m > 1) {
      if (d.minpoly.size() != d.m + 1 || d.minpoly.back() != 1)
        fail(ErrorKind::Field, "minimal polynomial must be monic of degree " + std::to_string(d.m));
      for (auto c : d.minpoly)
        if (c >= d.p) fail(ErrorKind::Field, "minimal polynomial coefficient out of range");
      if (d.order() > (1u << 20)) fail(ErrorKind::Field, "extension field too large for table arithmetic");
      if (!is_irreducible(d.minpoly, d.p))
        fail(ErrorKind::Field, "minimal polynomial " + d.minpoly_string() + " is reducible over F_" +
                                   std::to_string(d.p));
      build_tables(*t);
    }
    t->q = static_cast<std::uint32_t>(d.order());
    tables_ = std::move(t);
  }

  static GaloisField prime(std::uint32_t p) { return GaloisField(FieldDesc::prime_field(p)); }
  // F_{p^m} with the deterministic first irreducible minimal polynomial.
  static GaloisField standard(std::uint32_t p, unsigned m) {
    if (m == 1) return prime(p);
    return GaloisField(FieldDesc::extension(p, first_irreducible(p, m)));
  }

  const FieldDesc& desc() const { return tables_->desc; }
  std::uint32_t characteristic() const { return tables_->p; }
  std::uint32_t p() const { return tables_->p; }
  unsigned degree() const { return tables_->m; }
  std::uint32_t size() const { return tables_->q; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long v) const {
    const long long p = tables_->p;
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<Element>(r);
  }
  Element from_mpz(const mpz_class& v) const {
    mpz_class r = v % tables_->p;
    if (r < 0) r += tables_->p;
    return static_cast<Element>(r.get_ui());
  }
  Element from_fraction(const mpz_class& num, const mpz_class& den) const {
    const Element d = from_mpz(den);
    if (d == 0) fail(ErrorKind::Syntax, "denominator vanishes in F_" + std::to_string(tables_->p));
    return mul(from_mpz(num), inv(d));
  }
  // The extension generator `a` (index p encodes the coefficient vector (0, 1)).
  Element generator() const {
    if (tables_->m == 1) fail(ErrorKind::Field, "prime field has no extension generator");
    return tables_->p;
  }
  Element from_coeffs(const std::vector<std::uint32_t>& c) const { return detail::coeffs_to_index(c, tables_->p); }
  std::vector<std::uint32_t> coeffs(Element a) const { return detail::index_to_coeffs(a, tables_->p, tables_->m); }

  static bool is_zero(Element a) { return a == 0; }
  static bool is_one(Element a) { return a == 1; }
  static bool equal(Element a, Element b) { return a == b; }

  Element add(Element a, Element b) const {
    const auto& t = *tables_;
    if (t.p == 2) return a ^ b;
    if (t.m == 1) {
      const std::uint64_t s = std::uint64_t(a) + b;
      return static_cast<Element>(s >= t.p ? s - t.p : s);
    }
    if (a == 0) return b;
    if (b == 0) return a;
    // Zech logarithm: a + b = a * (1 + b/a).
    std::uint32_t k = t.log[b] + (t.q - 1) - t.log[a];
    if (k >= t.q - 1) k -= t.q - 1;
    const std::int64_t z = t.zech[k];
    if (z < 0) return 0;
    std::uint64_t e = t.log[a] + static_cast<std::uint64_t>(z);
    if (e >= t.q - 1) e -= t.q - 1;
    return t.exp[e];
  }
  Element neg(Element a) const {
    const auto& t = *tables_;
    if (a == 0 || t.p == 2) return a;
    if (t.m == 1) return t.p - a;
    return t.exp[(t.log[a] + t.log_minus_one) % (t.q - 1)];
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    const auto& t = *tables_;
    if (t.m == 1) return static_cast<Element>((std::uint64_t(a) * b) % t.p);
    std::uint32_t e = t.log[a] + t.log[b];
    if (e >= t.q - 1) e -= t.q - 1;
    return t.exp[e];
  }
  Element inv(Element a) const {
    if (a == 0) fail(ErrorKind::Inconsistency, "inverse of zero");
    const auto& t = *tables_;
    if (t.m == 1) return detail::inv_mod(a, t.p);
    return t.exp[(t.q - 1 - t.log[a]) % (t.q - 1)];
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  void axpy(Element& y, Element a, Element x) const { y = add(y, mul(a, x)); }

  // Integers for prime fields; polynomials in `a` for extensions.
  std::string to_string(Element v) const {
    const auto& t = *tables_;
    if (t.m == 1) return std::to_string(v);
    if (v == 0) return "0";
    const auto c = coeffs(v);
    std::ostringstream out;
    bool first = true;
    for (int i = static_cast<int>(t.m) - 1; i >= 0; --i) {
      const auto ci = c[static_cast<std::size_t>(i)];
      if (ci == 0) continue;
      if (!first) out << "+";
      first = false;
      if (i == 0) {
        out << ci;
        continue;
      }
      if (ci != 1) out << ci << "*";
      out << "a";
      if (i > 1) out << "^" << i;
    }
    const std::string s = out.str();
    return first ? s : "(" + s + ")";
  }

  bool operator==(const GaloisField& o) const { return desc() == o.desc(); }

 private:
  struct Tables {
    FieldDesc desc;
    std::uint32_t p = 0;
    unsigned m = 1;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> exp;
    std::vector<std::uint32_t> log;
    std::vector<std::int64_t> zech;
    std::uint32_t log_minus_one = 0;
  };

  static void build_tables(Tables& t) {
    const std::uint32_t p = t.desc.p;
    const unsigned m = t.desc.m;
    const auto q = static_cast<std::uint32_t>(t.desc.order());
    const detail::Coeffs mod = t.desc.minpoly;
    for (std::uint32_t g = 2; g < q; ++g) {
      std::vector<std::uint32_t> exp;
      exp.reserve(q - 1);
      detail::Coeffs cur{1};
      const auto gc = detail::index_to_coeffs(g, p, m);
      bool primitive = true;
      for (std::uint32_t k = 0; k < q - 1; ++k) {
        auto padded = cur;
        padded.resize(m, 0);
        const auto idx = detail::coeffs_to_index(padded, p);
        if (k > 0 && idx == 1) {
          primitive = false;
          break;
        }
        exp.push_back(idx);
        cur = detail::poly_mulmod(cur, gc, mod, p);
      }
      if (!primitive) continue;
      t.exp = std::move(exp);
      t.log.assign(q, 0);
      for (std::uint32_t k = 0; k < q - 1; ++k) t.log[t.exp[k]] = k;
      break;
    }
    if (t.exp.empty()) fail(ErrorKind::Field, "no primitive element found");
    t.q = q;
    // zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0.
    t.zech.assign(q - 1, -1);
    for (std::uint32_t k = 0; k < q - 1; ++k) {
      auto c = detail::index_to_coeffs(t.exp[k], p, m);
      c[0] = (c[0] + 1) % p;
      const auto idx = detail::coeffs_to_index(c, p);
      if (idx != 0) t.zech[k] = t.log[idx];
    }
    if (p != 2) {
      auto c = detail::index_to_coeffs(1, p, m);
      c[0] = p - 1;
      t.log_minus_one = t.log[detail::coeffs_to_index(c, p)];
    }
  }

  std::shared_ptr<const Tables> tables_;
};

template <class F>
concept Field = requires(const F& f, const typename F::Element& a, typename F::Element& y) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { F::is_zero(a) } -> std::convertible_to<bool>;
  { f.desc() } -> std::convertible_to<FieldDesc>;
  f.axpy(y, a, a);
};

using AnyField = std::variant<Rationals, GaloisField>;

inline AnyField make_field(const FieldDesc& d) {
  if (d.kind == FieldDesc::Kind::rationals) return Rationals{};
  return GaloisField(d);
}

// Embedding F_{p^m} -> F_{p^m'} for m | m'. The generator of the small field
// goes to the root of its minimal polynomial with the least index in the big
// field, so the map is deterministic.
class FieldEmbedding {
 public:
  FieldEmbedding(const GaloisField& small, const GaloisField& big) : small_(small), big_(big) {
    if (small.p() != big.p() || big.degree() % small.degree() != 0)
      fail(ErrorKind::Field, "cannot embed " + small.desc().name() + " into " + big.desc().name());
    if (small.degree() == 1) return;
    const auto& mp = small.desc().minpoly;
    std::uint32_t root = 0;
    bool found = false;
    for (std::uint32_t x = 0; x < big.size() && !found; ++x) {
      GaloisField::Element acc = 0;
      for (std::size_t i = mp.size(); i-- > 0;) acc = big.add(big.mul(acc, x), big.from_int(mp[i]));
      if (acc == 0) {
        root = x;
        found = true;
      }
    }
    if (!found) fail(ErrorKind::Field, "minimal polynomial has no root in the extension");
    image_.resize(small.size());
    for (std::uint32_t v = 0; v < small.size(); ++v) {
      const auto c = small.coeffs(v);
      GaloisField::Element acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = big.add(big.mul(acc, root), big.from_int(c[i]));
      image_[v] = acc;
    }
  }

  GaloisField::Element operator()(GaloisField::Element v) const { return image_.empty() ? v : image_[v]; }
  const GaloisField& target() const { return big_; }
  const GaloisField& source() const { return small_; }

 private:
  GaloisField small_;
  GaloisField big_;
  std::vector<GaloisField::Element> image_;
};

}  // namespace jetmetric::exact
