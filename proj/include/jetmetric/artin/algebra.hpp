#pragma once

// Finite-dimensional local algebras given by a monomial basis and structure
// constants.
//
// Bases always come from truncated quotients, so they are ordered by
// ascending degree and the basis elements of degree >= t span m^t. An element
// lies in m^t exactly when its coordinates on basis elements of degree < t
// vanish, and A/m^c is the span of the prefix of basis elements of degree < c.

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/echelon.hpp"
#include "jetmetric/exactcore/field.hpp"
#include "jetmetric/poly/quotient.hpp"

namespace jetmetric::artin {

template <class F>
class ArtinAlgebra {
 public:
  using Element = typename F::Element;
  using Vec = std::vector<Element>;
  using Sparse = exact::SparseVec<F>;

  ArtinAlgebra(F field, std::vector<poly::Monomial> basis, std::vector<std::string> vars,
               std::vector<std::int32_t> table, std::vector<Sparse> products, std::vector<Vec> var_images,
               bool graded)
      : field_(std::move(field)),
        basis_(std::move(basis)),
        vars_(std::move(vars)),
        table_(std::move(table)),
        products_(std::move(products)),
        var_images_(std::move(var_images)),
        graded_(graded) {
    degrees_.reserve(basis_.size());
    for (const auto& m : basis_) degrees_.push_back(m.degree());
  }

  static ArtinAlgebra from_quotient(const poly::TruncatedQuotient<F>& q, std::vector<std::string> vars,
                                    bool graded) {
    const std::size_t d = q.dim();
    std::vector<std::int32_t> table(d * d, -1);
    std::vector<Sparse> products;
    std::unordered_map<poly::Monomial, std::int32_t, poly::MonomialHash> seen;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        const poly::Monomial m = q.basis[i] * q.basis[j];
        if (m.degree() >= q.cap) continue;
        auto it = seen.find(m);
        std::int32_t idx;
        if (it != seen.end()) {
          idx = it->second;
        } else {
          const auto& nf = q.nf_table.at(m);
          if (nf.empty()) {
            idx = -1;
          } else {
            idx = static_cast<std::int32_t>(products.size());
            products.push_back(nf);
          }
          seen.emplace(m, idx);
        }
        table[i * d + j] = table[j * d + i] = idx;
      }
    std::vector<Vec> var_images;
    for (std::size_t v = 0; v < q.nvars; ++v) {
      Vec img(d, q.field.zero());
      if (d > 0 && q.cap > 1)
        for (const auto& [c, e] : q.nf_table.at(poly::Monomial::variable(q.nvars, v))) img[c] = e;
      var_images.push_back(std::move(img));
    }
    return ArtinAlgebra(q.field, q.basis, std::move(vars), std::move(table), std::move(products),
                        std::move(var_images), graded);
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero_ring() const { return basis_.empty(); }
  bool graded() const { return graded_; }
  const std::vector<poly::Monomial>& basis() const { return basis_; }
  const std::vector<std::string>& vars() const { return vars_; }
  unsigned degree(std::size_t i) const { return degrees_[i]; }
  unsigned max_degree() const { return degrees_.empty() ? 0 : degrees_.back(); }
  // Images of the presentation variables (they generate m).
  const std::vector<Vec>& var_images() const { return var_images_; }
  const std::optional<std::vector<Vec>>& tuple_images() const { return tuple_images_; }
  void set_tuple_images(std::vector<Vec> t) { tuple_images_ = std::move(t); }

  // Number of basis elements of degree < c, i.e. the length of A/m^c.
  std::size_t prefix_below(unsigned c) const {
    std::size_t n = 0;
    while (n < degrees_.size() && degrees_[n] < c) ++n;
    return n;
  }
  std::vector<std::size_t> maxideal_basis() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degrees_[i] > 0) out.push_back(i);
    return out;
  }
  std::vector<std::size_t> indices_of_degree(unsigned d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degrees_[i] == d) out.push_back(i);
    return out;
  }

  // Coordinates of basis[i] * basis[j]; empty for zero.
  const Sparse& product(std::size_t i, std::size_t j) const {
    static const Sparse empty;
    const auto idx = table_[i * dim() + j];
    return idx < 0 ? empty : products_[static_cast<std::size_t>(idx)];
  }

  Vec zero() const { return Vec(dim(), field_.zero()); }
  Vec unit(std::size_t i) const {
    Vec v = zero();
    v[i] = field_.one();
    return v;
  }
  Vec one() const {
    if (is_zero_ring()) return {};
    return unit(0);
  }

  Vec add(const Vec& a, const Vec& b) const {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.add(r[i], b[i]);
    return r;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(r[i], b[i]);
    return r;
  }
  Vec scale(const Vec& a, const Element& s) const {
    Vec r = a;
    for (auto& e : r) e = field_.mul(e, s);
    return r;
  }

  // Product, keeping only coordinates of degree <= maxdeg.
  Vec mul(const Vec& a, const Vec& b, unsigned maxdeg = UINT_MAX) const {
    const std::size_t d = dim();
    Vec acc = zero();
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < d; ++j)
      if (!F::is_zero(b[j])) nb.push_back(j);
    for (std::size_t i = 0; i < d; ++i) {
      if (F::is_zero(a[i])) continue;
      for (auto j : nb) {
        if (degrees_[i] + degrees_[j] > maxdeg) break;
        const auto idx = table_[i * d + j];
        if (idx < 0) continue;
        const Element s = field_.mul(a[i], b[j]);
        for (const auto& [k, e] : products_[static_cast<std::size_t>(idx)]) {
          if (degrees_[k] > maxdeg) break;
          field_.axpy(acc[k], s, e);
        }
      }
    }
    return acc;
  }

  Sparse mul_basis_sparse(std::size_t i, const Vec& b) const {
    return exact::to_sparse(field_, mul(unit(i), b));
  }

  // Least t with a in m^t; dim() + 1 style sentinel UINT_MAX for zero.
  unsigned order(const Vec& a) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!F::is_zero(a[i])) return degrees_[i];
    return UINT_MAX;
  }
  bool is_zero(const Vec& a) const {
    for (const auto& e : a)
      if (!F::is_zero(e)) return false;
    return true;
  }

  // A/m^c; the prefix of the basis of degree < c.
  ArtinAlgebra restrict_to(unsigned c) const {
    const std::size_t n = prefix_below(c);
    std::vector<std::int32_t> table(n * n, -1);
    std::vector<Sparse> products;
    std::unordered_map<std::int32_t, std::int32_t> remap;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto idx = table_[i * dim() + j];
        if (idx < 0) continue;
        auto it = remap.find(idx);
        if (it == remap.end()) {
          Sparse s;
          for (const auto& [k, e] : products_[static_cast<std::size_t>(idx)])
            if (k < n) s.emplace_back(k, e);
          const std::int32_t ni = s.empty() ? -1 : static_cast<std::int32_t>(products.size());
          if (!s.empty()) products.push_back(std::move(s));
          it = remap.emplace(idx, ni).first;
        }
        table[i * n + j] = it->second;
      }
    auto cut = [n](const Vec& v) { return Vec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)); };
    std::vector<Vec> vimg;
    for (const auto& v : var_images_) vimg.push_back(cut(v));
    ArtinAlgebra r(field_, std::vector<poly::Monomial>(basis_.begin(), basis_.begin() + static_cast<std::ptrdiff_t>(n)),
                   vars_, std::move(table), std::move(products), std::move(vimg), graded_);
    if (tuple_images_) {
      std::vector<Vec> t;
      for (const auto& v : *tuple_images_) t.push_back(cut(v));
      r.set_tuple_images(std::move(t));
    }
    return r;
  }

  // Same basis and structure constants with scalars mapped by `emb`.
  template <class G, class Map>
  ArtinAlgebra<G> map_scalars(const G& target, const Map& emb) const {
    std::vector<exact::SparseVec<G>> products;
    for (const auto& s : products_) {
      exact::SparseVec<G> t;
      for (const auto& [k, e] : s) t.emplace_back(k, emb(e));
      products.push_back(std::move(t));
    }
    auto mapv = [&](const Vec& v) {
      std::vector<typename G::Element> out;
      for (const auto& e : v) out.push_back(emb(e));
      return out;
    };
    std::vector<std::vector<typename G::Element>> vimg;
    for (const auto& v : var_images_) vimg.push_back(mapv(v));
    ArtinAlgebra<G> r(target, basis_, vars_, table_, std::move(products), std::move(vimg), graded_);
    if (tuple_images_) {
      std::vector<std::vector<typename G::Element>> t;
      for (const auto& v : *tuple_images_) t.push_back(mapv(v));
      r.set_tuple_images(std::move(t));
    }
    return r;
  }

  std::string basis_name(std::size_t i) const { return basis_[i].to_string(vars_); }

  std::string element_to_string(const Vec& v) const {
    poly::Poly<F> p(field_, vars_.size());
    for (std::size_t i = 0; i < v.size(); ++i) p.add_term(basis_[i], v[i]);
    return p.to_string(vars_);
  }

 private:
  F field_;
  std::vector<poly::Monomial> basis_;
  std::vector<std::string> vars_;
  std::vector<std::int32_t> table_;
  std::vector<Sparse> products_;
  std::vector<Vec> var_images_;
  std::optional<std::vector<Vec>> tuple_images_;
  std::vector<unsigned> degrees_;
  bool graded_ = false;
};

using AnyAlgebra = std::variant<ArtinAlgebra<exact::Rationals>, ArtinAlgebra<exact::GaloisField>>;

}  // namespace jetmetric::artin
