#pragma once

// Witnesses of isomorphism and their mechanical verification.
//
// A witness for A -> B lists the images, in coordinates of B, of the intrinsic
// generators of A: the basis elements of degree 1, which minimally generate
// the maximal ideal. The algebra map is rebuilt from these images on every
// basis element of A and checked independently of how it was found.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/artin/operations.hpp"
#include "jetmetric/exactcore/echelon.hpp"
#include "jetmetric/exactcore/matrix.hpp"
#include "jetmetric/poly/monomial.hpp"

namespace jetmetric::iso {

template <class F>
struct Witness {
  F field;
  std::vector<std::size_t> generators;
  std::vector<std::vector<typename F::Element>> images;
};

// Polynomials in the intrinsic generators X_1..X_r of an algebra, over the
// monomials of degree < nilpotency index.
struct GeneratorMonomials {
  std::size_t r = 0;
  std::vector<poly::Monomial> monos;
  std::vector<std::size_t> parent;  // monos[k] = monos[parent[k]] * X_{var[k]}
  std::vector<std::size_t> var;

  GeneratorMonomials(std::size_t nvars, unsigned below) : r(nvars) {
    monos = poly::monomials_below(nvars, below);
    std::unordered_map<poly::Monomial, std::size_t, poly::MonomialHash> index;
    for (std::size_t k = 0; k < monos.size(); ++k) index.emplace(monos[k], k);
    parent.assign(monos.size(), 0);
    var.assign(monos.size(), 0);
    for (std::size_t k = 1; k < monos.size(); ++k) {
      poly::Monomial m = monos[k];
      std::size_t i = 0;
      while (m.exps[i] == 0) ++i;
      m.exps[i] -= 1;
      parent[k] = index.at(m);
      var[k] = i;
    }
  }
  std::size_t size() const { return monos.size(); }
};

// Values of every generator monomial at the tuple `b` in algebra `a`.
template <class F>
std::vector<typename artin::ArtinAlgebra<F>::Vec> evaluate_monomials(
    const artin::ArtinAlgebra<F>& a, const GeneratorMonomials& gm,
    const std::vector<typename artin::ArtinAlgebra<F>::Vec>& b, bool lowest_degree_only = false) {
  std::vector<typename artin::ArtinAlgebra<F>::Vec> vals(gm.size());
  if (gm.size() == 0) return vals;
  vals[0] = a.one();
  for (std::size_t k = 1; k < gm.size(); ++k) {
    const unsigned maxdeg = lowest_degree_only ? gm.monos[k].degree() : UINT_MAX;
    vals[k] = a.mul(vals[gm.parent[k]], b[gm.var[k]], maxdeg);
  }
  return vals;
}

template <class F>
typename artin::ArtinAlgebra<F>::Vec evaluate_poly(const artin::ArtinAlgebra<F>& a, const exact::SparseVec<F>& p,
                                                   const std::vector<typename artin::ArtinAlgebra<F>::Vec>& vals) {
  auto acc = a.zero();
  const auto& f = a.field();
  for (const auto& [k, c] : p)
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (!F::is_zero(vals[k][i])) f.axpy(acc[i], c, vals[k][i]);
  return acc;
}

// Expresses elements of an algebra as polynomials in its intrinsic
// generators, and exposes the relations among them.
template <class F>
class GeneratorPresentation {
 public:
  using Vec = typename artin::ArtinAlgebra<F>::Vec;

  explicit GeneratorPresentation(const artin::ArtinAlgebra<F>& a)
      : field_(a.field()),
        dim_(a.dim()),
        generators_(a.indices_of_degree(1)),
        monomials_(generators_.size(), a.is_zero_ring() ? 0 : artin::nilpotency_index(a)),
        solver_(a.field(), a.dim() + monomials_.size()) {
    std::vector<Vec> gens;
    for (auto g : generators_) gens.push_back(a.unit(g));
    values_ = evaluate_monomials(a, monomials_, gens);
    std::vector<exact::SparseVec<F>> images;
    for (const auto& v : values_) images.push_back(exact::to_sparse(field_, v));
    relations_ = exact::kernel_of_images(field_, images, dim_);
    for (std::size_t k = 0; k < images.size(); ++k) {
      auto row = images[k];
      row.emplace_back(static_cast<std::uint32_t>(dim_ + k), field_.one());
      solver_.insert(row);
    }
  }

  const std::vector<std::size_t>& generators() const { return generators_; }
  const GeneratorMonomials& monomials() const { return monomials_; }
  const std::vector<exact::SparseVec<F>>& relations() const { return relations_; }

  // Some polynomial whose value is v.
  exact::SparseVec<F> preimage(const Vec& v) {
    auto row = exact::to_sparse(field_, v);
    auto red = solver_.reduce(row);
    exact::SparseVec<F> out;
    for (const auto& [c, e] : red) {
      if (c < dim_) fail(ErrorKind::Inconsistency, "element outside the span of generator monomials");
      out.emplace_back(static_cast<std::uint32_t>(c - dim_), field_.neg(e));
    }
    return out;
  }

 private:
  F field_;
  std::size_t dim_;
  std::vector<std::size_t> generators_;
  GeneratorMonomials monomials_;
  exact::Echelon<F> solver_;
  std::vector<Vec> values_;
  std::vector<exact::SparseVec<F>> relations_;
};

// The linear map on the basis of A induced by generator images in B.
template <class F>
std::vector<typename artin::ArtinAlgebra<F>::Vec> induced_linear_map(const artin::ArtinAlgebra<F>& a,
                                                                    const artin::ArtinAlgebra<F>& b,
                                                                    const Witness<F>& w) {
  GeneratorPresentation<F> gp(a);
  if (gp.generators() != w.generators) fail(ErrorKind::Inconsistency, "witness generators do not match the source");
  const auto vals = evaluate_monomials(b, gp.monomials(), w.images);
  std::vector<typename artin::ArtinAlgebra<F>::Vec> phi;
  for (std::size_t j = 0; j < a.dim(); ++j) phi.push_back(evaluate_poly(b, gp.preimage(a.unit(j)), vals));
  return phi;
}

template <class F>
typename artin::ArtinAlgebra<F>::Vec apply_linear(const artin::ArtinAlgebra<F>& b,
                                                  const std::vector<typename artin::ArtinAlgebra<F>::Vec>& phi,
                                                  const typename artin::ArtinAlgebra<F>::Vec& v) {
  auto acc = b.zero();
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (F::is_zero(v[j])) continue;
    for (std::size_t i = 0; i < acc.size(); ++i) b.field().axpy(acc[i], v[j], phi[j][i]);
  }
  return acc;
}

struct VerificationReport {
  bool unital = false;
  bool multiplicative = false;
  bool bijective = false;
  bool tuple_preserved = true;
  bool ok() const { return unital && multiplicative && bijective && tuple_preserved; }
};

// Checks that the induced map is a unital ring isomorphism: multiplicativity
// on generator-times-basis products implies it on all products.
template <class F>
VerificationReport verify_witness(const artin::ArtinAlgebra<F>& a, const artin::ArtinAlgebra<F>& b,
                                  const Witness<F>& w) {
  VerificationReport rep;
  if (a.dim() != b.dim()) return rep;
  if (a.dim() == 0) return {true, true, true, true};
  if (w.images.size() != w.generators.size()) return rep;
  for (const auto& img : w.images)
    if (img.size() != b.dim() || b.order(img) == 0) return rep;
  const auto phi = induced_linear_map(a, b, w);
  rep.unital = phi[0] == b.one();
  rep.multiplicative = true;
  for (std::size_t g = 0; g < w.generators.size() && rep.multiplicative; ++g) {
    const auto gi = w.generators[g];
    if (phi[gi] != w.images[g]) rep.multiplicative = false;
    for (std::size_t j = 0; j < a.dim() && rep.multiplicative; ++j) {
      const auto lhs = apply_linear(b, phi, exact::to_dense(a.field(), a.product(gi, j), a.dim()));
      const auto rhs = b.mul(phi[gi], phi[j]);
      if (lhs != rhs) rep.multiplicative = false;
    }
  }
  exact::Matrix<F> m(b.field(), b.dim(), a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t i = 0; i < b.dim(); ++i) m(i, j) = phi[j][i];
  rep.bijective = exact::rank(m) == a.dim();
  if (a.tuple_images() || b.tuple_images()) {
    rep.tuple_preserved = a.tuple_images() && b.tuple_images() && a.tuple_images()->size() == b.tuple_images()->size();
    for (std::size_t t = 0; rep.tuple_preserved && t < a.tuple_images()->size(); ++t)
      rep.tuple_preserved = apply_linear(b, phi, (*a.tuple_images())[t]) == (*b.tuple_images())[t];
  }
  return rep;
}

// Witness for A/m^c -> B/m^c obtained by truncating images.
template <class F>
Witness<F> restrict_witness(const Witness<F>& w, const artin::ArtinAlgebra<F>& b, unsigned c) {
  Witness<F> out{w.field, {}, {}};
  if (c <= 1) return out;
  const std::size_t n = b.prefix_below(c);
  out.generators = w.generators;
  for (const auto& img : w.images)
    out.images.emplace_back(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

// psi o phi for phi: A -> B and psi: B -> C over a common field.
template <class F>
Witness<F> compose_witnesses(const artin::ArtinAlgebra<F>& b, const artin::ArtinAlgebra<F>& c, const Witness<F>& phi,
                             const Witness<F>& psi) {
  const auto psi_lin = induced_linear_map(b, c, psi);
  Witness<F> out{phi.field, phi.generators, {}};
  for (const auto& img : phi.images) out.images.push_back(apply_linear(c, psi_lin, img));
  return out;
}

template <class F, class G, class Map>
Witness<G> map_witness(const Witness<F>& w, const G& target, const Map& emb) {
  Witness<G> out{target, w.generators, {}};
  for (const auto& img : w.images) {
    std::vector<typename G::Element> v;
    for (const auto& e : img) v.push_back(emb(e));
    out.images.push_back(std::move(v));
  }
  return out;
}

}  // namespace jetmetric::iso
