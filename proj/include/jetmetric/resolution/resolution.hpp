#pragma once

// Graded minimal free resolutions computed one internal degree at a time.
//
// The ring is a finite-dimensional algebra with homogeneous structure
// constants (a jet of a graded presentation agrees with the ring in every
// degree below its order). A free module over it is a list of generator
// degrees; its degree-t piece has coordinates (generator g, basis element b)
// with deg b = t - deg g. Syzygies of step i are the kernel of d_i, and new
// minimal generators in degree t are the part of that kernel not already in
// R_1 times the kernel in degree t - 1.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "jetmetric/artin/operations.hpp"
#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/echelon.hpp"
#include "jetmetric/hilbert/hilbert.hpp"
#include "jetmetric/presentation/presentation.hpp"

namespace jetmetric::resolution {

struct ResolutionData {
  // betti[i][j] for internal degrees j <= internal_degree_cap.
  std::vector<std::vector<std::size_t>> betti;
  std::vector<std::size_t> ranks;
  // Unset when the resolution is still nonzero at the homological cap.
  std::optional<std::size_t> pd;
  unsigned internal_degree_cap = 0;
  unsigned homological_cap = 0;
  // Some kernel is nonzero in the top internal degree, so generators above
  // the cap are not excluded.
  bool degree_capped = false;
  bool exact = true;
  bool minimal = true;
  // Set by minimal_resolution_of_quotient when the graded Betti numerator
  // equals the Hilbert series numerator.
  bool complete = false;

  std::string pd_string() const { return pd ? std::to_string(*pd) : ">= " + std::to_string(homological_cap); }
};

namespace detail {

template <class F>
class GradedFrame {
 public:
  using Sparse = exact::SparseVec<F>;

  GradedFrame(const artin::ArtinAlgebra<F>& a, unsigned dcap) : a_(a), dcap_(dcap) {
    by_deg_.resize(dcap + 1);
    pos_.assign(a.dim(), 0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a.degree(i) > dcap) continue;
      pos_[i] = static_cast<std::uint32_t>(by_deg_[a.degree(i)].size());
      by_deg_[a.degree(i)].push_back(i);
    }
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = i; j < a.dim(); ++j)
        for (const auto& [k, e] : a.product(i, j))
          if (a.degree(k) != a.degree(i) + a.degree(j))
            fail(ErrorKind::Grading, "structure constants are not homogeneous");
  }

  const artin::ArtinAlgebra<F>& algebra() const { return a_; }
  const F& field() const { return a_.field(); }
  unsigned dcap() const { return dcap_; }
  const std::vector<std::size_t>& of_degree(long d) const {
    static const std::vector<std::size_t> none;
    return d < 0 || d > static_cast<long>(dcap_) ? none : by_deg_[static_cast<std::size_t>(d)];
  }
  std::uint32_t pos(std::size_t i) const { return pos_[i]; }

 private:
  const artin::ArtinAlgebra<F>& a_;
  unsigned dcap_;
  std::vector<std::vector<std::size_t>> by_deg_;
  std::vector<std::uint32_t> pos_;
};

struct Layout {
  std::vector<std::uint32_t> offset;  // per generator
  std::vector<std::pair<std::uint32_t, std::size_t>> entries;  // (generator, basis index)
  std::size_t size() const { return entries.size(); }
};

template <class F>
struct FreeModule {
  std::vector<unsigned> gen_deg;
  std::vector<Layout> layouts;  // per internal degree 0..dcap

  FreeModule(const GradedFrame<F>& R, std::vector<unsigned> degs) : gen_deg(std::move(degs)) {
    layouts.resize(R.dcap() + 1);
    for (unsigned t = 0; t <= R.dcap(); ++t) {
      auto& L = layouts[t];
      for (std::uint32_t g = 0; g < gen_deg.size(); ++g) {
        L.offset.push_back(static_cast<std::uint32_t>(L.entries.size()));
        for (auto b : R.of_degree(static_cast<long>(t) - static_cast<long>(gen_deg[g]))) L.entries.emplace_back(g, b);
      }
    }
  }
  std::size_t dim(unsigned t) const { return t < layouts.size() ? layouts[t].size() : 0; }
};

// b * v for v in degree s of the module; the result lives in degree s + deg b.
template <class F>
exact::SparseVec<F> shift(const GradedFrame<F>& R, const FreeModule<F>& M, unsigned s, std::size_t b,
                          const exact::SparseVec<F>& v) {
  const F& f = R.field();
  const unsigned t = s + R.algebra().degree(b);
  std::vector<typename F::Element> acc(M.dim(t), f.zero());
  if (acc.empty()) return {};
  const auto& src = M.layouts[s];
  const auto& dst = M.layouts[t];
  for (const auto& [c, e] : v) {
    const auto [g, b2] = src.entries[c];
    for (const auto& [k, pe] : R.algebra().product(b, b2)) f.axpy(acc[dst.offset[g] + R.pos(k)], e, pe);
  }
  return exact::to_sparse(f, acc);
}

template <class F>
ResolutionData resolve(const GradedFrame<F>& R, std::vector<std::vector<exact::SparseVec<F>>> kernel,
                       unsigned hcap) {
  using Sparse = exact::SparseVec<F>;
  const F& f = R.field();
  const unsigned dcap = R.dcap();
  ResolutionData out;
  out.internal_degree_cap = dcap;
  out.homological_cap = hcap;
  FreeModule<F> current(R, {0});
  out.betti.push_back(std::vector<std::size_t>(dcap + 1, 0));
  out.betti[0][0] = 1;

  // Module Hilbert function, for the alternating-sum check.
  std::vector<long> module_hf(dcap + 1);
  for (unsigned t = 0; t <= dcap; ++t) module_hf[t] = static_cast<long>(current.dim(t) - kernel[t].size());
  std::vector<long> alternating(dcap + 1, 0);
  for (unsigned t = 0; t <= dcap; ++t) alternating[t] = static_cast<long>(current.dim(t));

  auto kernel_empty = [&](const std::vector<std::vector<Sparse>>& k) {
    return std::all_of(k.begin(), k.end(), [](const auto& v) { return v.empty(); });
  };

  for (unsigned i = 0;; ++i) {
    if (kernel_empty(kernel)) {
      out.pd = i;
      break;
    }
    if (i == hcap) break;
    // Minimal generators of the kernel, degree by degree.
    std::vector<unsigned> degs;
    std::vector<Sparse> images;
    for (unsigned t = 0; t <= dcap; ++t) {
      if (kernel[t].empty()) continue;
      exact::Echelon<F> span(f, current.dim(t));
      if (t > 0)
        for (auto b : R.of_degree(1))
          for (const auto& k : kernel[t - 1]) span.insert(shift(R, current, t - 1, b, k));
      for (const auto& k : kernel[t])
        if (span.insert(k)) {
          degs.push_back(t);
          images.push_back(k);
          const auto& L = current.layouts[t];
          for (const auto& [c, e] : k)
            if (R.algebra().degree(L.entries[c].second) == 0) out.minimal = false;
        }
    }
    FreeModule<F> next(R, degs);
    std::vector<std::size_t> row(dcap + 1, 0);
    for (auto t : degs) ++row[t];
    out.betti.push_back(std::move(row));

    std::vector<std::vector<Sparse>> next_kernel(dcap + 1);
    for (unsigned t = 0; t <= dcap; ++t) {
      const auto& L = next.layouts[t];
      std::vector<Sparse> imgs;
      imgs.reserve(L.size());
      for (const auto& [g, b] : L.entries) imgs.push_back(shift(R, current, degs[g], b, images[g]));
      next_kernel[t] = exact::kernel_of_images(f, imgs, current.dim(t));
      // Exactness: the image of d_{i+1} fills the kernel of d_i.
      if (L.size() - next_kernel[t].size() != kernel[t].size()) out.exact = false;
      alternating[t] += (i % 2 == 0 ? -1 : 1) * static_cast<long>(L.size());
    }
    current = std::move(next);
    kernel = std::move(next_kernel);
  }
  // Where the last kernel vanishes, the alternating rank sum is the module's
  // Hilbert function.
  for (unsigned t = 0; t <= dcap; ++t)
    if (kernel[t].empty() && alternating[t] != module_hf[t]) out.exact = false;
  out.degree_capped = !kernel[dcap].empty();
  for (const auto& b : out.betti) {
    std::size_t s = 0;
    for (auto v : b) s += v;
    out.ranks.push_back(s);
  }
  return out;
}

inline void require_caps(unsigned hcap, unsigned dcap) {
  if (hcap < 1 || dcap < 1) fail(ErrorKind::Range, "resolution caps must be at least 1");
}

}  // namespace detail

// Betti numbers of the residue field over a graded Artinian algebra.
template <class F>
ResolutionData betti_residue_field(const artin::ArtinAlgebra<F>& a, unsigned hcap, unsigned dcap) {
  detail::require_caps(hcap, dcap);
  if (a.is_zero_ring()) fail(ErrorKind::ZeroRing, "residue field of the zero ring");
  detail::GradedFrame<F> R(a, dcap);
  // The maximal ideal: every coordinate of positive degree.
  std::vector<std::vector<exact::SparseVec<F>>> kernel(dcap + 1);
  for (unsigned t = 1; t <= dcap; ++t)
    for (std::uint32_t k = 0; k < R.of_degree(t).size(); ++k) kernel[t].push_back({{k, a.field().one()}});
  return detail::resolve(R, std::move(kernel), hcap);
}

template <class F>
ResolutionData betti_residue_field(const pres::Presentation<F>& p, unsigned hcap, unsigned dcap) {
  if (!p.graded()) fail(ErrorKind::Grading, "resolutions need a graded presentation");
  const auto a = artin::jet(p, dcap + 1);
  return betti_residue_field(a, hcap, dcap);
}

namespace detail {

// Resolution of S/I over S = k[vars], truncated at internal degree dcap.
template <class F>
ResolutionData resolve_quotient(const pres::Presentation<F>& p, unsigned dcap) {
  pres::Presentation<F> free = p;
  free.gens.clear();
  const auto S = artin::jet(free, dcap + 1, {1u << 20, 1u << 22});
  GradedFrame<F> R(S, dcap);
  std::unordered_map<poly::Monomial, std::size_t, poly::MonomialHash> index;
  for (std::size_t i = 0; i < S.dim(); ++i) index.emplace(S.basis()[i], i);
  std::vector<std::vector<exact::SparseVec<F>>> ideal(dcap + 1);
  for (unsigned t = 0; t <= dcap; ++t) {
    exact::Echelon<F> span(p.field, R.of_degree(t).size());
    for (const auto& g : p.gens) {
      if (g.is_zero() || g.degree() > t) continue;
      for (const auto& mu : poly::monomials_of_degree(p.nvars(), t - g.degree())) {
        exact::SparseVec<F> row;
        for (const auto& [m, c] : g.terms()) row.emplace_back(R.pos(index.at(m * mu)), c);
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        span.insert(row);
      }
    }
    ideal[t] = span.rows();
  }
  return resolve(R, std::move(ideal), static_cast<unsigned>(p.nvars()) + 1);
}

// (1 - t)^n times the Hilbert series of S/I.
template <class F>
std::vector<mpz_class> betti_numerator_target(const pres::Presentation<F>& p) {
  const unsigned n = static_cast<unsigned>(p.nvars());
  const unsigned N = hilbert::generator_degree_sum(p) + n + 2;
  const auto h = hilbert::hilbert_series(p, N);
  auto k = hilbert::times_one_minus_t_power(h.series_prefix, n);
  while (!k.empty() && k.back() == 0) k.pop_back();
  return k;
}

inline std::vector<mpz_class> betti_numerator(const ResolutionData& r) {
  std::vector<mpz_class> k;
  for (std::size_t i = 0; i < r.betti.size(); ++i)
    for (std::size_t j = 0; j < r.betti[i].size(); ++j) {
      if (r.betti[i][j] == 0) continue;
      if (k.size() <= j) k.resize(j + 1, 0);
      k[j] += (i % 2 == 0 ? 1 : -1) * static_cast<long>(r.betti[i][j]);
    }
  while (!k.empty() && k.back() == 0) k.pop_back();
  return k;
}

}  // namespace detail

// Minimal resolution of S/I over the polynomial ring. The internal degree cap
// starts one above the Betti numerator degree and grows until the computed
// table reproduces the Hilbert series numerator with a vanishing last kernel.
template <class F>
ResolutionData minimal_resolution_of_quotient(const pres::Presentation<F>& p, unsigned dcap = 0) {
  if (!p.graded()) fail(ErrorKind::Grading, "resolutions need a graded presentation");
  poly::require_homogeneous(p.gens);
  const auto target = detail::betti_numerator_target(p);
  unsigned maxdeg = 0;
  for (const auto& g : p.gens) maxdeg = std::max(maxdeg, g.degree());
  unsigned cap = dcap ? dcap : std::max<unsigned>(static_cast<unsigned>(target.size()) + 1, maxdeg + 1);
  for (int attempt = 0;; ++attempt) {
    auto r = detail::resolve_quotient(p, cap);
    r.complete = r.pd.has_value() && !r.degree_capped && detail::betti_numerator(r) == target;
    if (r.complete || dcap || attempt == 3) return r;
    cap += static_cast<unsigned>(p.nvars()) + 2;
  }
}

enum class Tri { no, yes, unknown };

inline std::string to_string(Tri t) { return t == Tri::yes ? "true" : t == Tri::no ? "false" : "unknown"; }

struct Classification {
  std::size_t depth = 0;
  std::size_t dim = 0;
  std::size_t pd = 0;
  std::size_t embdim = 0;
  bool regular = false;
  bool cohen_macaulay = false;
  Tri gorenstein = Tri::unknown;
  ResolutionData resolution;
};

template <class F>
Classification depth_and_classify(const pres::Presentation<F>& p) {
  if (!p.graded()) fail(ErrorKind::Grading, "classification needs a graded presentation");
  Classification c;
  const auto h = hilbert::hilbert_series(p, hilbert::default_prefix_length(p));
  c.dim = h.dim;
  c.resolution = minimal_resolution_of_quotient(p);
  if (!c.resolution.complete || !c.resolution.pd)
    fail(ErrorKind::Capacity, "could not certify a finite resolution of the quotient");
  c.pd = *c.resolution.pd;
  c.depth = p.nvars() - c.pd;
  const auto j2 = artin::hilbert_function(artin::jet(p, 2));
  c.embdim = j2.hf.size() > 1 ? j2.hf[1] : 0;
  c.regular = c.embdim == c.dim;
  c.cohen_macaulay = c.depth == c.dim;
  if (c.dim == 0) {
    // Artinian: the whole ring is the jet one above its top degree.
    const auto top = static_cast<unsigned>(h.rational_form->numerator_degree());
    c.gorenstein = artin::is_gorenstein_artinian(artin::jet(p, top + 1)) ? Tri::yes : Tri::no;
  } else if (c.cohen_macaulay) {
    c.gorenstein = c.resolution.ranks[c.pd] == 1 ? Tri::yes : Tri::no;
  }
  return c;
}

}  // namespace jetmetric::resolution
