#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/echelon.hpp"
#include "jetmetric/poly/quotient.hpp"
#include "jetmetric/presentation/presentation.hpp"

namespace jetmetric::artin {

template <class F>
bool all_homogeneous(const std::vector<poly::Poly<F>>& gens) {
  for (const auto& g : gens)
    if (!g.is_homogeneous()) return false;
  return true;
}

// R/m^n for R = k[x]_(x) / I.
template <class F>
ArtinAlgebra<F> jet(const pres::Presentation<F>& p, unsigned n, const poly::QuotientLimits& limits = {}) {
  const auto q = poly::truncated_quotient(p.field, p.nvars(), p.gens, n, limits);
  return ArtinAlgebra<F>::from_quotient(q, p.vars, all_homogeneous(p.gens));
}

struct HilbertFunction {
  std::size_t length = 0;
  std::vector<std::size_t> hf;
};

// hf[i] = dim m^i/m^{i+1}, read off the adapted basis.
template <class F>
HilbertFunction hilbert_function(const ArtinAlgebra<F>& a) {
  HilbertFunction out{a.dim(), {}};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const unsigned d = a.degree(i);
    if (out.hf.size() <= d) out.hf.resize(d + 1, 0);
    ++out.hf[d];
  }
  return out;
}

template <class F>
unsigned nilpotency_index(const ArtinAlgebra<F>& a) {
  if (a.is_zero_ring()) fail(ErrorKind::ZeroRing, "nilpotency index of the zero ring");
  return a.max_degree() + 1;
}

template <class F>
struct Socle {
  std::size_t dim = 0;
  std::vector<typename ArtinAlgebra<F>::Vec> basis;
};

// ann(m^i): elements killed by the degree-i basis elements, which generate m^i.
template <class F>
Socle<F> annihilator_of_power(const ArtinAlgebra<F>& a, unsigned i) {
  if (a.is_zero_ring()) fail(ErrorKind::ZeroRing, "annihilator in the zero ring");
  const auto gens = a.indices_of_degree(i);
  const std::size_t d = a.dim();
  std::vector<exact::SparseVec<F>> images;
  images.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    exact::SparseVec<F> img;
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (const auto& [k, e] : a.product(gens[g], j)) img.emplace_back(static_cast<std::uint32_t>(g * d + k), e);
    images.push_back(std::move(img));
  }
  Socle<F> out;
  for (const auto& k : exact::kernel_of_images(a.field(), images, gens.size() * d))
    out.basis.push_back(exact::to_dense(a.field(), k, d));
  out.dim = out.basis.size();
  return out;
}

// {a : a m = 0}, as the kernel of multiplication by the generators of m.
template <class F>
Socle<F> socle(const ArtinAlgebra<F>& a) {
  if (a.is_zero_ring()) fail(ErrorKind::ZeroRing, "socle of the zero ring");
  const std::size_t d = a.dim();
  const auto& gens = a.var_images();
  std::vector<exact::SparseVec<F>> images;
  images.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    exact::SparseVec<F> img;
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (const auto& [k, e] : a.mul_basis_sparse(j, gens[g]))
        img.emplace_back(static_cast<std::uint32_t>(g * d + k), e);
    images.push_back(std::move(img));
  }
  Socle<F> out;
  for (const auto& k : exact::kernel_of_images(a.field(), images, gens.size() * d))
    out.basis.push_back(exact::to_dense(a.field(), k, d));
  out.dim = out.basis.size();
  return out;
}

template <class F>
bool is_gorenstein_artinian(const ArtinAlgebra<F>& a) {
  return socle(a).dim == 1;
}

// Length of R/(I + x R) found by Nakayama: once dim(A/m^c) = dim(A/m^{c+1})
// the local quotient is already m^c-truncated.
template <class F>
std::size_t local_colength(const F& field, std::size_t nvars, const std::vector<poly::Poly<F>>& gens,
                           const poly::QuotientLimits& limits, unsigned max_cap = 256) {
  for (unsigned cap = 8; cap <= max_cap; cap *= 2) {
    std::optional<poly::TruncatedQuotient<F>> q;
    try {
      q = poly::truncated_quotient(field, nvars, gens, cap, limits);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Capacity) break;
      throw;
    }
    for (unsigned c = 1; c < cap; ++c)
      if (q->dim_below(c) == q->dim_below(c + 1)) return q->dim_below(c);
  }
  fail(ErrorKind::NotPrimary, "the ideal is not primary to the maximal ideal within the supported caps");
}

// R/(I + (x_1^n, ..., x_s^n)) with the tuple images recorded.
template <class F>
ArtinAlgebra<F> defpair_jet(const pres::Presentation<F>& p, unsigned n, const poly::QuotientLimits& limits = {}) {
  if (!p.tuple) fail(ErrorKind::Usage, "deformation pair requires a tuple");
  if (n == 0) fail(ErrorKind::Range, "deformation order must be positive");
  const auto& tuple = *p.tuple;
  auto with = p.gens;
  for (const auto& t : tuple) with.push_back(t);
  const std::size_t l = local_colength(p.field, p.nvars(), with, limits);
  auto gens = p.gens;
  for (const auto& t : tuple) gens.push_back(t.pow(n));
  // m^l lies in xR, hence m^{l s n} lies in x^[n] R.
  const std::uint64_t bound = static_cast<std::uint64_t>(l) * tuple.size() * n + 1;
  if (bound > 4096) fail(ErrorKind::Capacity, "deformation jet needs truncation order " + std::to_string(bound));
  const auto q = poly::truncated_quotient(p.field, p.nvars(), gens, static_cast<unsigned>(bound), limits);
  bool homogeneous = all_homogeneous(p.gens) && all_homogeneous(tuple);
  auto a = ArtinAlgebra<F>::from_quotient(q, p.vars, homogeneous);
  std::vector<typename ArtinAlgebra<F>::Vec> timg;
  for (const auto& t : tuple) timg.push_back(exact::to_dense(p.field, q.normal_form(t), q.dim()));
  a.set_tuple_images(std::move(timg));
  return a;
}

// Scalars extended from F_{p^m} to the standard F_{p^{m'}}.
inline ArtinAlgebra<exact::GaloisField> base_change(const ArtinAlgebra<exact::GaloisField>& a, unsigned m_prime) {
  const auto& f = a.field();
  if (m_prime == 0 || m_prime % f.degree() != 0)
    fail(ErrorKind::Field, "extension degree " + std::to_string(m_prime) + " is not a multiple of " +
                               std::to_string(f.degree()));
  if (m_prime == f.degree()) return a;
  const auto big = exact::GaloisField::standard(f.p(), m_prime);
  const exact::FieldEmbedding emb(f, big);
  return a.map_scalars(big, emb);
}

inline ArtinAlgebra<exact::Rationals> base_change(const ArtinAlgebra<exact::Rationals>&, unsigned) {
  fail(ErrorKind::Field, "base change of rational algebras is not supported");
}

}  // namespace jetmetric::artin
