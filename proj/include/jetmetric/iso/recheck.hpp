#pragma once

// Second computations of the separating invariants. These avoid the adapted
// basis: powers of the maximal ideal are built as spans of products of the
// variable images, so they can catch mistakes in the degree bookkeeping.

#include <string>
#include <vector>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/artin/operations.hpp"
#include "jetmetric/exactcore/echelon.hpp"
#include "jetmetric/iso/signature.hpp"

namespace jetmetric::iso {

// Bases of m, m^2, ... , ending with the first zero power.
template <class F>
std::vector<std::vector<exact::SparseVec<F>>> power_spans(const artin::ArtinAlgebra<F>& a) {
  std::vector<std::vector<exact::SparseVec<F>>> out;
  if (a.is_zero_ring()) return out;
  auto span_of = [&](const std::vector<typename artin::ArtinAlgebra<F>::Vec>& gens) {
    exact::Echelon<F> ech(a.field(), a.dim());
    for (const auto& g : gens) ech.insert(exact::to_sparse(a.field(), g));
    ech.back_substitute();
    return ech.rows();
  };
  std::vector<typename artin::ArtinAlgebra<F>::Vec> gens;
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (const auto& v : a.var_images()) gens.push_back(a.mul(a.unit(j), v));
  auto current = span_of(gens);
  while (true) {
    out.push_back(current);
    if (current.empty()) break;
    std::vector<typename artin::ArtinAlgebra<F>::Vec> next;
    for (const auto& row : current)
      for (const auto& v : a.var_images()) next.push_back(a.mul(exact::to_dense(a.field(), row, a.dim()), v));
    current = span_of(next);
  }
  return out;
}

template <class F>
std::vector<std::size_t> hilbert_function_by_products(const artin::ArtinAlgebra<F>& a) {
  std::vector<std::size_t> hf;
  if (a.is_zero_ring()) return hf;
  const auto powers = power_spans(a);
  std::size_t prev = a.dim();
  for (const auto& p : powers) {
    hf.push_back(prev - p.size());
    prev = p.size();
    if (p.empty()) break;
  }
  return hf;
}

template <class F>
std::size_t annihilator_dim_by_products(const artin::ArtinAlgebra<F>& a, unsigned i) {
  const auto powers = power_spans(a);
  const auto& gens = powers[i - 1];
  const std::size_t d = a.dim();
  std::vector<exact::SparseVec<F>> images;
  for (std::size_t j = 0; j < d; ++j) {
    exact::SparseVec<F> img;
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (const auto& [k, e] : a.mul_basis_sparse(j, exact::to_dense(a.field(), gens[g], d)))
        img.emplace_back(static_cast<std::uint32_t>(g * d + k), e);
    images.push_back(std::move(img));
  }
  return exact::kernel_of_images(a.field(), images, gens.size() * d).size();
}

template <class F>
std::string reevaluate_invariant(const artin::ArtinAlgebra<F>& a, const std::string& name) {
  if (name == "length") return std::to_string(a.dim());
  const auto hf = hilbert_function_by_products(a);
  if (name == "embdim") return std::to_string(hf.size() > 1 ? hf[1] : 0);
  if (name == "hilbert_function") {
    auto trimmed = hf;
    while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
    return format_list(trimmed);
  }
  if (name == "nilpotency_index") {
    std::size_t n = 0;
    for (auto h : hf)
      if (h > 0) ++n;
    return std::to_string(n);
  }
  if (name == "socle_dimension") return std::to_string(annihilator_dim_by_products(a, 1));
  if (name == "annihilator_profile") {
    std::vector<std::size_t> prof;
    if (a.dim() <= kAnnihilatorProfileMaxLength)
      for (unsigned i = 1; i < artin::nilpotency_index(a); ++i) prof.push_back(annihilator_dim_by_products(a, i));
    return format_list(prof);
  }
  if (name == "multiplication_rank_profile") return format_list(multiplication_rank_profile(a));
  fail(ErrorKind::Usage, "unknown invariant " + name);
}

template <class F>
bool recheck_separator(const artin::ArtinAlgebra<F>& a, const artin::ArtinAlgebra<F>& b, const Separator& s) {
  const auto va = reevaluate_invariant(a, s.invariant);
  const auto vb = reevaluate_invariant(b, s.invariant);
  return va == s.value_a && vb == s.value_b && va != vb;
}

}  // namespace jetmetric::iso
