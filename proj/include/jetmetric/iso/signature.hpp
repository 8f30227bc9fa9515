#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/artin/operations.hpp"
#include "jetmetric/exactcore/echelon.hpp"

namespace jetmetric::iso {

struct InvariantSignature {
  std::size_t length = 0;
  std::size_t embdim = 0;
  std::vector<std::size_t> hf;
  unsigned nilpotency = 0;
  std::size_t socle_dim = 0;
  // dim ann(m^i) for i = 1 .. nilpotency - 1.
  std::vector<std::size_t> annihilator_profile;
  // rank of gr_d -> Hom(gr_1, gr_{d+1}) for d = 1 .. nilpotency - 2.
  std::vector<std::size_t> multiplication_rank;
  std::optional<std::vector<std::size_t>> betti_prefix;

  bool operator==(const InvariantSignature&) const = default;
};

struct Separator {
  std::string invariant;
  std::string value_a;
  std::string value_b;
};

inline std::string format_list(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "]";
  return out.str();
}

// Annihilator profiles get expensive on long algebras; above this length
// they are left empty for both sides (lengths are compared first).
inline constexpr std::size_t kAnnihilatorProfileMaxLength = 400;

template <class F>
std::vector<std::size_t> multiplication_rank_profile(const artin::ArtinAlgebra<F>& a) {
  std::vector<std::size_t> out;
  if (a.is_zero_ring()) return out;
  const unsigned top = a.max_degree();
  const auto g1 = a.indices_of_degree(1);
  for (unsigned d = 1; d + 1 <= top; ++d) {
    const auto gd = a.indices_of_degree(d);
    const auto gnext = a.indices_of_degree(d + 1);
    if (gnext.empty() || gd.empty()) {
      out.push_back(0);
      continue;
    }
    const std::size_t lo = gnext.front(), width = gnext.size();
    std::vector<exact::SparseVec<F>> rows;
    for (auto j : gd) {
      exact::SparseVec<F> row;
      for (std::size_t i = 0; i < g1.size(); ++i)
        for (const auto& [k, e] : a.product(g1[i], j))
          if (k >= lo && k < lo + width) row.emplace_back(static_cast<std::uint32_t>(i * width + (k - lo)), e);
      rows.push_back(std::move(row));
    }
    out.push_back(exact::sparse_rank(a.field(), rows, g1.size() * width));
  }
  return out;
}

template <class F>
InvariantSignature invariant_signature(const artin::ArtinAlgebra<F>& a) {
  InvariantSignature s;
  if (a.is_zero_ring()) return s;
  const auto h = artin::hilbert_function(a);
  s.length = h.length;
  s.hf = h.hf;
  s.embdim = h.hf.size() > 1 ? h.hf[1] : 0;
  s.nilpotency = artin::nilpotency_index(a);
  s.socle_dim = artin::socle(a).dim;
  if (a.dim() <= kAnnihilatorProfileMaxLength)
    for (unsigned i = 1; i < s.nilpotency; ++i) s.annihilator_profile.push_back(artin::annihilator_of_power(a, i).dim);
  s.multiplication_rank = multiplication_rank_profile(a);
  return s;
}

// First differing invariant, in a fixed order.
inline std::optional<Separator> compare_signatures(const InvariantSignature& a, const InvariantSignature& b) {
  auto num = [](std::size_t v) { return std::to_string(v); };
  if (a.length != b.length) return Separator{"length", num(a.length), num(b.length)};
  if (a.embdim != b.embdim) return Separator{"embdim", num(a.embdim), num(b.embdim)};
  if (a.hf != b.hf) return Separator{"hilbert_function", format_list(a.hf), format_list(b.hf)};
  if (a.nilpotency != b.nilpotency) return Separator{"nilpotency_index", num(a.nilpotency), num(b.nilpotency)};
  if (a.socle_dim != b.socle_dim) return Separator{"socle_dimension", num(a.socle_dim), num(b.socle_dim)};
  if (a.annihilator_profile != b.annihilator_profile)
    return Separator{"annihilator_profile", format_list(a.annihilator_profile), format_list(b.annihilator_profile)};
  if (a.multiplication_rank != b.multiplication_rank)
    return Separator{"multiplication_rank_profile", format_list(a.multiplication_rank),
                     format_list(b.multiplication_rank)};
  if (a.betti_prefix && b.betti_prefix && *a.betti_prefix != *b.betti_prefix)
    return Separator{"betti_prefix", format_list(*a.betti_prefix), format_list(*b.betti_prefix)};
  return std::nullopt;
}

}  // namespace jetmetric::iso
