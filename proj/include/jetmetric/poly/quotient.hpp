#pragma once

// Truncated quotients k[x]/(I + m^n) built from Macaulay matrices.
//
// Local presentations are handled without standard bases: the quotient
// R/(I + m^n) is supported at the origin only, so the global truncated
// quotient already equals the jet of the localized ring. Columns are ordered
// by ascending degree (descending lex within a degree), which makes the pivots
// the lowest-degree terms. Consequences relied on elsewhere:
//   * the basis is the set of standard monomials of a local degree ordering;
//   * the basis monomials of degree >= t span m^t in the quotient;
//   * for caps c <= n, the basis at cap c is the degree < c part of the basis
//     at cap n (jets are compatible quotients).

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/echelon.hpp"
#include "jetmetric/poly/poly.hpp"

namespace jetmetric::poly {

struct QuotientLimits {
  std::size_t max_dim = 2000;
  std::size_t max_columns = 400000;
};

template <class F>
struct TruncatedQuotient {
  using Element = typename F::Element;
  using Coords = exact::SparseVec<F>;

  F field;
  std::size_t nvars = 0;
  unsigned cap = 0;
  std::vector<Monomial> basis;
  // Every monomial of degree < cap mapped to coordinates over `basis`.
  std::unordered_map<Monomial, Coords, MonomialHash> nf_table;

  std::size_t dim() const { return basis.size(); }

  // Length of the jet at a smaller cap c <= cap.
  std::size_t dim_below(unsigned c) const {
    std::size_t n = 0;
    for (const auto& m : basis)
      if (m.degree() < c) ++n;
    return n;
  }

  Coords normal_form(const Monomial& m) const {
    if (m.degree() >= cap) return {};
    return nf_table.at(m);
  }

  Coords normal_form(const Poly<F>& p) const {
    std::vector<Element> acc(basis.size(), field.zero());
    for (const auto& [m, c] : p.terms()) {
      if (m.degree() >= cap) continue;
      for (const auto& [i, e] : nf_table.at(m)) field.axpy(acc[i], c, e);
    }
    return exact::to_sparse(field, acc);
  }
};

template <class F>
void require_local_generators(const std::vector<Poly<F>>& gens) {
  for (const auto& g : gens)
    if (!F::is_zero(g.constant_term()))
      fail(ErrorKind::ConstantTerm, "generator has a nonzero constant term");
}

template <class F>
TruncatedQuotient<F> truncated_quotient(const F& field, std::size_t nvars, const std::vector<Poly<F>>& gens,
                                        unsigned cap, const QuotientLimits& limits = {}) {
  require_local_generators(gens);
  TruncatedQuotient<F> q{field, nvars, cap, {}, {}};
  std::uint64_t ncols = 0;
  for (unsigned d = 0; d < cap; ++d) {
    ncols += count_of_degree(nvars, d);
    if (ncols > limits.max_columns)
      fail(ErrorKind::Capacity, "truncated quotient at order " + std::to_string(cap) + " needs more than " +
                                    std::to_string(limits.max_columns) + " monomials");
  }
  const auto columns = monomials_below(nvars, cap);
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  index.reserve(columns.size());
  for (std::uint32_t i = 0; i < columns.size(); ++i) index.emplace(columns[i], i);

  exact::Echelon<F> ech(field, columns.size());
  for (const auto& g : gens) {
    const auto t = g.truncated(cap);
    if (t.is_zero()) continue;
    const unsigned ord = t.order();
    for (const auto& mu : columns) {
      if (mu.degree() + ord >= cap) break;
      exact::SparseVec<F> row;
      for (const auto& [m, c] : t.terms()) {
        const Monomial prod = m * mu;
        if (prod.degree() < cap) row.emplace_back(index.at(prod), c);
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      ech.insert(row);
    }
  }
  ech.back_substitute();

  std::vector<std::int32_t> basis_pos(columns.size(), -1);
  for (std::uint32_t c = 0; c < columns.size(); ++c) {
    if (ech.is_pivot(c)) continue;
    basis_pos[c] = static_cast<std::int32_t>(q.basis.size());
    q.basis.push_back(columns[c]);
  }
  if (q.basis.size() > limits.max_dim)
    fail(ErrorKind::Capacity, "quotient dimension " + std::to_string(q.basis.size()) + " exceeds the limit " +
                                  std::to_string(limits.max_dim));
  q.nf_table.reserve(columns.size());
  for (std::uint32_t c = 0; c < columns.size(); ++c) {
    exact::SparseVec<F> coords;
    if (!ech.is_pivot(c)) {
      coords.emplace_back(static_cast<std::uint32_t>(basis_pos[c]), field.one());
    } else {
      const auto& row = ech.pivot_row(c);
      for (std::size_t k = 1; k < row.size(); ++k)
        coords.emplace_back(static_cast<std::uint32_t>(basis_pos[row[k].first]), field.neg(row[k].second));
    }
    q.nf_table.emplace(columns[c], std::move(coords));
  }
  return q;
}

struct ComponentRank {
  std::uint64_t ideal_rank = 0;
  std::uint64_t hf = 0;
};

template <class F>
void require_homogeneous(const std::vector<Poly<F>>& gens) {
  for (const auto& g : gens)
    if (!g.is_homogeneous()) fail(ErrorKind::NonHomogeneous, "generator mixes degrees");
}

// Dimension of the degree-d piece of a homogeneous ideal and of its quotient.
template <class F>
ComponentRank graded_component_rank(const F& field, std::size_t nvars, const std::vector<Poly<F>>& gens,
                                    unsigned d) {
  require_homogeneous(gens);
  const auto columns = monomials_of_degree(nvars, d);
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  index.reserve(columns.size());
  for (std::uint32_t i = 0; i < columns.size(); ++i) index.emplace(columns[i], i);
  exact::Echelon<F> ech(field, columns.size());
  for (const auto& g : gens) {
    if (g.is_zero() || g.degree() > d) continue;
    for (const auto& mu : monomials_of_degree(nvars, d - g.degree())) {
      exact::SparseVec<F> row;
      for (const auto& [m, c] : g.terms()) row.emplace_back(index.at(m * mu), c);
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      ech.insert(row);
      if (ech.rank() == columns.size()) break;
    }
    if (ech.rank() == columns.size()) break;
  }
  return {ech.rank(), columns.size() - ech.rank()};
}

}  // namespace jetmetric::poly
