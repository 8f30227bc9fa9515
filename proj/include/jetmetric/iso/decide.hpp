#pragma once

// Isomorphism decisions between Artinian algebras over the same field.
//
// A map A -> B is fixed by the images b_1..b_r of the intrinsic generators of
// A. Write b_i = sum_k b_i^(k) with b_i^(k) supported on the degree-k basis
// of B. For a constraint P (a relation of A, or a tuple entry that must hit a
// prescribed element) of order s, the degree-t coordinates of P(b) depend on
// levels k <= t - s + 1, and affinely on level t - s + 1. The search therefore
// enumerates the linear parts (level 1) and then solves one affine system per
// level, enumerating its solution space with backtracking.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/artin/operations.hpp"
#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/matrix.hpp"
#include "jetmetric/iso/signature.hpp"
#include "jetmetric/iso/witness.hpp"

namespace jetmetric::iso {

struct SearchBudget {
  unsigned ext_degree_max = 1;
  std::uint64_t effort = 1000000;
};

enum class IsoStatus { iso, not_iso, unknown };

inline std::string_view status_name(IsoStatus s) {
  switch (s) {
    case IsoStatus::iso: return "ISO";
    case IsoStatus::not_iso: return "NOT_ISO";
    case IsoStatus::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

struct SearchBounds {
  unsigned ext_degree = 1;
  std::uint64_t effort_used = 0;
  bool exhausted = false;
  bool graded_search = false;
};

template <class F>
struct IsoVerdict {
  IsoStatus status = IsoStatus::unknown;
  std::optional<Witness<F>> witness;
  std::optional<Separator> separator;
  SearchBounds bounds;
};

namespace detail {

template <class F>
struct Constraint {
  exact::SparseVec<F> poly;
  unsigned order = 0;
  typename artin::ArtinAlgebra<F>::Vec target;
};

struct EffortCounter {
  std::uint64_t used = 0;
  std::uint64_t limit = 0;
  bool out = false;
  bool spend() {
    if (used >= limit) {
      out = true;
      return false;
    }
    ++used;
    return true;
  }
};

template <class F>
class LevelSearch {
 public:
  using Element = typename F::Element;
  using Vec = typename artin::ArtinAlgebra<F>::Vec;

  LevelSearch(const artin::ArtinAlgebra<F>& a, const artin::ArtinAlgebra<F>& b, EffortCounter& effort, bool graded)
      : a_(a), b_(b), f_(b.field()), gp_(a), effort_(effort), graded_(graded) {
    r_ = gp_.generators().size();
    top_ = b.max_degree();
    for (unsigned k = 0; k <= top_; ++k) levels_.push_back(b.indices_of_degree(k));
    for (const auto& rel : gp_.relations()) add_constraint(rel, b.zero());
    if (a.tuple_images() && b.tuple_images()) {
      const auto& ta = *a.tuple_images();
      const auto& tb = *b.tuple_images();
      for (std::size_t t = 0; t < ta.size(); ++t) add_constraint(gp_.preimage(ta[t]), tb[t]);
    }
    std::stable_sort(constraints_.begin(), constraints_.end(),
                     [](const auto& x, const auto& y) { return x.order < y.order; });
    min_order_ = constraints_.empty() ? UINT_MAX : constraints_.front().order;
  }

  // Returns a witness when one is found; `complete` tells whether the whole
  // space was searched.
  std::optional<Witness<F>> run(bool& complete) {
    complete = false;
    if (infeasible_) {
      complete = true;
      return std::nullopt;
    }
    std::optional<Witness<F>> found;
    enumerate_linear_parts([&](const std::vector<Vec>& b1) {
      if (!level_one_ok(b1)) return false;
      std::vector<Vec> b = b1;
      if (graded_) {
        if (!full_check(b)) return false;
        found = Witness<F>{f_, gp_.generators(), b};
        return true;
      }
      if (descend(b, 2)) {
        found = Witness<F>{f_, gp_.generators(), b};
        return true;
      }
      return false;
    });
    complete = !found && !effort_.out;
    return found;
  }

 private:
  void add_constraint(const exact::SparseVec<F>& p, const Vec& target) {
    unsigned order = UINT_MAX;
    for (const auto& [k, c] : p) order = std::min(order, gp_.monomials().monos[k].degree());
    if (p.empty()) {
      if (!b_.is_zero(target)) infeasible_ = true;
      return;
    }
    // Coordinates of P(b) below its order vanish, so the target's must too.
    if (b_.order(target) < order) infeasible_ = true;
    constraints_.push_back({p, order, target});
  }

  // Visits candidate level-one parts; returns true if the visitor accepted one
  // and false when the enumeration ended (or ran out of effort).
  template <class Visit>
  bool enumerate_linear_parts(Visit&& visit) {
    const auto& l1 = levels_.size() > 1 ? levels_[1] : std::vector<std::size_t>{};
    if (r_ != l1.size()) return false;
    if (r_ == 0) {
      if (!effort_.spend()) return false;
      return visit(std::vector<Vec>{});
    }
    if constexpr (std::is_same_v<F, exact::Rationals>) {
      return enumerate_signed_permutations(l1, visit);
    } else {
      return enumerate_matrices(l1, visit);
    }
  }

  template <class Visit>
  bool enumerate_matrices(const std::vector<std::size_t>& l1, Visit&& visit) {
    const std::uint32_t q = f_.size();
    std::vector<std::uint32_t> counter(r_ * r_, 0);
    while (true) {
      if (!effort_.spend()) return false;
      // Counter zero is the identity matrix.
      exact::Matrix<F> m(f_, r_, r_);
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < r_; ++j) m(i, j) = (counter[i * r_ + j] + (i == j ? 1 : 0)) % q;
      if (exact::rank(m) == r_) {
        std::vector<Vec> b1(r_, b_.zero());
        for (std::size_t i = 0; i < r_; ++i)
          for (std::size_t j = 0; j < r_; ++j) b1[i][l1[j]] = m(i, j);
        if (visit(b1)) return true;
      }
      std::size_t pos = 0;
      while (pos < counter.size() && ++counter[pos] == q) counter[pos++] = 0;
      if (pos == counter.size()) return false;
    }
  }

  template <class Visit>
  bool enumerate_signed_permutations(const std::vector<std::size_t>& l1, Visit&& visit) {
    static const std::vector<mpq_class> scales{1, -1, 2, -2, mpq_class(1, 2), mpq_class(-1, 2)};
    std::vector<std::size_t> perm(r_);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::size_t> counter(r_, 0);
      while (true) {
        if (!effort_.spend()) return false;
        std::vector<Vec> b1(r_, b_.zero());
        for (std::size_t i = 0; i < r_; ++i) b1[i][l1[perm[i]]] = scales[counter[i]];
        if (visit(b1)) return true;
        std::size_t pos = 0;
        while (pos < r_ && ++counter[pos] == scales.size()) counter[pos++] = 0;
        if (pos == r_) break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  }

  Vec constraint_value(const Constraint<F>& c, const std::vector<Vec>& vals) const {
    return evaluate_poly(b_, c.poly, vals);
  }

  bool level_one_ok(const std::vector<Vec>& b1) const {
    const auto vals = evaluate_monomials(b_, gp_.monomials(), b1, true);
    for (const auto& c : constraints_) {
      if (c.order > top_) continue;
      const auto v = constraint_value(c, vals);
      for (auto idx : levels_[c.order])
        if (!F::equal(v[idx], c.target[idx])) return false;
    }
    return true;
  }

  bool full_check(const std::vector<Vec>& b) const {
    const auto vals = evaluate_monomials(b_, gp_.monomials(), b);
    for (const auto& c : constraints_)
      if (constraint_value(c, vals) != c.target) return false;
    return true;
  }

  // Stacked degree-t residuals (value minus target) of every constraint
  // whose level-k equations live in degree t = k + order - 1.
  Vec residuals(const std::vector<Vec>& b, unsigned k) const {
    const auto vals = evaluate_monomials(b_, gp_.monomials(), b);
    Vec out;
    for (const auto& c : constraints_) {
      const unsigned t = k + c.order - 1;
      if (c.order == UINT_MAX || t > top_) continue;
      const auto v = constraint_value(c, vals);
      for (auto idx : levels_[t]) out.push_back(f_.sub(v[idx], c.target[idx]));
    }
    return out;
  }

  bool descend(std::vector<Vec>& b, unsigned k) {
    if (min_order_ == UINT_MAX || k + min_order_ - 1 > top_ || k > top_) return full_check(b);
    const auto& lk = levels_[k];
    const std::size_t nunk = r_ * lk.size();
    const Vec base = residuals(b, k);
    if (nunk == 0) {
      for (const auto& e : base)
        if (!F::is_zero(e)) return false;
      return descend(b, k + 1);
    }
    exact::Matrix<F> m(f_, base.size(), nunk);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < lk.size(); ++j) {
        auto& cell = b[i][lk[j]];
        const Element saved = cell;
        cell = f_.add(cell, f_.one());
        const Vec moved = residuals(b, k);
        cell = saved;
        for (std::size_t row = 0; row < base.size(); ++row) m(row, i * lk.size() + j) = f_.sub(moved[row], base[row]);
      }
    Vec rhs(base.size());
    for (std::size_t row = 0; row < base.size(); ++row) rhs[row] = f_.neg(base[row]);
    exact::Vector<F> particular;
    if (!exact::solve(m, std::span<const Element>(rhs), particular)) return false;
    const auto kernel = exact::kernel_basis(m);
    const bool last = k + min_order_ - 1 >= top_;

    auto apply = [&](const exact::Vector<F>& u) {
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < lk.size(); ++j) b[i][lk[j]] = u[i * lk.size() + j];
    };
    auto clear = [&]() {
      for (std::size_t i = 0; i < r_; ++i)
        for (auto idx : lk) b[i][idx] = f_.zero();
    };
    if (last || kernel.empty()) {
      if (!effort_.spend()) return false;
      apply(particular);
      if (descend(b, k + 1)) return true;
      clear();
      return false;
    }
    const std::vector<Element> choices = free_choices();
    std::vector<std::size_t> counter(kernel.size(), 0);
    while (true) {
      if (!effort_.spend()) {
        clear();
        return false;
      }
      exact::Vector<F> u = particular;
      for (std::size_t f = 0; f < kernel.size(); ++f) {
        const Element c = choices[counter[f]];
        if (F::is_zero(c)) continue;
        for (std::size_t x = 0; x < nunk; ++x) f_.axpy(u[x], c, kernel[f][x]);
      }
      apply(u);
      if (descend(b, k + 1)) return true;
      std::size_t pos = 0;
      while (pos < counter.size() && ++counter[pos] == choices.size()) counter[pos++] = 0;
      if (pos == counter.size()) break;
    }
    clear();
    return false;
  }

  std::vector<Element> free_choices() const {
    if constexpr (std::is_same_v<F, exact::Rationals>) {
      return {0, 1, -1};
    } else {
      std::vector<Element> out(f_.size());
      std::iota(out.begin(), out.end(), 0u);
      return out;
    }
  }

  const artin::ArtinAlgebra<F>& a_;
  const artin::ArtinAlgebra<F>& b_;
  F f_;
  GeneratorPresentation<F> gp_;
  EffortCounter& effort_;
  bool graded_;
  std::size_t r_ = 0;
  unsigned top_ = 0;
  unsigned min_order_ = UINT_MAX;
  bool infeasible_ = false;
  std::vector<std::vector<std::size_t>> levels_;
  std::vector<Constraint<F>> constraints_;
};

template <class F>
std::optional<Witness<F>> search(const artin::ArtinAlgebra<F>& a, const artin::ArtinAlgebra<F>& b,
                                 EffortCounter& effort, bool graded, bool& complete) {
  LevelSearch<F> s(a, b, effort, graded);
  auto w = s.run(complete);
  if (w) {
    const auto rep = verify_witness(a, b, *w);
    if (!rep.ok()) fail(ErrorKind::Inconsistency, "search produced a witness that fails verification");
  }
  return w;
}

}  // namespace detail

inline bool same_field(const exact::Rationals&, const exact::Rationals&) { return true; }
inline bool same_field(const exact::GaloisField& a, const exact::GaloisField& b) { return a.desc() == b.desc(); }

template <class F>
IsoVerdict<F> decide_isomorphism(const artin::ArtinAlgebra<F>& a, const artin::ArtinAlgebra<F>& b,
                                 const SearchBudget& budget = {}) {
  if (!same_field(a.field(), b.field()))
    fail(ErrorKind::FieldMismatch, a.field().desc().name() + " vs " + b.field().desc().name());
  IsoVerdict<F> v;
  if constexpr (std::is_same_v<F, exact::GaloisField>) v.bounds.ext_degree = a.field().degree();
  if (a.dim() != b.dim()) {
    v.status = IsoStatus::not_iso;
    v.separator = Separator{"length", std::to_string(a.dim()), std::to_string(b.dim())};
    return v;
  }
  if (a.is_zero_ring()) {
    v.status = IsoStatus::iso;
    v.witness = Witness<F>{a.field(), {}, {}};
    return v;
  }
  if (auto sep = compare_signatures(invariant_signature(a), invariant_signature(b))) {
    v.status = IsoStatus::not_iso;
    v.separator = sep;
    return v;
  }
  const bool tuples = a.tuple_images().has_value() || b.tuple_images().has_value();
  if (tuples && !(a.tuple_images() && b.tuple_images() && a.tuple_images()->size() == b.tuple_images()->size()))
    fail(ErrorKind::TupleLengthMismatch, "tuples of different lengths admit no morphism");
  const bool graded = a.graded() && b.graded();
  v.bounds.graded_search = graded;
  detail::EffortCounter effort{0, budget.effort, false};
  bool complete = true;
  if constexpr (std::is_same_v<F, exact::GaloisField>) {
    const unsigned m = a.field().degree();
    const unsigned top = std::max(budget.ext_degree_max, m);
    for (unsigned mp = m; mp <= top; mp += m) {
      const auto ab = artin::base_change(a, mp);
      const auto bb = artin::base_change(b, mp);
      bool done = false;
      auto w = detail::search(ab, bb, effort, graded, done);
      v.bounds.ext_degree = mp;
      complete = complete && done;
      if (w) {
        v.status = IsoStatus::iso;
        v.witness = std::move(w);
        v.bounds.effort_used = effort.used;
        return v;
      }
      if (effort.out) break;
    }
  } else {
    bool done = false;
    auto w = detail::search(a, b, effort, graded, done);
    if (w) {
      v.status = IsoStatus::iso;
      v.witness = std::move(w);
      v.bounds.effort_used = effort.used;
      return v;
    }
    // Over Q the candidate set is a heuristic subset; never exhaustive.
    complete = false;
  }
  v.status = IsoStatus::unknown;
  v.bounds.effort_used = effort.used;
  v.bounds.exhausted = complete && !effort.out;
  return v;
}

// Re-checks an ISO verdict on the algebras it was found for, after the same
// base change.
template <class F>
VerificationReport verify_verdict(const artin::ArtinAlgebra<F>& a, const artin::ArtinAlgebra<F>& b,
                                  const IsoVerdict<F>& v) {
  if (v.status != IsoStatus::iso || !v.witness) return {};
  if constexpr (std::is_same_v<F, exact::GaloisField>) {
    const unsigned m = v.witness->field.degree();
    return verify_witness(artin::base_change(a, m), artin::base_change(b, m), *v.witness);
  } else {
    return verify_witness(a, b, *v.witness);
  }
}

}  // namespace jetmetric::iso
