#pragma once

// Certified bounds on the deformation distance d(R, S) = inf 2^{-n} over the
// orders n at which the jets R/m^n and S/m^n are isomorphic.

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/artin/operations.hpp"
#include "jetmetric/errors.hpp"
#include "jetmetric/iso/decide.hpp"
#include "jetmetric/iso/witness.hpp"
#include "jetmetric/presentation/presentation.hpp"
#include "jetmetric/presentation/template.hpp"

namespace jetmetric::metric {

inline mpq_class pow2_neg(unsigned e) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, e);
  return mpq_class(mpz_class(1), den);
}

template <class F>
struct OrderEvidence {
  unsigned order = 0;
  iso::IsoVerdict<F> verdict;
  // Set when an ISO was obtained by truncating a witness from a higher order.
  bool inferred = false;
};

template <class F>
struct DistanceVerdict {
  mpq_class lower = 0;
  mpq_class upper = 1;
  unsigned iso_through = 0;
  std::optional<unsigned> first_not_iso;
  bool exact = false;
  std::string note;
  std::vector<OrderEvidence<F>> per_order;
};

template <class F>
struct BallDescriptor {
  artin::ArtinAlgebra<F> residue_ring;
  mpq_class radius;
};

template <class F>
BallDescriptor<F> ball_descriptor(const artin::ArtinAlgebra<F>& a) {
  return {a, pow2_neg(artin::nilpotency_index(a) - 1)};
}

namespace detail {

template <class F>
DistanceVerdict<F> unit_distance(std::string note) {
  DistanceVerdict<F> d;
  d.lower = 1;
  d.upper = 1;
  d.first_not_iso = 1;
  d.exact = true;
  d.note = std::move(note);
  return d;
}

// Distinct fields of one characteristic are at distance 1 (the residue fields
// differ); different characteristics are not comparable.
template <class F>
std::optional<DistanceVerdict<F>> field_gate(const F& a, const F& b) {
  const auto da = a.desc(), db = b.desc();
  if (da == db) return std::nullopt;
  if (da.p != db.p) fail(ErrorKind::FieldMismatch, da.name() + " vs " + db.name());
  return unit_distance<F>("different coefficient fields");
}

// Runs the per-order comparisons produced by `jets(n)` and turns them into
// bounds. ISO at order n implies ISO below n, so UNKNOWN verdicts below a
// later ISO are replaced by the truncated witness, re-verified.
template <class F, class Jets>
DistanceVerdict<F> aggregate(unsigned max_order, const iso::SearchBudget& budget, Jets&& jets) {
  DistanceVerdict<F> d;
  std::vector<std::pair<artin::ArtinAlgebra<F>, artin::ArtinAlgebra<F>>> pairs;
  for (unsigned n = 1; n <= max_order; ++n) {
    auto [a, b] = jets(n);
    auto v = iso::decide_isomorphism(a, b, budget);
    const auto status = v.status;
    d.per_order.push_back({n, std::move(v), false});
    pairs.emplace_back(std::move(a), std::move(b));
    if (status == iso::IsoStatus::not_iso) break;
  }
  for (std::size_t i = 0; i < d.per_order.size(); ++i) {
    const auto& top = d.per_order[i].verdict;
    if (top.status != iso::IsoStatus::iso) continue;
    for (std::size_t j = 0; j < i; ++j) {
      auto& low = d.per_order[j];
      if (low.verdict.status == iso::IsoStatus::not_iso)
        fail(ErrorKind::Inconsistency, "order " + std::to_string(low.order) + " is NOT_ISO below an ISO order");
      if (low.verdict.status != iso::IsoStatus::unknown) continue;
      iso::IsoVerdict<F> v;
      v.status = iso::IsoStatus::iso;
      v.witness = iso::restrict_witness(*top.witness, pairs[i].second, low.order);
      v.bounds = top.bounds;
      v.bounds.effort_used = low.verdict.bounds.effort_used;
      if (!iso::verify_verdict(pairs[j].first, pairs[j].second, v).ok())
        fail(ErrorKind::Inconsistency, "truncated witness fails at order " + std::to_string(low.order));
      low.verdict = std::move(v);
      low.inferred = true;
    }
  }
  for (const auto& e : d.per_order) {
    if (e.verdict.status == iso::IsoStatus::iso) {
      if (d.first_not_iso || e.order != d.iso_through + 1) break;
      d.iso_through = e.order;
    } else if (e.verdict.status == iso::IsoStatus::not_iso) {
      d.first_not_iso = e.order;
    }
  }
  d.upper = pow2_neg(d.iso_through);
  d.lower = d.first_not_iso ? pow2_neg(*d.first_not_iso - 1) : mpq_class(0);
  d.exact = d.first_not_iso && *d.first_not_iso == d.iso_through + 1;
  return d;
}

}  // namespace detail

template <class F>
DistanceVerdict<F> jet_distance(const pres::Presentation<F>& p, const pres::Presentation<F>& q, unsigned max_order,
                                const iso::SearchBudget& budget = {}) {
  if (auto gate = detail::field_gate(p.field, q.field)) return *gate;
  return detail::aggregate<F>(max_order, budget, [&](unsigned n) {
    return std::pair{artin::jet(p, n), artin::jet(q, n)};
  });
}

template <class F>
DistanceVerdict<F> defpair_distance(const pres::Presentation<F>& p, const pres::Presentation<F>& q, unsigned max_n,
                                    const iso::SearchBudget& budget = {}) {
  if (!p.tuple || !q.tuple) fail(ErrorKind::Usage, "deformation-pair distance needs a tuple on both inputs");
  if (auto gate = detail::field_gate(p.field, q.field)) return *gate;
  if (p.tuple->size() != q.tuple->size())
    return detail::unit_distance<F>("tuples of lengths " + std::to_string(p.tuple->size()) + " and " +
                                    std::to_string(q.tuple->size()) + " admit no morphism");
  return detail::aggregate<F>(max_n, budget, [&](unsigned n) {
    return std::pair{artin::defpair_jet(p, n), artin::defpair_jet(q, n)};
  });
}

using AnyDistance = std::variant<DistanceVerdict<exact::Rationals>, DistanceVerdict<exact::GaloisField>>;

inline void require_same_kind(const pres::AnyPresentation& p, const pres::AnyPresentation& q) {
  if (p.index() != q.index())
    fail(ErrorKind::FieldMismatch, pres::field_desc(p).name() + " vs " + pres::field_desc(q).name());
}

inline AnyDistance jet_distance(const pres::AnyPresentation& p, const pres::AnyPresentation& q, unsigned max_order,
                                const iso::SearchBudget& budget = {}) {
  require_same_kind(p, q);
  return std::visit(
      [&](const auto& x) -> AnyDistance {
        using P = std::decay_t<decltype(x)>;
        return jet_distance(x, std::get<P>(q), max_order, budget);
      },
      p);
}

inline AnyDistance defpair_distance(const pres::AnyPresentation& p, const pres::AnyPresentation& q, unsigned max_n,
                                    const iso::SearchBudget& budget = {}) {
  require_same_kind(p, q);
  return std::visit(
      [&](const auto& x) -> AnyDistance {
        using P = std::decay_t<decltype(x)>;
        return defpair_distance(x, std::get<P>(q), max_n, budget);
      },
      p);
}

// Composite witness A -> C from witnesses A -> B and B -> C, possibly found
// over different extensions. Both are lifted to the compositum first; this is
// only coherent over a prime base field, where the embeddings are canonical.
template <class F>
std::optional<iso::Witness<F>> compose_verdicts(const artin::ArtinAlgebra<F>& a, const artin::ArtinAlgebra<F>& b,
                                                const artin::ArtinAlgebra<F>& c, const iso::Witness<F>& phi,
                                                const iso::Witness<F>& psi) {
  if constexpr (std::is_same_v<F, exact::GaloisField>) {
    const unsigned ma = phi.field.degree(), mb = psi.field.degree();
    if (ma == mb) return iso::compose_witnesses(artin::base_change(b, ma), artin::base_change(c, ma), phi, psi);
    if (a.field().degree() != 1) return std::nullopt;
    const unsigned l = std::lcm(ma, mb);
    const auto big = exact::GaloisField::standard(a.field().p(), l);
    const auto lift = [&](const iso::Witness<F>& w) {
      return iso::map_witness(w, big, exact::FieldEmbedding(w.field, big));
    };
    return iso::compose_witnesses(artin::base_change(b, l), artin::base_change(c, l), lift(phi), lift(psi));
  } else {
    (void)a;
    return iso::compose_witnesses(b, c, phi, psi);
  }
}

template <class F>
struct LimitResult {
  artin::ArtinAlgebra<F> stable_jet;
  long w0 = 0;
  // True when w0 - 1 is outside the range or was proven NOT_ISO.
  bool minimal_certified = false;
  // (w, verdict of jet(w) against the jet at the end of the range)
  std::vector<std::pair<long, iso::IsoVerdict<F>>> entries;
};

using AnyLimit = std::variant<LimitResult<exact::Rationals>, LimitResult<exact::GaloisField>>;

template <class F>
LimitResult<F> limit_jets(const std::vector<std::pair<long, pres::Presentation<F>>>& family, unsigned n,
                          const iso::SearchBudget& budget = {}, unsigned k = 3) {
  if (family.empty()) fail(ErrorKind::Range, "empty family");
  std::vector<artin::ArtinAlgebra<F>> jets;
  for (const auto& [w, p] : family) {
    if (p.field_desc() != family.front().second.field_desc())
      fail(ErrorKind::FieldMismatch, "family members live over different fields");
    jets.push_back(artin::jet(p, n));
  }
  const std::size_t last = jets.size() - 1;
  const std::size_t tail = std::min<std::size_t>(k, jets.size());
  for (std::size_t i = jets.size() - tail; i < jets.size(); ++i)
    for (std::size_t j = i + 1; j < jets.size(); ++j) {
      const auto v = iso::decide_isomorphism(jets[i], jets[j], budget);
      const auto wi = std::to_string(family[i].first), wj = std::to_string(family[j].first);
      if (v.status == iso::IsoStatus::not_iso)
        fail(ErrorKind::NotStabilized, "jets at w = " + wi + " and w = " + wj + " differ (" + v.separator->invariant + ")");
      if (v.status == iso::IsoStatus::unknown)
        fail(ErrorKind::UnknownStabilization, "undecided between w = " + wi + " and w = " + wj);
    }
  LimitResult<F> r{jets[last], family[last].first, true, {}};
  for (std::size_t i = last + 1; i-- > 0;) {
    auto v = iso::decide_isomorphism(jets[i], jets[last], budget);
    const auto status = v.status;
    r.entries.emplace_back(family[i].first, std::move(v));
    if (status != iso::IsoStatus::iso) {
      r.minimal_certified = status == iso::IsoStatus::not_iso;
      break;
    }
    r.w0 = family[i].first;
  }
  std::reverse(r.entries.begin(), r.entries.end());
  return r;
}

inline AnyLimit limit_jets(const pres::FamilyTemplate& tpl, unsigned n, const iso::SearchBudget& budget = {},
                           unsigned k = 3) {
  std::vector<pres::AnyPresentation> members;
  for (long w = tpl.lo; w <= tpl.hi; ++w) members.push_back(pres::instantiate_template(tpl, w));
  return std::visit(
      [&](const auto& first) -> AnyLimit {
        using P = std::decay_t<decltype(first)>;
        std::vector<std::pair<long, P>> family;
        for (std::size_t i = 0; i < members.size(); ++i) {
          require_same_kind(members.front(), members[i]);
          family.emplace_back(tpl.lo + static_cast<long>(i), std::get<P>(members[i]));
        }
        return limit_jets(family, n, budget, k);
      },
      members.front());
}

}  // namespace jetmetric::metric
