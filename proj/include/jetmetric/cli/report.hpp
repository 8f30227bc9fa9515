#pragma once

// JSON renderings of library results. Every number is exact: integers stay
// integers (as strings once they leave the int64 range), rationals become
// "a/b" strings, and decimals carry their digit count.

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/artin/operations.hpp"
#include "jetmetric/hilbert/hilbert.hpp"
#include "jetmetric/iso/decide.hpp"
#include "jetmetric/metric/distance.hpp"
#include "jetmetric/resolution/resolution.hpp"
#include "jetmetric/slopes/slopes.hpp"

namespace jetmetric::cli {

using Json = nlohmann::ordered_json;

inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Integral values print as integers, the rest as "a/b".
inline Json rational(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

inline Json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Json decimal(const std::string& value, int digits) { return Json{{"value", value}, {"digits", digits}}; }

inline Json sizes(const std::vector<std::size_t>& v) { return Json(v); }

inline Json polynomial(const exact::RatPoly& p) {
  Json coeffs = Json::array();
  for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(rational(p.coeff(static_cast<unsigned>(i))));
  return Json{{"text", p.to_string("n")}, {"coefficients", coeffs}};
}

inline Json rational_form(const hilbert::RationalForm& r) {
  Json num = Json::array();
  for (const auto& c : r.numerator) num.push_back(integer(c));
  return Json{{"numerator", num}, {"pole_order", r.pole_order}, {"text", r.to_string()}};
}

template <class F>
Json element(const F& field, const artin::ArtinAlgebra<F>& shape, const std::vector<typename F::Element>& v) {
  poly::Poly<F> p(field, shape.vars().size());
  for (std::size_t i = 0; i < v.size(); ++i) p.add_term(shape.basis()[i], v[i]);
  return p.to_string(shape.vars());
}

template <class F>
Json algebra_summary(const artin::ArtinAlgebra<F>& a) {
  const auto hf = artin::hilbert_function(a);
  Json basis = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) basis.push_back(a.basis_name(i));
  Json out{{"field", a.field().desc().name()}, {"dim", a.dim()}, {"hf", sizes(hf.hf)}};
  if (!a.is_zero_ring()) out["nilpotency"] = artin::nilpotency_index(a);
  out["basis"] = basis;
  return out;
}

// One comparison, with the witness written as images of A's degree-one basis
// elements in B (over the witness field).
template <class F>
Json verdict(const iso::IsoVerdict<F>& v, const artin::ArtinAlgebra<F>& a, const artin::ArtinAlgebra<F>& b) {
  Json out{{"status", std::string(iso::status_name(v.status))},
           {"ext_degree", v.bounds.ext_degree},
           {"effort_used", v.bounds.effort_used},
           {"exhausted", v.bounds.exhausted}};
  if (v.witness) {
    const auto& w = *v.witness;
    Json images = Json::object();
    for (std::size_t k = 0; k < w.generators.size(); ++k)
      images[a.basis_name(w.generators[k])] = element(w.field, b, w.images[k]);
    out["witness"] = Json{{"field", w.field.desc().name()}, {"images", images}};
  }
  if (v.separator)
    out["separator"] = Json{{"invariant", v.separator->invariant}, {"a", v.separator->value_a}, {"b", v.separator->value_b}};
  return out;
}

template <class F, class Jets>
Json distance(const metric::DistanceVerdict<F>& d, Jets&& jets) {
  Json per = Json::array();
  for (const auto& e : d.per_order) {
    const auto [a, b] = jets(e.order);
    Json v = verdict(e.verdict, a, b);
    v["order"] = e.order;
    v["inferred"] = e.inferred;
    per.push_back(std::move(v));
  }
  Json out{{"lower", rational(d.lower)}, {"upper", rational(d.upper)}, {"iso_through", d.iso_through}};
  out["first_not_iso"] = d.first_not_iso ? Json(*d.first_not_iso) : Json(nullptr);
  out["exact"] = d.exact;
  if (!d.note.empty()) out["note"] = d.note;
  return Json{{"result", out}, {"evidence", Json{{"per_order", per}}}};
}

inline Json log_ratio(const slopes::LogRatio& r) {
  return Json{{"ratio", rational(r.ratio)}, {"log2", decimal(r.log2_decimal, slopes::LogRatio::digits)},
              {"rounded", r.rounded}};
}

inline Json delta0(const slopes::Delta0& d) {
  Json out{{"nilpotency", d.nilpotency}, {"half", d.half}, {"length", integer(d.length)},
           {"half_length", integer(d.half_length)}};
  out.update(log_ratio(d.value));
  return out;
}

inline Json eps0(const slopes::Eps0& e) {
  return Json{{"nilpotency", e.nilpotency}, {"root", e.root}, {"length", integer(e.length)},
              {"root_length", integer(e.root_length)}, {"value", rational(e.value)}};
}

inline Json rho(const slopes::RhoResult& r) {
  Json out{{"value", rational(r.value)}, {"attained", r.attained}};
  out["argmax"] = r.argmax ? Json(*r.argmax) : Json(nullptr);
  out["tail_limit"] = rational(r.tail_limit);
  out["d"] = r.d;
  out["e"] = rational(r.e);
  out["scan_to"] = r.scan_to;
  out["source"] = r.source;
  return out;
}

inline std::string_view slope_name(slopes::Slope s) {
  switch (s) {
    case slopes::Slope::delta0: return "delta0";
    case slopes::Slope::eps0: return "eps0";
    case slopes::Slope::hilbert: return "hilbert";
  }
  return "?";
}

inline Json trace(const slopes::SlopeTrace& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    Json j{{"order", e.order}};
    if (t.slope == slopes::Slope::hilbert) {
      j["hf"] = sizes(e.hilbert_prefix);
    } else {
      j["value"] = rational(e.value);
      if (t.slope == slopes::Slope::delta0) j["log2"] = decimal(e.log2_decimal, slopes::LogRatio::digits);
    }
    entries.push_back(std::move(j));
  }
  Json out{{"slope", std::string(slope_name(t.slope))}, {"entries", entries}};
  if (t.slope == slopes::Slope::hilbert) out["agreement"] = sizes(t.agreement);
  return out;
}

inline Json betti(const resolution::ResolutionData& r) {
  Json table = Json::array();
  for (std::size_t i = 0; i < r.betti.size(); ++i) {
    Json row = Json::object();
    for (std::size_t j = 0; j < r.betti[i].size(); ++j)
      if (r.betti[i][j]) row[std::to_string(j)] = r.betti[i][j];
    table.push_back(std::move(row));
  }
  Json out{{"ranks", sizes(r.ranks)}, {"graded", table}};
  out["pd"] = r.pd ? Json(*r.pd) : Json(r.pd_string());
  return out;
}

inline Json resolution_evidence(const resolution::ResolutionData& r) {
  return Json{{"internal_degree_cap", r.internal_degree_cap},
              {"homological_cap", r.homological_cap},
              {"degree_capped", r.degree_capped},
              {"exact", r.exact},
              {"minimal", r.minimal},
              {"complete", r.complete}};
}

}  // namespace jetmetric::cli
