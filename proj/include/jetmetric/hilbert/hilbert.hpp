#pragma once

// Hilbert series of graded presentations in rational form, Hilbert-Samuel
// polynomials (degreewise and cumulative), dimension, multiplicity and Euler
// characteristics.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/ratpoly.hpp"
#include "jetmetric/poly/quotient.hpp"
#include "jetmetric/presentation/presentation.hpp"

namespace jetmetric::hilbert {

using exact::RatPoly;

inline mpz_class binomial(long n, unsigned long k) {
  if (n < 0) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), k);
  return out;
}

// h(t) = Q(t) / (1 - t)^d with Q(1) != 0.
struct RationalForm {
  std::vector<mpz_class> numerator;
  unsigned pole_order = 0;

  int numerator_degree() const { return static_cast<int>(numerator.size()) - 1; }
  mpz_class q_at_one() const {
    mpz_class s = 0;
    for (const auto& c : numerator) s += c;
    return s;
  }
  // Coefficient of t^i.
  mpz_class coefficient(unsigned long i) const {
    mpz_class s = 0;
    for (std::size_t k = 0; k < numerator.size() && k <= i; ++k) {
      if (pole_order == 0) {
        if (k == i) s += numerator[k];
        continue;
      }
      s += numerator[k] * binomial(static_cast<long>(i - k + pole_order - 1), pole_order - 1);
    }
    return s;
  }
  // Sum of the coefficients of t^0 .. t^{n-1}.
  mpz_class prefix_sum(unsigned long n) const {
    mpz_class s = 0;
    for (std::size_t k = 0; k < numerator.size() && k < n; ++k)
      s += numerator[k] * binomial(static_cast<long>(n - 1 - k + pole_order), pole_order);
    return s;
  }
  std::string to_string() const {
    std::string q;
    for (std::size_t k = 0; k < numerator.size(); ++k) {
      const auto& c = numerator[k];
      if (c == 0) continue;
      const bool neg = c < 0;
      const mpz_class a = abs(c);
      if (q.empty()) q += neg ? "-" : "";
      else q += neg ? " - " : " + ";
      if (k == 0 || a != 1) q += a.get_str();
      if (k > 0) q += std::string(a != 1 ? "*" : "") + "t" + (k > 1 ? "^" + std::to_string(k) : "");
    }
    if (q.empty()) q = "0";
    if (pole_order == 0) return q;
    return "(" + q + ")/(1 - t)" + (pole_order > 1 ? "^" + std::to_string(pole_order) : "");
  }
  bool operator==(const RationalForm&) const = default;
};

struct HilbertData {
  std::vector<std::size_t> series_prefix;
  std::optional<RationalForm> rational_form;
  // Degree d - 1 polynomial agreeing with series_prefix[n] for large n; absent
  // when the pole order is zero.
  std::optional<RatPoly> degreewise;
  // Degree d polynomial agreeing with the jet lengths for large n.
  RatPoly cumulative;
  unsigned dim = 0;
  mpq_class mult = 0;
  std::string source;
};

template <class F>
unsigned generator_degree_sum(const pres::Presentation<F>& p) {
  unsigned s = 0;
  for (const auto& g : p.gens) s += static_cast<unsigned>(g.degree());
  return s;
}

// Coefficients of (1 - t)^r * sum prefix[i] t^i up to degree N.
inline std::vector<mpz_class> times_one_minus_t_power(const std::vector<std::size_t>& prefix, unsigned r) {
  std::vector<mpz_class> c(prefix.begin(), prefix.end());
  for (unsigned k = 0; k < r; ++k)
    for (std::size_t i = c.size(); i-- > 1;) c[i] -= c[i - 1];
  return c;
}

// Divides out (1 - t) while Q(1) = 0.
inline RationalForm reduce_rational_form(std::vector<mpz_class> q, unsigned pole) {
  while (!q.empty() && q.back() == 0) q.pop_back();
  while (pole > 0 && !q.empty()) {
    mpz_class s = 0;
    for (const auto& c : q) s += c;
    if (s != 0) break;
    // q = (1 - t) * u with u_i = q_0 + ... + q_i.
    std::vector<mpz_class> u(q.size() - 1);
    mpz_class acc = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      acc += q[i];
      u[i] = acc;
    }
    q = std::move(u);
    while (!q.empty() && q.back() == 0) q.pop_back();
    --pole;
  }
  return {std::move(q), pole};
}

// P(n) = sum_{j<d} (-1)^j / j! * binomial(n + d - 1 - j, d - 1 - j) * Q^{(j)}(1).
inline RatPoly hs_polynomial_from_series(const RationalForm& h) {
  if (h.pole_order == 0) fail(ErrorKind::PoleOrderZero, "Artinian series: the Hilbert polynomial is zero");
  const unsigned d = h.pole_order;
  RatPoly out;
  mpz_class jfact = 1;
  for (unsigned j = 0; j < d; ++j) {
    if (j > 0) jfact *= j;
    // Q^{(j)}(1) = sum_k k (k-1) .. (k-j+1) q_k
    mpz_class deriv = 0;
    for (std::size_t k = j; k < h.numerator.size(); ++k) {
      mpz_class falling = 1;
      for (unsigned i = 0; i < j; ++i) falling *= static_cast<unsigned long>(k - i);
      deriv += falling * h.numerator[k];
    }
    const mpq_class coeff = mpq_class((j % 2 ? -1 : 1) * deriv) / mpq_class(jfact);
    out = out + RatPoly::binomial_shifted(static_cast<long>(d - 1 - j), d - 1 - j) * RatPoly::constant(coeff);
  }
  return out;
}

// The cumulative polynomial L with L(n) = sum_{i<n} h_i for n large.
inline RatPoly cumulative_polynomial(const RationalForm& h) {
  const unsigned d = h.pole_order;
  const long start = std::max<long>(0, h.numerator_degree() - static_cast<long>(d) + 1);
  std::vector<mpq_class> values;
  for (unsigned i = 0; i <= d; ++i) values.emplace_back(h.prefix_sum(static_cast<unsigned long>(start + i)));
  return exact::newton_interpolate(start, values);
}

template <class F>
HilbertData hilbert_series(const pres::Presentation<F>& p, unsigned N) {
  if (!p.graded()) fail(ErrorKind::Grading, "Hilbert series need a graded presentation");
  const unsigned bound = generator_degree_sum(p);
  if (N <= bound)
    fail(ErrorKind::PrefixTooShort, "prefix length " + std::to_string(N) + " must exceed the generator degree sum " +
                                        std::to_string(bound));
  HilbertData h;
  h.source = "graded-exact";
  for (unsigned d = 0; d <= N; ++d)
    h.series_prefix.push_back(poly::graded_component_rank(p.field, p.nvars(), p.gens, d).hf);
  const unsigned r = static_cast<unsigned>(p.nvars());
  auto k = times_one_minus_t_power(h.series_prefix, r);
  for (std::size_t i = bound + 1; i < k.size(); ++i)
    if (k[i] != 0)
      fail(ErrorKind::PrefixTooShort, "numerator does not terminate by degree " + std::to_string(bound) +
                                          "; use a longer prefix");
  k.resize(std::min<std::size_t>(k.size(), bound + 1));
  h.rational_form = reduce_rational_form(std::move(k), r);
  h.dim = h.rational_form->pole_order;
  if (h.dim > 0) h.degreewise = hs_polynomial_from_series(*h.rational_form);
  h.cumulative = cumulative_polynomial(*h.rational_form);
  mpz_class fact = 1;
  for (unsigned i = 2; i <= h.dim; ++i) fact *= i;
  h.mult = h.cumulative.leading() * mpq_class(fact);
  return h;
}

// The shortest prefix accepted by hilbert_series.
template <class F>
unsigned default_prefix_length(const pres::Presentation<F>& p) {
  return std::max(generator_degree_sum(p) + static_cast<unsigned>(p.nvars()) + 2, 12u);
}

struct DimMult {
  unsigned d = 0;
  mpq_class e = 0;
};

// From the cumulative polynomial; for d = 0 it is the constant total length.
inline DimMult dim_mult(const RatPoly& cumulative) {
  DimMult out;
  out.d = cumulative.degree() < 0 ? 0 : static_cast<unsigned>(cumulative.degree());
  mpz_class fact = 1;
  for (unsigned i = 2; i <= out.d; ++i) fact *= i;
  out.e = cumulative.leading() * mpq_class(fact);
  return out;
}

inline DimMult dim_mult(const HilbertData& h) { return dim_mult(h.cumulative); }

struct EulerCharacteristic {
  mpq_class chi = 0;
  std::optional<mpq_class> genus;
  RatPoly polynomial;
  RationalForm series;
};

template <class F>
EulerCharacteristic euler_characteristic(const pres::Presentation<F>& p) {
  const auto h = hilbert_series(p, default_prefix_length(p));
  if (h.dim == 0) fail(ErrorKind::PoleOrderZero, "the projective scheme is empty");
  EulerCharacteristic out;
  out.polynomial = *h.degreewise;
  out.series = *h.rational_form;
  out.chi = out.polynomial(0);
  if (h.dim == 2) out.genus = 1 - out.chi;
  return out;
}

// Jet lengths l(jet(p, n)) = dim R/m^n. Homogeneous ideals use the certified
// rational form and are exact for every n; otherwise a truncated quotient
// supplies the lengths up to the cap it was computed at.
struct JetLengths {
  std::optional<RationalForm> form;
  std::vector<mpz_class> table;  // table[n] for n <= cap
  std::string source;

  bool covers(unsigned long n) const { return form.has_value() || n < table.size(); }
  mpz_class at(unsigned long n) const {
    if (form) return form->prefix_sum(n);
    if (n >= table.size()) fail(ErrorKind::Capacity, "jet length at order " + std::to_string(n) + " was not computed");
    return table[n];
  }
  // Nilpotency index of jet(p, n): local Hilbert functions have no gaps.
  unsigned long nilpotency(unsigned long n) const {
    unsigned long lo = 0, hi = n;  // largest k <= n with l(k) > l(k - 1)
    if (n == 0) return 0;
    const mpz_class top = at(n);
    // l is non-decreasing, so binary search the first k with l(k) = l(n).
    while (lo < hi) {
      const unsigned long mid = (lo + hi) / 2;
      if (at(mid) == top) hi = mid;
      else lo = mid + 1;
    }
    return lo;
  }
};

template <class F>
JetLengths jet_lengths(const pres::Presentation<F>& p, unsigned cap, const poly::QuotientLimits& limits = {}) {
  JetLengths out;
  bool homogeneous = true;
  for (const auto& g : p.gens) homogeneous = homogeneous && g.is_homogeneous();
  if (homogeneous) {
    auto graded = p;
    graded.mode = pres::Mode::graded;
    out.form = hilbert_series(graded, default_prefix_length(graded)).rational_form;
    out.source = "graded-exact";
    return out;
  }
  const auto q = poly::truncated_quotient(p.field, p.nvars(), p.gens, cap, limits);
  for (unsigned n = 0; n <= cap; ++n) out.table.emplace_back(static_cast<unsigned long>(q.dim_below(n)));
  out.source = "local-jets";
  return out;
}

struct JetPolynomial {
  RatPoly poly;
  bool certified = false;
  unsigned degree = 0;
  unsigned window_lo = 0, window_hi = 0;
  unsigned verify_lo = 0, verify_hi = 0;
};

// Fits the jet lengths on [lo, hi] by finite differences and checks the fit
// on the next hi - lo + 1 orders.
template <class F>
JetPolynomial hs_polynomial_from_jets(const pres::Presentation<F>& p, unsigned lo, unsigned hi,
                                      const poly::QuotientLimits& limits = {}) {
  if (hi < lo + 2) fail(ErrorKind::WindowTooSmall, "window needs at least three orders");
  const unsigned span = hi - lo + 1;
  const unsigned vhi = hi + span;
  JetLengths lens;
  {
    const auto q = poly::truncated_quotient(p.field, p.nvars(), p.gens, vhi, limits);
    for (unsigned n = 0; n <= vhi; ++n) lens.table.emplace_back(static_cast<unsigned long>(q.dim_below(n)));
  }
  std::vector<mpq_class> values;
  for (unsigned n = lo; n <= hi; ++n) values.emplace_back(lens.at(n));
  // Differences until constant; at least two equal entries are needed.
  std::vector<mpq_class> diff = values;
  unsigned degree = 0;
  while (true) {
    bool constant = true;
    for (const auto& v : diff) constant = constant && v == diff.front();
    if (constant && diff.size() >= 2) break;
    if (diff.size() <= 2)
      fail(ErrorKind::NotStabilized, "finite differences of the jet lengths are not constant on the window");
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
    ++degree;
  }
  JetPolynomial out;
  out.degree = degree;
  out.window_lo = lo;
  out.window_hi = hi;
  out.verify_lo = hi + 1;
  out.verify_hi = vhi;
  values.resize(degree + 1);
  out.poly = exact::newton_interpolate(lo, values);
  out.certified = true;
  for (unsigned n = hi + 1; n <= vhi; ++n) out.certified = out.certified && out.poly(n) == mpq_class(lens.at(n));
  return out;
}

}  // namespace jetmetric::hilbert
