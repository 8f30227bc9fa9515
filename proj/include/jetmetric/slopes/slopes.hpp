#pragma once

// Quasi-slopes on Artinian algebras and jet sequences: delta0 (log of the
// length ratio against the half-order jet), eps0 (squared root-order length
// over length), the rho invariant and the rounding certificate built on it.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/artin/operations.hpp"
#include "jetmetric/errors.hpp"
#include "jetmetric/exactcore/ratpoly.hpp"
#include "jetmetric/hilbert/hilbert.hpp"
#include "jetmetric/presentation/presentation.hpp"

namespace jetmetric::slopes {

using exact::RatPoly;

inline long double log2_of(const mpq_class& r) {
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, r.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, r.get_den_mpz_t());
  return std::log2(static_cast<long double>(mn)) - std::log2(static_cast<long double>(md)) +
         static_cast<long double>(en - ed);
}

inline std::string decimal(long double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, v);
  std::string s = buf;
  if (s == "-0." + std::string(static_cast<std::size_t>(digits), '0')) s.erase(0, 1);
  return s;
}

// 2^e as a rational, e of either sign.
inline mpq_class pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(mpz_class(1), p) : mpq_class(p);
}

// The integer k with k - 1/2 < log2(r) <= k + 1/2, decided exactly by
// comparing r^2 with 2^{2k-1} and 2^{2k+1}.
inline long round_log2(const mpq_class& r) {
  if (r <= 0) fail(ErrorKind::Inconsistency, "logarithm of a non-positive ratio");
  const mpq_class sq = r * r;
  long k = std::lround(static_cast<double>(log2_of(r)));
  for (int guard = 0; guard < 8; ++guard) {
    if (sq <= pow2(2 * k - 1)) --k;
    else if (sq > pow2(2 * k + 1)) ++k;
    else return k;
  }
  fail(ErrorKind::Inconsistency, "rounding did not settle");
}

struct LogRatio {
  mpq_class ratio;
  std::string log2_decimal;
  long rounded = 0;
  static constexpr int digits = 12;
};

inline LogRatio log_ratio(const mpq_class& r) { return {r, decimal(log2_of(r)), round_log2(r)}; }

struct Delta0 {
  unsigned long nilpotency = 0;
  unsigned long half = 0;
  mpz_class length;
  mpz_class half_length;
  LogRatio value;
};

[[noreturn]] inline void nilpotency_one() {
  fail(ErrorKind::NilpotencyOne, "delta0 is undefined at nilpotency index 1 (the half-order jet is zero)");
}

inline Delta0 delta0_from_lengths(unsigned long nilpotency, const mpz_class& length, const mpz_class& half_length) {
  if (nilpotency <= 1) nilpotency_one();
  Delta0 d{nilpotency, nilpotency / 2, length, half_length, {}};
  d.value = log_ratio(mpq_class(length, half_length));
  d.value.ratio.canonicalize();
  return d;
}

template <class F>
Delta0 delta0(const artin::ArtinAlgebra<F>& a) {
  const unsigned n = artin::nilpotency_index(a);
  if (n == 1) nilpotency_one();
  return delta0_from_lengths(n, static_cast<unsigned long>(a.dim()),
                             static_cast<unsigned long>(a.prefix_below(n / 2)));
}

inline unsigned long isqrt(unsigned long n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), mpz_class(n).get_mpz_t());
  return r.get_ui();
}

struct Eps0 {
  unsigned long nilpotency = 0;
  unsigned long root = 0;
  mpz_class length;
  mpz_class root_length;
  mpq_class value;
};

inline Eps0 eps0_from_lengths(unsigned long nilpotency, const mpz_class& length, const mpz_class& root_length) {
  Eps0 e{nilpotency, isqrt(nilpotency), length, root_length, 0};
  e.value = mpq_class(root_length * root_length, length);
  e.value.canonicalize();
  return e;
}

template <class F>
Eps0 eps0(const artin::ArtinAlgebra<F>& a) {
  const unsigned n = artin::nilpotency_index(a);
  return eps0_from_lengths(n, static_cast<unsigned long>(a.dim()),
                           static_cast<unsigned long>(a.prefix_below(static_cast<unsigned>(isqrt(n)))));
}

// Slopes of jet(p, n) from a length profile, without building the algebra.
inline Delta0 delta0_of_jet(const hilbert::JetLengths& l, unsigned long n) {
  const auto nil = l.nilpotency(n);
  if (nil == 0) fail(ErrorKind::ZeroRing, "jet of order 0 is the zero ring");
  if (nil == 1) nilpotency_one();
  return delta0_from_lengths(nil, l.at(n), l.at(nil / 2));
}

inline Eps0 eps0_of_jet(const hilbert::JetLengths& l, unsigned long n) {
  const auto nil = l.nilpotency(n);
  if (nil == 0) fail(ErrorKind::ZeroRing, "jet of order 0 is the zero ring");
  return eps0_from_lengths(nil, l.at(n), l.at(isqrt(nil)));
}

// A length profile together with a polynomial valid from `threshold` on.
struct CertifiedLengths {
  hilbert::JetLengths lengths;
  RatPoly cumulative;
  unsigned long threshold = 0;
  std::string source;

  mpz_class length(unsigned long n) const {
    if (lengths.covers(n)) return lengths.at(n);
    return cumulative(mpq_class(n)).get_num();
  }
};

template <class F>
CertifiedLengths certified_lengths(const pres::Presentation<F>& p, unsigned max_cap = 64) {
  bool homogeneous = true;
  for (const auto& g : p.gens) homogeneous = homogeneous && g.is_homogeneous();
  if (homogeneous) {
    CertifiedLengths c;
    c.lengths = hilbert::jet_lengths(p, 0);
    c.cumulative = hilbert::cumulative_polynomial(*c.lengths.form);
    c.threshold = static_cast<unsigned long>(
        std::max<long>(0, c.lengths.form->numerator_degree() - static_cast<long>(c.lengths.form->pole_order) + 1));
    c.source = "graded-exact";
    return c;
  }
  for (unsigned lo = 4; 3 * lo <= max_cap; lo *= 2) {
    const unsigned hi = 2 * lo;
    try {
      const auto fit = hilbert::hs_polynomial_from_jets(p, lo, hi);
      if (!fit.certified) continue;
      CertifiedLengths c;
      c.lengths = hilbert::jet_lengths(p, fit.verify_hi);
      c.cumulative = fit.poly;
      // The fit matches from the window start; earlier orders use the table.
      c.threshold = lo;
      c.source = "local-fitted";
      return c;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotStabilized) throw;
    }
  }
  fail(ErrorKind::NotStabilized, "no jet window up to order " + std::to_string(max_cap) + " certifies a polynomial");
}

struct RhoResult {
  mpq_class value = 0;
  bool attained = true;
  std::optional<unsigned long> argmax;
  mpq_class tail_limit = 0;
  unsigned d = 0;
  mpq_class e = 0;
  unsigned long scan_to = 0;
  std::string source;
};

// f(n) = d! l_n / (e n^{d-1}) - n.
inline mpq_class rho_f(unsigned d, const mpq_class& e, const mpz_class& length, unsigned long n) {
  mpz_class fact = 1, pw = 1;
  for (unsigned i = 2; i <= d; ++i) fact *= i;
  for (unsigned i = 1; i < d; ++i) pw *= n;
  mpq_class v = mpq_class(fact * length) / (e * mpq_class(pw)) - mpq_class(n);
  return v;
}

inline RhoResult rho(const CertifiedLengths& c, unsigned long scan_limit = 200000) {
  const auto dm = hilbert::dim_mult(c.cumulative);
  if (dm.d == 0) fail(ErrorKind::DimensionZero, "rho needs a ring of positive dimension");
  RhoResult r;
  r.d = dm.d;
  r.e = dm.e;
  r.source = c.source;
  mpz_class fact = 1;
  for (unsigned i = 2; i <= r.d; ++i) fact *= i;
  const mpq_class scale = mpq_class(fact) / r.e;
  r.tail_limit = scale * c.cumulative.coeff(r.d - 1);
  // Beyond the threshold f(n) = g(1/n) with g(u) = T + sum_{j>=1} b_j u^j,
  // b_j = scale * c_{d-1-j}. g is monotone below the smallest positive root
  // of g', bounded from below by |m b_m| / (|m b_m| + max_{j>m} |j b_j|).
  unsigned long n_star = std::max<unsigned long>(c.threshold, 1);
  int m = -1;
  std::vector<mpq_class> b(r.d, 0);
  for (unsigned j = 1; j < r.d; ++j) {
    b[j] = scale * c.cumulative.coeff(r.d - 1 - j);
    if (m < 0 && b[j] != 0) m = static_cast<int>(j);
  }
  if (m > 0) {
    const mpq_class a0 = abs(b[m] * m);
    mpq_class big = 0;
    for (unsigned j = static_cast<unsigned>(m) + 1; j < r.d; ++j) big = std::max(big, mpq_class(abs(b[j] * j)));
    const mpq_class u0 = a0 / (a0 + big);
    const mpq_class inv_q = 1 / u0;
    const mpz_class inv = inv_q.get_num() / inv_q.get_den();  // floor(1/u0)
    const unsigned long need = inv.get_ui() + 1;
    if (inv > scan_limit) fail(ErrorKind::NotStabilized, "rho tail needs a scan beyond " + std::to_string(scan_limit));
    n_star = std::max(n_star, need);
  }
  r.scan_to = n_star;
  mpq_class best = -1;
  for (unsigned long n = 1; n <= n_star; ++n) {
    const mpq_class v = abs(rho_f(r.d, r.e, c.length(n), n));
    if (v > best) {
      best = v;
      r.argmax = n;
    }
  }
  const mpq_class tail = abs(r.tail_limit);
  if (best >= tail) {
    r.value = best;
    r.attained = true;
  } else {
    r.value = tail;
    r.attained = false;
    r.argmax.reset();
  }
  return r;
}

template <class F>
RhoResult rho(const pres::Presentation<F>& p) {
  return rho(certified_lengths(p));
}

struct QuasiDimension {
  long rounded = 0;
  unsigned long n_used = 0;
  RhoResult rho;
  Delta0 delta;
  bool certificate = false;  // n_used >= 10 rho
};

// The smallest even n >= max(10 rho, 2).
inline unsigned long rounding_order(const mpq_class& rho_value) {
  const mpq_class t = 10 * rho_value;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  unsigned long n = c.get_ui();
  if (n < 2) n = 2;
  if (n % 2) ++n;
  return n;
}

template <class F>
QuasiDimension quasi_dimension(const pres::Presentation<F>& p) {
  auto c = certified_lengths(p);
  QuasiDimension q;
  q.rho = rho(c);
  q.n_used = rounding_order(q.rho.value);
  if (!c.lengths.covers(q.n_used)) c.lengths = hilbert::jet_lengths(p, static_cast<unsigned>(q.n_used));
  q.delta = delta0_of_jet(c.lengths, q.n_used);
  q.rounded = q.delta.value.rounded;
  q.certificate = mpq_class(q.n_used) >= 10 * q.rho.value;
  return q;
}

enum class Slope { delta0, eps0, hilbert };

struct TraceEntry {
  unsigned long order = 0;
  mpq_class value = 0;
  std::string log2_decimal;                 // delta0 only
  std::vector<std::size_t> hilbert_prefix;  // hilbert only
};

struct SlopeTrace {
  Slope slope = Slope::delta0;
  std::vector<TraceEntry> entries;
  // hilbert: number of leading entries shared by consecutive prefixes.
  std::vector<std::size_t> agreement;
};

inline std::vector<std::size_t> hf_from_lengths(const hilbert::JetLengths& l, unsigned long n) {
  std::vector<std::size_t> hf;
  for (unsigned long k = 0; k < n; ++k) {
    const mpz_class h = l.at(k + 1) - l.at(k);
    if (h == 0) break;
    hf.push_back(h.get_ui());
  }
  return hf;
}

inline std::size_t common_prefix(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i;
}

inline SlopeTrace slope_trace(const hilbert::JetLengths& l, Slope slope, const std::vector<unsigned long>& orders) {
  if (orders.empty()) fail(ErrorKind::Usage, "trace needs at least one order");
  for (std::size_t i = 1; i < orders.size(); ++i)
    if (orders[i] <= orders[i - 1]) fail(ErrorKind::Usage, "trace orders must increase");
  SlopeTrace t;
  t.slope = slope;
  for (auto n : orders) {
    TraceEntry e;
    e.order = n;
    switch (slope) {
      case Slope::delta0: {
        const auto d = delta0_of_jet(l, n);
        e.value = d.value.ratio;
        e.log2_decimal = d.value.log2_decimal;
        break;
      }
      case Slope::eps0: e.value = eps0_of_jet(l, n).value; break;
      case Slope::hilbert: e.hilbert_prefix = hf_from_lengths(l, n); break;
    }
    t.entries.push_back(std::move(e));
  }
  if (slope == Slope::hilbert)
    for (std::size_t i = 1; i < t.entries.size(); ++i)
      t.agreement.push_back(common_prefix(t.entries[i - 1].hilbert_prefix, t.entries[i].hilbert_prefix));
  return t;
}

template <class F>
SlopeTrace slope_trace(const pres::Presentation<F>& p, Slope slope, const std::vector<unsigned long>& orders) {
  const unsigned long top = orders.empty() ? 0 : *std::max_element(orders.begin(), orders.end());
  return slope_trace(hilbert::jet_lengths(p, static_cast<unsigned>(top)), slope, orders);
}

}  // namespace jetmetric::slopes
