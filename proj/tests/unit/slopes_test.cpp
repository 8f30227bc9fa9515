#include <gtest/gtest.h>

#include <cmath>

#include "jetmetric/artin/operations.hpp"
#include "jetmetric/hilbert/hilbert.hpp"
#include "jetmetric/presentation/presentation.hpp"
#include "jetmetric/slopes/slopes.hpp"
#include "support/corpus.hpp"

using namespace jetmetric;
using namespace jetmetric::slopes;
using exact::Rationals;

namespace {

pres::Presentation<Rationals> Q(const std::string& text) {
  return std::get<pres::Presentation<Rationals>>(pres::parse_presentation(text));
}

std::string free_ring(int d) {
  std::string vars = "x1";
  for (int i = 2; i <= d; ++i) vars += ",x" + std::to_string(i);
  return "ring Q[" + vars + "]; local; ideal: ;";
}

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Two-sided bound n^d - rho n^{d-1} <= d!/e l_n <= n^d + rho n^{d-1}.
bool rho_bound_holds(const RhoResult& r, const mpq_class& rho_value, const mpz_class& length, unsigned long n) {
  mpz_class fact = 1, nd = 1, nd1 = 1;
  for (unsigned i = 2; i <= r.d; ++i) fact *= i;
  for (unsigned i = 0; i < r.d; ++i) nd *= n;
  for (unsigned i = 1; i < r.d; ++i) nd1 *= n;
  const mpq_class mid = mpq_class(fact * length) / r.e;
  return mpq_class(nd) - rho_value * mpq_class(nd1) <= mid && mid <= mpq_class(nd) + rho_value * mpq_class(nd1);
}

}  // namespace

TEST(Delta0, Examples) {
  const auto a = delta0(artin::jet(Q("ring Q[x]; local; ideal: x^4;"), 10));
  EXPECT_EQ(a.value.ratio, 2);
  EXPECT_EQ(a.value.rounded, 1);
  EXPECT_EQ(a.value.log2_decimal, "1.000000000000");

  const auto b = delta0(artin::jet(Q("ring Q[x,y]; local; ideal: ;"), 10));
  EXPECT_EQ(b.value.ratio, mpq_class(11, 3));
  EXPECT_NEAR(std::stod(b.value.log2_decimal), std::log2(11.0 / 3.0), 1e-11);
  EXPECT_EQ(b.value.log2_decimal.substr(0, 8), "1.874469");
  EXPECT_EQ(b.value.rounded, 2);

  const auto l = hilbert::jet_lengths(Q("ring Q[x,y,z]; local; ideal: ;"), 0);
  const auto c = delta0_of_jet(l, 50);
  EXPECT_EQ(c.length, 22100);
  EXPECT_EQ(c.half_length, 2925);
  EXPECT_EQ(c.value.ratio, mpq_class(22100) / 2925);
  EXPECT_NEAR(std::stod(c.value.log2_decimal), std::log2(22100.0 / 2925.0), 1e-11);
  EXPECT_EQ(c.value.rounded, 3);
}

TEST(Delta0, NilpotencyOneRejected) {
  try {
    delta0(artin::jet(Q("ring Q[x]; local; ideal: ;"), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NilpotencyOne);
  }
}

TEST(Delta0, AlgebraAndLengthProfileAgree) {
  for (const auto& text : {"ring Q[x,y]; local; ideal: y^2 - x^3;", "ring Q[x,y,z]; local; ideal: x*y - z^3, x^2;"}) {
    const auto p = Q(text);
    const auto l = hilbert::jet_lengths(p, 12);
    for (unsigned n = 2; n <= 12; ++n) {
      const auto a = delta0(artin::jet(p, n));
      const auto b = delta0_of_jet(l, n);
      EXPECT_EQ(a.value.ratio, b.value.ratio);
      EXPECT_EQ(eps0(artin::jet(p, n)).value, eps0_of_jet(l, n).value);
    }
  }
}

TEST(RoundLog2, ExactThresholds) {
  for (long k = -5; k <= 20; ++k) {
    EXPECT_EQ(round_log2(pow2(k)), k);
    // Just inside and outside 2^{k + 1/2}: 2^k * 1.4142 and 2^k * 1.4143.
    EXPECT_EQ(round_log2(pow2(k) * mpq_class(14142, 10000)), k);
    EXPECT_EQ(round_log2(pow2(k) * mpq_class(14143, 10000)), k + 1);
  }
}

TEST(Eps0, Examples) {
  EXPECT_EQ(eps0(artin::jet(Q("ring Q[x]; local; ideal: ;"), 16)).value, 1);
  const auto l = hilbert::jet_lengths(Q("ring Q[x,y]; local; ideal: ;"), 0);
  EXPECT_EQ(eps0_of_jet(l, 100).value, mpq_class(121, 202));
  EXPECT_EQ(eps0(artin::jet(Q("ring Q[x]; local; ideal: ;"), 1)).value, 1);
}

TEST(Eps0, Convergence) {
  const auto l = hilbert::jet_lengths(Q("ring Q[x,y]; local; ideal: ;"), 0);
  const auto e = eps0_of_jet(l, 10000);
  EXPECT_EQ(e.length, mpz_class(10000) * 10001 / 2);
  EXPECT_EQ(e.root_length, 5050);
  EXPECT_LE(abs(e.value - mpq_class(1, 2)), mpq_class(1, 20));
  const auto line = hilbert::jet_lengths(Q("ring Q[x]; local; ideal: ;"), 0);
  for (unsigned long n = 1; n <= 12; ++n) EXPECT_EQ(eps0_of_jet(line, n * n).value, 1);
}

TEST(Rho, Examples) {
  const auto a = rho(Q(free_ring(1)));
  EXPECT_EQ(a.value, 0);
  const auto b = rho(Q(free_ring(2)));
  EXPECT_EQ(b.value, 1);
  EXPECT_TRUE(b.attained);
  EXPECT_EQ(b.tail_limit, 1);
  const auto c = rho(Q(free_ring(3)));
  EXPECT_EQ(c.value, 5);
  EXPECT_TRUE(c.attained);
  EXPECT_EQ(c.argmax, 1u);
  EXPECT_EQ(c.tail_limit, 3);
  EXPECT_EQ(c.d, 3u);
  EXPECT_EQ(c.e, 1);
  try {
    rho(Q("ring Q[x]; local; ideal: x^3;"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionZero);
  }
}

TEST(Rho, LocalCurve) {
  // l_n = 2n - 1, e = 2, d = 1: f(n) = (2n - 1)/2 - n = -1/2.
  const auto r = rho(Q("ring Q[x,y]; local; ideal: y^2 - x^3;"));
  EXPECT_EQ(r.value, mpq_class(1, 2));
  EXPECT_EQ(r.tail_limit, mpq_class(-1, 2));
  EXPECT_EQ(r.source, "local-fitted");
}

TEST(Rho, SoundAndTight) {
  std::vector<std::string> texts{free_ring(1), free_ring(2), free_ring(3), free_ring(4),
                                 "ring Q[x,y,z]; graded; ideal: x^4 + y^4 + z^4;",
                                 "ring Q[x,y,z]; local; ideal: x*y - z^2;",
                                 "ring Q[x,y]; local; ideal: y^2 - x^3;",
                                 "ring Q[x,y,z]; local; ideal: x^2 - y^3, z^2 - x*y;"};
  for (const auto& text : texts) {
    SCOPED_TRACE(text);
    const auto p = Q(text);
    const auto c = certified_lengths(p);
    const auto r = rho(c);
    const unsigned long top = std::max<unsigned long>(r.scan_to, 60);
    bool fails_below = false;
    for (unsigned long n = 1; n <= top; ++n) {
      EXPECT_TRUE(rho_bound_holds(r, r.value, c.length(n), n)) << "n = " << n;
      if (!rho_bound_holds(r, r.value - mpq_class(1, 1000), c.length(n), n)) fails_below = true;
    }
    if (r.attained) EXPECT_TRUE(fails_below);
  }
}

TEST(QuasiDimension, Examples) {
  const auto a = quasi_dimension(Q(free_ring(2)));
  EXPECT_EQ(a.n_used, 10u);
  EXPECT_EQ(a.rounded, 2);
  EXPECT_TRUE(a.certificate);
  const auto b = quasi_dimension(Q(free_ring(3)));
  EXPECT_EQ(b.n_used, 50u);
  EXPECT_EQ(b.rounded, 3);
  const auto c = quasi_dimension(Q(free_ring(1)));
  EXPECT_EQ(c.n_used, 2u);
  EXPECT_EQ(c.delta.value.ratio, 2);
  EXPECT_EQ(c.rounded, 1);
  const auto d = quasi_dimension(Q("ring Q[x,y]; local; ideal: y^2 - x^3;"));
  EXPECT_EQ(d.n_used, 6u);
  EXPECT_EQ(d.rounded, 1);
}

TEST(QuasiDimension, RoundingHoldsForEveryEvenOrder) {
  for (int d = 1; d <= 4; ++d) {
    const auto p = Q(free_ring(d));
    const auto c = certified_lengths(p);
    const auto r = rho(c);
    for (unsigned long n = rounding_order(r.value); n <= 120; n += 2)
      EXPECT_EQ(delta0_of_jet(c.lengths, n).value.rounded, d) << "d = " << d << " n = " << n;
  }
}

TEST(QuasiDimension, MatchesHilbertDimension) {
  for (const auto& text : corpus::graded_corpus(17, 24)) {
    std::visit(
        [&](const auto& p) {
          const auto h = hilbert::hilbert_series(p, hilbert::default_prefix_length(p));
          if (h.dim == 0) return;
          EXPECT_EQ(quasi_dimension(p).rounded, static_cast<long>(h.dim)) << text;
        },
        pres::parse_presentation(text));
  }
}

TEST(Delta0, ConvergesAlongEvenOrders) {
  for (int d = 1; d <= 4; ++d) {
    const auto l = hilbert::jet_lengths(Q(free_ring(d)), 0);
    mpq_class prev_gap = -1;
    for (unsigned long n = 2; n <= 60; n += 2) {
      const auto v = delta0_of_jet(l, n);
      // Independent check of the lengths: binomial(n - 1 + d, d).
      EXPECT_EQ(v.length, binom(n - 1 + d, d));
      const long double gap = std::fabs(log2_of(v.value.ratio) - d);
      const mpq_class g(static_cast<double>(gap));
      if (prev_gap >= 0) EXPECT_LE(g, prev_gap + mpq_class(1, 1000000000)) << d << " " << n;
      prev_gap = g;
    }
  }
}

TEST(Trace, Examples) {
  const auto p = Q(free_ring(2));
  std::vector<unsigned long> orders;
  for (unsigned long n = 4; n <= 40; n += 2) orders.push_back(n);
  const auto t = slope_trace(p, Slope::delta0, orders);
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto n = t.entries[i].order;
    EXPECT_EQ(t.entries[i].value, mpq_class(n * (n + 1) / 2) / ((n / 2) * (n / 2 + 1) / 2));
    if (i) EXPECT_GT(t.entries[i].value, t.entries[i - 1].value);
    EXPECT_LT(t.entries[i].value, 4);
  }
  const auto e = slope_trace(Q(free_ring(1)), Slope::eps0, {4, 9, 16, 25});
  for (const auto& entry : e.entries) EXPECT_EQ(entry.value, 1);
  const auto h = slope_trace(Q("ring Q[x,y]; local; ideal: y^2 - x^3;"), Slope::hilbert, {2, 3, 4, 5});
  EXPECT_EQ(h.entries.back().hilbert_prefix, (std::vector<std::size_t>{1, 2, 2, 2, 2}));
  EXPECT_EQ(h.agreement, (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_THROW(slope_trace(p, Slope::eps0, {5, 4}), Error);
}
