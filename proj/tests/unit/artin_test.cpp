#include <gtest/gtest.h>

#include <random>

#include "jetmetric/artin/algebra.hpp"
#include "jetmetric/artin/operations.hpp"
#include "jetmetric/iso/recheck.hpp"
#include "jetmetric/presentation/presentation.hpp"

using namespace jetmetric;
using namespace jetmetric::artin;
using exact::GaloisField;
using exact::Rationals;

namespace {

template <class F>
pres::Presentation<F> parse(const std::string& text) {
  return std::get<pres::Presentation<F>>(pres::parse_presentation(text));
}

auto Q(const std::string& text) { return parse<Rationals>(text); }
auto Fp(const std::string& text) { return parse<GaloisField>(text); }

template <class F>
std::vector<std::string> basis_names(const ArtinAlgebra<F>& a) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a.basis_name(i));
  return out;
}

template <class F>
typename ArtinAlgebra<F>::Vec random_element(const ArtinAlgebra<F>& a, std::mt19937& rng) {
  auto v = a.zero();
  for (auto& e : v) e = a.field().from_int(static_cast<long>(rng() % 7) - 3);
  return v;
}

std::vector<std::string> corpus() {
  return {
      "ring F_3[x,y]; local; ideal: y^2 - x^3;",
      "ring F_2[x,y,z]; local; ideal: x*y + z^3, y^2 - x*z;",
      "ring F_5[x,y]; graded; ideal: x^2, x*y^2;",
      "ring F_2[x]; local; ideal: x^5;",
      "ring F_7[x,y,z]; local; ideal: x^2 + y^3 + z^4;",
  };
}

}  // namespace

TEST(Jet, Examples) {
  EXPECT_EQ(jet(Q("ring Q[x]; local; ideal: x^2;"), 5).dim(), 2u);
  const auto cusp = jet(Q("ring Q[x,y]; local; ideal: y^2 - x^3;"), 3);
  ASSERT_EQ(cusp.dim(), 5u);
  const auto x = cusp.var_images()[0], y = cusp.var_images()[1];
  EXPECT_EQ(cusp.element_to_string(cusp.mul(x, y)), "x*y");
  EXPECT_TRUE(cusp.is_zero(cusp.mul(y, y)));
  EXPECT_EQ(jet(Q("ring Q[x,y]; local; ideal: ;"), 2).dim(), 3u);
  EXPECT_TRUE(jet(Q("ring Q[x,y]; local; ideal: ;"), 0).is_zero_ring());
  EXPECT_EQ(jet(Q("ring Q[x,y]; local; ideal: y^2 - x^3;"), 1).dim(), 1u);
}

TEST(Jet, CapacityLimit) {
  poly::QuotientLimits small{10, 400000};
  EXPECT_THROW(jet(Q("ring Q[x,y]; local; ideal: ;"), 6, small), Error);
}

TEST(HilbertFunction, Examples) {
  const auto a = hilbert_function(jet(Q("ring Q[x,y]; local; ideal: ;"), 3));
  EXPECT_EQ(a.length, 6u);
  EXPECT_EQ(a.hf, (std::vector<std::size_t>{1, 2, 3}));
  const auto b = hilbert_function(jet(Q("ring Q[x,y]; local; ideal: x^2, x*y, y^2;"), 2));
  EXPECT_EQ(b.hf, (std::vector<std::size_t>{1, 2}));
  // The cusp y^2 = x^3: x^2*y survives in degree 3 and so does x^3 = y^2.
  const auto c = hilbert_function(jet(Q("ring Q[x,y]; local; ideal: y^2 - x^3;"), 4));
  EXPECT_EQ(c.hf, (std::vector<std::size_t>{1, 2, 2, 2}));
  EXPECT_EQ(c.length, 7u);
}

TEST(HilbertFunction, AgreesWithIteratedProducts) {
  for (const auto& text : corpus())
    for (unsigned n = 1; n <= 6; ++n) {
      const auto a = jet(Fp(text), n);
      EXPECT_EQ(hilbert_function(a).hf, iso::hilbert_function_by_products(a)) << text << " n=" << n;
    }
}

TEST(Nilpotency, Examples) {
  EXPECT_EQ(nilpotency_index(jet(Q("ring Q[x]; local; ideal: x^4;"), 10)), 4u);
  EXPECT_EQ(nilpotency_index(jet(Q("ring Q[x,y]; local; ideal: x^2 - y^3, x*y;"), 1)), 1u);
  for (unsigned n = 2; n <= 6; ++n)
    EXPECT_EQ(nilpotency_index(jet(Q("ring Q[x,y]; local; ideal: x^2 - y^3;"), n)), n);
  EXPECT_THROW(nilpotency_index(jet(Q("ring Q[x]; local; ideal: ;"), 0)), Error);
}

TEST(Socle, Examples) {
  const auto a = jet(Q("ring Q[x,y]; local; ideal: x^2, y^2;"), 10);
  const auto s = socle(a);
  ASSERT_EQ(s.dim, 1u);
  EXPECT_EQ(a.element_to_string(s.basis[0]), "x*y");
  EXPECT_EQ(socle(jet(Q("ring Q[x,y]; local; ideal: x^2, x*y, y^3;"), 10)).dim, 2u);
  EXPECT_EQ(socle(jet(Q("ring Q[x]; local; ideal: x;"), 3)).dim, 1u);
  for (int r = 1; r <= 4; ++r) {
    std::string vars = "x1";
    for (int i = 2; i <= r; ++i) vars += ",x" + std::to_string(i);
    EXPECT_EQ(socle(jet(Q("ring Q[" + vars + "]; local; ideal: ;"), 2)).dim, static_cast<std::size_t>(r));
  }
  for (int k = 1; k <= 6; ++k)
    EXPECT_TRUE(is_gorenstein_artinian(jet(Q("ring Q[x]; local; ideal: x^" + std::to_string(k) + ";"), 10)));
}

TEST(Socle, MatchesAnnihilatorOfDegreeOneElements) {
  for (const auto& text : corpus())
    for (unsigned n = 1; n <= 5; ++n) {
      const auto a = jet(Fp(text), n);
      EXPECT_EQ(socle(a).dim, annihilator_of_power(a, 1).dim);
      EXPECT_EQ(socle(a).dim, iso::annihilator_dim_by_products(a, 1));
    }
}

TEST(Algebra, AssociativeCommutativeUnital) {
  std::mt19937 rng(41);
  for (const auto& text : corpus()) {
    const auto a = jet(Fp(text), 5);
    for (int t = 0; t < 100; ++t) {
      const auto x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
      EXPECT_EQ(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)));
      EXPECT_EQ(a.mul(x, y), a.mul(y, x));
      EXPECT_EQ(a.mul(a.one(), x), x);
    }
  }
}

TEST(Algebra, OnePlusNilpotentIsInvertible) {
  std::mt19937 rng(42);
  const auto a = jet(Fp("ring F_7[x,y]; local; ideal: x^3 - y^2;"), 6);
  const unsigned n = nilpotency_index(a);
  for (int t = 0; t < 20; ++t) {
    auto m = random_element(a, rng);
    m[0] = a.field().zero();
    // (1 + m)^{-1} = sum (-m)^k, finite since m^n = 0.
    auto inv = a.one();
    auto power = a.one();
    const auto neg = a.scale(m, a.field().from_int(-1));
    for (unsigned k = 1; k < n; ++k) {
      power = a.mul(power, neg);
      inv = a.add(inv, power);
    }
    EXPECT_EQ(a.mul(a.add(a.one(), m), inv), a.one());
  }
}

TEST(Algebra, RestrictionIsLowerJet) {
  for (const auto& text : corpus()) {
    const auto p = Fp(text);
    const auto big = jet(p, 6);
    for (unsigned c = 0; c <= 6; ++c) {
      const auto small = jet(p, c);
      const auto r = big.restrict_to(c);
      ASSERT_EQ(r.dim(), small.dim());
      EXPECT_EQ(basis_names(r), basis_names(small));
      for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = 0; j < r.dim(); ++j) EXPECT_EQ(r.product(i, j), small.product(i, j));
    }
  }
}

TEST(Defpair, Examples) {
  EXPECT_EQ(defpair_jet(Q("ring Q[x]; local; ideal: ; tuple: x;"), 3).dim(), 3u);
  const auto cusp = Q("ring Q[x,y]; local; ideal: y^2 - x^3; tuple: x;");
  const auto l1 = defpair_jet(cusp, 1).dim();
  EXPECT_EQ(l1, 2u);
  for (unsigned n = 1; n <= 4; ++n) EXPECT_EQ(defpair_jet(cusp, n).dim(), n * l1);
  try {
    defpair_jet(Q("ring Q[x,y]; local; ideal: ; tuple: x;"), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPrimary);
  }
}

TEST(Defpair, LengthOfRegularSystemOfParameters) {
  // R/(x^n, y^n) over k[x,y] has length n^2.
  const auto p = Fp("ring F_2[x,y]; local; ideal: ; tuple: x, y;");
  for (unsigned n = 1; n <= 4; ++n) EXPECT_EQ(defpair_jet(p, n).dim(), n * n);
}

TEST(BaseChange, PreservesInvariants) {
  for (const auto& text : {"ring F_2[x,y]; local; ideal: x^2 + x*y + y^2;", "ring F_2[x,y,z]; local; ideal: x*y, z^2 + x^3;"}) {
    const auto a = jet(Fp(text), 5);
    const auto b = base_change(a, 2);
    const auto c = base_change(b, 4);
    EXPECT_EQ(b.field().size(), 4u);
    EXPECT_EQ(c.field().size(), 16u);
    EXPECT_EQ(hilbert_function(a).hf, hilbert_function(c).hf);
    EXPECT_EQ(socle(a).dim, socle(b).dim);
    EXPECT_EQ(socle(a).dim, socle(c).dim);
    EXPECT_EQ(iso::hilbert_function_by_products(c), hilbert_function(a).hf);
  }
  EXPECT_THROW(base_change(jet(Q("ring Q[x]; local; ideal: x^2;"), 3), 2), Error);
  EXPECT_THROW(base_change(jet(Fp("ring F_2[x]; local; ideal: x^2;"), 3), 0), Error);
}
