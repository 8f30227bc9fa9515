#include <gtest/gtest.h>

#include "jetmetric/artin/operations.hpp"
#include "jetmetric/hilbert/hilbert.hpp"
#include "jetmetric/metric/distance.hpp"
#include "jetmetric/presentation/presentation.hpp"
#include "jetmetric/resolution/resolution.hpp"
#include "support/corpus.hpp"

using namespace jetmetric;
using namespace jetmetric::resolution;
using exact::GaloisField;
using exact::Rationals;

namespace {

template <class F = Rationals>
pres::Presentation<F> P(const std::string& text) {
  return std::get<pres::Presentation<F>>(pres::parse_presentation(text));
}

std::string free_ring(int r) {
  std::string vars = "x1";
  for (int i = 2; i <= r; ++i) vars += ",x" + std::to_string(i);
  return "ring Q[" + vars + "]; graded; ideal: ;";
}

std::vector<std::size_t> prefix(const ResolutionData& r, std::size_t n) {
  return {r.ranks.begin(), r.ranks.begin() + static_cast<std::ptrdiff_t>(std::min(n, r.ranks.size()))};
}

// Independent check: sum_i (-1)^i sum_j beta_ij dim S_{t-j} against the
// Hilbert function of S/I from a direct rank computation in each degree.
template <class F>
void expect_rank_accounting(const pres::Presentation<F>& p, const ResolutionData& r, unsigned top) {
  const auto n = p.nvars();
  for (unsigned t = 0; t <= top; ++t) {
    long sum = 0;
    for (std::size_t i = 0; i < r.betti.size(); ++i)
      for (std::size_t j = 0; j < r.betti[i].size() && j <= t; ++j)
        sum += (i % 2 ? -1 : 1) * static_cast<long>(r.betti[i][j] * poly::count_of_degree(n, t - static_cast<unsigned>(j)));
    EXPECT_EQ(sum, static_cast<long>(poly::graded_component_rank(p.field, n, p.gens, t).hf)) << "t = " << t;
  }
}

}  // namespace

TEST(ResidueField, Examples) {
  const auto dual = betti_residue_field(P("ring Q[x]; graded; ideal: x^2;"), 10, 11);
  EXPECT_EQ(prefix(dual, 11), std::vector<std::size_t>(11, 1));
  EXPECT_FALSE(dual.pd.has_value());
  EXPECT_EQ(dual.pd_string(), ">= 10");
  for (std::size_t i = 0; i <= 10; ++i) EXPECT_EQ(dual.betti[i][i], 1u);

  const auto sq = betti_residue_field(P("ring Q[x,y]; graded; ideal: x^2, x*y, y^2;"), 8, 9);
  for (std::size_t i = 0; i <= 8; ++i) EXPECT_EQ(sq.ranks[i], std::size_t{1} << i);

  const auto plane = betti_residue_field(P("ring Q[x,y]; graded; ideal: ;"), 4, 6);
  EXPECT_EQ(plane.ranks, (std::vector<std::size_t>{1, 2, 1}));
  ASSERT_TRUE(plane.pd.has_value());
  EXPECT_EQ(*plane.pd, 2u);
  for (const auto* r : {&dual, &sq, &plane}) {
    EXPECT_TRUE(r->exact);
    EXPECT_TRUE(r->minimal);
  }
}

TEST(ResidueField, KoszulOverPolynomialRings) {
  for (int r = 1; r <= 4; ++r) {
    const auto res = betti_residue_field(P(free_ring(r)), static_cast<unsigned>(r) + 1, static_cast<unsigned>(r) + 2);
    ASSERT_EQ(res.ranks.size(), static_cast<std::size_t>(r) + 1);
    for (int i = 0; i <= r; ++i) {
      EXPECT_EQ(res.ranks[static_cast<std::size_t>(i)], poly::binomial(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(i)));
      EXPECT_EQ(res.betti[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)], res.ranks[static_cast<std::size_t>(i)]);
    }
    EXPECT_EQ(*res.pd, static_cast<std::size_t>(r));
  }
}

TEST(ResidueField, NonKoszulAlgebraHasOffDiagonalBetti) {
  // k[x,y]/(x^2, y^3): complete intersection with Poincare series
  // 1/(1-t)^2, but the generator y^3 gives a syzygy of internal degree 3.
  const auto r = betti_residue_field(P("ring Q[x,y]; graded; ideal: x^2, y^3;"), 4, 8);
  EXPECT_EQ(prefix(r, 5), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(r.betti[2][2], 2u);
  EXPECT_EQ(r.betti[2][3], 1u);
}

TEST(ResidueField, RejectsUngradedInput) {
  try {
    betti_residue_field(P("ring Q[x,y]; local; ideal: y^2 - x^3;"), 3, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Grading);
  }
  EXPECT_THROW(betti_residue_field(P("ring Q[x]; graded; ideal: x^2;"), 0, 3), Error);
  // A jet of a local curve is not graded either.
  EXPECT_THROW(betti_residue_field(artin::jet(P("ring Q[x,y]; local; ideal: y^2 - x^3;"), 6), 3, 5), Error);
}

TEST(Quotient, Examples) {
  const auto hyper = minimal_resolution_of_quotient(P("ring Q[x,y,z]; graded; ideal: x^4 + y^4 + z^4;"));
  EXPECT_EQ(hyper.ranks, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(*hyper.pd, 1u);
  EXPECT_TRUE(hyper.complete);

  const auto fat = minimal_resolution_of_quotient(P("ring Q[x,y]; graded; ideal: x^2, x*y, y^2;"));
  EXPECT_EQ(fat.ranks, (std::vector<std::size_t>{1, 3, 2}));
  EXPECT_EQ(fat.betti[1][2], 3u);
  EXPECT_EQ(fat.betti[2][3], 2u);
  EXPECT_EQ(*fat.pd, 2u);

  const auto zero = minimal_resolution_of_quotient(P("ring Q[x,y]; graded; ideal: ;"));
  EXPECT_EQ(*zero.pd, 0u);
  EXPECT_EQ(zero.ranks, (std::vector<std::size_t>{1}));

  const auto embedded = minimal_resolution_of_quotient(P("ring Q[x,y]; graded; ideal: x^2, x*y;"));
  EXPECT_EQ(embedded.ranks, (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(embedded.betti[2][3], 1u);
}

TEST(Classify, Examples) {
  const auto cone = depth_and_classify(P("ring Q[x,y,z]; graded; ideal: x^4 + y^4 + z^4;"));
  EXPECT_EQ(cone.depth, 2u);
  EXPECT_EQ(cone.dim, 2u);
  EXPECT_EQ(cone.embdim, 3u);
  EXPECT_TRUE(cone.cohen_macaulay);
  EXPECT_EQ(cone.gorenstein, Tri::yes);
  EXPECT_FALSE(cone.regular);

  const auto plane = depth_and_classify(P("ring Q[x,y]; graded; ideal: ;"));
  EXPECT_TRUE(plane.regular);
  EXPECT_TRUE(plane.cohen_macaulay);
  EXPECT_EQ(plane.gorenstein, Tri::yes);
  EXPECT_EQ(plane.depth, 2u);
  EXPECT_EQ(plane.dim, 2u);

  const auto emb = depth_and_classify(P("ring Q[x,y]; graded; ideal: x^2, x*y;"));
  EXPECT_EQ(emb.pd, 2u);
  EXPECT_EQ(emb.depth, 0u);
  EXPECT_EQ(emb.dim, 1u);
  EXPECT_FALSE(emb.cohen_macaulay);
  EXPECT_EQ(emb.gorenstein, Tri::unknown);

  // Twisted cubic: CM of codimension 2 with three generators, so not Gorenstein.
  const auto cubic = depth_and_classify(P("ring Q[x,y,z,u]; graded; ideal: x*z - y^2, y*u - z^2, x*u - y*z;"));
  EXPECT_EQ(cubic.resolution.ranks, (std::vector<std::size_t>{1, 3, 2}));
  EXPECT_TRUE(cubic.cohen_macaulay);
  EXPECT_EQ(cubic.gorenstein, Tri::no);

  EXPECT_EQ(depth_and_classify(P("ring Q[x,y]; graded; ideal: x^2, y^2;")).gorenstein, Tri::yes);
  EXPECT_EQ(depth_and_classify(P("ring Q[x,y]; graded; ideal: x^2, x*y, y^2;")).gorenstein, Tri::no);
  EXPECT_THROW(depth_and_classify(P("ring Q[x]; local; ideal: x^2;")), Error);
}

TEST(Quotient, CorpusProperties) {
  for (const auto& text : corpus::graded_corpus(23, 30)) {
    SCOPED_TRACE(text);
    std::visit(
        [&](const auto& p) {
          const auto r = minimal_resolution_of_quotient(p);
          ASSERT_TRUE(r.complete);
          EXPECT_TRUE(r.exact);
          EXPECT_TRUE(r.minimal);
          EXPECT_LE(*r.pd, p.nvars());
          expect_rank_accounting(p, r, 16);
          const auto c = depth_and_classify(p);
          EXPECT_EQ(c.depth + c.pd, p.nvars());
          EXPECT_LE(c.depth, c.dim);
        },
        pres::parse_presentation(text));
  }
}

TEST(ResidueField, BaseChangeInvariant) {
  const auto p = P<GaloisField>("ring F_2[x,y,z]; graded; ideal: x^2 + y*z, y^3, x*z^2;");
  const auto a = artin::jet(p, 7);
  const auto base = betti_residue_field(a, 4, 6);
  for (unsigned m : {2u, 4u}) {
    const auto ext = betti_residue_field(artin::base_change(a, m), 4, 6);
    EXPECT_EQ(ext.betti, base.betti) << "m = " << m;
  }
}

TEST(ResidueField, IsomorphicJetsShareBettiPrefixes) {
  // Over F_3, x -> x + y, y -> x - y carries (x^2 + y^2, x*y) to (x^2, y^2).
  const auto a = P<GaloisField>("ring F_3[x,y]; graded; ideal: x^2, y^2;");
  const auto b = P<GaloisField>("ring F_3[x,y]; graded; ideal: x^2 + y^2, x*y;");
  const auto d = metric::jet_distance(a, b, 4);
  EXPECT_EQ(d.iso_through, 4u);
  const auto ra = betti_residue_field(a, 5, 8);
  const auto rb = betti_residue_field(b, 5, 8);
  EXPECT_EQ(ra.betti, rb.betti);
  EXPECT_EQ(prefix(ra, 6), (std::vector<std::size_t>{1, 2, 3, 4, 5, 6}));
}
