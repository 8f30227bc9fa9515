#include <gtest/gtest.h>

#include "jetmetric/artin/operations.hpp"
#include "jetmetric/metric/distance.hpp"
#include "jetmetric/presentation/presentation.hpp"
#include "jetmetric/presentation/template.hpp"

using namespace jetmetric;
using namespace jetmetric::metric;
using exact::GaloisField;
using exact::Rationals;

namespace {

template <class F>
pres::Presentation<F> P(const std::string& text) {
  return std::get<pres::Presentation<F>>(pres::parse_presentation(text));
}

template <class F>
void expect_consistent(const DistanceVerdict<F>& d) {
  EXPECT_LE(d.lower, d.upper);
  bool seen_gap = false;
  for (const auto& e : d.per_order) {
    if (e.verdict.status != iso::IsoStatus::iso) seen_gap = true;
    else EXPECT_FALSE(seen_gap) << "ISO after a non-ISO order";
  }
}

}  // namespace

TEST(JetDistance, IdenticalInputs) {
  const auto p = P<Rationals>("ring Q[x,y]; local; ideal: y^2 - x^3;");
  const auto d = jet_distance(p, p, 5);
  EXPECT_EQ(d.iso_through, 5u);
  EXPECT_EQ(d.upper, pow2_neg(5));
  EXPECT_EQ(d.lower, 0);
  EXPECT_FALSE(d.exact);
  ASSERT_EQ(d.per_order.size(), 5u);
  expect_consistent(d);
}

TEST(JetDistance, ExactExamples) {
  const auto a = jet_distance(P<Rationals>("ring Q[x]; local; ideal: x^2;"), P<Rationals>("ring Q[x]; local; ideal: x^3;"), 6);
  EXPECT_TRUE(a.exact);
  EXPECT_EQ(a.upper, mpq_class(1, 4));
  EXPECT_EQ(a.lower, mpq_class(1, 4));
  EXPECT_EQ(a.first_not_iso, 3u);
  EXPECT_EQ(a.per_order.back().verdict.separator->invariant, "length");

  const auto b = jet_distance(P<Rationals>("ring Q[x]; local; ideal: ;"), P<Rationals>("ring Q[x,y]; local; ideal: ;"), 6);
  EXPECT_TRUE(b.exact);
  EXPECT_EQ(b.upper, mpq_class(1, 2));
  EXPECT_EQ(b.lower, mpq_class(1, 2));
}

TEST(JetDistance, Fields) {
  const auto a = jet_distance(P<GaloisField>("ring F_2[x]; local; ideal: ;"),
                              P<GaloisField>("ring F_2^2 minpoly a^2 + a + 1 [x]; local; ideal: ;"), 3);
  EXPECT_TRUE(a.exact);
  EXPECT_EQ(a.upper, 1);
  EXPECT_THROW(jet_distance(P<GaloisField>("ring F_2[x]; local; ideal: ;"), P<GaloisField>("ring F_3[x]; local; ideal: ;"), 3),
               Error);
  EXPECT_THROW(jet_distance(pres::parse_presentation("ring Q[x]; local; ideal: ;"),
                            pres::parse_presentation("ring F_3[x]; local; ideal: ;"), 3),
               Error);
}

TEST(JetDistance, ExtensionBudgetChangesTheUpperBound) {
  const auto p = P<GaloisField>("ring F_3[x,y]; local; ideal: x^2, y^2;");
  const auto q = P<GaloisField>("ring F_3[x,y]; local; ideal: x*y, x^2 - y^2;");
  const auto d1 = jet_distance(p, q, 4, {1, 1000000});
  EXPECT_EQ(d1.iso_through, 2u);
  EXPECT_EQ(d1.per_order[2].verdict.status, iso::IsoStatus::unknown);
  const auto d2 = jet_distance(p, q, 4, {2, 1000000});
  EXPECT_EQ(d2.iso_through, 4u);
  expect_consistent(d1);
  expect_consistent(d2);
}

TEST(JetDistance, Symmetric) {
  const std::vector<std::string> texts{
      "ring F_2[x,y]; local; ideal: y^2 + x^3;",
      "ring F_2[x,y]; local; ideal: y^2 + x^3 + x^2*y^2;",
      "ring F_2[x,y]; local; ideal: y^2 + x^4;",
      "ring F_2[x,y]; local; ideal: x*y;",
  };
  for (const auto& s : texts)
    for (const auto& t : texts) {
      const auto ab = jet_distance(P<GaloisField>(s), P<GaloisField>(t), 5);
      const auto ba = jet_distance(P<GaloisField>(t), P<GaloisField>(s), 5);
      EXPECT_EQ(ab.lower, ba.lower);
      EXPECT_EQ(ab.upper, ba.upper);
      expect_consistent(ab);
    }
}

TEST(JetDistance, HilbertFunctionPrefixesAgreeUnderTheUpperBound) {
  const std::vector<std::string> texts{
      "ring F_3[x,y,z]; local; ideal: x*y - z^2;",
      "ring F_3[x,y,z]; local; ideal: x*y - z^2 + x^3;",
      "ring F_3[x,y,z]; local; ideal: x*y - z^2 + z^4, x^3;",
  };
  for (const auto& s : texts)
    for (const auto& t : texts) {
      const auto p = P<GaloisField>(s), q = P<GaloisField>(t);
      const auto d = jet_distance(p, q, 5);
      const unsigned n = d.iso_through;
      if (n == 0) continue;
      EXPECT_EQ(artin::hilbert_function(artin::jet(p, n)).hf, artin::hilbert_function(artin::jet(q, n)).hf);
    }
}

TEST(Ball, Radius) {
  EXPECT_EQ(ball_descriptor(artin::jet(P<Rationals>("ring Q[x]; local; ideal: ;"), 1)).radius, 1);
  EXPECT_EQ(ball_descriptor(artin::jet(P<Rationals>("ring Q[x]; local; ideal: x^3;"), 9)).radius, mpq_class(1, 4));
  EXPECT_EQ(ball_descriptor(artin::jet(P<Rationals>("ring Q[x,y]; local; ideal: ;"), 2)).radius, mpq_class(1, 2));
  EXPECT_THROW(ball_descriptor(artin::jet(P<Rationals>("ring Q[x]; local; ideal: ;"), 0)), Error);
}

TEST(DefpairDistance, Examples) {
  const auto line = P<Rationals>("ring Q[x]; local; ideal: ; tuple: x;");
  const auto same = defpair_distance(line, line, 5);
  EXPECT_EQ(same.iso_through, 5u);
  const auto fat = P<Rationals>("ring Q[x]; local; ideal: x^5; tuple: x;");
  const auto d = defpair_distance(line, fat, 8);
  EXPECT_TRUE(d.exact);
  EXPECT_EQ(d.upper, pow2_neg(5));
  EXPECT_EQ(d.first_not_iso, 6u);
  const auto two = P<Rationals>("ring Q[x,y]; local; ideal: ; tuple: x, y;");
  const auto m = defpair_distance(line, two, 5);
  EXPECT_TRUE(m.exact);
  EXPECT_EQ(m.upper, 1);
  EXPECT_TRUE(m.per_order.empty());
}

TEST(DefpairDistance, BoundsTheJetDistance) {
  const std::vector<std::string> texts{
      "ring F_2[x,y]; local; ideal: y^2 + x^3; tuple: x;",
      "ring F_2[x,y]; local; ideal: y^2 + x^3 + x^2*y; tuple: x;",
      "ring F_2[x,y]; local; ideal: y^2 + x^5; tuple: x;",
  };
  for (const auto& s : texts)
    for (const auto& t : texts) {
      const auto p = P<GaloisField>(s), q = P<GaloisField>(t);
      const auto dp = defpair_distance(p, q, 4);
      const auto dj = jet_distance(p, q, 4);
      EXPECT_LE(dj.upper, dp.upper) << s << " vs " << t;
    }
}

TEST(Composition, WitnessesCompose) {
  const auto p = P<GaloisField>("ring F_3[x,y]; local; ideal: x^2, y^2;");
  const auto q = P<GaloisField>("ring F_3[x,y]; local; ideal: x*y, x^2 - y^2;");
  const auto r = P<GaloisField>("ring F_3[x,y]; local; ideal: (x + y)*(x - y + x^2), x^2 + y^2 + y^3;");
  for (unsigned n = 2; n <= 4; ++n) {
    const auto a = artin::jet(p, n), b = artin::jet(q, n), c = artin::jet(r, n);
    const auto ab = iso::decide_isomorphism(a, b, {2, 1000000});
    const auto bc = iso::decide_isomorphism(b, c, {2, 1000000});
    ASSERT_EQ(ab.status, iso::IsoStatus::iso);
    ASSERT_EQ(bc.status, iso::IsoStatus::iso);
    const auto w = compose_verdicts(a, b, c, *ab.witness, *bc.witness);
    ASSERT_TRUE(w.has_value());
    const unsigned m = w->field.degree();
    EXPECT_TRUE(iso::verify_witness(artin::base_change(a, m), artin::base_change(c, m), *w).ok());
  }
}

TEST(LimitJets, CuspFamily) {
  const auto tpl = pres::parse_template("ring Q[x,y]; local; ideal: y^2 - x^w;", 1, 10);
  for (unsigned n = 3; n <= 5; ++n) {
    const auto r = std::get<LimitResult<Rationals>>(limit_jets(tpl, n));
    EXPECT_EQ(r.w0, static_cast<long>(n));
    const auto target = artin::jet(P<Rationals>("ring Q[x,y]; local; ideal: y^2;"), n);
    const auto v = iso::decide_isomorphism(r.stable_jet, target);
    EXPECT_EQ(v.status, iso::IsoStatus::iso);
    for (const auto& [w, verdict] : r.entries)
      if (w >= static_cast<long>(n)) EXPECT_EQ(verdict.status, iso::IsoStatus::iso);
  }
}

TEST(LimitJets, ConstantAndDivergentFamilies) {
  const auto constant = pres::parse_template("ring F_2[x,y]; local; ideal: x*y;", 1, 6);
  const auto r = std::get<LimitResult<GaloisField>>(limit_jets(constant, 4));
  EXPECT_EQ(r.w0, 1);
  EXPECT_TRUE(r.minimal_certified);
  const auto late = pres::parse_template("ring Q[x]; local; ideal: x^(11 - w);", 1, 10);
  try {
    limit_jets(late, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStabilized);
  }
}
