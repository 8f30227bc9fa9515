#include <gtest/gtest.h>

#include <random>

#include "jetmetric/presentation/presentation.hpp"
#include "jetmetric/presentation/template.hpp"

using namespace jetmetric;
using namespace jetmetric::pres;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_presentation(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Usage;
}

}  // namespace

TEST(Parse, SimpleRational) {
  const auto p = std::get<Presentation<exact::Rationals>>(parse_presentation("ring Q[x]; local; ideal: x^2;"));
  EXPECT_EQ(p.vars, (std::vector<std::string>{"x"}));
  ASSERT_EQ(p.gens.size(), 1u);
  EXPECT_EQ(p.gens[0].to_string(p.vars), "x^2");
  EXPECT_EQ(p.mode, Mode::local);
  EXPECT_FALSE(p.tuple);
}

TEST(Parse, GradedHomogeneityCheck) {
  EXPECT_NO_THROW(parse_presentation("ring F_5[x,y]; graded; ideal: x*y, x^3 - y^3;"));
  EXPECT_EQ(kind_of("ring F_5[x,y]; graded; ideal: x*y, x^3 - y^2;"), ErrorKind::Grading);
}

TEST(Parse, TupleAndNewlines) {
  const auto p = std::get<Presentation<exact::Rationals>>(parse_presentation(
      "# cusp with a parameter\n"
      "ring Q[x,y]\n"
      "local\n"
      "ideal: y^2 -\n"
      "   x^3\n"
      "tuple: x\n"));
  EXPECT_EQ(p.gens[0].to_string(p.vars), "-x^3 + y^2");
  ASSERT_TRUE(p.tuple);
  EXPECT_EQ((*p.tuple)[0].to_string(p.vars), "x");
}

TEST(Parse, EmptyIdealAndFractions) {
  const auto p = std::get<Presentation<exact::Rationals>>(parse_presentation("ring Q[x,y]; local; ideal: ;"));
  EXPECT_TRUE(p.gens.empty());
  const auto r = std::get<Presentation<exact::Rationals>>(
      parse_presentation("ring Q[x,y]; local; ideal: 1/2*x^2 - (x+y)*(x-y)/3, -2/4*y^3;"));
  EXPECT_EQ(r.gens[0].to_string(r.vars), "1/6*x^2 + 1/3*y^2");
  EXPECT_EQ(r.gens[1].to_string(r.vars), "-1/2*y^3");
}

TEST(Parse, PrimeFieldReducesCoefficients) {
  const auto p = std::get<Presentation<exact::GaloisField>>(parse_presentation("ring F_3[x]; local; ideal: 4*x^2 + 3*x;"));
  EXPECT_EQ(p.gens[0].to_string(p.vars), "x^2");
}

TEST(Parse, ExtensionField) {
  const auto p = std::get<Presentation<exact::GaloisField>>(
      parse_presentation("ring F_3^2 minpoly a^2 + 1 [u,v]; local; ideal: u*v, u^2 - a*v^2;"));
  EXPECT_EQ(p.field.size(), 9u);
  EXPECT_EQ(p.field.mul(p.field.generator(), p.field.generator()), p.field.from_int(-1));
  EXPECT_EQ(kind_of("ring F_2^2 minpoly a^2 + 1 [x]; local; ideal: x;"), ErrorKind::Field);
  EXPECT_EQ(kind_of("ring F_3^2 minpoly a^2 + 1 [a]; local; ideal: a;"), ErrorKind::Syntax);
}

TEST(Parse, Errors) {
  EXPECT_EQ(kind_of("ring F_4[x]; local; ideal: x;"), ErrorKind::Field);
  EXPECT_EQ(kind_of("ring Q[x]; local; ideal: x + 1;"), ErrorKind::ConstantTerm);
  EXPECT_EQ(kind_of("ring Q[x]; local; ideal: x; tuple: 1 + x;"), ErrorKind::ConstantTerm);
  EXPECT_EQ(kind_of("ring Q[x]; local; ideal: z;"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("ring Q[x]; ideal: x;"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("ring Q[x]; local; ideal: x/x;"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("ring Q[x,x]; local; ideal: x;"), ErrorKind::Syntax);
  try {
    parse_presentation("ring Q[x]\nlocal\nideal: x $ 2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_EQ(e.message().rfind("3:10:", 0), 0u) << e.message();
  }
}

TEST(Print, RoundTripOnRandomPresentations) {
  std::mt19937 rng(31);
  const std::vector<std::string> fields{"Q", "F_2", "F_7", "F_2^3 minpoly a^3 + a + 1"};
  const std::vector<std::string> atoms{"x", "y", "z", "x^2", "y*z", "3", "1/2", "a", "(x - y)"};
  for (int t = 0; t < 60; ++t) {
    const std::string fld = fields[rng() % fields.size()];
    const bool ext = fld.find("minpoly") != std::string::npos;
    std::string text = "ring " + fld + "[x,y,z]; local; ideal: ";
    for (int g = 0, ng = 1 + rng() % 3; g < ng; ++g) {
      if (g) text += ", ";
      for (int k = 0, nk = 1 + rng() % 3; k < nk; ++k) {
        if (k) text += rng() % 2 ? " + " : " - ";
        std::string a = atoms[rng() % atoms.size()];
        while ((a == "a" && !ext) || (a == "1/2" && fld.rfind("F_2", 0) == 0)) a = atoms[rng() % atoms.size()];
        text += "x*" + a;
      }
    }
    text += "; tuple: x, y + z;";
    const auto p = parse_presentation(text);
    const auto printed = print_presentation(p);
    const auto again = parse_presentation(printed);
    EXPECT_EQ(p, again) << text << "\n" << printed;
    EXPECT_EQ(print_presentation(again), printed);
  }
}

TEST(Template, InstantiateAndRange) {
  const auto tpl = parse_template("ring Q[x,y]; local; ideal: y^2 - x^w;\nrange: 1..10\n");
  EXPECT_EQ(tpl.lo, 1);
  EXPECT_EQ(tpl.hi, 10);
  const auto p4 = std::get<Presentation<exact::Rationals>>(instantiate_template(tpl, 4));
  EXPECT_EQ(p4.gens[0].to_string(p4.vars), "-x^4 + y^2");
  const auto p1 = std::get<Presentation<exact::Rationals>>(instantiate_template(tpl, 1));
  EXPECT_EQ(p1.gens[0].to_string(p1.vars), "y^2 - x");
  EXPECT_THROW(instantiate_template(tpl, 11), Error);
  try {
    instantiate_template(tpl, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Range);
  }
}

TEST(Template, ErrorsCarryParameter) {
  const auto tpl = parse_template("ring Q[x]; local; ideal: x^w - w + 2;", 1, 3);
  try {
    instantiate_template(tpl, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConstantTerm);
    EXPECT_NE(e.message().find("w = 3"), std::string::npos);
  }
  EXPECT_NO_THROW(instantiate_template(tpl, 2));
}

TEST(Parse, IntegerExponentExpressions) {
  const auto a = std::get<pres::Presentation<exact::Rationals>>(parse_presentation("ring Q[x]; local; ideal: x^(11 - 3*2);"));
  EXPECT_EQ(a.gens[0].to_string(a.vars), "x^5");
  EXPECT_THROW(parse_presentation("ring Q[x]; local; ideal: x^(1 - 3);"), Error);
  EXPECT_THROW(parse_presentation("ring Q[x]; local; ideal: x^(y);"), Error);
}
