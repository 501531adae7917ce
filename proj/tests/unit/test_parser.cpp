#include <gtest/gtest.h>

#include "bezout/parser.hpp"
#include "support/dsl.hpp"
#include "support/generators.hpp"

using namespace bezout;
using namespace bezout::testing;

namespace {

ParseError parse_error(std::string_view text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError("", 0, 0);
}

}  // namespace

TEST(Parser, IntegerFile) {
  ProblemFile p = parse_problem("ring Z; vars Y X; rank 1; g1 = Y^2 - X + 3;");
  EXPECT_EQ(p.ring, Ring::integers());
  EXPECT_EQ(p.vars, (std::vector<std::string>{"Y", "X"}));
  ASSERT_EQ(p.generators.size(), 1u);
  EXPECT_EQ(p.generators[0].first, "g1");
  const ModuleVector& g = p.generators[0].second;
  EXPECT_EQ(g.leading_monomial().exponents, (Exponents{2, 0}));
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(format_vector(g, p.vars), "Y^2 - X + 3");
  EXPECT_TRUE(same_order(g.order(), p.order));
}

TEST(Parser, ModularCoefficient) {
  ProblemFile p = parse_problem("ring Z/4; vars Y X; rank 1; g2 = 2*Y;");
  EXPECT_EQ(p.ring, Ring::integers_mod(4));
  EXPECT_EQ(p.generators[0].second.leading_coefficient(), p.ring.from_integer(2));
  ProblemFile q = parse_problem("ring Z/4; vars X; g = 7*X - 5;");
  EXPECT_EQ(format_vector(q.generators[0].second, q.vars), "3*X + 3");
}

TEST(Parser, MultiLineModuleFile) {
  ProblemFile p = parse_problem(
      "# field example\n"
      "ring Z/2;\n"
      "vars Y X;   # Y > X\n"
      "rank 2;\n"
      "u1 = [Y, X];\n"
      "u2 = [X, 0];\n");
  ASSERT_EQ(p.generators.size(), 2u);
  EXPECT_EQ(p.rank, 2u);
  EXPECT_EQ(p.generators[0].second.leading_position(), 0u);
  EXPECT_EQ(format_vector(p.generators[0].second, p.vars), "[Y, X]");
}

TEST(Parser, TruncatedNilpotent) {
  ProblemFile p = parse_problem("ring F2[y]/y^2; vars X2 X1; f = y*X2 + X1; g = (1 + y)*X1 + y;");
  const ModuleVector& g = p.generators[1].second;
  EXPECT_EQ(g.leading_coefficient(), p.ring.add(p.ring.one(), p.ring.nilpotent()));
  EXPECT_EQ(format_vector(g, p.vars), "(y + 1)*X1 + y");
  EXPECT_TRUE(parse_vector("y^2", p).is_zero());
}

TEST(Parser, LocalizedFractions) {
  ProblemFile p = parse_problem("ring Z_(2); vars Y X; g = 4/3*X - 1/5;");
  EXPECT_EQ(p.generators[0].second.leading_coefficient(), Element(mpq_class(4, 3)));
  EXPECT_EQ(format_vector(p.generators[0].second, p.vars), "4/3*X - 1/5");
}

TEST(Parser, UnitDivisionOverModular) {
  ProblemFile p = parse_problem("ring Z/12; vars X; g = X/5;");
  EXPECT_EQ(p.generators[0].second.leading_coefficient(), p.ring.from_integer(5));
}

TEST(Parser, Precedence) {
  Dsl d{Ring::integers(), {"Y", "X"}};
  EXPECT_EQ(d("-X^2"), d("0 - X*X"));
  EXPECT_EQ(d("(X + 1)^2"), d("X^2 + 2*X + 1"));
  EXPECT_EQ(d("2*X*Y - 3"), d("-3 + Y*X*2"));
  EXPECT_EQ(d("X^0"), d("1"));
}

TEST(ParserErrors, MissingVars) {
  ParseError e = parse_error("ring Z; rank 2; g = [X, 0];");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 17u);
  EXPECT_NE(e.message().find("vars"), std::string::npos);
  EXPECT_NE(parse_error("ring Z;").message().find("missing vars"), std::string::npos);
  EXPECT_NE(parse_error("vars X;").message().find("missing ring"), std::string::npos);
}

TEST(ParserErrors, RankMismatch) {
  ParseError e = parse_error("ring Z;\nvars Y X;\nrank 2;\ng = [X, 0, 1];\n");
  EXPECT_EQ(e.line(), 4u);
  EXPECT_EQ(e.column(), 5u);
  EXPECT_EQ(e.message(), "rank mismatch: expected 2 components, got 3");
  EXPECT_NE(parse_error("ring Z; vars X; rank 2; g = X;").message().find("rank mismatch"), std::string::npos);
}

TEST(ParserErrors, BadCoefficient) {
  ParseError e = parse_error("ring Z; vars X;\ng = 1/2*X;");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 6u);
  EXPECT_EQ(e.message(), "bad coefficient: 2 is not invertible in Z");
  EXPECT_NE(parse_error("ring Z/12; vars X; g = X/4;").message().find("not invertible in Z/12"), std::string::npos);
  EXPECT_NE(parse_error("ring Z_(2); vars X; g = 1/6;").message().find("not invertible"), std::string::npos);
  EXPECT_NE(parse_error("ring Z; vars X; g = 1/X;").message().find("constant"), std::string::npos);
  EXPECT_NE(parse_error("ring Z; vars X; g = 1/0;").message().find("division by zero"), std::string::npos);
}

TEST(ParserErrors, DuplicateNames) {
  ParseError e = parse_error("ring Z; vars X;\ng = X;\ng = 2;");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 1u);
  EXPECT_EQ(e.message(), "duplicate name 'g'");
  EXPECT_NE(parse_error("ring Z; vars X Y X;").message().find("duplicate variable"), std::string::npos);
  EXPECT_NE(parse_error("ring Z; vars X; X = 1;").message().find("already a variable"), std::string::npos);
  EXPECT_NE(parse_error("ring Z; ring Z; vars X;").message().find("duplicate ring"), std::string::npos);
}

TEST(ParserErrors, UnknownRing) {
  ParseError e = parse_error("ring Q; vars X;");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 6u);
  EXPECT_EQ(e.message(), "unknown ring 'Q'");
  EXPECT_NE(parse_error("ring Z/1; vars X;").line(), 0u);
  EXPECT_NE(parse_error("ring Z_(6); vars X;").line(), 0u);
  EXPECT_NE(parse_error("ring F2[y]/y^1; vars X;").line(), 0u);
}

TEST(ParserErrors, Misc) {
  EXPECT_NE(parse_error("ring Z; vars X; g = Z;").message().find("unknown variable 'Z'"), std::string::npos);
  EXPECT_NE(parse_error("ring F2[y]/y^2; vars y; g = y;").message().find("nilpotent"), std::string::npos);
  EXPECT_NE(parse_error("ring Z; vars X; g = X").message().find("end of input"), std::string::npos);
  EXPECT_NE(parse_error("ring Z; vars X; g = X^2000;").message().find("too large"), std::string::npos);
  EXPECT_NE(parse_error("ring Z; vars X; g = X; rank 2;").message().find("after generators"), std::string::npos);
  ParseError e = parse_error("ring Z; vars X;\ng = X $ 1;");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 7u);
}

TEST(ParserProperty, FormatRoundTrip) {
  Rng rng(77);
  int cases = 0;
  std::vector<std::string> names{"Y", "X"};
  for (const Ring& ring : property_rings()) {
    for (std::size_t rank : {1u, 3u}) {
      OrderPtr o = MonomialOrder::top_lex(Space{ring, 2, rank});
      for (int i = 0; i < 100; ++i) {
        ModuleVector v = random_vector(o, rng, 5, 4);
        std::string text = format_vector(v, names);
        ModuleVector back = parse_vector(text, ring, names, rank);
        EXPECT_EQ(back, v) << text;
        ++cases;
      }
    }
  }
  EXPECT_GE(cases, 1000);
}
