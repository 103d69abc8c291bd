#include <random>

#include <gtest/gtest.h>

#include "frobcount/dsl.hpp"
#include "frobcount/error.hpp"
#include "frobcount/presets.hpp"
#include "support/printers.hpp"

namespace frobcount {
namespace {

ParseError parse_error(std::string_view text) {
  try {
    (void)parse_system(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ParseError(ErrorKind::Syntax, 0, 0, "");
}

TEST(Parse, FixedFieldFile) {
  const SystemFile f = parse_system("vars: x\nfield: p=2,t=4,m=2\nsystem:\n s(x) - x");
  EXPECT_EQ(f.vars, std::vector<std::string>{"x"});
  ASSERT_TRUE(f.field.has_value());
  EXPECT_EQ(f.field->p, 2u);
  EXPECT_EQ(f.field->t, 4u);
  EXPECT_EQ(f.field->m, 2u);
  ASSERT_EQ(f.system.size(), 1u);
  EXPECT_EQ(f.system[0], DiffPoly::variable(Domain::rationals(), 1, 0, 1) - DiffPoly::variable(Domain::rationals(), 1, 0));
}

TEST(Parse, IntroductionPolynomial) {
  const DiffPoly p = parse_expression("x * s(x) - y^2", {"x", "y"});
  const Domain q = Domain::rationals();
  EXPECT_EQ(p, DiffPoly::variable(q, 2, 0) * DiffPoly::variable(q, 2, 0, 1) -
                   DiffPoly::variable(q, 2, 1) * DiffPoly::variable(q, 2, 1));
}

TEST(Parse, UndeclaredSymbolIsPositioned) {
  const ParseError e = parse_error("vars: x\nsystem:\n  x + s(z)\n");
  EXPECT_EQ(e.kind(), ErrorKind::UndeclaredSymbol);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 9u);
}

TEST(Parse, SigmaNesting) {
  EXPECT_EQ(parse_expression("s(s(x))", {"x"}), parse_expression("s2(x)", {"x"}));
  EXPECT_EQ(parse_expression("s(x*y + 1)", {"x", "y"}), parse_expression("s(x)*s(y) + 1", {"x", "y"}));
  EXPECT_EQ(parse_expression("s16(x)", {"x"}).sigma_order(), 16u);
}

TEST(Parse, SigmaDepthLimit) {
  EXPECT_EQ(parse_error("vars: x\nsystem:\n s17(x)\n").kind(), ErrorKind::SigmaDepthExceeded);
  EXPECT_EQ(parse_error("vars: x\nsystem:\n s(s16(x))\n").kind(), ErrorKind::SigmaDepthExceeded);
  EXPECT_EQ(parse_error("vars: x\nsystem:\n s0(x)\n").kind(), ErrorKind::SigmaDepthExceeded);
}

TEST(Parse, SyntaxErrorsCarryExpectations) {
  const ParseError e = parse_error("vars: x\nsystem:\n x + * 2\n");
  EXPECT_EQ(e.kind(), ErrorKind::Syntax);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 6u);
  EXPECT_FALSE(e.expected().empty());

  const ParseError paren = parse_error("vars: x\nsystem:\n (x + 1\n");
  EXPECT_EQ(paren.expected(), std::vector<std::string>{"')'"});
}

TEST(Parse, MalformedInputsNeverCrash) {
  const char* bad[] = {
      "vars: x,\nsystem:\n x\n",         "vars: x x\n",
      "vars: s\n",                       "vars: s3\n",
      "vars: x, x\n",                    "field: p=2\n",
      "field: p=2,t=3,q=1\n",            "field: p=2,t=3,p=2\n",
      "schedule: (3,1)\n",               "schedule: p=2, (3,3)\n",
      "schedule: p=2, (3 1)\n",          "dim: x\n",
      "bogus: 1\n",                      "x + 1\n",
      "vars: x\nsystem:\n x^0\n",        "vars: x\nsystem:\n x^257\n",
      "vars: x\nsystem:\n x^y\n",        "vars: x\nsystem:\n s x\n",
      "vars: x\nsystem:\n x $ 1\n",      "field: p=99999999999999999999,t=1\n",
      "vars: x\nvars: y\n",              "vars: x\nsystem:\n )\n",
      "params: a=h\n",                   "vars: x\nsystem:\n s(\n",
  };
  for (const char* text : bad) {
    try {
      (void)parse_system(text);
      ADD_FAILURE() << "accepted:\n" << text;
    } catch (const ParseError& e) {
      EXPECT_GE(e.line(), 1u) << text;
      EXPECT_GE(e.column(), 1u) << text;
    }
  }
}

TEST(Parse, CommentsBlankLinesAndHeaderBodies) {
  const SystemFile f = parse_system("# header\n\nvars: x   # one var\nsystem: x - 1\n  # nothing\n  x^2 - 1\n");
  EXPECT_EQ(f.system.size(), 2u);
}

TEST(Parse, ParametersAndSchedule) {
  const SystemFile f = parse_system("vars: x\nparams: a=g^2+1, b, c=2*g-1\nschedule: p=3, (4,2), (6,1)\ndim: 1\nsystem:\n a*x - b*c\n");
  ASSERT_EQ(f.params.size(), 3u);
  EXPECT_EQ(f.params[0].name, "a");
  ASSERT_TRUE(f.params[0].value.has_value());
  EXPECT_EQ(f.params[0].value->g_coeffs, (std::vector<BigInt>{1, 0, 1}));
  EXPECT_FALSE(f.params[1].value.has_value());
  EXPECT_EQ(f.params[2].value->to_string(), "2*g-1");
  ASSERT_TRUE(f.schedule.has_value());
  EXPECT_EQ(f.schedule->p, 3u);
  EXPECT_EQ(f.schedule->pairs, (std::vector<std::pair<unsigned, unsigned>>{{4, 2}, {6, 1}}));
  EXPECT_EQ(f.dim, 1u);
  EXPECT_EQ(f.symbol_names(), (std::vector<std::string>{"x", "a", "b", "c"}));
  const DiffSystem sys = f.to_system();
  EXPECT_EQ(sys.arity, 1u);
  EXPECT_EQ(sys.declared_trf_dim, 1u);
}

TEST(Render, RoundTripOnExamples) {
  const char* files[] = {
      "vars: x\nfield: p=2,t=4,m=2\nsystem:\n s(x) - x",
      "vars: x, y\nsystem:\n x * s(x) - y^2\n",
      "vars: x, y\nfield: p=2,t=3,m=1,seed=9\nsystem:\n x*y\n",
  };
  for (const char* text : files) {
    const SystemFile f = parse_system(text);
    EXPECT_EQ(parse_system(render_system(f)), f) << render_system(f);
  }
}

TEST(Render, EmptySystemBlock) {
  const SystemFile f = parse_system("vars: x, y\nsystem:\n");
  EXPECT_EQ(render_system(f), "vars: x, y\nsystem:\n");
}

TEST(Render, ParametersInDeclarationOrder) {
  const SystemFile f = parse_system("vars: x\nparams: zeta=g, alpha\nsystem:\n x - zeta*alpha\n");
  const std::string text = render_system(f);
  EXPECT_LT(text.find("zeta"), text.find("alpha"));
  EXPECT_EQ(parse_system(text), f);
}

TEST(Render, RoundTripRandomSystems) {
  std::mt19937_64 rng(61);
  const char* atoms[] = {"x", "y", "s(x)", "s2(y)", "3", "a", "s(a)", "(x + 1)", "(y - a)"};
  for (int k = 0; k < 200; ++k) {
    std::string text = "vars: x, y\nparams: a=g+" + std::to_string(rng() % 4) + "\nsystem:\n";
    const int lines = static_cast<int>(rng() % 4);
    for (int l = 0; l < lines; ++l) {
      std::string expr;
      const int terms = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < terms; ++j) {
        if (j > 0) expr += rng() % 2 ? " + " : " - ";
        expr += atoms[rng() % 9];
        if (rng() % 3 == 0) expr += "^" + std::to_string(1 + rng() % 3);
        if (rng() % 2 == 0) expr += std::string("*") + atoms[rng() % 9];
      }
      text += "  " + expr + "\n";
    }
    const SystemFile f = parse_system(text);
    ASSERT_EQ(parse_system(render_system(f)), f) << text << "---\n" << render_system(f);
  }
}

TEST(Presets, AllParse) {
  const auto names = preset_names();
  EXPECT_GE(names.size(), 6u);
  for (const auto& n : names) {
    const SystemFile f = load_preset(n);
    EXPECT_EQ(parse_system(render_system(f)), f) << n;
  }
  EXPECT_THROW((void)load_preset("missing"), Error);
}

}  // namespace
}  // namespace frobcount
