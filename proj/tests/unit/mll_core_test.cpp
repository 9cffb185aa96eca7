#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "locus/mll/derivation.hpp"
#include "locus/mll/formula.hpp"
#include "locus/mll/graph.hpp"
#include "locus/mll/structure.hpp"

using namespace locus::mll;

namespace {

ParaproofStructure fixture(const std::string& name) {
  std::ifstream in(std::string(LOCUS_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str());
}

const Formula X = Formula::atom("X");
const Formula Y = Formula::atom("Y");
const Formula Z = Formula::atom("Z");

}  // namespace

TEST(Formula, DualIsInvolutiveDeMorgan) {
  EXPECT_EQ(dual(X), Formula::dual_atom("X"));
  EXPECT_EQ(dual(dual(Formula::tensor(X, Y))), Formula::tensor(X, Y));
  EXPECT_EQ(dual(Formula::tensor(X, Y)), Formula::par(dual(X), dual(Y)));
}

TEST(Formula, SubformulaAt) {
  EXPECT_EQ(*subformula_at(X, ""), X);
  EXPECT_EQ(*subformula_at(Formula::par(Formula::tensor(X, Y), Z), "12"), Y);
  EXPECT_FALSE(subformula_at(X, "1").has_value());
}

TEST(Formula, TextRoundTrip) {
  for (std::string text : {"X", "X^", "(X * Y^)", "((X % Y) * (Z^ % X))"})
    EXPECT_EQ(to_string(parse_formula(text)), text);
  EXPECT_EQ(parse_formula("(X * Y)^"), parse_formula("(X^ % Y^)"));
  EXPECT_THROW(parse_formula("(X * Y"), ParseError);
}

TEST(Formula, ParseErrorCarriesPosition) {
  try {
    parse_formula("(X # Y)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 1u);
    EXPECT_EQ(e.column, 4u);
  }
}

TEST(Structure, AxiomValidatesInBothModes) {
  auto s = fixture("axiom.net");
  EXPECT_TRUE(validate_structure(s, Mode::Paraproof).ok);
  EXPECT_TRUE(validate_structure(s, Mode::Proof).ok);
  s.classes = {{{0, ""}}, {{1, ""}}};
  EXPECT_TRUE(validate_structure(s, Mode::Paraproof).ok);
  auto d = validate_structure(s, Mode::Proof);
  EXPECT_FALSE(d.ok);
  EXPECT_EQ(d.rule, "axiom-shape");
}

TEST(Structure, DiagnosticsNameTheRule) {
  auto s = fixture("axiom.net");
  s.classes = {{{0, ""}}};
  EXPECT_EQ(validate_structure(s, Mode::Paraproof).rule, "coverage");
  s = fixture("axiom.net");
  s.classes.push_back({{0, ""}});
  EXPECT_EQ(validate_structure(s, Mode::Paraproof).rule, "overlap");
  s = fixture("par.net");
  s.trees[0].leaves = {"1"};
  s.classes = {{{0, "1"}}};
  EXPECT_EQ(validate_structure(s, Mode::Paraproof).rule, "incomplete-frontier");
  s = fixture("axiom.net");
  s.trees[0].leaves = {"1"};
  EXPECT_EQ(validate_structure(s, Mode::Paraproof).rule, "undefined-occurrence");
  s = fixture("axiom.net");
  s.cuts = {{0, 0}};
  EXPECT_EQ(validate_structure(s, Mode::Paraproof).rule, "cut-self");
  s = fixture("mix.net");
  s.cuts = {{0, 2}};
  EXPECT_EQ(validate_structure(s, Mode::Paraproof).rule, "cut-duality");
}

TEST(Structure, TextRoundTripIsBitExact) {
  for (auto name : {"axiom.net", "par.net", "mix.net", "cut.net"}) {
    auto s = fixture(name);
    EXPECT_EQ(parse_structure(to_string(s)), s) << name;
    EXPECT_EQ(to_string(parse_structure(to_string(s))), to_string(s)) << name;
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto s = random_structure(seed, 10, Mode::Paraproof, seed % 2 == 0, 0.5);
    EXPECT_EQ(to_string(parse_structure(to_string(s))), to_string(s));
  }
}

TEST(Structure, ParseErrorsReportLine) {
  try {
    parse_structure("tree 0: X @ {.}\nclass {0:.\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
  }
}

TEST(Derivation, DaimonAxiom) {
  auto s = build_from_derivation(*Derivation::axiom({X, Y}));
  ASSERT_EQ(s.trees.size(), 2u);
  EXPECT_EQ(s.trees[0].leaves, std::set<Occurrence>{""});
  EXPECT_EQ(s.trees[1].leaves, std::set<Occurrence>{""});
  EXPECT_EQ(s.classes, (Partition{{{0, ""}, {1, ""}}}));
}

TEST(Derivation, ParOnAxiom) {
  auto s = build_from_derivation(*Derivation::par(Derivation::axiom({X, dual(X)}), 0, 1));
  EXPECT_EQ(s, parse_structure("tree 0: (X % X^) @ {1, 2}\nclass {0:1, 0:2}\n"));
}

TEST(Derivation, TensorOfTwoAxioms) {
  auto d = Derivation::tensor(Derivation::axiom({X, dual(X)}), 0, Derivation::axiom({Y, dual(Y)}), 0);
  auto s = build_from_derivation(*d);
  EXPECT_EQ(s, parse_structure("tree 0: X^ @ {.}\ntree 1: Y^ @ {.}\ntree 2: (X * Y) @ {1, 2}\n"
                               "class {0:., 2:1}\nclass {1:., 2:2}\n"));
  EXPECT_TRUE(validate_structure(s, Mode::Proof).ok);
}

TEST(Derivation, MalformedIsRejected) {
  EXPECT_THROW(build_from_derivation(*Derivation::par(Derivation::axiom({X}), 0, 0)), DerivationError);
  EXPECT_THROW(build_from_derivation(*Derivation::cut(Derivation::axiom({X}), 0, Derivation::axiom({Y}), 0)),
               DerivationError);
}

TEST(Generator, DeterministicAndValid) {
  EXPECT_EQ(random_structure(7, 12, Mode::Proof, true), random_structure(7, 12, Mode::Proof, true));
  auto one = random_structure(1, 1, Mode::Proof, false);
  EXPECT_EQ(one.trees.size(), 2u);
  EXPECT_EQ(one.classes.size(), 1u);
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    for (Mode m : {Mode::Paraproof, Mode::Proof}) {
      auto s = random_structure(seed, 12, m, seed % 3 == 0, 0.5);
      EXPECT_TRUE(validate_structure(s, m).ok) << to_string(s);
    }
}

TEST(Generator, ConclusionsMatchEndSequent) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GeneratorOptions o;
    o.allow_cuts = true;
    auto g = random_structure_ex(seed, 10, o);
    for (const auto& c : g.structure.classes) EXPECT_FALSE(c.empty());
    EXPECT_EQ(build_from_derivation(*g.derivation), g.structure);
  }
}

TEST(CorrectionGraph, AxiomIsThreeVertexTree) {
  auto s = fixture("axiom.net");
  auto g = correction_graph(s, Switching{});
  EXPECT_EQ(g.size(), 3u);
  auto sh = analyze(g);
  EXPECT_TRUE(sh.acyclic());
  EXPECT_TRUE(sh.connected());
}

TEST(CorrectionGraph, ParSwitchedLeftDropsSecondEdge) {
  auto s = fixture("par.net");
  auto g = correction_graph(s, Switching::from_mask(0, 1));
  auto root = g.find("t0:.");
  auto right = g.find("t0:2");
  for (const auto& [a, b] : g.edges) EXPECT_FALSE((a == root && b == right) || (a == right && b == root));
  EXPECT_TRUE(analyze(g).acyclic());
}

TEST(CorrectionGraph, TensorAxiomHasCycle) {
  auto s = fixture("cycle.net");
  auto g = correction_graph(s, Switching{});
  EXPECT_EQ(g.size(), 4u);
  EXPECT_FALSE(analyze(g).acyclic());
}

TEST(CorrectionGraph, EulerCharacteristicOnForests) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto s = random_structure(seed, 10, Mode::Paraproof, true, 0.5);
    auto n = par_nodes(s).size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); m += 1 + m / 3) {
      auto g = correction_graph(s, Switching::from_mask(m, n));
      auto sh = analyze(g);
      if (sh.acyclic()) EXPECT_EQ(g.size() - g.edges.size(), sh.components);
      SwitchedGraph fast(s);
      int expect = !sh.acyclic() ? 1 : sh.connected() ? 0 : 2;
      EXPECT_EQ(fast.classify(m), expect);
    }
  }
}
