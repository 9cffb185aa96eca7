#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "locus/mll/criteria.hpp"
#include "locus/mll/derivation.hpp"
#include "locus/mll/rewrite.hpp"

using namespace locus::mll;

namespace {

ParaproofStructure fixture(const std::string& name) {
  std::ifstream in(std::string(LOCUS_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str());
}

std::vector<std::string> open_conclusions(const ParaproofStructure& s) {
  std::vector<std::string> out;
  for (auto k : s.conclusions()) out.push_back(to_string(s.trees[k].formula));
  return out;
}

}  // namespace

TEST(Parse, Redexes) {
  auto terminal = parse_structure("tree 0: X @ {.}\ntree 1: Y @ {.}\nclass {0:., 1:.}\n");
  EXPECT_TRUE(parse_redexes(terminal).empty());
  EXPECT_TRUE(is_parse_terminal(terminal));
  auto r = parse_redexes(fixture("par.net"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].first.rule, ParseRule::Par);
  EXPECT_EQ(r[0].first.occ, "");
  EXPECT_TRUE(parse_redexes(fixture("cycle.net")).empty());
  EXPECT_FALSE(is_parse_terminal(fixture("cycle.net")));
}

TEST(Parse, CutMergeRedex) {
  auto s = parse_structure("tree 0: X @ {.}\ntree 1: X^ @ {.}\ntree 2: X @ {.}\ntree 3: X^ @ {.}\n"
                           "class {0:., 1:.}\nclass {2:., 3:.}\ncut {1,2}\n");
  auto r = parse_redexes(s);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].first.rule, ParseRule::Cut);
  EXPECT_EQ(to_string(r[0].second), "tree 0: X @ {.}\ntree 1: X^ @ {.}\nclass {0:., 1:.}\n");
}

TEST(Parse, WeakAndStrongOnFixtures) {
  for (auto mode : {ParseMode::Weak, ParseMode::Strong}) {
    EXPECT_TRUE(check_parsing(fixture("axiom.net"), mode).accepted);
    EXPECT_TRUE(check_parsing(fixture("par.net"), mode).accepted);
    EXPECT_TRUE(check_parsing(fixture("cut.net"), mode).accepted);
    EXPECT_FALSE(check_parsing(fixture("cycle.net"), mode).accepted);
    EXPECT_FALSE(check_parsing(fixture("mix.net"), mode).accepted);
  }
  auto v = check_parsing(fixture("cycle.net"), ParseMode::Strong);
  ASSERT_TRUE(v.stuck.has_value());
  EXPECT_EQ(*v.stuck, fixture("cycle.net"));
}

TEST(Parse, MixAcceptsDisjointAxioms) {
  ParseOptions o;
  o.mix = true;
  EXPECT_TRUE(check_parsing(fixture("mix.net"), ParseMode::Weak, o).accepted);
  EXPECT_TRUE(check_parsing(fixture("mix.net"), ParseMode::Strong, o).accepted);
}

TEST(Parse, StateGuard) {
  ParseOptions o;
  o.max_states = 1;
  EXPECT_THROW(check_parsing(fixture("cut.net"), ParseMode::Strong, o), GuardError);
}

TEST(Parse, StepsPreserveDrAndShrink) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto s = random_structure(seed, 10, Mode::Paraproof, seed % 2 == 0, 0.5);
    bool dr = check_dr(s).accepted;
    for (const auto& [step, next] : parse_redexes(s)) {
      EXPECT_LT(count_leaves(next), count_leaves(s));
      EXPECT_EQ(open_conclusions(next), open_conclusions(s)) << to_string(step);
      if (dr) EXPECT_TRUE(check_dr(next).accepted) << to_string(s) << to_string(step);
    }
  }
}

TEST(Parse, StrongMeansEveryOrderCompletes) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto s = random_structure(seed, 8, Mode::Paraproof, false, 0.5);
    if (!check_parsing(s, ParseMode::Strong).accepted) continue;
    // Greedy descent along the last redex must also reach the terminal.
    auto cur = s;
    for (auto r = parse_redexes(cur); !r.empty(); r = parse_redexes(cur)) cur = r.back().second;
    EXPECT_TRUE(is_parse_terminal(cur)) << to_string(s);
  }
}

TEST(Sequentialize, Fixtures) {
  auto a = sequentialize(fixture("axiom.net"));
  ASSERT_TRUE(a.ok);
  EXPECT_EQ(a.derivation->rule, Derivation::Rule::DaimonAxiom);

  auto p = sequentialize(fixture("par.net"));
  ASSERT_TRUE(p.ok);
  EXPECT_EQ(p.derivation->rule, Derivation::Rule::Par);
  EXPECT_EQ(count_rules(*p.derivation, Derivation::Rule::DaimonAxiom), 1u);

  EXPECT_FALSE(sequentialize(fixture("cycle.net")).ok);
  EXPECT_FALSE(sequentialize(fixture("mix.net")).ok);
  auto m = sequentialize(fixture("mix.net"), true);
  ASSERT_TRUE(m.ok);
  EXPECT_EQ(count_rules(*m.derivation, Derivation::Rule::Mix), 1u);
  EXPECT_EQ(build_from_derivation(*m.derivation), fixture("mix.net"));
}

TEST(Sequentialize, RebuildsTheInput) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    auto s = random_structure(seed, 12, seed % 2 ? Mode::Proof : Mode::Paraproof, seed % 3 == 0, 0.5);
    for (bool mix : {false, true}) {
      auto r = sequentialize(s, mix);
      if (r.ok) EXPECT_EQ(build_from_derivation(*r.derivation), s) << to_string(s);
    }
  }
}

TEST(Sequentialize, ProofStructuresUseAxiomPairsOnly) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto s = random_structure(seed, 12, Mode::Proof, seed % 2 == 0, 0.5);
    auto r = sequentialize(s);
    if (r.ok) EXPECT_TRUE(uses_only_axiom_pairs(*r.derivation));
  }
}

TEST(CutElimination, CutFreeIsUnchanged) {
  auto s = fixture("par.net");
  auto r = cut_normalize(s, true);
  EXPECT_EQ(r.result, s);
  EXPECT_TRUE(r.rules.empty());
}

TEST(CutElimination, TensorParThenLeafCuts) {
  auto r = cut_normalize(fixture("cut.net"), true);
  ASSERT_GE(r.rules.size(), 3u);
  EXPECT_EQ(r.rules[0], "tensor-par");
  EXPECT_EQ(r.rules[1], "leaf-cut");
  EXPECT_EQ(r.rules[2], "leaf-cut");
  EXPECT_EQ(to_string(r.result),
            "tree 0: X^ @ {.}\ntree 1: Y^ @ {.}\ntree 2: (X * Y) @ {1, 2}\n"
            "class {0:., 2:1}\nclass {1:., 2:2}\n");
  for (const auto& st : r.steps) EXPECT_TRUE(check_dr(st).accepted);
}

TEST(CutElimination, EtaExpandsAxiomAgainstCompound) {
  auto s = parse_structure("tree 0: (X * Y) @ {.}\ntree 1: (X^ % Y^) @ {.}\ntree 2: (X^ % Y^) @ {1, 2}\n"
                           "tree 3: (X * Y) @ {1, 2}\n"
                           "class {0:., 1:.}\nclass {2:1, 3:1}\nclass {2:2, 3:2}\ncut {0,2}\n");
  ASSERT_TRUE(validate_structure(s, Mode::Proof).ok);
  auto step = cut_step(s);
  ASSERT_TRUE(step.has_value());
  EXPECT_EQ(step->first, "eta-axiom");
  auto r = cut_normalize(s);
  EXPECT_TRUE(r.result.cuts.empty());
  EXPECT_TRUE(validate_structure(r.result, Mode::Proof).ok);
  EXPECT_TRUE(check_dr(r.result).accepted);
}

TEST(CutElimination, NonDualCutRejected) {
  auto s = fixture("mix.net");
  s.cuts = {{0, 2}};
  EXPECT_THROW(cut_step(s), std::invalid_argument);
}

TEST(CutElimination, GeneratedNets) {
  std::size_t with_cuts = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    GeneratorOptions o;
    o.allow_cuts = true;
    o.mode = seed % 2 ? Mode::Proof : Mode::Paraproof;
    auto s = random_structure_ex(seed, 12, o).structure;
    if (s.cuts.empty()) continue;
    ++with_cuts;
    auto r = cut_normalize(s, true);
    EXPECT_TRUE(r.result.cuts.empty());
    EXPECT_EQ(open_conclusions(r.result), open_conclusions(s));
    for (const auto& st : r.steps) EXPECT_TRUE(check_dr(st).accepted) << to_string(st);
    if (o.mode == Mode::Proof) EXPECT_TRUE(validate_structure(r.result, Mode::Proof).ok);
  }
  EXPECT_GT(with_cuts, 50u);
}
