#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "locus/mll/corpus.hpp"
#include "locus/mll/criteria.hpp"
#include "locus/mll/derivation.hpp"

using namespace locus::mll;

namespace {

ParaproofStructure fixture(const std::string& name) {
  std::ifstream in(std::string(LOCUS_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str());
}

}  // namespace

TEST(Dr, Fixtures) {
  EXPECT_TRUE(check_dr(fixture("axiom.net")).accepted);
  EXPECT_TRUE(check_dr(fixture("par.net")).accepted);
  auto v = check_dr(fixture("cycle.net"));
  ASSERT_FALSE(v.accepted);
  auto& w = std::get<SwitchingWitness>(*v.witness);
  EXPECT_FALSE(w.cycle.empty());
}

TEST(Dr, DisconnectionWitnessIsTwoColoring) {
  auto v = check_dr(fixture("mix.net"));
  ASSERT_FALSE(v.accepted);
  auto& w = std::get<SwitchingWitness>(*v.witness);
  EXPECT_TRUE(w.cycle.empty());
  ASSERT_EQ(w.coloring.size(), w.vertices.size());
  EXPECT_NE(std::count(w.coloring.begin(), w.coloring.end(), 1), 0);
  EXPECT_NE(std::count(w.coloring.begin(), w.coloring.end(), 0), 0);
}

TEST(Dr, SizeGuard) {
  ParaproofStructure s;
  Formula f = Formula::atom("X");
  for (int k = 0; k < 4; ++k) f = Formula::par(f, Formula::atom("X"));
  s.trees.push_back({f, {"1111", "1112", "112", "12", "2"}});
  for (const auto& l : s.leaves()) s.classes.push_back({l});
  DrOptions o;
  o.max_pars = 3;
  EXPECT_THROW(check_dr(s, o), GuardError);
}

TEST(Dr, ParallelMatchesSerial) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto s = random_structure(seed, 12, Mode::Paraproof, seed % 2 == 0, 0.5);
    DrOptions par, ser;
    ser.parallel = false;
    auto a = check_dr(s, par), b = check_dr(s, ser);
    EXPECT_EQ(a.accepted, b.accepted);
    if (!a.accepted)
      EXPECT_EQ(std::get<SwitchingWitness>(*a.witness).switching.sides,
                std::get<SwitchingWitness>(*b.witness).switching.sides);
  }
}

TEST(Acyclicity, Fixtures) {
  EXPECT_TRUE(check_acyclicity(fixture("mix.net")).accepted);
  EXPECT_FALSE(check_dr(fixture("mix.net")).accepted);
  EXPECT_FALSE(check_acyclicity(fixture("cycle.net")).accepted);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto s = random_structure(seed, 12, Mode::Paraproof, false, 0.5);
    if (check_dr(s).accepted) EXPECT_TRUE(check_acyclicity(s).accepted);
  }
}

TEST(Dr, PathBetweenParPremisesAvoidsThePar) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto s = random_structure(seed, 10, Mode::Paraproof, false, 0.0);
    if (!check_dr(s).accepted) continue;
    auto pars = par_nodes(s);
    for (std::size_t p = 0; p < pars.size(); ++p) {
      auto sw = Switching::from_mask(0, pars.size());
      auto g = correction_graph(s, sw);
      auto prefix = "t" + std::to_string(pars[p].tree) + ":";
      auto node = g.find(prefix + occurrence_to_string(pars[p].occ));
      auto path = tree_path(g, g.find(prefix + pars[p].occ + "1"), g.find(prefix + pars[p].occ + "2"));
      ASSERT_FALSE(path.empty());
      EXPECT_EQ(std::count(path.begin(), path.end(), node), 0);
    }
  }
}

TEST(Orthogonality, SmallPartitions) {
  EXPECT_TRUE(partitions_orthogonal({{0, 1}}, {{0}, {1}}));
  EXPECT_FALSE(partitions_orthogonal({{0, 1}}, {{0, 1}}));
  EXPECT_FALSE(partitions_orthogonal({{0}, {1}}, {{0}, {1}}));
  EXPECT_THROW(partitions_orthogonal({{0, 1}}, {{0}, {2}}), std::invalid_argument);
}

TEST(CounterProofs, AtomHasOnlyTheDaimon) {
  auto s = parse_structure("tree 0: X @ {.}\nclass {0:.}\n");
  auto cps = enumerate_counterproofs(s);
  ASSERT_EQ(cps.size(), 1u);
  EXPECT_EQ(cps[0].induced, (Partition{{{0, ""}}}));
}

TEST(CounterProofs, TwoLeafDualForest) {
  // The dual of C⊗C⊥ is C⊥⅋C: of the two partitions only the axiom is a net.
  EXPECT_EQ(enumerate_counterproofs(fixture("cycle.net")).size(), 1u);
  // The dual of C⅋C⊥ is a tensor: only the split into singletons is a net.
  EXPECT_EQ(enumerate_counterproofs(fixture("par.net")).size(), 1u);
}

TEST(CounterProofs, ExtremeSubsetOfFullAndRulesAgree) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto s = random_structure(seed, 7, Mode::Paraproof, false, 0.5);
    for (std::size_t t = 0; t < s.trees.size(); ++t) {
      auto full = dual_nets(s, t, false);
      auto rules = dual_nets_by_rules(s, t, false);
      EXPECT_EQ(full, rules);
      for (const auto& p : dual_nets(s, t, true)) EXPECT_TRUE(std::binary_search(full.begin(), full.end(), p));
    }
  }
}

TEST(Cp, CycleRejectedWithWitness) {
  auto v = check_cp(fixture("cycle.net"));
  ASSERT_FALSE(v.accepted);
  auto& w = std::get<CounterProofWitness>(*v.witness);
  EXPECT_EQ(w.induced, (Partition{{{0, "1"}, {0, "2"}}}));
  EXPECT_TRUE(check_cp(fixture("par.net")).accepted);
}

TEST(Cp, AgreesWithDrOnSmallShapes) {
  std::size_t n = for_each_small_structure(2, 4, [](const ParaproofStructure& s) {
    EXPECT_EQ(check_cp(s).accepted, check_dr(s).accepted) << to_string(s);
  });
  EXPECT_GT(n, 300u);
}

TEST(Aj, Fixtures) {
  EXPECT_TRUE(check_aj(fixture("axiom.net")).accepted);
  EXPECT_TRUE(check_aj(fixture("mix.net")).accepted);
  EXPECT_TRUE(check_aj(fixture("par.net")).accepted);
  auto v = check_aj(fixture("cycle.net"));
  ASSERT_FALSE(v.accepted);
  const auto& play = std::get<PlayWitness>(*v.witness).play;
  ASSERT_FALSE(play.empty());
  // The play ends on an Opponent move whose copycat answer is illegal.
  auto s = fixture("cycle.net");
  EXPECT_TRUE(is_aj_play(s, play));
  auto answer = play;
  const auto& cls = s.classes[s.class_of(play.back().leaf)];
  answer.push_back({cls[0] == play.back().leaf ? cls[1] : cls[0], true});
  EXPECT_FALSE(is_aj_play(s, answer));
}

TEST(Aj, RejectsNonProofStructures) {
  auto s = fixture("axiom.net");
  s.classes = {{{0, ""}}, {{1, ""}}};
  EXPECT_THROW(check_aj(s), std::invalid_argument);
}

TEST(Aj, AgreesWithAcyclicityOnSmallProofStructures) {
  std::size_t n = for_each_small_proof_structure(2, 4, [](const ParaproofStructure& s) {
    EXPECT_EQ(check_aj(s).accepted, check_acyclicity(s).accepted) << to_string(s);
  });
  EXPECT_GT(n, 100u);
}
