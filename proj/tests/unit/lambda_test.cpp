#include <gtest/gtest.h>

#include "locus/lambda/term.hpp"
#include "locus/ludics/random.hpp"

using namespace locus;
using namespace locus::lambda;
using ludics::parse_base;

namespace {

ludics::RandomDesignOptions opts(std::size_t depth, bool slices) {
  ludics::RandomDesignOptions o;
  o.depth = depth;
  o.alphabet = ludics::parse_alphabet("{1},{2},{1,2}");
  o.slices = slices;
  return o;
}

}  // namespace

TEST(Terms, TextRoundTrip) {
  for (const char* s : {"dai", "omega", "x{}", "x{\\{y}.y{} \\{z}@{3}.dai}@{1,4}",
                        "a{{ {1} = \\{p}.p{} ; {2} = \\{q}.dai }}"}) {
    auto t = parse_pos_term(s);
    EXPECT_EQ(to_string(t), s);
  }
  EXPECT_EQ(to_string(parse_neg_term("\\{x}.omega")), "{}");
  EXPECT_THROW(parse_pos_term("x{\\{y}.dai}@{2,1}"), ludics::ParseError);
  EXPECT_THROW(parse_pos_term("x{"), ludics::ParseError);
}

TEST(Terms, AffineExamples) {
  EXPECT_TRUE(affine_check(parse_neg_term("\\{x}.x{}")));
  EXPECT_FALSE(affine_check(parse_pos_term("f{\\{y}.x{} \\{z}.x{}}@{1,2}")));
  // Additive branches may each use the same variable once.
  EXPECT_TRUE(affine_check(parse_pos_term("f{{ {1} = \\{y}.x{} ; {2} = \\{z}.x{} }}")));
  EXPECT_FALSE(affine_check(parse_pos_term("x{\\{y}.x{}}")));
}

TEST(Terms, AlphaEquality) {
  EXPECT_TRUE(alpha_equal(parse_pos_term("f{\\{a}.a{}}"), parse_pos_term("f{\\{b}.b{}}")));
  EXPECT_FALSE(alpha_equal(parse_pos_term("f{\\{a}.a{}}"), parse_pos_term("g{\\{b}.b{}}")));
  EXPECT_EQ(to_string(rename_free(parse_pos_term("f{\\{f}.f{}}"), "f", "g")), "g{\\{f}.f{}}");
}

TEST(Slices, IsSliceOnDesigns) {
  EXPECT_TRUE(ludics::is_slice(ludics::Design{ludics::dai()}));
  auto a = ludics::parse_alphabet("{1},{2}");
  EXPECT_FALSE(ludics::is_slice(ludics::Design{ludics::dai_minus({}, a)}));
}

TEST(Slices, RoundTripRandom) {
  ludics::Rng rng(5);
  auto o = opts(4, true);
  auto b = parse_base("|- .");
  for (int k = 0; k < 200; ++k) {
    auto d = ludics::random_positive(rng, {ludics::Address{}}, o);
    if (d.is_omega()) continue;
    ASSERT_TRUE(ludics::check_design(d, b)) << ludics::to_string(d);
    auto t = slice_to_term(d, b);
    EXPECT_EQ(term_to_slice(t, b), d) << ludics::to_string(d);
    EXPECT_TRUE(alpha_equal(slice_to_term(term_to_slice(t, b), b), t));
  }
}

TEST(Slices, NegativeRoundTrip) {
  auto d = ludics::parse_negative("(- . ({1,2} -> (+ 1 {1} (- 1.1 ({1} -> (+ 2 {1} (- 2.1)))))))");
  auto b = parse_base(". |-");
  auto t = slice_to_term(d, b);
  EXPECT_EQ(to_string(t), "\\{x1 x2}.x1{\\{x3}.x2{{}}}");
  EXPECT_EQ(term_to_slice(t, b), d);
}

TEST(Slices, UntypableTermIsRejected) {
  EXPECT_THROW(term_to_slice(parse_pos_term("a{\\{y}.a{}}"), parse_base("|- .")), TranslationError);
  EXPECT_THROW(term_to_slice(parse_pos_term("b{}"), parse_base("|- .")), TranslationError);
}

TEST(Terms, AffineIffTypable) {
  ludics::Rng rng(9);
  auto o = opts(3, false);
  int affine = 0, other = 0;
  for (int k = 0; k < 300; ++k) {
    auto t = random_term(rng, {{"a", 0}, {"b", 0}}, o);
    bool af = affine_check(t);
    (af ? affine : other)++;
    EXPECT_EQ(af, typable(t)) << to_string(t);
  }
  EXPECT_GT(affine, 0);
  EXPECT_GT(other, 0);
}

TEST(Machine, DaimonAndMissingBranch) {
  EXPECT_EQ(machine_run(PosTerm::daimon(), {}).kind, ludics::Outcome::Kind::Daimon);
  NegTerm m = parse_neg_term("\\{y}@{2}.dai");
  auto r = machine_run(parse_pos_term("x{\\{z}.dai}"), bind("x", m));
  EXPECT_EQ(r.kind, ludics::Outcome::Kind::SyntacticOmega);
  auto h = machine_run(parse_pos_term("u{}"), {});
  EXPECT_EQ(h.kind, ludics::Outcome::Kind::Head);
  EXPECT_EQ(h.head, "u");
}

TEST(Machine, NonAffineSharing) {
  // x is used twice; the closure for x stays available to the argument.
  NegTerm m = parse_neg_term("{ {1} = \\{y}.y{\\{w}.dai} ; {2} = \\{q}.dai }");
  auto p = parse_pos_term("x{\\{z}.x{\\{v}.dai}@{2}}");
  auto r = machine_run(p, bind("x", m));
  EXPECT_EQ(r.kind, ludics::Outcome::Kind::Daimon);
  EXPECT_EQ(r.steps, 3u);
}

TEST(Machine, AgreesWithDesignMachineOnAffinePairs) {
  ludics::Rng rng(21);
  auto o = opts(3, false);
  for (int k = 0; k < 300; ++k) {
    auto phi = ludics::random_positive(rng, {ludics::Address{}}, o);
    auto psi = ludics::random_negative(rng, {}, {}, o);
    auto p = to_term(phi, {{ludics::Address{}, "x"}});
    auto m = to_term(psi, {});
    auto t = machine_run(p, bind("x", m));
    auto w = ludics::run_state(&phi, ludics::Env{{ludics::Address{}, &psi}});
    EXPECT_EQ(t.kind, w.kind) << ludics::to_string(phi) << " | " << ludics::to_string(psi);
    EXPECT_EQ(t.steps, w.steps);
  }
}

TEST(Fax, NormalizesToRenaming) {
  ludics::Rng rng(13);
  auto o = opts(3, false);
  for (int k = 0; k < 100; ++k) {
    auto phi = ludics::random_positive(rng, {ludics::Address{}}, o);
    auto p = to_term(phi, {{ludics::Address{}, "xp"}});
    NegTerm fax = fax_term("x", {}, o.alphabet, 2 * depth(p));
    auto n = normalize(p, bind("xp", fax));
    ASSERT_TRUE(n.has_value());
    EXPECT_TRUE(alpha_equal(*n, rename_free(p, "xp", "x"))) << to_string(p) << "\n got " << to_string(*n);
  }
}

TEST(Fax, DesignLevelRelocation) {
  ludics::Rng rng(17);
  auto o = opts(3, false);
  for (int k = 0; k < 100; ++k) {
    auto phi = ludics::random_positive(rng, {ludics::Address{1}}, o);
    if (phi.is_omega()) continue;
    auto net = ludics::make_net(phi, {ludics::fax({1}, {2}, o.alphabet, 2 * ludics::depth(phi))});
    net.partner_bases[0] = parse_base("1 |- 2");
    net.principal_base = parse_base("|- 1");
    EXPECT_EQ(ludics::to_string(ludics::normal_form(net)), ludics::to_string(ludics::canonical(ludics::relocate(phi, {1}, {2}))));
  }
}
