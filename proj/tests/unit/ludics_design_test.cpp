#include <gtest/gtest.h>

#include "locus/ludics/design.hpp"
#include "locus/ludics/engine.hpp"
#include "locus/ludics/random.hpp"

using namespace locus::ludics;

namespace {

// ξ = ε, I = {1,2}, i₁ = 1, I₁ = {1}, ζ = 1.1, J = {1}, i₂ = 2, I₂ = {1}.
const char* kPhi = "(+ . {1,2} (- 1 ({1} -> (+ 1.1 {1} (- 1.1.1)))) (- 2 ({1} -> dai)))";
const char* kPsi = "(- . ({1,2} -> (+ 1 {1} (- 1.1 ({1} -> (+ 2 {1} (- 2.1)))))))";

PositiveDesign P(const char* s) { return parse_positive(s); }
NegativeDesign N(const char* s) { return parse_negative(s); }

Alphabet two() { return Alphabet(std::vector<Ramification>{{1}, {2}}); }

}  // namespace

TEST(Design, TextRoundTrip) {
  for (const char* s : {kPhi, kPsi, "dai", "omega", "(- 1.2)"}) {
    auto d = parse_design(s);
    EXPECT_EQ(to_string(parse_design(to_string(d))), to_string(d)) << s;
  }
  EXPECT_EQ(to_string(parse_positive("(+ e {2,1} (- 1) (- 2))")), "(+ . {1,2} (- 1) (- 2))");
  EXPECT_THROW(parse_positive("(+ . {1} (- 2))"), std::exception);
  EXPECT_THROW(parse_positive("(+ . {1}"), ParseError);
}

TEST(Design, InferredBases) {
  auto r = infer_base(P(kPhi));
  ASSERT_TRUE(r.ok) << r.rule;
  EXPECT_EQ(to_string(r.base), "|- .");
  auto s = infer_base(N(kPsi));
  ASSERT_TRUE(s.ok) << s.rule;
  EXPECT_EQ(s.base.left, Address{});
  EXPECT_TRUE(s.base.right.empty());
  EXPECT_TRUE(check_design(P(kPhi), parse_base("|- .")));
  EXPECT_FALSE(check_design(P(kPhi), parse_base("|- 1")));
}

TEST(Design, AffinityViolationIsReported) {
  // Both children of the root action use address 3.
  auto r = infer_base(P("(+ . {1,2} (- 1 ({1} -> (+ 3 {1} (- 3.1)))) (- 2 ({1} -> (+ 3 {1} (- 3.1)))))"));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.rule, "affinity");
}

TEST(Design, ChroniclesRoundTrip) {
  for (const char* s : {kPhi, kPsi}) {
    auto d = parse_design(s);
    auto b = std::visit([](const auto& x) { return infer_base(x).base; }, d);
    EXPECT_EQ(from_chronicles(to_chronicles(d), b), d) << s;
  }
}

TEST(Design, CoherenceViolationIsNamed) {
  std::set<Chronicle> cs{parse_chronicle("(+ . {1}) dai"), parse_chronicle("(+ . {2}) dai")};
  try {
    from_chronicles(cs, parse_base("|- ."));
    FAIL();
  } catch (const ChronicleError& e) {
    EXPECT_EQ(e.condition, "coherence");
  }
}

TEST(Orders, OmegaBottomDaimonTop) {
  auto phi = P(kPhi);
  EXPECT_TRUE(compare(PositiveDesign::omega(), phi, Order::Obs));
  EXPECT_TRUE(compare(phi, dai(), Order::Obs));
  EXPECT_FALSE(compare(dai(), phi, Order::Obs));
  EXPECT_TRUE(compare(phi, dai(), Order::Left));
  EXPECT_FALSE(compare(PositiveDesign::omega(), phi, Order::Left));
  EXPECT_TRUE(compare(PositiveDesign::omega(), phi, Order::Right));
  EXPECT_FALSE(compare(phi, dai(), Order::Right));
}

TEST(Orders, DecompositionThroughBothOrders) {
  Design a = P("(+ . {1,2} (- 1) (- 2 ({1} -> dai)))");
  Design b = P("(+ . {1,2} (- 1 ({1} -> dai)) (- 2 ({1} -> dai) ({2} -> dai)))");
  ASSERT_TRUE(compare(a, b, Order::Obs));
  EXPECT_EQ(compare(a, b, Order::Obs), obs_by_chronicles(a, b));
  auto dec = decompose(a, b);
  EXPECT_TRUE(compare(a, dec.min, Order::Right) || compare_both(a, dec.min));
  EXPECT_TRUE(compare(dec.min, dec.max, Order::Right) || compare(dec.min, dec.max, Order::Left));
  EXPECT_TRUE(compare(dec.max, b, Order::Obs));
}

TEST(Orders, RandomObsAgreesWithChronicleCharacterization) {
  Rng rng(7);
  RandomDesignOptions o;
  o.depth = 2;
  o.alphabet = two();
  for (int k = 0; k < 300; ++k) {
    Design a = random_positive(rng, {Address{}}, o);
    Design b = random_positive(rng, {Address{}}, o);
    EXPECT_EQ(compare(a, b, Order::Obs), obs_by_chronicles(a, b)) << to_string(a) << " vs " << to_string(b);
  }
}

TEST(Named, RamAgainstDaiAndSkunk) {
  auto r = ram({}, {1}, two());
  Alphabet a = two();
  EXPECT_TRUE(orthogonal(r, dai_minus({}, a)));
  NegativeDesign sk = skunk({});
  PositiveDesign rr = r;
  auto out = run_state(&rr, Env{{Address{}, &sk}});
  EXPECT_EQ(out.kind, Outcome::Kind::SyntacticOmega);
  EXPECT_TRUE(orthogonal(dai(), sk));
  EXPECT_FALSE(orthogonal(skunk_plus({}, {1}), sk));
}

TEST(Machine, RunningExampleTrace) {
  auto phi = P(kPhi);
  auto psi = N(kPsi);
  auto n = make_net(phi, {psi});
  EXPECT_TRUE(validate_net(n).ok);
  RunOptions o;
  o.trace = true;
  o.verify_types = true;
  auto out = weak_run(n, o);
  EXPECT_EQ(out.kind, Outcome::Kind::Daimon);
  ASSERT_GE(out.trace.size(), 3u);
  EXPECT_EQ(out.trace[0], "R (+ . {1,2})");
  EXPECT_EQ(out.trace[1], "R (+ 1 {1})");
  EXPECT_EQ(out.trace[2], "R (+ 1.1 {1})");
  o.alternating = true;
  auto alt = weak_run(n, o);
  EXPECT_EQ(alt.kind, out.kind);
  EXPECT_EQ(alt.trace, out.trace);
}

TEST(Machine, HeadStopsOnUncutFocus) {
  auto phi = P("(+ 1 {1} (- 1.1))");
  auto n = make_net(phi, {});
  auto out = weak_run(n);
  EXPECT_EQ(out.kind, Outcome::Kind::Head);
  EXPECT_EQ(out.focus, (Address{1}));
}

TEST(Machine, FuelExhaustionIsCreatedOmega) {
  RunOptions o;
  o.fuel = 1;
  auto out = weak_run(make_net(P(kPhi), {N(kPsi)}), o);
  EXPECT_EQ(out.kind, Outcome::Kind::CreatedOmega);
}

TEST(Nets, ConditionsAreNamed) {
  Net n = make_net(P("(+ 2 {1} (- 2.1))"), {N("(- 1)"), N("(- 1)")});
  auto v = validate_net(n);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.condition, "cut-sides");
  Net m = make_net(P("(+ 1 {1} (- 1.1))"), {N("(- 1.2)")});
  EXPECT_EQ(validate_net(m).condition, "disjointness");
}

TEST(Token, RunningExampleVisit) {
  auto r = token_run(P(kPhi), N(kPsi));
  std::vector<std::string> got;
  for (const auto& p : r.trace) got.push_back(to_string(p));
  std::vector<std::string> want{"(L, .)",       "(R, {1,2})",         "(R, {1,2} 1)",        "(L, 1 {1})",
                                "(L, 1 {1} 1)", "(R, {1,2} 1 1 {1})", "(R, {1,2} 1 1 {1} 1)", "(L, 2 {1})"};
  ASSERT_GE(got.size(), want.size());
  EXPECT_EQ(std::vector<std::string>(got.begin(), got.begin() + want.size()), want);
  EXPECT_EQ(r.outcome, Outcome::Kind::Daimon);
  EXPECT_EQ(r.revisits, 0u);
}

TEST(Token, AgreesWithWeakMachineOnRandomPairs) {
  Rng rng(11);
  RandomDesignOptions o;
  o.alphabet = two();
  for (int k = 0; k < 300; ++k) {
    auto phi = random_positive(rng, {Address{}}, o);
    if (phi.is_omega()) continue;
    auto psi = random_negative(rng, {}, {}, o);
    auto t = token_run(phi, psi);
    auto w = run_state(&phi, Env{{Address{}, &psi}});
    EXPECT_EQ(t.outcome, w.kind) << to_string(phi) << " | " << to_string(psi);
    EXPECT_EQ(t.revisits, 0u);
  }
}

TEST(Token, BalancedSlicesAreFullyVisited) {
  Rng rng(3);
  RandomDesignOptions o;
  o.depth = 4;
  o.alphabet = Alphabet(std::vector<Ramification>{{1}, {1, 2}, {2}});
  for (int k = 0; k < 200; ++k) {
    auto [phi, psi] = balanced_slices(rng, o);
    ASSERT_TRUE(is_balanced(phi, psi)) << to_string(phi) << " | " << to_string(psi);
    auto t = token_run(phi, psi);
    EXPECT_EQ(t.pullback_left, phi);
    EXPECT_EQ(t.pullback_right, psi);
    EXPECT_EQ(t.revisits, 0u);
  }
}

TEST(Separation, WitnessDistinguishes) {
  auto a = P("(+ . {1} (- 1 ({1} -> dai)))");
  auto b = P("(+ . {1} (- 1 ({2} -> dai)))");
  auto w = separation_witness(a, b);
  ASSERT_TRUE(w.has_value());
  const auto& psi = std::get<NegativeDesign>(*w);
  EXPECT_TRUE(orthogonal(a, psi));
  EXPECT_FALSE(orthogonal(b, psi));
  EXPECT_FALSE(separation_witness(PositiveDesign::omega(), a).has_value());
}

TEST(Views, FreeActionOnlyFirst) {
  std::vector<Action> r{{false, {}, {1, 2}}, {true, {1}, {1}}, {false, {1, 1}, {1}}, {true, {2}, {1}}};
  // The dual view jumps back to the justifier of the last action and flips polarities.
  std::vector<Action> want{{true, {}, {1, 2}}, {false, {2}, {1}}};
  EXPECT_EQ(view(r), want);
}
