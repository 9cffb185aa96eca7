// Property suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "locus/lambda/term.hpp"
#include "locus/ludics/behaviour.hpp"
#include "locus/ludics/random.hpp"
#include "locus/mll/corpus.hpp"
#include "locus/mll/criteria.hpp"
#include "locus/mll/derivation.hpp"
#include "locus/mll/rewrite.hpp"

namespace ml = locus::mll;
namespace lu = locus::ludics;
namespace la = locus::lambda;

namespace {

struct Tally {
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& what) {
    ++instances;
    if (ok) return;
    if (violations++ == 0) first = what();
  }
};

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), s);
  std::fflush(stdout);
}

// Passes when enough instances ran and none failed.
Outcome verdict(const Tally& t, std::size_t need, const std::string& extra = "") {
  std::ostringstream d;
  d << t.instances << " instances, " << t.violations << " violations";
  if (!extra.empty()) d << ", " << extra;
  if (t.instances < need) d << ", needed " << need;
  if (t.violations) d << "; first: " << t.first;
  return {t.violations == 0 && t.instances >= need, d.str()};
}

// ---------------------------------------------------------------- multiplicatives

// The random corpus shared by the equivalence and MIX checks: ≤12 leaves, ≤6 pars, half perturbed.
std::vector<ml::ParaproofStructure> mll_corpus(std::size_t n, std::size_t& perturbed) {
  std::vector<ml::ParaproofStructure> out;
  perturbed = 0;
  for (std::uint64_t seed = 0; out.size() < n; ++seed) {
    ml::GeneratorOptions o;
    o.allow_cuts = seed % 2 == 0;
    o.max_leaves = 12;
    o.max_pars = 6;
    o.perturb_probability = 0.5;
    auto g = ml::random_structure_ex(seed, 12, o);
    if (ml::count_leaves(g.structure) > 12 || ml::count_par_nodes(g.structure) > 6) continue;
    perturbed += g.perturbed;
    out.push_back(std::move(g.structure));
  }
  return out;
}

Outcome criteria_equivalence() {
  std::size_t perturbed = 0;
  auto corpus = mll_corpus(1200, perturbed);
  Tally t;
  std::size_t accepted = 0;
  for (const auto& s : corpus) {
    bool dr = ml::check_dr(s).accepted;
    bool weak = ml::check_parsing(s, ml::ParseMode::Weak).accepted;
    bool strong = ml::check_parsing(s, ml::ParseMode::Strong).accepted;
    bool seq = ml::sequentialize(s).ok;
    accepted += dr;
    t.check(dr == weak && dr == strong && dr == seq, [&] {
      return "dr=" + std::to_string(dr) + " weak=" + std::to_string(weak) + " strong=" + std::to_string(strong) +
             " seq=" + std::to_string(seq) + " on\n" + ml::to_string(s);
    });
  }
  return verdict(t, 1000, std::to_string(perturbed) + " perturbed, " + std::to_string(accepted) + " correct");
}

Outcome cp_exhaustive() {
  Tally t;
  std::size_t accepted = 0;
  ml::for_each_small_structure(3, 6, [&](const ml::ParaproofStructure& s) {
    bool dr = ml::check_dr(s).accepted;
    bool cp = ml::check_cp(s).accepted;
    accepted += dr;
    t.check(dr == cp, [&] { return "dr=" + std::to_string(dr) + " cp=" + std::to_string(cp) + " on\n" + ml::to_string(s); });
  });
  return verdict(t, 1, std::to_string(accepted) + " correct");
}

Outcome mix() {
  std::size_t perturbed = 0;
  auto corpus = mll_corpus(1200, perturbed);
  Tally t;
  std::size_t accepted = 0, beyond_dr = 0;
  for (const auto& s : corpus) {
    bool acyclic = ml::check_acyclicity(s).accepted;
    bool seq = ml::sequentialize(s, true).ok;
    accepted += acyclic;
    beyond_dr += acyclic && !ml::check_dr(s).accepted;
    t.check(acyclic == seq, [&] {
      return "acyclic=" + std::to_string(acyclic) + " seq-mix=" + std::to_string(seq) + " on\n" + ml::to_string(s);
    });
  }
  return verdict(t, 1000, std::to_string(accepted) + " acyclic, " + std::to_string(beyond_dr) + " of them disconnected");
}

Outcome aj() {
  Tally t;
  std::size_t exhaustive = ml::for_each_small_proof_structure(3, 6, [&](const ml::ParaproofStructure& s) {
    bool a = ml::check_aj(s).accepted, c = ml::check_acyclicity(s).accepted;
    t.check(a == c, [&] { return "aj=" + std::to_string(a) + " on\n" + ml::to_string(s); });
  });
  // Larger structures, up to 10 leaves, from the generator.
  std::size_t sampled = 0, big = 0;
  for (std::uint64_t seed = 0; sampled < 3000; ++seed) {
    ml::GeneratorOptions o;
    o.mode = ml::Mode::Proof;
    o.max_leaves = 10;
    o.perturb_probability = 0.5;
    auto s = ml::random_structure_ex(seed, 10, o).structure;
    if (!s.cuts.empty() || ml::count_leaves(s) > 10) continue;
    ++sampled;
    big += ml::count_leaves(s) > 6;
    bool a = ml::check_aj(s).accepted, c = ml::check_acyclicity(s).accepted;
    t.check(a == c, [&] { return "aj=" + std::to_string(a) + " on\n" + ml::to_string(s); });
  }
  return verdict(t, 1,
                 std::to_string(exhaustive) + " exhaustive (≤6 leaves), " + std::to_string(sampled) +
                     " sampled (≤10 leaves, " + std::to_string(big) + " above 6)");
}

std::multiset<std::string> conclusions(const ml::ParaproofStructure& s) {
  std::multiset<std::string> out;
  for (auto k : s.conclusions()) out.insert(ml::to_string(s.trees[k].formula));
  return out;
}

Outcome cut_elimination() {
  Tally t;
  std::size_t steps = 0;
  for (std::uint64_t seed = 0; t.instances < 600; ++seed) {
    ml::GeneratorOptions o;
    o.mode = seed % 2 ? ml::Mode::Proof : ml::Mode::Paraproof;
    o.allow_cuts = true;
    auto s = ml::random_structure_ex(seed, 12, o).structure;
    if (s.cuts.empty()) continue;
    auto r = ml::cut_normalize(s, true);
    steps += r.rules.size();
    bool ok = r.result.cuts.empty() && conclusions(r.result) == conclusions(s);
    for (const auto& st : r.steps) ok = ok && ml::check_dr(st).accepted;
    t.check(ok, [&] { return ml::to_string(s); });
  }
  return verdict(t, 500, std::to_string(steps) + " reduction steps");
}

// ---------------------------------------------------------------- ludics

lu::RandomDesignOptions ludics_options(std::size_t depth) {
  lu::RandomDesignOptions o;
  o.depth = depth;
  o.alphabet = lu::parse_alphabet("{1},{2},{1,2}");
  o.p_branch = 0.5;
  return o;
}

std::set<lu::Chronicle> chronicles(const lu::PositiveDesign& d) { return lu::to_chronicles(lu::Design{d}); }

Outcome associativity() {
  lu::Rng rng(101);
  auto o = ludics_options(4);
  Tally t;
  std::size_t nontrivial = 0;
  while (t.instances < 600) {
    auto rn = lu::random_net(rng, o, 4);
    const auto& net = rn.net;
    if (!lu::validate_net(net).ok) continue;
    lu::Net inner{net.principal, net.principal_base, {}, {}}, outer;
    std::vector<bool> in(net.partners.size(), false);
    for (auto k : rn.inner) in[k] = true;
    for (std::size_t k = 0; k < net.partners.size(); ++k) {
      auto& side = in[k] ? inner : outer;
      side.partners.push_back(net.partners[k]);
      side.partner_bases.push_back(net.partner_bases[k]);
    }
    auto v1 = lu::validate_net(inner);
    outer.principal = lu::normal_form(inner);
    outer.principal_base = lu::Base{std::nullopt, v1.type.right};
    auto staged = lu::normal_form(outer);
    auto direct = lu::normal_form(net);
    nontrivial += !rn.inner.empty() && rn.inner.size() < net.partners.size();
    t.check(chronicles(staged) == chronicles(direct), [&] {
      std::string s = lu::to_string(net.principal);
      for (const auto& p : net.partners) s += "\n  " + lu::to_string(p);
      return s + "\n staged " + lu::to_string(staged) + "\n direct " + lu::to_string(direct);
    });
  }
  return verdict(t, 500, std::to_string(nontrivial) + " with both parts nonempty");
}

Outcome monotonicity() {
  lu::Rng rng(202);
  auto o = ludics_options(4);
  Tally t;
  while (t.instances < 600) {
    auto rn = lu::random_net(rng, o, 3);
    lu::Net lo = rn.net, hi = rn.net;
    if (!lu::validate_net(rn.net).ok) continue;
    // Below: Ω replaces subtrees; above: ✠ does. Either way lo ⊑ hi.
    bool down = rng.coin(0.5);
    auto& moved = down ? lo : hi;
    moved.principal = down ? lu::random_below(rng, moved.principal, 0.3) : lu::random_above(rng, moved.principal, 0.3);
    for (auto& p : moved.partners) p = down ? lu::random_below(rng, p, 0.3) : lu::random_above(rng, p, 0.3);
    bool premise = lu::compare(lo.principal, hi.principal, lu::Order::Obs);
    for (std::size_t k = 0; k < lo.partners.size(); ++k)
      premise = premise && lu::compare(lu::Design{lo.partners[k]}, lu::Design{hi.partners[k]}, lu::Order::Obs);
    auto a = lu::normal_form(lo), b = lu::normal_form(hi);
    t.check(premise && lu::compare(a, b, lu::Order::Obs),
            [&] { return lu::to_string(rn.net.principal) + "\n lo " + lu::to_string(a) + "\n hi " + lu::to_string(b); });
  }
  return verdict(t, 500);
}

// Every design whose chronicles are a subset of d's; throws past the cap.
struct SubDesigns {
  std::size_t cap;

  std::vector<lu::PositiveDesign> pos(const lu::PositiveDesign& d) {
    std::vector<lu::PositiveDesign> out{lu::PositiveDesign::omega()};
    if (d.is_daimon()) out.push_back(d);
    if (!d.is_proper()) return out;
    std::vector<std::vector<lu::NegativeDesign>> opts;
    for (const auto& c : d.children) opts.push_back(neg(c));
    std::vector<lu::NegativeDesign> pick(opts.size());
    std::function<void(std::size_t)> go = [&](std::size_t k) {
      if (k == opts.size()) {
        out.push_back(lu::PositiveDesign::proper(d.focus, d.ram, pick));
        if (out.size() > cap) throw std::length_error("too many sub-designs");
        return;
      }
      for (const auto& c : opts[k]) {
        pick[k] = c;
        go(k + 1);
      }
    };
    go(0);
    return out;
  }

  std::vector<lu::NegativeDesign> neg(const lu::NegativeDesign& n) {
    std::vector<lu::NegativeDesign> out{{n.focus, {}}};
    for (const auto& [j, b] : n.branches) {
      auto bs = pos(b);
      std::vector<lu::NegativeDesign> next;
      for (const auto& partial : out) {
        next.push_back(partial);
        for (const auto& x : bs) {
          if (x.is_omega()) continue;
          auto y = partial;
          y.branches.emplace(j, x);
          next.push_back(std::move(y));
          if (next.size() > cap) throw std::length_error("too many sub-designs");
        }
      }
      out = std::move(next);
    }
    return out;
  }
};

bool included(const lu::Design& a, const lu::Design& b) { return lu::compare(a, b, lu::Order::Stable); }

Outcome stability() {
  lu::Rng rng(303);
  auto o = ludics_options(3);
  o.p_daimon = 0.35;
  o.p_omega = 0.05;
  Tally t;
  std::size_t attempts = 0, pairs = 0;
  while (t.instances < 500 && attempts < 200000) {
    ++attempts;
    auto phi = lu::random_positive(rng, {lu::Address{}}, o);
    auto psi = lu::random_negative(rng, {}, {}, o);
    if (phi.is_omega() || !lu::orthogonal(phi, psi)) continue;
    std::vector<lu::PositiveDesign> sp;
    std::vector<lu::NegativeDesign> sn;
    try {
      SubDesigns sub{400};
      sp = sub.pos(phi);
      sn = sub.neg(psi);
    } catch (const std::length_error&) {
      continue;
    }
    if (sp.size() * sn.size() > 40000) continue;
    auto tok = lu::token_run(phi, psi);
    lu::Design p0{tok.pullback_left}, n0{tok.pullback_right};
    bool ok = lu::orthogonal(tok.pullback_left, tok.pullback_right);
    bool found = false;
    for (const auto& a : sp) {
      for (const auto& b : sn) {
        if (!lu::orthogonal(a, b)) continue;
        ++pairs;
        lu::Design da{a}, db{b};
        bool above = included(p0, da) && included(n0, db);
        ok = ok && above;
        found = found || (above && included(da, p0) && included(db, n0));
      }
    }
    t.check(ok && found, [&] {
      return lu::to_string(phi) + " | " + lu::to_string(psi) + "\n pull-back " + lu::to_string(p0) + " | " +
             lu::to_string(n0);
    });
  }
  return verdict(t, 500, std::to_string(pairs) + " convergent sub-design pairs checked");
}

Outcome separation() {
  lu::Universe u{lu::parse_alphabet("{1},{2},{1,2} | {1}"), 3};
  auto space = lu::Space::make(u);
  lu::Rng rng(404);
  lu::RandomDesignOptions o;
  o.depth = 3;
  o.alphabet = u.alphabet;
  Tally below, apart;
  std::size_t witnesses_in_universe = 0;
  const auto& ps = space->positives();
  for (int guard = 0; (below.instances < 500 || apart.instances < 500) && guard < 100000; ++guard) {
    const auto& a = ps[rng.below(ps.size())];
    lu::PositiveDesign b;
    bool related = rng.coin(0.5);
    if (related) {
      b = lu::canonical(rng.coin(0.5) ? lu::random_above(rng, a, 0.3) : lu::random_below(rng, a, 0.3));
    } else {
      b = ps[rng.below(ps.size())];
    }
    auto ib = space->index_of(b);
    if (!ib) continue;
    auto ia = *space->index_of(a);
    bool obs = lu::compare(a, b, lu::Order::Obs);
    bool rows = space->row(ia).subset_of(space->row(*ib));
    if (obs) {
      if (below.instances >= 500) continue;
      below.check(rows, [&] { return lu::to_string(a) + " ⊑ " + lu::to_string(b) + " but some ψ separates them"; });
    } else {
      if (apart.instances >= 500) continue;
      auto w = lu::separation_witness(a, b);
      bool ok = w && std::holds_alternative<lu::NegativeDesign>(*w);
      if (ok) {
        const auto& psi = std::get<lu::NegativeDesign>(*w);
        ok = lu::orthogonal(a, psi) && !lu::orthogonal(b, psi);
        witnesses_in_universe += space->index_of(lu::canonical(psi)).has_value();
      }
      apart.check(ok && !rows, [&] { return lu::to_string(a) + " vs " + lu::to_string(b); });
    }
  }
  auto v1 = verdict(below, 500), v2 = verdict(apart, 500);
  return {v1.pass && v2.pass, "⊑ ⇒ ⊥-inclusion: " + v1.detail + "; ⋢ ⇒ verified witness: " + v2.detail + " (" +
                                  std::to_string(witnesses_in_universe) + " witnesses inside the universe)"};
}

Outcome single_visit() {
  lu::Rng rng(505);
  auto o = ludics_options(4);
  Tally random_pairs, balanced;
  std::size_t daimons = 0;
  while (random_pairs.instances < 1000) {
    auto phi = lu::random_positive(rng, {lu::Address{}}, o);
    if (phi.is_omega()) continue;
    auto psi = lu::random_negative(rng, {}, {}, o);
    auto t = lu::token_run(phi, psi);
    daimons += t.outcome == lu::Outcome::Kind::Daimon;
    bool ok = t.revisits == 0 && lu::is_slice(lu::Design{t.pullback_left}) && lu::is_slice(lu::Design{t.pullback_right});
    random_pairs.check(ok, [&] { return lu::to_string(phi) + " | " + lu::to_string(psi); });
  }
  o.alphabet = lu::Alphabet(std::vector<lu::Ramification>{{1}, {1, 2}, {2}});
  while (balanced.instances < 500) {
    auto [phi, psi] = lu::balanced_slices(rng, o);
    auto t = lu::token_run(phi, psi);
    bool ok = lu::is_balanced(phi, psi) && t.revisits == 0 && t.pullback_left == phi && t.pullback_right == psi;
    balanced.check(ok, [&] { return lu::to_string(phi) + " | " + lu::to_string(psi); });
  }
  auto a = verdict(random_pairs, 500, std::to_string(daimons) + " convergent");
  auto b = verdict(balanced, 500);
  return {a.pass && b.pass, "single visit and slice pull-backs: " + a.detail + "; balanced slices fully visited: " + b.detail};
}

// ---------------------------------------------------------------- behaviours

std::vector<lu::Design> pick(lu::Rng& rng, const std::vector<lu::PositiveDesign>& from, std::size_t n,
                             const std::function<bool(const lu::PositiveDesign&)>& keep) {
  std::vector<lu::Design> out;
  for (int guard = 0; out.size() < n && guard < 1000; ++guard) {
    const auto& d = from[rng.below(from.size())];
    if (keep(d)) out.push_back(d);
  }
  return out;
}

std::vector<lu::Design> pick(lu::Rng& rng, const std::vector<lu::NegativeDesign>& from, std::size_t n) {
  std::vector<lu::Design> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(from[rng.below(from.size())]);
  return out;
}

Outcome behaviours() {
  std::vector<std::shared_ptr<const lu::Space>> spaces{
      lu::Space::make({lu::parse_alphabet("{1},{2},{3} | {1},{2} | {1}"), 3}),
      lu::Space::make({lu::parse_alphabet("{1},{2},{3} | {1} | {1}"), 3})};
  lu::Rng rng(606);
  Tally dir, plus, with, incarnated_dual;
  auto roots = [](std::set<unsigned> allowed) {
    return [allowed](const lu::PositiveDesign& d) {
      return d.is_proper() && d.ram.size() == 1 && allowed.count(d.ram[0]);
    };
  };
  for (int round = 0; round < 200; ++round) {
    for (const auto& s : spaces) {
      std::string where = lu::to_string(s->universe());
      // Directories of a behaviour and of its orthogonal.
      for (bool pos : {true, false}) {
        auto a = pos ? pick(rng, s->positives(), 1 + rng.below(3), [](const auto&) { return true; })
                     : pick(rng, s->negatives(), 1 + rng.below(3));
        auto g = lu::orthogonal_set(s, pos, a);
        dir.check(lu::directory(lu::orthogonal(g)) == lu::directory(g), [&] { return where; });
        auto inc = lu::Behaviour{g.space, g.positive, lu::incarnated(g), {}};
        incarnated_dual.check(lu::orthogonal(inc).members == lu::orthogonal(g).members, [&] { return where; });
      }
      // Disjoint pairs: root biases split between the two sides.
      unsigned cut = 1 + static_cast<unsigned>(rng.below(2));
      std::set<unsigned> left, right;
      for (unsigned i = 1; i <= 3; ++i) (i <= cut ? left : right).insert(i);
      auto a = pick(rng, s->positives(), 1 + rng.below(2), roots(left));
      auto b = pick(rng, s->positives(), 1 + rng.below(2), roots(right));
      if (a.empty() || b.empty()) continue;

      auto gp = lu::biorthogonal(s, true, a), hp = lu::biorthogonal(s, true, b);
      if (lu::disjoint(gp, hp))
        plus.check(lu::additive(gp, hp, lu::Additive::Plus).members == lu::set_union(gp, hp), [&] { return where; });

      auto g = lu::orthogonal_set(s, true, a), h = lu::orthogonal_set(s, true, b);
      if (!lu::disjoint(g, h)) continue;
      auto gh = lu::additive(g, h, lu::Additive::With);
      auto dg = lu::directory(g), dh = lu::directory(h);
      auto ig = lu::incarnated(g), ih = lu::incarnated(h), igh = lu::incarnated(gh);
      bool ok = igh.count() == ig.count() * ih.count();
      // Splitting lands in |G|×|H| and pairing undoes it.
      for (auto k : igh.indices()) {
        const auto& psi = s->negatives()[k];
        auto l = lu::restrict(psi, dg), r = lu::restrict(psi, dh);
        auto il = s->index_of(l), ir = s->index_of(r);
        ok = ok && il && ir && ig.test(*il) && ih.test(*ir) && lu::join(l, r) == psi;
      }
      // Pairing lands in |G&H|.
      for (auto x : ig.indices())
        for (auto y : ih.indices()) {
          auto j = s->index_of(lu::join(s->negatives()[x], s->negatives()[y]));
          ok = ok && j && igh.test(*j);
        }
      with.check(ok, [&] { return where + ": |G&H|=" + std::to_string(igh.count()) + " |G|=" +
                                  std::to_string(ig.count()) + " |H|=" + std::to_string(ih.count()); });
    }
  }

  Tally coloured;
  auto c = lu::coloured_points();
  auto inc = lu::incarnation(c.point, c.circles);
  coloured.check(lu::to_string(inc) == "(- . ({1} -> (+ 1 {2} (- 1.2))) ({3} -> (+ 3 {9} (- 3.9))))",
                 [&] { return lu::to_string(inc); });
  coloured.check(inc == lu::least_member_below(c.point, c.circles), [] { return std::string("least member differs"); });

  auto v = {verdict(dir, 500), verdict(incarnated_dual, 500), verdict(plus, 100), verdict(with, 100), verdict(coloured, 2)};
  const char* names[] = {"Dir(G⊥)=Dir(G)", "G⊥=|G|⊥", "⊕ internal completeness", "|G&H|↔|G|×|H|", "coloured point"};
  bool pass = true;
  std::string detail;
  std::size_t k = 0;
  for (const auto& x : v) {
    pass = pass && x.pass;
    detail += (k ? "; " : "") + std::string(names[k]) + ": " + x.detail;
    ++k;
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- fax and λ

Outcome fax() {
  lu::Rng rng(707);
  auto o = ludics_options(3);
  Tally terms, designs;
  while (terms.instances < 200) {
    auto phi = lu::random_positive(rng, {lu::Address{}}, o);
    auto p = la::to_term(phi, {{lu::Address{}, "xp"}});
    auto fx = la::fax_term("x", {}, o.alphabet, 2 * la::depth(p));
    auto n = la::normalize(p, la::bind("xp", fx));
    auto want = la::rename_free(p, "xp", "x");
    terms.check(n && la::alpha_equal(*n, want), [&] { return la::to_string(p); });
  }
  while (designs.instances < 200) {
    auto phi = lu::random_positive(rng, {lu::Address{1}}, o);
    if (phi.is_omega()) continue;
    auto net = lu::make_net(phi, {lu::fax({1}, {2}, o.alphabet, 2 * lu::depth(phi))});
    auto nf = lu::normal_form(net);
    designs.check(nf == lu::canonical(lu::relocate(phi, {1}, {2})), [&] { return lu::to_string(phi); });
  }
  auto a = verdict(terms, 200), b = verdict(designs, 200);
  return {a.pass && b.pass, "terms: " + a.detail + "; designs: " + b.detail};
}

Outcome lambda_bridge() {
  lu::Rng rng(808);
  auto o = ludics_options(4);
  o.slices = true;
  Tally round, typ, machine;
  auto pb = lu::parse_base("|- ."), nb = lu::parse_base(". |-");
  while (round.instances < 500) {
    bool pos = rng.coin(0.5);
    if (pos) {
      auto d = lu::random_positive(rng, {lu::Address{}}, o);
      if (d.is_omega()) continue;
      auto t = la::slice_to_term(d, pb);
      round.check(la::term_to_slice(t, pb) == d && la::alpha_equal(la::slice_to_term(la::term_to_slice(t, pb), pb), t),
                  [&] { return lu::to_string(d); });
    } else {
      auto d = lu::random_negative(rng, {}, {}, o);
      auto t = la::slice_to_term(d, nb);
      round.check(la::term_to_slice(t, nb) == d, [&] { return lu::to_string(d); });
    }
  }
  o.slices = false;
  o.depth = 3;
  std::size_t affine = 0;
  while (typ.instances < 500) {
    auto t = la::random_term(rng, {{"a", 0}, {"b", 0}}, o);
    bool af = la::affine_check(t);
    affine += af;
    typ.check(af == la::typable(t), [&] { return la::to_string(t); });
  }
  while (machine.instances < 500) {
    auto phi = lu::random_positive(rng, {lu::Address{}}, o);
    auto psi = lu::random_negative(rng, {}, {}, o);
    auto p = la::to_term(phi, {{lu::Address{}, "x"}});
    auto m = la::to_term(psi, {});
    if (!la::affine_check(p) || !la::affine_check(m)) {
      machine.check(false, [&] { return "non-affine translation of " + lu::to_string(phi); });
      continue;
    }
    auto tm = la::machine_run(p, la::bind("x", m));
    auto dm = lu::run_state(&phi, lu::Env{{lu::Address{}, &psi}});
    machine.check(tm.kind == dm.kind && tm.steps == dm.steps,
                  [&] { return lu::to_string(phi) + " | " + lu::to_string(psi); });
  }
  auto a = verdict(round, 500), b = verdict(typ, 500, std::to_string(affine) + " affine"), c = verdict(machine, 500);
  return {a.pass && b.pass && c.pass, "round trip: " + a.detail + "; affine⇔typable: " + b.detail + "; machines: " + c.detail};
}

}  // namespace

int main() {
  report("criteria equivalence (DR, weak/strong parsing, sequentialization)", criteria_equivalence);
  report("CP ⇔ DR exhaustive (depth ≤3, ≤6 leaves)", cp_exhaustive);
  report("MIX: acyclicity ⇔ sequentialization with mix", mix);
  report("AJ ⇔ acyclicity (cut-free proof structures, ≤10 leaves)", aj);
  report("cut elimination", cut_elimination);
  report("ludics associativity", associativity);
  report("ludics monotonicity", monotonicity);
  report("ludics stability (pull-back is the least convergent sub-design pair)", stability);
  report("ludics separation (both directions)", separation);
  report("single visit and full visitation", single_visit);
  report("behaviours (universes depth ≤3)", behaviours);
  report("fax normalizes to renaming", fax);
  report("λ-bridge", lambda_bridge);
  std::printf("%s\n", failures ? "SOME CRITERIA FAILED" : "ALL CRITERIA PASSED");
  return failures ? 1 : 0;
}
