#include "locus/ludics/random.hpp"

#include <algorithm>
#include <functional>

namespace locus::ludics {

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[rng.below(v.size())];
}

PositiveDesign leaf(Rng& rng, const RandomDesignOptions& o) {
  return rng.coin(o.p_omega / (o.p_omega + o.p_daimon + 1e-12)) ? PositiveDesign::omega() : PositiveDesign::daimon();
}

}  // namespace

PositiveDesign random_positive(Rng& rng, const std::set<Address>& context, const RandomDesignOptions& o) {
  if (o.depth == 0 || context.empty()) return leaf(rng, o);
  if (rng.coin(o.p_daimon)) return PositiveDesign::daimon();
  if (rng.coin(o.p_omega)) return PositiveDesign::omega();
  std::vector<Address> ctx(context.begin(), context.end());
  const Address& xi = pick(rng, ctx);
  const auto& rams = o.alphabet.at(xi.size());
  if (rams.empty()) return PositiveDesign::daimon();
  const Ramification& r = pick(rng, rams);
  // Each remaining address goes to one child or is dropped, which keeps the children affine.
  std::vector<std::set<Address>> parts(r.size());
  for (const auto& a : ctx) {
    if (a == xi) continue;
    auto k = rng.below(r.size() + 1);
    if (k < r.size()) parts[k].insert(a);
  }
  RandomDesignOptions sub = o;
  sub.depth = o.depth - 1;
  std::vector<NegativeDesign> children;
  for (std::size_t k = 0; k < r.size(); ++k) children.push_back(random_negative(rng, child(xi, r[k]), parts[k], sub));
  return PositiveDesign::proper(xi, r, std::move(children));
}

NegativeDesign random_negative(Rng& rng, const Address& focus, const std::set<Address>& context,
                               const RandomDesignOptions& o) {
  NegativeDesign n;
  n.focus = focus;
  std::vector<Ramification> offered = o.alphabet.at(focus.size());
  if (o.slices) {
    if (offered.empty() || !rng.coin(o.p_branch)) return n;
    offered = {pick(rng, offered)};
  }
  for (const auto& j : offered) {
    if (!o.slices && !rng.coin(o.p_branch)) continue;
    std::set<Address> ctx = context;
    for (const auto& a : star(focus, j)) ctx.insert(a);
    auto p = random_positive(rng, ctx, o);
    if (!p.is_omega()) n.branches.emplace(j, std::move(p));
  }
  return n;
}

PositiveDesign random_below(Rng& rng, const PositiveDesign& d, double p) {
  if (!d.is_proper()) return d;
  PositiveDesign out = d;
  for (auto& c : out.children) c = random_below(rng, c, p);
  return out;
}

NegativeDesign random_below(Rng& rng, const NegativeDesign& d, double p) {
  NegativeDesign out;
  out.focus = d.focus;
  for (const auto& [j, b] : d.branches) {
    if (rng.coin(p)) continue;
    out.branches.emplace(j, random_below(rng, b, p));
  }
  return out;
}

PositiveDesign random_above(Rng& rng, const PositiveDesign& d, double p) {
  if (d.is_daimon()) return d;
  if (rng.coin(p)) return PositiveDesign::daimon();
  if (d.is_omega()) return d;
  PositiveDesign out = d;
  for (auto& c : out.children) c = random_above(rng, c, p);
  return out;
}

NegativeDesign random_above(Rng& rng, const NegativeDesign& d, double p) {
  NegativeDesign out;
  out.focus = d.focus;
  for (const auto& [j, b] : d.branches) out.branches.emplace(j, random_above(rng, b, p));
  return out;
}

RandomNet random_net(Rng& rng, const RandomDesignOptions& o, std::size_t max_partners) {
  std::size_t k = 1 + rng.below(max_partners);
  // Vertex 0 is the principal design; vertex i is partner i - 1, based on the address i.
  std::vector<std::size_t> parent(k + 1, 0);
  std::vector<std::set<Address>> ctx(k + 1);
  for (std::size_t i = 1; i <= k; ++i) {
    parent[i] = rng.below(i);
    ctx[parent[i]].insert(Address{static_cast<unsigned>(i)});
  }
  unsigned fresh = 100;
  for (std::size_t v = 0; v <= k; ++v)
    if (rng.coin(0.3)) ctx[v].insert(Address{fresh++});

  RandomNet out;
  for (int attempt = 0; attempt < 32; ++attempt) {
    out.net.principal = random_positive(rng, ctx[0], o);
    if (!out.net.principal.is_omega()) break;
  }
  if (out.net.principal.is_omega()) out.net.principal = PositiveDesign::daimon();
  out.net.principal_base = Base{std::nullopt, ctx[0]};
  for (std::size_t i = 1; i <= k; ++i) {
    Address a{static_cast<unsigned>(i)};
    out.net.partners.push_back(random_negative(rng, a, ctx[i], o));
    out.net.partner_bases.push_back(Base{a, ctx[i]});
  }
  std::vector<bool> in(k + 1, false);
  in[0] = true;
  for (std::size_t i = 1; i <= k; ++i)
    if (in[parent[i]] && rng.coin(0.5)) {
      in[i] = true;
      out.inner.push_back(i - 1);
    }
  return out;
}

namespace {

struct Move {
  int owner;  // 0 for the positive design, 1 for the negative one
  Address focus;
  Ramification ram;
};

// Indices of the moves forming `owner`'s view of the first n moves.
std::vector<std::size_t> player_view(const std::vector<Move>& play, std::size_t n, int owner) {
  if (n == 0) return {};
  const Move& last = play[n - 1];
  if (last.owner == owner) {
    auto v = player_view(play, n - 1, owner);
    v.push_back(n - 1);
    return v;
  }
  for (std::size_t k = n - 1; k-- > 0;) {
    const Move& m = play[k];
    if (m.owner == owner && !last.focus.empty() &&
        Address(last.focus.begin(), last.focus.end() - 1) == m.focus &&
        std::binary_search(m.ram.begin(), m.ram.end(), last.focus.back())) {
      auto v = player_view(play, k + 1, owner);
      v.push_back(n - 1);
      return v;
    }
  }
  return {n - 1};
}

std::vector<Action> as_chronicle(const std::vector<Move>& play, const std::vector<std::size_t>& idx, int owner) {
  std::vector<Action> out;
  for (auto k : idx) out.push_back({play[k].owner == owner, play[k].focus, play[k].ram});
  return out;
}

}  // namespace

std::pair<PositiveDesign, NegativeDesign> balanced_slices(Rng& rng, const RandomDesignOptions& o) {
  for (;;) {
    std::vector<Move> play;
    std::set<Address> used;
    int mover = 0;
    while (play.size() < 2 * o.depth) {
      std::vector<Address> avail;
      if (play.empty()) {
        avail.push_back({});
      } else {
        for (auto k : player_view(play, play.size(), mover)) {
          const Move& m = play[k];
          if (m.owner == mover) continue;
          for (const auto& a : star(m.focus, m.ram))
            if (!used.count(a) && !o.alphabet.at(a.size()).empty()) avail.push_back(a);
        }
      }
      if (avail.empty() || (!play.empty() && rng.coin(o.p_daimon))) break;
      Address a = pick(rng, avail);
      used.insert(a);
      play.push_back({mover, a, pick(rng, o.alphabet.at(a.size()))});
      mover = 1 - mover;
    }
    if (play.empty()) continue;
    std::set<Chronicle> cs[2];
    for (std::size_t t = 0; t < play.size(); ++t) {
      int w = play[t].owner;
      cs[w].insert({as_chronicle(play, player_view(play, t + 1, w), w), Chronicle::End::None});
    }
    cs[mover].insert({as_chronicle(play, player_view(play, play.size(), mover), mover), Chronicle::End::Daimon});
    try {
      auto phi = from_chronicles(cs[0], Base{std::nullopt, {Address{}}});
      auto psi = from_chronicles(cs[1], Base{Address{}, {}});
      return {std::get<PositiveDesign>(phi), std::get<NegativeDesign>(psi)};
    } catch (const ChronicleError&) {
      // A play whose views break affinity; draw another one.
    }
  }
}

namespace {

void collect_actions(const Design& d, bool flip, std::set<Action>& out) {
  for (const auto& c : to_chronicles(d))
    for (auto a : c.actions) {
      a.positive = a.positive != flip;
      out.insert(a);
    }
}

}  // namespace

bool is_balanced(const PositiveDesign& phi, const NegativeDesign& psi) {
  if (!is_slice(phi) || !is_slice(psi)) return false;
  std::set<Action> a, b;
  collect_actions(phi, false, a);
  collect_actions(psi, true, b);
  return a == b;
}

}  // namespace locus::ludics
