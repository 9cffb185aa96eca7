#include "locus/ludics/engine.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace locus::ludics {

namespace {

const PositiveDesign& omega_node() {
  static const PositiveDesign om;
  return om;
}

}  // namespace

// ---------------------------------------------------------------- nets

Net make_net(PositiveDesign principal, std::vector<NegativeDesign> partners) {
  Net n;
  auto r = infer_base(principal);
  if (!r.ok) throw std::invalid_argument("principal design is untypable (" + r.rule + " at " + r.where + ")");
  n.principal_base = r.base;
  for (const auto& p : partners) {
    auto b = infer_base(p);
    if (!b.ok) throw std::invalid_argument("partner design is untypable (" + b.rule + " at " + b.where + ")");
    n.partner_bases.push_back(b.base);
  }
  n.principal = std::move(principal);
  n.partners = std::move(partners);
  return n;
}

NetVerdict validate_net(const Net& n) {
  NetVerdict v;
  auto fail = [&](std::string cond, std::string detail) {
    v.ok = false;
    v.condition = std::move(cond);
    v.detail = std::move(detail);
    return v;
  };
  if (n.partners.size() != n.partner_bases.size()) return fail("typing", "one base per partner is required");
  if (n.principal_base.negative()) return fail("typing", "the principal base must be positive");
  if (!n.principal.is_omega() && !check_design(n.principal, n.principal_base))
    return fail("typing", "principal design does not have base " + to_string(n.principal_base));
  for (std::size_t k = 0; k < n.partners.size(); ++k)
    if (!check_design(n.partners[k], n.partner_bases[k]))
      return fail("typing", "partner " + std::to_string(k) + " does not have base " + to_string(n.partner_bases[k]));

  // Vertex 0 is the principal design, vertex k+1 is partner k.
  struct Occ {
    Address a;
    std::size_t vertex;
    bool left;
  };
  std::vector<Occ> occs;
  for (const auto& a : n.principal_base.right) occs.push_back({a, 0, false});
  for (std::size_t k = 0; k < n.partners.size(); ++k) {
    occs.push_back({*n.partner_bases[k].left, k + 1, true});
    for (const auto& a : n.partner_bases[k].right) occs.push_back({a, k + 1, false});
  }
  std::map<Address, std::vector<std::size_t>> by_address;
  for (std::size_t x = 0; x < occs.size(); ++x) {
    for (std::size_t y = x + 1; y < occs.size(); ++y)
      if (occs[x].a != occs[y].a && !disjoint(occs[x].a, occs[y].a))
        return fail("disjointness", address_to_string(occs[x].a) + " and " + address_to_string(occs[y].a));
    by_address[occs[x].a].push_back(x);
  }
  std::vector<std::size_t> parent(n.partners.size() + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<std::vector<std::size_t>> adj(parent.size());
  std::set<Address> cut;
  for (const auto& [a, ids] : by_address) {
    if (ids.size() > 2) return fail("multiplicity", address_to_string(a) + " appears " + std::to_string(ids.size()) + " times");
    if (ids.size() < 2) continue;
    const Occ& x = occs[ids[0]];
    const Occ& y = occs[ids[1]];
    if (x.left == y.left) return fail("cut-sides", address_to_string(a) + " appears twice on the same side");
    auto rx = find(x.vertex), ry = find(y.vertex);
    if (rx == ry) return fail("acyclicity", "the cut on " + address_to_string(a) + " closes a cycle");
    parent[rx] = ry;
    adj[x.vertex].push_back(y.vertex);
    adj[y.vertex].push_back(x.vertex);
    cut.insert(a);
  }
  std::vector<bool> seen(parent.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto y : adj[x])
      if (!seen[y]) seen[y] = true, stack.push_back(y);
  }
  for (const auto& o : occs)
    if (seen[o.vertex] && !o.left && !cut.count(o.a)) v.type.right.insert(o.a);
  for (std::size_t k = 0; k < n.partners.size(); ++k)
    if (!seen[k + 1]) v.unreachable.push_back(k);
  return v;
}

// ---------------------------------------------------------------- weak machine

std::string to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::Daimon:
      return "daimon";
    case Outcome::Kind::CreatedOmega:
      return "created-omega";
    case Outcome::Kind::SyntacticOmega:
      return "syntactic-omega";
    case Outcome::Kind::Head:
      return "head";
  }
  return "?";
}

Env initial_env(const Net& n) {
  Env env;
  for (const auto& p : n.partners) env[p.focus] = &p;
  return env;
}

namespace {

// Uncut right-hand addresses reachable from the code through cuts, using minimal bases.
std::set<Address> state_type(const PositiveDesign* code, const Env& env) {
  std::set<Address> rights;
  if (!code->is_omega()) {
    auto r = infer_base(*code);
    if (!r.ok) throw std::logic_error("state code is untypable");
    rights = r.base.right;
  }
  std::map<Address, std::set<Address>> partner_rights;
  for (const auto& [a, p] : env) {
    auto r = infer_base(*p);
    if (!r.ok) throw std::logic_error("state partner is untypable");
    partner_rights[a] = r.base.right;
  }
  std::set<Address> out, frontier = rights;
  std::set<Address> used;
  while (!frontier.empty()) {
    Address a = *frontier.begin();
    frontier.erase(frontier.begin());
    auto it = partner_rights.find(a);
    if (it == partner_rights.end()) {
      out.insert(a);
    } else if (used.insert(a).second) {
      frontier.insert(it->second.begin(), it->second.end());
    }
  }
  return out;
}

}  // namespace

Outcome run_state(const PositiveDesign* code, Env env, const RunOptions& o) {
  Outcome out;
  Env theta;
  bool first = true;
  std::optional<std::set<Address>> declared;
  if (o.verify_types && !o.alternating) declared = state_type(code, env);
  for (;;) {
    if (code->is_omega()) {
      out.kind = Outcome::Kind::SyntacticOmega;
      return out;
    }
    if (code->is_daimon()) {
      out.kind = Outcome::Kind::Daimon;
      return out;
    }
    auto it = env.find(code->focus);
    if (it == env.end()) {
      out.kind = Outcome::Kind::Head;
      out.focus = code->focus;
      out.ram = code->ram;
      out.code = code;
      out.env = std::move(env);
      return out;
    }
    if (out.steps >= o.fuel) {
      out.kind = Outcome::Kind::CreatedOmega;
      return out;
    }
    const NegativeDesign* partner = it->second;
    env.erase(it);
    Env next = o.alternating && !first ? theta : env;
    if (o.alternating) theta = env;
    first = false;
    for (std::size_t k = 0; k < code->ram.size(); ++k) next[code->children[k].focus] = &code->children[k];
    if (o.trace)
      out.trace.push_back("R " + to_string(Action{true, code->focus, code->ram}));
    const PositiveDesign* b = partner->branch(code->ram);
    code = b ? b : &omega_node();
    env = std::move(next);
    ++out.steps;
    if (declared) {
      auto t = state_type(code, env);
      if (!std::includes(declared->begin(), declared->end(), t.begin(), t.end()))
        throw std::logic_error("rule (R) changed the type of the net");
    }
  }
}

Outcome weak_run(const Net& n, const RunOptions& o) { return run_state(&n.principal, initial_env(n), o); }

// ---------------------------------------------------------------- strong normalization

namespace {

struct Explorer {
  const FrontierPolicy& policy;
  NormalForm& nf;

  PositiveDesign explore(const PositiveDesign* code, const Env& env, std::vector<Action>& q, std::size_t sdepth,
                         std::size_t fuel) {
    RunOptions ro;
    ro.fuel = fuel;
    Outcome o = run_state(code, env, ro);
    switch (o.kind) {
      case Outcome::Kind::Daimon:
        nf.chronicles.insert({q, Chronicle::End::Daimon});
        return PositiveDesign::daimon();
      case Outcome::Kind::SyntacticOmega:
        nf.chronicles.insert({q, Chronicle::End::Omega});
        return PositiveDesign::omega();
      case Outcome::Kind::CreatedOmega:
        nf.chronicles.insert({q, Chronicle::End::CreatedOmega});
        return PositiveDesign::omega();
      case Outcome::Kind::Head:
        break;
    }
    q.push_back({true, o.focus, o.ram});
    nf.chronicles.insert({q, Chronicle::End::None});
    std::vector<NegativeDesign> children;
    for (std::size_t k = 0; k < o.ram.size(); ++k) {
      const NegativeDesign& c = o.code->children[k];
      children.push_back({c.focus, {}});
      if (sdepth >= policy.depth) {
        nf.truncated = nf.truncated || !c.branches.empty();
        continue;
      }
      std::set<Ramification> offered;
      for (const auto& [j, p] : c.branches) offered.insert(j);
      if (policy.alphabet)
        for (const auto& j : policy.alphabet->at(c.focus.size())) offered.insert(j);
      for (const auto& j : offered) {
        const PositiveDesign* b = c.branch(j);
        q.push_back({false, c.focus, j});
        auto sub = explore(b ? b : &omega_node(), o.env, q, sdepth + 1, fuel - o.steps);
        q.pop_back();
        if (!sub.is_omega()) children.back().branches.emplace(j, std::move(sub));
      }
    }
    Action head = q.back();
    q.pop_back();
    return PositiveDesign::proper(head.focus, head.ram, std::move(children));
  }
};

}  // namespace

NormalForm strong_normalize(const Net& n, const FrontierPolicy& p) {
  NormalForm nf;
  Explorer ex{p, nf};
  std::vector<Action> q;
  nf.design = ex.explore(&n.principal, initial_env(n), q, 0, p.fuel);
  return nf;
}

PositiveDesign normal_form(const Net& n) { return strong_normalize(n).design; }

bool orthogonal(const PositiveDesign& phi, const NegativeDesign& psi) {
  Env env{{psi.focus, &psi}};
  return run_state(&phi, std::move(env)).kind == Outcome::Kind::Daimon;
}

bool orthogonal(const PositiveDesign& phi, const std::vector<NegativeDesign>& psis) {
  Env env;
  for (const auto& p : psis) env[p.focus] = &p;
  return run_state(&phi, std::move(env)).kind == Outcome::Kind::Daimon;
}

// ---------------------------------------------------------------- token machine

std::string to_string(const Occurrence& u) {
  if (u.empty()) return ".";
  std::string s;
  for (const auto& st : u) {
    if (!s.empty()) s += ' ';
    switch (st.kind) {
      case OccStep::Kind::Bias:
        s += std::to_string(st.bias);
        break;
      case OccStep::Kind::Ram:
        s += ramification_to_string(st.ram);
        break;
      case OccStep::Kind::Son:
        s += "1";
        break;
    }
  }
  return s;
}

std::string to_string(const TokenPosition& p) { return std::string(p.right ? "(R, " : "(L, ") + to_string(p.occ) + ")"; }

namespace {

struct Located {
  bool missing = false;
  const PositiveDesign* pos = nullptr;  // set for positive nodes
  const NegativeDesign* neg = nullptr;  // set for negative actions
  Ramification ram;
  // Negative actions met on the way, by focus.
  std::map<Address, Occurrence> negatives;
};

Located locate(const PositiveDesign* phi, const NegativeDesign* psi, const Occurrence& u) {
  Located l;
  const PositiveDesign* pos = phi;
  const NegativeDesign* neg = psi;
  Occurrence prefix;
  bool at_negative_action = false;
  for (const auto& st : u) {
    prefix.push_back(st);
    switch (st.kind) {
      case OccStep::Kind::Bias:
        if (!pos || !pos->is_proper() || !std::binary_search(pos->ram.begin(), pos->ram.end(), st.bias))
          throw std::logic_error("bad occurrence");
        neg = &pos->child_at(st.bias);
        pos = nullptr;
        at_negative_action = false;
        break;
      case OccStep::Kind::Ram: {
        const PositiveDesign* b = neg->branch(st.ram);
        if (!b) {
          l.missing = true;
          return l;
        }
        l.negatives[neg->focus] = prefix;
        l.ram = st.ram;
        pos = b;
        at_negative_action = true;
        break;
      }
      case OccStep::Kind::Son:
        at_negative_action = false;
        break;
    }
  }
  if (at_negative_action) {
    l.neg = neg;
  } else {
    l.pos = pos;
  }
  return l;
}

Occurrence extend(Occurrence u, std::initializer_list<OccStep> more) {
  u.insert(u.end(), more);
  return u;
}

PositiveDesign pull_pos(const PositiveDesign& d, const Occurrence& u, const std::set<Occurrence>& visited) {
  if (!visited.count(u) || d.is_omega()) return PositiveDesign::omega();
  if (d.is_daimon()) return d;
  std::vector<NegativeDesign> cs;
  for (std::size_t k = 0; k < d.ram.size(); ++k) {
    const auto& c = d.children[k];
    NegativeDesign n{c.focus, {}};
    for (const auto& [j, p] : c.branches) {
      auto v = extend(u, {{OccStep::Kind::Bias, d.ram[k], {}}, {OccStep::Kind::Ram, 0, j}});
      if (!visited.count(v)) continue;
      auto sub = pull_pos(p, extend(v, {{OccStep::Kind::Son, 0, {}}}), visited);
      if (!sub.is_omega()) n.branches.emplace(j, std::move(sub));
    }
    cs.push_back(std::move(n));
  }
  return PositiveDesign::proper(d.focus, d.ram, std::move(cs));
}

}  // namespace

TokenResult token_run(const PositiveDesign& phi, const NegativeDesign& psi) {
  TokenResult res;
  std::map<Occurrence, Occurrence> bound_left, bound_right;
  auto bind = [&](const Occurrence& l, const Occurrence& r) {
    if (!bound_left.emplace(l, r).second) ++res.revisits;
    if (!bound_right.emplace(r, l).second) ++res.revisits;
    res.bindings.push_back({l, r});
  };
  TokenPosition at{false, {}};
  const std::size_t bound = 2 * (size(phi) + size(psi)) + 4;
  for (std::size_t guard = 0; guard <= bound; ++guard) {
    Located l = at.right ? locate(nullptr, &psi, at.occ) : locate(&phi, nullptr, at.occ);
    if (l.missing) {
      res.outcome = Outcome::Kind::SyntacticOmega;
      break;
    }
    res.trace.push_back(at);
    auto& visited = at.right ? res.visited_right : res.visited_left;
    if (!visited.insert(at.occ).second) ++res.revisits;
    if (l.neg) {
      at.occ.push_back({OccStep::Kind::Son, 0, {}});
      continue;
    }
    const PositiveDesign* p = l.pos;
    if (p->is_omega()) {
      res.outcome = Outcome::Kind::SyntacticOmega;
      break;
    }
    if (p->is_daimon()) {
      res.outcome = Outcome::Kind::Daimon;
      break;
    }
    if (!at.right && at.occ.empty()) {
      Occurrence r{{OccStep::Kind::Ram, 0, p->ram}};
      bind({}, r);
      at = {true, r};
      continue;
    }
    if (p->focus.empty()) {
      res.outcome = Outcome::Kind::Head;
      break;
    }
    Address parent(p->focus.begin(), p->focus.end() - 1);
    auto jt = l.negatives.find(parent);
    if (jt == l.negatives.end()) {
      res.outcome = Outcome::Kind::Head;
      break;
    }
    auto& table = at.right ? bound_right : bound_left;
    auto bt = table.find(jt->second);
    if (bt == table.end()) {
      res.outcome = Outcome::Kind::Head;
      break;
    }
    Occurrence next = extend(bt->second, {{OccStep::Kind::Bias, p->focus.back(), {}}, {OccStep::Kind::Ram, 0, p->ram}});
    if (at.right) {
      bind(next, at.occ);
    } else {
      bind(at.occ, next);
    }
    at = {!at.right, next};
  }
  res.pullback_left = pull_pos(phi, {}, res.visited_left);
  res.pullback_right = {psi.focus, {}};
  for (const auto& [j, p] : psi.branches) {
    Occurrence v{{OccStep::Kind::Ram, 0, j}};
    if (!res.visited_right.count(v)) continue;
    auto sub = pull_pos(p, extend(v, {{OccStep::Kind::Son, 0, {}}}), res.visited_right);
    if (!sub.is_omega()) res.pullback_right.branches.emplace(j, std::move(sub));
  }
  return res;
}

// ---------------------------------------------------------------- views and separation

namespace {

std::vector<Action> view_prefix(const std::vector<Action>& r, std::size_t n) {
  if (n == 0) return {};
  const Action& last = r[n - 1];
  if (!last.positive) {
    auto v = view_prefix(r, n - 1);
    v.push_back({true, last.focus, last.ram});
    return v;
  }
  if (!last.focus.empty()) {
    Address parent(last.focus.begin(), last.focus.end() - 1);
    for (std::size_t m = n - 1; m-- > 0;) {
      const Action& a = r[m];
      if (!a.positive && a.focus == parent && std::binary_search(a.ram.begin(), a.ram.end(), last.focus.back())) {
        auto v = view_prefix(r, m);
        v.push_back({true, a.focus, a.ram});
        v.push_back({false, last.focus, last.ram});
        return v;
      }
    }
  }
  if (n != 1) throw std::invalid_argument("chronicle has an unjustified positive action");
  return {{false, last.focus, last.ram}};
}

}  // namespace

std::vector<Action> view(const std::vector<Action>& r) { return view_prefix(r, r.size()); }

Design opp(const std::vector<Action>& r) {
  if (r.empty()) return skunk({});
  std::set<Chronicle> cs;
  for (std::size_t n = 1; n <= r.size(); ++n) {
    auto v = view_prefix(r, n);
    if (!v.empty() && v.back().positive) cs.insert({v, Chronicle::End::None});
  }
  if (r.back().positive) cs.insert({view(r), Chronicle::End::Daimon});
  Base b;
  if (r.front().positive) b.left = Address{};
  else b.right = {Address{}};
  return from_chronicles(cs, b);
}

namespace {

std::optional<Design> sep_pos(const PositiveDesign& a, const PositiveDesign& b, std::vector<Action>& q) {
  if (a.is_omega() || b.is_daimon()) return std::nullopt;
  if (a.is_daimon()) return opp(q);
  if (b.is_omega() || b.focus != a.focus || b.ram != a.ram) {
    q.push_back({true, a.focus, a.ram});
    auto w = opp(q);
    q.pop_back();
    return w;
  }
  q.push_back({true, a.focus, a.ram});
  for (std::size_t k = 0; k < a.children.size(); ++k) {
    const auto& ca = a.children[k];
    const auto& cb = b.children[k];
    std::set<Ramification> keys;
    for (const auto& [j, p] : ca.branches) keys.insert(j);
    for (const auto& [j, p] : cb.branches) keys.insert(j);
    for (const auto& j : keys) {
      const auto* pa = ca.branch(j);
      const auto* pb = cb.branch(j);
      q.push_back({false, ca.focus, j});
      auto w = sep_pos(pa ? *pa : omega_node(), pb ? *pb : omega_node(), q);
      q.pop_back();
      if (w) return w;
    }
  }
  q.pop_back();
  return std::nullopt;
}

}  // namespace

std::optional<Design> separation_witness(const Design& a, const Design& b) {
  if (a.index() != b.index()) throw std::invalid_argument("designs of different polarity");
  std::vector<Action> q;
  if (const auto* pa = std::get_if<PositiveDesign>(&a)) return sep_pos(*pa, std::get<PositiveDesign>(b), q);
  const auto& na = std::get<NegativeDesign>(a);
  const auto& nb = std::get<NegativeDesign>(b);
  if (na.focus != nb.focus) throw std::invalid_argument("designs on different bases");
  std::set<Ramification> keys;
  for (const auto& [j, p] : na.branches) keys.insert(j);
  for (const auto& [j, p] : nb.branches) keys.insert(j);
  for (const auto& j : keys) {
    const auto* pa = na.branch(j);
    const auto* pb = nb.branch(j);
    q.assign(1, {false, na.focus, j});
    if (auto w = sep_pos(pa ? *pa : omega_node(), pb ? *pb : omega_node(), q)) return w;
  }
  return std::nullopt;
}

}  // namespace locus::ludics
