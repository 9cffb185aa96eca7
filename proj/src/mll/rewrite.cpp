#include "locus/mll/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "locus/mll/criteria.hpp"

namespace locus::mll {

std::string to_string(const ParseStep& step) {
  switch (step.rule) {
    case ParseRule::Par: return "par " + std::to_string(step.tree) + ":" + occurrence_to_string(step.occ);
    case ParseRule::Tensor: return "tensor " + std::to_string(step.tree) + ":" + occurrence_to_string(step.occ);
    case ParseRule::MixPar: return "mix-par " + std::to_string(step.tree) + ":" + occurrence_to_string(step.occ);
    case ParseRule::Cut: return "cut {" + std::to_string(step.tree) + "," + std::to_string(step.other) + "}";
  }
  return {};
}

namespace {

void drop_trees(ParaproofStructure& s, std::size_t a, std::size_t b) {
  auto remap = [&](std::size_t k) { return k - (k > a ? 1 : 0) - (k > b ? 1 : 0); };
  ParaproofStructure out;
  for (std::size_t k = 0; k < s.trees.size(); ++k)
    if (k != a && k != b) out.trees.push_back(s.trees[k]);
  for (auto c : s.classes) {
    for (auto& l : c) l.tree = remap(l.tree);
    out.classes.push_back(std::move(c));
  }
  for (const auto& [x, y] : s.cuts)
    if (x != a && x != b) out.cuts.push_back({remap(x), remap(y)});
  s = std::move(out);
}

void erase_leaf(LeafClass& c, const LeafRef& l) { c.erase(std::remove(c.begin(), c.end(), l), c.end()); }

}  // namespace

ParaproofStructure apply_parse_step(const ParaproofStructure& s, const ParseStep& step) {
  ParaproofStructure out = s;
  if (step.rule == ParseRule::Cut) {
    LeafRef a{step.tree, ""}, b{step.other, ""};
    std::size_t ka = out.class_of(a), kb = out.class_of(b);
    LeafClass merged = out.classes[ka];
    if (kb != ka) merged.insert(merged.end(), out.classes[kb].begin(), out.classes[kb].end());
    erase_leaf(merged, a);
    erase_leaf(merged, b);
    out.classes.erase(out.classes.begin() + static_cast<long>(std::max(ka, kb)));
    if (kb != ka) out.classes.erase(out.classes.begin() + static_cast<long>(std::min(ka, kb)));
    out.classes.push_back(std::move(merged));
    drop_trees(out, step.tree, step.other);
    out.canonicalize();
    return out;
  }
  LeafRef a{step.tree, step.occ + "1"}, b{step.tree, step.occ + "2"};
  std::size_t ka = out.class_of(a), kb = out.class_of(b);
  auto& leaves = out.trees[step.tree].leaves;
  leaves.erase(a.occ);
  leaves.erase(b.occ);
  leaves.insert(step.occ);
  LeafClass merged = out.classes[ka];
  if (kb != ka) {
    merged.insert(merged.end(), out.classes[kb].begin(), out.classes[kb].end());
    out.classes.erase(out.classes.begin() + static_cast<long>(std::max(ka, kb)));
    out.classes.erase(out.classes.begin() + static_cast<long>(std::min(ka, kb)));
  } else {
    out.classes.erase(out.classes.begin() + static_cast<long>(ka));
  }
  erase_leaf(merged, a);
  erase_leaf(merged, b);
  merged.push_back({step.tree, step.occ});
  out.classes.push_back(std::move(merged));
  out.canonicalize();
  return out;
}

std::vector<std::pair<ParseStep, ParaproofStructure>> parse_redexes(const ParaproofStructure& s, bool mix) {
  std::vector<std::pair<ParseStep, ParaproofStructure>> out;
  for (std::size_t k = 0; k < s.trees.size(); ++k) {
    const auto& t = s.trees[k];
    for (const auto& u : t.leaves) {
      if (u.empty() || u.back() != '1') continue;
      Occurrence v = u.substr(0, u.size() - 1);
      if (!t.leaves.count(v + "2")) continue;
      bool same = s.class_of({k, v + "1"}) == s.class_of({k, v + "2"});
      Connective c = subformula_at(t.formula, v)->kind();
      ParseStep step{ParseRule::Par, k, v, 0};
      if (c == Connective::Par && same) step.rule = ParseRule::Par;
      else if (c == Connective::Tensor && !same) step.rule = ParseRule::Tensor;
      else if (c == Connective::Par && !same && mix) step.rule = ParseRule::MixPar;
      else continue;
      out.push_back({step, apply_parse_step(s, step)});
    }
  }
  for (const auto& [a, b] : s.cuts) {
    if (s.trees[a].leaves != std::set<Occurrence>{""} || s.trees[b].leaves != std::set<Occurrence>{""}) continue;
    if (s.class_of({a, ""}) == s.class_of({b, ""})) continue;
    ParseStep step{ParseRule::Cut, a, {}, b};
    out.push_back({step, apply_parse_step(s, step)});
  }
  return out;
}

bool is_parse_terminal(const ParaproofStructure& s, bool mix) {
  if (!s.cuts.empty()) return false;
  for (const auto& t : s.trees)
    if (t.leaves != std::set<Occurrence>{""}) return false;
  return mix ? !s.classes.empty() : s.classes.size() == 1;
}

ParseVerdict check_parsing(const ParaproofStructure& s, ParseMode mode, const ParseOptions& opts) {
  struct Node {
    std::string parent;
    ParseStep step;
  };
  ParseVerdict v;
  ParaproofStructure start = s;
  start.canonicalize();
  std::unordered_map<std::string, Node> seen;
  std::deque<std::pair<std::string, ParaproofStructure>> queue;
  std::string root = to_string(start);
  seen.emplace(root, Node{});
  queue.push_back({root, start});
  while (!queue.empty()) {
    auto [key, cur] = std::move(queue.front());
    queue.pop_front();
    ++v.explored;
    if (v.explored > opts.max_states)
      throw GuardError("parse search exceeded " + std::to_string(opts.max_states) + " states");
    bool terminal = is_parse_terminal(cur, opts.mix);
    if (mode == ParseMode::Weak && terminal) {
      for (std::string k = key; k != root; k = seen.at(k).parent) v.trace.push_back(seen.at(k).step);
      std::reverse(v.trace.begin(), v.trace.end());
      v.accepted = true;
      return v;
    }
    auto next = parse_redexes(cur, opts.mix);
    if (next.empty() && !terminal) {
      if (mode == ParseMode::Strong) {
        v.stuck = cur;
        return v;
      }
      if (!v.stuck) v.stuck = cur;
    }
    for (auto& [step, succ] : next) {
      std::string k = to_string(succ);
      if (seen.emplace(k, Node{key, step}).second) queue.push_back({std::move(k), std::move(succ)});
    }
  }
  v.accepted = mode == ParseMode::Strong;
  return v;
}

namespace {

struct Label {
  std::size_t id;
  Occurrence occ;
  friend bool operator==(const Label&, const Label&) = default;
};

struct Group {
  DerivationPtr d;
  std::vector<Label> labels;
  bool live = true;
};

std::size_t position(const std::vector<Label>& labels, const Label& l) {
  auto it = std::find(labels.begin(), labels.end(), l);
  if (it == labels.end()) throw std::logic_error("sequentialize: lost track of a conclusion");
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

Sequentialization sequentialize(const ParaproofStructure& s, bool allow_mix, std::size_t max_states) {
  Sequentialization out;
  ParseOptions po;
  po.mix = allow_mix;
  po.max_states = max_states;
  ParseVerdict pv = check_parsing(s, ParseMode::Weak, po);
  if (!pv.accepted) return out;
  out.trace = pv.trace;

  ParaproofStructure cur = s;
  cur.canonicalize();
  std::vector<std::size_t> ids(cur.trees.size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
  std::vector<Group> groups;
  std::map<std::pair<std::size_t, Occurrence>, std::size_t> owner;
  for (const auto& c : cur.classes) {
    std::vector<Formula> gamma;
    Group g;
    for (const auto& l : c) {
      gamma.push_back(cur.leaf_formula(l));
      g.labels.push_back({l.tree, l.occ});
      owner[{l.tree, l.occ}] = groups.size();
    }
    g.d = Derivation::axiom(gamma);
    groups.push_back(std::move(g));
  }
  auto merge_into = [&](std::size_t into, std::size_t from) {
    for (const auto& l : groups[from].labels) owner[{l.id, l.occ}] = into;
    groups[from].live = false;
  };

  for (const auto& step : pv.trace) {
    if (step.rule == ParseRule::Cut) {
      Label a{ids[step.tree], ""}, b{ids[step.other], ""};
      std::size_t ga = owner.at({a.id, a.occ}), gb = owner.at({b.id, b.occ});
      Group& x = groups[ga];
      Group& y = groups[gb];
      x.d = Derivation::cut(x.d, position(x.labels, a), y.d, position(y.labels, b));
      x.labels = concat_order(x.labels, y.labels);
      merge_into(ga, gb);
      std::vector<std::size_t> next;
      for (std::size_t k = 0; k < ids.size(); ++k)
        if (k != step.tree && k != step.other) next.push_back(ids[k]);
      ids = std::move(next);
    } else {
      std::size_t id = ids[step.tree];
      Label a{id, step.occ + "1"}, b{id, step.occ + "2"}, fresh{id, step.occ};
      std::size_t ga = owner.at({a.id, a.occ}), gb = owner.at({b.id, b.occ});
      Group& x = groups[ga];
      if (step.rule == ParseRule::Par) {
        std::size_t i = position(x.labels, a), j = position(x.labels, b);
        x.d = Derivation::par(x.d, i, j);
        x.labels = par_order(x.labels, i, j, fresh);
      } else if (step.rule == ParseRule::Tensor) {
        Group& y = groups[gb];
        std::size_t i = position(x.labels, a), j = position(y.labels, b);
        x.d = Derivation::tensor(x.d, i, y.d, j);
        x.labels = tensor_order(x.labels, i, y.labels, j, fresh);
        merge_into(ga, gb);
      } else {
        Group& y = groups[gb];
        std::size_t i = position(x.labels, a), j = x.labels.size() + position(y.labels, b);
        x.d = Derivation::par(Derivation::mix(x.d, y.d), i, j);
        x.labels = par_order(concat_order(x.labels, y.labels), i, j, fresh);
        merge_into(ga, gb);
      }
      owner[{fresh.id, fresh.occ}] = ga;
    }
    cur = apply_parse_step(cur, step);
  }

  DerivationPtr d;
  std::vector<Label> labels;
  for (const auto& g : groups) {
    if (!g.live) continue;
    if (!d) {
      d = g.d;
      labels = g.labels;
    } else {
      d = Derivation::mix(d, g.d);
      labels = concat_order(labels, g.labels);
    }
  }
  if (!d) return out;
  std::vector<std::size_t> order(labels.size());
  bool identity = true;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    order[k] = position(labels, {k, ""});
    identity = identity && order[k] == k;
  }
  out.derivation = identity ? d : Derivation::exchange(d, order);
  out.ok = true;
  return out;
}

namespace {

std::set<Occurrence> strip(const std::set<Occurrence>& us, char c) {
  std::set<Occurrence> out;
  for (const auto& u : us)
    if (!u.empty() && u[0] == c) out.insert(u.substr(1));
  return out;
}

}  // namespace

std::optional<std::pair<std::string, ParaproofStructure>> cut_step(const ParaproofStructure& in) {
  if (in.cuts.empty()) return std::nullopt;
  ParaproofStructure s = in;
  s.canonicalize();
  auto [a, b] = s.cuts.front();
  const auto& ta = s.trees[a];
  const auto& tb = s.trees[b];
  if (!(ta.formula == dual(tb.formula))) throw std::invalid_argument("ill-formed cut: formulas are not dual");
  const bool la = ta.leaves == std::set<Occurrence>{""};
  const bool lb = tb.leaves == std::set<Occurrence>{""};

  if (la && lb) {
    ParseStep merge{ParseRule::Cut, a, {}, b};
    ParaproofStructure out = apply_parse_step(s, merge);
    std::erase_if(out.classes, [](const LeafClass& c) { return c.empty(); });
    out.canonicalize();
    return std::make_pair(std::string("leaf-cut"), out);
  }

  if (la || lb) {
    // Expand the leaf side so both sides expose their main connective.
    std::size_t t = la ? a : b;
    const Formula f = s.trees[t].formula;
    LeafRef leaf{t, ""};
    std::size_t k = s.class_of(leaf);
    LeafClass cls = s.classes[k];
    s.trees[t].leaves = {"1", "2"};
    if (cls.size() == 2) {
      LeafRef m = cls[0] == leaf ? cls[1] : cls[0];
      if (s.leaf_formula(m) == dual(f)) {
        auto& ml = s.trees[m.tree].leaves;
        ml.erase(m.occ);
        ml.insert(m.occ + "1");
        ml.insert(m.occ + "2");
        s.classes.erase(s.classes.begin() + static_cast<long>(k));
        s.classes.push_back({{t, "1"}, {m.tree, m.occ + "1"}});
        s.classes.push_back({{t, "2"}, {m.tree, m.occ + "2"}});
        s.canonicalize();
        return std::make_pair(std::string("eta-axiom"), s);
      }
    }
    erase_leaf(s.classes[k], leaf);
    s.classes[k].push_back({t, "1"});
    if (f.kind() == Connective::Par) s.classes[k].push_back({t, "2"});
    else s.classes.push_back({{t, "2"}});
    s.canonicalize();
    return std::make_pair(std::string("eta-daimon"), s);
  }

  // Both sides compound: split into two cuts on the immediate subformulas.
  const std::size_t n = s.trees.size();
  ParaproofStructure out;
  std::vector<std::size_t> index(n, npos);
  for (std::size_t k = 0; k < n; ++k)
    if (k != a && k != b) {
      index[k] = out.trees.size();
      out.trees.push_back(s.trees[k]);
    }
  const std::size_t a1 = out.trees.size(), a2 = a1 + 1, b1 = a1 + 2, b2 = a1 + 3;
  out.trees.push_back({ta.formula.left(), strip(ta.leaves, '1')});
  out.trees.push_back({ta.formula.right(), strip(ta.leaves, '2')});
  out.trees.push_back({tb.formula.left(), strip(tb.leaves, '1')});
  out.trees.push_back({tb.formula.right(), strip(tb.leaves, '2')});
  for (const auto& c : s.classes) {
    LeafClass m;
    for (const auto& l : c) {
      if (l.tree == a) m.push_back({l.occ[0] == '1' ? a1 : a2, l.occ.substr(1)});
      else if (l.tree == b) m.push_back({l.occ[0] == '1' ? b1 : b2, l.occ.substr(1)});
      else m.push_back({index[l.tree], l.occ});
    }
    out.classes.push_back(std::move(m));
  }
  for (std::size_t c = 1; c < s.cuts.size(); ++c) out.cuts.push_back({index[s.cuts[c].first], index[s.cuts[c].second]});
  out.cuts.push_back({a1, b1});
  out.cuts.push_back({a2, b2});
  out.canonicalize();
  return std::make_pair(std::string(ta.formula.kind() == Connective::Tensor ? "tensor-par" : "par-tensor"), out);
}

CutElimination cut_normalize(const ParaproofStructure& s, bool trace) {
  CutElimination out;
  out.result = s;
  out.result.canonicalize();
  if (trace) out.steps.push_back(out.result);
  while (auto next = cut_step(out.result)) {
    out.result = std::move(next->second);
    if (trace) {
      out.rules.push_back(next->first);
      out.steps.push_back(out.result);
    }
  }
  return out;
}

}  // namespace locus::mll
