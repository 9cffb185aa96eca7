#include "locus/mll/criteria.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace locus::mll {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// First switching (in counter order) whose class is accepted by `bad`.
template <class Bad>
std::uint64_t first_failure(const SwitchedGraph& g, bool parallel, Bad bad) {
  const std::uint64_t total = std::uint64_t{1} << g.par_count();
  if (!parallel || total < 64) {
    for (std::uint64_t m = 0; m < total; ++m)
      if (bad(g.classify(m))) return m;
    return kNone;
  }
  std::uint64_t first = kNone;
#pragma omp parallel for schedule(static) reduction(min : first)
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(total); ++m)
    if (static_cast<std::uint64_t>(m) < first && bad(g.classify(static_cast<std::uint64_t>(m))))
      first = static_cast<std::uint64_t>(m);
  return first;
}

Verdict switching_verdict(const ParaproofStructure& s, const DrOptions& opts, bool need_connected) {
  SwitchedGraph g(s);
  if (g.par_count() > opts.max_pars)
    throw GuardError("structure has " + std::to_string(g.par_count()) + " par nodes, cap is " +
                     std::to_string(opts.max_pars));
  auto bad = [need_connected](int c) { return c == 1 || (need_connected && c == 2); };
  std::uint64_t m = first_failure(g, opts.parallel, bad);
  if (m == kNone) return {};
  SwitchingWitness w;
  w.switching = Switching::from_mask(m, g.par_count());
  Graph cg = correction_graph(s, w.switching);
  Shape shape = analyze(cg);
  w.vertices = cg.labels;
  w.cycle = shape.cycle;
  if (shape.acyclic()) w.coloring = shape.coloring;
  return {false, w};
}

}  // namespace

Verdict check_dr(const ParaproofStructure& s, const DrOptions& opts) { return switching_verdict(s, opts, true); }

Verdict check_acyclicity(const ParaproofStructure& s, const DrOptions& opts) {
  return switching_verdict(s, opts, false);
}

bool partitions_orthogonal(const IntPartition& x, const IntPartition& y) {
  std::map<std::size_t, std::size_t> in_x, in_y;
  for (std::size_t k = 0; k < x.size(); ++k)
    for (auto e : x[k])
      if (!in_x.emplace(e, k).second) throw std::invalid_argument("element repeated in first partition");
  for (std::size_t k = 0; k < y.size(); ++k)
    for (auto e : y[k])
      if (!in_y.emplace(e, k).second) throw std::invalid_argument("element repeated in second partition");
  if (in_x.size() != in_y.size()) throw std::invalid_argument("partitions have different domains");
  for (const auto& [e, k] : in_x)
    if (!in_y.count(e)) throw std::invalid_argument("partitions have different domains");
  const std::size_t n = x.size() + y.size();
  if (in_x.size() + 1 != n) return false;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& [e, k] : in_x) {
    std::size_t a = find(k), b = find(x.size() + in_y.at(e));
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::vector<Partition> all_partitions(const std::vector<LeafRef>& leaves) {
  std::vector<Partition> out;
  std::vector<std::size_t> label(leaves.size(), 0);
  // Restricted growth strings.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t used) {
    if (k == leaves.size()) {
      Partition p(used);
      for (std::size_t e = 0; e < leaves.size(); ++e) p[label[e]].push_back(leaves[e]);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t c = 0; c <= used; ++c) {
      label[k] = c;
      rec(k + 1, std::max(used, c + 1));
    }
  };
  if (leaves.empty()) return {Partition{}};
  rec(0, 0);
  return out;
}

namespace {

ParaproofStructure dual_tree(const ParaproofStructure& s, std::size_t tree) {
  ParaproofStructure d;
  d.trees.push_back({dual(s.trees[tree].formula), s.trees[tree].leaves});
  return d;
}

Partition rename_tree(Partition p, std::size_t tree) {
  for (auto& c : p) {
    for (auto& l : c) l.tree = tree;
    std::sort(c.begin(), c.end());
  }
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

std::vector<Partition> dual_nets(const ParaproofStructure& s, std::size_t tree, bool extreme_only,
                                 std::size_t max_leaves) {
  if (extreme_only) return dual_nets_by_rules(s, tree, true);
  ParaproofStructure d = dual_tree(s, tree);
  if (d.trees[0].leaves.size() > max_leaves)
    throw GuardError("conclusion has " + std::to_string(d.trees[0].leaves.size()) + " leaves, cap is " +
                     std::to_string(max_leaves));
  // Verdicts depend only on the dual tree shape, so they are cached across calls.
  static std::mutex mu;
  static std::map<std::string, std::vector<Partition>> cache;
  std::string key = to_string(d);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) {
      std::vector<Partition> out;
      for (const auto& p : it->second) out.push_back(rename_tree(p, tree));
      return out;
    }
  }
  std::vector<Partition> nets;
  for (auto& p : all_partitions(d.leaves())) {
    d.classes = p;
    if (check_dr(d, {24, false}).accepted) nets.push_back(rename_tree(p, 0));
  }
  std::sort(nets.begin(), nets.end());
  std::vector<Partition> out;
  for (const auto& p : nets) out.push_back(rename_tree(p, tree));
  std::lock_guard lock(mu);
  cache.emplace(std::move(key), std::move(nets));
  return out;
}

std::vector<Partition> dual_nets_by_rules(const ParaproofStructure& s, std::size_t tree, bool extreme_only) {
  const Formula f = dual(s.trees[tree].formula);
  const auto& frontier = s.trees[tree].leaves;
  using Gamma = std::vector<Occurrence>;
  std::map<Gamma, std::set<Partition>> memo;
  std::function<const std::set<Partition>&(Gamma)> nets = [&](Gamma g) -> const std::set<Partition>& {
    std::sort(g.begin(), g.end());
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    std::set<Partition> out;
    bool all_leaves = std::all_of(g.begin(), g.end(), [&](const Occurrence& v) { return frontier.count(v) > 0; });
    if (all_leaves) {
      LeafClass c;
      for (const auto& v : g) c.push_back({tree, v});
      std::sort(c.begin(), c.end());
      out.insert(Partition{c});
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Occurrence& v = g[k];
      if (frontier.count(v)) continue;
      Gamma rest = g;
      rest.erase(rest.begin() + static_cast<long>(k));
      if (subformula_at(f, v)->kind() == Connective::Par) {
        Gamma next = rest;
        next.push_back(v + "1");
        next.push_back(v + "2");
        for (const auto& p : nets(next)) out.insert(p);
        continue;
      }
      const std::size_t r = rest.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        if (extreme_only && mask != 0 && mask != (std::uint64_t{1} << r) - 1) continue;
        Gamma left{v + "1"}, right{v + "2"};
        for (std::size_t e = 0; e < r; ++e) ((mask >> e) & 1 ? left : right).push_back(rest[e]);
        const auto& pl = nets(left);
        const auto& pr = nets(right);
        for (const auto& a : pl)
          for (const auto& b : pr) {
            Partition u = a;
            u.insert(u.end(), b.begin(), b.end());
            std::sort(u.begin(), u.end());
            out.insert(std::move(u));
          }
      }
    }
    return memo[g] = std::move(out);
  };
  const auto& result = nets(Gamma{""});
  return {result.begin(), result.end()};
}

std::vector<CounterProof> enumerate_counterproofs(const ParaproofStructure& s, const CpOptions& opts) {
  if (!s.cuts.empty()) throw std::invalid_argument("counter-proofs are defined for cut-free structures");
  if (count_leaves(s) > opts.max_leaves)
    throw GuardError("structure has " + std::to_string(count_leaves(s)) + " leaves, cap is " +
                     std::to_string(opts.max_leaves));
  std::vector<std::vector<Partition>> per;
  for (std::size_t i = 0; i < s.trees.size(); ++i) per.push_back(dual_nets(s, i, opts.extreme_only, opts.max_leaves));
  std::vector<CounterProof> out;
  std::vector<std::size_t> idx(per.size(), 0);
  if (std::any_of(per.begin(), per.end(), [](const auto& v) { return v.empty(); })) return out;
  while (true) {
    CounterProof cp;
    for (std::size_t i = 0; i < per.size(); ++i) {
      cp.nets.push_back(per[i][idx[i]]);
      cp.induced.insert(cp.induced.end(), per[i][idx[i]].begin(), per[i][idx[i]].end());
    }
    std::sort(cp.induced.begin(), cp.induced.end());
    out.push_back(std::move(cp));
    std::size_t k = 0;
    while (k < per.size() && ++idx[k] == per[k].size()) idx[k++] = 0;
    if (k == per.size()) break;
  }
  return out;
}

namespace {

IntPartition to_int(const Partition& p, const std::map<LeafRef, std::size_t>& index) {
  IntPartition out;
  for (const auto& c : p) {
    std::vector<std::size_t> v;
    for (const auto& l : c) v.push_back(index.at(l));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Verdict check_cp(const ParaproofStructure& s, const CpOptions& opts) {
  auto cps = enumerate_counterproofs(s, opts);
  std::map<LeafRef, std::size_t> index;
  for (const auto& l : s.leaves()) index.emplace(l, index.size());
  IntPartition x = to_int(s.classes, index);
  const std::int64_t n = static_cast<std::int64_t>(cps.size());
  std::int64_t first = n;
  if (opts.parallel && n >= 64) {
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first)
    for (std::int64_t k = 0; k < n; ++k)
      if (k < first && !partitions_orthogonal(x, to_int(cps[static_cast<std::size_t>(k)].induced, index))) first = k;
  } else {
    for (std::int64_t k = 0; k < n; ++k)
      if (!partitions_orthogonal(x, to_int(cps[static_cast<std::size_t>(k)].induced, index))) {
        first = k;
        break;
      }
  }
  if (first == n) return {};
  return {false, CounterProofWitness{cps[static_cast<std::size_t>(first)].induced}};
}

// ---------------------------------------------------------------------------
// AJ criterion.
//
// Components are the tree nodes down to the frontier plus one component for the
// whole sequent, read as a ⅋ of its conclusions. A restriction must alternate.
// In a ⊗ component only Opponent may move to the other side (a + move followed
// by a − move there); in a ⅋ component only Player may (− then +).

namespace {

struct AjGame {
  const ParaproofStructure& s;
  std::vector<LeafRef> leaves;
  std::vector<std::size_t> partner;
  // For each leaf: list of (component id, side char or tree for the sequent node).
  std::vector<std::vector<std::pair<std::size_t, int>>> comps;
  std::vector<Connective> comp_kind;

  explicit AjGame(const ParaproofStructure& st) : s(st), leaves(st.leaves()) {
    std::map<LeafRef, std::size_t> index;
    for (std::size_t k = 0; k < leaves.size(); ++k) index[leaves[k]] = k;
    partner.assign(leaves.size(), npos);
    for (const auto& c : s.classes) {
      partner[index.at(c[0])] = index.at(c[1]);
      partner[index.at(c[1])] = index.at(c[0]);
    }
    std::map<std::pair<std::size_t, Occurrence>, std::size_t> id;
    comp_kind.push_back(Connective::Par);  // the sequent
    comps.resize(leaves.size());
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      const auto& l = leaves[k];
      comps[k].push_back({0, 1000 + static_cast<int>(l.tree)});
      for (std::size_t len = 0; len <= l.occ.size(); ++len) {
        Occurrence v = l.occ.substr(0, len);
        auto [it, fresh] = id.emplace(std::make_pair(l.tree, v), comp_kind.size());
        if (fresh) comp_kind.push_back(subformula_at(s.trees[l.tree].formula, v)->kind());
        int side = len < l.occ.size() ? l.occ[len] : 0;
        comps[k].push_back({it->second, side});
      }
    }
  }

  // last[c] encodes the last move in component c as 2*leaf+positive, or -1.
  bool legal(const std::vector<int>& last, std::size_t leaf, bool positive) const {
    for (const auto& [c, side] : comps[leaf]) {
      int prev = last[c];
      if (prev < 0) continue;
      bool prev_pos = prev & 1;
      if (prev_pos == positive) return false;
      std::size_t pleaf = static_cast<std::size_t>(prev >> 1);
      int pside = -1;
      for (const auto& [pc, ps] : comps[pleaf])
        if (pc == c) pside = ps;
      if (pside == side) continue;
      Connective k = comp_kind[c];
      if (k == Connective::Tensor && !prev_pos && positive) return false;
      if (k == Connective::Par && prev_pos && !positive) return false;
    }
    return true;
  }

  void play(std::vector<int>& last, std::size_t leaf, bool positive) const {
    for (const auto& [c, side] : comps[leaf]) last[c] = static_cast<int>(2 * leaf + (positive ? 1 : 0));
  }
};

}  // namespace

bool is_aj_play(const ParaproofStructure& s, const std::vector<AjMove>& play) {
  AjGame g(s);
  std::vector<int> last(g.comp_kind.size(), -1);
  std::set<std::pair<LeafRef, bool>> seen;
  for (std::size_t k = 0; k < play.size(); ++k) {
    const auto& m = play[k];
    if (m.positive != (k % 2 == 1)) return false;
    if (!seen.insert({m.leaf, m.positive}).second) return false;
    auto it = std::find(g.leaves.begin(), g.leaves.end(), m.leaf);
    if (it == g.leaves.end()) return false;
    std::size_t leaf = static_cast<std::size_t>(it - g.leaves.begin());
    if (!g.legal(last, leaf, m.positive)) return false;
    g.play(last, leaf, m.positive);
  }
  return true;
}

Verdict check_aj(const ParaproofStructure& s, const AjOptions& opts) {
  if (!s.cuts.empty()) throw std::invalid_argument("AJ criterion needs a cut-free structure");
  if (auto d = validate_structure(s, Mode::Proof); !d.ok)
    throw std::invalid_argument("AJ criterion needs a proof structure: " + d.rule);
  if (count_leaves(s) > opts.max_leaves)
    throw GuardError("structure has " + std::to_string(count_leaves(s)) + " leaves, cap is " +
                     std::to_string(opts.max_leaves));
  AjGame g(s);
  const std::size_t n = g.leaves.size();
  std::unordered_set<std::string> safe;
  std::vector<std::size_t> trail;  // 2*leaf + positive
  std::function<bool(std::uint64_t, std::vector<int>&)> dfs = [&](std::uint64_t played, std::vector<int>& last) {
    std::string key(reinterpret_cast<const char*>(&played), sizeof played);
    for (int v : last) key.append(reinterpret_cast<const char*>(&v), sizeof v);
    if (safe.count(key)) return true;
    for (std::size_t m = 0; m < n; ++m) {
      if ((played >> (2 * m)) & 1) continue;
      if (!g.legal(last, m, false)) continue;
      std::vector<int> after = last;
      g.play(after, m, false);
      trail.push_back(2 * m);
      std::size_t r = g.partner[m];
      if (((played >> (2 * r + 1)) & 1) || !g.legal(after, r, true)) return false;
      g.play(after, r, true);
      trail.push_back(2 * r + 1);
      if (!dfs(played | (std::uint64_t{1} << (2 * m)) | (std::uint64_t{1} << (2 * r + 1)), after)) return false;
      trail.pop_back();
      trail.pop_back();
    }
    safe.insert(key);
    return true;
  };
  std::vector<int> last(g.comp_kind.size(), -1);
  if (dfs(0, last)) return {};
  PlayWitness w;
  for (std::size_t k = 0; k < trail.size(); ++k) w.play.push_back({g.leaves[trail[k] / 2], (trail[k] & 1) == 1});
  return {false, w};
}

}  // namespace locus::mll
