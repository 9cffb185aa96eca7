#include "locus/mll/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace locus::mll {

namespace {

std::set<Occurrence> nodes_of(const PartialFormulaTree& t) {
  std::set<Occurrence> out;
  for (const auto& u : t.leaves)
    for (std::size_t k = 0; k <= u.size(); ++k) out.insert(u.substr(0, k));
  return out;
}

void preorder(const PartialFormulaTree& t, std::size_t tree, const Occurrence& at, std::vector<ParNode>& out) {
  if (t.leaves.count(at)) return;
  if (subformula_at(t.formula, at)->kind() == Connective::Par) out.push_back({tree, at});
  preorder(t, tree, at + "1", out);
  preorder(t, tree, at + "2", out);
}

struct Layout {
  std::vector<std::string> labels;
  std::map<std::pair<std::size_t, Occurrence>, std::size_t> node;
  std::vector<std::size_t> class_vertex;
};

Layout layout(const ParaproofStructure& s) {
  Layout l;
  for (std::size_t i = 0; i < s.trees.size(); ++i)
    for (const auto& v : nodes_of(s.trees[i])) {
      l.node[{i, v}] = l.labels.size();
      l.labels.push_back("t" + std::to_string(i) + ":" + occurrence_to_string(v));
    }
  for (std::size_t k = 0; k < s.classes.size(); ++k) {
    l.class_vertex.push_back(l.labels.size());
    l.labels.push_back("class" + std::to_string(k));
  }
  return l;
}

class Dsu {
 public:
  explicit Dsu(std::size_t n) : p_(n) { std::iota(p_.begin(), p_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p_[x] != x) x = p_[x] = p_[p_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> p_;
};

}  // namespace

std::vector<ParNode> par_nodes(const ParaproofStructure& s) {
  std::vector<ParNode> out;
  for (std::size_t i = 0; i < s.trees.size(); ++i) preorder(s.trees[i], i, "", out);
  return out;
}

Switching Switching::from_mask(std::uint64_t mask, std::size_t n) {
  Switching sw;
  for (std::size_t k = 0; k < n; ++k) sw.sides.push_back((mask >> k) & 1 ? Side::R : Side::L);
  return sw;
}

std::size_t Graph::find(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? npos : static_cast<std::size_t>(it - labels.begin());
}

Graph correction_graph(const ParaproofStructure& s, const Switching& sw) {
  Layout l = layout(s);
  auto pars = par_nodes(s);
  std::map<std::pair<std::size_t, Occurrence>, Side> side;
  for (std::size_t k = 0; k < pars.size(); ++k) side[{pars[k].tree, pars[k].occ}] = sw.sides.at(k);
  Graph g;
  g.labels = l.labels;
  for (const auto& [key, id] : l.node) {
    const auto& [tree, v] = key;
    if (v.empty()) continue;
    Occurrence parent = v.substr(0, v.size() - 1);
    auto it = side.find({tree, parent});
    if (it != side.end()) {
      bool first = v.back() == '1';
      if ((it->second == Side::L) != first) continue;
    }
    g.edges.push_back({l.node.at({tree, parent}), id});
  }
  for (std::size_t k = 0; k < s.classes.size(); ++k)
    for (const auto& leaf : s.classes[k]) g.edges.push_back({l.node.at({leaf.tree, leaf.occ}), l.class_vertex[k]});
  for (const auto& [a, b] : s.cuts) g.edges.push_back({l.node.at({a, ""}), l.node.at({b, ""})});
  return g;
}

Shape analyze(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].first].push_back({g.edges[e].second, e});
    adj[g.edges[e].second].push_back({g.edges[e].first, e});
  }
  Shape out;
  std::vector<int> comp(n, -1);
  std::vector<std::size_t> parent(n, npos), parent_edge(n, npos);
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    int c = static_cast<int>(out.components++);
    std::vector<std::size_t> stack{root};
    comp[root] = c;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (const auto& [w, e] : adj[v]) {
        if (e == parent_edge[v]) continue;
        if (comp[w] < 0) {
          comp[w] = c;
          parent[w] = v;
          parent_edge[w] = e;
          stack.push_back(w);
        } else if (out.cycle.empty()) {
          // Close the cycle through the spanning tree: v..lca..w.
          std::vector<std::size_t> up_v{v}, up_w{w};
          for (std::size_t x = v; parent[x] != npos; x = parent[x]) up_v.push_back(parent[x]);
          for (std::size_t x = w; parent[x] != npos; x = parent[x]) up_w.push_back(parent[x]);
          while (up_v.size() > 1 && up_w.size() > 1 && up_v[up_v.size() - 2] == up_w[up_w.size() - 2]) {
            up_v.pop_back();
            up_w.pop_back();
          }
          out.cycle = up_v;
          for (std::size_t k = up_w.size() - 1; k-- > 0;) out.cycle.push_back(up_w[k]);
          if (out.cycle.size() == 1) out.cycle.push_back(w);
        }
      }
    }
  }
  out.coloring.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.coloring[v] = comp[v] == 0 ? 0 : 1;
  return out;
}

std::vector<std::size_t> tree_path(const Graph& g, std::size_t from, std::size_t to) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::size_t> parent(n, npos);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> queue{from};
  seen[from] = true;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (std::size_t w : adj[queue[h]])
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = queue[h];
        queue.push_back(w);
      }
  if (!seen[to]) return {};
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

SwitchedGraph::SwitchedGraph(const ParaproofStructure& s) {
  Layout l = layout(s);
  auto pars = par_nodes(s);
  std::map<std::pair<std::size_t, Occurrence>, int> index;
  for (std::size_t k = 0; k < pars.size(); ++k) index[{pars[k].tree, pars[k].occ}] = static_cast<int>(k);
  n_ = l.labels.size();
  pars_ = pars.size();
  for (const auto& [key, id] : l.node) {
    const auto& [tree, v] = key;
    if (v.empty()) continue;
    Occurrence parent = v.substr(0, v.size() - 1);
    Edge e{l.node.at({tree, parent}), id};
    if (auto it = index.find({tree, parent}); it != index.end()) {
      e.par = it->second;
      e.keep = v.back() == '1' ? Side::L : Side::R;
    }
    edges_.push_back(e);
  }
  for (std::size_t k = 0; k < s.classes.size(); ++k)
    for (const auto& leaf : s.classes[k]) edges_.push_back({l.node.at({leaf.tree, leaf.occ}), l.class_vertex[k]});
  for (const auto& [a, b] : s.cuts) edges_.push_back({l.node.at({a, ""}), l.node.at({b, ""})});
}

int SwitchedGraph::classify(std::uint64_t mask) const {
  Dsu dsu(n_);
  std::size_t unions = 0;
  for (const auto& e : edges_) {
    if (e.par >= 0) {
      Side s = (mask >> e.par) & 1 ? Side::R : Side::L;
      if (s != e.keep) continue;
    }
    if (!dsu.unite(e.a, e.b)) return 1;
    ++unions;
  }
  return n_ - unions <= 1 ? 0 : 2;
}

}  // namespace locus::mll
