#include "locus/mll/corpus.hpp"

#include <algorithm>
#include <cstdint>

#include "locus/mll/criteria.hpp"

namespace locus::mll {

namespace {

struct Shape {
  Formula formula;
  std::size_t leaves;
};

std::vector<Shape> shapes(std::size_t depth, std::size_t max_leaves) {
  std::vector<Shape> out{{Formula::atom("X"), 1}};
  if (depth == 0) return out;
  auto sub = shapes(depth - 1, max_leaves);
  for (const auto& a : sub)
    for (const auto& b : sub) {
      if (a.leaves + b.leaves > max_leaves) continue;
      out.push_back({Formula::tensor(a.formula, b.formula), a.leaves + b.leaves});
      out.push_back({Formula::par(a.formula, b.formula), a.leaves + b.leaves});
    }
  return out;
}

void atoms(const Formula& f, const Occurrence& u, std::set<Occurrence>& out) {
  if (f.is_leaf()) {
    out.insert(u);
    return;
  }
  atoms(f.left(), u + "1", out);
  atoms(f.right(), u + "2", out);
}

Formula polarize(const Formula& f, const std::vector<bool>& neg, std::size_t& next) {
  if (f.is_leaf()) return neg[next++] ? Formula::dual_atom("X") : Formula::atom("X");
  Formula l = polarize(f.left(), neg, next);
  Formula r = polarize(f.right(), neg, next);
  return f.kind() == Connective::Tensor ? Formula::tensor(l, r) : Formula::par(l, r);
}

void for_each_multiset(const std::vector<PartialFormulaTree>& all, std::size_t max_leaves,
                       const std::function<void(const std::vector<PartialFormulaTree>&)>& fn) {
  std::vector<PartialFormulaTree> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t used) {
    if (!cur.empty()) fn(cur);
    for (std::size_t k = from; k < all.size(); ++k) {
      if (used + all[k].leaves.size() > max_leaves) continue;
      cur.push_back(all[k]);
      rec(k, used + all[k].leaves.size());
      cur.pop_back();
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<PartialFormulaTree> tree_shapes(std::size_t max_depth, std::size_t max_leaves) {
  std::vector<PartialFormulaTree> out;
  for (const auto& s : shapes(max_depth, max_leaves)) {
    PartialFormulaTree t{s.formula, {}};
    atoms(s.formula, "", t.leaves);
    out.push_back(std::move(t));
  }
  return out;
}

std::size_t for_each_small_structure(std::size_t max_depth, std::size_t max_leaves,
                                     const std::function<void(const ParaproofStructure&)>& fn) {
  std::size_t visited = 0;
  for_each_multiset(tree_shapes(max_depth, max_leaves), max_leaves, [&](const auto& trees) {
    ParaproofStructure s;
    s.trees = trees;
    for (auto& p : all_partitions(s.leaves())) {
      s.classes = std::move(p);
      s.canonicalize();
      fn(s);
      ++visited;
    }
  });
  return visited;
}

std::size_t for_each_small_proof_structure(std::size_t max_depth, std::size_t max_leaves,
                                           const std::function<void(const ParaproofStructure&)>& fn) {
  std::size_t visited = 0;
  for_each_multiset(tree_shapes(max_depth, max_leaves), max_leaves, [&](const auto& trees) {
    ParaproofStructure base;
    base.trees = trees;
    const auto leaves = base.leaves();
    const std::size_t n = leaves.size();
    if (n % 2) return;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n / 2) continue;
      std::vector<bool> neg(n);
      for (std::size_t k = 0; k < n; ++k) neg[k] = (mask >> k) & 1;
      // leaves() lists leaves tree by tree in occurrence order, which is the preorder of atoms.
      ParaproofStructure s = base;
      std::size_t next = 0;
      for (auto& t : s.trees) t.formula = polarize(t.formula, neg, next);
      std::vector<LeafRef> pos, negs;
      for (std::size_t k = 0; k < n; ++k) (neg[k] ? negs : pos).push_back(leaves[k]);
      std::vector<std::size_t> perm(pos.size());
      for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
      do {
        s.classes.clear();
        for (std::size_t k = 0; k < pos.size(); ++k) s.classes.push_back({pos[k], negs[perm[k]]});
        s.canonicalize();
        fn(s);
        ++visited;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  });
  return visited;
}

}  // namespace locus::mll
