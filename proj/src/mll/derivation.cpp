#include "locus/mll/derivation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace locus::mll {

DerivationPtr Derivation::axiom(std::vector<Formula> gamma) {
  auto d = std::make_shared<Derivation>();
  d->rule = Rule::DaimonAxiom;
  d->formulas = std::move(gamma);
  return d;
}

DerivationPtr Derivation::par(DerivationPtr p, std::size_t i, std::size_t j) {
  auto d = std::make_shared<Derivation>();
  d->rule = Rule::Par;
  d->premises = {std::move(p)};
  d->i = i;
  d->j = j;
  return d;
}

DerivationPtr Derivation::tensor(DerivationPtr p, std::size_t i, DerivationPtr q, std::size_t j) {
  auto d = std::make_shared<Derivation>();
  d->rule = Rule::Tensor;
  d->premises = {std::move(p), std::move(q)};
  d->i = i;
  d->j = j;
  return d;
}

DerivationPtr Derivation::cut(DerivationPtr p, std::size_t i, DerivationPtr q, std::size_t j) {
  auto d = std::make_shared<Derivation>();
  d->rule = Rule::Cut;
  d->premises = {std::move(p), std::move(q)};
  d->i = i;
  d->j = j;
  return d;
}

DerivationPtr Derivation::mix(DerivationPtr p, DerivationPtr q) {
  auto d = std::make_shared<Derivation>();
  d->rule = Rule::Mix;
  d->premises = {std::move(p), std::move(q)};
  return d;
}

DerivationPtr Derivation::exchange(DerivationPtr p, std::vector<std::size_t> order) {
  auto d = std::make_shared<Derivation>();
  d->rule = Rule::Exchange;
  d->premises = {std::move(p)};
  d->order = std::move(order);
  return d;
}

namespace {

using LeafMap = std::function<LeafRef(const LeafRef&)>;

void absorb(ParaproofStructure& out, const ParaproofStructure& in, const LeafMap& leaf,
            const std::function<std::size_t(std::size_t)>& tree) {
  for (const auto& c : in.classes) {
    LeafClass mapped;
    for (const auto& l : c) mapped.push_back(leaf(l));
    out.classes.push_back(std::move(mapped));
  }
  for (const auto& [a, b] : in.cuts) out.cuts.push_back({tree(a), tree(b)});
}

void require_open(const ParaproofStructure& s, std::size_t k, const char* rule) {
  if (k >= s.trees.size()) throw DerivationError(std::string(rule) + ": tree index out of range");
  if (s.is_cut(k)) throw DerivationError(std::string(rule) + ": tree is already cut");
}

std::set<Occurrence> prefixed(const std::set<Occurrence>& us, char c) {
  std::set<Occurrence> out;
  for (const auto& u : us) out.insert(std::string(1, c) + u);
  return out;
}

}  // namespace

ParaproofStructure build_from_derivation(const Derivation& d) {
  using R = Derivation::Rule;
  ParaproofStructure out;
  switch (d.rule) {
    case R::DaimonAxiom: {
      if (d.formulas.empty()) throw DerivationError("axiom: empty sequent");
      LeafClass c;
      for (std::size_t k = 0; k < d.formulas.size(); ++k) {
        out.trees.push_back({d.formulas[k], {Occurrence{}}});
        c.push_back({k, {}});
      }
      out.classes.push_back(std::move(c));
      break;
    }
    case R::Par: {
      if (d.premises.size() != 1) throw DerivationError("par: one premise expected");
      ParaproofStructure p = build_from_derivation(*d.premises[0]);
      require_open(p, d.i, "par");
      require_open(p, d.j, "par");
      if (d.i == d.j) throw DerivationError("par: same tree twice");
      const std::size_t n = p.trees.size();
      const std::size_t fresh = n - 2;
      std::vector<std::size_t> index(n, npos);
      for (std::size_t k = 0, next = 0; k < n; ++k)
        if (k != d.i && k != d.j) index[k] = next++;
      PartialFormulaTree t{Formula::par(p.trees[d.i].formula, p.trees[d.j].formula), prefixed(p.trees[d.i].leaves, '1')};
      for (const auto& w : prefixed(p.trees[d.j].leaves, '2')) t.leaves.insert(w);
      out.trees = par_order(p.trees, d.i, d.j, t);
      absorb(
          out, p,
          [&](const LeafRef& l) -> LeafRef {
            if (l.tree == d.i) return {fresh, "1" + l.occ};
            if (l.tree == d.j) return {fresh, "2" + l.occ};
            return {index[l.tree], l.occ};
          },
          [&](std::size_t k) { return index[k]; });
      break;
    }
    case R::Tensor:
    case R::Cut: {
      if (d.premises.size() != 2) throw DerivationError("binary rule: two premises expected");
      ParaproofStructure p = build_from_derivation(*d.premises[0]);
      ParaproofStructure q = build_from_derivation(*d.premises[1]);
      const char* name = d.rule == R::Tensor ? "tensor" : "cut";
      require_open(p, d.i, name);
      require_open(q, d.j, name);
      const std::size_t np = p.trees.size(), nq = q.trees.size();
      if (d.rule == R::Cut) {
        if (!(p.trees[d.i].formula == dual(q.trees[d.j].formula))) throw DerivationError("cut: formulas not dual");
        out.trees = concat_order(p.trees, q.trees);
        absorb(out, p, [](const LeafRef& l) { return l; }, [](std::size_t k) { return k; });
        absorb(
            out, q, [&](const LeafRef& l) -> LeafRef { return {l.tree + np, l.occ}; },
            [&](std::size_t k) { return k + np; });
        out.cuts.push_back({d.i, np + d.j});
        break;
      }
      const std::size_t fresh = np + nq - 2;
      std::vector<std::size_t> pi(np, npos), qi(nq, npos);
      std::size_t next = 0;
      for (std::size_t k = 0; k < np; ++k)
        if (k != d.i) pi[k] = next++;
      for (std::size_t k = 0; k < nq; ++k)
        if (k != d.j) qi[k] = next++;
      PartialFormulaTree t{Formula::tensor(p.trees[d.i].formula, q.trees[d.j].formula), prefixed(p.trees[d.i].leaves, '1')};
      for (const auto& w : prefixed(q.trees[d.j].leaves, '2')) t.leaves.insert(w);
      out.trees = tensor_order(p.trees, d.i, q.trees, d.j, t);
      absorb(
          out, p,
          [&](const LeafRef& l) -> LeafRef {
            return l.tree == d.i ? LeafRef{fresh, "1" + l.occ} : LeafRef{pi[l.tree], l.occ};
          },
          [&](std::size_t k) { return pi[k]; });
      absorb(
          out, q,
          [&](const LeafRef& l) -> LeafRef {
            return l.tree == d.j ? LeafRef{fresh, "2" + l.occ} : LeafRef{qi[l.tree], l.occ};
          },
          [&](std::size_t k) { return qi[k]; });
      break;
    }
    case R::Mix: {
      if (d.premises.size() != 2) throw DerivationError("mix: two premises expected");
      ParaproofStructure p = build_from_derivation(*d.premises[0]);
      ParaproofStructure q = build_from_derivation(*d.premises[1]);
      const std::size_t np = p.trees.size();
      out.trees = concat_order(p.trees, q.trees);
      absorb(out, p, [](const LeafRef& l) { return l; }, [](std::size_t k) { return k; });
      absorb(
          out, q, [&](const LeafRef& l) -> LeafRef { return {l.tree + np, l.occ}; },
          [&](std::size_t k) { return k + np; });
      break;
    }
    case R::Exchange: {
      if (d.premises.size() != 1) throw DerivationError("exchange: one premise expected");
      ParaproofStructure p = build_from_derivation(*d.premises[0]);
      const std::size_t n = p.trees.size();
      if (d.order.size() != n) throw DerivationError("exchange: permutation size mismatch");
      std::vector<std::size_t> inverse(n, npos);
      for (std::size_t k = 0; k < n; ++k) {
        if (d.order[k] >= n || inverse[d.order[k]] != npos) throw DerivationError("exchange: not a permutation");
        inverse[d.order[k]] = k;
        out.trees.push_back(p.trees[d.order[k]]);
      }
      absorb(
          out, p, [&](const LeafRef& l) -> LeafRef { return {inverse[l.tree], l.occ}; },
          [&](std::size_t k) { return inverse[k]; });
      break;
    }
  }
  out.canonicalize();
  return out;
}

std::size_t count_rules(const Derivation& d, Derivation::Rule rule) {
  std::size_t n = d.rule == rule ? 1 : 0;
  for (const auto& p : d.premises) n += count_rules(*p, rule);
  return n;
}

bool uses_only_axiom_pairs(const Derivation& d) {
  if (d.rule == Derivation::Rule::DaimonAxiom)
    return d.formulas.size() == 2 && d.formulas[0] == dual(d.formulas[1]);
  for (const auto& p : d.premises)
    if (!uses_only_axiom_pairs(*p)) return false;
  return true;
}

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const GeneratorOptions& o) : rng_(seed), o_(o) {}

  struct Built {
    DerivationPtr d;
    std::vector<Formula> trees;
    std::vector<bool> cut;
    std::size_t leaves = 0;

    std::vector<std::size_t> open() const {
      std::vector<std::size_t> out;
      for (std::size_t k = 0; k < trees.size(); ++k)
        if (!cut[k]) out.push_back(k);
      return out;
    }
  };

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool coin(double p) { return static_cast<double>(rng_() % 1000000) < p * 1000000.0; }

  Formula atom() {
    static const char* names[] = {"X", "Y", "Z"};
    Formula a = Formula::atom(names[below(3)]);
    return coin(0.5) ? a : dual(a);
  }

  Formula formula(int depth) {
    if (depth == 0 || coin(0.5)) return atom();
    Formula l = formula(depth - 1), r = formula(depth - 1);
    return coin(0.5) ? Formula::tensor(l, r) : Formula::par(l, r);
  }

  Built axiom(std::vector<Formula> gamma) {
    Built b;
    b.d = Derivation::axiom(gamma);
    b.trees = gamma;
    b.cut.assign(gamma.size(), false);
    b.leaves = gamma.size();
    return b;
  }

  Built leaf(std::size_t budget) {
    if (o_.mode == Mode::Proof) {
      Formula c = coin(0.15) ? formula(1) : atom();
      return coin(0.5) ? axiom({c, dual(c)}) : axiom({dual(c), c});
    }
    std::size_t k = 1 + below(std::min<std::size_t>(3, std::max<std::size_t>(budget, 1)));
    std::vector<Formula> gamma;
    for (std::size_t n = 0; n < k; ++n) gamma.push_back(coin(0.15) ? formula(1) : atom());
    return axiom(gamma);
  }

  Built par(Built b, std::size_t i, std::size_t j) {
    Built out;
    out.d = Derivation::par(b.d, i, j);
    out.trees = par_order(b.trees, i, j, Formula::par(b.trees[i], b.trees[j]));
    out.cut = par_order(b.cut, i, j, false);
    out.leaves = b.leaves;
    return out;
  }

  Built tensor(const Built& p, std::size_t i, const Built& q, std::size_t j) {
    Built out;
    out.d = Derivation::tensor(p.d, i, q.d, j);
    out.trees = tensor_order(p.trees, i, q.trees, j, Formula::tensor(p.trees[i], q.trees[j]));
    out.cut = tensor_order(p.cut, i, q.cut, j, false);
    out.leaves = p.leaves + q.leaves;
    return out;
  }

  Built cut(const Built& p, std::size_t i, const Built& q, std::size_t j) {
    Built out;
    out.d = Derivation::cut(p.d, i, q.d, j);
    out.trees = concat_order(p.trees, q.trees);
    out.cut = concat_order(p.cut, q.cut);
    out.cut[i] = true;
    out.cut[p.trees.size() + j] = true;
    out.leaves = p.leaves + q.leaves;
    return out;
  }

  std::pair<std::size_t, std::size_t> split(std::size_t budget) {
    std::size_t b1 = 1 + below(std::max<std::size_t>(budget, 2) - 1);
    return {b1, std::max<std::size_t>(budget, 2) - b1};
  }

  Built gen(std::size_t budget) {
    if (budget <= 2 || coin(0.25)) return leaf(budget);
    std::size_t r = below(100);
    if (r < 35) {
      Built b = gen(budget);
      auto open = b.open();
      if (open.size() < 2) return b;
      std::size_t a = below(open.size()), c = below(open.size() - 1);
      if (c >= a) ++c;
      return par(std::move(b), open[a], open[c]);
    }
    if (r < 75 || !o_.allow_cuts) {
      auto [b1, b2] = split(budget);
      Built p = gen(b1), q = gen(b2);
      auto po = p.open(), qo = q.open();
      return tensor(p, po[below(po.size())], q, qo[below(qo.size())]);
    }
    auto [b1, b2] = split(budget);
    Built p = gen(b1);
    auto po = p.open();
    std::size_t i = po[below(po.size())];
    auto [q, j] = gen_with(dual(p.trees[i]), b2);
    if (po.size() + q.open().size() <= 2) return p;
    return cut(p, i, q, j);
  }

  std::pair<Built, std::size_t> gen_with(const Formula& f, std::size_t budget) {
    if (f.is_leaf() || budget <= 2 || coin(0.35)) {
      if (o_.mode == Mode::Proof) {
        if (coin(0.5)) return {axiom({f, dual(f)}), 0};
        return {axiom({dual(f), f}), 1};
      }
      std::vector<Formula> gamma{f};
      std::size_t extras = below(std::min<std::size_t>(3, budget));
      for (std::size_t k = 0; k < extras; ++k) gamma.push_back(atom());
      std::size_t pos = below(gamma.size());
      std::swap(gamma[0], gamma[pos]);
      return {axiom(gamma), pos};
    }
    auto [b1, b2] = split(budget);
    auto [p, i] = gen_with(f.left(), b1);
    auto [q, j] = gen_with(f.right(), b2);
    if (f.kind() == Connective::Tensor) {
      Built t = tensor(p, i, q, j);
      return {t, t.trees.size() - 1};
    }
    auto po = p.open(), qo = q.open();
    std::erase(po, i);
    std::erase(qo, j);
    if (po.empty() || qo.empty()) {
      Built a = axiom({f.left(), f.right()});
      Built t = par(a, 0, 1);
      return {t, t.trees.size() - 1};
    }
    std::size_t g1 = po[below(po.size())], g2 = qo[below(qo.size())];
    // Track where the two components land after the tensor on g1, g2.
    std::vector<std::size_t> pid(p.trees.size()), qid(q.trees.size());
    std::iota(pid.begin(), pid.end(), 0);
    std::iota(qid.begin(), qid.end(), p.trees.size());
    auto ids = tensor_order(pid, g1, qid, g2, npos);
    Built t = tensor(p, g1, q, g2);
    std::size_t ti = std::find(ids.begin(), ids.end(), i) - ids.begin();
    std::size_t tj = std::find(ids.begin(), ids.end(), p.trees.size() + j) - ids.begin();
    Built r = par(t, ti, tj);
    return {r, r.trees.size() - 1};
  }

  void perturb(ParaproofStructure& s) {
    auto& cs = s.classes;
    if (o_.mode == Mode::Proof) {
      std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> swaps;
      for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a + 1; b < cs.size(); ++b)
          for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t y = 0; y < 2; ++y)
              if (s.leaf_formula(cs[a][x]) == s.leaf_formula(cs[b][y])) swaps.emplace_back(a, b, x, y);
      if (swaps.empty()) return;
      auto [a, b, x, y] = swaps[below(swaps.size())];
      std::swap(cs[a][1 - x], cs[b][1 - y]);
      s.canonicalize();
      return;
    }
    std::size_t kind = below(3);
    if (kind == 0 && cs.size() >= 2) {
      std::size_t a = below(cs.size()), b = below(cs.size() - 1);
      if (b >= a) ++b;
      cs[a].insert(cs[a].end(), cs[b].begin(), cs[b].end());
      cs.erase(cs.begin() + static_cast<long>(b));
    } else {
      std::vector<std::size_t> big;
      for (std::size_t k = 0; k < cs.size(); ++k)
        if (cs[k].size() >= 2) big.push_back(k);
      if (big.empty()) return;
      std::size_t a = big[below(big.size())];
      std::size_t pick = below(cs[a].size());
      LeafRef l = cs[a][pick];
      cs[a].erase(cs[a].begin() + static_cast<long>(pick));
      if (kind == 1 || cs.size() == 1) {
        cs.push_back({l});
      } else {
        std::size_t b = below(cs.size() - 1);
        if (b >= a) ++b;
        cs[b].push_back(l);
      }
    }
    s.canonicalize();
  }

  const GeneratorOptions& options() const { return o_; }

 private:
  std::mt19937_64 rng_;
  GeneratorOptions o_;
};

}  // namespace

GeneratedStructure random_structure_ex(std::uint64_t seed, std::size_t budget, const GeneratorOptions& opts) {
  Generator g(seed, opts);
  GeneratedStructure out;
  for (int attempt = 0;; ++attempt) {
    auto b = attempt < 200 ? g.gen(budget) : g.leaf(1);
    ParaproofStructure s = build_from_derivation(*b.d);
    if (attempt < 200 && (count_leaves(s) > opts.max_leaves || count_par_nodes(s) > opts.max_pars)) continue;
    out.structure = std::move(s);
    out.derivation = b.d;
    break;
  }
  if (opts.perturb_probability > 0 && g.coin(opts.perturb_probability)) {
    g.perturb(out.structure);
    out.perturbed = true;
  }
  return out;
}

ParaproofStructure random_structure(std::uint64_t seed, std::size_t budget, Mode mode, bool allow_cuts,
                                    double perturb_probability) {
  GeneratorOptions o;
  o.mode = mode;
  o.allow_cuts = allow_cuts;
  o.perturb_probability = perturb_probability;
  o.max_leaves = std::max<std::size_t>(budget, 2);
  return random_structure_ex(seed, budget, o).structure;
}

}  // namespace locus::mll
