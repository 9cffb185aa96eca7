#include "locus/ludics/behaviour.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "locus/ludics/engine.hpp"
#include "locus/mll/criteria.hpp"

namespace locus::ludics {

std::string to_string(const Universe& u) {
  return "alphabet " + to_string(u.alphabet) + "; depth " + std::to_string(u.depth);
}

// ---------------------------------------------------------------- enumeration

namespace {

struct PosItem {
  PositiveDesign d;
  std::set<Address> used;
};

struct NegItem {
  NegativeDesign d;
  std::set<Address> used;
};

bool meets(const std::set<Address>& a, const std::set<Address>& b) {
  for (const auto& x : a)
    if (b.count(x)) return true;
  return false;
}

class Enumerator {
 public:
  explicit Enumerator(const Universe& u) : u_(u) {}

  const std::vector<PosItem>& pos(const std::set<Address>& ctx, std::size_t d) {
    auto key = std::make_pair(ctx, d);
    if (auto it = pos_memo_.find(key); it != pos_memo_.end()) return it->second;
    std::vector<PosItem> out;
    out.push_back({PositiveDesign::daimon(), {}});
    if (d > 0) {
      for (const auto& xi : ctx) {
        std::set<Address> rest = ctx;
        rest.erase(xi);
        for (const auto& r : u_.alphabet.at(xi.size())) {
          std::vector<const std::vector<NegItem>*> lists;
          for (auto i : r) lists.push_back(&neg(child(xi, i), rest, d - 1));
          std::vector<NegativeDesign> kids;
          std::set<Address> used{xi};
          product(lists, 0, kids, used, [&] {
            out.push_back({PositiveDesign::proper(xi, r, kids), used});
            guard(out.size());
          });
        }
      }
    }
    return pos_memo_[key] = std::move(out);
  }

  const std::vector<NegItem>& neg(const Address& zeta, const std::set<Address>& ctx, std::size_t d) {
    auto key = std::make_tuple(zeta, ctx, d);
    if (auto it = neg_memo_.find(key); it != neg_memo_.end()) return it->second;
    const auto& rams = u_.alphabet.at(zeta.size());
    // For each ramification: its options, Ω (absent) first.
    std::vector<std::vector<const PosItem*>> options;
    for (const auto& j : rams) {
      std::set<Address> inner = ctx;
      for (const auto& a : star(zeta, j)) inner.insert(a);
      std::vector<const PosItem*> opts{nullptr};
      for (const auto& it : pos(inner, d)) opts.push_back(&it);
      options.push_back(std::move(opts));
    }
    std::vector<NegItem> out;
    std::vector<std::size_t> pick(rams.size(), 0);
    for (;;) {
      NegItem n;
      n.d.focus = zeta;
      for (std::size_t k = 0; k < rams.size(); ++k) {
        const PosItem* p = options[k][pick[k]];
        if (!p) continue;
        n.d.branches.emplace(rams[k], p->d);
        for (const auto& a : p->used)
          if (ctx.count(a)) n.used.insert(a);
      }
      out.push_back(std::move(n));
      guard(out.size());
      std::size_t k = 0;
      while (k < rams.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
      if (k == rams.size()) break;
    }
    return neg_memo_[key] = std::move(out);
  }

 private:
  template <class F>
  void product(const std::vector<const std::vector<NegItem>*>& lists, std::size_t k, std::vector<NegativeDesign>& kids,
               std::set<Address>& used, F&& emit) {
    if (k == lists.size()) {
      emit();
      return;
    }
    for (const auto& it : *lists[k]) {
      if (meets(it.used, used)) continue;
      kids.push_back(it.d);
      std::set<Address> saved = used;
      used.insert(it.used.begin(), it.used.end());
      product(lists, k + 1, kids, used, emit);
      used = std::move(saved);
      kids.pop_back();
    }
  }

  void guard(std::size_t n) const {
    if (n > u_.cap)
      throw mll::GuardError("universe enumeration exceeds the cap of " + std::to_string(u_.cap) + " designs (" +
                            to_string(u_) + ")");
  }

  const Universe& u_;
  std::map<std::pair<std::set<Address>, std::size_t>, std::vector<PosItem>> pos_memo_;
  std::map<std::tuple<Address, std::set<Address>, std::size_t>, std::vector<NegItem>> neg_memo_;
};

}  // namespace

std::vector<PositiveDesign> enumerate_positive(const Universe& u) {
  Enumerator e(u);
  std::vector<PositiveDesign> out;
  for (const auto& it : e.pos({Address{}}, u.depth)) out.push_back(it.d);
  return out;
}

std::vector<NegativeDesign> enumerate_negative(const Universe& u) {
  Enumerator e(u);
  std::vector<NegativeDesign> out;
  for (const auto& it : e.neg(Address{}, {}, u.depth)) out.push_back(it.d);
  return out;
}

// ---------------------------------------------------------------- bitsets

Bits Bits::all(std::size_t n) {
  Bits b(n);
  for (auto& w : b.w_) w = ~std::uint64_t{0};
  if (n % 64) b.w_.back() = (std::uint64_t{1} << (n % 64)) - 1;
  return b;
}

std::size_t Bits::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bits::subset_of(const Bits& o) const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & ~o.w_[k]) return false;
  return true;
}

Bits& Bits::operator&=(const Bits& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
  return *this;
}

Bits& Bits::operator|=(const Bits& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  return *this;
}

std::vector<std::size_t> Bits::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------- spaces

std::shared_ptr<const Space> Space::make(Universe u, Schedule s) {
  auto sp = std::make_shared<Space>();
  sp->u_ = std::move(u);
  sp->pos_ = enumerate_positive(sp->u_);
  sp->neg_ = enumerate_negative(sp->u_);
  for (std::size_t k = 0; k < sp->pos_.size(); ++k) sp->pos_index_.emplace(sp->pos_[k], k);
  for (std::size_t k = 0; k < sp->neg_.size(); ++k) sp->neg_index_.emplace(sp->neg_[k], k);
  const auto np = static_cast<long>(sp->pos_.size());
  sp->rows_.assign(sp->pos_.size(), Bits(sp->neg_.size()));
  auto fill = [&](long p) {
    Bits& row = sp->rows_[static_cast<std::size_t>(p)];
    for (std::size_t n = 0; n < sp->neg_.size(); ++n)
      if (ludics::orthogonal(sp->pos_[static_cast<std::size_t>(p)], sp->neg_[n])) row.set(n);
  };
  if (s == Schedule::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long p = 0; p < np; ++p) fill(p);
  } else {
    for (long p = 0; p < np; ++p) fill(p);
  }
  return sp;
}

std::optional<std::size_t> Space::index_of(const PositiveDesign& d) const {
  auto it = pos_index_.find(canonical(d));
  if (it == pos_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Space::index_of(const NegativeDesign& d) const {
  auto it = neg_index_.find(canonical(d));
  if (it == neg_index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- orthogonals

namespace {

Bits orth_bits(const Space& s, bool positive, const Bits& a) {
  if (positive) {
    Bits out = Bits::all(s.negatives().size());
    for (auto p : a.indices()) out &= s.row(p);
    return out;
  }
  Bits out(s.positives().size());
  for (std::size_t p = 0; p < s.positives().size(); ++p)
    if (a.subset_of(s.row(p))) out.set(p);
  return out;
}

void same_space(const Behaviour& g, const Behaviour& h) {
  if (g.space != h.space) throw std::invalid_argument("behaviours live in different universes");
  if (g.positive != h.positive) throw std::invalid_argument("behaviours have different polarities");
}

}  // namespace

bool Behaviour::contains(const Design& d) const {
  if (positive != std::holds_alternative<PositiveDesign>(d)) return false;
  auto k = positive ? space->index_of(std::get<PositiveDesign>(d)) : space->index_of(std::get<NegativeDesign>(d));
  return k && members.test(*k);
}

std::vector<Design> Behaviour::designs() const {
  std::vector<Design> out;
  for (auto k : members.indices()) {
    if (positive) out.emplace_back(space->positives()[k]);
    else out.emplace_back(space->negatives()[k]);
  }
  return out;
}

Bits index_set(const Space& s, bool positive, const std::vector<Design>& a) {
  Bits out(positive ? s.positives().size() : s.negatives().size());
  for (const auto& d : a) {
    if (positive != std::holds_alternative<PositiveDesign>(d))
      throw std::invalid_argument("design " + to_string(d) + " has the wrong polarity");
    auto k = positive ? s.index_of(std::get<PositiveDesign>(d)) : s.index_of(std::get<NegativeDesign>(d));
    if (!k) throw std::invalid_argument("design " + to_string(d) + " lies outside the universe (" + to_string(s.universe()) + ")");
    out.set(*k);
  }
  return out;
}

Behaviour orthogonal_set(const std::shared_ptr<const Space>& s, bool positive, const std::vector<Design>& a) {
  return Behaviour{s, !positive, orth_bits(*s, positive, index_set(*s, positive, a)), a};
}

Behaviour orthogonal(const Behaviour& g) {
  return Behaviour{g.space, !g.positive, orth_bits(*g.space, g.positive, g.members), g.designs()};
}

Behaviour biorthogonal(const std::shared_ptr<const Space>& s, bool positive, const std::vector<Design>& a) {
  Bits perp = orth_bits(*s, positive, index_set(*s, positive, a));
  return Behaviour{s, positive, orth_bits(*s, !positive, perp), a};
}

bool is_closed(const Behaviour& g) {
  return orth_bits(*g.space, !g.positive, orth_bits(*g.space, g.positive, g.members)) == g.members;
}

Bits orthogonal_reference(const Space& s, bool positive, const Bits& a) {
  const auto& P = s.positives();
  const auto& N = s.negatives();
  Bits out(positive ? N.size() : P.size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    bool all = true;
    for (auto y : a.indices()) {
      bool o = positive ? ludics::orthogonal(P[y], N[x]) : ludics::orthogonal(P[x], N[y]);
      if (!o) {
        all = false;
        break;
      }
    }
    if (all) out.set(x);
  }
  return out;
}

// ---------------------------------------------------------------- incarnation

Design incarnation(const Design& d, const Behaviour& g) {
  if (!g.contains(d)) throw std::invalid_argument("design " + to_string(d) + " is not a member of the behaviour");
  const Space& s = *g.space;
  std::set<Chronicle> cs;
  Bits perp = orth_bits(s, g.positive, g.members);
  for (auto k : perp.indices()) {
    if (g.positive) {
      auto t = token_run(std::get<PositiveDesign>(d), s.negatives()[k]);
      auto part = to_chronicles(t.pullback_left);
      cs.insert(part.begin(), part.end());
    } else {
      auto t = token_run(s.positives()[k], std::get<NegativeDesign>(d));
      auto part = to_chronicles(t.pullback_right);
      cs.insert(part.begin(), part.end());
    }
  }
  if (g.positive) return from_chronicles(cs, Base{std::nullopt, {Address{}}});
  if (cs.empty()) return skunk({});
  return from_chronicles(cs, Base{Address{}, {}});
}

namespace {

std::vector<PositiveDesign> subs(const PositiveDesign& d, std::size_t cap);

std::vector<NegativeDesign> subs(const NegativeDesign& d, std::size_t cap) {
  std::vector<NegativeDesign> out{NegativeDesign{d.focus, {}}};
  for (const auto& [j, b] : d.branches) {
    auto opts = subs(b, cap);
    std::vector<NegativeDesign> next;
    for (const auto& partial : out) {
      next.push_back(partial);
      for (const auto& o : opts) {
        if (o.is_omega()) continue;
        NegativeDesign n = partial;
        n.branches.emplace(j, o);
        next.push_back(std::move(n));
        if (next.size() > cap) throw mll::GuardError("too many sub-designs");
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<PositiveDesign> subs(const PositiveDesign& d, std::size_t cap) {
  if (!d.is_proper()) return {d};
  std::vector<std::vector<NegativeDesign>> kids;
  for (const auto& c : d.children) kids.push_back(subs(c, cap));
  std::vector<PositiveDesign> out{PositiveDesign::omega()};
  std::vector<std::size_t> pick(kids.size(), 0);
  for (;;) {
    std::vector<NegativeDesign> ch;
    for (std::size_t k = 0; k < kids.size(); ++k) ch.push_back(kids[k][pick[k]]);
    out.push_back(PositiveDesign::proper(d.focus, d.ram, std::move(ch)));
    if (out.size() > cap) throw mll::GuardError("too many sub-designs");
    std::size_t k = 0;
    while (k < kids.size() && ++pick[k] == kids[k].size()) pick[k++] = 0;
    if (k == kids.size()) break;
  }
  return out;
}

}  // namespace

Design least_member_below(const Design& d, const Behaviour& g, std::size_t cap) {
  std::vector<Design> below;
  if (g.positive) {
    for (auto& x : subs(std::get<PositiveDesign>(d), cap))
      if (!x.is_omega() && g.contains(x)) below.emplace_back(std::move(x));
  } else {
    for (auto& x : subs(std::get<NegativeDesign>(d), cap))
      if (g.contains(x)) below.emplace_back(std::move(x));
  }
  for (const auto& m : below)
    if (std::all_of(below.begin(), below.end(), [&](const Design& o) { return compare(m, o, Order::Stable); }))
      return m;
  throw std::logic_error("no least member below " + to_string(d));
}

Bits incarnated(const Behaviour& g) {
  Bits out(g.members.size());
  auto all = g.designs();
  auto idx = g.members.indices();
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (incarnation(all[k], g) == all[k]) out.set(idx[k]);
  return out;
}

// ---------------------------------------------------------------- directories and additives

std::set<Ramification> directory(const Behaviour& g) {
  const Universe& u = g.space->universe();
  std::set<Ramification> out;
  if (g.positive) {
    for (const auto& r : u.alphabet.at(0))
      if (g.contains(ram({}, r, u.alphabet))) out.insert(r);
    return out;
  }
  auto inc = std::get<NegativeDesign>(incarnation(dai_minus({}, u.alphabet), g));
  for (const auto& [j, b] : inc.branches) out.insert(j);
  return out;
}

bool disjoint(const Behaviour& g, const Behaviour& h) {
  same_space(g, h);
  auto a = directory(g);
  auto b = directory(h);
  return std::none_of(a.begin(), a.end(), [&](const Ramification& r) { return b.count(r) > 0; });
}

std::string to_string(Additive op) {
  switch (op) {
    case Additive::With:
      return "with";
    case Additive::Plus:
      return "plus";
    case Additive::Intersect:
      return "intersect";
    case Additive::Union:
      return "union";
  }
  return "?";
}

Bits set_union(const Behaviour& g, const Behaviour& h) {
  same_space(g, h);
  Bits u = g.members;
  u |= h.members;
  return u;
}

Behaviour additive(const Behaviour& g, const Behaviour& h, Additive op) {
  same_space(g, h);
  if (op == Additive::With && g.positive) throw std::invalid_argument("& applies to negative behaviours");
  if (op == Additive::Plus && !g.positive) throw std::invalid_argument("plus applies to positive behaviours");
  if ((op == Additive::With || op == Additive::Plus) && !disjoint(g, h))
    throw std::invalid_argument("behaviours are not disjoint: their directories meet");
  std::vector<Design> gens = g.designs();
  for (auto& d : h.designs()) gens.push_back(std::move(d));
  Behaviour out{g.space, g.positive, g.members, std::move(gens)};
  if (op == Additive::With || op == Additive::Intersect) {
    out.members &= h.members;
  } else {
    Bits u = set_union(g, h);
    out.members = orth_bits(*g.space, !g.positive, orth_bits(*g.space, g.positive, u));
  }
  return out;
}

NegativeDesign join(const NegativeDesign& a, const NegativeDesign& b) {
  if (a.focus != b.focus) throw std::invalid_argument("joined designs have different foci");
  NegativeDesign out = a;
  for (const auto& [j, p] : b.branches)
    if (!out.branches.emplace(j, p).second)
      throw std::invalid_argument("joined designs share the ramification " + ramification_to_string(j));
  return out;
}

NegativeDesign restrict(const NegativeDesign& d, const std::set<Ramification>& dir) {
  NegativeDesign out{d.focus, {}};
  for (const auto& [j, p] : d.branches)
    if (dir.count(j)) out.branches.emplace(j, p);
  return out;
}

// ---------------------------------------------------------------- delocation

namespace {

unsigned rename(const Delocation& t, std::size_t position, unsigned bias) {
  if (t.levels.empty()) return bias;
  const auto& m = t.levels[std::min(position, t.levels.size() - 1)];
  auto it = m.find(bias);
  return it == m.end() ? bias : it->second;
}

}  // namespace

Address delocate(const Address& a, const Delocation& t) {
  Address out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(rename(t, k, a[k]));
  return out;
}

Ramification delocate(const Ramification& r, std::size_t address_length, const Delocation& t) {
  std::vector<unsigned> out;
  for (auto i : r) out.push_back(rename(t, address_length, i));
  return make_ramification(std::move(out));
}

PositiveDesign delocate(const PositiveDesign& d, const Delocation& t) {
  if (!d.is_proper()) return d;
  Address f = delocate(d.focus, t);
  Ramification r = delocate(d.ram, d.focus.size(), t);
  // Children follow the renamed ramification's order.
  std::vector<NegativeDesign> kids(r.size());
  for (std::size_t k = 0; k < d.ram.size(); ++k) {
    unsigned nb = rename(t, d.focus.size(), d.ram[k]);
    auto pos = static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), nb) - r.begin());
    kids[pos] = delocate(d.children[k], t);
  }
  return PositiveDesign::proper(std::move(f), std::move(r), std::move(kids));
}

NegativeDesign delocate(const NegativeDesign& d, const Delocation& t) {
  NegativeDesign out{delocate(d.focus, t), {}};
  for (const auto& [j, p] : d.branches) out.branches.emplace(delocate(j, d.focus.size(), t), delocate(p, t));
  return out;
}

Design delocate(const Design& d, const Delocation& t) {
  return std::visit([&](const auto& x) -> Design { return delocate(x, t); }, d);
}

Alphabet delocate(const Alphabet& a, const Delocation& t) {
  Alphabet out;
  std::size_t n = std::max(a.levels.size(), t.levels.size());
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Ramification> level;
    for (const auto& r : a.at(k)) level.push_back(delocate(r, k, t));
    out.levels.push_back(std::move(level));
  }
  return out;
}

std::optional<std::string> validate_delocation(const Delocation& t, const Universe& u) {
  std::size_t n = std::max({u.alphabet.levels.size(), t.levels.size(), u.depth + 1});
  for (std::size_t k = 0; k < n; ++k) {
    std::map<unsigned, unsigned> seen;
    for (const auto& r : u.alphabet.at(k))
      for (auto i : r) {
        unsigned img = rename(t, k, i);
        auto [it, fresh] = seen.emplace(img, i);
        if (!fresh && it->second != i)
          return "biases " + std::to_string(it->second) + " and " + std::to_string(i) + " at position " +
                 std::to_string(k) + " both map to " + std::to_string(img);
      }
  }
  return std::nullopt;
}

Delocation tagging(const Universe& u, unsigned k, unsigned n) {
  Delocation t;
  std::map<unsigned, unsigned> root;
  for (const auto& r : u.alphabet.at(0))
    for (auto i : r) root[i] = n * i + k;
  t.levels.push_back(std::move(root));
  t.levels.emplace_back();
  return t;
}

// ---------------------------------------------------------------- coloured points

ColouredPoints coloured_points() {
  Universe u;
  u.alphabet = Alphabet(std::vector<std::vector<Ramification>>{{{1}, {2}, {3}}, {{2}, {180}, {9}}, {}});
  u.depth = 1;
  ColouredPoints c;
  c.space = Space::make(u);
  c.point = parse_negative(
      "(- . ({1} -> (+ 1 {2} (- 1.2))) ({2} -> (+ 2 {180} (- 2.180))) ({3} -> (+ 3 {9} (- 3.9))))");
  auto r = [&](unsigned i) -> Design { return ram({}, {i}, u.alphabet); };
  c.circles = orthogonal_set(c.space, true, {r(1), r(3)});
  c.points = orthogonal_set(c.space, true, {r(1), r(2)});
  c.radius = orthogonal_set(c.space, true, {r(1)});
  c.colour = orthogonal_set(c.space, true, {r(3)});
  return c;
}

}  // namespace locus::ludics
