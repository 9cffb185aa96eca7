#include "locus/lambda/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace locus::lambda {

using ludics::Base;
using ludics::NegativeDesign;
using ludics::Outcome;
using ludics::PositiveDesign;

PosTerm PosTerm::app(std::string head, Ramification ram, std::vector<NegTerm> args) {
  if (ram.size() != args.size()) throw std::invalid_argument("one argument per bias is required");
  return {Kind::App, std::move(head), std::move(ram), std::move(args)};
}

// ---------------------------------------------------------------- text

namespace {

Ramification first_n(std::size_t n) {
  Ramification r;
  for (unsigned i = 1; i <= n; ++i) r.push_back(i);
  return r;
}

std::string binder_text(const std::vector<std::string>& vars) {
  std::string s = "\\{";
  for (std::size_t k = 0; k < vars.size(); ++k) s += (k ? " " : "") + vars[k];
  return s + "}";
}

}  // namespace

std::string to_string(const PosTerm& t) {
  switch (t.kind) {
    case PosTerm::Kind::Omega:
      return "omega";
    case PosTerm::Kind::Daimon:
      return "dai";
    case PosTerm::Kind::App:
      break;
  }
  std::string s = t.head + "{";
  for (std::size_t k = 0; k < t.args.size(); ++k) s += (k ? " " : "") + to_string(t.args[k]);
  s += "}";
  if (t.ram != first_n(t.ram.size())) s += "@" + ludics::ramification_to_string(t.ram);
  return s;
}

std::string to_string(const NegTerm& t) {
  if (t.branches.empty()) return "{}";
  if (t.branches.size() == 1) {
    const auto& [j, ab] = *t.branches.begin();
    std::string s = binder_text(ab.vars);
    if (j != first_n(j.size())) s += "@" + ludics::ramification_to_string(j);
    return s + "." + to_string(ab.body);
  }
  std::string s = "{";
  bool first = true;
  for (const auto& [j, ab] : t.branches) {
    s += first ? " " : " ; ";
    first = false;
    s += ludics::ramification_to_string(j) + " = " + binder_text(ab.vars) + "." + to_string(ab.body);
  }
  return s + " }";
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view s) : s_(s) {}

  PosTerm whole_pos() {
    auto t = pos();
    end();
    return t;
  }
  NegTerm whole_neg() {
    auto t = neg();
    end();
    return t;
  }

 private:
  void skip() {
    for (;;) {
      while (at_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[at_])) || s_[at_] == ',')) advance();
      if (at_ < s_.size() && s_[at_] == '#') {
        while (at_ < s_.size() && s_[at_] != '\n') advance();
        continue;
      }
      return;
    }
  }
  void advance() {
    if (s_[at_] == '\n') ++line_, col_ = 1;
    else ++col_;
    ++at_;
  }
  [[noreturn]] void fail(const std::string& what) { throw ludics::ParseError(what, line_, col_); }
  bool peek(char c) {
    skip();
    return at_ < s_.size() && s_[at_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    advance();
  }
  bool ident_start() {
    skip();
    return at_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[at_]));
  }
  std::string ident() {
    if (!ident_start()) fail("expected a variable");
    std::string w;
    while (at_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[at_])) || s_[at_] == '_' || s_[at_] == '\'')) {
      w += s_[at_];
      advance();
    }
    return w;
  }
  Ramification ram() {
    expect('{');
    std::vector<unsigned> biases;
    while (!peek('}')) {
      if (at_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[at_]))) fail("expected a bias");
      unsigned v = 0;
      while (at_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[at_]))) {
        v = v * 10 + static_cast<unsigned>(s_[at_] - '0');
        advance();
      }
      biases.push_back(v);
    }
    expect('}');
    // Arguments and binders follow the ramification's order, so it must be written increasing.
    if (!std::is_sorted(biases.begin(), biases.end()) ||
        std::adjacent_find(biases.begin(), biases.end()) != biases.end())
      fail("biases must be strictly increasing");
    return biases;
  }
  std::vector<std::string> binder() {
    expect('\\');
    expect('{');
    std::vector<std::string> vars;
    while (!peek('}')) vars.push_back(ident());
    expect('}');
    return vars;
  }
  void end() {
    skip();
    if (at_ != s_.size()) fail("trailing input");
  }

  PosTerm pos() {
    std::string w = ident();
    if (w == "dai") return PosTerm::daimon();
    if (w == "omega") return PosTerm::omega();
    expect('{');
    std::vector<NegTerm> args;
    while (!peek('}')) args.push_back(neg());
    expect('}');
    Ramification r = first_n(args.size());
    if (peek('@')) {
      advance();
      r = ram();
    }
    if (r.size() != args.size()) fail("the ramification must have one bias per argument");
    return PosTerm::app(std::move(w), std::move(r), std::move(args));
  }

  void add_branch(NegTerm& t, Ramification j, std::vector<std::string> vars, PosTerm body) {
    if (j.size() != vars.size()) fail("the ramification must have one bias per bound variable");
    if (t.branches.count(j)) fail("repeated branch " + ludics::ramification_to_string(j));
    if (body.kind == PosTerm::Kind::Omega) return;
    t.branches.emplace(std::move(j), Abstraction{std::move(vars), std::move(body)});
  }

  NegTerm neg() {
    NegTerm t;
    if (peek('\\')) {
      auto vars = binder();
      Ramification j = first_n(vars.size());
      if (peek('@')) {
        advance();
        j = ram();
      }
      expect('.');
      add_branch(t, std::move(j), std::move(vars), pos());
      return t;
    }
    expect('{');
    bool first = true;
    while (!peek('}')) {
      if (!first) expect(';');
      first = false;
      Ramification j = ram();
      expect('=');
      auto vars = binder();
      expect('.');
      add_branch(t, std::move(j), std::move(vars), pos());
    }
    expect('}');
    return t;
  }

  std::string_view s_;
  std::size_t at_ = 0;
  std::size_t line_ = 1, col_ = 1;
};

}  // namespace

PosTerm parse_pos_term(std::string_view text) { return TermParser(text).whole_pos(); }
NegTerm parse_neg_term(std::string_view text) { return TermParser(text).whole_neg(); }

// ---------------------------------------------------------------- structure

bool is_slice(const PosTerm& t) {
  return std::all_of(t.args.begin(), t.args.end(), [](const NegTerm& m) { return is_slice(m); });
}

bool is_slice(const NegTerm& t) {
  return t.branches.size() <= 1 &&
         std::all_of(t.branches.begin(), t.branches.end(), [](const auto& b) { return is_slice(b.second.body); });
}

std::size_t depth(const PosTerm& t) {
  if (t.kind != PosTerm::Kind::App) return 0;
  std::size_t d = 0;
  for (const auto& m : t.args)
    for (const auto& [j, ab] : m.branches) d = std::max(d, depth(ab.body));
  return d + 1;
}

namespace {

struct Renamer {
  std::size_t next = 0;

  PosTerm pos(const PosTerm& t, const std::map<std::string, std::string>& scope) {
    if (t.kind != PosTerm::Kind::App) return t;
    PosTerm out = t;
    if (auto it = scope.find(t.head); it != scope.end()) out.head = it->second;
    for (auto& m : out.args) m = neg(m, scope);
    return out;
  }

  NegTerm neg(const NegTerm& t, const std::map<std::string, std::string>& scope) {
    NegTerm out;
    for (const auto& [j, ab] : t.branches) {
      auto inner = scope;
      Abstraction a;
      for (const auto& v : ab.vars) {
        std::string fresh = "_" + std::to_string(next++);
        inner[v] = fresh;
        a.vars.push_back(fresh);
      }
      a.body = pos(ab.body, inner);
      out.branches.emplace(j, std::move(a));
    }
    return out;
  }
};

using Counts = std::map<std::string, std::size_t>;

void add(Counts& into, const Counts& from) {
  for (const auto& [v, n] : from) into[v] += n;
}

Counts occurrences(const NegTerm& t);

Counts occurrences(const PosTerm& t) {
  Counts c;
  if (t.kind != PosTerm::Kind::App) return c;
  c[t.head] = 1;
  for (const auto& m : t.args) add(c, occurrences(m));
  return c;
}

Counts occurrences(const NegTerm& t) {
  Counts c;
  for (const auto& [j, ab] : t.branches)
    for (const auto& [v, n] : occurrences(ab.body)) c[v] = std::max(c[v], n);
  return c;
}

bool at_most_once(const Counts& c) {
  return std::all_of(c.begin(), c.end(), [](const auto& e) { return e.second <= 1; });
}

}  // namespace

PosTerm canonical_names(const PosTerm& t) { return Renamer{}.pos(t, {}); }
NegTerm canonical_names(const NegTerm& t) { return Renamer{}.neg(t, {}); }
bool alpha_equal(const PosTerm& a, const PosTerm& b) { return canonical_names(a) == canonical_names(b); }
bool alpha_equal(const NegTerm& a, const NegTerm& b) { return canonical_names(a) == canonical_names(b); }

bool affine_check(const PosTerm& t) { return at_most_once(occurrences(canonical_names(t))); }
bool affine_check(const NegTerm& t) { return at_most_once(occurrences(canonical_names(t))); }

PosTerm rename_free(const PosTerm& t, const std::string& from, const std::string& to) {
  std::function<PosTerm(const PosTerm&)> pos;
  std::function<NegTerm(const NegTerm&)> neg = [&](const NegTerm& m) {
    NegTerm out;
    for (const auto& [j, ab] : m.branches) {
      bool shadowed = std::find(ab.vars.begin(), ab.vars.end(), from) != ab.vars.end();
      out.branches.emplace(j, Abstraction{ab.vars, shadowed ? ab.body : pos(ab.body)});
    }
    return out;
  };
  pos = [&](const PosTerm& p) {
    if (p.kind != PosTerm::Kind::App) return p;
    PosTerm out = p;
    if (out.head == from) out.head = to;
    for (auto& m : out.args) m = neg(m);
    return out;
  };
  return pos(t);
}

// ---------------------------------------------------------------- designs ↔ terms

namespace {

struct ToTerm {
  std::size_t next = 0;

  PosTerm pos(const PositiveDesign& d, const Names& names) {
    if (d.is_omega()) return PosTerm::omega();
    if (d.is_daimon()) return PosTerm::daimon();
    auto it = names.find(d.focus);
    if (it == names.end())
      throw TranslationError("address " + ludics::address_to_string(d.focus) + " is not bound by any variable");
    std::vector<NegTerm> args;
    for (const auto& c : d.children) args.push_back(neg(c, names));
    return PosTerm::app(it->second, d.ram, std::move(args));
  }

  NegTerm neg(const NegativeDesign& d, const Names& names) {
    NegTerm out;
    for (const auto& [j, p] : d.branches) {
      Names inner = names;
      Abstraction a;
      for (auto i : j) {
        std::string v = "x" + std::to_string(++next);
        inner[ludics::child(d.focus, i)] = v;
        a.vars.push_back(v);
      }
      a.body = pos(p, inner);
      if (a.body.kind != PosTerm::Kind::Omega) out.branches.emplace(j, std::move(a));
    }
    return out;
  }
};

}  // namespace

PosTerm to_term(const PositiveDesign& d, const Names& free) { return ToTerm{}.pos(d, free); }
NegTerm to_term(const NegativeDesign& d, const Names& free) { return ToTerm{}.neg(d, free); }

PositiveDesign to_design(const PosTerm& t, const Addresses& free) {
  switch (t.kind) {
    case PosTerm::Kind::Omega:
      return PositiveDesign::omega();
    case PosTerm::Kind::Daimon:
      return PositiveDesign::daimon();
    case PosTerm::Kind::App:
      break;
  }
  auto it = free.find(t.head);
  if (it == free.end()) throw TranslationError("variable " + t.head + " is unbound");
  std::vector<NegativeDesign> kids;
  for (std::size_t k = 0; k < t.ram.size(); ++k)
    kids.push_back(to_design(t.args[k], ludics::child(it->second, t.ram[k]), free));
  return PositiveDesign::proper(it->second, t.ram, std::move(kids));
}

NegativeDesign to_design(const NegTerm& t, const Address& focus, const Addresses& free) {
  NegativeDesign out;
  out.focus = focus;
  for (const auto& [j, ab] : t.branches) {
    Addresses inner = free;
    for (std::size_t k = 0; k < j.size(); ++k) inner[ab.vars[k]] = ludics::child(focus, j[k]);
    auto p = to_design(ab.body, inner);
    if (!p.is_omega()) out.branches.emplace(j, std::move(p));
  }
  return out;
}

std::string address_name(const Address& a) {
  std::string s = "a";
  for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "_" : "") + std::to_string(a[k]);
  return s;
}

Names default_names(const Base& b) {
  Names n;
  for (const auto& a : b.right) n[a] = address_name(a);
  return n;
}

Addresses default_addresses(const Base& b) {
  Addresses n;
  for (const auto& a : b.right) n[address_name(a)] = a;
  return n;
}

namespace {

void require_typed(const ludics::Design& d, const Base& b) {
  if (!ludics::check_design(d, b)) {
    auto r = std::visit([&](const auto& x) { return ludics::infer_base(x, b.right); }, d);
    throw TranslationError("not typable on " + ludics::to_string(b) + (r.ok ? "" : " (" + r.rule + ")"));
  }
}

}  // namespace

PosTerm slice_to_term(const PositiveDesign& d, const Base& b) {
  if (!ludics::is_slice(d)) throw TranslationError("design is not a slice");
  require_typed(d, b);
  return to_term(d, default_names(b));
}

NegTerm slice_to_term(const NegativeDesign& d, const Base& b) {
  if (!ludics::is_slice(d)) throw TranslationError("design is not a slice");
  require_typed(d, b);
  return to_term(d, default_names(b));
}

PositiveDesign term_to_slice(const PosTerm& t, const Base& b) {
  if (!is_slice(t)) throw TranslationError("term is not a slice");
  auto d = to_design(t, default_addresses(b));
  require_typed(d, b);
  return d;
}

NegativeDesign term_to_slice(const NegTerm& t, const Base& b) {
  if (!is_slice(t)) throw TranslationError("term is not a slice");
  if (!b.left) throw TranslationError("a negative term needs a negative base");
  auto d = to_design(t, *b.left, default_addresses(b));
  require_typed(d, b);
  return d;
}

namespace {

// Free variables get distinct fresh single-bias addresses.
Addresses fresh_addresses(const Counts& c, std::set<Address>& gamma) {
  Addresses a;
  unsigned next = 1000;
  for (const auto& [v, n] : c) {
    a[v] = Address{next++};
    gamma.insert(a[v]);
  }
  return a;
}

Counts free_variables(const PosTerm& t);

Counts free_variables(const NegTerm& t) {
  Counts c;
  for (const auto& [j, ab] : t.branches)
    for (const auto& [v, n] : free_variables(ab.body))
      if (std::find(ab.vars.begin(), ab.vars.end(), v) == ab.vars.end()) c[v] = 1;
  return c;
}

Counts free_variables(const PosTerm& t) {
  Counts c;
  if (t.kind != PosTerm::Kind::App) return c;
  c[t.head] = 1;
  for (const auto& m : t.args) add(c, free_variables(m));
  return c;
}

}  // namespace

bool typable(const PosTerm& t) {
  std::set<Address> gamma;
  auto d = to_design(t, fresh_addresses(free_variables(t), gamma));
  return ludics::infer_base(d, gamma).ok;
}

bool typable(const NegTerm& t) {
  std::set<Address> gamma;
  auto addrs = fresh_addresses(free_variables(t), gamma);
  auto d = to_design(t, Address{999}, addrs);
  return ludics::infer_base(d, gamma).ok;
}

// ---------------------------------------------------------------- machine

TermEnv bind(const std::string& x, const NegTerm& m, const TermEnv& env) {
  TermEnv out = env;
  out[x] = std::make_shared<const Closure>(Closure{&m, {}, {}});
  return out;
}

TermOutcome machine_run(const PosTerm& p, const TermEnv& env0, std::size_t fuel) {
  TermOutcome out;
  const PosTerm* code = &p;
  TermEnv env = env0;
  for (;;) {
    if (code->kind == PosTerm::Kind::Omega) {
      out.kind = Outcome::Kind::SyntacticOmega;
      return out;
    }
    if (code->kind == PosTerm::Kind::Daimon) {
      out.kind = Outcome::Kind::Daimon;
      return out;
    }
    auto it = env.find(code->head);
    if (it == env.end() || !it->second->term) {
      out.kind = Outcome::Kind::Head;
      out.head = it == env.end() ? code->head : it->second->free_name;
      out.ram = code->ram;
      out.code = code;
      out.env = std::move(env);
      return out;
    }
    if (out.steps >= fuel) {
      out.kind = Outcome::Kind::CreatedOmega;
      return out;
    }
    const Closure& c = *it->second;
    auto br = c.term->branches.find(code->ram);
    if (br == c.term->branches.end()) {
      // Counted like the design machine, which moves onto an Ω branch.
      ++out.steps;
      out.kind = Outcome::Kind::SyntacticOmega;
      return out;
    }
    // The arguments keep the whole current environment, the binding of the head included.
    TermEnv next = c.env;
    for (std::size_t k = 0; k < code->args.size(); ++k)
      next[br->second.vars[k]] = std::make_shared<const Closure>(Closure{&code->args[k], env, {}});
    code = &br->second.body;
    env = std::move(next);
    ++out.steps;
  }
}

namespace {

struct Normalizer {
  std::size_t fuel;
  std::size_t next = 0;
  bool exhausted = false;

  PosTerm pos(const PosTerm& p, const TermEnv& env) {
    auto r = machine_run(p, env, fuel);
    fuel -= std::min(fuel, r.steps);
    switch (r.kind) {
      case Outcome::Kind::Daimon:
        return PosTerm::daimon();
      case Outcome::Kind::SyntacticOmega:
        return PosTerm::omega();
      case Outcome::Kind::CreatedOmega:
        exhausted = true;
        return PosTerm::omega();
      case Outcome::Kind::Head:
        break;
    }
    std::vector<NegTerm> args;
    for (const auto& m : r.code->args) args.push_back(neg(m, r.env));
    return PosTerm::app(r.head, r.ram, std::move(args));
  }

  NegTerm neg(const NegTerm& m, const TermEnv& env) {
    NegTerm out;
    for (const auto& [j, ab] : m.branches) {
      TermEnv inner = env;
      Abstraction a;
      for (const auto& v : ab.vars) {
        std::string fresh = "v'" + std::to_string(++next);
        inner[v] = std::make_shared<const Closure>(Closure{nullptr, {}, fresh});
        a.vars.push_back(fresh);
      }
      a.body = pos(ab.body, inner);
      if (a.body.kind != PosTerm::Kind::Omega) out.branches.emplace(j, std::move(a));
    }
    return out;
  }
};

}  // namespace

std::optional<PosTerm> normalize(const PosTerm& p, const TermEnv& env, std::size_t fuel) {
  Normalizer n{fuel};
  auto out = n.pos(p, env);
  if (n.exhausted) return std::nullopt;
  return out;
}

namespace {

NegTerm fax_at(const std::string& x, std::size_t len, const ludics::Alphabet& a, std::size_t depth, std::size_t& next) {
  NegTerm out;
  if (depth == 0) return out;
  for (const auto& r : a.at(len)) {
    Abstraction ab;
    std::vector<NegTerm> args;
    for (std::size_t k = 0; k < r.size(); ++k) {
      ab.vars.push_back("y'" + std::to_string(++next));
      args.push_back(fax_at(ab.vars.back(), len + 1, a, depth - 1, next));
    }
    ab.body = PosTerm::app(x, r, std::move(args));
    out.branches.emplace(r, std::move(ab));
  }
  return out;
}

}  // namespace

NegTerm fax_term(const std::string& x, const Address& xi, const ludics::Alphabet& a, std::size_t depth) {
  std::size_t next = 0;
  return fax_at(x, xi.size(), a, depth, next);
}

namespace {

using Scope = std::vector<std::pair<std::string, std::size_t>>;

struct TermGen {
  ludics::Rng& rng;
  const ludics::RandomDesignOptions& o;
  std::size_t next = 0;

  PosTerm pos(const Scope& scope, std::size_t d) {
    if (d == 0 || scope.empty() || rng.coin(o.p_daimon)) return PosTerm::daimon();
    if (rng.coin(o.p_omega)) return PosTerm::omega();
    const auto& [x, len] = scope[rng.below(scope.size())];
    const auto& rams = o.alphabet.at(len);
    if (rams.empty()) return PosTerm::daimon();
    const Ramification& r = rams[rng.below(rams.size())];
    std::vector<NegTerm> args;
    for (std::size_t k = 0; k < r.size(); ++k) args.push_back(neg(scope, len + 1, d - 1));
    return PosTerm::app(x, r, std::move(args));
  }

  NegTerm neg(const Scope& scope, std::size_t len, std::size_t d) {
    NegTerm out;
    for (const auto& j : o.alphabet.at(len)) {
      if (!rng.coin(o.p_branch)) continue;
      Scope inner = scope;
      Abstraction a;
      for (std::size_t k = 0; k < j.size(); ++k) {
        a.vars.push_back("x" + std::to_string(++next));
        inner.emplace_back(a.vars.back(), len + 1);
      }
      a.body = pos(inner, d);
      if (a.body.kind != PosTerm::Kind::Omega) out.branches.emplace(j, std::move(a));
      if (o.slices) break;
    }
    return out;
  }
};

}  // namespace

PosTerm random_term(ludics::Rng& rng, const std::vector<std::pair<std::string, std::size_t>>& free,
                    const ludics::RandomDesignOptions& o) {
  return TermGen{rng, o}.pos(free, o.depth);
}

}  // namespace locus::lambda
