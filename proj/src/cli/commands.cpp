#include "locus/cli/commands.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

#include "locus/lambda/term.hpp"
#include "locus/ludics/behaviour.hpp"
#include "locus/ludics/random.hpp"
#include "locus/mll/criteria.hpp"
#include "locus/mll/derivation.hpp"
#include "locus/mll/rewrite.hpp"

namespace locus::cli {

namespace lu = locus::ludics;
namespace ml = locus::mll;

Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  throw InputError("unknown format '" + std::string(s) + "'");
}

namespace {

void render_text(const json& v, const std::string& indent, std::ostringstream& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_primitive()) {
        out << indent << k << ": " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
      } else {
        out << indent << k << ":\n";
        render_text(x, indent + "  ", out);
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_primitive()) {
        out << indent << "- " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
      } else {
        out << indent << "-\n";
        render_text(x, indent + "  ", out);
      }
    }
  } else {
    out << indent << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

}  // namespace

std::string render(const json& doc, Format f) {
  if (f == Format::Json) return doc.dump(2) + "\n";
  std::ostringstream out;
  render_text(doc, "", out);
  return out.str();
}

std::size_t default_universe_cap() {
  if (const char* s = std::getenv("LOCUS_UNIVERSE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return lu::Universe{}.cap;
}

// ---------------------------------------------------------------- design files

std::vector<lu::Design> parse_designs(std::string_view text) {
  std::vector<lu::Design> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    std::size_t start = i, l0 = line, c0 = col;
    if (c == '(') {
      int level = 0;
      std::size_t j = i;
      for (; j < text.size(); ++j) {
        if (text[j] == '(') ++level;
        if (text[j] == ')' && --level == 0) break;
      }
      if (j == text.size()) throw ml::ParseError("unbalanced parentheses", l0, c0);
      advance(j + 1 - i);
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
             text[i] != '#')
        advance(1);
    }
    try {
      out.push_back(lu::parse_design(text.substr(start, i - start)));
    } catch (const ml::ParseError& e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" at "));
      throw ml::ParseError(msg, l0 + e.line - 1, e.line == 1 ? c0 + e.column - 1 : e.column);
    }
  }
  return out;
}

lu::Net parse_net(std::string_view text) {
  auto ds = parse_designs(text);
  if (ds.empty()) throw InputError("empty net");
  if (!std::holds_alternative<lu::PositiveDesign>(ds[0])) throw InputError("the first design must be positive");
  std::vector<lu::NegativeDesign> partners;
  for (std::size_t k = 1; k < ds.size(); ++k) {
    if (!std::holds_alternative<lu::NegativeDesign>(ds[k]))
      throw InputError("design " + std::to_string(k + 1) + " must be negative");
    partners.push_back(std::get<lu::NegativeDesign>(ds[k]));
  }
  return lu::make_net(std::get<lu::PositiveDesign>(ds[0]), std::move(partners));
}

namespace {

// ---------------------------------------------------------------- request helpers

std::string str(const json& r, const char* key) {
  auto it = r.find(key);
  if (it == r.end() || !it->is_string()) throw InputError(std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

std::string str_or(const json& r, const char* key, std::string def) {
  auto it = r.find(key);
  if (it == r.end() || it->is_null()) return def;
  if (!it->is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

bool flag(const json& r, const char* key) {
  auto it = r.find(key);
  if (it == r.end() || it->is_null()) return false;
  if (!it->is_boolean()) throw InputError(std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

std::optional<std::size_t> num(const json& r, const char* key) {
  auto it = r.find(key);
  if (it == r.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_unsigned()) throw InputError(std::string("field '") + key + "' must be a non-negative integer");
  return it->get<std::size_t>();
}

std::vector<std::string> strings(const json& r, const char* key) {
  std::vector<std::string> out;
  auto it = r.find(key);
  if (it == r.end() || it->is_null()) return out;
  if (!it->is_array()) throw InputError(std::string("field '") + key + "' must be an array of strings");
  for (const auto& x : *it) {
    if (!x.is_string()) throw InputError(std::string("field '") + key + "' must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

// ---------------------------------------------------------------- MLL

std::string leaf(const ml::LeafRef& l) { return std::to_string(l.tree) + ":" + (l.occ.empty() ? "." : l.occ); }

json partition(const ml::Partition& p) {
  json out = json::array();
  for (const auto& c : p) {
    json cls = json::array();
    for (const auto& l : c) cls.push_back(leaf(l));
    out.push_back(cls);
  }
  return out;
}

json witness(const ml::Witness& w) {
  if (const auto* s = std::get_if<ml::SwitchingWitness>(&w)) {
    std::string sides;
    for (auto side : s->switching.sides) sides += side == ml::Side::L ? 'L' : 'R';
    json out{{"kind", "switching"}, {"switching", sides}};
    if (!s->cycle.empty()) {
      json cyc = json::array();
      for (auto v : s->cycle) cyc.push_back(s->vertices[v]);
      out["cycle"] = cyc;
    } else {
      json a = json::array(), b = json::array();
      for (std::size_t v = 0; v < s->coloring.size(); ++v) (s->coloring[v] == 0 ? a : b).push_back(s->vertices[v]);
      out["disconnected"] = json::array({a, b});
    }
    return out;
  }
  if (const auto* p = std::get_if<ml::PlayWitness>(&w)) {
    json play = json::array();
    for (const auto& m : p->play) play.push_back(std::string(m.positive ? "+" : "-") + leaf(m.leaf));
    return {{"kind", "play"}, {"play", play}};
  }
  const auto& c = std::get<ml::CounterProofWitness>(w);
  return {{"kind", "counter-proof"}, {"partition", partition(c.induced)}};
}

ml::ParaproofStructure structure(const json& r, ml::Mode mode) {
  auto s = ml::parse_structure(str(r, "input"));
  auto d = ml::validate_structure(s, mode);
  if (!d.ok) throw InputError("invalid structure (" + d.rule + "): " + d.detail);
  return s;
}

json steps(const std::vector<ml::ParseStep>& t) {
  json out = json::array();
  for (const auto& s : t) out.push_back(ml::to_string(s));
  return out;
}

Result check(const json& r) {
  std::string c = str(r, "criterion");
  json doc{{"criterion", c}};
  if (c == "parse-weak" || c == "parse-strong") {
    auto s = structure(r, ml::Mode::Paraproof);
    auto v = ml::check_parsing(s, c == "parse-weak" ? ml::ParseMode::Weak : ml::ParseMode::Strong);
    doc["accepted"] = v.accepted;
    if (v.accepted && !v.trace.empty()) doc["trace"] = steps(v.trace);
    if (!v.accepted && v.stuck) doc["witness"] = {{"kind", "stuck"}, {"state", ml::to_string(*v.stuck)}};
    return {v.accepted ? Accepted : Rejected, doc};
  }
  ml::Verdict v;
  if (c == "dr") {
    v = ml::check_dr(structure(r, ml::Mode::Paraproof));
  } else if (c == "mix") {
    v = ml::check_acyclicity(structure(r, ml::Mode::Paraproof));
  } else if (c == "cp") {
    v = ml::check_cp(structure(r, ml::Mode::Paraproof));
  } else if (c == "aj") {
    v = ml::check_aj(structure(r, ml::Mode::Proof));
  } else {
    throw InputError("unknown criterion '" + c + "'");
  }
  doc["accepted"] = v.accepted;
  if (v.witness) doc["witness"] = witness(*v.witness);
  return {v.accepted ? Accepted : Rejected, doc};
}

json derivation(const ml::Derivation& d) {
  static const char* names[] = {"daimon", "par", "tensor", "cut", "mix", "exchange"};
  json out{{"rule", names[static_cast<int>(d.rule)]}};
  switch (d.rule) {
    case ml::Derivation::Rule::DaimonAxiom: {
      json fs = json::array();
      for (const auto& f : d.formulas) fs.push_back(ml::to_string(f));
      out["formulas"] = fs;
      break;
    }
    case ml::Derivation::Rule::Par:
    case ml::Derivation::Rule::Tensor:
    case ml::Derivation::Rule::Cut:
      out["i"] = d.i;
      out["j"] = d.j;
      break;
    case ml::Derivation::Rule::Exchange:
      out["order"] = d.order;
      break;
    case ml::Derivation::Rule::Mix:
      break;
  }
  if (!d.premises.empty()) {
    json ps = json::array();
    for (const auto& p : d.premises) ps.push_back(derivation(*p));
    out["premises"] = ps;
  }
  return out;
}

Result sequentialize_cmd(const json& r) {
  auto s = structure(r, ml::Mode::Paraproof);
  bool mix = flag(r, "mix");
  auto q = ml::sequentialize(s, mix);
  json doc{{"criterion", mix ? "sequentialize-mix" : "sequentialize"}, {"accepted", q.ok}};
  if (q.ok) {
    doc["trace"] = steps(q.trace);
    doc["derivation"] = derivation(*q.derivation);
  }
  return {q.ok ? Accepted : Rejected, doc};
}

Result cut_normalize_cmd(const json& r) {
  auto s = structure(r, ml::Mode::Paraproof);
  bool trace = flag(r, "trace");
  auto c = ml::cut_normalize(s, trace);
  json doc{{"result", ml::to_string(c.result)}, {"rules", c.rules}};
  if (trace) {
    json st = json::array();
    for (const auto& x : c.steps) st.push_back(ml::to_string(x));
    doc["steps"] = st;
  }
  return {Accepted, doc};
}

// ---------------------------------------------------------------- designs

lu::Design one_design(const json& r) {
  auto ds = parse_designs(str(r, "input"));
  if (ds.size() != 1) throw InputError("expected exactly one design");
  return ds[0];
}

bool positive(const lu::Design& d) { return std::holds_alternative<lu::PositiveDesign>(d); }

lu::Order parse_order(const std::string& s) {
  if (s == "obs") return lu::Order::Obs;
  if (s == "left") return lu::Order::Left;
  if (s == "right") return lu::Order::Right;
  if (s == "stable") return lu::Order::Stable;
  throw InputError("unknown order '" + s + "'");
}

lu::Alphabet alphabet(const json& r, const char* def = "{1},{2}") { return lu::parse_alphabet(str_or(r, "alphabet", def)); }

Result design_cmd(const json& r) {
  std::string op = str(r, "op");
  if (op == "infer-base") {
    auto d = one_design(r);
    auto res = std::visit([](const auto& x) { return lu::infer_base(x); }, d);
    json doc{{"ok", res.ok}};
    if (res.ok) {
      doc["base"] = lu::to_string(res.base);
      if (auto w = lu::parity_warning(res.base)) doc["parity-warning"] = *w;
    } else {
      doc["rule"] = res.rule;
      doc["where"] = res.where;
    }
    return {res.ok ? Accepted : Rejected, doc};
  }
  if (op == "check") {
    auto d = one_design(r);
    auto b = lu::parse_base(str_or(r, "base", positive(d) ? "|- ." : ". |-"));
    if (!lu::well_formed(b)) throw InputError("ill-formed base " + lu::to_string(b));
    bool ok = lu::check_design(d, b);
    json doc{{"ok", ok}, {"base", lu::to_string(b)}};
    if (!ok) {
      auto res = std::visit([&](const auto& x) { return lu::infer_base(x, b.right); }, d);
      doc["rule"] = res.ok ? "base" : res.rule;
      if (!res.ok) doc["where"] = res.where;
    }
    return {ok ? Accepted : Rejected, doc};
  }
  if (op == "compare") {
    auto ds = parse_designs(str(r, "input"));
    if (ds.size() != 2) throw InputError("compare needs two designs");
    if (positive(ds[0]) != positive(ds[1])) throw InputError("compare needs designs of the same polarity");
    std::string o = str_or(r, "order", "obs");
    bool holds = o == "both" ? lu::compare_both(ds[0], ds[1]) : lu::compare(ds[0], ds[1], parse_order(o));
    json doc{{"order", o}, {"holds", holds}};
    if (!holds && o == "obs") {
      if (auto w = lu::separation_witness(ds[0], ds[1])) doc["witness"] = lu::to_string(*w);
    }
    return {holds ? Accepted : Rejected, doc};
  }
  if (op == "named") {
    std::string name = str(r, "name");
    auto xi = lu::parse_address(str_or(r, "address", "."));
    lu::Design d;
    if (name == "dai") {
      d = lu::dai();
    } else if (name == "dai-minus") {
      d = lu::dai_minus(xi, alphabet(r));
    } else if (name == "skunk") {
      d = lu::skunk(xi);
    } else if (name == "skunk-plus") {
      d = lu::skunk_plus(xi, lu::parse_ramification(str(r, "ramification")));
    } else if (name == "ram") {
      d = lu::ram(xi, lu::parse_ramification(str(r, "ramification")), alphabet(r));
    } else if (name == "dir") {
      const auto& level = alphabet(r).levels;
      d = lu::dir(std::set<lu::Ramification>(level.front().begin(), level.front().end()));
    } else if (name == "fax") {
      auto to = lu::parse_address(str(r, "to"));
      d = lu::fax(xi, to, alphabet(r), num(r, "depth").value_or(2));
    } else {
      throw InputError("unknown design name '" + name + "'");
    }
    return {Accepted, {{"name", name}, {"design", lu::to_string(d)}}};
  }
  throw InputError("unknown design operation '" + op + "'");
}

json net_problem(const lu::NetVerdict& v) { return {{"condition", v.condition}, {"detail", v.detail}}; }

Result normalize_cmd(const json& r) {
  auto net = parse_net(str(r, "input"));
  auto v = lu::validate_net(net);
  if (!v.ok) return {Rejected, {{"valid", false}, {"witness", net_problem(v)}}};
  json doc{{"type", lu::to_string(v.type)}};
  if (!v.unreachable.empty()) doc["unreachable"] = v.unreachable;
  auto fuel = num(r, "fuel").value_or(lu::unlimited);
  if (flag(r, "strong")) {
    lu::FrontierPolicy p;
    p.depth = num(r, "depth").value_or(lu::unlimited);
    if (r.contains("alphabet")) p.alphabet = alphabet(r);
    p.fuel = fuel;
    auto nf = lu::strong_normalize(net, p);
    json cs = json::array();
    for (const auto& c : nf.chronicles) cs.push_back(lu::to_string(c));
    doc["chronicles"] = cs;
    doc["normal-form"] = lu::to_string(nf.design);
    doc["truncated"] = nf.truncated;
    return {Accepted, doc};
  }
  lu::RunOptions o;
  o.fuel = fuel;
  o.trace = flag(r, "trace");
  auto out = lu::weak_run(net, o);
  doc["outcome"] = lu::to_string(out.kind);
  doc["steps"] = out.steps;
  if (out.kind == lu::Outcome::Kind::Head)
    doc["head"] = lu::to_string(lu::Action{true, out.focus, out.ram});
  if (o.trace) doc["trace"] = out.trace;
  return {Accepted, doc};
}

Result orthogonal_cmd(const json& r) {
  auto net = parse_net(str(r, "input"));
  auto v = lu::validate_net(net);
  if (!v.ok) throw InputError("invalid net (" + v.condition + "): " + v.detail);
  if (!v.type.right.empty() || v.type.left) throw InputError("the net is not closed: type " + lu::to_string(v.type));
  auto out = lu::weak_run(net);
  bool ok = out.kind == lu::Outcome::Kind::Daimon;
  return {ok ? Accepted : Rejected, {{"orthogonal", ok}, {"outcome", lu::to_string(out.kind)}, {"steps", out.steps}}};
}

// ---------------------------------------------------------------- behaviours

std::shared_ptr<const lu::Space> space_for(const lu::Universe& u) {
  static std::mutex m;
  static std::map<std::string, std::shared_ptr<const lu::Space>> cache;
  std::string key = lu::to_string(u) + "; cap " + std::to_string(u.cap);
  {
    std::lock_guard lock(m);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto s = lu::Space::make(u);
  std::lock_guard lock(m);
  return cache.emplace(key, s).first->second;
}

lu::Universe universe(const json& r) {
  return lu::Universe{alphabet(r), num(r, "depth").value_or(1), num(r, "cap").value_or(default_universe_cap())};
}

std::string polarity_name(bool positive) { return positive ? "positive" : "negative"; }

lu::Behaviour behaviour_from(const std::shared_ptr<const lu::Space>& s, const json& r, const char* key) {
  std::vector<lu::Design> gens;
  for (const auto& g : strings(r, key)) {
    auto ds = parse_designs(g);
    gens.insert(gens.end(), ds.begin(), ds.end());
  }
  bool pos;
  if (!gens.empty()) {
    pos = positive(gens[0]);
  } else {
    std::string p = str_or(r, "polarity", "negative");
    if (p != "positive" && p != "negative") throw InputError("polarity must be positive or negative");
    pos = p == "positive";
  }
  auto g = lu::biorthogonal(s, pos, gens);
  if (flag(r, "dual")) g = lu::orthogonal(g);
  g.generators = std::move(gens);
  return g;
}

json describe(const lu::Behaviour& g, bool members) {
  json gens = json::array();
  for (const auto& d : g.generators) gens.push_back(lu::to_string(d));
  json dir = json::array();
  for (const auto& j : lu::directory(g)) dir.push_back(lu::ramification_to_string(j));
  json doc{{"universe", lu::to_string(g.space->universe())},
           {"polarity", polarity_name(g.positive)},
           {"generators", gens},
           {"member-count", g.size()},
           {"directory", dir}};
  if (members) {
    json ms = json::array();
    for (const auto& d : g.designs()) ms.push_back(lu::to_string(d));
    doc["members"] = ms;
  }
  return doc;
}

Result behaviour_cmd(const json& r) {
  std::string op = str(r, "op");
  auto u = universe(r);
  if (op == "delocate") {
    auto d = one_design(r);
    auto t = lu::tagging(u, static_cast<unsigned>(num(r, "tag").value_or(0)),
                         static_cast<unsigned>(num(r, "modulus").value_or(2)));
    json doc{{"design", lu::to_string(d)}, {"delocated", lu::to_string(lu::delocate(d, t))}};
    if (auto bad = lu::validate_delocation(t, u)) {
      doc["witness"] = *bad;
      return {Rejected, doc};
    }
    return {Accepted, doc};
  }
  auto s = space_for(u);
  bool members = flag(r, "members");
  auto g = behaviour_from(s, r, "generators");
  if (op == "biorth" || op == "directory") return {Accepted, describe(g, members)};
  if (op == "incarnation") {
    auto d = one_design(r);
    json doc = describe(g, members);
    doc["design"] = lu::to_string(d);
    bool in = positive(d) == g.positive && g.contains(d);
    doc["member"] = in;
    if (!in) return {Rejected, doc};
    doc["incarnation"] = lu::to_string(lu::incarnation(d, g));
    return {Accepted, doc};
  }
  if (op == "with" || op == "plus") {
    auto h = behaviour_from(s, r, "other");
    if (g.positive != h.positive) throw InputError("both behaviours must have the same polarity");
    json doc{{"op", op}, {"left", describe(g, false)}, {"right", describe(h, false)}};
    if (!lu::disjoint(g, h)) {
      json shared = json::array();
      auto dh = lu::directory(h);
      for (const auto& j : lu::directory(g))
        if (dh.count(j)) shared.push_back(lu::ramification_to_string(j));
      doc["witness"] = {{"kind", "shared-directory"}, {"ramifications", shared}};
      return {Rejected, doc};
    }
    doc["result"] = describe(lu::additive(g, h, op == "with" ? lu::Additive::With : lu::Additive::Plus), members);
    return {Accepted, doc};
  }
  throw InputError("unknown behaviour operation '" + op + "'");
}

// ---------------------------------------------------------------- λ

bool negative_term_text(const std::string& s) {
  auto p = s.find_first_not_of(" \t\r\n");
  return p != std::string::npos && (s[p] == '\\' || s[p] == '{');
}

Result lambda_cmd(const json& r) {
  std::string op = str(r, "op");
  std::string input = str(r, "input");
  if (op == "to-term") {
    auto ds = parse_designs(input);
    if (ds.size() != 1) throw InputError("expected exactly one design");
    bool pos = positive(ds[0]);
    auto b = lu::parse_base(str_or(r, "base", pos ? "|- ." : ". |-"));
    try {
      std::string t = pos ? lambda::to_string(lambda::slice_to_term(std::get<lu::PositiveDesign>(ds[0]), b))
                          : lambda::to_string(lambda::slice_to_term(std::get<lu::NegativeDesign>(ds[0]), b));
      return {Accepted, {{"base", lu::to_string(b)}, {"term", t}}};
    } catch (const lambda::TranslationError& e) {
      return {Rejected, {{"base", lu::to_string(b)}, {"witness", e.what()}}};
    }
  }
  if (op == "to-slice") {
    bool neg = negative_term_text(input);
    auto b = lu::parse_base(str_or(r, "base", neg ? ". |-" : "|- ."));
    try {
      std::string d = neg ? lu::to_string(lambda::term_to_slice(lambda::parse_neg_term(input), b))
                          : lu::to_string(lambda::term_to_slice(lambda::parse_pos_term(input), b));
      return {Accepted, {{"base", lu::to_string(b)}, {"design", d}}};
    } catch (const lambda::TranslationError& e) {
      return {Rejected, {{"base", lu::to_string(b)}, {"witness", e.what()}}};
    }
  }
  if (op == "run") {
    auto p = lambda::parse_pos_term(input);
    // Parsed terms must outlive the closures that point at them.
    std::vector<std::unique_ptr<lambda::NegTerm>> bound;
    lambda::TermEnv env;
    if (auto it = r.find("bind"); it != r.end() && !it->is_null()) {
      if (!it->is_object()) throw InputError("field 'bind' must map names to negative terms");
      for (const auto& [x, m] : it->items()) {
        if (!m.is_string()) throw InputError("field 'bind' must map names to negative terms");
        bound.push_back(std::make_unique<lambda::NegTerm>(lambda::parse_neg_term(m.get<std::string>())));
        env = lambda::bind(x, *bound.back(), env);
      }
    }
    auto fuel = num(r, "fuel");
    json doc{{"term", lambda::to_string(p)}};
    if (flag(r, "strong")) {
      auto n = lambda::normalize(p, env, fuel.value_or(100000));
      if (!n) {
        doc["outcome"] = lu::to_string(lu::Outcome::Kind::CreatedOmega);
        return {Accepted, doc};
      }
      doc["normal-form"] = lambda::to_string(*n);
      return {Accepted, doc};
    }
    auto out = lambda::machine_run(p, env, fuel.value_or(lu::unlimited));
    doc["outcome"] = lu::to_string(out.kind);
    doc["steps"] = out.steps;
    if (out.kind == lu::Outcome::Kind::Head) {
      doc["head"] = out.head;
      doc["ramification"] = lu::ramification_to_string(out.ram);
    }
    return {Accepted, doc};
  }
  throw InputError("unknown lambda operation '" + op + "'");
}

// ---------------------------------------------------------------- corpora

std::string fnv1a(const json& items) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& it : items) {
    for (unsigned char c : it.dump()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= '\n';
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

Result gen_cmd(const json& r) {
  std::string kind = str(r, "kind");
  std::uint64_t seed = num(r, "seed").value_or(1);
  std::size_t count = num(r, "count").value_or(10);
  lu::RandomDesignOptions o;
  o.depth = num(r, "depth").value_or(3);
  o.alphabet = alphabet(r, "{1},{1,2}");
  lu::Rng rng(seed);
  json items = json::array();
  for (std::size_t k = 0; k < count; ++k) {
    if (kind == "structure" || kind == "proof") {
      auto mode = kind == "proof" ? ml::Mode::Proof : ml::Mode::Paraproof;
      items.push_back(ml::to_string(ml::random_structure(seed + k, num(r, "budget").value_or(6), mode, flag(r, "cuts"))));
    } else if (kind == "design") {
      items.push_back(lu::to_string(lu::random_positive(rng, {lu::Address{}}, o)));
    } else if (kind == "slices") {
      auto [phi, psi] = lu::balanced_slices(rng, o);
      items.push_back(json::array({lu::to_string(phi), lu::to_string(psi)}));
    } else if (kind == "net") {
      auto rn = lu::random_net(rng, o, num(r, "partners").value_or(3));
      json net = json::array({lu::to_string(rn.net.principal)});
      for (const auto& p : rn.net.partners) net.push_back(lu::to_string(p));
      items.push_back(net);
    } else if (kind == "term") {
      items.push_back(lambda::to_string(lambda::random_term(rng, {{"a", 0}}, o)));
    } else {
      throw InputError("unknown corpus kind '" + kind + "'");
    }
  }
  return {Accepted, {{"kind", kind}, {"seed", seed}, {"count", count}, {"hash", fnv1a(items)}, {"items", items}}};
}

using Handler = Result (*)(const json&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"check", check},           {"sequentialize", sequentialize_cmd}, {"cut-normalize", cut_normalize_cmd},
      {"design", design_cmd},     {"normalize", normalize_cmd},         {"orthogonal", orthogonal_cmd},
      {"behaviour", behaviour_cmd}, {"lambda", lambda_cmd},             {"gen", gen_cmd}};
  return h;
}

Result input_failure(const std::string& msg) { return {InputFailure, {{"error", msg}}}; }

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, h] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

Result run(const std::string& command, const json& request) {
  auto it = handlers().find(command);
  if (it == handlers().end()) return input_failure("unknown command '" + command + "'");
  if (!request.is_object()) return input_failure("the request must be an object");
  try {
    return it->second(request);
  } catch (const ml::ParseError& e) {
    return {InputFailure, {{"error", e.what()}, {"line", e.line}, {"column", e.column}}};
  } catch (const ml::GuardError& e) {
    return input_failure(std::string("guard exceeded: ") + e.what());
  } catch (const lu::ChronicleError& e) {
    return input_failure(e.what());
  } catch (const std::invalid_argument& e) {
    return input_failure(e.what());
  } catch (const std::out_of_range& e) {
    return input_failure(e.what());
  }
}

}  // namespace locus::cli
