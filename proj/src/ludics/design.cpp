#include "locus/ludics/design.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace locus::ludics {

// ---------------------------------------------------------------- addresses

Address child(const Address& a, unsigned i) {
  Address r = a;
  r.push_back(i);
  return r;
}

bool is_prefix(const Address& p, const Address& a) {
  return p.size() <= a.size() && std::equal(p.begin(), p.end(), a.begin());
}

bool disjoint(const Address& a, const Address& b) { return !is_prefix(a, b) && !is_prefix(b, a); }

std::vector<Address> star(const Address& a, const Ramification& r) {
  std::vector<Address> out;
  for (unsigned i : r) out.push_back(child(a, i));
  return out;
}

Ramification make_ramification(std::vector<unsigned> biases) {
  std::sort(biases.begin(), biases.end());
  biases.erase(std::unique(biases.begin(), biases.end()), biases.end());
  return biases;
}

std::string address_to_string(const Address& a) {
  if (a.empty()) return ".";
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) s += '.';
    s += std::to_string(a[k]);
  }
  return s;
}

std::string ramification_to_string(const Ramification& r) {
  std::string s = "{";
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(r[k]);
  }
  return s + "}";
}

// ---------------------------------------------------------------- designs

PositiveDesign PositiveDesign::proper(Address focus, Ramification ram, std::vector<NegativeDesign> children) {
  if (children.size() != ram.size()) throw std::invalid_argument("children must match the ramification");
  for (std::size_t k = 0; k < ram.size(); ++k)
    if (children[k].focus != child(focus, ram[k]))
      throw std::invalid_argument("child " + std::to_string(k) + " is not based on " +
                                  address_to_string(child(focus, ram[k])));
  return {Kind::Proper, std::move(focus), std::move(ram), std::move(children)};
}

const NegativeDesign& PositiveDesign::child_at(unsigned bias) const {
  auto it = std::lower_bound(ram.begin(), ram.end(), bias);
  if (it == ram.end() || *it != bias) throw std::out_of_range("bias not in ramification");
  return children[static_cast<std::size_t>(it - ram.begin())];
}

const PositiveDesign* NegativeDesign::branch(const Ramification& r) const {
  auto it = branches.find(r);
  return it == branches.end() ? nullptr : &it->second;
}

std::strong_ordering operator<=>(const PositiveDesign& a, const PositiveDesign& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.focus <=> b.focus; c != 0) return c;
  if (auto c = a.ram <=> b.ram; c != 0) return c;
  return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                b.children.end());
}

std::strong_ordering operator<=>(const NegativeDesign& a, const NegativeDesign& b) {
  if (auto c = a.focus <=> b.focus; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.branches.begin(), a.branches.end(), b.branches.begin(), b.branches.end(),
      [](const auto& x, const auto& y) {
        if (auto c = x.first <=> y.first; c != 0) return c;
        return x.second <=> y.second;
      });
}

PositiveDesign canonical(PositiveDesign d) {
  for (auto& c : d.children) c = canonical(std::move(c));
  return d;
}

NegativeDesign canonical(NegativeDesign d) {
  for (auto it = d.branches.begin(); it != d.branches.end();) {
    if (it->second.is_omega()) {
      it = d.branches.erase(it);
    } else {
      it->second = canonical(std::move(it->second));
      ++it;
    }
  }
  return d;
}

std::size_t size(const PositiveDesign& d) {
  std::size_t n = d.is_omega() ? 0 : 1;
  for (const auto& c : d.children) n += size(c);
  return n;
}

std::size_t size(const NegativeDesign& d) {
  std::size_t n = 0;
  for (const auto& [r, p] : d.branches) n += 1 + size(p);
  return n;
}

std::size_t depth(const PositiveDesign& d) {
  if (!d.is_proper()) return 0;
  std::size_t m = 0;
  for (const auto& c : d.children) m = std::max(m, depth(c));
  return 1 + m;
}

std::size_t depth(const NegativeDesign& d) {
  std::size_t m = 0;
  for (const auto& [r, p] : d.branches) m = std::max(m, depth(p));
  return m;
}

// ---------------------------------------------------------------- printing

std::string to_string(const NegativeDesign& d);

std::string to_string(const PositiveDesign& d) {
  switch (d.kind) {
    case PositiveDesign::Kind::Omega:
      return "omega";
    case PositiveDesign::Kind::Daimon:
      return "dai";
    case PositiveDesign::Kind::Proper:
      break;
  }
  std::string s = "(+ " + address_to_string(d.focus) + " " + ramification_to_string(d.ram);
  for (const auto& c : d.children) s += " " + to_string(c);
  return s + ")";
}

std::string to_string(const NegativeDesign& d) {
  std::string s = "(- " + address_to_string(d.focus);
  for (const auto& [r, p] : d.branches) s += " (" + ramification_to_string(r) + " -> " + to_string(p) + ")";
  return s + ")";
}

std::string to_string(const Design& d) {
  return std::visit([](const auto& x) { return to_string(x); }, d);
}

// ---------------------------------------------------------------- parsing

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view t) : text_(t) {}

  struct Token {
    std::string text;
    std::size_t line, column;
  };

  Token peek() {
    if (!ahead_) ahead_ = next();
    return *ahead_;
  }
  Token take() {
    Token t = peek();
    ahead_.reset();
    return t;
  }
  void expect(const std::string& s) {
    auto t = take();
    if (t.text != s) fail(t, "expected '" + s + "'" + (t.text.empty() ? "" : " but found '" + t.text + "'"));
  }
  bool at_end() { return peek().text.empty(); }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }

 private:
  Token next() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        advance();
      } else {
        break;
      }
    }
    Token t{"", line_, col_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance(), advance();
      t.text = "->";
      return t;
    }
    if (std::string_view("(){}+-;=@\\").find(c) != std::string_view::npos) {
      advance();
      t.text = std::string(1, c);
      return t;
    }
    if (text_.substr(pos_, 3) == "\xE2\x8A\xA2") {  // ⊢
      pos_ += 3, ++col_;
      t.text = "|-";
      return t;
    }
    if (c == '|' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      advance(), advance();
      t.text = "|-";
      return t;
    }
    if (c == '|') {
      advance();
      t.text = "|";
      return t;
    }
    while (pos_ < text_.size()) {
      unsigned char d = static_cast<unsigned char>(text_[pos_]);
      if (std::isalnum(d) || d == '.' || d == '_' || d == ':' || d == '\'' || d >= 0x80) {
        if (d >= 0x80) {
          t.text += text_[pos_++];
        } else {
          t.text += static_cast<char>(d);
          advance();
        }
      } else {
        break;
      }
    }
    if (t.text.empty()) {
      t.text = std::string(1, c);
      fail(t, "unexpected character '" + t.text + "'");
    }
    return t;
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
  std::optional<Token> ahead_;
};

Address address_from_token(const Lexer::Token& t) {
  const std::string& s = t.text;
  if (s == "." || s == "e" || s == "\xCE\xB5") return {};
  Address a;
  std::size_t k = 0;
  while (k < s.size()) {
    std::size_t e = k;
    while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
    if (e == k) Lexer::fail(t, "malformed address '" + s + "'");
    a.push_back(static_cast<unsigned>(std::stoul(s.substr(k, e - k))));
    if (e < s.size() && s[e] != '.') Lexer::fail(t, "malformed address '" + s + "'");
    k = e + 1;
    if (e + 1 == s.size()) Lexer::fail(t, "malformed address '" + s + "'");
  }
  return a;
}

unsigned nat_from_token(const Lexer::Token& t) {
  if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    Lexer::fail(t, "expected a natural number");
  return static_cast<unsigned>(std::stoul(t.text));
}

Ramification read_ramification(Lexer& lx) {
  lx.expect("{");
  std::vector<unsigned> v;
  while (lx.peek().text != "}") {
    if (lx.at_end()) Lexer::fail(lx.peek(), "unterminated ramification");
    auto t = lx.take();
    v.push_back(nat_from_token(t));
  }
  lx.take();
  auto r = make_ramification(v);
  if (r.size() != v.size()) Lexer::fail(lx.peek(), "repeated bias in ramification");
  return r;
}

NegativeDesign read_negative(Lexer& lx);

PositiveDesign read_positive(Lexer& lx) {
  auto t = lx.take();
  if (t.text == "dai") return PositiveDesign::daimon();
  if (t.text == "omega") return PositiveDesign::omega();
  if (t.text != "(") Lexer::fail(t, "expected a positive design");
  lx.expect("+");
  Address focus = address_from_token(lx.take());
  Ramification r = read_ramification(lx);
  std::vector<NegativeDesign> children;
  while (lx.peek().text != ")") {
    auto at = lx.peek();
    children.push_back(read_negative(lx));
    std::size_t k = children.size() - 1;
    if (k >= r.size() || children[k].focus != child(focus, r[k]))
      Lexer::fail(at, "child does not match the ramification of " + address_to_string(focus));
  }
  lx.take();
  if (children.size() != r.size()) Lexer::fail(lx.peek(), "missing children");
  return PositiveDesign::proper(std::move(focus), std::move(r), std::move(children));
}

NegativeDesign read_negative(Lexer& lx) {
  lx.expect("(");
  lx.expect("-");
  NegativeDesign d;
  d.focus = address_from_token(lx.take());
  while (lx.peek().text != ")") {
    lx.expect("(");
    auto at = lx.peek();
    Ramification r = read_ramification(lx);
    lx.expect("->");
    PositiveDesign p = read_positive(lx);
    lx.expect(")");
    if (d.branches.count(r)) Lexer::fail(at, "repeated branch " + ramification_to_string(r));
    if (!p.is_omega()) d.branches.emplace(std::move(r), std::move(p));
  }
  lx.take();
  return d;
}

void expect_end(Lexer& lx) {
  if (!lx.at_end()) Lexer::fail(lx.peek(), "trailing input");
}

}  // namespace

Address parse_address(std::string_view text) {
  Lexer lx(text);
  auto a = address_from_token(lx.take());
  expect_end(lx);
  return a;
}

Ramification parse_ramification(std::string_view text) {
  Lexer lx(text);
  auto r = read_ramification(lx);
  expect_end(lx);
  return r;
}

PositiveDesign parse_positive(std::string_view text) {
  Lexer lx(text);
  auto d = read_positive(lx);
  expect_end(lx);
  return d;
}

NegativeDesign parse_negative(std::string_view text) {
  Lexer lx(text);
  auto d = read_negative(lx);
  expect_end(lx);
  return d;
}

Design parse_design(std::string_view text) {
  Lexer lx(text);
  auto t0 = lx.take();
  auto t1 = lx.peek();
  bool negative = t0.text == "(" && t1.text == "-";
  Lexer again(text);
  Design d = negative ? Design(read_negative(again)) : Design(read_positive(again));
  expect_end(again);
  return d;
}

// ---------------------------------------------------------------- bases

std::string to_string(const Base& b) {
  std::string s = b.left ? address_to_string(*b.left) + " |-" : "|-";
  bool first = true;
  for (const auto& a : b.right) {
    s += first ? " " : ", ";
    s += address_to_string(a);
    first = false;
  }
  return s;
}

Base parse_base(std::string_view text) {
  Lexer lx(text);
  Base b;
  if (lx.peek().text != "|-") b.left = address_from_token(lx.take());
  lx.expect("|-");
  while (!lx.at_end()) b.right.insert(address_from_token(lx.take()));
  return b;
}

bool well_formed(const Base& b) {
  std::vector<Address> all(b.right.begin(), b.right.end());
  if (b.left) all.push_back(*b.left);
  for (std::size_t x = 0; x < all.size(); ++x)
    for (std::size_t y = x + 1; y < all.size(); ++y)
      if (!disjoint(all[x], all[y])) return false;
  return true;
}

std::optional<std::string> parity_warning(const Base& b) {
  int seen = -1;
  for (const auto& a : b.right) {
    int p = static_cast<int>(a.size() % 2);
    if (seen >= 0 && p != seen) return "addresses of the right-hand side have mixed length parity";
    seen = p;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- base inference

namespace {

std::string chronicle_prefix(const std::vector<Action>& path) {
  if (path.empty()) return "root";
  std::string s;
  for (const auto& a : path) s += to_string(a);
  return s;
}

InferResult fail(const std::string& rule, const std::vector<Action>& path) {
  InferResult r;
  r.ok = false;
  r.rule = rule;
  r.where = chronicle_prefix(path);
  return r;
}

InferResult infer_pos(const PositiveDesign& d, const std::set<Address>& gamma, std::vector<Action>& path) {
  if (!d.is_proper()) {
    InferResult r;
    r.base.right = gamma;
    return r;
  }
  path.push_back({true, d.focus, d.ram});
  std::vector<std::set<Address>> per_child(d.ram.size());
  for (std::size_t k = 0; k < d.ram.size(); ++k) {
    const auto& c = d.children[k];
    Address ci = child(d.focus, d.ram[k]);
    if (c.focus != ci) return fail("malformed", path);
    for (const auto& [j, p] : c.branches) {
      path.push_back({false, ci, j});
      auto opened = star(ci, j);
      std::set<Address> g(opened.begin(), opened.end());
      auto sub = infer_pos(p, g, path);
      if (!sub.ok) return sub;
      for (const auto& a : sub.base.right)
        if (!g.count(a)) per_child[k].insert(a);
      path.pop_back();
    }
  }
  for (std::size_t x = 0; x < per_child.size(); ++x)
    for (std::size_t y = x + 1; y < per_child.size(); ++y)
      for (const auto& a : per_child[x])
        if (per_child[y].count(a)) return fail("affinity", path);
  InferResult r;
  std::set<Address> out = gamma;
  out.erase(d.focus);
  for (const auto& s : per_child) {
    if (s.count(d.focus)) return fail("ill-formed", path);
    out.insert(s.begin(), s.end());
  }
  Base check;
  check.right = out;
  check.right.insert(d.focus);
  for (const auto& a : out)
    if (!disjoint(a, d.focus)) return fail("ill-formed", path);
  if (!well_formed(check)) return fail("ill-formed", path);
  r.base = check;
  path.pop_back();
  return r;
}

}  // namespace

InferResult infer_base(const PositiveDesign& d, const std::set<Address>& gamma) {
  std::vector<Action> path;
  return infer_pos(d, gamma, path);
}

InferResult infer_base(const NegativeDesign& d, const std::set<Address>& gamma) {
  std::vector<Action> path;
  std::set<Address> lambda = gamma;
  for (const auto& [j, p] : d.branches) {
    path.assign(1, {false, d.focus, j});
    auto opened = star(d.focus, j);
    std::set<Address> g(opened.begin(), opened.end());
    auto sub = infer_pos(p, g, path);
    if (!sub.ok) return sub;
    for (const auto& a : sub.base.right)
      if (!g.count(a)) lambda.insert(a);
  }
  InferResult r;
  r.base.left = d.focus;
  r.base.right = lambda;
  if (!well_formed(r.base)) return fail("ill-formed", {});
  return r;
}

bool check_design(const Design& d, const Base& b) {
  if (!well_formed(b)) return false;
  if (const auto* p = std::get_if<PositiveDesign>(&d)) {
    if (b.negative() || p->is_omega()) return false;
    auto r = infer_base(*p, b.right);
    return r.ok && r.base.right == b.right;
  }
  const auto& n = std::get<NegativeDesign>(d);
  if (!b.negative() || *b.left != n.focus) return false;
  auto r = infer_base(n, b.right);
  return r.ok && r.base.right == b.right;
}

// ---------------------------------------------------------------- chronicles

std::string to_string(const Action& a) {
  return std::string("(") + (a.positive ? "+" : "-") + " " + address_to_string(a.focus) + " " +
         ramification_to_string(a.ram) + ")";
}

std::string to_string(const Chronicle& c) {
  std::string s;
  for (const auto& a : c.actions) {
    if (!s.empty()) s += ' ';
    s += to_string(a);
  }
  const char* tail = nullptr;
  switch (c.end) {
    case Chronicle::End::None:
      break;
    case Chronicle::End::Daimon:
      tail = "dai";
      break;
    case Chronicle::End::Omega:
      tail = "omega";
      break;
    case Chronicle::End::CreatedOmega:
      tail = "omega:created";
      break;
  }
  if (tail) s += s.empty() ? tail : std::string(" ") + tail;
  return s.empty() ? "()" : s;
}

Chronicle parse_chronicle(std::string_view text) {
  Lexer lx(text);
  Chronicle c;
  if (lx.peek().text == "(") {
    lx.take();
    if (lx.peek().text == ")") {
      lx.take();
      expect_end(lx);
      return c;
    }
    lx = Lexer(text);
  }
  while (!lx.at_end()) {
    auto t = lx.take();
    if (t.text == "dai" || t.text == "omega" || t.text == "omega:created") {
      c.end = t.text == "dai" ? Chronicle::End::Daimon
              : t.text == "omega" ? Chronicle::End::Omega
                                  : Chronicle::End::CreatedOmega;
      expect_end(lx);
      break;
    }
    if (t.text != "(") Lexer::fail(t, "expected an action");
    auto sign = lx.take();
    if (sign.text != "+" && sign.text != "-") Lexer::fail(sign, "expected + or -");
    Action a;
    a.positive = sign.text == "+";
    a.focus = address_from_token(lx.take());
    a.ram = read_ramification(lx);
    lx.expect(")");
    c.actions.push_back(std::move(a));
  }
  return c;
}

namespace {

void collect(const PositiveDesign& d, std::vector<Action>& prefix, std::set<Chronicle>& out) {
  if (d.is_omega()) return;
  if (d.is_daimon()) {
    out.insert({prefix, Chronicle::End::Daimon});
    return;
  }
  prefix.push_back({true, d.focus, d.ram});
  out.insert({prefix, Chronicle::End::None});
  for (const auto& c : d.children)
    for (const auto& [j, p] : c.branches) {
      prefix.push_back({false, c.focus, j});
      collect(p, prefix, out);
      prefix.pop_back();
    }
  prefix.pop_back();
}

}  // namespace

std::set<Chronicle> to_chronicles(const Design& d) {
  std::set<Chronicle> out;
  std::vector<Action> prefix;
  if (const auto* p = std::get_if<PositiveDesign>(&d)) {
    collect(*p, prefix, out);
  } else {
    const auto& n = std::get<NegativeDesign>(d);
    for (const auto& [j, p] : n.branches) {
      prefix.assign(1, {false, n.focus, j});
      collect(p, prefix, out);
    }
  }
  return out;
}

ChronicleError::ChronicleError(std::string c, const std::string& detail)
    : std::runtime_error(c + ": " + detail), condition(std::move(c)) {}

std::optional<std::string> chronicle_violation(const Chronicle& c, const Base& b) {
  const auto& acts = c.actions;
  std::set<Address> used;
  for (std::size_t k = 0; k < acts.size(); ++k) {
    const Action& a = acts[k];
    bool expect_positive = b.negative() ? k % 2 == 1 : k % 2 == 0;
    if (a.positive != expect_positive) return "alternation";
    if (make_ramification(a.ram) != a.ram) return "alternation";
    if (used.count(a.focus)) return "affinity";
    used.insert(a.focus);
    if (!a.positive) {
      if (k == 0) {
        if (a.focus != *b.left) return "focalization";
      } else {
        const Action& f = acts[k - 1];
        if (a.focus.size() != f.focus.size() + 1 || !is_prefix(f.focus, a.focus) ||
            !std::binary_search(f.ram.begin(), f.ram.end(), a.focus.back()))
          return "focalization";
      }
    } else {
      bool ok = b.right.count(a.focus) > 0;
      for (std::size_t m = 0; m < k && !ok; ++m) {
        const Action& n = acts[m];
        if (!n.positive && a.focus.size() == n.focus.size() + 1 && is_prefix(n.focus, a.focus) &&
            std::binary_search(n.ram.begin(), n.ram.end(), a.focus.back()))
          ok = true;
      }
      if (!ok) return "subaddress";
    }
  }
  switch (c.end) {
    case Chronicle::End::None:
      if (acts.empty() || !acts.back().positive) return "coherence";
      break;
    default:
      if (!acts.empty() && acts.back().positive) return "coherence";
      if (acts.empty() && b.negative()) return "coherence";
  }
  return std::nullopt;
}

namespace {

using Suffix = std::pair<const Chronicle*, std::size_t>;

PositiveDesign build_pos(const std::vector<Suffix>& items) {
  // All suffixes start at a positive position.
  std::optional<Action> head;
  bool dai = false;
  for (const auto& [c, k] : items) {
    if (k == c->actions.size()) {
      dai = true;
    } else if (!head) {
      head = c->actions[k];
    } else if (!(*head == c->actions[k])) {
      throw ChronicleError("coherence", "two positive actions after " +
                                            to_string(Chronicle{{c->actions.begin(), c->actions.begin() + k}, {}}));
    }
  }
  if (dai && head) throw ChronicleError("coherence", "daimon and a proper action at the same position");
  if (dai) return PositiveDesign::daimon();
  if (!head) return PositiveDesign::omega();
  std::vector<NegativeDesign> children;
  for (unsigned i : head->ram) children.push_back({child(head->focus, i), {}});
  std::map<std::pair<std::size_t, Ramification>, std::vector<Suffix>> groups;
  for (const auto& [c, k] : items) {
    if (k + 1 >= c->actions.size()) continue;
    const Action& n = c->actions[k + 1];
    std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(head->ram.begin(), head->ram.end(), n.focus.back()) - head->ram.begin());
    groups[{idx, n.ram}].push_back({c, k + 2});
  }
  for (auto& [key, sub] : groups) {
    auto p = build_pos(sub);
    if (!p.is_omega()) children[key.first].branches.emplace(key.second, std::move(p));
  }
  return PositiveDesign::proper(head->focus, head->ram, std::move(children));
}

}  // namespace

Design from_chronicles(const std::set<Chronicle>& cs, const Base& b) {
  std::vector<Suffix> items;
  for (const auto& c : cs) {
    if (c.end == Chronicle::End::Omega || c.end == Chronicle::End::CreatedOmega) continue;
    if (auto v = chronicle_violation(c, b)) throw ChronicleError(*v, to_string(c));
    items.push_back({&c, b.negative() ? 1 : 0});
  }
  Design d;
  if (b.negative()) {
    NegativeDesign n;
    n.focus = *b.left;
    std::map<Ramification, std::vector<Suffix>> groups;
    for (const auto& it : items) groups[it.first->actions[0].ram].push_back(it);
    for (auto& [j, sub] : groups) {
      auto p = build_pos(sub);
      if (!p.is_omega()) n.branches.emplace(j, std::move(p));
    }
    d = std::move(n);
  } else {
    d = build_pos(items);
    if (std::get<PositiveDesign>(d).is_omega()) return d;
  }
  auto r = std::visit([&](const auto& x) { return infer_base(x, b.right); }, d);
  if (!r.ok) throw ChronicleError(r.rule == "affinity" || r.rule == "ill-formed" ? "affinity" : r.rule, r.where);
  return d;
}

// ---------------------------------------------------------------- orders

namespace {

bool le(const PositiveDesign& a, const PositiveDesign& b, Order o);

bool le_neg(const NegativeDesign& a, const NegativeDesign& b, Order o) {
  if (a.focus != b.focus) return false;
  static const PositiveDesign om;
  auto ia = a.branches.begin();
  auto ib = b.branches.begin();
  while (ia != a.branches.end() || ib != b.branches.end()) {
    if (ib == b.branches.end() || (ia != a.branches.end() && ia->first < ib->first)) {
      if (!le(ia->second, om, o)) return false;
      ++ia;
    } else if (ia == a.branches.end() || ib->first < ia->first) {
      if (!le(om, ib->second, o)) return false;
      ++ib;
    } else {
      if (!le(ia->second, ib->second, o)) return false;
      ++ia, ++ib;
    }
  }
  return true;
}

bool le(const PositiveDesign& a, const PositiveDesign& b, Order o) {
  bool omega_axiom = o != Order::Left;
  bool daimon_axiom = o != Order::Right;
  if (a.is_omega() && (omega_axiom || b.is_omega() || (daimon_axiom && b.is_daimon()))) return true;
  if (b.is_daimon() && (daimon_axiom || a.is_daimon() || (omega_axiom && a.is_omega()))) return true;
  if (!a.is_proper() || !b.is_proper()) return a.kind == b.kind && !a.is_proper();
  if (a.focus != b.focus || a.ram != b.ram) return false;
  for (std::size_t k = 0; k < a.children.size(); ++k)
    if (!le_neg(a.children[k], b.children[k], o)) return false;
  return true;
}

void require_same_polarity(const Design& a, const Design& b) {
  if (a.index() != b.index()) throw std::invalid_argument("designs of different polarity");
  if (const auto* n = std::get_if<NegativeDesign>(&a))
    if (n->focus != std::get<NegativeDesign>(b).focus) throw std::invalid_argument("designs on different bases");
}

}  // namespace

bool compare(const PositiveDesign& a, const PositiveDesign& b, Order o) {
  if (o == Order::Stable) {
    auto ca = to_chronicles(a), cb = to_chronicles(b);
    return std::includes(cb.begin(), cb.end(), ca.begin(), ca.end());
  }
  return le(a, b, o);
}

bool compare(const Design& a, const Design& b, Order o) {
  require_same_polarity(a, b);
  if (o == Order::Stable) {
    auto ca = to_chronicles(a), cb = to_chronicles(b);
    return std::includes(cb.begin(), cb.end(), ca.begin(), ca.end());
  }
  if (const auto* p = std::get_if<PositiveDesign>(&a)) return le(*p, std::get<PositiveDesign>(b), o);
  return le_neg(std::get<NegativeDesign>(a), std::get<NegativeDesign>(b), o);
}

bool obs_by_chronicles(const Design& a, const Design& b) {
  require_same_polarity(a, b);
  // Ω at the root of a positive design has no chronicle but is below everything.
  auto ca = to_chronicles(a), cb = to_chronicles(b);
  for (const auto& c : ca) {
    const auto& acts = c.actions;
    bool resolved = false;
    for (std::size_t p = 0; p <= acts.size() && !resolved; ++p) {
      bool at_positive = (p == acts.size() || acts[p].positive) && (p == 0 || !acts[p - 1].positive);
      if (!at_positive) continue;
      std::vector<Action> q(acts.begin(), acts.begin() + static_cast<std::ptrdiff_t>(p));
      if (cb.count({q, Chronicle::End::Daimon})) {
        resolved = true;
        break;
      }
      if (p == acts.size()) return false;  // c ends with ✠ where b does not.
      q.push_back(acts[p]);
      if (!cb.count({q, Chronicle::End::None})) return false;
    }
  }
  return true;
}

bool compare_both(const Design& a, const Design& b) { return compare(a, b, Order::Left) && compare(a, b, Order::Right); }

namespace {

std::pair<PositiveDesign, PositiveDesign> dec(const PositiveDesign& a, const PositiveDesign& b);

std::pair<NegativeDesign, NegativeDesign> dec_neg(const NegativeDesign& a, const NegativeDesign& b) {
  std::pair<NegativeDesign, NegativeDesign> r{{a.focus, {}}, {a.focus, {}}};
  std::set<Ramification> keys;
  for (const auto& [j, p] : a.branches) keys.insert(j);
  for (const auto& [j, p] : b.branches) keys.insert(j);
  static const PositiveDesign om;
  for (const auto& j : keys) {
    const auto* pa = a.branch(j);
    const auto* pb = b.branch(j);
    auto [lo, hi] = dec(pa ? *pa : om, pb ? *pb : om);
    if (!lo.is_omega()) r.first.branches.emplace(j, std::move(lo));
    if (!hi.is_omega()) r.second.branches.emplace(j, std::move(hi));
  }
  return r;
}

std::pair<PositiveDesign, PositiveDesign> dec(const PositiveDesign& a, const PositiveDesign& b) {
  if (a.is_omega()) return {PositiveDesign::omega(), b.is_daimon() ? PositiveDesign::daimon() : PositiveDesign::omega()};
  if (b.is_daimon()) return {PositiveDesign::daimon(), PositiveDesign::daimon()};
  std::vector<NegativeDesign> lo, hi;
  for (std::size_t k = 0; k < a.children.size(); ++k) {
    auto [l, h] = dec_neg(a.children[k], b.children[k]);
    lo.push_back(std::move(l));
    hi.push_back(std::move(h));
  }
  return {PositiveDesign::proper(a.focus, a.ram, std::move(lo)), PositiveDesign::proper(a.focus, a.ram, std::move(hi))};
}

}  // namespace

Decomposition decompose(const Design& a, const Design& b) {
  if (!compare(a, b, Order::Obs)) throw std::invalid_argument("decompose needs the first design below the second");
  if (const auto* p = std::get_if<PositiveDesign>(&a)) {
    auto [lo, hi] = dec(*p, std::get<PositiveDesign>(b));
    return {lo, hi};
  }
  auto [lo, hi] = dec_neg(std::get<NegativeDesign>(a), std::get<NegativeDesign>(b));
  return {lo, hi};
}

// ---------------------------------------------------------------- named designs

const std::vector<Ramification>& Alphabet::at(std::size_t len) const {
  static const std::vector<Ramification> none;
  if (levels.empty()) return none;
  return levels[std::min(len, levels.size() - 1)];
}

std::string to_string(const Alphabet& a) {
  std::string s;
  for (std::size_t l = 0; l < a.levels.size(); ++l) {
    if (l) s += " | ";
    for (std::size_t k = 0; k < a.levels[l].size(); ++k) s += (k ? "," : "") + ramification_to_string(a.levels[l][k]);
  }
  return s;
}

Alphabet parse_alphabet(std::string_view text) {
  Lexer lx(text);
  Alphabet a;
  a.levels.emplace_back();
  while (!lx.at_end()) {
    if (lx.peek().text == "|") {
      lx.take();
      a.levels.emplace_back();
      continue;
    }
    auto r = read_ramification(lx);
    auto& lvl = a.levels.back();
    if (std::find(lvl.begin(), lvl.end(), r) == lvl.end()) lvl.push_back(r);
  }
  for (auto& lvl : a.levels) std::sort(lvl.begin(), lvl.end());
  return a;
}

PositiveDesign dai() { return PositiveDesign::daimon(); }

NegativeDesign dai_minus(const Address& xi, const Alphabet& a) {
  NegativeDesign n{xi, {}};
  for (const auto& j : a.at(xi.size())) n.branches.emplace(j, PositiveDesign::daimon());
  return n;
}

NegativeDesign skunk(const Address& xi) { return {xi, {}}; }

PositiveDesign skunk_plus(const Address& xi, const Ramification& r) {
  std::vector<NegativeDesign> cs;
  for (unsigned i : r) cs.push_back(skunk(child(xi, i)));
  return PositiveDesign::proper(xi, r, std::move(cs));
}

PositiveDesign ram(const Address& xi, const Ramification& r, const Alphabet& a) {
  std::vector<NegativeDesign> cs;
  for (unsigned i : r) cs.push_back(dai_minus(child(xi, i), a));
  return PositiveDesign::proper(xi, r, std::move(cs));
}

NegativeDesign dir(const std::set<Ramification>& n) {
  NegativeDesign d{{}, {}};
  for (const auto& j : n) d.branches.emplace(j, PositiveDesign::daimon());
  return d;
}

NegativeDesign fax(const Address& xi, const Address& xi2, const Alphabet& a, std::size_t depth) {
  NegativeDesign n{xi, {}};
  if (depth == 0) return n;
  for (const auto& j : a.at(xi.size())) {
    std::vector<NegativeDesign> cs;
    for (unsigned i : j) cs.push_back(fax(child(xi2, i), child(xi, i), a, depth - 1));
    n.branches.emplace(j, PositiveDesign::proper(xi2, j, std::move(cs)));
  }
  return n;
}

namespace {

Address move_address(const Address& a, const Address& from, const Address& to) {
  if (!is_prefix(from, a)) return a;
  Address r = to;
  r.insert(r.end(), a.begin() + static_cast<std::ptrdiff_t>(from.size()), a.end());
  return r;
}

}  // namespace

PositiveDesign relocate(const PositiveDesign& d, const Address& from, const Address& to) {
  if (!d.is_proper()) return d;
  PositiveDesign r = d;
  r.focus = move_address(d.focus, from, to);
  for (auto& c : r.children) c = relocate(c, from, to);
  return r;
}

NegativeDesign relocate(const NegativeDesign& d, const Address& from, const Address& to) {
  NegativeDesign r{move_address(d.focus, from, to), {}};
  for (const auto& [j, p] : d.branches) r.branches.emplace(j, relocate(p, from, to));
  return r;
}

namespace {

bool slice_pos(const PositiveDesign& d);

bool slice_neg(const NegativeDesign& n) {
  if (n.branches.size() > 1) return false;
  for (const auto& [j, p] : n.branches)
    if (!slice_pos(p)) return false;
  return true;
}

bool slice_pos(const PositiveDesign& d) {
  for (const auto& c : d.children)
    if (!slice_neg(c)) return false;
  return true;
}

}  // namespace

bool is_slice(const Design& d) {
  if (const auto* p = std::get_if<PositiveDesign>(&d)) return slice_pos(*p);
  return slice_neg(std::get<NegativeDesign>(d));
}

}  // namespace locus::ludics
