#include "locus/mll/formula.hpp"

#include <cctype>

namespace locus::mll {

ParseError::ParseError(const std::string& what, std::size_t l, std::size_t c)
    : std::runtime_error(what + " at " + std::to_string(l) + ":" + std::to_string(c)),
      line(l),
      column(c) {}

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Connective::Atom, std::move(name), {}, {}, 1}));
}

Formula Formula::dual_atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Connective::DualAtom, std::move(name), {}, {}, 1}));
}

Formula Formula::tensor(Formula a, Formula b) {
  std::size_t s = a.size() + b.size() + 1;
  return Formula(std::make_shared<const Node>(Node{Connective::Tensor, {}, std::move(a), std::move(b), s}));
}

Formula Formula::par(Formula a, Formula b) {
  std::size_t s = a.size() + b.size() + 1;
  return Formula(std::make_shared<const Node>(Node{Connective::Par, {}, std::move(a), std::move(b), s}));
}

const Formula& Formula::left() const {
  if (!node_->l) throw std::logic_error("leaf formula has no children");
  return *node_->l;
}

const Formula& Formula::right() const {
  if (!node_->r) throw std::logic_error("leaf formula has no children");
  return *node_->r;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.is_leaf()) return a.name() == b.name();
  return a.left() == b.left() && a.right() == b.right();
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_leaf()) return a.name() <=> b.name();
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

Formula dual(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: return Formula::dual_atom(f.name());
    case Connective::DualAtom: return Formula::atom(f.name());
    case Connective::Tensor: return Formula::par(dual(f.left()), dual(f.right()));
    case Connective::Par: return Formula::tensor(dual(f.left()), dual(f.right()));
  }
  throw std::logic_error("bad connective");
}

bool is_prefix(const Occurrence& p, const Occurrence& u) {
  return p.size() <= u.size() && u.compare(0, p.size(), p) == 0;
}

bool disjoint(const Occurrence& a, const Occurrence& b) {
  return !is_prefix(a, b) && !is_prefix(b, a);
}

std::optional<Formula> subformula_at(const Formula& f, const Occurrence& u) {
  const Formula* cur = &f;
  for (char c : u) {
    if (cur->is_leaf()) return std::nullopt;
    if (c == '1') cur = &cur->left();
    else if (c == '2') cur = &cur->right();
    else return std::nullopt;
  }
  return *cur;
}

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: return f.name();
    case Connective::DualAtom: return f.name() + "^";
    case Connective::Tensor: return "(" + to_string(f.left()) + " * " + to_string(f.right()) + ")";
    case Connective::Par: return "(" + to_string(f.left()) + " % " + to_string(f.right()) + ")";
  }
  return {};
}

std::string occurrence_to_string(const Occurrence& u) { return u.empty() ? "." : u; }

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view s) : s_(s) {}

  Formula parse_all() {
    Formula f = parse();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  Formula parse() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of formula");
    Formula f = primary();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      f = dual(f);
      skip();
    }
    return f;
  }

  Formula primary() {
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Formula a = parse();
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '*' && s_[pos_] != '%')) fail("expected '*' or '%'");
      char op = s_[pos_++];
      Formula b = parse();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return op == '*' ? Formula::tensor(a, b) : Formula::par(a, b);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return Formula::atom(std::string(s_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, 1, pos_ + 1); }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse_all(); }

}  // namespace locus::mll
