#include "locus/mll/structure.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace locus::mll {

void ParaproofStructure::canonicalize() {
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::sort(classes.begin(), classes.end());
  for (auto& c : cuts)
    if (c.first > c.second) std::swap(c.first, c.second);
  std::sort(cuts.begin(), cuts.end());
}

bool ParaproofStructure::is_cut(std::size_t tree) const {
  for (const auto& [a, b] : cuts)
    if (a == tree || b == tree) return true;
  return false;
}

std::vector<std::size_t> ParaproofStructure::conclusions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trees.size(); ++i)
    if (!is_cut(i)) out.push_back(i);
  return out;
}

std::vector<LeafRef> ParaproofStructure::leaves() const {
  std::vector<LeafRef> out;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (const auto& u : trees[i].leaves) out.push_back({i, u});
  return out;
}

std::size_t ParaproofStructure::class_of(const LeafRef& leaf) const {
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (std::find(classes[k].begin(), classes[k].end(), leaf) != classes[k].end()) return k;
  return npos;
}

Formula ParaproofStructure::leaf_formula(const LeafRef& leaf) const {
  return *subformula_at(trees.at(leaf.tree).formula, leaf.occ);
}

namespace {

Diagnostic fail(std::string rule, std::string detail) { return {false, std::move(rule), std::move(detail)}; }

std::string leaf_name(const LeafRef& l) { return std::to_string(l.tree) + ":" + occurrence_to_string(l.occ); }

bool covers_at(const Formula& f, const Occurrence& at, const std::set<Occurrence>& leaves) {
  if (leaves.count(at)) return true;
  if (f.is_leaf()) return false;
  return covers_at(f.left(), at + "1", leaves) && covers_at(f.right(), at + "2", leaves);
}

}  // namespace

bool covers_formula(const Formula& f, const std::set<Occurrence>& leaves) { return covers_at(f, "", leaves); }

Diagnostic validate_structure(const ParaproofStructure& s, Mode mode) {
  for (std::size_t i = 0; i < s.trees.size(); ++i) {
    const auto& t = s.trees[i];
    if (t.leaves.empty()) return fail("empty-leaf-set", "tree " + std::to_string(i));
    for (const auto& u : t.leaves) {
      if (!subformula_at(t.formula, u))
        return fail("undefined-occurrence", leaf_name({i, u}));
      for (const auto& v : t.leaves)
        if (u != v && is_prefix(u, v))
          return fail("leaf-overlap", leaf_name({i, u}) + " is a prefix of " + leaf_name({i, v}));
    }
    if (!covers_formula(t.formula, t.leaves)) return fail("incomplete-frontier", "tree " + std::to_string(i));
  }

  std::map<LeafRef, std::size_t> owner;
  for (std::size_t k = 0; k < s.classes.size(); ++k) {
    if (s.classes[k].empty()) return fail("empty-class", "class " + std::to_string(k));
    for (const auto& l : s.classes[k]) {
      if (l.tree >= s.trees.size() || !s.trees[l.tree].leaves.count(l.occ))
        return fail("unknown-leaf", leaf_name(l));
      if (!owner.emplace(l, k).second) return fail("overlap", leaf_name(l) + " lies in two classes");
    }
  }
  for (const auto& l : s.leaves())
    if (!owner.count(l)) return fail("coverage", leaf_name(l) + " is in no class");

  std::vector<int> cut_count(s.trees.size(), 0);
  for (const auto& [a, b] : s.cuts) {
    if (a >= s.trees.size() || b >= s.trees.size())
      return fail("cut-range", "{" + std::to_string(a) + "," + std::to_string(b) + "}");
    if (a == b) return fail("cut-self", "tree " + std::to_string(a));
    if (++cut_count[a] > 1 || ++cut_count[b] > 1)
      return fail("cut-multiplicity", "{" + std::to_string(a) + "," + std::to_string(b) + "}");
    if (!(s.trees[a].formula == dual(s.trees[b].formula)))
      return fail("cut-duality", "{" + std::to_string(a) + "," + std::to_string(b) + "}");
  }

  if (mode == Mode::Proof) {
    for (std::size_t k = 0; k < s.classes.size(); ++k) {
      const auto& c = s.classes[k];
      if (c.size() != 2 || !(s.leaf_formula(c[0]) == dual(s.leaf_formula(c[1]))))
        return fail("axiom-shape", "class " + std::to_string(k) + " is not a dual pair");
    }
  }
  return {};
}

std::size_t count_leaves(const ParaproofStructure& s) {
  std::size_t n = 0;
  for (const auto& t : s.trees) n += t.leaves.size();
  return n;
}

std::size_t count_par_nodes(const ParaproofStructure& s) {
  std::size_t n = 0;
  for (const auto& t : s.trees) {
    std::set<Occurrence> internal;
    for (const auto& u : t.leaves)
      for (std::size_t k = 0; k < u.size(); ++k) internal.insert(u.substr(0, k));
    for (const auto& v : internal)
      if (subformula_at(t.formula, v)->kind() == Connective::Par) ++n;
  }
  return n;
}

std::string to_string(const ParaproofStructure& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.trees.size(); ++i) {
    out << "tree " << i << ": " << to_string(s.trees[i].formula) << " @ {";
    bool first = true;
    for (const auto& u : s.trees[i].leaves) {
      out << (first ? "" : ", ") << occurrence_to_string(u);
      first = false;
    }
    out << "}\n";
  }
  for (const auto& c : s.classes) {
    out << "class {";
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? ", " : "") << leaf_name(c[k]);
    out << "}\n";
  }
  for (const auto& [a, b] : s.cuts) out << "cut {" << a << "," << b << "}\n";
  return out.str();
}

namespace {

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t lineno) : s_(line), line_(lineno) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  void expect(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) fail("expected '" + std::string(tok) + "'");
    pos_ += tok.size();
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  std::size_t number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(s_.substr(start, pos_ - start)));
  }
  Occurrence occurrence() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      return {};
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (s_[pos_] == '1' || s_[pos_] == '2')) ++pos_;
    if (start == pos_) fail("expected an occurrence");
    return Occurrence(s_.substr(start, pos_ - start));
  }
  std::string_view until(char c) {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != c) ++pos_;
    if (pos_ >= s_.size()) fail(std::string("expected '") + c + "'");
    return s_.substr(start, pos_ - start);
  }
  bool starts_with(std::string_view word) {
    skip();
    return s_.substr(pos_).starts_with(word);
  }
  std::size_t column() const { return pos_ + 1; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, pos_ + 1); }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

ParaproofStructure parse_structure(std::string_view text) {
  ParaproofStructure s;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineno;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineReader r(line, lineno);
    if (r.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    if (r.starts_with("tree")) {
      r.expect("tree");
      std::size_t idx = r.number();
      if (idx != s.trees.size()) r.fail("tree indices must be consecutive from 0");
      r.expect(":");
      std::size_t col = r.column();
      std::string_view ftext = r.until('@');
      Formula f = [&] {
        try {
          return parse_formula(ftext);
        } catch (const ParseError& e) {
          throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")), lineno,
                           col + e.column - 1);
        }
      }();
      r.expect("@");
      r.expect("{");
      std::set<Occurrence> leaves;
      if (!r.peek('}')) {
        while (true) {
          leaves.insert(r.occurrence());
          if (r.peek(',')) {
            r.expect(",");
            continue;
          }
          break;
        }
      }
      r.expect("}");
      s.trees.push_back({f, leaves});
    } else if (r.starts_with("class")) {
      r.expect("class");
      r.expect("{");
      LeafClass c;
      if (!r.peek('}')) {
        while (true) {
          std::size_t t = r.number();
          r.expect(":");
          c.push_back({t, r.occurrence()});
          if (r.peek(',')) {
            r.expect(",");
            continue;
          }
          break;
        }
      }
      r.expect("}");
      s.classes.push_back(std::move(c));
    } else if (r.starts_with("cut")) {
      r.expect("cut");
      r.expect("{");
      std::size_t a = r.number();
      r.expect(",");
      std::size_t b = r.number();
      r.expect("}");
      s.cuts.push_back({a, b});
    } else {
      r.fail("expected 'tree', 'class' or 'cut'");
    }
    if (!r.at_end()) r.fail("trailing input");
    if (end == text.size()) break;
  }
  s.canonicalize();
  return s;
}

}  // namespace locus::mll
