#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace locus::mll {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
};

enum class Connective { Atom, DualAtom, Tensor, Par };

// Immutable MLL formula; subtrees are shared.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula dual_atom(std::string name);
  static Formula tensor(Formula a, Formula b);
  static Formula par(Formula a, Formula b);

  Connective kind() const;
  bool is_leaf() const { return kind() == Connective::Atom || kind() == Connective::DualAtom; }
  const std::string& name() const;
  const Formula& left() const;
  const Formula& right() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective kind;
  std::string name;
  std::optional<Formula> l, r;
  std::size_t size;
};

inline Connective Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline std::size_t Formula::size() const { return node_->size; }

Formula dual(const Formula& f);

// Words over {1,2}; the empty word is the root.
using Occurrence = std::string;

bool is_prefix(const Occurrence& p, const Occurrence& u);
bool disjoint(const Occurrence& a, const Occurrence& b);

// A/u, or nullopt when u walks off a leaf.
std::optional<Formula> subformula_at(const Formula& f, const Occurrence& u);

std::string to_string(const Formula& f);
Formula parse_formula(std::string_view text);
std::string occurrence_to_string(const Occurrence& u);

}  // namespace locus::mll
