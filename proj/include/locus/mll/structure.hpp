#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locus/mll/formula.hpp"

namespace locus::mll {

struct PartialFormulaTree {
  Formula formula;
  std::set<Occurrence> leaves;

  friend bool operator==(const PartialFormulaTree&, const PartialFormulaTree&) = default;
};

struct LeafRef {
  std::size_t tree = 0;
  Occurrence occ;

  friend bool operator==(const LeafRef&, const LeafRef&) = default;
  friend std::strong_ordering operator<=>(const LeafRef&, const LeafRef&) = default;
};

using LeafClass = std::vector<LeafRef>;
using Partition = std::vector<LeafClass>;
using CutPair = std::pair<std::size_t, std::size_t>;

enum class Mode { Paraproof, Proof };

struct ParaproofStructure {
  std::vector<PartialFormulaTree> trees;
  Partition classes;
  std::vector<CutPair> cuts;

  // Sorts every class, the class list and the cut list.
  void canonicalize();
  std::vector<std::size_t> conclusions() const;
  std::vector<LeafRef> leaves() const;
  bool is_cut(std::size_t tree) const;
  // Index of the class holding the leaf, or npos.
  std::size_t class_of(const LeafRef& leaf) const;
  Formula leaf_formula(const LeafRef& leaf) const;

  friend bool operator==(const ParaproofStructure&, const ParaproofStructure&) = default;
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Diagnostic {
  bool ok = true;
  std::string rule;
  std::string detail;
};

Diagnostic validate_structure(const ParaproofStructure& s, Mode mode);

// True when every root-to-atom path of the formula meets the leaf set.
bool covers_formula(const Formula& f, const std::set<Occurrence>& leaves);

std::string to_string(const ParaproofStructure& s);
ParaproofStructure parse_structure(std::string_view text);

std::size_t count_par_nodes(const ParaproofStructure& s);
std::size_t count_leaves(const ParaproofStructure& s);

}  // namespace locus::mll
