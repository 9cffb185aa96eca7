#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locus/mll/derivation.hpp"
#include "locus/mll/structure.hpp"

namespace locus::mll {

// Parse states are structures whose classes may become empty once a cut between
// two isolated leaves is merged away; an empty class still counts as one component.
enum class ParseRule { Par, Tensor, Cut, MixPar };

struct ParseStep {
  ParseRule rule = ParseRule::Par;
  std::size_t tree = 0;   // Par/Tensor/MixPar: tree of the contracted node; Cut: first tree
  Occurrence occ;         // contracted node
  std::size_t other = 0;  // Cut: second tree
};

std::string to_string(const ParseStep& step);

// Mix adds the rule contracting a ⅋ whose two premises lie in distinct classes.
std::vector<std::pair<ParseStep, ParaproofStructure>> parse_redexes(const ParaproofStructure& s, bool mix = false);
ParaproofStructure apply_parse_step(const ParaproofStructure& s, const ParseStep& step);
bool is_parse_terminal(const ParaproofStructure& s, bool mix = false);

enum class ParseMode { Weak, Strong };

struct ParseOptions {
  bool mix = false;
  std::size_t max_states = 500000;
};

struct ParseVerdict {
  bool accepted = false;
  std::vector<ParseStep> trace;      // weak: a path to the terminal state
  std::optional<ParaproofStructure> stuck;  // a reachable normal state that is not terminal
  std::size_t explored = 0;
};

ParseVerdict check_parsing(const ParaproofStructure& s, ParseMode mode, const ParseOptions& opts = {});

struct Sequentialization {
  bool ok = false;
  DerivationPtr derivation;
  std::vector<ParseStep> trace;
};

Sequentialization sequentialize(const ParaproofStructure& s, bool allow_mix = false, std::size_t max_states = 500000);

struct CutElimination {
  ParaproofStructure result;
  std::vector<ParaproofStructure> steps;  // every intermediate state, input first, result last
  std::vector<std::string> rules;         // rule applied between consecutive steps
};

// One reduction of the first cut; nullopt when cut-free.
std::optional<std::pair<std::string, ParaproofStructure>> cut_step(const ParaproofStructure& s);
CutElimination cut_normalize(const ParaproofStructure& s, bool trace = false);

}  // namespace locus::mll
