#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "locus/ludics/design.hpp"

namespace locus::ludics {

struct Net {
  PositiveDesign principal;
  Base principal_base;
  std::vector<NegativeDesign> partners;
  std::vector<Base> partner_bases;
};

// Bases are the inferred minimal ones; throws std::invalid_argument when a design is untypable.
Net make_net(PositiveDesign principal, std::vector<NegativeDesign> partners);

struct NetVerdict {
  bool ok = true;
  // "typing", "disjointness", "multiplicity", "cut-sides" or "acyclicity".
  std::string condition;
  std::string detail;
  // Uncut right-hand addresses of the principal component.
  Base type;
  // Partners outside the principal component.
  std::vector<std::size_t> unreachable;
};

NetVerdict validate_net(const Net& n);

// Partners available to the machine, keyed by their left address. Pointers stay owned by the net.
using Env = std::map<Address, const NegativeDesign*>;

struct Outcome {
  enum class Kind { Daimon, CreatedOmega, SyntacticOmega, Head };
  Kind kind = Kind::SyntacticOmega;
  std::size_t steps = 0;
  // For Head: the unaccepted focus and ramification, plus the residual state.
  Address focus;
  Ramification ram;
  const PositiveDesign* code = nullptr;
  Env env;
  // One entry per (R) application when tracing is on.
  std::vector<std::string> trace;
};

std::string to_string(Outcome::Kind k);

inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

struct RunOptions {
  std::size_t fuel = unlimited;
  bool trace = false;
  // Uses the alternating variant of rule (R).
  bool alternating = false;
  // Re-infers the state's type after every step and checks it stays within the declared one.
  // Ignored by the alternating variant, whose environment holds only part of the partners.
  bool verify_types = false;
};

Env initial_env(const Net& n);
Outcome weak_run(const Net& n, const RunOptions& o = {});
Outcome run_state(const PositiveDesign* code, Env env, const RunOptions& o = {});

struct FrontierPolicy {
  // Maximum number of (S) steps along a branch.
  std::size_t depth = unlimited;
  // Extra ramifications offered besides the ones stored in the design.
  std::optional<Alphabet> alphabet;
  std::size_t fuel = unlimited;
};

struct NormalForm {
  std::set<Chronicle> chronicles;
  // The same normal form as a design on the net's type (Ω of both sorts dropped).
  PositiveDesign design;
  bool truncated = false;
};

NormalForm strong_normalize(const Net& n, const FrontierPolicy& p = {});
// The normal form as a design, exploring the stored support only.
PositiveDesign normal_form(const Net& n);
// ⟦φ, Ψ⟧ = ✠ for a closed net.
bool orthogonal(const PositiveDesign& phi, const NegativeDesign& psi);
bool orthogonal(const PositiveDesign& phi, const std::vector<NegativeDesign>& psis);

// ---- token machine ----

struct OccStep {
  enum class Kind { Bias, Ram, Son };
  Kind kind = Kind::Son;
  unsigned bias = 0;
  Ramification ram;

  friend bool operator==(const OccStep&, const OccStep&) = default;
  friend std::strong_ordering operator<=>(const OccStep&, const OccStep&) = default;
};

using Occurrence = std::vector<OccStep>;
std::string to_string(const Occurrence& u);

struct TokenPosition {
  bool right = false;
  Occurrence occ;

  friend bool operator==(const TokenPosition&, const TokenPosition&) = default;
};

std::string to_string(const TokenPosition& p);

struct TokenResult {
  std::vector<TokenPosition> trace;
  Outcome::Kind outcome = Outcome::Kind::SyntacticOmega;
  std::set<Occurrence> visited_left, visited_right;
  std::vector<std::pair<Occurrence, Occurrence>> bindings;
  // Positions reached twice or bound twice; the single-visit property says this stays zero.
  std::size_t revisits = 0;
  PositiveDesign pullback_left;
  NegativeDesign pullback_right;
};

// φ on ⊢ξ against ψ on ξ⊢.
TokenResult token_run(const PositiveDesign& phi, const NegativeDesign& psi);

// ---- views and separation (designs on ⊢ε or ε⊢) ----

std::vector<Action> view(const std::vector<Action>& r);
// Opp_r for a chronicle ending with a positive action, Opp_q for one ending with a negative action
// (or empty, in which case the result is the skunk).
Design opp(const std::vector<Action>& r);
std::optional<Design> separation_witness(const Design& a, const Design& b);

}  // namespace locus::ludics
