#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locus/ludics/design.hpp"
#include "locus/ludics/engine.hpp"
#include "locus/ludics/random.hpp"

namespace locus::lambda {

using ludics::Address;
using ludics::Ramification;

struct NegTerm;

// P ::= (x·I){M_i} | Ω | ✠
struct PosTerm {
  enum class Kind { Omega, Daimon, App };
  Kind kind = Kind::Omega;
  std::string head;
  Ramification ram;
  // One argument per bias of ram, in the same order.
  std::vector<NegTerm> args;

  static PosTerm omega() { return {}; }
  static PosTerm daimon() { return {Kind::Daimon, {}, {}, {}}; }
  static PosTerm app(std::string head, Ramification ram, std::vector<NegTerm> args);

  friend bool operator==(const PosTerm&, const PosTerm&) = default;
};

struct Abstraction {
  // One binder per bias of the branch's ramification, in the same order.
  std::vector<std::string> vars;
  PosTerm body;

  friend bool operator==(const Abstraction&, const Abstraction&) = default;
};

// M ::= {J = λ{x_j}.P_J}; branches whose body is Ω are never stored.
struct NegTerm {
  std::map<Ramification, Abstraction> branches;

  friend bool operator==(const NegTerm&, const NegTerm&) = default;
};

// Text: `dai`, `omega`, `x{M1 M2}@{1,2}`, `\{x y}@{1,2}.P`, `{ {1} = \{x}.P ; {2} = \{y}.Q }`.
// The `@` suffixes may be dropped when the ramification is {1,...,n}.
std::string to_string(const PosTerm& t);
std::string to_string(const NegTerm& t);
PosTerm parse_pos_term(std::string_view text);
NegTerm parse_neg_term(std::string_view text);

bool is_slice(const NegTerm& t);
bool is_slice(const PosTerm& t);
std::size_t depth(const PosTerm& t);

// Each variable occurs at most once, counting additive branches by their maximum.
bool affine_check(const PosTerm& t);
bool affine_check(const NegTerm& t);

// Renames bound variables to a canonical sequence; free variables are kept.
PosTerm canonical_names(const PosTerm& t);
NegTerm canonical_names(const NegTerm& t);
bool alpha_equal(const PosTerm& a, const PosTerm& b);
bool alpha_equal(const NegTerm& a, const NegTerm& b);
// Renames a free variable (no capture check: `to` must not be bound in t).
PosTerm rename_free(const PosTerm& t, const std::string& from, const std::string& to);

// ---- designs ↔ terms ----

using Names = std::map<Address, std::string>;
using Addresses = std::map<std::string, Address>;

struct TranslationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bound variables get fresh names x1, x2, ... from a counter shared by one call.
PosTerm to_term(const ludics::PositiveDesign& d, const Names& free);
NegTerm to_term(const ludics::NegativeDesign& d, const Names& free);
// Throws TranslationError on an unbound variable; the result may still fail affinity (see typable).
ludics::PositiveDesign to_design(const PosTerm& t, const Addresses& free);
ludics::NegativeDesign to_design(const NegTerm& t, const Address& focus, const Addresses& free);

// The default name of an address in a base: ε is "a", 1.2 is "a1_2".
std::string address_name(const Address& a);
Names default_names(const ludics::Base& b);
Addresses default_addresses(const ludics::Base& b);

// Slice-only versions; throw TranslationError on a non-slice or untypable input.
PosTerm slice_to_term(const ludics::PositiveDesign& d, const ludics::Base& b);
NegTerm slice_to_term(const ludics::NegativeDesign& d, const ludics::Base& b);
ludics::PositiveDesign term_to_slice(const PosTerm& t, const ludics::Base& b);
ludics::NegativeDesign term_to_slice(const NegTerm& t, const ludics::Base& b);

// The term is typable when its translation over fresh addresses for its free variables passes
// base inference.
bool typable(const PosTerm& t);
bool typable(const NegTerm& t);

// ---- the environment machine ----

struct Closure;
using TermEnv = std::map<std::string, std::shared_ptr<const Closure>>;

// Either a negative term with its environment, or a free variable standing for itself.
struct Closure {
  const NegTerm* term = nullptr;
  TermEnv env;
  std::string free_name;
};

struct TermOutcome {
  ludics::Outcome::Kind kind = ludics::Outcome::Kind::SyntacticOmega;
  std::size_t steps = 0;
  // For Head: the variable, the ramification and the pending arguments with their environment.
  std::string head;
  Ramification ram;
  const PosTerm* code = nullptr;
  TermEnv env;
};

// A variable bound nowhere stops the machine with Head. Closures keep the whole environment,
// so the machine is not restricted to affine terms.
TermOutcome machine_run(const PosTerm& p, const TermEnv& env, std::size_t fuel = ludics::unlimited);
TermEnv bind(const std::string& x, const NegTerm& m, const TermEnv& env = {});

// Strong normalization: relaunches the machine under every argument and binder.
// Returns nullopt when fuel runs out.
std::optional<PosTerm> normalize(const PosTerm& p, const TermEnv& env, std::size_t fuel = 100000);

// Fax_{ξ, x:ξ′} cut down to the given depth, with ramifications from the alphabet at ξ's lengths.
NegTerm fax_term(const std::string& x, const Address& xi, const ludics::Alphabet& a, std::size_t depth);

// Random positive term over the free variables (name, address length). Heads are drawn from every
// variable in scope, so the result may use a variable more than once.
PosTerm random_term(ludics::Rng& rng, const std::vector<std::pair<std::string, std::size_t>>& free,
                    const ludics::RandomDesignOptions& o);

}  // namespace locus::lambda
