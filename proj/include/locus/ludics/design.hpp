#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "locus/mll/formula.hpp"

namespace locus::ludics {

using mll::ParseError;

// A locus: a word of naturals. The empty word is the root ε.
using Address = std::vector<unsigned>;
// A finite set of biases, kept sorted and duplicate-free.
using Ramification = std::vector<unsigned>;

Address child(const Address& a, unsigned i);
bool is_prefix(const Address& p, const Address& a);
// Neither address is a prefix of the other.
bool disjoint(const Address& a, const Address& b);
std::vector<Address> star(const Address& a, const Ramification& r);
Ramification make_ramification(std::vector<unsigned> biases);

std::string address_to_string(const Address& a);
std::string ramification_to_string(const Ramification& r);
Address parse_address(std::string_view text);
Ramification parse_ramification(std::string_view text);

struct NegativeDesign;

struct PositiveDesign {
  enum class Kind { Omega, Daimon, Proper };
  Kind kind = Kind::Omega;
  Address focus;
  Ramification ram;
  // One child per bias of ram, in the same order; child k is based on focus·ram[k].
  std::vector<NegativeDesign> children;

  static PositiveDesign omega() { return {}; }
  static PositiveDesign daimon() { return {Kind::Daimon, {}, {}, {}}; }
  static PositiveDesign proper(Address focus, Ramification ram, std::vector<NegativeDesign> children);

  bool is_omega() const { return kind == Kind::Omega; }
  bool is_daimon() const { return kind == Kind::Daimon; }
  bool is_proper() const { return kind == Kind::Proper; }
  const NegativeDesign& child_at(unsigned bias) const;

  friend bool operator==(const PositiveDesign&, const PositiveDesign&) = default;
  friend std::strong_ordering operator<=>(const PositiveDesign&, const PositiveDesign&);
};

struct NegativeDesign {
  Address focus;
  // Absent ramifications denote Ω; stored branches are never Ω.
  std::map<Ramification, PositiveDesign> branches;

  const PositiveDesign* branch(const Ramification& r) const;

  friend bool operator==(const NegativeDesign&, const NegativeDesign&) = default;
  friend std::strong_ordering operator<=>(const NegativeDesign&, const NegativeDesign&);
};

using Design = std::variant<PositiveDesign, NegativeDesign>;

// Drops Ω branches recursively.
PositiveDesign canonical(PositiveDesign d);
NegativeDesign canonical(NegativeDesign d);

std::size_t size(const PositiveDesign& d);
std::size_t size(const NegativeDesign& d);
// Number of proper positive layers on the longest branch.
std::size_t depth(const PositiveDesign& d);
std::size_t depth(const NegativeDesign& d);

// ---- text format ----

std::string to_string(const PositiveDesign& d);
std::string to_string(const NegativeDesign& d);
std::string to_string(const Design& d);
PositiveDesign parse_positive(std::string_view text);
NegativeDesign parse_negative(std::string_view text);
Design parse_design(std::string_view text);

// ---- bases and typing ----

struct Base {
  // Present for a negative base ξ ⊢ Λ.
  std::optional<Address> left;
  std::set<Address> right;

  bool negative() const { return left.has_value(); }
  friend bool operator==(const Base&, const Base&) = default;
};

std::string to_string(const Base& b);
Base parse_base(std::string_view text);
bool well_formed(const Base& b);
// Addresses of Λ whose lengths have different parities; empty when homogeneous.
std::optional<std::string> parity_warning(const Base& b);

struct InferResult {
  bool ok = true;
  Base base;
  // Innermost failing rule ("affinity", "ill-formed" or "malformed"); failures propagate unchanged.
  std::string rule;
  // Chronicle prefix leading to the failing node.
  std::string where;
};

InferResult infer_base(const PositiveDesign& d, const std::set<Address>& gamma = {});
InferResult infer_base(const NegativeDesign& d, const std::set<Address>& gamma = {});
bool check_design(const Design& d, const Base& b);

// ---- chronicles ----

struct Action {
  bool positive = true;
  Address focus;
  Ramification ram;

  friend bool operator==(const Action&, const Action&) = default;
  friend std::strong_ordering operator<=>(const Action&, const Action&) = default;
};

struct Chronicle {
  enum class End { None, Daimon, Omega, CreatedOmega };
  std::vector<Action> actions;
  End end = End::None;

  friend bool operator==(const Chronicle&, const Chronicle&) = default;
  friend std::strong_ordering operator<=>(const Chronicle&, const Chronicle&) = default;
};

std::string to_string(const Action& a);
std::string to_string(const Chronicle& c);
Chronicle parse_chronicle(std::string_view text);

std::set<Chronicle> to_chronicles(const Design& d);

struct ChronicleError : std::runtime_error {
  ChronicleError(std::string condition, const std::string& detail);
  std::string condition;  // coherence, focalization, subaddress, affinity, alternation
};

// Checks a single chronicle against the base (alternation, focalization, subaddress).
std::optional<std::string> chronicle_violation(const Chronicle& c, const Base& b);
// Rebuilds the design; throws ChronicleError naming the violated condition.
Design from_chronicles(const std::set<Chronicle>& cs, const Base& b);

// ---- orders ----

enum class Order { Obs, Left, Right, Stable };

bool compare(const Design& a, const Design& b, Order o);
bool compare(const PositiveDesign& a, const PositiveDesign& b, Order o);
// The characterization by divergence after negative actions, on chronicle sets.
bool obs_by_chronicles(const Design& a, const Design& b);

struct Decomposition {
  Design min;
  Design max;
};
// Requires compare(a, b, Obs); throws std::invalid_argument otherwise.
Decomposition decompose(const Design& a, const Design& b);
// ≤ᴸ ∩ ≤ᴿ.
bool compare_both(const Design& a, const Design& b);

// ---- named designs ----

// Ramifications offered at each address length; the last entry repeats.
struct Alphabet {
  std::vector<std::vector<Ramification>> levels;

  Alphabet() = default;
  explicit Alphabet(std::vector<Ramification> flat) : levels{std::move(flat)} {}
  explicit Alphabet(std::vector<std::vector<Ramification>> l) : levels(std::move(l)) {}
  const std::vector<Ramification>& at(std::size_t address_length) const;
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

std::string to_string(const Alphabet& a);
// "{1},{2}" for a flat alphabet; levels separated by '|'.
Alphabet parse_alphabet(std::string_view text);

PositiveDesign dai();
NegativeDesign dai_minus(const Address& xi, const Alphabet& a);
NegativeDesign skunk(const Address& xi);
PositiveDesign skunk_plus(const Address& xi, const Ramification& r);
PositiveDesign ram(const Address& xi, const Ramification& r, const Alphabet& a);
NegativeDesign dir(const std::set<Ramification>& n);
// Depth-bounded approximant of the fax on ξ ⊢ ξ′; depth 0 is the skunk.
NegativeDesign fax(const Address& xi, const Address& xi2, const Alphabet& a, std::size_t depth);

// Address relabeling applied action-wise.
PositiveDesign relocate(const PositiveDesign& d, const Address& from, const Address& to);
NegativeDesign relocate(const NegativeDesign& d, const Address& from, const Address& to);

bool is_slice(const Design& d);

}  // namespace locus::ludics
