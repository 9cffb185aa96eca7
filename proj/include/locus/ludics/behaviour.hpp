#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "locus/ludics/design.hpp"

namespace locus::ludics {

// Finite stand-in for "all designs": canonical designs on ⊢ε and on ε⊢ whose ramifications come
// from the alphabet and whose depth is at most `depth`. Membership computed inside a universe may
// overapproximate membership in the true behaviour.
struct Universe {
  Alphabet alphabet;
  std::size_t depth = 1;
  // Largest enumeration allowed per polarity; exceeding it throws mll::GuardError.
  std::size_t cap = 200000;
};

std::string to_string(const Universe& u);

std::vector<PositiveDesign> enumerate_positive(const Universe& u);
std::vector<NegativeDesign> enumerate_negative(const Universe& u);

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  static Bits all(std::size_t n);

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t count() const;
  bool subset_of(const Bits& o) const;
  Bits& operator&=(const Bits& o);
  Bits& operator|=(const Bits& o);
  std::vector<std::size_t> indices() const;

  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

enum class Schedule { Parallel, Serial };

// Both enumerations of a universe and their orthogonality matrix.
class Space {
 public:
  static std::shared_ptr<const Space> make(Universe u, Schedule s = Schedule::Parallel);

  const Universe& universe() const { return u_; }
  const std::vector<PositiveDesign>& positives() const { return pos_; }
  const std::vector<NegativeDesign>& negatives() const { return neg_; }
  // Row p: the negatives orthogonal to positive p.
  const Bits& row(std::size_t p) const { return rows_[p]; }
  bool orthogonal(std::size_t p, std::size_t n) const { return rows_[p].test(n); }
  std::optional<std::size_t> index_of(const PositiveDesign& d) const;
  std::optional<std::size_t> index_of(const NegativeDesign& d) const;

 private:
  Universe u_;
  std::vector<PositiveDesign> pos_;
  std::vector<NegativeDesign> neg_;
  std::map<PositiveDesign, std::size_t> pos_index_;
  std::map<NegativeDesign, std::size_t> neg_index_;
  std::vector<Bits> rows_;
};

// Sets of designs of one polarity inside a space. Results of ⊥ are always behaviours.
struct Behaviour {
  std::shared_ptr<const Space> space;
  bool positive = true;
  Bits members;
  // Provenance: the set this was computed from.
  std::vector<Design> generators;

  std::size_t size() const { return members.count(); }
  bool contains(const Design& d) const;
  std::vector<Design> designs() const;
};

// Throws std::invalid_argument when a design is outside the universe or has the wrong polarity.
Bits index_set(const Space& s, bool positive, const std::vector<Design>& a);

// A⊥ for A of the given polarity (A may be empty).
Behaviour orthogonal_set(const std::shared_ptr<const Space>& s, bool positive, const std::vector<Design>& a);
Behaviour orthogonal(const Behaviour& g);
Behaviour biorthogonal(const std::shared_ptr<const Space>& s, bool positive, const std::vector<Design>& a);
bool is_closed(const Behaviour& g);
// Matrix-free reference for A⊥, running the machine on every pair.
Bits orthogonal_reference(const Space& s, bool positive, const Bits& a);

// Union of the parts of d visited against each member of G⊥ (token machine).
Design incarnation(const Design& d, const Behaviour& g);
// The least sub-design of d lying in G, found by enumerating sub-designs.
Design least_member_below(const Design& d, const Behaviour& g, std::size_t cap = 100000);
// |G|: the members equal to their own incarnation.
Bits incarnated(const Behaviour& g);

std::set<Ramification> directory(const Behaviour& g);
bool disjoint(const Behaviour& g, const Behaviour& h);

enum class Additive { With, Plus, Intersect, Union };
std::string to_string(Additive op);
// With/Intersect: set intersection. Plus/Union: biorthogonal of the set union.
// With/Plus throw std::invalid_argument unless the directories are disjoint.
Behaviour additive(const Behaviour& g, const Behaviour& h, Additive op);
// The plain set union, for checking that ⊕ needs no closure.
Bits set_union(const Behaviour& g, const Behaviour& h);

// Union of two negative designs with disjoint root ramifications.
NegativeDesign join(const NegativeDesign& a, const NegativeDesign& b);
// The branches of d whose root ramification lies in dir.
NegativeDesign restrict(const NegativeDesign& d, const std::set<Ramification>& dir);

// ---- delocation ----

// Level-wise bias renaming: the bias at position k of an address goes through levels[k]
// (the last map repeats); biases missing from a map are kept.
struct Delocation {
  std::vector<std::map<unsigned, unsigned>> levels;
};

Address delocate(const Address& a, const Delocation& t);
Ramification delocate(const Ramification& r, std::size_t address_length, const Delocation& t);
PositiveDesign delocate(const PositiveDesign& d, const Delocation& t);
NegativeDesign delocate(const NegativeDesign& d, const Delocation& t);
Design delocate(const Design& d, const Delocation& t);
Alphabet delocate(const Alphabet& a, const Delocation& t);
// Reason the map is not injective on the biases the universe can produce.
std::optional<std::string> validate_delocation(const Delocation& t, const Universe& u);
// Root biases i ↦ n·i + k; distinct k give images with disjoint root ramifications (except ∅).
Delocation tagging(const Universe& u, unsigned k, unsigned n);

// ---- coloured points ----

struct ColouredPoints {
  std::shared_ptr<const Space> space;
  NegativeDesign point;  // radius 2, angle 180, colour 9
  Behaviour circles;     // G: radius and colour observed
  Behaviour points;      // G′: radius and angle observed
  Behaviour radius;      // G₁
  Behaviour colour;      // G₂
};

ColouredPoints coloured_points();

}  // namespace locus::ludics
