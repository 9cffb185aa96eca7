#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "locus/ludics/design.hpp"
#include "locus/ludics/engine.hpp"

namespace locus::ludics {

// Small deterministic helpers over a 64-bit Mersenne twister; distributions are hand-rolled
// so that seeds give the same corpora on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
  bool coin(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

struct RandomDesignOptions {
  std::size_t depth = 3;
  Alphabet alphabet{std::vector<Ramification>{{1}, {1, 2}}};
  double p_daimon = 0.25;
  double p_omega = 0.1;
  // Chance that a ramification offered at a negative node gets a stored branch.
  double p_branch = 0.6;
  // At most one stored branch per negative node.
  bool slices = false;
};

PositiveDesign random_positive(Rng& rng, const std::set<Address>& context, const RandomDesignOptions& o);
NegativeDesign random_negative(Rng& rng, const Address& focus, const std::set<Address>& context,
                               const RandomDesignOptions& o);

// Replaces random subtrees by Ω (below) or ✠ (above); both keep the design's base.
PositiveDesign random_below(Rng& rng, const PositiveDesign& d, double p);
NegativeDesign random_below(Rng& rng, const NegativeDesign& d, double p);
PositiveDesign random_above(Rng& rng, const PositiveDesign& d, double p);
NegativeDesign random_above(Rng& rng, const NegativeDesign& d, double p);

struct RandomNet {
  Net net;
  // Partners that, together with the principal design, form a connected sub-net.
  std::vector<std::size_t> inner;
};

// Tree-shaped cut graph over fresh single-bias addresses; bases are declared, not inferred.
RandomNet random_net(Rng& rng, const RandomDesignOptions& o, std::size_t max_partners);

// A pair of slices on ⊢ε / ε⊢ whose action sets are opposite, built from a random play.
std::pair<PositiveDesign, NegativeDesign> balanced_slices(Rng& rng, const RandomDesignOptions& o);
bool is_balanced(const PositiveDesign& phi, const NegativeDesign& psi);

}  // namespace locus::ludics
