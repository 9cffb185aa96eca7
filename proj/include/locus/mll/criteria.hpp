#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "locus/mll/graph.hpp"
#include "locus/mll/structure.hpp"

namespace locus::mll {

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SwitchingWitness {
  Switching switching;
  std::vector<std::string> vertices;
  std::vector<std::size_t> cycle;   // empty when the failure is a disconnection
  std::vector<int> coloring;        // set when disconnected
};

struct AjMove {
  LeafRef leaf;
  bool positive = false;
  friend bool operator==(const AjMove&, const AjMove&) = default;
};

struct PlayWitness {
  std::vector<AjMove> play;  // a legal play whose copycat answer is illegal
};

struct CounterProofWitness {
  Partition induced;  // on the leaves of the tested structure
};

using Witness = std::variant<SwitchingWitness, PlayWitness, CounterProofWitness>;

struct Verdict {
  bool accepted = true;
  std::optional<Witness> witness;
};

struct DrOptions {
  std::size_t max_pars = 24;
  bool parallel = true;
};

Verdict check_dr(const ParaproofStructure& s, const DrOptions& opts = {});
Verdict check_acyclicity(const ParaproofStructure& s, const DrOptions& opts = {});

// Element e of a partition is a small integer; classes need not be sorted.
using IntPartition = std::vector<std::vector<std::size_t>>;
bool partitions_orthogonal(const IntPartition& x, const IntPartition& y);

struct CounterProof {
  std::vector<Partition> nets;  // one paraproof net per conclusion, on its dual tree
  Partition induced;            // the union, read on the original leaves
};

struct CpOptions {
  std::size_t max_leaves = 10;
  bool extreme_only = false;
  bool parallel = true;
};

// All partitions of the leaves of a single-tree structure.
std::vector<Partition> all_partitions(const std::vector<LeafRef>& leaves);
// Nets on the dual tree of conclusion `tree`, read on the original leaf names.
std::vector<Partition> dual_nets(const ParaproofStructure& s, std::size_t tree, bool extreme_only,
                                 std::size_t max_leaves = 10);
// Same set built recursively from the sequent rules (general or extreme tensor splits).
std::vector<Partition> dual_nets_by_rules(const ParaproofStructure& s, std::size_t tree, bool extreme_only);

std::vector<CounterProof> enumerate_counterproofs(const ParaproofStructure& s, const CpOptions& opts = {});
Verdict check_cp(const ParaproofStructure& s, const CpOptions& opts = {});

struct AjOptions {
  std::size_t max_leaves = 16;
};

Verdict check_aj(const ParaproofStructure& s, const AjOptions& opts = {});
// Legality test for a signed move sequence against the structure's tree shapes.
bool is_aj_play(const ParaproofStructure& s, const std::vector<AjMove>& play);

}  // namespace locus::mll
