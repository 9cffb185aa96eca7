#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "locus/mll/structure.hpp"

namespace locus::mll {

// Every ⊗/⅋ tree over the single atom X with at most `max_leaves` atoms and
// connective depth at most `max_depth`; the frontier is the set of atoms.
std::vector<PartialFormulaTree> tree_shapes(std::size_t max_depth, std::size_t max_leaves);

// Every cut-free structure built from a nonempty multiset of tree shapes with at
// most `max_leaves` leaves in total, under every partition of its leaves.
// Returns the number of structures visited.
std::size_t for_each_small_structure(std::size_t max_depth, std::size_t max_leaves,
                                     const std::function<void(const ParaproofStructure&)>& fn);

// Every cut-free proof structure over X and X⊥ on the same tree shapes: each
// atom gets a polarity and the classes are perfect matchings of dual atoms.
std::size_t for_each_small_proof_structure(std::size_t max_depth, std::size_t max_leaves,
                                           const std::function<void(const ParaproofStructure&)>& fn);

}  // namespace locus::mll
