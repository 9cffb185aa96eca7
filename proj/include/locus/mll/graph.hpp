#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "locus/mll/structure.hpp"

namespace locus::mll {

enum class Side { L, R };

struct ParNode {
  std::size_t tree;
  Occurrence occ;
};

// ⅋ nodes above the frontier, trees in index order, each tree in preorder.
std::vector<ParNode> par_nodes(const ParaproofStructure& s);

struct Switching {
  std::vector<Side> sides;  // aligned with par_nodes()

  static Switching from_mask(std::uint64_t mask, std::size_t n);
};

struct Graph {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t size() const { return labels.size(); }
  std::size_t find(const std::string& label) const;
};

// Vertex per tree node down to the frontier, per class; one edge per cut.
// L keeps the edge to the first premise of a ⅋, R the edge to the second.
Graph correction_graph(const ParaproofStructure& s, const Switching& sw);

struct Shape {
  std::size_t components = 0;
  std::vector<std::size_t> cycle;   // vertex ids of the first back-edge cycle, empty if acyclic
  std::vector<int> coloring;        // 0 for the component of vertex 0, 1 elsewhere
  bool acyclic() const { return cycle.empty(); }
  bool connected() const { return components <= 1; }
};

Shape analyze(const Graph& g);

// Unique path between two vertices of a forest, or empty when disconnected.
std::vector<std::size_t> tree_path(const Graph& g, std::size_t from, std::size_t to);

// Precomputed edge list with switch tags, for fast repeated checks.
class SwitchedGraph {
 public:
  explicit SwitchedGraph(const ParaproofStructure& s);

  std::size_t par_count() const { return pars_; }
  std::size_t vertex_count() const { return n_; }
  // 0 tree, 1 cyclic, 2 disconnected acyclic
  int classify(std::uint64_t mask) const;

 private:
  struct Edge {
    std::size_t a, b;
    int par = -1;     // switch index controlling this edge
    Side keep = Side::L;
  };
  std::size_t n_ = 0;
  std::size_t pars_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace locus::mll
