#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "locus/mll/structure.hpp"

namespace locus::mll {

struct DerivationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sequent-calculus derivation. Rule indices name trees of the premise
// structures (cut trees included), not positions among conclusions.
struct Derivation {
  enum class Rule { DaimonAxiom, Par, Tensor, Cut, Mix, Exchange };

  Rule rule = Rule::DaimonAxiom;
  std::vector<Formula> formulas;  // DaimonAxiom
  std::vector<std::shared_ptr<const Derivation>> premises;
  std::size_t i = 0, j = 0;
  std::vector<std::size_t> order;  // Exchange: new tree k is old tree order[k]

  static std::shared_ptr<const Derivation> axiom(std::vector<Formula> gamma);
  static std::shared_ptr<const Derivation> par(std::shared_ptr<const Derivation> p, std::size_t i, std::size_t j);
  static std::shared_ptr<const Derivation> tensor(std::shared_ptr<const Derivation> p, std::size_t i,
                                                  std::shared_ptr<const Derivation> q, std::size_t j);
  static std::shared_ptr<const Derivation> cut(std::shared_ptr<const Derivation> p, std::size_t i,
                                               std::shared_ptr<const Derivation> q, std::size_t j);
  static std::shared_ptr<const Derivation> mix(std::shared_ptr<const Derivation> p,
                                               std::shared_ptr<const Derivation> q);
  static std::shared_ptr<const Derivation> exchange(std::shared_ptr<const Derivation> p,
                                                    std::vector<std::size_t> order);
};

using DerivationPtr = std::shared_ptr<const Derivation>;

ParaproofStructure build_from_derivation(const Derivation& d);

std::size_t count_rules(const Derivation& d, Derivation::Rule rule);
// Axioms with two dual formulas only.
bool uses_only_axiom_pairs(const Derivation& d);

// Tree orderings produced by each rule; shared by the builder and by sequentialization.
template <class T>
std::vector<T> par_order(const std::vector<T>& xs, std::size_t i, std::size_t j, T fresh) {
  std::vector<T> out;
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (k != i && k != j) out.push_back(xs[k]);
  out.push_back(std::move(fresh));
  return out;
}

template <class T>
std::vector<T> tensor_order(const std::vector<T>& xs, std::size_t i, const std::vector<T>& ys, std::size_t j,
                            T fresh) {
  std::vector<T> out;
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (k != i) out.push_back(xs[k]);
  for (std::size_t k = 0; k < ys.size(); ++k)
    if (k != j) out.push_back(ys[k]);
  out.push_back(std::move(fresh));
  return out;
}

template <class T>
std::vector<T> concat_order(const std::vector<T>& xs, const std::vector<T>& ys) {
  std::vector<T> out = xs;
  out.insert(out.end(), ys.begin(), ys.end());
  return out;
}

struct GeneratorOptions {
  Mode mode = Mode::Paraproof;
  bool allow_cuts = false;
  std::size_t max_leaves = 12;
  std::size_t max_pars = 6;
  double perturb_probability = 0.0;
};

struct GeneratedStructure {
  ParaproofStructure structure;
  DerivationPtr derivation;  // the sampled derivation, before any perturbation
  bool perturbed = false;
};

GeneratedStructure random_structure_ex(std::uint64_t seed, std::size_t budget, const GeneratorOptions& opts);
ParaproofStructure random_structure(std::uint64_t seed, std::size_t budget, Mode mode, bool allow_cuts,
                                    double perturb_probability = 0.0);

}  // namespace locus::mll
