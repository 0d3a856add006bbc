#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "phasegame/lattice.hpp"
#include "phasegame/phase.hpp"

namespace phasegame {

/// "x1·y1 + x2·y2 = value", with + read as additive disjunction.
struct LinkedConstraint {
  std::vector<std::pair<Element, Element>> sum;
  Element equals;
};

/// A multiplication table with some entries known only up to a candidate set.
/// Pairs are unordered: an entry for (x, y) also constrains (y, x).
struct AmbiguousTable {
  Lattice lattice;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Element>> candidates;
  Element unit;
  Element falsum;
  std::vector<std::pair<Element, Element>> dual_overrides;
  std::vector<LinkedConstraint> linked;
  std::vector<Element> op_class;
  std::vector<Element> cl_class;
  PhaseOptions options;

  explicit AmbiguousTable(Lattice l) : lattice(std::move(l)) {}

  /// Restricts (x, y) to the given values; unconstrained pairs allow everything.
  void set(Element x, Element y, std::vector<Element> values);
};

struct SolveOptions {
  std::size_t max_solutions = 64;
};

struct SolveResult {
  std::vector<PhaseStructure> solutions;
  bool cap_exceeded = false;
  std::size_t nodes = 0;
};

/// Backtracking search over candidate sets with associativity propagation.
/// Every returned structure loads cleanly and passes verify_laws and the
/// linked constraints. Solutions are sorted by their tables (by element name).
/// Throws NoSolution when nothing survives.
SolveResult solve_table(const AmbiguousTable& at, const SolveOptions& options = {});

}  // namespace phasegame
