#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phasegame/phase.hpp"

namespace phasegame {

/// A finite monoid on {0..n-1} given by its full table.
struct Monoid {
  std::vector<std::string> names;
  std::vector<std::uint32_t> table;  // row-major n*n
  std::uint32_t unit = 0;

  std::size_t size() const { return names.size(); }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return table[x * size() + y]; }

  /// Throws InvalidInput when the table is not associative, lacks the unit
  /// or is not commutative (the subset model needs a commutative monoid).
  void validate() const;

  static Monoid cyclic(std::size_t n);
  static Monoid trivial() { return cyclic(1); }
};

/// Every commutative monoid on {0..n-1} whose unit is 0 (labelled, not up to isomorphism).
std::vector<Monoid> enumerate_commutative_monoids(std::size_t n);

using Subset = std::uint64_t;

struct OracleReport {
  std::size_t monoid_size = 0;
  Subset falsum = 0;
  std::vector<Subset> facts;
  LawReport laws;

  bool passed() const { return laws.passed(); }
};

/// Brute-force subset phase space: X^⊥ = {z | x·z ∈ ⊥ for all x ∈ X}.
/// Checks the phase-space laws over all subsets, and checks that the
/// element-level engine on the lifted powerset lattice computes the same duals
/// and passes its own laws. Throws SizeExceeded for monoids above 6 elements.
OracleReport subset_phase_oracle(const Monoid& m, Subset falsum);

std::string subset_name(const Monoid& m, Subset s);

}  // namespace phasegame
