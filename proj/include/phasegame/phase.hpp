#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phasegame/lattice.hpp"

namespace phasegame {

/// Collects non-fatal notes (e.g. a connective applied to a non-fact).
struct Diagnostics {
  std::vector<std::string> warnings;
};

enum class TensorMode {
  RawMonoid,   ///< X·Y, the monoid product itself
  FactClosed,  ///< (X·Y)^⊥⊥
};

struct PhaseOptions {
  bool check_commutative = true;
  bool check_associative = true;
  /// When false (weak unit), the unit's row is not required to be the identity.
  bool strict_unit = false;
  /// Run every structural check at load time. Disabled only to build
  /// deliberately broken structures for law reports.
  bool validate = true;
};

/// Element-level phase space: a lattice carrying a commutative monoid table,
/// a unit, a falsum element ⊥ and the dual map X ↦ X^⊥.
class PhaseStructure {
 public:
  /// `table` is row-major, size n*n. Duals default to lin_implies(X, falsum);
  /// `dual_overrides` replace individual entries.
  static PhaseStructure load(Lattice lattice, std::vector<Element> table, Element unit,
                             Element falsum,
                             std::vector<std::pair<Element, Element>> dual_overrides = {},
                             PhaseOptions options = {});

  const Lattice& lattice() const { return lattice_; }
  const PhaseOptions& options() const { return options_; }
  Element unit() const { return unit_; }
  Element falsum() const { return falsum_; }
  Element one() const { return lattice_.top(); }
  Element zero() const { return lattice_.bottom(); }
  /// I = ⊥^⊥, the neutral element of the fact-closed tensor.
  Element neutral_I() const { return dual(falsum_); }

  Element mult(Element x, Element y) const;
  Element dual(Element x) const;
  bool is_fact(Element x) const { return dual(dual(x)) == x; }
  std::vector<Element> facts() const;

  /// join{Z : X·Z ≤ Y}, or nullopt when that join is not itself a candidate.
  std::optional<Element> try_lin_implies(Element x, Element y) const;
  /// As try_lin_implies, throwing NotClosed instead of returning nullopt.
  Element lin_implies(Element x, Element y) const;

  const std::vector<std::pair<Element, Element>>& overrides() const { return overrides_; }
  bool has_override(Element x) const;
  /// Row-major copy of the multiplication table.
  const std::vector<Element>& table() const { return table_; }

 private:
  PhaseStructure(Lattice lattice) : lattice_(std::move(lattice)) {}

  Lattice lattice_;
  std::vector<Element> table_;
  std::vector<Element> dual_;
  std::vector<std::pair<Element, Element>> overrides_;
  Element unit_, falsum_;
  PhaseOptions options_;
};

// Connectives. Non-fact arguments are allowed; a note goes to `diag` if given.
Element additive_conj(const PhaseStructure& ps, Element x, Element y, Diagnostics* diag = nullptr);
Element additive_disj(const PhaseStructure& ps, Element x, Element y, Diagnostics* diag = nullptr);
Element tensor(const PhaseStructure& ps, Element x, Element y,
               TensorMode mode = TensorMode::RawMonoid, Diagnostics* diag = nullptr);
/// X ⅋ Y = (X^⊥ · Y^⊥)^⊥
Element par(const PhaseStructure& ps, Element x, Element y, Diagnostics* diag = nullptr);

struct LawCheck {
  std::string law;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;  // instances where the law does not apply (e.g. implication not closed)
  std::vector<std::string> witnesses;  // first few counterexamples

  bool passed() const { return violations == 0; }
};

struct LawReport {
  std::vector<LawCheck> checks;

  bool passed() const;
  const LawCheck* find(const std::string& law) const;
};

/// Exhaustively checks the phase-space laws over all elements / pairs / triples.
LawReport verify_laws(const PhaseStructure& ps);

struct FactClassification {
  std::vector<Element> facts;
  std::vector<Element> open_class;
  std::vector<Element> closed_class;
  Element neutral_I;
  Element one;
  Element zero;
};

/// Checks a declared split of the facts into Op (closed under + and fact-closed ×,
/// extremes I and 0) and Cl = dual(Op) (closed under & and ⅋, extremes 1 and ⊥).
/// An empty `closed` is derived as the dual image of `open`. Throws NotClosedClass.
FactClassification classify(const PhaseStructure& ps, std::span<const Element> open,
                            std::span<const Element> closed = {});

}  // namespace phasegame
