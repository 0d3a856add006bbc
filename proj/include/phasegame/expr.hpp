#pragma once

#include <string_view>

#include "phasegame/phase.hpp"

namespace phasegame {

enum class ImplicationMode {
  DualForm,  ///< X ⊸ Y = (X × Y^⊥)^⊥
  Residual,  ///< join{Z : X·Z ≤ Y}, NotClosed when that join fails
};

struct EvalOptions {
  TensorMode tensor = TensorMode::RawMonoid;
  ImplicationMode implication = ImplicationMode::DualForm;
};

/// Evaluates an expression over lattice element names. Binding, loosest first:
/// ⊸ (right associative), +, &, ⅋, ×, postfix dual. ASCII aliases: -o, par,
/// x or *, ^. Throws ParseError on malformed input.
Element eval_expression(const PhaseStructure& ps, std::string_view text, const EvalOptions& options = {},
                        Diagnostics* diag = nullptr);

}  // namespace phasegame
