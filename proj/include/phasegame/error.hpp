#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasegame {

enum class ErrorKind {
  // lattice
  NotAPartialOrder,
  NotALattice,
  UnboundedLattice,
  ForeignElement,
  NotHeyting,
  // phase
  NotCommutative,
  NotAssociative,
  DualLawViolation,
  OverrideInconsistent,
  NotClosed,
  NotClosedClass,
  NoSolution,
  // conway
  InvalidGame,
  InvalidStrategy,
  LatticeMismatch,
  ComponentMismatch,
  StepCapExceeded,
  // planner
  BadGrid,
  UnknownGoalElement,
  PhaseLoadFailure,
  HorizonEmpty,
  // io / cli
  ParseError,
  SizeExceeded,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every domain failure in the library is reported as an Error carrying a
/// machine-readable kind; the message holds the witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace phasegame
