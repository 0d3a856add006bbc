#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phasegame/conway.hpp"
#include "phasegame/lattice.hpp"
#include "phasegame/phase.hpp"

namespace phasegame {

struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct SceneObject {
  std::string id;
  Cell cell;
  std::vector<std::string> features;  // reveal order
  Element goal;
  /// Lower is more attractive; objects without a rank come last.
  std::optional<int> attractiveness;
  Lattice rewards;  // powerset of features, index == feature bitmask
};

struct Scenario {
  std::vector<std::string> grid;  // rows of '.' and '#'
  Cell start;
  int horizon = 0;
  std::vector<SceneObject> objects;
  std::shared_ptr<const PhaseStructure> goal_phase;
  Element free_move_goal;

  int height() const { return static_cast<int>(grid.size()); }
  int width() const { return grid.empty() ? 0 : static_cast<int>(grid[0].size()); }
  bool passable(Cell c) const;
};

struct ObjectSpec {
  std::string id;
  Cell cell;
  std::vector<std::string> features;
  std::string goal;
  std::optional<int> attractiveness;
};

/// Throws BadGrid or UnknownGoalElement. Goals must be join-irreducible, or the
/// join of a join-irreducible element with the free-move goal, and distinct.
Scenario make_scenario(std::vector<std::string> grid, Cell start, int horizon, std::vector<ObjectSpec> objects,
                       std::shared_ptr<const PhaseStructure> goal_phase, const std::string& free_move_goal);

int chebyshev(Cell a, Cell b);

/// Per object, the revealed feature prefix seen from p: the first
/// ceil(F·(r+1−d)/(r+1)) features at distance d ≤ r, nothing beyond r.
std::vector<Element> visible_rewards(const Scenario& sc, Cell p);

/// dual(a · dual(g1 · ... · gk)) with the raw monoid product.
Element eval_priority(const PhaseStructure& ps, Element free_move_goal, const std::vector<Element>& goals);
Element eval_priority(const Scenario& sc, const std::vector<std::size_t>& objects);

struct GoalProcessSet {
  std::vector<std::size_t> objects;  // indices into Scenario::objects, ascending
  Element priority;
};

struct GoalSelection {
  std::vector<GoalProcessSet> candidates;  // every subset evaluated
  std::vector<GoalProcessSet> selected;    // survivors, best first
  bool indistinguishable = false;          // every candidate had the same priority
  std::vector<std::string> log;
};

struct SelectOptions {
  std::optional<std::size_t> must_include;
  /// Only subsets with fewer goals than this are considered (used when shrinking).
  std::optional<std::size_t> size_below;
};

/// Keeps the candidates with maximal priority, then those with the most goals,
/// ordered by attractiveness and then by object id. Throws InvalidInput when
/// there is nothing to choose from.
GoalSelection select_goal_sets(const Scenario& sc, const std::vector<std::size_t>& discovered,
                               const SelectOptions& options = {});

/// A ⊸ B1 ⊗ ... ⊗ Bk. A: cells reachable within the horizon, each split into a
/// system vertex and a reveal vertex. Bi: the reveal chain of object i.
struct CompoundGame {
  GamePtr game;
  GamePtr a;
  std::vector<GamePtr> b;
  std::vector<std::size_t> objects;
};

CompoundGame build_compound_game(const Scenario& sc, Cell from, const std::vector<std::size_t>& objects);
std::string to_dot(const Game& g, const std::vector<std::uint32_t>& bold_edges = {});

enum class Objective { Practical, Strict };

enum class Move : std::uint8_t { N, E, S, W };
char move_char(Move m);
Cell step(Cell c, Move m);

/// Componentwise value in the product of the goals' reward lattices.
using RewardVector = std::vector<Element>;

struct PlanOptions {
  Objective objective = Objective::Practical;
  DualPayoff dual_payoff = DualPayoff::Copy;
  /// Plays have 1..depth system moves; 0 means the horizon radius.
  int depth = 0;
};

struct PlanResult {
  std::vector<Move> moves;
  std::vector<Cell> path;  // includes the starting cell
  RewardVector objective;
  std::size_t plays_considered = 0;
  std::vector<std::string> log;
};

/// Enumerates every play of up to `depth` moves and returns one whose objective
/// is maximal in the product order. Ties: larger atom rank, shorter play, then
/// move order N<E<S<W. Throws HorizonEmpty when no move is legal.
PlanResult plan_play(const Scenario& sc, Cell from, const std::vector<std::size_t>& goals,
                     const std::vector<Element>& images, const PlanOptions& options = {});

/// Objective of one explicit play (path includes its start cell).
RewardVector play_objective(const Scenario& sc, const std::vector<Cell>& path, const std::vector<std::size_t>& goals,
                            const std::vector<Element>& images, const PlanOptions& options);
bool reward_leq(const Scenario& sc, const std::vector<std::size_t>& goals, const RewardVector& x, const RewardVector& y);

struct TraceEntry {
  std::string actor;  // "system" or "environment"
  std::string move;   // N/E/S/W, "stay" or "reveal"
  Cell position;
  std::vector<std::string> rewards;  // per object, the visible reward
  std::vector<std::string> objective;  // per object, accumulated image
};

struct ShrinkEvent {
  int step = 0;
  std::vector<std::string> from;
  std::vector<std::string> to;
};

struct Trace {
  std::string objective;     // practical | strict
  std::string dual_payoff;   // copy | negate
  std::uint64_t seed = 0;
  int max_steps = 0;
  std::string reward_reading = "product";
  std::vector<TraceEntry> entries;
  std::vector<Cell> play;
  std::vector<std::string> decisions;
  std::vector<std::vector<std::string>> selections;  // active sets, in order
  /// Per selection, every surviving set written with goal element names.
  std::vector<std::vector<std::string>> top_sets;
  std::vector<ShrinkEvent> shrinks;
  std::vector<std::string> final_active;
  std::vector<std::pair<std::string, std::string>> final_images;
  bool complete = false;
  bool step_limit = false;
  bool indistinguishable = false;
};

struct CognitionOptions {
  int max_steps = 50;
  PlanOptions plan;
  std::uint64_t seed = 0;
  /// Saturation lookahead in moves; 0 means the horizon radius.
  int lookahead = 0;
};

Trace run_cognition(const Scenario& sc, const CognitionOptions& options = {});

}  // namespace phasegame
