#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "phasegame/lattice.hpp"

namespace phasegame {

enum class Polarity : std::int8_t { Opponent = -1, Proponent = 1 };

inline Polarity flip(Polarity p) { return p == Polarity::Opponent ? Polarity::Proponent : Polarity::Opponent; }
inline char polarity_char(Polarity p) { return p == Polarity::Opponent ? 'O' : 'P'; }

struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  Polarity polarity = Polarity::Opponent;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Where a product-game edge comes from: side 0 is the left factor, side 1 the
/// right factor, -1 for games that are not products.
struct EdgeOrigin {
  std::int8_t side = -1;
  std::uint32_t component_edge = 0;
};

class Game;
using GamePtr = std::shared_ptr<const Game>;

/// Rooted graph whose edges are polarized moves. Immutable once built.
class Game {
 public:
  /// Throws InvalidGame on unknown endpoints, duplicate names or unreachable vertices.
  static GamePtr make(std::vector<std::string> vertices, std::uint32_t root, std::vector<Edge> edges);
  /// A game with only its root.
  static GamePtr unit(std::string name = "*");

  std::size_t size() const { return names_.size(); }
  std::uint32_t root() const { return root_; }
  const std::vector<std::string>& vertices() const { return names_; }
  const std::string& name(std::uint32_t v) const { return names_.at(v); }
  std::optional<std::uint32_t> vertex(const std::string& name) const;
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::uint32_t e) const { return edges_.at(e); }
  const std::vector<std::uint32_t>& out_edges(std::uint32_t v) const { return out_.at(v); }
  bool is_acyclic() const;

  // Product structure, present for tensor and implication games.
  bool is_product() const { return static_cast<bool>(left_); }
  const GamePtr& left() const { return left_; }
  const GamePtr& right() const { return right_; }
  /// For X ⊸ Y: the undualized X (left() holds X^⊥). Null for plain tensors.
  const GamePtr& implication_source() const { return source_; }
  const EdgeOrigin& origin(std::uint32_t e) const { return origins_.at(e); }
  std::pair<std::uint32_t, std::uint32_t> components(std::uint32_t v) const;
  std::uint32_t pair_vertex(std::uint32_t l, std::uint32_t r) const;
  /// The edge leaving `from` that replays component edge `component_edge` on `side`.
  std::optional<std::uint32_t> find_edge(std::uint32_t from, int side, std::uint32_t component_edge) const;

  /// Same vertex names, root and edge list (provenance ignored).
  bool same_structure(const Game& other) const;

 private:
  friend GamePtr dual_game(const GamePtr&);
  friend GamePtr tensor_game(const GamePtr&, const GamePtr&);
  friend GamePtr implication_game(const GamePtr&, const GamePtr&);
  void index();

  std::vector<std::string> names_;
  std::uint32_t root_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<EdgeOrigin> origins_;
  GamePtr left_, right_, source_;
};

/// Same graph with every polarity reversed.
GamePtr dual_game(const GamePtr& g);
/// Product graph; vertex (x, y) has index x*|V_Y| + y.
GamePtr tensor_game(const GamePtr& x, const GamePtr& y);
/// X ⊸ Y realized as X^⊥ ⊗ Y.
GamePtr implication_game(const GamePtr& x, const GamePtr& y);

using Play = std::vector<std::uint32_t>;  // edge indices from the root

bool is_path(const Game& g, const Play& p);
std::uint32_t end_vertex(const Game& g, const Play& p);
bool is_alternated(const Game& g, const Play& p);

struct Strategy {
  GamePtr game;
  std::set<Play> plays;
};

struct StrategyReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

StrategyReport validate_strategy(const Strategy& s);
/// Throws InvalidStrategy naming the first violated clause.
void require_valid(const Strategy& s);
/// Plays of s that no other play of s extends.
std::vector<Play> maximal_plays(const Strategy& s);

/// Mirror strategy on X ⊸ X. On cyclic games plays are cut at `max_length` moves
/// (default 2·|V_X|).
Strategy copycat(const GamePtr& x, std::size_t max_length = 0);

struct ComposeOptions {
  /// Bound on composite play length; 0 picks 2·|V_X|·|V_Z|.
  std::size_t max_length = 0;
};

/// Parallel composition with hiding of the shared Y moves. Throws
/// ComponentMismatch when the middle games differ, StepCapExceeded when a
/// hidden interaction runs longer than |V_X|·|V_Y|·|V_Z|·4 steps.
Strategy compose_strategies(const Strategy& sigma, const Strategy& tau, const ComposeOptions& options = {});

struct PayoffGame {
  GamePtr game;
  Lattice lattice;
  std::vector<Element> k;

  /// Throws NotHeyting for a non-distributive lattice, InvalidGame when k is not total.
  static PayoffGame make(GamePtr game, Lattice lattice, std::vector<Element> k);
};

enum class DualPayoff { Negate, Copy };

PayoffGame payoff_dual(const PayoffGame& a, DualPayoff mode = DualPayoff::Negate);
/// Weights combine by meet. Throws LatticeMismatch unless both share one lattice.
PayoffGame payoff_tensor(const PayoffGame& a, const PayoffGame& b);
/// Weights combine by Heyting implication.
PayoffGame payoff_implication(const PayoffGame& a, const PayoffGame& b);

/// Every maximal play ends at a non-bottom weight.
bool is_winning(const Strategy& s, const PayoffGame& pg);

// Seeded generators for property tests.
using Rng = std::mt19937_64;

/// Distributive lattice of down-sets of a random poset, at most `max_size` elements.
Lattice random_distributive_lattice(Rng& rng, std::size_t max_size);
/// Acyclic game on 1..max_vertices vertices, all reachable, random polarities.
GamePtr random_dag_game(Rng& rng, std::size_t max_vertices, const std::string& prefix = "v");
std::vector<Element> random_payoff(Rng& rng, const Lattice& l, std::size_t n);
/// A strategy answering every Opponent move it can, choosing uniformly among
/// responses that keep the strategy winning. Nullopt when none is winning.
/// Requires an acyclic game.
std::optional<Strategy> random_winning_strategy(Rng& rng, const PayoffGame& pg);

}  // namespace phasegame
