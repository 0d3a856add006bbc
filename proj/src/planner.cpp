#include "phasegame/planner.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "phasegame/error.hpp"

namespace phasegame {

namespace {

constexpr Move kMoves[] = {Move::N, Move::E, Move::S, Move::W};

// Reward lattices are powersets, so an element's index is its feature mask.
std::size_t rank(Element x) { return static_cast<std::size_t>(std::popcount(x.index)); }

std::string cell_name(Cell c) { return std::to_string(c.row) + "," + std::to_string(c.col); }

std::vector<std::string> ids(const Scenario& sc, const std::vector<std::size_t>& objs) {
  std::vector<std::string> out;
  for (auto i : objs) out.push_back(sc.objects[i].id);
  return out;
}

std::string join_ids(const std::vector<std::string>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s + "}";
}

std::vector<Move> legal_moves(const Scenario& sc, Cell c) {
  std::vector<Move> out;
  for (auto m : kMoves) {
    if (sc.passable(step(c, m))) out.push_back(m);
  }
  return out;
}

}  // namespace

bool Scenario::passable(Cell c) const {
  return c.row >= 0 && c.row < height() && c.col >= 0 && c.col < width() && grid[c.row][c.col] == '.';
}

int chebyshev(Cell a, Cell b) { return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col)); }

char move_char(Move m) { return "NESW"[static_cast<int>(m)]; }

Cell step(Cell c, Move m) {
  switch (m) {
    case Move::N: return {c.row - 1, c.col};
    case Move::E: return {c.row, c.col + 1};
    case Move::S: return {c.row + 1, c.col};
    case Move::W: return {c.row, c.col - 1};
  }
  return c;
}

Scenario make_scenario(std::vector<std::string> grid, Cell start, int horizon, std::vector<ObjectSpec> objects,
                       std::shared_ptr<const PhaseStructure> goal_phase, const std::string& free_move_goal) {
  if (grid.empty() || grid[0].empty()) throw Error(ErrorKind::BadGrid, "grid is empty");
  for (const auto& row : grid) {
    if (row.size() != grid[0].size()) throw Error(ErrorKind::BadGrid, "grid rows differ in length");
    if (row.find_first_not_of(".#") != std::string::npos) throw Error(ErrorKind::BadGrid, "grid cells must be '.' or '#'");
  }
  if (horizon < 0) throw Error(ErrorKind::BadGrid, "horizon must be nonnegative");
  if (!goal_phase) throw Error(ErrorKind::PhaseLoadFailure, "scenario has no goal phase structure");

  Scenario sc;
  sc.grid = std::move(grid);
  sc.start = start;
  sc.horizon = horizon;
  sc.goal_phase = std::move(goal_phase);
  if (!sc.passable(start)) throw Error(ErrorKind::BadGrid, "start cell " + cell_name(start) + " is not passable");

  const Lattice& goals = sc.goal_phase->lattice();
  auto lookup = [&](const std::string& name) {
    try {
      return goals.element(name);
    } catch (const Error&) {
      throw Error(ErrorKind::UnknownGoalElement, "'" + name + "' is not in the goal lattice");
    }
  };
  sc.free_move_goal = lookup(free_move_goal);

  std::set<std::string> seen_ids;
  std::set<Element> seen_goals;
  for (auto& spec : objects) {
    if (!seen_ids.insert(spec.id).second) throw Error(ErrorKind::InvalidInput, "duplicate object id '" + spec.id + "'");
    if (spec.cell.row < 0 || spec.cell.row >= sc.height() || spec.cell.col < 0 || spec.cell.col >= sc.width()) {
      throw Error(ErrorKind::BadGrid, "object '" + spec.id + "' lies outside the grid");
    }
    if (spec.features.empty()) throw Error(ErrorKind::InvalidInput, "object '" + spec.id + "' has no features");
    auto goal = lookup(spec.goal);
    bool generator = goals.is_join_irreducible(goal);
    if (!generator && goal != sc.free_move_goal) {
      for (auto j : goals.elements()) {
        if (goals.is_join_irreducible(j) && goals.join(j, sc.free_move_goal) == goal) generator = true;
      }
    }
    if (!generator) {
      throw Error(ErrorKind::UnknownGoalElement,
                  "goal '" + spec.goal + "' of object '" + spec.id + "' is neither a generator nor a generator joined with the free-move goal");
    }
    if (!seen_goals.insert(goal).second) {
      throw Error(ErrorKind::UnknownGoalElement, "goal '" + spec.goal + "' is assigned to two objects");
    }
    sc.objects.push_back(SceneObject{spec.id, spec.cell, spec.features, goal, spec.attractiveness,
                                     Lattice::powerset(spec.features)});
  }
  return sc;
}

std::vector<Element> visible_rewards(const Scenario& sc, Cell p) {
  std::vector<Element> out;
  out.reserve(sc.objects.size());
  const int r = sc.horizon;
  for (const auto& o : sc.objects) {
    const int d = chebyshev(p, o.cell);
    if (d > r) {
      out.push_back(o.rewards.bottom());
      continue;
    }
    const auto f = static_cast<int>(o.features.size());
    const int shown = (f * (r + 1 - d) + r) / (r + 1);
    out.push_back(o.rewards.at((std::size_t{1} << shown) - 1));
  }
  return out;
}

Element eval_priority(const PhaseStructure& ps, Element free_move_goal, const std::vector<Element>& goals) {
  if (goals.empty()) throw Error(ErrorKind::InvalidInput, "priority of an empty goal set");
  Element product = goals.front();
  for (std::size_t i = 1; i < goals.size(); ++i) product = ps.mult(product, goals[i]);
  return ps.dual(ps.mult(free_move_goal, ps.dual(product)));
}

Element eval_priority(const Scenario& sc, const std::vector<std::size_t>& objects) {
  std::vector<Element> goals;
  for (auto i : objects) goals.push_back(sc.objects.at(i).goal);
  return eval_priority(*sc.goal_phase, sc.free_move_goal, goals);
}

GoalSelection select_goal_sets(const Scenario& sc, const std::vector<std::size_t>& discovered,
                               const SelectOptions& options) {
  std::vector<std::size_t> pool = discovered;
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.empty()) throw Error(ErrorKind::InvalidInput, "no discovered goals to select from");
  if (pool.size() > 20) throw Error(ErrorKind::SizeExceeded, "too many discovered goals to enumerate");
  const Lattice& l = sc.goal_phase->lattice();

  GoalSelection sel;
  for (std::uint32_t mask = 1; mask < (1u << pool.size()); ++mask) {
    GoalProcessSet g;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask >> i & 1) g.objects.push_back(pool[i]);
    }
    if (options.must_include &&
        std::find(g.objects.begin(), g.objects.end(), *options.must_include) == g.objects.end()) {
      continue;
    }
    if (options.size_below && g.objects.size() >= *options.size_below) continue;
    g.priority = eval_priority(sc, g.objects);
    sel.log.push_back("priority " + join_ids(ids(sc, g.objects)) + " = " + l.name(g.priority));
    sel.candidates.push_back(std::move(g));
  }
  if (sel.candidates.empty()) throw Error(ErrorKind::InvalidInput, "no candidate goal set satisfies the filters");

  sel.indistinguishable = sel.candidates.size() > 1 &&
                          std::all_of(sel.candidates.begin(), sel.candidates.end(),
                                      [&](const auto& c) { return c.priority == sel.candidates.front().priority; });
  if (sel.indistinguishable) {
    sel.log.push_back("all candidate priorities equal " + l.name(sel.candidates.front().priority) +
                      ": variants are not distinguishable by the goal lattice");
  }

  std::vector<GoalProcessSet> maximal;
  for (const auto& c : sel.candidates) {
    bool dominated = std::any_of(sel.candidates.begin(), sel.candidates.end(),
                                 [&](const auto& o) { return l.less(c.priority, o.priority); });
    if (!dominated) maximal.push_back(c);
  }
  std::size_t most = 0;
  for (const auto& c : maximal) most = std::max(most, c.objects.size());
  auto attraction = [&](const GoalProcessSet& g) {
    std::vector<int> ranks;
    for (auto i : g.objects) ranks.push_back(sc.objects[i].attractiveness.value_or(INT_MAX));
    std::sort(ranks.begin(), ranks.end());
    return ranks;
  };
  for (auto& c : maximal) {
    if (c.objects.size() == most) sel.selected.push_back(c);
  }
  std::stable_sort(sel.selected.begin(), sel.selected.end(), [&](const auto& a, const auto& b) {
    auto ra = attraction(a), rb = attraction(b);
    if (ra != rb) return ra < rb;
    return ids(sc, a.objects) < ids(sc, b.objects);
  });
  if (maximal.size() > sel.selected.size()) {
    sel.log.push_back("kept the " + std::to_string(sel.selected.size()) + " maximal set(s) with " +
                      std::to_string(most) + " goals out of " + std::to_string(maximal.size()));
  }
  for (const auto& s : sel.selected) {
    sel.log.push_back("selected " + join_ids(ids(sc, s.objects)) + " with priority " + l.name(s.priority));
  }
  if (sel.selected.size() > 1) {
    sel.log.push_back("first choice " + join_ids(ids(sc, sel.selected.front().objects)) +
                      " is tie-broken by attractiveness and name, not dominated");
  }
  return sel;
}

CompoundGame build_compound_game(const Scenario& sc, Cell from, const std::vector<std::size_t>& objects) {
  if (!sc.passable(from)) throw Error(ErrorKind::BadGrid, "position " + cell_name(from) + " is not passable");
  const int depth = std::max(1, sc.horizon);
  std::map<Cell, int> dist{{from, 0}};
  std::vector<Cell> cells{from};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto c = cells[i];
    if (dist[c] == depth) continue;
    for (auto m : legal_moves(sc, c)) {
      auto d = step(c, m);
      if (dist.emplace(d, dist[c] + 1).second) cells.push_back(d);
    }
  }
  std::vector<std::string> names;
  std::map<Cell, std::uint32_t> sys, env;
  for (auto c : cells) {
    sys[c] = static_cast<std::uint32_t>(names.size());
    names.push_back(cell_name(c));
  }
  std::vector<Edge> edges;
  for (auto c : cells) {
    for (auto m : legal_moves(sc, c)) {
      auto d = step(c, m);
      if (!sys.count(d)) continue;
      auto [it, fresh] = env.emplace(d, static_cast<std::uint32_t>(names.size()));
      if (fresh) {
        names.push_back(cell_name(d) + "'");
      }
      edges.push_back({sys[c], it->second, Polarity::Opponent});
    }
  }
  for (auto [c, v] : env) edges.push_back({v, sys[c], Polarity::Proponent});
  if (env.empty()) {
    auto vis = visible_rewards(sc, from);
    bool anything = std::any_of(objects.begin(), objects.end(),
                                [&](auto i) { return vis[i] != sc.objects[i].rewards.bottom(); });
    if (!anything) throw Error(ErrorKind::HorizonEmpty, "no legal move and nothing visible from " + cell_name(from));
  }

  CompoundGame cg;
  cg.objects = objects;
  cg.a = Game::make(std::move(names), 0, std::move(edges));
  GamePtr bs;
  for (auto it = objects.rbegin(); it != objects.rend(); ++it) {
    const auto& o = sc.objects.at(*it);
    std::vector<std::string> chain;
    std::vector<Edge> reveal;
    for (std::size_t j = 0; j <= o.features.size(); ++j) {
      chain.push_back(o.id + ":" + std::to_string(j));
      if (j) reveal.push_back({static_cast<std::uint32_t>(j - 1), static_cast<std::uint32_t>(j), Polarity::Proponent});
    }
    auto b = Game::make(std::move(chain), 0, std::move(reveal));
    cg.b.insert(cg.b.begin(), b);
    bs = bs ? tensor_game(b, bs) : b;
  }
  cg.game = implication_game(cg.a, bs ? bs : Game::unit());
  return cg;
}

std::string to_dot(const Game& g, const std::vector<std::uint32_t>& bold_edges) {
  std::ostringstream out;
  std::set<std::uint32_t> bold(bold_edges.begin(), bold_edges.end());
  out << "digraph game {\n";
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    out << "  v" << v << " [label=\"" << g.name(v) << "\"" << (v == g.root() ? ", shape=doublecircle" : "") << "];\n";
  }
  for (std::uint32_t e = 0; e < g.edges().size(); ++e) {
    const auto& ed = g.edge(e);
    out << "  v" << ed.from << " -> v" << ed.to << " [label=\"" << polarity_char(ed.polarity) << "\""
        << (bold.count(e) ? ", penwidth=3" : "") << "];\n";
  }
  out << "}\n";
  return out.str();
}

RewardVector play_objective(const Scenario& sc, const std::vector<Cell>& path, const std::vector<std::size_t>& goals,
                            const std::vector<Element>& images, const PlanOptions& options) {
  RewardVector obj;
  for (auto i : goals) {
    const Lattice& l = sc.objects[i].rewards;
    if (options.objective == Objective::Practical) {
      obj.push_back(options.dual_payoff == DualPayoff::Copy ? images[i] : l.heyting_neg(images[i]));
    } else {
      obj.push_back(l.bottom());
    }
  }
  for (std::size_t s = 1; s < path.size(); ++s) {
    auto vis = visible_rewards(sc, path[s]);
    for (std::size_t g = 0; g < goals.size(); ++g) {
      const Lattice& l = sc.objects[goals[g]].rewards;
      auto gain = vis[goals[g]];
      if (options.objective == Objective::Strict) gain = l.heyting_implies(images[goals[g]], gain);
      obj[g] = l.join(obj[g], gain);
    }
  }
  return obj;
}

bool reward_leq(const Scenario& sc, const std::vector<std::size_t>& goals, const RewardVector& x, const RewardVector& y) {
  for (std::size_t g = 0; g < goals.size(); ++g) {
    if (!sc.objects[goals[g]].rewards.leq(x[g], y[g])) return false;
  }
  return true;
}

namespace {

struct Candidate {
  std::vector<Move> moves;
  std::vector<Cell> path;
  RewardVector objective;
  std::size_t rank = 0;
};

void enumerate_plays(const Scenario& sc, Cell from, int depth, const std::function<void(const std::vector<Move>&, const std::vector<Cell>&)>& visit) {
  std::vector<Move> moves;
  std::vector<Cell> path{from};
  std::function<void()> grow = [&] {
    if (static_cast<int>(moves.size()) == depth) return;
    for (auto m : legal_moves(sc, path.back())) {
      moves.push_back(m);
      path.push_back(step(path.back(), m));
      visit(moves, path);
      grow();
      moves.pop_back();
      path.pop_back();
    }
  };
  grow();
}

}  // namespace

PlanResult plan_play(const Scenario& sc, Cell from, const std::vector<std::size_t>& goals,
                     const std::vector<Element>& images, const PlanOptions& options) {
  const int depth = options.depth > 0 ? options.depth : std::max(1, sc.horizon);
  std::vector<Candidate> all;
  enumerate_plays(sc, from, depth, [&](const std::vector<Move>& moves, const std::vector<Cell>& path) {
    Candidate c{moves, path, play_objective(sc, path, goals, images, options), 0};
    for (auto x : c.objective) c.rank += rank(x);
    all.push_back(std::move(c));
  });
  if (all.empty()) throw Error(ErrorKind::HorizonEmpty, "no legal move from " + cell_name(from));

  std::vector<const Candidate*> maximal;
  for (const auto& c : all) {
    bool dominated = std::any_of(all.begin(), all.end(), [&](const Candidate& o) {
      return reward_leq(sc, goals, c.objective, o.objective) && !reward_leq(sc, goals, o.objective, c.objective);
    });
    if (!dominated) maximal.push_back(&c);
  }
  auto best = *std::min_element(maximal.begin(), maximal.end(), [](const Candidate* a, const Candidate* b) {
    if (a->rank != b->rank) return a->rank > b->rank;
    if (a->moves.size() != b->moves.size()) return a->moves.size() < b->moves.size();
    return a->moves < b->moves;
  });

  PlanResult res;
  res.moves = best->moves;
  res.path = best->path;
  res.objective = best->objective;
  res.plays_considered = all.size();
  std::set<RewardVector> distinct;
  for (auto* m : maximal) distinct.insert(m->objective);
  std::string plan;
  for (auto m : res.moves) plan += move_char(m);
  res.log.push_back("plan " + plan + " from " + std::to_string(all.size()) + " plays, " +
                    std::to_string(maximal.size()) + " maximal");
  if (distinct.size() > 1) {
    res.log.push_back("incomparable maxima: chosen by atom rank, length and move order");
  }
  return res;
}

namespace {

class Cognition {
 public:
  Cognition(const Scenario& sc, const CognitionOptions& opts) : sc_(sc), opts_(opts), rng_(opts.seed) {
    lookahead_ = opts.lookahead > 0 ? opts.lookahead : std::max(1, sc.horizon);
    for (const auto& o : sc.objects) images_.push_back(o.rewards.bottom());
    discovered_.assign(sc.objects.size(), false);
  }

  Trace run() {
    Trace t;
    t.objective = opts_.plan.objective == Objective::Practical ? "practical" : "strict";
    t.dual_payoff = opts_.plan.dual_payoff == DualPayoff::Copy ? "copy" : "negate";
    t.seed = opts_.seed;
    t.max_steps = opts_.max_steps;
    Cell pos = sc_.start;
    t.play.push_back(pos);
    visits_[pos] = 1;
    observe(pos);
    t.decisions.push_back("start at " + cell_name(pos));

    for (int stepno = 0; stepno < opts_.max_steps; ++stepno) {
      reselect(t, pos, stepno);
      std::optional<Move> move;
      if (!active_.empty()) {
        while (!can_improve(pos, active_)) {
          if (active_.size() == 1) {
            t.complete = true;
            t.decisions.push_back("step " + std::to_string(stepno) + ": single goal " + sc_.objects[active_[0]].id +
                                  " saturated; done");
            break;
          }
          shrink(t, pos, stepno);
        }
        if (t.complete) break;
        auto plan = plan_play(sc_, pos, active_, images_, opts_.plan);
        for (auto& line : plan.log) t.decisions.push_back("step " + std::to_string(stepno) + ": " + line);
        move = plan.moves.front();
      } else {
        move = wander(t, pos, stepno);
      }

      TraceEntry sys;
      sys.actor = "system";
      if (move) {
        pos = step(pos, *move);
        sys.move = std::string(1, move_char(*move));
      } else {
        sys.move = "stay";
      }
      ++visits_[pos];
      sys.position = pos;
      sys.objective = names(images_);
      t.entries.push_back(sys);

      auto vis = observe(pos);
      TraceEntry env;
      env.actor = "environment";
      env.move = "reveal";
      env.position = pos;
      env.rewards = names(vis);
      env.objective = names(images_);
      t.entries.push_back(env);
      t.play.push_back(pos);
    }
    if (!t.complete) {
      t.step_limit = true;
      t.decisions.push_back("step limit " + std::to_string(opts_.max_steps) + " reached");
    }
    t.final_active = ids(sc_, active_);
    for (std::size_t i = 0; i < sc_.objects.size(); ++i) {
      t.final_images.emplace_back(sc_.objects[i].id, sc_.objects[i].rewards.name(images_[i]));
    }
    for (std::size_t i = 0; i < sc_.objects.size(); ++i) {
      if (discovered_[i] && !reachable(sc_.objects[i].cell)) {
        t.decisions.push_back("object " + sc_.objects[i].id + " is visible but its cell cannot be reached");
      }
    }
    return t;
  }

 private:
  std::vector<Element> observe(Cell pos) {
    auto vis = visible_rewards(sc_, pos);
    for (std::size_t i = 0; i < vis.size(); ++i) {
      images_[i] = sc_.objects[i].rewards.join(images_[i], vis[i]);
      if (vis[i] != sc_.objects[i].rewards.bottom()) discovered_[i] = true;
    }
    return vis;
  }

  std::string goal_names(const std::vector<std::size_t>& objs) const {
    const Lattice& l = sc_.goal_phase->lattice();
    std::vector<std::string> out;
    for (auto i : objs) out.push_back(l.name(sc_.objects[i].goal));
    return join_ids(out);
  }

  std::vector<std::string> names(const std::vector<Element>& xs) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(sc_.objects[i].rewards.name(xs[i]));
    return out;
  }

  std::vector<std::size_t> discovered() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < discovered_.size(); ++i) {
      if (discovered_[i]) out.push_back(i);
    }
    return out;
  }

  // The object seen best from pos: largest visible fraction, then largest
  // image fraction, then attractiveness, then declaration order.
  std::size_t best_seen(Cell pos, const std::vector<std::size_t>& among) const {
    auto vis = visible_rewards(sc_, pos);
    auto key = [&](std::size_t i) {
      const auto f = sc_.objects[i].features.size();
      return std::make_tuple(rank(vis[i]) * 1000 / f, rank(images_[i]) * 1000 / f,
                             -static_cast<long>(sc_.objects[i].attractiveness.value_or(INT_MAX)), -static_cast<long>(i));
    };
    return *std::max_element(among.begin(), among.end(), [&](auto a, auto b) { return key(a) < key(b); });
  }

  void adopt(Trace& t, const GoalSelection& sel, int stepno, const char* what) {
    for (auto& line : sel.log) t.decisions.push_back("step " + std::to_string(stepno) + ": " + line);
    if (sel.indistinguishable) t.indistinguishable = true;
    active_ = sel.selected.front().objects;
    t.selections.push_back(ids(sc_, active_));
    std::vector<std::string> tops;
    for (const auto& g : sel.selected) tops.push_back(goal_names(g.objects));
    t.top_sets.push_back(std::move(tops));
    t.decisions.push_back("step " + std::to_string(stepno) + ": " + what + " " + join_ids(ids(sc_, active_)));
  }

  void reselect(Trace& t, Cell pos, int stepno) {
    auto disc = discovered();
    if (disc.empty() || shrunk_ || disc.size() == selected_from_) return;
    selected_from_ = disc.size();
    SelectOptions so;
    so.must_include = best_seen(pos, disc);
    adopt(t, select_goal_sets(sc_, disc, so), stepno, "active goals");
  }

  void shrink(Trace& t, Cell pos, int stepno) {
    ShrinkEvent ev;
    ev.step = stepno;
    ev.from = ids(sc_, active_);
    SelectOptions so;
    so.must_include = best_seen(pos, active_);
    so.size_below = active_.size();
    t.decisions.push_back("step " + std::to_string(stepno) + ": images of " + join_ids(ev.from) +
                          " cannot improve within " + std::to_string(lookahead_) + " moves");
    adopt(t, select_goal_sets(sc_, active_, so), stepno, "shrunk to");
    ev.to = ids(sc_, active_);
    t.shrinks.push_back(ev);
    shrunk_ = true;
  }

  bool can_improve(Cell pos, const std::vector<std::size_t>& goals) const {
    bool better = false;
    enumerate_plays(sc_, pos, lookahead_, [&](const std::vector<Move>&, const std::vector<Cell>& path) {
      if (better) return;
      auto vis = visible_rewards(sc_, path.back());
      for (auto g : goals) {
        if (!sc_.objects[g].rewards.leq(vis[g], images_[g])) better = true;
      }
    });
    return better;
  }

  std::optional<Move> wander(Trace& t, Cell pos, int stepno) {
    auto moves = legal_moves(sc_, pos);
    if (moves.empty()) {
      t.decisions.push_back("step " + std::to_string(stepno) + ": free move: no legal move, staying");
      return std::nullopt;
    }
    // Free-move criterion: fewest visits, then most onward freedom.
    auto key = [&](Move m) {
      auto d = step(pos, m);
      auto it = visits_.find(d);
      int seen = it == visits_.end() ? 0 : it->second;
      return std::make_pair(-seen, static_cast<int>(legal_moves(sc_, d).size()));
    };
    auto best = key(*std::max_element(moves.begin(), moves.end(), [&](Move a, Move b) { return key(a) < key(b); }));
    std::vector<Move> ties;
    for (auto m : moves) {
      if (key(m) == best) ties.push_back(m);
    }
    std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
    auto m = ties[pick(rng_)];
    t.decisions.push_back("step " + std::to_string(stepno) + ": free move " + std::string(1, move_char(m)) +
                          (ties.size() > 1 ? " (seeded tie-break among " + std::to_string(ties.size()) + ")" : ""));
    return m;
  }

  bool reachable(Cell target) const {
    std::set<Cell> seen{sc_.start};
    std::vector<Cell> todo{sc_.start};
    while (!todo.empty()) {
      auto c = todo.back();
      todo.pop_back();
      if (c == target) return true;
      for (auto m : legal_moves(sc_, c)) {
        auto d = step(c, m);
        if (seen.insert(d).second) todo.push_back(d);
      }
    }
    return false;
  }

  const Scenario& sc_;
  CognitionOptions opts_;
  Rng rng_;
  int lookahead_ = 1;
  std::vector<Element> images_;
  std::vector<bool> discovered_;
  std::vector<std::size_t> active_;
  std::size_t selected_from_ = 0;
  bool shrunk_ = false;
  std::map<Cell, int> visits_;
};

}  // namespace

Trace run_cognition(const Scenario& sc, const CognitionOptions& options) { return Cognition(sc, options).run(); }

}  // namespace phasegame
