#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <set>

#include "phasegame/error.hpp"
#include "phasegame/io.hpp"
#include "phasegame/planner.hpp"

using namespace phasegame;
namespace fs = std::filesystem;

namespace {

const fs::path kData = PHASEGAME_DATA_DIR;

std::shared_ptr<const PhaseStructure> fig1() {
  static auto ps = std::make_shared<const PhaseStructure>(io::load_phase(kData / "fig1_phase.json"));
  return ps;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

Scenario open_room(std::vector<ObjectSpec> objects, int horizon = 2, Cell start = {2, 2}) {
  return make_scenario({".....", ".....", ".....", ".....", "....."}, start, horizon, std::move(objects), fig1(), "a");
}

std::size_t index_of(const Scenario& sc, const std::string& id) {
  for (std::size_t i = 0; i < sc.objects.size(); ++i) {
    if (sc.objects[i].id == id) return i;
  }
  return sc.objects.size();
}

std::vector<Element> bottoms(const Scenario& sc) {
  std::vector<Element> v;
  for (const auto& o : sc.objects) v.push_back(o.rewards.bottom());
  return v;
}

// Every play of 1..depth legal moves from `from`, as cell paths.
void all_paths(const Scenario& sc, std::vector<Cell> path, int depth, std::vector<std::vector<Cell>>& out) {
  if (path.size() > 1) out.push_back(path);
  if (static_cast<int>(path.size()) - 1 == depth) return;
  for (auto m : {Move::N, Move::E, Move::S, Move::W}) {
    auto c = step(path.back(), m);
    if (!sc.passable(c)) continue;
    path.push_back(c);
    all_paths(sc, path, depth, out);
    path.pop_back();
  }
}

}  // namespace

TEST(Scenario, GridValidation) {
  EXPECT_EQ(kind_of([] { make_scenario({}, {0, 0}, 1, {}, fig1(), "a"); }), ErrorKind::BadGrid);
  EXPECT_EQ(kind_of([] { make_scenario({"..", "."}, {0, 0}, 1, {}, fig1(), "a"); }), ErrorKind::BadGrid);
  EXPECT_EQ(kind_of([] { make_scenario({".x"}, {0, 0}, 1, {}, fig1(), "a"); }), ErrorKind::BadGrid);
  EXPECT_EQ(kind_of([] { make_scenario({"#."}, {0, 0}, 1, {}, fig1(), "a"); }), ErrorKind::BadGrid);
  EXPECT_EQ(kind_of([] { make_scenario({".."}, {0, 0}, -1, {}, fig1(), "a"); }), ErrorKind::BadGrid);
  EXPECT_EQ(kind_of([] { make_scenario({".."}, {0, 0}, 1, {{"o", {3, 3}, {"f"}, "e", {}}}, fig1(), "a"); }),
            ErrorKind::BadGrid);
  EXPECT_NO_THROW(make_scenario({"."}, {0, 0}, 0, {}, fig1(), "a"));
}

TEST(Scenario, GoalValidation) {
  EXPECT_EQ(kind_of([] { open_room({{"o", {0, 0}, {"f"}, "nope", {}}}); }), ErrorKind::UnknownGoalElement);
  // J23 = b2 ∨ b3 is neither a generator nor a generator joined with a.
  EXPECT_EQ(kind_of([] { open_room({{"o", {0, 0}, {"f"}, "J23", {}}}); }), ErrorKind::UnknownGoalElement);
  EXPECT_EQ(kind_of([] { open_room({{"o", {0, 0}, {"f"}, "e", {}}, {"p", {1, 1}, {"f"}, "e", {}}}); }),
            ErrorKind::UnknownGoalElement);
  EXPECT_NO_THROW(open_room({{"o", {0, 0}, {"f"}, "J1a", {}}}));
}

TEST(Visibility, DistanceControlsTheRevealedPrefix) {
  auto sc = open_room({{"o", {2, 2}, {"shape", "colour", "size"}, "e", {}}}, 4, {2, 2});
  const auto& r = sc.objects[0].rewards;
  EXPECT_EQ(visible_rewards(sc, {2, 2})[0], r.top());
  auto far = make_scenario({"......"}, {0, 0}, 4, {{"o", {0, 5}, {"shape", "colour", "size"}, "e", {}}}, fig1(), "a");
  EXPECT_EQ(visible_rewards(far, {0, 0})[0], far.objects[0].rewards.bottom());
  EXPECT_EQ(far.objects[0].rewards.name(visible_rewards(far, {0, 1})[0]), "{shape}");
  // Revealed sets only grow as the distance shrinks.
  for (int c = 0; c < 5; ++c) {
    EXPECT_TRUE(far.objects[0].rewards.leq(visible_rewards(far, {0, c})[0], visible_rewards(far, {0, c + 1})[0]));
  }
}

TEST(Priority, EstimationsOnTheGoalLattice) {
  const auto& ps = *fig1();
  const auto& l = ps.lattice();
  auto prio = [&](std::vector<std::string> names) {
    std::vector<Element> goals;
    for (const auto& n : names) goals.push_back(l.element(n));
    return l.name(eval_priority(ps, l.element("a"), goals));
  };
  EXPECT_EQ(prio({"J1a", "e", "b2"}), "top");
  EXPECT_EQ(prio({"J1a", "e", "b3"}), "b1");
  EXPECT_EQ(prio({"e"}), "top");
}

TEST(Selection, SingleGoal) {
  auto sc = open_room({{"o", {0, 0}, {"f"}, "e", {}}});
  auto sel = select_goal_sets(sc, {0});
  ASSERT_EQ(sel.selected.size(), 1u);
  EXPECT_EQ(sel.selected[0].objects, std::vector<std::size_t>{0});
  EXPECT_FALSE(sel.indistinguishable);
}

TEST(Selection, Fig2PreferredVariants) {
  auto sc = io::load_scenario(kData / "scenarios" / "fig2.json");
  auto sel = select_goal_sets(sc, {0, 1, 2, 3}, SelectOptions{index_of(sc, "e"), {}});
  ASSERT_EQ(sel.selected.size(), 2u);
  std::set<std::string> first, second;
  for (auto i : sel.selected[0].objects) first.insert(sc.goal_phase->lattice().name(sc.objects[i].goal));
  for (auto i : sel.selected[1].objects) second.insert(sc.goal_phase->lattice().name(sc.objects[i].goal));
  EXPECT_EQ(first, (std::set<std::string>{"J1a", "e", "b2"}));
  EXPECT_EQ(second, (std::set<std::string>{"e", "b2", "b3"}));
  EXPECT_EQ(sel.candidates.size(), 8u);
}

TEST(Selection, InvariantUnderInputOrder) {
  auto sc = io::load_scenario(kData / "scenarios" / "fig2.json");
  std::vector<std::size_t> order{0, 1, 2, 3};
  auto reference = select_goal_sets(sc, order);
  do {
    auto sel = select_goal_sets(sc, order);
    ASSERT_EQ(sel.selected.size(), reference.selected.size());
    for (std::size_t i = 0; i < sel.selected.size(); ++i) {
      EXPECT_EQ(sel.selected[i].objects, reference.selected[i].objects);
    }
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Selection, SizeFilterAndEmptyInput) {
  auto sc = io::load_scenario(kData / "scenarios" / "fig2.json");
  auto sel = select_goal_sets(sc, {0, 1, 2, 3}, SelectOptions{index_of(sc, "e"), 2});
  for (const auto& g : sel.candidates) EXPECT_LT(g.objects.size(), 2u);
  EXPECT_EQ(kind_of([&] { select_goal_sets(sc, {}); }), ErrorKind::InvalidInput);
}

TEST(CompoundGame, SizeIsTheProductOfFactors) {
  auto sc = io::load_scenario(kData / "scenarios" / "fig2.json");
  std::vector<std::size_t> goals{0, 1, 2};
  auto cg = build_compound_game(sc, sc.start, goals);
  std::size_t expected = cg.a->size();
  for (const auto& b : cg.b) expected *= b->size();
  EXPECT_EQ(cg.game->size(), expected);
  EXPECT_EQ(cg.b.size(), 3u);
  auto dot = to_dot(*cg.a, {0});
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("penwidth=3"), std::string::npos);
}

TEST(CompoundGame, SingleCellWithGoalAtStart) {
  auto sc = make_scenario({"."}, {0, 0}, 1, {{"o", {0, 0}, {"f", "g"}, "e", {}}}, fig1(), "a");
  auto cg = build_compound_game(sc, sc.start, {0});
  EXPECT_EQ(cg.a->size(), 1u);
  EXPECT_EQ(visible_rewards(sc, sc.start)[0], sc.objects[0].rewards.top());
  auto empty = make_scenario({"."}, {0, 0}, 1, {}, fig1(), "a");
  EXPECT_EQ(kind_of([&] { build_compound_game(empty, empty.start, {}); }), ErrorKind::HorizonEmpty);
}

TEST(Plan, StraightLineToAnAdjacentGoal) {
  auto sc = make_scenario({"...."}, {0, 0}, 1, {{"o", {0, 1}, {"f", "g"}, "e", {}}}, fig1(), "a");
  auto plan = plan_play(sc, sc.start, {0}, bottoms(sc));
  ASSERT_FALSE(plan.moves.empty());
  EXPECT_EQ(plan.moves.front(), Move::E);
  EXPECT_EQ(plan.path.back(), (Cell{0, 1}));
  EXPECT_EQ(plan.objective[0], sc.objects[0].rewards.top());
}

TEST(Plan, ReturnedObjectiveIsMaximal) {
  auto sc = io::load_scenario(kData / "scenarios" / "fig2.json");
  std::vector<std::size_t> goals{0, 1, 2};
  for (auto objective : {Objective::Practical, Objective::Strict}) {
    PlanOptions opts;
    opts.objective = objective;
    opts.depth = 3;
    auto plan = plan_play(sc, sc.start, goals, bottoms(sc), opts);
    std::vector<std::vector<Cell>> paths;
    all_paths(sc, {sc.start}, 3, paths);
    EXPECT_EQ(plan.plays_considered, paths.size());
    for (const auto& p : paths) {
      auto obj = play_objective(sc, p, goals, bottoms(sc), opts);
      bool strictly_above = reward_leq(sc, goals, plan.objective, obj) && obj != plan.objective;
      EXPECT_FALSE(strictly_above);
    }
  }
}

TEST(Plan, SingleChainGoalReachesTheBestVisibleReward) {
  auto sc = make_scenario({".....", ".#...", ".....", "....."}, {3, 0}, 3,
                          {{"o", {0, 4}, {"f", "g", "h"}, "e", {}}}, fig1(), "a");
  auto plan = plan_play(sc, sc.start, {0}, bottoms(sc));
  std::vector<std::vector<Cell>> paths;
  all_paths(sc, {sc.start}, 3, paths);
  std::size_t best = 0;
  for (const auto& p : paths) best = std::max<std::size_t>(best, sc.objects[0].rewards.atom_rank(visible_rewards(sc, p.back())[0]));
  EXPECT_EQ(sc.objects[0].rewards.atom_rank(visible_rewards(sc, plan.path.back())[0]), best);
}

TEST(Plan, NoLegalMove) {
  auto sc = make_scenario({".#"}, {0, 0}, 1, {}, fig1(), "a");
  EXPECT_EQ(kind_of([&] { plan_play(sc, sc.start, {}, {}); }), ErrorKind::HorizonEmpty);
}

TEST(Cognition, EmptySceneWandersUntilTheStepLimit) {
  auto sc = io::load_scenario(kData / "scenarios" / "empty.json");
  CognitionOptions opts;
  opts.max_steps = 12;
  auto t = run_cognition(sc, opts);
  EXPECT_TRUE(t.step_limit);
  EXPECT_FALSE(t.complete);
  EXPECT_EQ(t.play.size(), 13u);
  EXPECT_TRUE(t.selections.empty());
}

TEST(Cognition, ObjectAtStartFinishesQuickly) {
  auto sc = io::load_scenario(kData / "scenarios" / "object_at_start.json");
  auto t = run_cognition(sc);
  EXPECT_TRUE(t.complete);
  EXPECT_LE(t.play.size(), 3u);
}

TEST(Cognition, Fig2ShrinksToOneSaturatedGoal) {
  auto sc = io::load_scenario(kData / "scenarios" / "fig2.json");
  auto t = run_cognition(sc);
  EXPECT_TRUE(t.complete);
  ASSERT_EQ(t.final_active.size(), 1u);
  ASSERT_FALSE(t.shrinks.empty());
  EXPECT_EQ(t.shrinks.back().to.size(), 1u);
  const auto idx = index_of(sc, t.final_active[0]);
  const auto& images = t.final_images;
  auto it = std::find_if(images.begin(), images.end(), [&](const auto& p) { return p.first == t.final_active[0]; });
  ASSERT_NE(it, images.end());
  EXPECT_EQ(it->second, sc.objects[idx].rewards.name(sc.objects[idx].rewards.top()));
  ASSERT_FALSE(t.top_sets.empty());
  EXPECT_EQ(t.top_sets[0].size(), 2u);
}

TEST(Cognition, WalledGoalIsNeverReached) {
  auto sc = io::load_scenario(kData / "scenarios" / "walled_goal.json");
  auto t = run_cognition(sc);
  for (auto c : t.play) EXPECT_NE(c, sc.objects[0].cell);
  bool noted = std::any_of(t.decisions.begin(), t.decisions.end(),
                           [](const std::string& d) { return d.find("cannot be reached") != std::string::npos; });
  EXPECT_TRUE(noted);
}

TEST(Cognition, DeterministicForAFixedSeed) {
  for (const char* name : {"fig2.json", "empty.json", "walled_goal.json"}) {
    auto sc = io::load_scenario(kData / "scenarios" / name);
    CognitionOptions opts;
    opts.seed = 1234;
    EXPECT_EQ(io::to_json(run_cognition(sc, opts)).dump(), io::to_json(run_cognition(sc, opts)).dump()) << name;
  }
}

TEST(Cognition, ImagesNeverShrink) {
  for (const char* name : {"fig2.json", "walled_goal.json", "object_at_start.json"}) {
    auto sc = io::load_scenario(kData / "scenarios" / name);
    for (auto mode : {Objective::Practical, Objective::Strict}) {
      CognitionOptions opts;
      opts.plan.objective = mode;
      auto t = run_cognition(sc, opts);
      auto prev = bottoms(sc);
      for (const auto& e : t.entries) {
        for (std::size_t i = 0; i < sc.objects.size(); ++i) {
          auto cur = sc.objects[i].rewards.element(e.objective[i]);
          EXPECT_TRUE(sc.objects[i].rewards.leq(prev[i], cur));
          prev[i] = cur;
        }
      }
    }
  }
}
