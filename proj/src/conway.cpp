#include "phasegame/conway.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_set>

#include "phasegame/error.hpp"

namespace phasegame {

namespace {

std::shared_ptr<Game> clone(const Game& g) { return std::make_shared<Game>(g); }

}  // namespace

GamePtr Game::make(std::vector<std::string> vertices, std::uint32_t root, std::vector<Edge> edges) {
  if (vertices.empty()) throw Error(ErrorKind::InvalidGame, "game needs at least a root");
  std::unordered_set<std::string> seen;
  for (const auto& v : vertices) {
    if (!seen.insert(v).second) throw Error(ErrorKind::InvalidGame, "duplicate vertex '" + v + "'");
  }
  if (root >= vertices.size()) throw Error(ErrorKind::InvalidGame, "root is not a vertex");
  for (const auto& e : edges) {
    if (e.from >= vertices.size() || e.to >= vertices.size()) {
      throw Error(ErrorKind::InvalidGame, "edge endpoint is not a vertex");
    }
  }
  auto g = std::make_shared<Game>();
  g->names_ = std::move(vertices);
  g->root_ = root;
  g->edges_ = std::move(edges);
  g->origins_.assign(g->edges_.size(), EdgeOrigin{});
  g->index();

  std::vector<char> reached(g->size(), 0);
  std::vector<std::uint32_t> stack{root};
  reached[root] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto e : g->out_[v]) {
      auto t = g->edges_[e].to;
      if (!reached[t]) {
        reached[t] = 1;
        stack.push_back(t);
      }
    }
  }
  for (std::size_t v = 0; v < g->size(); ++v) {
    if (!reached[v]) throw Error(ErrorKind::InvalidGame, "vertex '" + g->names_[v] + "' is unreachable from the root");
  }
  return g;
}

GamePtr Game::unit(std::string name) { return make({std::move(name)}, 0, {}); }

void Game::index() {
  out_.assign(names_.size(), {});
  for (std::uint32_t e = 0; e < edges_.size(); ++e) out_[edges_[e].from].push_back(e);
}

std::optional<std::uint32_t> Game::vertex(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - names_.begin());
}

bool Game::is_acyclic() const {
  std::vector<char> state(size(), 0);
  std::function<bool(std::uint32_t)> visit = [&](std::uint32_t v) {
    state[v] = 1;
    for (auto e : out_[v]) {
      auto t = edges_[e].to;
      if (state[t] == 1) return false;
      if (state[t] == 0 && !visit(t)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (std::uint32_t v = 0; v < size(); ++v) {
    if (state[v] == 0 && !visit(v)) return false;
  }
  return true;
}

std::pair<std::uint32_t, std::uint32_t> Game::components(std::uint32_t v) const {
  if (!is_product()) throw Error(ErrorKind::InvalidGame, "not a product game");
  auto r = static_cast<std::uint32_t>(right_->size());
  return {v / r, v % r};
}

std::uint32_t Game::pair_vertex(std::uint32_t l, std::uint32_t r) const {
  if (!is_product()) throw Error(ErrorKind::InvalidGame, "not a product game");
  return l * static_cast<std::uint32_t>(right_->size()) + r;
}

std::optional<std::uint32_t> Game::find_edge(std::uint32_t from, int side, std::uint32_t component_edge) const {
  for (auto e : out_.at(from)) {
    if (origins_[e].side == side && origins_[e].component_edge == component_edge) return e;
  }
  return std::nullopt;
}

bool Game::same_structure(const Game& other) const {
  return names_ == other.names_ && root_ == other.root_ && edges_ == other.edges_;
}

GamePtr dual_game(const GamePtr& g) {
  auto d = clone(*g);
  for (auto& e : d->edges_) e.polarity = flip(e.polarity);
  if (g->is_product()) {
    d->left_ = dual_game(g->left_);
    d->right_ = dual_game(g->right_);
  }
  d->source_.reset();
  return d;
}

GamePtr tensor_game(const GamePtr& x, const GamePtr& y) {
  auto g = std::make_shared<Game>();
  const auto nx = static_cast<std::uint32_t>(x->size());
  const auto ny = static_cast<std::uint32_t>(y->size());
  g->names_.reserve(nx * ny);
  for (std::uint32_t a = 0; a < nx; ++a) {
    for (std::uint32_t b = 0; b < ny; ++b) g->names_.push_back("(" + x->name(a) + "," + y->name(b) + ")");
  }
  g->root_ = x->root() * ny + y->root();
  for (std::uint32_t a = 0; a < nx; ++a) {
    for (std::uint32_t b = 0; b < ny; ++b) {
      for (auto e : x->out_edges(a)) {
        const auto& ed = x->edge(e);
        g->edges_.push_back({a * ny + b, ed.to * ny + b, ed.polarity});
        g->origins_.push_back({0, e});
      }
      for (auto e : y->out_edges(b)) {
        const auto& ed = y->edge(e);
        g->edges_.push_back({a * ny + b, a * ny + ed.to, ed.polarity});
        g->origins_.push_back({1, e});
      }
    }
  }
  g->left_ = x;
  g->right_ = y;
  g->index();
  return g;
}

GamePtr implication_game(const GamePtr& x, const GamePtr& y) {
  auto g = clone(*tensor_game(dual_game(x), y));
  g->source_ = x;
  return g;
}

bool is_path(const Game& g, const Play& p) {
  auto v = g.root();
  for (auto e : p) {
    if (e >= g.edges().size() || g.edge(e).from != v) return false;
    v = g.edge(e).to;
  }
  return true;
}

std::uint32_t end_vertex(const Game& g, const Play& p) { return p.empty() ? g.root() : g.edge(p.back()).to; }

bool is_alternated(const Game& g, const Play& p) {
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (g.edge(p[i]).polarity == g.edge(p[i - 1]).polarity) return false;
  }
  return true;
}

StrategyReport validate_strategy(const Strategy& s) {
  StrategyReport rep;
  auto fail = [&](std::string msg) {
    if (rep.violations.size() < 8) rep.violations.push_back(std::move(msg));
  };
  if (!s.game) {
    fail("game: strategy has no game");
    return rep;
  }
  if (s.plays.empty()) fail("nonempty: strategy has no plays");
  const Game& g = *s.game;
  std::map<Play, std::uint32_t> response;
  for (const auto& p : s.plays) {
    if (!is_path(g, p)) {
      fail("path: a play is not a path from the root");
      continue;
    }
    if (p.size() % 2 != 0) fail("even-length: a play has odd length");
    if (!p.empty() && g.edge(p[0]).polarity != Polarity::Opponent) fail("opponent-first: a play starts with a Proponent move");
    if (!is_alternated(g, p)) fail("alternated: a play repeats a polarity");
    if (p.size() >= 2 && p.size() % 2 == 0) {
      Play prefix(p.begin(), p.end() - 2);
      if (!s.plays.count(prefix)) fail("prefix-closed: an even prefix is missing");
      Play odd(p.begin(), p.end() - 1);
      auto [it, fresh] = response.emplace(odd, p.back());
      if (!fresh && it->second != p.back()) fail("deterministic: two responses to the same Opponent move");
    }
  }
  return rep;
}

void require_valid(const Strategy& s) {
  auto rep = validate_strategy(s);
  if (!rep.valid()) throw Error(ErrorKind::InvalidStrategy, rep.violations.front());
}

std::vector<Play> maximal_plays(const Strategy& s) {
  std::vector<Play> out;
  for (auto it = s.plays.begin(); it != s.plays.end(); ++it) {
    auto next = std::next(it);
    bool extended = next != s.plays.end() && next->size() > it->size() &&
                    std::equal(it->begin(), it->end(), next->begin());
    if (!extended) out.push_back(*it);
  }
  return out;
}

Strategy copycat(const GamePtr& x, std::size_t max_length) {
  if (max_length == 0) max_length = 2 * x->size();
  auto g = implication_game(x, x);
  Strategy s{g, {Play{}}};
  std::function<void(const Play&, std::uint32_t)> grow = [&](const Play& play, std::uint32_t a) {
    if (play.size() + 2 > max_length) return;
    for (auto e : g->out_edges(g->pair_vertex(a, a))) {
      if (g->edge(e).polarity != Polarity::Opponent) continue;
      const auto& o = g->origin(e);
      auto reply = g->find_edge(g->edge(e).to, 1 - o.side, o.component_edge);
      if (!reply || g->edge(*reply).polarity != Polarity::Proponent) continue;
      Play next = play;
      next.push_back(e);
      next.push_back(*reply);
      s.plays.insert(next);
      grow(next, x->edge(o.component_edge).to);
    }
  };
  grow({}, x->root());
  return s;
}

namespace {

std::map<Play, std::uint32_t> responses(const Strategy& s) {
  std::map<Play, std::uint32_t> r;
  for (const auto& p : s.plays) {
    if (p.size() >= 2) r.emplace(Play(p.begin(), p.end() - 1), p.back());
  }
  return r;
}

class Composer {
 public:
  Composer(const Strategy& sigma, const Strategy& tau, const ComposeOptions& opts) : sigma_(sigma), tau_(tau) {
    g1_ = sigma.game;
    g2_ = tau.game;
    if (!g1_ || !g2_ || !g1_->implication_source() || !g2_->implication_source()) {
      throw Error(ErrorKind::ComponentMismatch, "both strategies must live on implication games");
    }
    if (!g1_->right()->same_structure(*g2_->implication_source())) {
      throw Error(ErrorKind::ComponentMismatch, "the middle games of the two strategies differ");
    }
    require_valid(sigma);
    require_valid(tau);
    x_ = g1_->implication_source();
    y_ = g1_->right();
    z_ = g2_->right();
    g_ = implication_game(x_, z_);
    r1_ = responses(sigma);
    r2_ = responses(tau);
    step_cap_ = x_->size() * y_->size() * z_->size() * 4;
    max_length_ = opts.max_length ? opts.max_length : 2 * x_->size() * z_->size();
  }

  Strategy run() {
    Strategy out{g_, {Play{}}};
    State start{{}, {}, {}, g_->root(), g1_->root(), g2_->root()};
    grow(start, out);
    return out;
  }

 private:
  struct State {
    Play play, s1, s2;
    std::uint32_t v, v1, v2;  // positions in X⊸Z, X⊸Y, Y⊸Z
  };

  void grow(const State& st, Strategy& out) {
    if (st.play.size() + 2 > max_length_) return;
    for (auto e : g_->out_edges(st.v)) {
      if (g_->edge(e).polarity != Polarity::Opponent) continue;
      auto next = interact(st, e);
      if (!next) continue;
      out.plays.insert(next->play);
      grow(*next, out);
    }
  }

  // Runs the hidden dialogue triggered by the visible Opponent move e until a
  // visible Proponent answer appears. Nullopt when a strategy has no answer.
  std::optional<State> interact(State st, std::uint32_t e) {
    const auto& o = g_->origin(e);
    st.play.push_back(e);
    st.v = g_->edge(e).to;
    // Which strategy must answer next, and the move it answers (side-local).
    bool in_sigma = o.side == 0;
    std::uint32_t pending = in_sigma ? *g1_->find_edge(st.v1, 0, o.component_edge)
                                     : *g2_->find_edge(st.v2, 1, o.component_edge);
    for (std::size_t steps = 0;; ++steps) {
      if (steps > step_cap_) {
        throw Error(ErrorKind::StepCapExceeded, "hidden interaction exceeded " + std::to_string(step_cap_) + " steps");
      }
      if (in_sigma) {
        st.s1.push_back(pending);
        st.v1 = g1_->edge(pending).to;
        auto it = r1_.find(st.s1);
        if (it == r1_.end()) return std::nullopt;
        auto r = it->second;
        st.s1.push_back(r);
        st.v1 = g1_->edge(r).to;
        const auto& ro = g1_->origin(r);
        if (ro.side == 0) {
          auto vis = g_->find_edge(st.v, 0, ro.component_edge);
          st.play.push_back(*vis);
          st.v = g_->edge(*vis).to;
          return st;
        }
        pending = *g2_->find_edge(st.v2, 0, ro.component_edge);
        in_sigma = false;
      } else {
        st.s2.push_back(pending);
        st.v2 = g2_->edge(pending).to;
        auto it = r2_.find(st.s2);
        if (it == r2_.end()) return std::nullopt;
        auto r = it->second;
        st.s2.push_back(r);
        st.v2 = g2_->edge(r).to;
        const auto& ro = g2_->origin(r);
        if (ro.side == 1) {
          auto vis = g_->find_edge(st.v, 1, ro.component_edge);
          st.play.push_back(*vis);
          st.v = g_->edge(*vis).to;
          return st;
        }
        pending = *g1_->find_edge(st.v1, 1, ro.component_edge);
        in_sigma = true;
      }
    }
  }

  const Strategy& sigma_;
  const Strategy& tau_;
  GamePtr g1_, g2_, g_, x_, y_, z_;
  std::map<Play, std::uint32_t> r1_, r2_;
  std::size_t step_cap_ = 0;
  std::size_t max_length_ = 0;
};

}  // namespace

Strategy compose_strategies(const Strategy& sigma, const Strategy& tau, const ComposeOptions& options) {
  return Composer(sigma, tau, options).run();
}

PayoffGame PayoffGame::make(GamePtr game, Lattice lattice, std::vector<Element> k) {
  if (!game) throw Error(ErrorKind::InvalidGame, "payoff game without a game");
  if (!lattice.is_distributive()) throw Error(ErrorKind::NotHeyting, "payoff lattice is not distributive");
  if (k.size() != game->size()) throw Error(ErrorKind::InvalidGame, "payoff map must cover every vertex");
  for (auto x : k) {
    if (!lattice.contains(x)) throw Error(ErrorKind::ForeignElement, "payoff from another lattice");
  }
  return PayoffGame{std::move(game), std::move(lattice), std::move(k)};
}

PayoffGame payoff_dual(const PayoffGame& a, DualPayoff mode) {
  std::vector<Element> k = a.k;
  if (mode == DualPayoff::Negate) {
    for (auto& x : k) x = a.lattice.heyting_neg(x);
  }
  return PayoffGame{dual_game(a.game), a.lattice, std::move(k)};
}

namespace {

PayoffGame combine(const PayoffGame& a, const PayoffGame& b, GamePtr g,
                   const std::function<Element(Element, Element)>& op) {
  if (!a.lattice.same_as(b.lattice)) throw Error(ErrorKind::LatticeMismatch, "payoff games use different lattices");
  std::vector<Element> k(g->size());
  const auto nb = b.game->size();
  for (std::size_t x = 0; x < a.game->size(); ++x) {
    for (std::size_t y = 0; y < nb; ++y) k[x * nb + y] = op(a.k[x], b.k[y]);
  }
  return PayoffGame{std::move(g), a.lattice, std::move(k)};
}

}  // namespace

PayoffGame payoff_tensor(const PayoffGame& a, const PayoffGame& b) {
  return combine(a, b, tensor_game(a.game, b.game), [&](Element x, Element y) { return a.lattice.meet(x, y); });
}

PayoffGame payoff_implication(const PayoffGame& a, const PayoffGame& b) {
  return combine(a, b, implication_game(a.game, b.game),
                 [&](Element x, Element y) { return a.lattice.heyting_implies(x, y); });
}

bool is_winning(const Strategy& s, const PayoffGame& pg) {
  if (!s.game || !s.game->same_structure(*pg.game)) {
    throw Error(ErrorKind::InvalidStrategy, "strategy and payoff game differ");
  }
  require_valid(s);
  for (const auto& p : maximal_plays(s)) {
    if (pg.k[end_vertex(*s.game, p)] == pg.lattice.bottom()) return false;
  }
  return true;
}

Lattice random_distributive_lattice(Rng& rng, std::size_t max_size) {
  if (max_size < 2) throw Error(ErrorKind::InvalidInput, "random lattices need room for at least two elements");
  std::uniform_int_distribution<int> points(1, 7);
  std::bernoulli_distribution related(0.35);
  for (;;) {
    const int k = points(rng);
    // below[j] holds the points strictly under j; only i < j may relate, so no cycles.
    std::vector<std::uint32_t> below(k, 0);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < j; ++i) {
        if (related(rng)) below[j] |= (1u << i) | below[i];
      }
    }
    std::vector<std::uint32_t> downsets;
    for (std::uint32_t m = 0; m < (1u << k); ++m) {
      bool closed = true;
      for (int j = 0; j < k && closed; ++j) {
        if ((m >> j & 1) && (below[j] & ~m)) closed = false;
      }
      if (closed) downsets.push_back(m);
      if (downsets.size() > max_size) break;
    }
    if (downsets.size() > max_size) continue;
    auto name = [](std::uint32_t m) {
      std::string s = "{";
      for (int i = 0; m >> i; ++i) {
        if (m >> i & 1) s += (s.size() > 1 ? "," : "") + std::to_string(i);
      }
      return s + "}";
    };
    LatticeSpec spec;
    for (auto m : downsets) spec.elements.push_back(name(m));
    for (auto a : downsets) {
      for (auto b : downsets) {
        if ((a & b) == a && std::popcount(b) == std::popcount(a) + 1) spec.covers.emplace_back(name(a), name(b));
      }
    }
    spec.bottom = name(0);
    spec.top = name((1u << k) - 1);
    return Lattice::from_spec(spec);
  }
}

GamePtr random_dag_game(Rng& rng, std::size_t max_vertices, const std::string& prefix) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_vertices));
  std::bernoulli_distribution extra(0.25), proponent(0.5);
  const auto n = count(rng);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  std::vector<Edge> edges;
  auto pol = [&] { return proponent(rng) ? Polarity::Proponent : Polarity::Opponent; };
  for (std::uint32_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::uint32_t> parent(0, v - 1);
    auto u = parent(rng);
    edges.push_back({u, v, pol()});
    for (std::uint32_t w = 0; w < v; ++w) {
      if (w != u && extra(rng)) edges.push_back({w, v, pol()});
    }
  }
  return Game::make(std::move(names), 0, std::move(edges));
}

std::vector<Element> random_payoff(Rng& rng, const Lattice& l, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, l.size() - 1);
  std::vector<Element> k(n);
  for (auto& x : k) x = l.at(pick(rng));
  return k;
}

std::optional<Strategy> random_winning_strategy(Rng& rng, const PayoffGame& pg) {
  const Game& g = *pg.game;
  if (!g.is_acyclic()) throw Error(ErrorKind::InvalidGame, "winning-strategy generation needs an acyclic game");
  // win[v]: from v (Opponent to move) the answer-everything strategy can stay winning.
  std::vector<int> win(g.size(), -1);
  std::function<bool(std::uint32_t)> wins = [&](std::uint32_t v) -> bool {
    if (win[v] >= 0) return win[v];
    bool any_answerable = false, ok = true;
    for (auto m : g.out_edges(v)) {
      if (g.edge(m).polarity != Polarity::Opponent) continue;
      bool answerable = false, good = false;
      for (auto n : g.out_edges(g.edge(m).to)) {
        if (g.edge(n).polarity != Polarity::Proponent) continue;
        answerable = true;
        if (wins(g.edge(n).to)) good = true;
      }
      if (answerable) {
        any_answerable = true;
        ok = ok && good;
      }
    }
    win[v] = any_answerable ? ok : pg.k[v] != pg.lattice.bottom();
    return win[v];
  };
  if (!wins(g.root())) return std::nullopt;

  Strategy s{pg.game, {Play{}}};
  std::function<void(const Play&, std::uint32_t)> grow = [&](const Play& play, std::uint32_t v) {
    for (auto m : g.out_edges(v)) {
      if (g.edge(m).polarity != Polarity::Opponent) continue;
      std::vector<std::uint32_t> good;
      for (auto n : g.out_edges(g.edge(m).to)) {
        if (g.edge(n).polarity == Polarity::Proponent && wins(g.edge(n).to)) good.push_back(n);
      }
      if (good.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, good.size() - 1);
      auto n = good[pick(rng)];
      Play next = play;
      next.push_back(m);
      next.push_back(n);
      s.plays.insert(next);
      grow(next, g.edge(n).to);
    }
  };
  grow({}, g.root());
  return s;
}

}  // namespace phasegame
