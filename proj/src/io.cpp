#include "phasegame/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "phasegame/error.hpp"

namespace phasegame::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& need(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) bad(std::string("missing key '") + key + "'");
  return doc.at(key);
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Element elem(const Lattice& l, const json& j, const char* what) {
  auto name = str(j, what);
  try {
    return l.element(name);
  } catch (const Error&) {
    bad(std::string(what) + ": unknown element '" + name + "'");
  }
}

Cell cell_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    bad("cells are [row, col] integer pairs");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

json cell_to(Cell c) { return json::array({c.row, c.col}); }

Lattice lattice_ref(const json& j, const fs::path& base_dir) {
  if (j.is_string()) return load_lattice(base_dir / j.get<std::string>());
  return Lattice::from_spec(lattice_spec_from_json(j));
}

}  // namespace

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

LatticeSpec lattice_spec_from_json(const json& doc) {
  LatticeSpec spec;
  const auto& els = need(doc, "elements");
  if (!els.is_array()) bad("'elements' must be an array");
  for (const auto& e : els) spec.elements.push_back(str(e, "element"));
  const auto& covers = need(doc, "covers");
  if (!covers.is_array()) bad("'covers' must be an array");
  for (const auto& c : covers) {
    if (!c.is_array() || c.size() != 2) bad("covers are [lower, upper] pairs");
    spec.covers.emplace_back(str(c[0], "cover"), str(c[1], "cover"));
  }
  spec.bottom = str(need(doc, "bottom"), "bottom");
  spec.top = str(need(doc, "top"), "top");
  return spec;
}

json to_json(const LatticeSpec& spec) {
  json covers = json::array();
  for (const auto& [lo, hi] : spec.covers) covers.push_back(json::array({lo, hi}));
  return json{{"elements", spec.elements}, {"covers", covers}, {"bottom", spec.bottom}, {"top", spec.top}};
}

Lattice load_lattice(const fs::path& path) { return Lattice::from_spec(lattice_spec_from_json(read_json(path))); }

AmbiguousTable table_from_json(const json& doc, const fs::path& base_dir) {
  AmbiguousTable at(lattice_ref(need(doc, "lattice"), base_dir));
  const Lattice& l = at.lattice;
  const auto& mult = need(doc, "mult");
  if (!mult.is_array()) bad("'mult' must be an array");
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Element>> ordered;
  for (const auto& entry : mult) {
    if (!entry.is_array() || entry.size() != 3) bad("mult entries are [x, y, value] triples");
    auto x = elem(l, entry[0], "mult");
    auto y = elem(l, entry[1], "mult");
    std::vector<Element> values;
    if (entry[2].is_array()) {
      for (const auto& v : entry[2]) values.push_back(elem(l, v, "mult value"));
      if (values.empty()) bad("empty candidate list");
    } else {
      values.push_back(elem(l, entry[2], "mult value"));
    }
    at.set(x, y, values);
  }
  at.unit = elem(l, need(doc, "unit"), "unit");
  at.falsum = elem(l, need(doc, "falsum"), "falsum");
  if (doc.contains("dual_overrides")) {
    for (const auto& p : doc["dual_overrides"]) {
      if (!p.is_array() || p.size() != 2) bad("dual overrides are [x, dual] pairs");
      at.dual_overrides.emplace_back(elem(l, p[0], "override"), elem(l, p[1], "override"));
    }
  }
  if (doc.contains("linked_constraints")) {
    for (const auto& c : doc["linked_constraints"]) {
      LinkedConstraint lc;
      for (const auto& term : need(c, "sum")) {
        if (!term.is_array() || term.size() != 2) bad("linked sums list [x, y] products");
        lc.sum.emplace_back(elem(l, term[0], "sum"), elem(l, term[1], "sum"));
      }
      lc.equals = elem(l, need(c, "equals"), "equals");
      at.linked.push_back(std::move(lc));
    }
  }
  for (const char* key : {"op_class", "cl_class"}) {
    if (!doc.contains(key)) continue;
    auto& target = std::string(key) == "op_class" ? at.op_class : at.cl_class;
    for (const auto& e : doc[key]) target.push_back(elem(l, e, key));
  }
  at.options.strict_unit = !doc.value("weak_unit", true);
  at.options.check_commutative = doc.value("check_commutative", true);
  at.options.check_associative = doc.value("check_associative", true);
  at.options.validate = doc.value("validate", true);
  return at;
}

AmbiguousTable load_table(const fs::path& path) { return table_from_json(read_json(path), path.parent_path()); }

PhaseStructure phase_from_table(const AmbiguousTable& at) {
  const Lattice& l = at.lattice;
  const auto n = l.size();
  std::vector<Element> table(n * n);
  std::vector<char> known(n * n, 0);
  for (const auto& [key, values] : at.candidates) {
    if (values.size() != 1) {
      bad("entry " + l.name(l.at(key.first)) + "·" + l.name(l.at(key.second)) + " is ambiguous; run the solver first");
    }
    table[key.first * n + key.second] = table[key.second * n + key.first] = values[0];
    known[key.first * n + key.second] = known[key.second * n + key.first] = 1;
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    if (!known[i]) bad("table is not total: " + l.name(l.at(i / n)) + "·" + l.name(l.at(i % n)) + " missing");
  }
  return PhaseStructure::load(l, std::move(table), at.unit, at.falsum, at.dual_overrides, at.options);
}

PhaseStructure load_phase(const fs::path& path) { return phase_from_table(load_table(path)); }

json phase_to_json(const PhaseStructure& ps, const std::string& lattice_ref, const std::vector<Element>& op_class,
                   const std::vector<Element>& cl_class) {
  const Lattice& l = ps.lattice();
  json mult = json::array();
  for (auto x : l.elements()) {
    for (auto y : l.elements()) {
      if (y < x) continue;
      mult.push_back(json::array({l.name(x), l.name(y), l.name(ps.mult(x, y))}));
    }
  }
  json overrides = json::array();
  for (const auto& [x, d] : ps.overrides()) overrides.push_back(json::array({l.name(x), l.name(d)}));
  json doc{{"lattice", lattice_ref}, {"unit", l.name(ps.unit())}, {"falsum", l.name(ps.falsum())},
           {"weak_unit", !ps.options().strict_unit}, {"mult", mult}, {"dual_overrides", overrides}};
  auto names = [&](const std::vector<Element>& xs) {
    json a = json::array();
    for (auto x : xs) a.push_back(l.name(x));
    return a;
  };
  if (!ps.options().validate) doc["validate"] = false;
  if (!op_class.empty()) doc["op_class"] = names(op_class);
  if (!cl_class.empty()) doc["cl_class"] = names(cl_class);
  return doc;
}

Monoid monoid_from_json(const json& doc) {
  Monoid m;
  for (const auto& e : need(doc, "elements")) m.names.push_back(str(e, "element"));
  std::map<std::string, std::uint32_t> idx;
  for (std::uint32_t i = 0; i < m.names.size(); ++i) {
    if (!idx.emplace(m.names[i], i).second) bad("duplicate monoid element '" + m.names[i] + "'");
  }
  auto find = [&](const json& j) {
    auto it = idx.find(str(j, "monoid element"));
    if (it == idx.end()) bad("unknown monoid element '" + j.get<std::string>() + "'");
    return it->second;
  };
  m.unit = find(need(doc, "unit"));
  const auto n = m.names.size();
  if (n > 6) throw Error(ErrorKind::SizeExceeded, "monoid has " + std::to_string(n) + " elements; the oracle handles at most 6");
  m.table.assign(n * n, 0);
  std::vector<char> known(n * n, 0);
  for (const auto& entry : need(doc, "mult")) {
    if (!entry.is_array() || entry.size() != 3) bad("mult entries are [x, y, value] triples");
    auto x = find(entry[0]), y = find(entry[1]), v = find(entry[2]);
    m.table[x * n + y] = v;
    known[x * n + y] = 1;
    if (!known[y * n + x]) m.table[y * n + x] = v;
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    m.table[m.unit * n + x] = m.table[x * n + m.unit] = x;
  }
  return m;
}

Monoid load_monoid(const fs::path& path) { return monoid_from_json(read_json(path)); }

json to_json(const Monoid& m) {
  json mult = json::array();
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (std::size_t y = 0; y < m.size(); ++y) {
      mult.push_back(json::array({m.names[x], m.names[y], m.names[m.table[x * m.size() + y]]}));
    }
  }
  return json{{"elements", m.names}, {"unit", m.names[m.unit]}, {"mult", mult}};
}

GamePtr game_from_json(const json& doc) {
  std::vector<std::string> vertices;
  for (const auto& v : need(doc, "vertices")) vertices.push_back(str(v, "vertex"));
  std::map<std::string, std::uint32_t> idx;
  for (std::uint32_t i = 0; i < vertices.size(); ++i) idx.emplace(vertices[i], i);
  auto find = [&](const json& j) {
    auto it = idx.find(str(j, "vertex"));
    if (it == idx.end()) throw Error(ErrorKind::InvalidGame, "unknown vertex '" + j.get<std::string>() + "'");
    return it->second;
  };
  auto root = find(need(doc, "root"));
  std::vector<Edge> edges;
  for (const auto& e : need(doc, "edges")) {
    if (!e.is_array() || e.size() != 3) bad("edges are [from, to, \"O\"|\"P\"] triples");
    auto pol = str(e[2], "polarity");
    if (pol != "O" && pol != "P") bad("polarity must be \"O\" or \"P\"");
    edges.push_back({find(e[0]), find(e[1]), pol == "O" ? Polarity::Opponent : Polarity::Proponent});
  }
  return Game::make(std::move(vertices), root, std::move(edges));
}

json to_json(const Game& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(json::array({g.name(e.from), g.name(e.to), std::string(1, polarity_char(e.polarity))}));
  }
  return json{{"vertices", g.vertices()}, {"root", g.name(g.root())}, {"edges", edges}};
}

PayoffGame payoff_game_from_json(const json& doc, const fs::path& base_dir) {
  auto g = game_from_json(doc);
  auto l = lattice_ref(need(doc, "lattice"), base_dir);
  std::vector<Element> k(g->size(), l.bottom());
  std::vector<char> seen(g->size(), 0);
  const auto& km = need(doc, "k");
  if (!km.is_object()) bad("'k' maps vertices to lattice elements");
  for (auto it = km.begin(); it != km.end(); ++it) {
    auto v = g->vertex(it.key());
    if (!v) throw Error(ErrorKind::InvalidGame, "payoff for unknown vertex '" + it.key() + "'");
    k[*v] = elem(l, it.value(), "payoff");
    seen[*v] = 1;
  }
  for (std::size_t v = 0; v < g->size(); ++v) {
    if (!seen[v]) throw Error(ErrorKind::InvalidGame, "vertex '" + g->name(static_cast<std::uint32_t>(v)) + "' has no payoff");
  }
  return PayoffGame::make(g, std::move(l), std::move(k));
}

Scenario scenario_from_json(const json& doc, const fs::path& base_dir) {
  std::vector<std::string> grid;
  for (const auto& row : need(doc, "grid")) grid.push_back(str(row, "grid row"));
  auto start = cell_from(need(doc, "start"));
  const auto& hz = need(doc, "horizon");
  if (!hz.is_number_integer()) bad("'horizon' must be an integer");
  std::shared_ptr<const PhaseStructure> phase;
  try {
    phase = std::make_shared<const PhaseStructure>(load_phase(base_dir / str(need(doc, "goal_phase"), "goal_phase")));
  } catch (const Error& e) {
    throw Error(ErrorKind::PhaseLoadFailure, e.what());
  }
  std::vector<ObjectSpec> objects;
  for (const auto& o : doc.value("objects", json::array())) {
    ObjectSpec spec;
    spec.id = str(need(o, "id"), "object id");
    spec.cell = cell_from(need(o, "cell"));
    for (const auto& f : need(o, "features")) spec.features.push_back(str(f, "feature"));
    spec.goal = str(need(o, "goal"), "goal");
    if (o.contains("attractiveness")) spec.attractiveness = o["attractiveness"].get<int>();
    objects.push_back(std::move(spec));
  }
  return make_scenario(std::move(grid), start, hz.get<int>(), std::move(objects), std::move(phase),
                       str(need(doc, "free_move_goal"), "free_move_goal"));
}

Scenario load_scenario(const fs::path& path) { return scenario_from_json(read_json(path), path.parent_path()); }

json to_json(const Trace& t) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    entries.push_back(json{{"actor", e.actor}, {"move", e.move}, {"position", cell_to(e.position)},
                           {"rewards", e.rewards}, {"objective", e.objective}});
  }
  json play = json::array();
  for (auto c : t.play) play.push_back(cell_to(c));
  json shrinks = json::array();
  for (const auto& s : t.shrinks) shrinks.push_back(json{{"step", s.step}, {"from", s.from}, {"to", s.to}});
  json images = json::array();
  for (const auto& [id, img] : t.final_images) images.push_back(json::array({id, img}));
  return json{{"header", json{{"objective", t.objective}, {"dual_payoff", t.dual_payoff}, {"seed", t.seed},
                               {"max_steps", t.max_steps}, {"reward_reading", t.reward_reading}}},
              {"entries", entries},
              {"play", play},
              {"selections", t.selections},
              {"top_sets", t.top_sets},
              {"shrinks", shrinks},
              {"final_active", t.final_active},
              {"final_images", images},
              {"complete", t.complete},
              {"step_limit", t.step_limit},
              {"indistinguishable", t.indistinguishable},
              {"decisions", t.decisions}};
}

Trace trace_from_json(const json& doc) {
  try {
    Trace t;
    const auto& h = need(doc, "header");
    t.objective = h.at("objective").get<std::string>();
    t.dual_payoff = h.at("dual_payoff").get<std::string>();
    t.seed = h.at("seed").get<std::uint64_t>();
    t.max_steps = h.at("max_steps").get<int>();
    t.reward_reading = h.at("reward_reading").get<std::string>();
    for (const auto& e : doc.at("entries")) {
      t.entries.push_back(TraceEntry{e.at("actor").get<std::string>(), e.at("move").get<std::string>(),
                                     cell_from(e.at("position")), e.at("rewards").get<std::vector<std::string>>(),
                                     e.at("objective").get<std::vector<std::string>>()});
    }
    for (const auto& c : doc.at("play")) t.play.push_back(cell_from(c));
    t.selections = doc.at("selections").get<std::vector<std::vector<std::string>>>();
    t.top_sets = doc.at("top_sets").get<std::vector<std::vector<std::string>>>();
    for (const auto& s : doc.at("shrinks")) {
      t.shrinks.push_back(ShrinkEvent{s.at("step").get<int>(), s.at("from").get<std::vector<std::string>>(),
                                      s.at("to").get<std::vector<std::string>>()});
    }
    t.final_active = doc.at("final_active").get<std::vector<std::string>>();
    for (const auto& p : doc.at("final_images")) t.final_images.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    t.complete = doc.at("complete").get<bool>();
    t.step_limit = doc.at("step_limit").get<bool>();
    t.indistinguishable = doc.at("indistinguishable").get<bool>();
    t.decisions = doc.at("decisions").get<std::vector<std::string>>();
    return t;
  } catch (const json::exception& e) {
    bad(std::string("trace: ") + e.what());
  }
}

std::string trace_to_dot(const Scenario& sc, const Trace& t) {
  std::ostringstream out;
  auto node = [](Cell c) { return "c" + std::to_string(c.row) + "_" + std::to_string(c.col); };
  std::map<Cell, std::string> labels;
  for (const auto& o : sc.objects) labels[o.cell] += (labels[o.cell].empty() ? "" : ",") + o.id;
  out << "digraph trace {\n  node [shape=box];\n";
  for (int r = 0; r < sc.height(); ++r) {
    for (int c = 0; c < sc.width(); ++c) {
      Cell cell{r, c};
      std::string label = labels.count(cell) ? labels[cell] : "";
      if (cell == sc.start) label = label.empty() ? "start" : label + ",start";
      out << "  " << node(cell) << " [pos=\"" << c << "," << -r << "!\", label=\"" << label << "\"";
      if (!sc.passable(cell)) out << ", style=filled, fillcolor=gray30";
      out << "];\n";
    }
  }
  std::set<std::pair<Cell, Cell>> drawn;
  for (std::size_t i = 1; i < t.play.size(); ++i) {
    if (t.play[i] == t.play[i - 1] || !drawn.insert({t.play[i - 1], t.play[i]}).second) continue;
    out << "  " << node(t.play[i - 1]) << " -> " << node(t.play[i]) << " [penwidth=3];\n";
  }
  out << "}\n";
  return out.str();
}

json to_json(const LawReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(json{{"law", c.law}, {"checked", c.checked}, {"violations", c.violations},
                          {"skipped", c.skipped}, {"witnesses", c.witnesses}});
  }
  return json{{"passed", r.passed()}, {"checks", checks}};
}

json to_json(const Report& r) {
  json items = json::array();
  for (const auto& i : r.items) items.push_back(json{{"id", i.id}, {"value", i.value}, {"ok", i.ok}});
  return json{{"status", r.status}, {"items", items}, {"exit_code", r.exit_code}};
}

Report report_from_json(const json& doc) {
  try {
    Report r;
    r.status = doc.at("status").get<std::string>();
    r.exit_code = doc.at("exit_code").get<int>();
    for (const auto& i : doc.at("items")) {
      r.items.push_back(ReportItem{i.at("id").get<std::string>(), i.at("value").get<std::string>(), i.at("ok").get<bool>()});
    }
    return r;
  } catch (const json::exception& e) {
    bad(std::string("report: ") + e.what());
  }
}

}  // namespace phasegame::io
