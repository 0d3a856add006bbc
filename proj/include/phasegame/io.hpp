#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasegame/conway.hpp"
#include "phasegame/lattice.hpp"
#include "phasegame/oracle.hpp"
#include "phasegame/phase.hpp"
#include "phasegame/planner.hpp"
#include "phasegame/table_solver.hpp"

namespace phasegame::io {

using json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws ParseError.
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& doc);

LatticeSpec lattice_spec_from_json(const json& doc);
json to_json(const LatticeSpec& spec);
Lattice load_lattice(const std::filesystem::path& path);

/// A table document: "lattice" (path relative to the document, or inline),
/// "mult" entries [x, y, v] or [x, y, [candidates]], "unit", "falsum",
/// optional "dual_overrides", "linked_constraints", "op_class", "cl_class",
/// "weak_unit", "check_commutative", "check_associative", "validate".
AmbiguousTable table_from_json(const json& doc, const std::filesystem::path& base_dir);
AmbiguousTable load_table(const std::filesystem::path& path);

/// Every entry must be a single value. A missing (y, x) is filled from (x, y).
PhaseStructure phase_from_table(const AmbiguousTable& at);
PhaseStructure load_phase(const std::filesystem::path& path);

/// Full table document for ps. `lattice_ref` is stored as the lattice path.
json phase_to_json(const PhaseStructure& ps, const std::string& lattice_ref,
                   const std::vector<Element>& op_class = {}, const std::vector<Element>& cl_class = {});

/// {"elements": [...], "unit": name, "mult": [[x, y, v], ...]}
Monoid monoid_from_json(const json& doc);
Monoid load_monoid(const std::filesystem::path& path);
json to_json(const Monoid& m);

/// {"vertices": [...], "root": name, "edges": [[from, to, "O"|"P"], ...]}
GamePtr game_from_json(const json& doc);
json to_json(const Game& g);
PayoffGame payoff_game_from_json(const json& doc, const std::filesystem::path& base_dir);

Scenario scenario_from_json(const json& doc, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

json to_json(const Trace& t);
Trace trace_from_json(const json& doc);
/// Grid with walls and objects, the chosen play drawn with penwidth=3.
std::string trace_to_dot(const Scenario& sc, const Trace& t);

json to_json(const LawReport& r);

struct ReportItem {
  std::string id;
  std::string value;
  bool ok = true;
};

struct Report {
  std::string status = "pass";  // pass | fail | warn
  std::vector<ReportItem> items;
  int exit_code = 0;
};

json to_json(const Report& r);
Report report_from_json(const json& doc);

}  // namespace phasegame::io
