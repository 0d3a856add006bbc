// phasegame: command-line front end for the lattice, phase, game and planner modules.
//
// Exit codes: 0 success, 1 domain failure, 2 usage or parse failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "phasegame/error.hpp"
#include "phasegame/expr.hpp"
#include "phasegame/io.hpp"
#include "phasegame/oracle.hpp"
#include "phasegame/phase.hpp"
#include "phasegame/planner.hpp"
#include "phasegame/table_solver.hpp"

namespace fs = std::filesystem;
using namespace phasegame;
using io::Report;
using io::ReportItem;

namespace {

struct Globals {
  std::string lattice;
  std::string phase;
  std::string out_dir;
  bool quiet = false;
  bool json = false;
};

int usage_exit(ErrorKind k) { return k == ErrorKind::ParseError || k == ErrorKind::SizeExceeded ? 2 : 1; }

void add(Report& r, std::string id, std::string value, bool ok = true) {
  r.items.push_back(ReportItem{std::move(id), std::move(value), ok});
  if (!ok) {
    r.status = "fail";
    r.exit_code = 1;
  }
}

void warn(Report& r) {
  if (r.status == "pass") r.status = "warn";
}

int emit(const Globals& g, const Report& r, const std::string& name = "report.json") {
  if (g.json) {
    std::cout << io::to_json(r).dump(2) << "\n";
  } else if (!g.quiet) {
    for (const auto& it : r.items) {
      std::cout << (it.ok ? "ok    " : "FAIL  ") << it.id;
      if (!it.value.empty()) std::cout << ": " << it.value;
      std::cout << "\n";
    }
    std::cout << "status: " << r.status << "\n";
  }
  if (!g.out_dir.empty() && !name.empty()) {
    fs::create_directories(g.out_dir);
    io::write_json(fs::path(g.out_dir) / name, io::to_json(r));
  }
  return r.exit_code;
}

std::string names(const Lattice& l, const std::vector<Element>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + l.name(xs[i]);
  return s;
}

std::string need_phase(const Globals& g) {
  if (g.phase.empty()) throw Error(ErrorKind::ParseError, "--phase is required");
  return g.phase;
}

std::string law_value(const LawCheck& c) {
  std::string v = std::to_string(c.checked) + " checked";
  if (c.skipped) v += ", " + std::to_string(c.skipped) + " skipped";
  if (c.violations) v += ", " + std::to_string(c.violations) + " violations";
  if (!c.witnesses.empty()) v += "; e.g. " + c.witnesses.front();
  return v;
}

// verify

int cmd_verify(const Globals& g, bool heyting) {
  Report r;
  if (g.lattice.empty() && g.phase.empty()) throw Error(ErrorKind::ParseError, "verify needs --lattice or --phase");
  if (!g.lattice.empty()) {
    auto l = io::load_lattice(g.lattice);
    add(r, "lattice", std::to_string(l.size()) + " elements");
    bool dist = l.is_distributive();
    add(r, "distributive", dist ? "yes" : "no", dist || !heyting);
    if (heyting) {
      try {
        for (auto a : l.elements()) {
          for (auto b : l.elements()) l.heyting_implies(a, b);
        }
        add(r, "heyting", "implication defined on every pair");
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotHeyting) throw;
        add(r, "NotHeyting", e.what(), false);
      }
    }
  }
  if (!g.phase.empty()) {
    auto at = io::load_table(g.phase);
    at.options.validate = false;  // report every law instead of stopping at the first
    auto ps = io::phase_from_table(at);
    auto laws = verify_laws(ps);
    for (const auto& c : laws.checks) add(r, "law " + c.law, law_value(c), c.passed());
    if (!at.op_class.empty()) {
      try {
        auto fc = classify(ps, at.op_class, at.cl_class);
        add(r, "classes", "Op = {" + names(ps.lattice(), fc.open_class) + "}, Cl = {" +
                              names(ps.lattice(), fc.closed_class) + "}");
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotClosedClass) throw;
        add(r, "NotClosedClass", e.what(), false);
      }
    }
  }
  return emit(g, r);
}

// solve

std::string ambiguous_entries(const AmbiguousTable& at, const PhaseStructure& ps) {
  const Lattice& l = at.lattice;
  std::string s;
  for (const auto& [key, values] : at.candidates) {
    if (values.size() < 2) continue;
    auto x = l.at(key.first), y = l.at(key.second);
    if (!s.empty()) s += ", ";
    s += l.name(x) + "·" + l.name(y) + "=" + l.name(ps.mult(x, y));
  }
  return s;
}

int cmd_solve(const Globals& g, const std::string& file, std::size_t max_solutions) {
  auto at = io::load_table(file);
  auto res = solve_table(at, SolveOptions{max_solutions});
  Report r;
  const fs::path dir = g.out_dir.empty() ? fs::path(".") : fs::path(g.out_dir);
  fs::create_directories(dir);
  for (std::size_t i = 0; i < res.solutions.size(); ++i) {
    const auto& ps = res.solutions[i];
    auto doc = io::phase_to_json(ps, "", at.op_class, at.cl_class);
    doc["lattice"] = io::to_json(ps.lattice().to_spec());
    auto name = "solution_" + std::to_string(i + 1) + ".json";
    io::write_json(dir / name, doc);
    std::string entries = ambiguous_entries(at, ps);
    add(r, name, entries.empty() ? "all entries fixed" : entries);
  }
  add(r, "search", std::to_string(res.nodes) + " nodes");
  if (res.cap_exceeded) {
    add(r, "cap", "stopped at " + std::to_string(max_solutions) + " solutions");
    warn(r);
  }
  Globals quiet_dir = g;
  quiet_dir.out_dir.clear();
  return emit(quiet_dir, r);
}

// eval

int cmd_eval(const Globals& g, const std::string& expr, bool fact_closed, bool residual) {
  auto ps = io::load_phase(need_phase(g));
  EvalOptions opts;
  if (fact_closed) opts.tensor = TensorMode::FactClosed;
  if (residual) opts.implication = ImplicationMode::Residual;
  Diagnostics diag;
  auto v = eval_expression(ps, expr, opts, &diag);
  if (g.json) {
    Report r;
    add(r, expr, ps.lattice().name(v));
    for (const auto& w : diag.warnings) add(r, "note", w);
    return emit(g, r, "");
  }
  std::cout << ps.lattice().name(v) << "\n";
  if (!g.quiet) {
    for (const auto& w : diag.warnings) std::cerr << "note: " << w << "\n";
  }
  return 0;
}

// facts

int cmd_facts(const Globals& g) {
  auto at = io::load_table(need_phase(g));
  auto ps = io::phase_from_table(at);
  const Lattice& l = ps.lattice();
  Report r;
  add(r, "facts", names(l, ps.facts()));
  add(r, "I", l.name(ps.neutral_I()));
  add(r, "falsum", l.name(ps.falsum()));
  add(r, "1", l.name(ps.one()));
  add(r, "0", l.name(ps.zero()));
  for (auto x : l.elements()) {
    add(r, "dual " + l.name(x), l.name(ps.dual(x)) + (ps.has_override(x) ? " (override)" : ""));
  }
  if (at.op_class.empty()) {
    add(r, "classes", "none declared");
  } else {
    try {
      auto fc = classify(ps, at.op_class, at.cl_class);
      add(r, "Op", names(l, fc.open_class));
      add(r, "Cl", names(l, fc.closed_class));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotClosedClass) throw;
      add(r, "NotClosedClass", e.what(), false);
    }
  }
  return emit(g, r);
}

// oracle

Subset parse_subset(const Monoid& m, std::string text) {
  std::erase(text, '{');
  std::erase(text, '}');
  Subset s = 0;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    if (tok.empty()) continue;
    auto it = std::find(m.names.begin(), m.names.end(), tok);
    if (it == m.names.end()) throw Error(ErrorKind::ParseError, "unknown monoid element '" + tok + "'");
    s |= Subset{1} << (it - m.names.begin());
  }
  return s;
}

int cmd_oracle(const Globals& g, const std::string& file, const std::optional<std::string>& falsum) {
  auto m = io::load_monoid(file);
  if (m.size() > 6) throw Error(ErrorKind::SizeExceeded, "monoid has " + std::to_string(m.size()) + " elements; at most 6");
  std::vector<Subset> targets;
  if (falsum) {
    targets.push_back(parse_subset(m, *falsum));
  } else {
    for (Subset s = 0; s < (Subset{1} << m.size()); ++s) targets.push_back(s);
  }
  Report r;
  for (auto f : targets) {
    auto rep = subset_phase_oracle(m, f);
    std::string census = std::to_string(rep.facts.size()) + " facts:";
    for (auto x : rep.facts) census += " " + subset_name(m, x);
    add(r, "falsum " + subset_name(m, f), census, rep.passed());
    for (const auto& c : rep.laws.checks) {
      if (!c.passed()) add(r, "  law " + c.law, law_value(c), false);
    }
  }
  return emit(g, r);
}

// simulate

int cmd_simulate(const Globals& g, const std::string& file, const std::string& mode, const std::string& dual_payoff,
                 std::uint64_t seed, int max_steps, int lookahead, const std::string& emit_kind, bool strict_termination) {
  auto sc = io::load_scenario(file);
  CognitionOptions opts;
  opts.max_steps = max_steps;
  opts.seed = seed;
  opts.lookahead = lookahead;
  opts.plan.objective = mode == "strict" ? Objective::Strict : Objective::Practical;
  opts.plan.dual_payoff = dual_payoff == "negate" ? DualPayoff::Negate : DualPayoff::Copy;
  auto trace = run_cognition(sc, opts);

  const fs::path dir = g.out_dir.empty() ? fs::path(".") : fs::path(g.out_dir);
  fs::create_directories(dir);
  const auto stem = fs::path(file).stem().string();
  if (emit_kind == "json" || emit_kind == "both") io::write_json(dir / (stem + ".trace.json"), io::to_json(trace));
  if (emit_kind == "dot" || emit_kind == "both") {
    std::ofstream out(dir / (stem + ".trace.dot"));
    out << io::trace_to_dot(sc, trace);
  }

  Report r;
  auto join = [](const std::vector<std::string>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + "}";
  };
  for (std::size_t i = 0; i < trace.top_sets.size(); ++i) {
    std::string s;
    for (const auto& t : trace.top_sets[i]) s += (s.empty() ? "" : " ") + t;
    add(r, "top-priority sets #" + std::to_string(i + 1), s);
  }
  for (const auto& sel : trace.selections) add(r, "active", join(sel));
  for (const auto& sh : trace.shrinks) {
    add(r, "shrink at step " + std::to_string(sh.step), join(sh.from) + " -> " + join(sh.to));
  }
  for (const auto& [id, img] : trace.final_images) add(r, "image " + id, img);
  add(r, "steps", std::to_string(trace.play.size() ? trace.play.size() - 1 : 0));
  if (trace.indistinguishable) add(r, "Indistinguishable", "goal priorities could not separate the candidates");
  if (trace.step_limit) {
    add(r, "StepLimit", "stopped after " + std::to_string(max_steps) + " steps", !strict_termination);
    warn(r);
  }
  Globals no_file = g;
  no_file.out_dir.clear();
  return emit(no_file, r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phasegame: phase semantics, Conway games with lattice payoffs, and a goal-driven planner"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--lattice", g.lattice, "lattice JSON file");
  app.add_option("--phase", g.phase, "phase structure (multiplication table) JSON file");
  app.add_option("--out-dir", g.out_dir, "directory for written files");
  app.add_flag("--quiet", g.quiet, "suppress the human-readable report");
  app.add_flag("--json", g.json, "print the report as JSON");

  auto* verify = app.add_subcommand("verify", "check lattice and phase-space laws");
  bool heyting = false;
  verify->add_flag("--heyting", heyting, "require the lattice to be a Heyting algebra");

  auto* solve = app.add_subcommand("solve", "complete a table with ambiguous entries");
  std::string table_file;
  std::size_t max_solutions = 64;
  solve->add_option("table", table_file, "table JSON with candidate lists")->required()->check(CLI::ExistingFile);
  solve->add_option("--max-solutions", max_solutions, "stop after this many completions")->check(CLI::PositiveNumber);

  auto* eval = app.add_subcommand("eval", "evaluate an expression in a phase structure");
  std::string expr;
  bool fact_closed = false, residual = false;
  eval->add_option("expression", expr, "e.g. \"a -o (J1a x e x b2)\"")->required();
  eval->add_flag("--fact-closed", fact_closed, "tensor is the double dual of the product");
  eval->add_flag("--residual", residual, "implication is the residual join instead of the dual form");

  auto* facts = app.add_subcommand("facts", "print the fact census, duals and Op/Cl classes");

  auto* oracle = app.add_subcommand("oracle", "check the subset-level laws over a small monoid");
  std::string monoid_file;
  std::optional<std::string> falsum;
  oracle->add_option("monoid", monoid_file, "monoid JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--falsum", falsum, "comma-separated falsum subset; default: every subset");

  auto* simulate = app.add_subcommand("simulate", "run the planner on a scenario");
  std::string scenario_file, mode = "practical", dual_payoff = "copy", emit_kind = "json";
  std::uint64_t seed = 0;
  int max_steps = 50, lookahead = 0;
  bool strict_termination = false;
  simulate->add_option("scenario", scenario_file, "scenario JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--mode", mode, "objective")->check(CLI::IsMember({"practical", "strict"}));
  simulate->add_option("--dual-payoff", dual_payoff, "payoff of the negated grid game")
      ->check(CLI::IsMember({"copy", "negate"}));
  simulate->add_option("--seed", seed, "seed for wandering");
  simulate->add_option("--max-steps", max_steps, "step limit")->check(CLI::NonNegativeNumber);
  simulate->add_option("--lookahead", lookahead, "saturation lookahead; 0 uses the horizon")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--emit", emit_kind, "trace output")->check(CLI::IsMember({"json", "dot", "both"}));
  simulate->add_flag("--strict-termination", strict_termination, "treat hitting the step limit as failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(g, heyting);
    if (*solve) return cmd_solve(g, table_file, max_solutions);
    if (*eval) return cmd_eval(g, expr, fact_closed, residual);
    if (*facts) return cmd_facts(g);
    if (*oracle) return cmd_oracle(g, monoid_file, falsum);
    if (*simulate) {
      return cmd_simulate(g, scenario_file, mode, dual_payoff, seed, max_steps, lookahead, emit_kind,
                          strict_termination);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_exit(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
