#include "phasegame/phase.hpp"

#include <algorithm>
#include <sstream>

#include "phasegame/error.hpp"

namespace phasegame {

namespace {

constexpr std::size_t kMaxWitnesses = 5;

void note_non_fact(const PhaseStructure& ps, Element x, const char* op, Diagnostics* diag) {
  if (diag && !ps.is_fact(x)) {
    diag->warnings.push_back(std::string(op) + ": argument '" + ps.lattice().name(x) +
                             "' is not a fact");
  }
}

struct LawAccumulator {
  LawCheck check;

  explicit LawAccumulator(std::string law) { check.law = std::move(law); }

  void record(bool ok, const std::function<std::string()>& witness) {
    ++check.checked;
    if (ok) return;
    ++check.violations;
    if (check.witnesses.size() < kMaxWitnesses) check.witnesses.push_back(witness());
  }
};

}  // namespace

PhaseStructure PhaseStructure::load(Lattice lattice, std::vector<Element> table, Element unit,
                                    Element falsum,
                                    std::vector<std::pair<Element, Element>> dual_overrides,
                                    PhaseOptions options) {
  const std::size_t n = lattice.size();
  if (table.size() != n * n) {
    throw Error(ErrorKind::InvalidInput, "multiplication table must have " + std::to_string(n * n) +
                                             " entries, got " + std::to_string(table.size()));
  }
  for (auto v : table) {
    if (!lattice.contains(v)) throw Error(ErrorKind::ForeignElement, "table value from another lattice");
  }
  if (!lattice.contains(unit) || !lattice.contains(falsum)) {
    throw Error(ErrorKind::ForeignElement, "unit/falsum from another lattice");
  }

  PhaseStructure ps(std::move(lattice));
  ps.table_ = std::move(table);
  ps.unit_ = unit;
  ps.falsum_ = falsum;
  ps.options_ = options;
  ps.overrides_ = std::move(dual_overrides);
  const Lattice& l = ps.lattice_;
  auto nm = [&](Element x) { return l.name(x); };

  if (options.validate && options.check_commutative) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (ps.table_[i * n + j] != ps.table_[j * n + i]) {
          throw Error(ErrorKind::NotCommutative, nm(l.at(i)) + "·" + nm(l.at(j)) + " = " +
                                                     nm(ps.table_[i * n + j]) + " but " + nm(l.at(j)) +
                                                     "·" + nm(l.at(i)) + " = " + nm(ps.table_[j * n + i]));
        }
      }
    }
  }
  if (options.validate && options.check_associative) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto ij = ps.table_[i * n + j].index;
        for (std::size_t k = 0; k < n; ++k) {
          auto jk = ps.table_[j * n + k].index;
          if (ps.table_[ij * n + k] != ps.table_[i * n + jk]) {
            throw Error(ErrorKind::NotAssociative,
                        "(" + nm(l.at(i)) + "·" + nm(l.at(j)) + ")·" + nm(l.at(k)) + " != " +
                            nm(l.at(i)) + "·(" + nm(l.at(j)) + "·" + nm(l.at(k)) + ")");
          }
        }
      }
    }
  }
  if (options.validate && options.strict_unit) {
    for (auto x : l.elements()) {
      if (ps.mult(unit, x) != x) {
        throw Error(ErrorKind::InvalidInput, "strict unit law fails: " + nm(unit) + "·" + nm(x) +
                                                 " = " + nm(ps.mult(unit, x)));
      }
    }
  }

  ps.dual_.assign(n, Element{});
  std::vector<char> overridden(n, 0);
  for (const auto& [x, d] : ps.overrides_) {
    if (!l.contains(x) || !l.contains(d)) throw Error(ErrorKind::ForeignElement, "override from another lattice");
    ps.dual_[x.index] = d;
    overridden[x.index] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (overridden[i]) continue;
    auto d = ps.try_lin_implies(l.at(i), falsum);
    if (!d) {
      if (!options.validate) {
        ps.dual_[i] = l.top();
        continue;
      }
      throw Error(ErrorKind::DualLawViolation,
                  nm(l.at(i)) + " ⊸ " + nm(falsum) + " is not closed; supply a dual override");
    }
    ps.dual_[i] = *d;
  }

  if (options.validate) {
    const auto kind = ps.overrides_.empty() ? ErrorKind::DualLawViolation : ErrorKind::OverrideInconsistent;
    for (auto x : l.elements()) {
      auto dx = ps.dual(x);
      if (ps.dual(ps.dual(dx)) != dx) {
        throw Error(kind, "triple-dual law fails at " + nm(x));
      }
      if (!l.leq(x, ps.dual(dx))) {
        throw Error(kind, nm(x) + " is not below its double dual " + nm(ps.dual(dx)));
      }
      if (!l.leq(ps.mult(dx, x), falsum)) {
        throw Error(kind, nm(x) + "^⊥·" + nm(x) + " = " + nm(ps.mult(dx, x)) + " is not below falsum");
      }
      for (auto y : l.elements()) {
        if (ps.dual(l.join(x, y)) != l.meet(dx, ps.dual(y))) {
          throw Error(kind, "De Morgan law fails at (" + nm(x) + ", " + nm(y) + ")");
        }
      }
    }
  }
  return ps;
}

Element PhaseStructure::mult(Element x, Element y) const {
  if (!lattice_.contains(x) || !lattice_.contains(y)) {
    throw Error(ErrorKind::ForeignElement, "mult argument from another lattice");
  }
  return table_[x.index * lattice_.size() + y.index];
}

Element PhaseStructure::dual(Element x) const {
  if (!lattice_.contains(x)) throw Error(ErrorKind::ForeignElement, "dual argument from another lattice");
  return dual_[x.index];
}

std::vector<Element> PhaseStructure::facts() const {
  std::vector<Element> out;
  for (auto x : lattice_.elements()) {
    if (is_fact(x)) out.push_back(x);
  }
  return out;
}

std::optional<Element> PhaseStructure::try_lin_implies(Element x, Element y) const {
  Element acc = lattice_.bottom();
  bool any = false;
  for (auto z : lattice_.elements()) {
    if (lattice_.leq(mult(x, z), y)) {
      acc = any ? lattice_.join(acc, z) : z;
      any = true;
    }
  }
  if (!any || !lattice_.leq(mult(x, acc), y)) return std::nullopt;
  return acc;
}

Element PhaseStructure::lin_implies(Element x, Element y) const {
  auto r = try_lin_implies(x, y);
  if (!r) {
    throw Error(ErrorKind::NotClosed, lattice_.name(x) + " ⊸ " + lattice_.name(y) +
                                          ": join of candidates is not itself a candidate");
  }
  return *r;
}

bool PhaseStructure::has_override(Element x) const {
  return std::any_of(overrides_.begin(), overrides_.end(), [&](const auto& p) { return p.first == x; });
}

Element additive_conj(const PhaseStructure& ps, Element x, Element y, Diagnostics* diag) {
  note_non_fact(ps, x, "&", diag);
  note_non_fact(ps, y, "&", diag);
  return ps.lattice().meet(x, y);
}

Element additive_disj(const PhaseStructure& ps, Element x, Element y, Diagnostics* diag) {
  note_non_fact(ps, x, "+", diag);
  note_non_fact(ps, y, "+", diag);
  return ps.dual(ps.dual(ps.lattice().join(x, y)));
}

Element tensor(const PhaseStructure& ps, Element x, Element y, TensorMode mode, Diagnostics* diag) {
  if (mode == TensorMode::RawMonoid) return ps.mult(x, y);
  note_non_fact(ps, x, "×", diag);
  note_non_fact(ps, y, "×", diag);
  return ps.dual(ps.dual(ps.mult(x, y)));
}

Element par(const PhaseStructure& ps, Element x, Element y, Diagnostics* diag) {
  note_non_fact(ps, x, "⅋", diag);
  note_non_fact(ps, y, "⅋", diag);
  return ps.dual(ps.mult(ps.dual(x), ps.dual(y)));
}

bool LawReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const LawCheck& c) { return c.passed(); });
}

const LawCheck* LawReport::find(const std::string& law) const {
  for (const auto& c : checks) {
    if (c.law == law) return &c;
  }
  return nullptr;
}

LawReport verify_laws(const PhaseStructure& ps) {
  const Lattice& l = ps.lattice();
  auto nm = [&](Element x) { return l.name(x); };
  const auto els = l.elements();
  LawReport report;

  if (ps.options().check_commutative) {
    LawAccumulator acc("commutative");
    for (auto x : els) {
      for (auto y : els) {
        acc.record(ps.mult(x, y) == ps.mult(y, x), [&] { return nm(x) + "·" + nm(y) + " != " + nm(y) + "·" + nm(x); });
      }
    }
    report.checks.push_back(acc.check);
  }
  if (ps.options().check_associative) {
    LawAccumulator acc("associative");
    for (auto x : els) {
      for (auto y : els) {
        for (auto z : els) {
          acc.record(ps.mult(ps.mult(x, y), z) == ps.mult(x, ps.mult(y, z)), [&] {
            return "(" + nm(x) + "·" + nm(y) + ")·" + nm(z) + " != " + nm(x) + "·(" + nm(y) + "·" + nm(z) + ")";
          });
        }
      }
    }
    report.checks.push_back(acc.check);
  }
  if (ps.options().strict_unit) {
    LawAccumulator acc("strict-unit");
    for (auto x : els) {
      acc.record(ps.mult(ps.unit(), x) == x, [&] { return nm(ps.unit()) + "·" + nm(x) + " = " + nm(ps.mult(ps.unit(), x)); });
    }
    report.checks.push_back(acc.check);
  }

  LawAccumulator absorbs("dual-absorbs");
  LawAccumulator extensive("double-dual-extensive");
  LawAccumulator triple("triple-dual");
  for (auto x : els) {
    auto dx = ps.dual(x);
    absorbs.record(l.leq(ps.mult(dx, x), ps.falsum()),
                   [&] { return nm(x) + "^⊥·" + nm(x) + " = " + nm(ps.mult(dx, x)) + " not <= " + nm(ps.falsum()); });
    extensive.record(l.leq(x, ps.dual(dx)), [&] { return nm(x) + " not <= " + nm(ps.dual(dx)); });
    triple.record(ps.dual(ps.dual(dx)) == dx, [&] { return nm(x) + "^⊥⊥⊥ = " + nm(ps.dual(ps.dual(dx))) + " != " + nm(dx); });
  }
  report.checks.push_back(absorbs.check);
  report.checks.push_back(extensive.check);
  report.checks.push_back(triple.check);

  LawAccumulator morgan("de-morgan");
  LawAccumulator product("dual-of-product");
  for (auto x : els) {
    for (auto y : els) {
      morgan.record(ps.dual(l.join(x, y)) == l.meet(ps.dual(x), ps.dual(y)), [&] {
        return "(" + nm(x) + "∨" + nm(y) + ")^⊥ = " + nm(ps.dual(l.join(x, y))) + " != " +
               nm(l.meet(ps.dual(x), ps.dual(y)));
      });
      auto imp = ps.try_lin_implies(x, ps.dual(y));
      if (!imp) {
        ++product.check.skipped;
        continue;
      }
      product.record(*imp == ps.dual(ps.mult(x, y)), [&] {
        return nm(x) + " ⊸ " + nm(y) + "^⊥ = " + nm(*imp) + " != (" + nm(x) + "·" + nm(y) + ")^⊥ = " +
               nm(ps.dual(ps.mult(x, y)));
      });
    }
  }
  report.checks.push_back(morgan.check);
  report.checks.push_back(product.check);
  return report;
}

FactClassification classify(const PhaseStructure& ps, std::span<const Element> open,
                            std::span<const Element> closed) {
  const Lattice& l = ps.lattice();
  auto nm = [&](Element x) { return l.name(x); };
  FactClassification fc;
  fc.facts = ps.facts();
  fc.neutral_I = ps.neutral_I();
  fc.one = ps.one();
  fc.zero = ps.zero();
  fc.open_class.assign(open.begin(), open.end());
  if (closed.empty()) {
    for (auto x : open) fc.closed_class.push_back(ps.dual(x));
  } else {
    fc.closed_class.assign(closed.begin(), closed.end());
  }
  std::sort(fc.open_class.begin(), fc.open_class.end());
  fc.open_class.erase(std::unique(fc.open_class.begin(), fc.open_class.end()), fc.open_class.end());
  std::sort(fc.closed_class.begin(), fc.closed_class.end());
  fc.closed_class.erase(std::unique(fc.closed_class.begin(), fc.closed_class.end()), fc.closed_class.end());

  auto in = [](const std::vector<Element>& v, Element x) { return std::binary_search(v.begin(), v.end(), x); };
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::NotClosedClass, msg); };

  for (auto x : fc.open_class) {
    if (!ps.is_fact(x)) fail("Op member " + nm(x) + " is not a fact");
  }
  for (auto x : fc.closed_class) {
    if (!ps.is_fact(x)) fail("Cl member " + nm(x) + " is not a fact");
  }
  for (auto x : fc.open_class) {
    if (!in(fc.closed_class, ps.dual(x))) fail("dual of Op member " + nm(x) + " is not in Cl");
  }
  for (auto x : fc.closed_class) {
    if (!in(fc.open_class, ps.dual(x))) fail("dual of Cl member " + nm(x) + " is not in Op");
  }
  for (auto x : fc.open_class) {
    for (auto y : fc.open_class) {
      auto s = additive_disj(ps, x, y);
      if (!in(fc.open_class, s)) fail("Op not closed under +: " + nm(x) + " + " + nm(y) + " = " + nm(s));
      auto t = tensor(ps, x, y, TensorMode::FactClosed);
      if (!in(fc.open_class, t)) fail("Op not closed under ×: " + nm(x) + " × " + nm(y) + " = " + nm(t));
    }
  }
  for (auto x : fc.closed_class) {
    for (auto y : fc.closed_class) {
      auto c = additive_conj(ps, x, y);
      if (!in(fc.closed_class, c)) fail("Cl not closed under &: " + nm(x) + " & " + nm(y) + " = " + nm(c));
      auto p = par(ps, x, y);
      if (!in(fc.closed_class, p)) fail("Cl not closed under ⅋: " + nm(x) + " ⅋ " + nm(y) + " = " + nm(p));
    }
  }
  auto check_extremes = [&](const std::vector<Element>& cls, Element lo, Element hi, const char* label) {
    if (cls.empty()) fail(std::string(label) + " is empty");
    if (!in(cls, lo) || !in(cls, hi)) {
      fail(std::string(label) + " must contain " + nm(lo) + " and " + nm(hi));
    }
    for (auto x : cls) {
      if (!l.leq(lo, x) || !l.leq(x, hi)) {
        fail(std::string(label) + " member " + nm(x) + " lies outside [" + nm(lo) + ", " + nm(hi) + "]");
      }
    }
  };
  check_extremes(fc.open_class, ps.zero(), ps.neutral_I(), "Op");
  check_extremes(fc.closed_class, ps.falsum(), ps.one(), "Cl");
  return fc;
}

}  // namespace phasegame
