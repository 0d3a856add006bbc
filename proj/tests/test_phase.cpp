#include <gtest/gtest.h>

#include "phasegame/error.hpp"
#include "phasegame/phase.hpp"

using namespace phasegame;

namespace {

// Boolean algebra with meet as product: a phase space whose dual is complement.
PhaseStructure boolean(std::vector<std::string> atoms) {
  auto l = Lattice::powerset(atoms);
  const auto n = l.size();
  std::vector<Element> table(n * n);
  for (auto x : l.elements()) {
    for (auto y : l.elements()) table[x.index * n + y.index] = l.meet(x, y);
  }
  auto top = l.top(), bottom = l.bottom();
  return PhaseStructure::load(l, table, top, bottom);
}

// Diamond 0 < x, y < 1 where every product of non-units is 0.
struct Zero {
  Lattice l = Lattice::from_spec({{"0", "x", "y", "1"}, {{"0", "x"}, {"0", "y"}, {"x", "1"}, {"y", "1"}}, "0", "1"});
  std::vector<Element> table() const {
    std::vector<Element> t(16, l.bottom());
    for (auto v : l.elements()) {
      t[l.top().index * 4 + v.index] = v;
      t[v.index * 4 + l.top().index] = v;
    }
    return t;
  }
};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(Phase, BooleanDualIsComplement) {
  auto ps = boolean({"p", "q"});
  const auto& l = ps.lattice();
  EXPECT_EQ(ps.dual(l.element("{p}")), l.element("{q}"));
  EXPECT_EQ(ps.dual(l.top()), l.bottom());
  EXPECT_EQ(ps.neutral_I(), l.top());
  EXPECT_EQ(ps.facts().size(), 4u);
  EXPECT_TRUE(verify_laws(ps).passed());
}

TEST(Phase, ConnectivesOnBoolean) {
  auto ps = boolean({"p", "q"});
  const auto& l = ps.lattice();
  auto p = l.element("{p}"), q = l.element("{q}");
  EXPECT_EQ(additive_conj(ps, p, q), l.bottom());
  EXPECT_EQ(additive_disj(ps, p, q), l.top());
  EXPECT_EQ(tensor(ps, p, l.top()), p);
  EXPECT_EQ(tensor(ps, p, q, TensorMode::FactClosed), l.bottom());
  EXPECT_EQ(par(ps, p, q), l.top());
  EXPECT_EQ(ps.lin_implies(p, q), q);
}

TEST(Phase, ClassifyOnBoolean) {
  auto ps = boolean({"p"});
  auto all = ps.lattice().elements();
  auto fc = classify(ps, all);
  EXPECT_EQ(fc.open_class.size(), 2u);
  EXPECT_EQ(fc.closed_class.size(), 2u);
  EXPECT_EQ(fc.neutral_I, ps.lattice().top());
}

TEST(Phase, ClassifyRejectsUnclosedClass) {
  auto ps = boolean({"p", "q"});
  const auto& l = ps.lattice();
  // The dual of {p} is {q}, which Cl lacks.
  std::vector<Element> open{l.bottom(), l.element("{p}"), l.top()};
  std::vector<Element> closed{l.bottom(), l.element("{p}"), l.top()};
  EXPECT_EQ(kind_of([&] { classify(ps, open, closed); }), ErrorKind::NotClosedClass);
  std::vector<Element> no_zero{l.element("{p}"), l.top()};
  EXPECT_EQ(kind_of([&] { classify(ps, no_zero); }), ErrorKind::NotClosedClass);
}

TEST(Phase, RejectsNonCommutativeTable) {
  Zero z;
  auto t = z.table();
  t[z.l.element("x").index * 4 + z.l.element("y").index] = z.l.element("x");
  EXPECT_EQ(kind_of([&] { PhaseStructure::load(z.l, t, z.l.top(), z.l.bottom()); }), ErrorKind::NotCommutative);
}

TEST(Phase, RejectsNonAssociativeTable) {
  Zero z;
  auto t = z.table();
  auto x = z.l.element("x"), y = z.l.element("y");
  // (x·x)·y = y·y = x, but x·(x·y) = x·0 = 0.
  t[x.index * 4 + x.index] = y;
  t[y.index * 4 + y.index] = x;
  EXPECT_EQ(kind_of([&] { PhaseStructure::load(z.l, t, z.l.top(), z.l.bottom()); }), ErrorKind::NotAssociative);
}

TEST(Phase, ResidualThatIsNotClosed) {
  Zero z;
  PhaseOptions opts;
  opts.validate = false;
  auto x = z.l.element("x");
  // x·x = x·y = 0 but x·(x ∨ y) = x·1 = x.
  EXPECT_EQ(kind_of([&] { PhaseStructure::load(z.l, z.table(), z.l.top(), z.l.bottom()); }),
            ErrorKind::DualLawViolation);
  auto ps = PhaseStructure::load(z.l, z.table(), z.l.top(), z.l.bottom(), {}, opts);
  EXPECT_FALSE(ps.try_lin_implies(x, z.l.bottom()).has_value());
  EXPECT_EQ(kind_of([&] { ps.lin_implies(x, z.l.bottom()); }), ErrorKind::NotClosed);
}

TEST(Phase, InconsistentOverrideIsNamed) {
  auto good = boolean({"p", "q"});
  const auto& l = good.lattice();
  std::vector<std::pair<Element, Element>> bad{{l.element("{p}"), l.top()}};
  EXPECT_EQ(kind_of([&] { PhaseStructure::load(l, good.table(), l.top(), l.bottom(), bad); }),
            ErrorKind::OverrideInconsistent);

  PhaseOptions opts;
  opts.validate = false;
  auto ps = PhaseStructure::load(l, good.table(), l.top(), l.bottom(), bad, opts);
  EXPECT_TRUE(ps.has_override(l.element("{p}")));
  auto report = verify_laws(ps);
  EXPECT_FALSE(report.passed());
  ASSERT_NE(report.find("dual-absorbs"), nullptr);
  EXPECT_FALSE(report.find("dual-absorbs")->passed());
  EXPECT_FALSE(report.find("dual-absorbs")->witnesses.empty());
}

TEST(Phase, StrictUnitIsOptional) {
  auto ps = boolean({"p"});
  const auto& l = ps.lattice();
  PhaseOptions strict;
  strict.strict_unit = true;
  EXPECT_EQ(kind_of([&] { PhaseStructure::load(l, ps.table(), l.bottom(), l.bottom(), {}, strict); }),
            ErrorKind::InvalidInput);
  EXPECT_NO_THROW(PhaseStructure::load(l, ps.table(), l.top(), l.bottom(), {}, strict));
  EXPECT_NE(verify_laws(PhaseStructure::load(l, ps.table(), l.top(), l.bottom(), {}, strict)).find("strict-unit"),
            nullptr);
  EXPECT_EQ(verify_laws(ps).find("strict-unit"), nullptr);
}

TEST(Phase, NonFactArgumentsLeaveANote) {
  Zero z;
  PhaseOptions opts;
  opts.validate = false;
  auto x = z.l.element("x"), y = z.l.element("y");
  std::vector<std::pair<Element, Element>> ov{{x, y}, {y, x}};
  auto ps = PhaseStructure::load(z.l, z.table(), z.l.top(), z.l.bottom(), ov, opts);
  EXPECT_TRUE(ps.is_fact(x));
  Diagnostics d;
  additive_disj(ps, x, y, &d);
  EXPECT_TRUE(d.warnings.empty());
  // Make x a non-fact by pointing its dual at 0.
  std::vector<std::pair<Element, Element>> ov2{{x, z.l.bottom()}, {y, x}};
  auto broken = PhaseStructure::load(z.l, z.table(), z.l.top(), z.l.bottom(), ov2, opts);
  EXPECT_FALSE(broken.is_fact(x));
  tensor(broken, x, y, TensorMode::RawMonoid, &d);
  EXPECT_TRUE(d.warnings.empty());  // the raw product is defined everywhere
  tensor(broken, x, y, TensorMode::FactClosed, &d);
  EXPECT_FALSE(d.warnings.empty());
}

TEST(Phase, ForeignElementsAreRejected) {
  auto a = boolean({"p"});
  auto b = boolean({"p"});
  EXPECT_EQ(kind_of([&] { a.mult(a.lattice().top(), b.lattice().top()); }), ErrorKind::ForeignElement);
  EXPECT_EQ(kind_of([&] { a.dual(b.lattice().top()); }), ErrorKind::ForeignElement);
}
