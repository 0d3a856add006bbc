#include "phasegame/oracle.hpp"

#include <functional>

#include "phasegame/error.hpp"

namespace phasegame {

void Monoid::validate() const {
  const auto n = size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "monoid must be nonempty");
  if (table.size() != n * n) throw Error(ErrorKind::InvalidInput, "monoid table has wrong size");
  if (unit >= n) throw Error(ErrorKind::InvalidInput, "unit out of range");
  for (auto v : table) {
    if (v >= n) throw Error(ErrorKind::InvalidInput, "monoid table value out of range");
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    if (mul(unit, x) != x || mul(x, unit) != x) {
      throw Error(ErrorKind::InvalidInput, "unit law fails at " + names[x]);
    }
    for (std::uint32_t y = 0; y < n; ++y) {
      if (mul(x, y) != mul(y, x)) {
        throw Error(ErrorKind::NotCommutative, names[x] + "·" + names[y] + " differs from " + names[y] + "·" + names[x]);
      }
      for (std::uint32_t z = 0; z < n; ++z) {
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
          throw Error(ErrorKind::NotAssociative, "at (" + names[x] + ", " + names[y] + ", " + names[z] + ")");
        }
      }
    }
  }
}

Monoid Monoid::cyclic(std::size_t n) {
  Monoid m;
  for (std::size_t i = 0; i < n; ++i) m.names.push_back(i == 0 ? "e" : "g" + std::to_string(i));
  m.table.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.table[i * n + j] = static_cast<std::uint32_t>((i + j) % n);
  }
  return m;
}

std::vector<Monoid> enumerate_commutative_monoids(std::size_t n) {
  std::vector<Monoid> out;
  if (n == 0) return out;
  Monoid base;
  for (std::size_t i = 0; i < n; ++i) base.names.push_back(i == 0 ? "e" : "m" + std::to_string(i));
  base.table.assign(n * n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    base.table[i] = i;
    base.table[i * n] = i;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> free;
  for (std::uint32_t i = 1; i < n; ++i) {
    for (std::uint32_t j = i; j < n; ++j) free.emplace_back(i, j);
  }
  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (k == free.size()) {
      try {
        base.validate();
        out.push_back(base);
      } catch (const Error&) {
      }
      return;
    }
    auto [i, j] = free[k];
    for (std::uint32_t v = 0; v < n; ++v) {
      base.table[i * n + j] = v;
      base.table[j * n + i] = v;
      fill(k + 1);
    }
  };
  fill(0);
  return out;
}

std::string subset_name(const Monoid& m, Subset s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(s >> i & 1)) continue;
    if (!first) out += ",";
    out += m.names[i];
    first = false;
  }
  return out + "}";
}

namespace {

class SubsetModel {
 public:
  SubsetModel(const Monoid& m, Subset falsum) : m_(m), falsum_(falsum), count_(Subset{1} << m.size()) {
    dual_.resize(count_);
    for (Subset x = 0; x < count_; ++x) dual_[x] = implies(x, falsum_);
  }

  Subset count() const { return count_; }
  Subset all() const { return count_ - 1; }
  Subset falsum() const { return falsum_; }
  Subset dual(Subset x) const { return dual_[x]; }
  Subset dd(Subset x) const { return dual_[dual_[x]]; }
  bool is_fact(Subset x) const { return dd(x) == x; }

  Subset prod(Subset x, Subset y) const {
    Subset out = 0;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      if (!(x >> i & 1)) continue;
      for (std::size_t j = 0; j < m_.size(); ++j) {
        if (y >> j & 1) out |= Subset{1} << m_.mul(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      }
    }
    return out;
  }

  /// {z | x·z ∈ Y for every x ∈ X}
  Subset implies(Subset x, Subset y) const {
    Subset out = 0;
    for (std::size_t z = 0; z < m_.size(); ++z) {
      if ((prod(x, Subset{1} << z) & ~y) == 0) out |= Subset{1} << z;
    }
    return out;
  }

 private:
  const Monoid& m_;
  Subset falsum_;
  Subset count_;
  std::vector<Subset> dual_;
};

}  // namespace

OracleReport subset_phase_oracle(const Monoid& m, Subset falsum) {
  if (m.size() > 6) throw Error(ErrorKind::SizeExceeded, "subset oracle supports monoids of at most 6 elements");
  m.validate();
  SubsetModel sm(m, falsum & ((Subset{1} << m.size()) - 1));
  auto nm = [&](Subset s) { return subset_name(m, s); };

  OracleReport rep;
  rep.monoid_size = m.size();
  rep.falsum = sm.falsum();
  std::vector<Subset> facts;
  for (Subset x = 0; x < sm.count(); ++x) {
    if (sm.is_fact(x)) facts.push_back(x);
  }
  rep.facts = facts;

  // References returned by law() must stay valid while later laws are added.
  rep.laws.checks.reserve(32);
  auto law = [&](const std::string& name) -> LawCheck& {
    LawCheck c;
    c.law = name;
    rep.laws.checks.push_back(std::move(c));
    return rep.laws.checks.back();
  };
  auto record = [](LawCheck& c, bool ok, const std::function<std::string()>& witness) {
    ++c.checked;
    if (ok) return;
    ++c.violations;
    if (c.witnesses.size() < 5) c.witnesses.push_back(witness());
  };

  const Subset unit_set = Subset{1} << m.unit;
  const Subset neutral_i = sm.dual(sm.falsum());
  const Subset zero = sm.dual(sm.all());

  {
    auto& c = law("unit-falsum");
    record(c, neutral_i == sm.dd(unit_set), [&] { return "⊥^⊥ = " + nm(neutral_i) + " but {e}^⊥⊥ = " + nm(sm.dd(unit_set)); });
  }
  {
    auto& absorbs = law("dual-absorbs");
    for (Subset x = 0; x < sm.count(); ++x) {
      record(absorbs, (sm.prod(sm.dual(x), x) & ~sm.falsum()) == 0, [&] { return nm(x); });
    }
    auto& ext = law("double-dual-extensive");
    for (Subset x = 0; x < sm.count(); ++x) record(ext, (x & ~sm.dd(x)) == 0, [&] { return nm(x); });
    auto& triple = law("triple-dual");
    for (Subset x = 0; x < sm.count(); ++x) record(triple, sm.dual(sm.dd(x)) == sm.dual(x), [&] { return nm(x); });
  }
  {
    auto& morgan = law("de-morgan");
    auto& product = law("dual-of-product");
    auto& curry = law("currying");
    for (Subset x = 0; x < sm.count(); ++x) {
      for (Subset y = 0; y < sm.count(); ++y) {
        record(morgan, sm.dual(x | y) == (sm.dual(x) & sm.dual(y)), [&] { return nm(x) + ", " + nm(y); });
        record(product, sm.implies(x, sm.dual(y)) == sm.dual(sm.prod(x, y)), [&] { return nm(x) + ", " + nm(y); });
        auto xy = sm.prod(x, y);
        for (Subset z = 0; z < sm.count(); ++z) {
          record(curry, sm.implies(xy, z) == sm.implies(x, sm.implies(y, z)),
                 [&] { return nm(x) + ", " + nm(y) + ", " + nm(z); });
        }
      }
    }
  }
  {
    auto& conj = law("conj-closed");
    auto& tensor_neutral = law("tensor-neutral");
    auto& par_neutral = law("par-neutral");
    auto& plus_neutral = law("plus-neutral");
    auto& tensor_assoc = law("tensor-associative");
    auto& imp_fact = law("implication-fact");
    auto& imp_par = law("implication-par");
    for (auto x : facts) {
      record(tensor_neutral, sm.dd(sm.prod(neutral_i, x)) == x, [&] { return nm(x); });
      record(par_neutral, sm.dual(sm.prod(sm.dual(sm.falsum()), sm.dual(x))) == x, [&] { return nm(x); });
      record(plus_neutral, sm.dd(x | zero) == x, [&] { return nm(x); });
      for (auto y : facts) {
        record(conj, sm.is_fact(x & y), [&] { return nm(x) + " ∩ " + nm(y); });
        for (auto z : facts) {
          auto left = sm.dd(sm.prod(sm.dd(sm.prod(x, y)), z));
          auto right = sm.dd(sm.prod(x, sm.dd(sm.prod(y, z))));
          record(tensor_assoc, left == right, [&] { return nm(x) + ", " + nm(y) + ", " + nm(z); });
        }
      }
    }
    for (Subset x = 0; x < sm.count(); ++x) {
      for (auto y : facts) {
        auto imp = sm.implies(x, y);
        record(imp_fact, sm.is_fact(imp), [&] { return nm(x) + " ⊸ " + nm(y); });
        record(imp_par, imp == sm.dual(sm.prod(x, sm.dual(y))), [&] { return nm(x) + " ⊸ " + nm(y); });
      }
    }
  }
  {
    // The element engine on the powerset lattice, with the lifted product.
    auto& agree = law("engine-agreement");
    std::vector<std::string> atoms = m.names;
    auto lat = Lattice::powerset(atoms);
    std::vector<Element> table(sm.count() * sm.count());
    for (Subset x = 0; x < sm.count(); ++x) {
      for (Subset y = 0; y < sm.count(); ++y) table[x * sm.count() + y] = lat.at(sm.prod(x, y));
    }
    try {
      auto ps = PhaseStructure::load(lat, std::move(table), lat.at(unit_set), lat.at(sm.falsum()));
      for (Subset x = 0; x < sm.count(); ++x) {
        record(agree, ps.dual(lat.at(x)).index == sm.dual(x),
               [&] { return "engine dual of " + nm(x) + " is " + lat.name(ps.dual(lat.at(x))); });
      }
      for (const auto& c : verify_laws(ps).checks) {
        record(agree, c.passed(), [&] { return "engine law " + c.law + " fails"; });
      }
    } catch (const Error& e) {
      record(agree, false, [&] { return std::string("engine rejected the lifted structure: ") + e.what(); });
    }
  }
  return rep;
}

}  // namespace phasegame
