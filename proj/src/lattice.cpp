#include "phasegame/lattice.hpp"

#include <algorithm>
#include <atomic>

#include "phasegame/error.hpp"

namespace phasegame {

namespace {

std::uint64_t next_lattice_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::UnboundedLattice: return "UnboundedLattice";
    case ErrorKind::ForeignElement: return "ForeignElement";
    case ErrorKind::NotHeyting: return "NotHeyting";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::DualLawViolation: return "DualLawViolation";
    case ErrorKind::OverrideInconsistent: return "OverrideInconsistent";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotClosedClass: return "NotClosedClass";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::InvalidGame: return "InvalidGame";
    case ErrorKind::InvalidStrategy: return "InvalidStrategy";
    case ErrorKind::LatticeMismatch: return "LatticeMismatch";
    case ErrorKind::ComponentMismatch: return "ComponentMismatch";
    case ErrorKind::StepCapExceeded: return "StepCapExceeded";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::UnknownGoalElement: return "UnknownGoalElement";
    case ErrorKind::PhaseLoadFailure: return "PhaseLoadFailure";
    case ErrorKind::HorizonEmpty: return "HorizonEmpty";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Lattice Lattice::from_spec(const LatticeSpec& spec) {
  if (spec.elements.empty()) throw Error(ErrorKind::NotALattice, "no elements");
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < spec.elements.size(); ++i) {
    if (!idx.emplace(spec.elements[i], i).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate element '" + spec.elements[i] + "'");
    }
  }
  auto lookup = [&](const std::string& n) {
    auto it = idx.find(n);
    if (it == idx.end()) throw Error(ErrorKind::ForeignElement, "unknown element '" + n + "'");
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  covers.reserve(spec.covers.size());
  for (const auto& [lo, hi] : spec.covers) covers.emplace_back(lookup(lo), lookup(hi));
  Lattice l;
  l.build(spec.elements, covers, lookup(spec.bottom), lookup(spec.top));
  return l;
}

Lattice Lattice::chain(std::size_t length, std::vector<std::string> names) {
  if (length == 0) throw Error(ErrorKind::InvalidInput, "empty chain");
  if (names.empty()) {
    for (std::size_t i = 0; i < length; ++i) names.push_back(std::to_string(i));
  }
  if (names.size() != length) throw Error(ErrorKind::InvalidInput, "chain name count mismatch");
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i + 1 < length; ++i) covers.emplace_back(i, i + 1);
  Lattice l;
  l.build(std::move(names), covers, 0, length - 1, true);
  return l;
}

Lattice Lattice::powerset(const std::vector<std::string>& atoms) {
  const std::size_t k = atoms.size();
  if (k > 10) throw Error(ErrorKind::SizeExceeded, "powerset over more than 10 atoms");
  const std::size_t n = std::size_t{1} << k;
  Lattice l;
  l.id_ = next_lattice_id();
  l.names_.resize(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) {
        if (!first) s += ",";
        s += atoms[i];
        first = false;
      }
    }
    l.names_[mask] = s + "}";
    l.index_.emplace(l.names_[mask], static_cast<std::uint32_t>(mask));
  }
  l.ups_.assign(n, {});
  l.downs_.assign(n, {});
  for (std::size_t mask = 0; mask < n; ++mask) {
    for (std::size_t i = 0; i < k; ++i) {
      auto bit = std::size_t{1} << i;
      if (!(mask & bit)) {
        l.covers_.emplace_back(mask, mask | bit);
        l.ups_[mask].push_back(static_cast<std::uint32_t>(mask | bit));
        l.downs_[mask | bit].push_back(static_cast<std::uint32_t>(mask));
      }
    }
  }
  l.order_.assign(n * n, 0);
  l.join_.assign(n * n, 0);
  l.meet_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      l.order_[x * n + y] = (x & y) == x;
      l.join_[x * n + y] = static_cast<std::uint32_t>(x | y);
      l.meet_[x * n + y] = static_cast<std::uint32_t>(x & y);
    }
  }
  l.bottom_ = 0;
  l.top_ = n - 1;
  l.distributive_ = true;
  return l;
}

void Lattice::build(std::vector<std::string> names,
                    const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                    std::size_t bottom, std::size_t top, bool known_distributive) {
  const std::size_t n = names.size();
  id_ = next_lattice_id();
  names_ = std::move(names);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(names_[i], static_cast<std::uint32_t>(i));
  covers_ = covers;
  ups_.assign(n, {});
  downs_.assign(n, {});
  for (const auto& [lo, hi] : covers) {
    if (lo == hi) {
      throw Error(ErrorKind::NotAPartialOrder, "cover (" + names_[lo] + "," + names_[hi] + ") is a loop");
    }
    ups_[lo].push_back(static_cast<std::uint32_t>(hi));
    downs_[hi].push_back(static_cast<std::uint32_t>(lo));
  }

  // Reflexive-transitive closure by DFS from every element.
  order_.assign(n * n, 0);
  std::vector<std::uint32_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    char* row = &order_[s * n];
    row[s] = 1;
    stack.assign(1, static_cast<std::uint32_t>(s));
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : ups_[u]) {
        if (!row[v]) {
          row[v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (order_[i * n + j] && order_[j * n + i]) {
        throw Error(ErrorKind::NotAPartialOrder,
                    "cycle through '" + names_[i] + "' and '" + names_[j] + "'");
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!order_[bottom * n + x]) {
      throw Error(ErrorKind::UnboundedLattice,
                  "declared bottom '" + names_[bottom] + "' is not below '" + names_[x] + "'");
    }
    if (!order_[x * n + top]) {
      throw Error(ErrorKind::UnboundedLattice,
                  "declared top '" + names_[top] + "' is not above '" + names_[x] + "'");
    }
  }
  bottom_ = bottom;
  top_ = top;

  // Height (number of elements below) picks the unique least bound quickly.
  std::vector<std::size_t> below(n, 0), above(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (order_[j * n + i]) ++below[i];
      if (order_[i * n + j]) ++above[i];
    }
  }
  join_.assign(n * n, 0);
  meet_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      std::size_t best_up = top, best_down = bottom;
      for (std::size_t z = 0; z < n; ++z) {
        if (order_[x * n + z] && order_[y * n + z] && below[z] < below[best_up]) best_up = z;
        if (order_[z * n + x] && order_[z * n + y] && above[z] < above[best_down]) best_down = z;
      }
      for (std::size_t z = 0; z < n; ++z) {
        if (order_[x * n + z] && order_[y * n + z] && !order_[best_up * n + z]) {
          throw Error(ErrorKind::NotALattice,
                      "'" + names_[x] + "' and '" + names_[y] + "' have no least upper bound");
        }
        if (order_[z * n + x] && order_[z * n + y] && !order_[z * n + best_down]) {
          throw Error(ErrorKind::NotALattice,
                      "'" + names_[x] + "' and '" + names_[y] + "' have no greatest lower bound");
        }
      }
      join_[x * n + y] = join_[y * n + x] = static_cast<std::uint32_t>(best_up);
      meet_[x * n + y] = meet_[y * n + x] = static_cast<std::uint32_t>(best_down);
    }
  }

  if (known_distributive) {
    distributive_ = true;
  } else {
    distributive_ = true;
    for (std::size_t x = 0; x < n && distributive_; ++x) {
      for (std::size_t y = 0; y < n && distributive_; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          auto lhs = meet_[x * n + join_[y * n + z]];
          auto rhs = join_[meet_[x * n + y] * n + meet_[x * n + z]];
          if (lhs != rhs) {
            distributive_ = false;
            break;
          }
        }
      }
    }
  }
}

void Lattice::check(Element x) const {
  if (!contains(x)) {
    throw Error(ErrorKind::ForeignElement,
                "element #" + std::to_string(x.index) + " does not belong to this lattice");
  }
}

Element Lattice::element(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw Error(ErrorKind::ForeignElement, "unknown element '" + std::string(name) + "'");
  }
  return Element{id_, it->second};
}

Element Lattice::at(std::size_t index) const {
  if (index >= size()) throw Error(ErrorKind::ForeignElement, "index out of range");
  return Element{id_, static_cast<std::uint32_t>(index)};
}

const std::string& Lattice::name(Element x) const {
  check(x);
  return names_[x.index];
}

std::vector<Element> Lattice::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

bool Lattice::leq(Element x, Element y) const {
  check(x);
  check(y);
  return order_[x.index * size() + y.index] != 0;
}

Element Lattice::join(Element x, Element y) const {
  check(x);
  check(y);
  return at(join_[x.index * size() + y.index]);
}

Element Lattice::meet(Element x, Element y) const {
  check(x);
  check(y);
  return at(meet_[x.index * size() + y.index]);
}

Element Lattice::join(std::span<const Element> xs) const {
  if (xs.empty()) throw Error(ErrorKind::InvalidInput, "join of an empty set");
  Element acc = xs.front();
  for (auto x : xs.subspan(1)) acc = join(acc, x);
  check(acc);
  return acc;
}

Element Lattice::meet(std::span<const Element> xs) const {
  if (xs.empty()) throw Error(ErrorKind::InvalidInput, "meet of an empty set");
  Element acc = xs.front();
  for (auto x : xs.subspan(1)) acc = meet(acc, x);
  check(acc);
  return acc;
}

std::vector<Element> Lattice::upper_covers(Element x) const {
  check(x);
  std::vector<Element> out;
  for (auto u : ups_[x.index]) out.push_back(at(u));
  return out;
}

std::vector<Element> Lattice::lower_covers(Element x) const {
  check(x);
  std::vector<Element> out;
  for (auto d : downs_[x.index]) out.push_back(at(d));
  return out;
}

bool Lattice::is_join_irreducible(Element x) const {
  check(x);
  // In a finite lattice: x != 0 and x has exactly one lower cover.
  std::size_t lower = 0;
  for (std::size_t y = 0; y < size(); ++y) {
    if (y == x.index || !order_[y * size() + x.index]) continue;
    bool cover = true;
    for (std::size_t z = 0; z < size() && cover; ++z) {
      if (z != y && z != x.index && order_[y * size() + z] && order_[z * size() + x.index]) cover = false;
    }
    if (cover) ++lower;
  }
  return x.index != bottom_ && lower == 1;
}

std::size_t Lattice::atom_rank(Element x) const {
  check(x);
  std::size_t count = 0;
  for (std::size_t y = 0; y < size(); ++y) {
    if (y == bottom_ || !order_[y * size() + x.index]) continue;
    bool atom = true;
    for (std::size_t z = 0; z < size() && atom; ++z) {
      if (z != y && z != bottom_ && order_[z * size() + y]) atom = false;
    }
    if (atom) ++count;
  }
  return count;
}

bool Lattice::is_distributive() const { return distributive_; }

Element Lattice::heyting_implies(Element a, Element b) const {
  check(a);
  check(b);
  if (!distributive_) {
    throw Error(ErrorKind::NotHeyting, "lattice is not distributive");
  }
  const std::size_t n = size();
  std::uint32_t result = static_cast<std::uint32_t>(bottom_);
  for (std::uint32_t c = 0; c < n; ++c) {
    if (order_[meet_[a.index * n + c] * n + b.index]) result = join_[result * n + c];
  }
  // Residuation must hold exactly: a ∧ c ≤ b  <=>  c ≤ result.
  for (std::uint32_t c = 0; c < n; ++c) {
    bool lhs = order_[meet_[a.index * n + c] * n + b.index] != 0;
    bool rhs = order_[c * n + result] != 0;
    if (lhs != rhs) {
      throw Error(ErrorKind::NotHeyting, "residuation fails for (" + names_[a.index] + ", " +
                                             names_[b.index] + ") at " + names_[c]);
    }
  }
  return at(result);
}

Element Lattice::heyting_neg(Element a) const { return heyting_implies(a, bottom()); }

LatticeSpec Lattice::to_spec() const {
  LatticeSpec spec;
  spec.elements = names_;
  for (const auto& [lo, hi] : covers_) spec.covers.emplace_back(names_[lo], names_[hi]);
  spec.bottom = names_[bottom_];
  spec.top = names_[top_];
  return spec;
}

bool Lattice::isomorphic_by_name(const Lattice& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    auto it = other.index_.find(names_[i]);
    if (it == other.index_.end()) return false;
  }
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      auto oi = other.index_.at(names_[i]);
      auto oj = other.index_.at(names_[j]);
      if (order_[i * size() + j] != other.order_[oi * size() + oj]) return false;
    }
  }
  return true;
}

}  // namespace phasegame
