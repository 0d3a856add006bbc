#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace phasegame {

/// An element of one specific Lattice. The owner tag lets every operation
/// reject elements that were minted by a different lattice.
struct Element {
  std::uint64_t owner = 0;
  std::uint32_t index = 0;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct LatticeSpec {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  std::string bottom;
  std::string top;
};

/// Finite bounded lattice given by its Hasse relation. The order, meet and join
/// tables are derived once at construction; afterwards the value is immutable.
class Lattice {
 public:
  /// Validates the description: throws NotAPartialOrder, NotALattice or
  /// UnboundedLattice.
  static Lattice from_spec(const LatticeSpec& spec);

  /// 0 < 1 < ... < n-1, named "0".."n-1" unless names are given.
  static Lattice chain(std::size_t length, std::vector<std::string> names = {});
  /// Powerset of `atoms`; element index == bitmask over atoms, names like "{p,q}".
  static Lattice powerset(const std::vector<std::string>& atoms);

  std::size_t size() const { return names_.size(); }
  std::uint64_t id() const { return id_; }

  Element element(std::string_view name) const;
  Element at(std::size_t index) const;
  bool contains(Element x) const { return x.owner == id_ && x.index < size(); }
  const std::string& name(Element x) const;
  std::vector<Element> elements() const;

  Element bottom() const { return at(bottom_); }
  Element top() const { return at(top_); }

  bool leq(Element x, Element y) const;
  bool less(Element x, Element y) const { return x != y && leq(x, y); }
  Element join(Element x, Element y) const;
  Element meet(Element x, Element y) const;
  Element join(std::span<const Element> xs) const;
  Element meet(std::span<const Element> xs) const;

  /// Elements covering x / covered by x (Hasse neighbours).
  std::vector<Element> upper_covers(Element x) const;
  std::vector<Element> lower_covers(Element x) const;
  bool is_join_irreducible(Element x) const;
  /// Number of atoms below x.
  std::size_t atom_rank(Element x) const;

  bool is_distributive() const;
  /// Relative pseudo-complement: the largest c with a ∧ c ≤ b. Throws NotHeyting
  /// when the lattice is not distributive or residuation fails at (a, b).
  Element heyting_implies(Element a, Element b) const;
  Element heyting_neg(Element a) const;

  LatticeSpec to_spec() const;

  /// Same identity (and therefore interchangeable elements).
  bool same_as(const Lattice& other) const { return id_ == other.id_; }
  /// Structural equality up to element names.
  bool isomorphic_by_name(const Lattice& other) const;

 private:
  Lattice() = default;
  void build(std::vector<std::string> names,
             const std::vector<std::pair<std::size_t, std::size_t>>& covers,
             std::size_t bottom, std::size_t top, bool known_distributive = false);
  void check(Element x) const;

  std::uint64_t id_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::uint32_t>> ups_, downs_;
  std::vector<char> order_;
  std::vector<std::uint32_t> join_, meet_;
  std::size_t bottom_ = 0, top_ = 0;
  bool distributive_ = false;
};

}  // namespace phasegame
