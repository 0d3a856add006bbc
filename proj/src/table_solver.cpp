#include "phasegame/table_solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "phasegame/error.hpp"

namespace phasegame {

void AmbiguousTable::set(Element x, Element y, std::vector<Element> values) {
  if (!lattice.contains(x) || !lattice.contains(y)) {
    throw Error(ErrorKind::ForeignElement, "candidate pair from another lattice");
  }
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "empty candidate set");
  for (auto v : values) {
    if (!lattice.contains(v)) throw Error(ErrorKind::ForeignElement, "candidate from another lattice");
  }
  auto key = std::minmax(x.index, y.index);
  candidates[{key.first, key.second}] = std::move(values);
}

namespace {

using Domain = std::uint64_t;

class Search {
 public:
  Search(const AmbiguousTable& at, const SolveOptions& opts)
      : at_(at), l_(at.lattice), n_(l_.size()), opts_(opts) {
    if (n_ > 64) throw Error(ErrorKind::SizeExceeded, "solver supports at most 64 elements");
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0u);
    std::sort(order_.begin(), order_.end(),
              [&](auto a, auto b) { return l_.name(l_.at(a)) < l_.name(l_.at(b)); });
  }

  SolveResult run() {
    const Domain full = n_ == 64 ? ~Domain{0} : ((Domain{1} << n_) - 1);
    std::vector<Domain> dom(n_ * (n_ + 1) / 2, full);
    for (const auto& [key, values] : at_.candidates) {
      Domain d = 0;
      for (auto v : values) d |= Domain{1} << v.index;
      dom[pid(key.first, key.second)] &= d;
    }
    // X^⊥·X ≤ ⊥ is decidable up front for overridden duals.
    Domain below_falsum = 0;
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (l_.leq(l_.at(v), at_.falsum)) below_falsum |= Domain{1} << v;
    }
    for (const auto& [x, d] : at_.dual_overrides) dom[pid(x.index, d.index)] &= below_falsum;

    if (propagate(dom)) descend(dom);
    std::sort(result_.solutions.begin(), result_.solutions.end(),
              [&](const PhaseStructure& a, const PhaseStructure& b) { return key(a) < key(b); });
    if (result_.solutions.empty()) {
      throw Error(ErrorKind::NoSolution, "no completion satisfies the phase laws (" +
                                             std::to_string(result_.nodes) + " nodes searched)");
    }
    return std::move(result_);
  }

 private:
  std::size_t pid(std::uint32_t i, std::uint32_t j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
  }

  static bool single(Domain d) { return std::has_single_bit(d); }
  static std::uint32_t value(Domain d) { return static_cast<std::uint32_t>(std::countr_zero(d)); }

  // Associativity: m(m(x,y),z) = m(x,m(y,z)). Once both inner products are
  // fixed the two outer entries must agree, so their domains are intersected.
  bool propagate(std::vector<Domain>& dom) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint32_t x = 0; x < n_; ++x) {
        for (std::uint32_t y = 0; y < n_; ++y) {
          Domain dxy = dom[pid(x, y)];
          if (!single(dxy)) continue;
          auto u = value(dxy);
          for (std::uint32_t z = 0; z < n_; ++z) {
            Domain dyz = dom[pid(y, z)];
            if (!single(dyz)) continue;
            auto w = value(dyz);
            auto p = pid(u, z), q = pid(x, w);
            if (p == q) continue;
            Domain both = dom[p] & dom[q];
            if (both == 0) return false;
            if (both != dom[p] || both != dom[q]) {
              dom[p] = dom[q] = both;
              changed = true;
            }
          }
        }
      }
    }
    return true;
  }

  void descend(const std::vector<Domain>& dom) {
    if (result_.cap_exceeded) return;
    ++result_.nodes;
    std::size_t best = dom.size();
    int best_count = 65;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      int c = std::popcount(dom[i]);
      if (c > 1 && c < best_count) {
        best = i;
        best_count = c;
      }
    }
    if (best == dom.size()) {
      leaf(dom);
      return;
    }
    for (auto v : order_) {
      if (!(dom[best] >> v & 1)) continue;
      auto next = dom;
      next[best] = Domain{1} << v;
      if (propagate(next)) descend(next);
      if (result_.cap_exceeded) return;
    }
  }

  void leaf(const std::vector<Domain>& dom) {
    std::vector<Element> table(n_ * n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      for (std::uint32_t j = 0; j < n_; ++j) table[i * n_ + j] = l_.at(value(dom[pid(i, j)]));
    }
    try {
      auto ps = PhaseStructure::load(l_, std::move(table), at_.unit, at_.falsum, at_.dual_overrides, at_.options);
      if (!verify_laws(ps).passed()) return;
      for (const auto& lc : at_.linked) {
        if (lc.sum.empty()) continue;
        Element acc = ps.mult(lc.sum[0].first, lc.sum[0].second);
        for (std::size_t k = 1; k < lc.sum.size(); ++k) {
          acc = additive_disj(ps, acc, ps.mult(lc.sum[k].first, lc.sum[k].second));
        }
        if (acc != lc.equals) return;
      }
      if (result_.solutions.size() >= opts_.max_solutions) {
        result_.cap_exceeded = true;
        return;
      }
      result_.solutions.push_back(std::move(ps));
    } catch (const Error&) {
      // Structural rejection at load time prunes this completion.
    }
  }

  std::vector<std::string> key(const PhaseStructure& ps) const {
    std::vector<std::string> k;
    k.reserve(ps.table().size());
    for (auto e : ps.table()) k.push_back(l_.name(e));
    return k;
  }

  const AmbiguousTable& at_;
  const Lattice& l_;
  std::size_t n_;
  SolveOptions opts_;
  std::vector<std::uint32_t> order_;
  SolveResult result_;
};

}  // namespace

SolveResult solve_table(const AmbiguousTable& at, const SolveOptions& options) {
  return Search(at, options).run();
}

}  // namespace phasegame
