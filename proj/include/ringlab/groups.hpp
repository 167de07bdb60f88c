#pragma once
// Unit groups and finite-group algorithms over element ids. The algorithms
// are written against the FiniteGroup concept, so they run unchanged on a
// ring's unit group and on quotient groups built elsewhere.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/parallel.hpp"
#include "ringlab/ring.hpp"
#include "ringlab/subset_mask.hpp"

namespace ringlab {

template <class G>
concept FiniteGroup = requires(const G& g, Id a, Id b) {
  { g.identity() } -> std::convertible_to<Id>;
  { g.mul(a, b) } -> std::convertible_to<Id>;
  { g.inverse(a) } -> std::convertible_to<Id>;
  { g.contains(a) } -> std::convertible_to<bool>;
  { g.id_bound() } -> std::convertible_to<std::size_t>;
  { g.elements() } -> std::convertible_to<const std::vector<Id>&>;
};

/// Result of power cycling: the multiplicative order and inverse of a unit.
struct UnitCycle {
  std::uint64_t order;
  Id inverse;
};

/// Power cycling with Floyd's scheme: the first i with x^i = x^(2i) gives the
/// idempotent x^i, which is 1 exactly when x is a unit. For a unit that i is
/// its order and x^(i-1) its inverse.
inline std::optional<UnitCycle> power_cycle(const Ring& r, Id x) {
  Id prev = r.one();  // x^(i-1)
  Id slow = x;        // x^i
  Id fast = r.mul(x, x);
  std::uint64_t i = 1;
  while (slow != fast) {
    prev = slow;
    slow = r.mul(slow, x);
    fast = r.mul(r.mul(fast, x), x);
    ++i;
  }
  if (slow != r.one()) return std::nullopt;
  return UnitCycle{i, prev};
}

struct UnitOptions {
  /// Skip power cycling for elements a constructor-specific test rejects.
  bool fast_path = true;
  Parallelism parallelism{};
};

/// R* as a sorted id list with inverses.
class UnitGroup {
 public:
  static constexpr std::uint64_t kDenseIndexLimit = std::uint64_t{1} << 22;

  UnitGroup(Ring ring, std::vector<Id> members, std::vector<Id> inverses)
      : ring_(std::move(ring)), members_(std::move(members)), inverses_(std::move(inverses)), mask_(ring_.order()) {
    for (Id u : members_) mask_.set(u);
    if (ring_.order() <= kDenseIndexLimit) {
      dense_.assign(ring_.order(), 0);
      for (std::size_t i = 0; i < members_.size(); ++i) dense_[members_[i]] = inverses_[i];
    }
  }

  Id identity() const noexcept { return ring_.one(); }
  Id mul(Id a, Id b) const { return ring_.mul(a, b); }
  Id inverse(Id a) const {
    if (!dense_.empty()) return dense_[a];
    return inverses_[static_cast<std::size_t>(std::lower_bound(members_.begin(), members_.end(), a) - members_.begin())];
  }
  bool contains(Id a) const { return mask_.test(a); }
  std::size_t id_bound() const noexcept { return ring_.order(); }
  const std::vector<Id>& elements() const noexcept { return members_; }

  std::size_t order() const noexcept { return members_.size(); }
  const Ring& ring() const noexcept { return ring_; }
  const SubsetMask& mask() const noexcept { return mask_; }

 private:
  Ring ring_;
  std::vector<Id> members_;
  std::vector<Id> inverses_;
  SubsetMask mask_;
  std::vector<Id> dense_;
};

static_assert(FiniteGroup<UnitGroup>);

inline UnitGroup units_of(const Ring& r, const UnitOptions& opts = {}) {
  const std::size_t n = r.order();
  std::vector<std::vector<std::pair<Id, Id>>> found(std::max<std::size_t>(1, opts.parallelism.threads));
  const std::size_t workers = found.size();
  const std::size_t chunk = (n + workers - 1) / workers;
  parallel_for(workers, opts.parallelism, [&](std::size_t w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    for (std::size_t x = lo; x < hi; ++x) {
      const Id id = static_cast<Id>(x);
      if (opts.fast_path) {
        auto fast = r.impl().fast_is_unit(id);
        if (fast && !*fast) continue;
      }
      if (auto c = power_cycle(r, id)) found[w].emplace_back(id, c->inverse);
    }
  });
  std::vector<Id> members, inverses;
  for (const auto& part : found)
    for (auto [u, inv] : part) {
      members.push_back(u);
      inverses.push_back(inv);
    }
  return UnitGroup(r, std::move(members), std::move(inverses));
}

/// A subgroup: membership mask plus its elements in discovery order.
struct Subgroup {
  SubsetMask mask;
  std::vector<Id> elements;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(Id x) const { return mask.test(x); }
  std::vector<Id> sorted() const { return mask.elements(); }
};

template <FiniteGroup G>
Subgroup trivial_subgroup(const G& g) {
  Subgroup h{SubsetMask(g.id_bound()), {g.identity()}};
  h.mask.set(g.identity());
  return h;
}

template <FiniteGroup G>
Subgroup subgroup_from_mask(const G& g, const SubsetMask& m) {
  (void)g;
  return Subgroup{m, m.elements()};
}

/// Adjoins x to the subgroup h generated by gens (worklist closure). Only the
/// new elements are multiplied by every generator; old elements only by x.
template <FiniteGroup G>
void extend_closure(const G& g, Subgroup& h, std::vector<Id>& gens, Id x) {
  if (h.mask.test(x)) return;
  gens.push_back(x);
  const std::size_t old = h.elements.size();
  for (std::size_t i = 0; i < old; ++i) {
    const Id y = g.mul(h.elements[i], x);
    if (h.mask.insert(y)) h.elements.push_back(y);
  }
  for (std::size_t i = old; i < h.elements.size(); ++i)
    for (Id s : gens) {
      const Id y = g.mul(h.elements[i], s);
      if (h.mask.insert(y)) h.elements.push_back(y);
    }
}

template <FiniteGroup G>
Subgroup subgroup_closure(const G& g, const std::vector<Id>& gens) {
  Subgroup h = trivial_subgroup(g);
  std::vector<Id> used;
  for (Id x : gens) {
    if (x >= g.id_bound() || !g.contains(x)) throw Error(ErrorKind::NotAUnit, "generator " + std::to_string(x) + " is not in the group");
    extend_closure(g, h, used, x);
  }
  return h;
}

/// Greedy generating set: the first (ascending id) element outside the
/// closure of the generators chosen so far. At most log2|h| elements.
template <FiniteGroup G>
std::vector<Id> generators_of(const G& g, const SubsetMask& h) {
  Subgroup cur = trivial_subgroup(g);
  std::vector<Id> gens;
  const std::size_t target = h.count();
  h.for_each([&](Id x) {
    if (cur.order() == target || cur.mask.test(x)) return;
    extend_closure(g, cur, gens, x);
  });
  return gens;
}

template <FiniteGroup G>
Id commutator(const G& g, Id a, Id b) {
  return g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b));
}

/// [H,H] for H = <gens>: the normal closure in H of the generator commutators.
template <FiniteGroup G>
Subgroup commutator_subgroup(const G& g, const std::vector<Id>& gens) {
  Subgroup n = trivial_subgroup(g);
  std::vector<Id> ngens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) extend_closure(g, n, ngens, commutator(g, gens[i], gens[j]));
  for (std::size_t i = 0; i < ngens.size(); ++i)
    for (Id s : gens) extend_closure(g, n, ngens, g.mul(g.mul(g.inverse(s), ngens[i]), s));
  return n;
}

/// [H,H] from every pair of elements; quadratic, used as a cross-check.
template <FiniteGroup G>
Subgroup commutator_subgroup_all_pairs(const G& g, const Subgroup& h) {
  Subgroup n = trivial_subgroup(g);
  std::vector<Id> ngens;
  for (Id a : h.elements)
    for (Id b : h.elements) extend_closure(g, n, ngens, commutator(g, a, b));
  return n;
}

enum class SeriesTerminal { ReachedTrivial, Stabilized };

inline const char* to_string(SeriesTerminal t) {
  return t == SeriesTerminal::ReachedTrivial ? "ReachedTrivial" : "Stabilized";
}

struct DerivedSeriesReport {
  std::vector<std::uint64_t> orders;
  SeriesTerminal terminal = SeriesTerminal::ReachedTrivial;

  bool solvable() const noexcept { return terminal == SeriesTerminal::ReachedTrivial; }
};

struct SeriesOptions {
  /// Compute each commutator subgroup from all element pairs.
  bool all_pairs = false;
  static constexpr std::size_t kAllPairsLimit = 2000;
};

/// Orders of G, G', G'', ... ending at 1 or at the first repeated term.
template <FiniteGroup G>
DerivedSeriesReport derived_series(const G& g, const Subgroup& h, const SeriesOptions& opts = {}) {
  DerivedSeriesReport rep;
  Subgroup cur = h;
  rep.orders.push_back(cur.order());
  while (cur.order() > 1) {
    Subgroup next;
    if (opts.all_pairs) {
      if (cur.order() > SeriesOptions::kAllPairsLimit)
        throw Error(ErrorKind::InvalidArgument, "all-pairs commutators limited to groups of order <= 2000");
      next = commutator_subgroup_all_pairs(g, cur);
    } else {
      next = commutator_subgroup(g, generators_of(g, cur.mask));
    }
    rep.orders.push_back(next.order());
    if (next.order() == cur.order()) {
      rep.terminal = SeriesTerminal::Stabilized;
      return rep;
    }
    cur = std::move(next);
  }
  rep.terminal = SeriesTerminal::ReachedTrivial;
  return rep;
}

template <FiniteGroup G>
DerivedSeriesReport derived_series(const G& g, const SeriesOptions& opts = {}) {
  return derived_series(g, subgroup_from_mask(g, SubsetMask::of(g.id_bound(), g.elements())), opts);
}

template <FiniteGroup G>
bool is_solvable(const G& g, const Subgroup& h) {
  return derived_series(g, h).solvable();
}

template <FiniteGroup G>
bool is_solvable(const G& g) {
  return derived_series(g).solvable();
}

template <FiniteGroup G>
std::uint64_t element_order(const G& g, Id x) {
  if (!g.contains(x)) throw Error(ErrorKind::NotAUnit, "element " + std::to_string(x) + " is not in the group");
  std::uint64_t k = 1;
  for (Id y = x; y != g.identity(); y = g.mul(y, x)) ++k;
  return k;
}

namespace detail {
template <FiniteGroup G, class Pred>
Subgroup filter_elements(const G& g, Parallelism par, Pred&& keep) {
  const auto& els = g.elements();
  std::vector<char> flag(els.size(), 0);
  parallel_for(els.size(), par, [&](std::size_t i) { flag[i] = keep(els[i]) ? 1 : 0; });
  SubsetMask m(g.id_bound());
  for (std::size_t i = 0; i < els.size(); ++i)
    if (flag[i]) m.set(els[i]);
  return Subgroup{m, m.elements()};
}
}  // namespace detail

/// N_G(H). Tests u^-1 s u ∈ H for the greedy generators s of H; the
/// conjugate subgroup has the same order, so containment means equality.
template <FiniteGroup G>
Subgroup normalizer(const G& g, const Subgroup& h, Parallelism par = {}) {
  const auto gens = generators_of(g, h.mask);
  return detail::filter_elements(g, par, [&](Id u) {
    const Id ui = g.inverse(u);
    for (Id s : gens)
      if (!h.mask.test(g.mul(g.mul(ui, s), u))) return false;
    return true;
  });
}

/// N_G(H) by conjugating every element of H.
template <FiniteGroup G>
Subgroup normalizer_elementwise(const G& g, const Subgroup& h, Parallelism par = {}) {
  return detail::filter_elements(g, par, [&](Id u) {
    const Id ui = g.inverse(u);
    for (Id s : h.elements)
      if (!h.mask.test(g.mul(g.mul(ui, s), u))) return false;
    return true;
  });
}

template <FiniteGroup G>
Subgroup centralizer(const G& g, const std::vector<Id>& s, Parallelism par = {}) {
  for (Id x : s)
    if (!g.contains(x)) throw Error(ErrorKind::NotAUnit, "element " + std::to_string(x) + " is not in the group");
  return detail::filter_elements(g, par, [&](Id u) {
    for (Id x : s)
      if (g.mul(u, x) != g.mul(x, u)) return false;
    return true;
  });
}

/// o(a) = 4, o(b) = 2, o(ab) = 3 and |<a,b>| = 24.
template <FiniteGroup G>
bool recognize_s4(const G& g, Id a, Id b) {
  if (!g.contains(a) || !g.contains(b)) throw Error(ErrorKind::NotAUnit, "S4 generators must be group elements");
  return element_order(g, a) == 4 && element_order(g, b) == 2 && element_order(g, g.mul(a, b)) == 3 &&
         subgroup_closure(g, {a, b}).order() == 24;
}

}  // namespace ringlab
