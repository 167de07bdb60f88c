#pragma once
// Ring structure: Jacobson radical, ideals, idempotents, annihilators,
// generated subrings and the unitary-subring lattice.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ringlab/groups.hpp"
#include "ringlab/parallel.hpp"
#include "ringlab/ring.hpp"
#include "ringlab/span.hpp"
#include "ringlab/views.hpp"

namespace ringlab {

/// Thrown when a computed object fails a self-check.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// x^i for the first i with x^i = x^(2i); an idempotent.
inline Id idempotent_power(const Ring& r, Id x) {
  Id slow = x, fast = r.mul(x, x);
  while (slow != fast) {
    slow = r.mul(slow, x);
    fast = r.mul(r.mul(fast, x), x);
  }
  return slow;
}

inline bool is_nilpotent(const Ring& r, Id x) { return idempotent_power(r, x) == 0; }

inline SubsetMask prime_subring(const Ring& r) { return generate_subring_span(r, {}).take_mask(); }

inline SubsetMask subring_generated(const Ring& r, const std::vector<Id>& seeds) {
  return generate_subring_span(r, seeds).take_mask();
}

inline SubsetMask ideal_generated(const Ring& r, const std::vector<Id>& seeds) {
  return generate_ideal_span(r, seeds).take_mask();
}

enum class Side { Left, Right, TwoSided };

/// Left: {x : xa = 0}; right: {x : ax = 0}; two-sided: both.
inline SubsetMask annihilator(const Ring& r, Id a, Side side) {
  SubsetMask m(r.order());
  for (std::uint64_t i = 0; i < r.order(); ++i) {
    const Id x = static_cast<Id>(i);
    const bool left = r.mul(x, a) == 0, right = r.mul(a, x) == 0;
    if ((side == Side::Left && left) || (side == Side::Right && right) || (side == Side::TwoSided && left && right))
      m.set(x);
  }
  return m;
}

/// All e with e^2 = e commuting with every element (checked on generators).
inline std::vector<Id> central_idempotents(const Ring& r) {
  const auto& gens = ring_generators(r);
  std::vector<Id> out;
  for (std::uint64_t i = 0; i < r.order(); ++i) {
    const Id e = static_cast<Id>(i);
    if (r.mul(e, e) != e) continue;
    bool central = true;
    for (Id g : gens)
      if (r.mul(e, g) != r.mul(g, e)) {
        central = false;
        break;
      }
    if (central) out.push_back(e);
  }
  return out;
}

enum class RadicalMode { Auto, Generic };

/// {x : 1 + a·x is a unit for every a}. Only nilpotent elements can qualify,
/// so the scan starts from those. The result is checked to be an ideal.
inline SubsetMask jacobson_radical_generic(const Ring& r, Parallelism par = {}) {
  const auto units = units_of(r, {true, par});
  const std::size_t n = r.order();
  std::vector<char> in(n, 0);
  parallel_for(n, par, [&](std::size_t i) {
    const Id x = static_cast<Id>(i);
    if (!is_nilpotent(r, x)) return;
    for (std::size_t a = 0; a < n; ++a)
      if (!units.contains(r.add(r.one(), r.mul(static_cast<Id>(a), x)))) return;
    in[i] = 1;
  });
  SubsetMask j(n);
  for (std::size_t i = 0; i < n; ++i)
    if (in[i]) j.set(static_cast<Id>(i));
  if (!is_ideal(r, j)) throw InvariantViolation("quasi-regular elements do not form an ideal");
  return j;
}

/// Structural shortcuts: J(M_n(F)) = 0, J(Z_n) = rad(n)Z_n, J of a direct sum
/// is the sum of the J's. Everything else takes the generic scan.
inline SubsetMask jacobson_radical(const Ring& r, RadicalMode mode = RadicalMode::Auto, Parallelism par = {}) {
  if (mode == RadicalMode::Auto) {
    if (const auto* z = r.as<ZmodImpl>()) {
      std::uint64_t rad = 1;
      for (auto p : prime_divisors(z->modulus())) rad *= p;
      SubsetMask m(r.order());
      for (std::uint64_t x = 0; x < r.order(); x += rad) m.set(static_cast<Id>(x));
      return m;
    }
    if (r.as<MatrixImpl>()) {
      SubsetMask m(r.order());
      m.set(0);
      return m;
    }
    if (const auto* ds = r.as<DirectSumImpl>()) {
      std::vector<SubsetMask> parts;
      for (const auto& p : ds->parts()) parts.push_back(jacobson_radical(p, mode, par));
      SubsetMask m(r.order());
      for (std::uint64_t x = 0; x < r.order(); ++x) {
        bool in = true;
        for (std::size_t i = 0; i < parts.size() && in; ++i) in = parts[i].test(ds->component(static_cast<Id>(x), i));
        if (in) m.set(static_cast<Id>(x));
      }
      return m;
    }
  }
  return jacobson_radical_generic(r, par);
}

/// {1 + x : x ∈ I} as a subgroup of R*, for an ideal I inside J(R). The
/// subgroup property is certified by closing the set and comparing.
inline Subgroup one_plus_ideal_group(const UnitGroup& units, const SubsetMask& ideal) {
  const Ring& r = units.ring();
  if (!is_ideal(r, ideal)) throw Error(ErrorKind::NotAnIdeal, "mask is not a two-sided ideal");
  if (!ideal.is_subset_of(jacobson_radical(r)))
    throw Error(ErrorKind::IdealNotInRadical, "ideal is not contained in the Jacobson radical");
  SubsetMask set(r.order());
  std::vector<Id> members;
  ideal.for_each([&](Id x) {
    const Id y = r.add(r.one(), x);
    set.set(y);
    members.push_back(y);
  });
  for (Id y : members)
    if (!units.contains(y)) throw InvariantViolation("1 + x is not a unit for some x in the radical");
  Subgroup h = trivial_subgroup(units);
  std::vector<Id> gens;
  for (Id y : members) extend_closure(units, h, gens, y);
  if (!(h.mask == set)) throw InvariantViolation("1 + I is not closed under multiplication");
  return h;
}

/// Inclusion-minimal nonzero two-sided ideals, in canonical order.
inline std::vector<SubsetMask> minimal_ideals(const Ring& r) {
  std::vector<SubsetMask> distinct;
  std::unordered_map<SubsetMask, std::size_t, SubsetMaskHash> seen;
  for (std::uint64_t x = 1; x < r.order(); ++x) {
    auto m = ideal_generated(r, {static_cast<Id>(x)});
    if (seen.emplace(m, distinct.size()).second) distinct.push_back(std::move(m));
  }
  std::vector<SubsetMask> out;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < distinct.size() && minimal; ++j)
      if (j != i && distinct[j].count() < distinct[i].count() && distinct[j].is_subset_of(distinct[i])) minimal = false;
    if (minimal) out.push_back(distinct[i]);
  }
  std::sort(out.begin(), out.end(), [](const SubsetMask& a, const SubsetMask& b) { return canonical_less(a, b); });
  return out;
}

/// Maximal ideals as preimages of (1 - e)·(R/J) for the primitive central
/// idempotents e of the semisimple quotient R/J.
inline std::vector<SubsetMask> maximal_ideals(const Ring& r) {
  const auto j = jacobson_radical(r);
  const auto q = quotient_ring(r, j);
  const Ring& qr = q.ring;
  const auto idem = central_idempotents(qr);
  std::vector<Id> primitive;
  for (Id e : idem) {
    if (e == 0) continue;
    bool prim = true;
    for (Id f : idem)
      if (f != 0 && f != e && qr.mul(f, e) == f) {
        prim = false;
        break;
      }
    if (prim) primitive.push_back(e);
  }
  std::vector<SubsetMask> out;
  for (Id e : primitive) {
    const Id c = qr.sub(qr.one(), e);
    SubsetMask in_q(qr.order());
    for (std::uint64_t y = 0; y < qr.order(); ++y) in_q.set(qr.mul(c, static_cast<Id>(y)));
    SubsetMask pre(r.order());
    for (std::uint64_t x = 0; x < r.order(); ++x)
      if (in_q.test(q.projection[x])) pre.set(static_cast<Id>(x));
    out.push_back(std::move(pre));
  }
  std::sort(out.begin(), out.end(), [](const SubsetMask& a, const SubsetMask& b) { return canonical_less(a, b); });
  return out;
}

/// A ring is local when it has exactly one maximal ideal.
inline bool is_local(const Ring& r) { return maximal_ideals(r).size() == 1; }

// ---------------------------------------------------------------------------
// Unitary-subring lattice.

struct LatticeBudget {
  std::uint64_t max_subrings = 1'000'000;
  std::uint64_t max_millis = 300'000;
};

struct LatticeOptions {
  LatticeBudget budget{};
  /// Stop at the first proper subring whose unit group is not solvable.
  bool early_exit = false;
  Parallelism parallelism{};
  /// Precomputed R*, reused when given.
  const UnitGroup* units = nullptr;
};

struct SubringRecord {
  SubsetMask mask;
  std::vector<Id> generators;
  std::uint64_t order = 0;
  std::uint64_t units = 0;
  bool solvable = true;
};

enum class LatticeStop { Complete, EarlyExit, SubringBudget, TimeBudget };

inline const char* to_string(LatticeStop s) {
  switch (s) {
    case LatticeStop::Complete: return "complete";
    case LatticeStop::EarlyExit: return "early_exit";
    case LatticeStop::SubringBudget: return "subring_budget";
    case LatticeStop::TimeBudget: return "time_budget";
  }
  return "unknown";
}

struct LatticeReport {
  bool exhaustive = false;
  /// Distinct unitary subrings found, the ring itself included.
  std::uint64_t subring_count = 0;
  /// Maximal proper subrings in canonical order; filled when exhaustive.
  std::vector<SubringRecord> maximal;
  /// A proper subring with non-solvable units, if one was met.
  std::optional<SubringRecord> witness;
  /// Every subring found, in discovery order.
  std::vector<SubsetMask> subrings;
  LatticeBudget budget{};
  LatticeStop stop = LatticeStop::Complete;
  std::uint64_t closures = 0;
  std::uint64_t levels = 0;
  double elapsed_ms = 0;

  /// Exhaustive and every proper unitary subring has solvable units.
  bool all_proper_solvable() const {
    if (!exhaustive || witness) return false;
    for (const auto& m : maximal)
      if (!m.solvable) return false;
    return true;
  }
};

/// Units of the subring `mask` are R* ∩ mask; returns (count, solvable).
inline std::pair<std::uint64_t, bool> subring_unit_solvability(const UnitGroup& units, const SubsetMask& mask) {
  const SubsetMask s = mask & units.mask();
  const auto h = subgroup_from_mask(units, s);
  return {h.order(), is_solvable(units, h)};
}

/// Breadth-first enumeration from the prime subring: each subring S ≠ R is
/// extended by one representative x of every additive coset of S outside S.
/// Each level is expanded in parallel and merged in frontier order, so the
/// set of subrings and their discovery order do not depend on the schedule.
/// S is maximal exactly when every extension is R.
inline LatticeReport subring_lattice(const Ring& r, const LatticeOptions& opts = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };

  std::optional<UnitGroup> owned_units;
  auto unit_group = [&]() -> const UnitGroup& {
    if (opts.units) return *opts.units;
    if (!owned_units) owned_units.emplace(units_of(r, {true, opts.parallelism}));
    return *owned_units;
  };

  LatticeReport rep;
  rep.budget = opts.budget;
  const std::uint64_t n = r.order();

  struct Node {
    SubsetMask mask;
    std::vector<Id> gens;
    bool maximal = true;
  };
  std::vector<Node> nodes;
  std::unordered_map<SubsetMask, std::size_t, SubsetMaskHash> index;

  auto admit = [&](SubsetMask mask, std::vector<Id> gens) -> std::optional<std::size_t> {
    auto [it, fresh] = index.emplace(mask, nodes.size());
    if (!fresh) return std::nullopt;
    nodes.push_back(Node{std::move(mask), std::move(gens), true});
    return it->second;
  };

  // Groups of order below 60 are solvable.
  auto non_solvable_units = [&](const SubsetMask& m) -> std::optional<SubringRecord> {
    const auto& ug = unit_group();
    const SubsetMask s = m & ug.mask();
    if (s.count() < 60) return std::nullopt;
    const auto [count, solv] = subring_unit_solvability(ug, m);
    if (solv) return std::nullopt;
    return SubringRecord{m, {}, m.count(), count, false};
  };

  std::vector<std::size_t> frontier;
  if (auto root = admit(prime_subring(r), {})) frontier.push_back(*root);
  rep.stop = LatticeStop::Complete;
  if (opts.early_exit && nodes[0].mask.count() < n) {
    if (auto w = non_solvable_units(nodes[0].mask)) {
      rep.witness = w;
      rep.stop = LatticeStop::EarlyExit;
      frontier.clear();
    }
  }

  while (!frontier.empty() && rep.stop == LatticeStop::Complete) {
    ++rep.levels;
    std::vector<std::size_t> work;
    for (auto i : frontier)
      if (nodes[i].mask.count() < n) work.push_back(i);
    std::vector<std::vector<std::pair<SubsetMask, Id>>> children(work.size());
    std::vector<char> timed_out(work.size(), 0);
    parallel_for(work.size(), opts.parallelism, [&](std::size_t w) {
      const Node& s = nodes[work[w]];
      const auto members = s.mask.elements();
      SubsetMask covered = s.mask;
      std::vector<Id> seeds = s.gens;
      seeds.push_back(0);
      for (std::uint64_t x = 0; x < n; ++x) {
        const Id id = static_cast<Id>(x);
        if (covered.test(id)) continue;
        for (Id m : members) covered.set(r.add(id, m));
        seeds.back() = id;
        children[w].emplace_back(subring_generated(r, seeds), id);
        if (elapsed() > static_cast<double>(opts.budget.max_millis)) {
          timed_out[w] = 1;
          return;
        }
      }
    });
    std::vector<std::size_t> next;
    for (std::size_t w = 0; w < work.size() && rep.stop == LatticeStop::Complete; ++w) {
      if (timed_out[w]) {
        rep.stop = LatticeStop::TimeBudget;
        break;
      }
      for (auto& [mask, x] : children[w]) {
        ++rep.closures;
        if (mask.count() < n) nodes[work[w]].maximal = false;
        if (index.count(mask)) continue;
        auto gens = nodes[work[w]].gens;
        gens.push_back(x);
        const bool proper = mask.count() < n;
        SubsetMask copy = mask;
        auto idx = admit(std::move(mask), std::move(gens));
        next.push_back(*idx);
        if (opts.early_exit && proper) {
          if (auto wit = non_solvable_units(copy)) {
            wit->generators = nodes[*idx].gens;
            rep.witness = std::move(wit);
            rep.stop = LatticeStop::EarlyExit;
            break;
          }
        }
        if (nodes.size() >= opts.budget.max_subrings) {
          rep.stop = LatticeStop::SubringBudget;
          break;
        }
      }
    }
    if (rep.stop == LatticeStop::Complete && elapsed() > static_cast<double>(opts.budget.max_millis))
      rep.stop = LatticeStop::TimeBudget;
    frontier = std::move(next);
  }

  rep.exhaustive = rep.stop == LatticeStop::Complete;
  rep.subring_count = nodes.size();
  for (const auto& node : nodes) rep.subrings.push_back(node.mask);
  if (rep.exhaustive) {
    const auto& ug = unit_group();
    for (const auto& node : nodes) {
      if (!node.maximal || node.mask.count() == n) continue;
      const auto [count, solv] = subring_unit_solvability(ug, node.mask);
      rep.maximal.push_back(SubringRecord{node.mask, node.gens, node.mask.count(), count, solv});
    }
    std::sort(rep.maximal.begin(), rep.maximal.end(),
              [](const SubringRecord& a, const SubringRecord& b) { return canonical_less(a.mask, b.mask); });
    if (!rep.witness)
      for (const auto& m : rep.maximal)
        if (!m.solvable) {
          rep.witness = m;
          break;
        }
  }
  rep.elapsed_ms = elapsed();
  return rep;
}

}  // namespace ringlab
