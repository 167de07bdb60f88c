#pragma once
// Minimal-simple classification: Γ/Δ membership on normalized expressions,
// the structural fast path with named witness subrings, and the subring
// oracle that decides the question directly on a ring.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ringlab/analysis.hpp"
#include "ringlab/expr.hpp"
#include "ringlab/groups.hpp"

namespace ringlab {

enum class GammaFamily { None, Gamma1, Gamma2, Gamma3 };

inline const char* to_string(GammaFamily g) {
  switch (g) {
    case GammaFamily::None: return "None";
    case GammaFamily::Gamma1: return "Γ1";
    case GammaFamily::Gamma2: return "Γ2";
    case GammaFamily::Gamma3: return "Γ3";
  }
  return "None";
}

struct GammaTag {
  GammaFamily family = GammaFamily::None;
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  unsigned m = 0;

  bool member() const noexcept { return family != GammaFamily::None; }
};

/// Γ1: M(2,GF(p)), p > 3 prime. Γ2: M(2,GF(p^m)), p ∈ {2,3}, m prime.
/// Γ3: M(3,GF(2)), M(3,GF(3)).
inline GammaTag gamma_membership(const RingExpr& e) {
  GammaTag tag;
  if (e.kind != RingExpr::Kind::Mat) return tag;
  tag.n = e.n;
  tag.p = e.base().p;
  tag.m = e.base().m;
  if (e.n == 2 && tag.m == 1 && tag.p > 3) tag.family = GammaFamily::Gamma1;
  else if (e.n == 2 && (tag.p == 2 || tag.p == 3) && is_prime(tag.m)) tag.family = GammaFamily::Gamma2;
  else if (e.n == 3 && tag.m == 1 && (tag.p == 2 || tag.p == 3)) tag.family = GammaFamily::Gamma3;
  return tag;
}

struct DeltaResult {
  bool in_delta = false;
  RingExpr normalized;
  GammaTag gamma;
  std::optional<std::uint64_t> cyclic;
  /// The cyclic modulus shares a prime with the characteristic of the Γ part.
  bool review = false;
  std::string reason;
};

/// After normalizing: a single Γ member, or a Γ member ⊕ Z(n) with n ≥ 2.
inline DeltaResult delta_membership(const RingExpr& expr) {
  DeltaResult d;
  d.normalized = normalize(expr);
  const auto fs = factors_of(d.normalized);
  if (fs.size() > 2) {
    d.reason = "more than two factors after normalization";
    return d;
  }
  d.gamma = gamma_membership(fs.front());
  if (!d.gamma.member()) {
    d.reason = pretty(fs.front()) + " is not in Γ";
    return d;
  }
  if (fs.size() == 2) {
    if (fs[1].kind != RingExpr::Kind::Zmod) {
      d.reason = "second factor " + pretty(fs[1]) + " is not cyclic";
      return d;
    }
    d.cyclic = fs[1].n;
    d.review = ringlab::gcd(fs[1].n, d.gamma.p) > 1;
  }
  d.in_delta = true;
  return d;
}

enum class VerdictKind { UnitsSolvable, MinimalSimple, NotMinimal, Inconclusive };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::UnitsSolvable: return "UnitsSolvable";
    case VerdictKind::MinimalSimple: return "MinimalSimple";
    case VerdictKind::NotMinimal: return "NotMinimal";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

enum class CertificateType { Structure, DerivedSeries, TheoremPath, ExhaustiveLattice, Witness, Reason };

inline const char* to_string(CertificateType c) {
  switch (c) {
    case CertificateType::Structure: return "Structure";
    case CertificateType::DerivedSeries: return "DerivedSeries";
    case CertificateType::TheoremPath: return "TheoremPath";
    case CertificateType::ExhaustiveLattice: return "ExhaustiveLattice";
    case CertificateType::Witness: return "Witness";
    case CertificateType::Reason: return "Reason";
  }
  return "Reason";
}

/// What the fast-path witness keeps of each normalized factor.
enum class FactorAction { Keep, Subfield, Theta, PrimeOnly };

inline const char* to_string(FactorAction a) {
  switch (a) {
    case FactorAction::Keep: return "keep";
    case FactorAction::Subfield: return "subfield";
    case FactorAction::Theta: return "theta";
    case FactorAction::PrimeOnly: return "prime_subring";
  }
  return "keep";
}

struct FactorPlan {
  FactorAction action = FactorAction::Keep;
  unsigned subfield_degree = 0;
};

struct Witness {
  /// "subfield", "theta", "prime_subring", "diagonal", "lattice", "unit_pair".
  std::string kind;
  std::string description;
  std::uint64_t order = 0;
  std::optional<std::uint64_t> units;
  std::optional<bool> units_solvable;
  std::optional<SubsetMask> mask;
  std::vector<Id> generators;
  /// One entry per normalized factor (fast path only).
  std::vector<FactorPlan> plan;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  CertificateType certificate = CertificateType::Reason;
  std::optional<GammaTag> gamma;
  std::string decomposition;
  bool review = false;
  std::optional<DerivedSeriesReport> series;
  std::optional<LatticeReport> lattice;
  std::optional<Witness> witness;
  std::string reason;
  double elapsed_ms = 0;
};

namespace detail {

inline bool factor_units_solvable(const RingExpr& f) {
  if (f.kind != RingExpr::Kind::Mat) return true;
  const std::uint64_t q = f.base().field_order();
  return f.n == 1 || (f.n == 2 && (q == 2 || q == 3));
}

inline std::uint64_t factor_order(const RingExpr& f) {
  return expr_order(f).value_or(std::numeric_limits<std::uint64_t>::max());
}

/// Description and order of the planned witness.
inline void describe_plan(const std::vector<RingExpr>& fs, Witness& w) {
  std::vector<std::string> parts;
  std::uint64_t order = 1, prime_lcm = 1;
  bool any_prime = false;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& f = fs[i];
    const auto& plan = w.plan[i];
    switch (plan.action) {
      case FactorAction::Keep:
        parts.push_back(pretty(f));
        order *= factor_order(f);
        break;
      case FactorAction::Subfield: {
        auto sub = RingExpr::mat(f.n, RingExpr::gf(f.base().p, plan.subfield_degree));
        parts.push_back(pretty(sub));
        order *= factor_order(sub);
        break;
      }
      case FactorAction::Theta: {
        parts.push_back("Theta(" + std::to_string(f.n) + "," + pretty(f.base()) + ")");
        order *= ipow(f.base().field_order(), f.n * (f.n - 1) + 1);
        break;
      }
      case FactorAction::PrimeOnly:
        any_prime = true;
        prime_lcm = lcm(prime_lcm, expr_characteristic(f));
        break;
    }
  }
  if (any_prime) {
    parts.push_back("Z(" + std::to_string(prime_lcm) + ")");
    order *= prime_lcm;
  }
  w.order = order;
  w.description.clear();
  for (std::size_t i = 0; i < parts.size(); ++i) w.description += (i ? " (+) " : "") + parts[i];
}

}  // namespace detail

/// Theorem-path classification on the expression tree. NotMinimal verdicts
/// carry a generator recipe (see materialize_witness) for a proper unitary
/// subring of eval(normalize(expr)) whose units are not solvable.
inline Verdict classify_fast(const RingExpr& expr) {
  Verdict v;
  const auto delta = delta_membership(expr);
  const auto fs = factors_of(delta.normalized);
  v.decomposition = pretty(delta.normalized);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (!detail::factor_units_solvable(fs[i])) bad.push_back(i);
  if (bad.empty()) {
    v.kind = VerdictKind::UnitsSolvable;
    v.certificate = CertificateType::Structure;
    v.reason = "every factor has solvable units";
    return v;
  }
  if (delta.in_delta) {
    v.kind = VerdictKind::MinimalSimple;
    v.certificate = CertificateType::TheoremPath;
    v.gamma = delta.gamma;
    v.review = delta.review;
    return v;
  }
  Witness w;
  w.plan.assign(fs.size(), FactorPlan{});
  // A non-solvable factor outside Γ shrinks inside itself.
  std::optional<std::size_t> outside;
  for (auto i : bad)
    if (!gamma_membership(fs[i]).member()) {
      outside = i;
      break;
    }
  if (outside) {
    const auto& f = fs[*outside];
    const auto p = f.base().p;
    const unsigned m = f.base().m;
    if (f.n == 2) {
      unsigned s = 1;
      if (p == 2 || p == 3)
        for (unsigned d = 2; d < m; ++d)
          if (m % d == 0) {
            s = d;
            break;
          }
      w.plan[*outside] = FactorPlan{FactorAction::Subfield, s};
      w.kind = "subfield";
    } else {
      w.plan[*outside] = FactorPlan{FactorAction::Theta, 0};
      w.kind = "theta";
    }
  } else {
    // Every non-solvable factor is in Γ: keep the first and shrink the rest
    // to their prime subrings. Without a second non-solvable factor, shrink
    // the first non-cyclic solvable factor, or else two cyclic factors
    // (which then share a prime) into their diagonal.
    const std::size_t keep = bad.front();
    bool shrunk = false;
    for (auto i : bad)
      if (i != keep) {
        w.plan[i].action = FactorAction::PrimeOnly;
        shrunk = true;
      }
    if (shrunk) {
      w.kind = "prime_subring";
    } else {
      for (std::size_t i = 0; i < fs.size() && !shrunk; ++i)
        if (i != keep && fs[i].kind != RingExpr::Kind::Zmod) {
          w.plan[i].action = FactorAction::PrimeOnly;
          shrunk = true;
        }
      if (shrunk) {
        w.kind = "prime_subring";
      } else {
        std::size_t marked = 0;
        for (std::size_t i = 0; i < fs.size() && marked < 2; ++i)
          if (i != keep) {
            w.plan[i].action = FactorAction::PrimeOnly;
            ++marked;
          }
        w.kind = "diagonal";
      }
    }
  }
  detail::describe_plan(fs, w);
  v.kind = VerdictKind::NotMinimal;
  v.certificate = CertificateType::Witness;
  v.witness = std::move(w);
  return v;
}

inline Verdict classify_fast(std::string_view text) { return classify_fast(parse(text)); }

namespace detail {

/// Generators, inside one factor ring, of what the plan keeps of it.
inline std::vector<Id> factor_generators(const Ring& part, const FactorPlan& plan) {
  std::vector<Id> gens;
  switch (plan.action) {
    case FactorAction::PrimeOnly: return gens;
    case FactorAction::Keep: {
      gens.push_back(part.one());
      for (Id g : ring_generators(part)) gens.push_back(g);
      return gens;
    }
    case FactorAction::Subfield:
    case FactorAction::Theta: break;
  }
  const auto* mi = part.as<MatrixImpl>();
  if (!mi) throw Error(ErrorKind::InvalidArgument, "subfield and theta witnesses need a matrix factor");
  const unsigned n = mi->dimension();
  const auto& field = mi->field();
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      if (plan.action == FactorAction::Theta && a == n - 1 && b != n - 1) continue;
      gens.push_back(mi->unit_matrix(a, b));
    }
  if (plan.action == FactorAction::Theta) {
    gens.push_back(mi->scalar(field.primitive_root()));
  } else {
    for (const auto& sf : subfields(field))
      if (sf.degree == plan.subfield_degree) gens.push_back(mi->scalar(sf.embedding[sf.field.primitive_root()]));
  }
  return gens;
}

}  // namespace detail

/// Generators of the fast-path witness inside `ring` = eval(normalized).
inline std::vector<Id> witness_generators(const RingExpr& normalized, const Ring& ring, const Witness& w) {
  const auto fs = factors_of(normalized);
  if (w.plan.size() != fs.size()) throw Error(ErrorKind::InvalidArgument, "witness plan does not match the expression");
  if (fs.size() == 1) return detail::factor_generators(ring, w.plan[0]);
  const auto* ds = ring.as<DirectSumImpl>();
  if (!ds || ds->parts().size() != fs.size()) throw Error(ErrorKind::InvalidArgument, "ring is not the evaluated expression");
  std::vector<Id> gens;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (Id g : detail::factor_generators(ds->parts()[i], w.plan[i])) gens.push_back(ds->inject(i, g));
  return gens;
}

/// Builds the witness inside eval(normalized), checks it is a proper unitary
/// subring of the announced order, and decides the solvability of its units.
/// Fills mask, generators, units and units_solvable.
inline void materialize_witness(const RingExpr& normalized, const Ring& ring, Witness& w, Parallelism par = {}) {
  w.generators = witness_generators(normalized, ring, w);
  auto mask = subring_generated(ring, w.generators);
  if (mask.count() != w.order)
    throw InvariantViolation("witness " + w.description + " has " + std::to_string(mask.count()) +
                             " elements, expected " + std::to_string(w.order));
  if (mask.count() >= ring.order()) throw InvariantViolation("witness " + w.description + " is not proper");
  const Ring view = subring_view(ring, mask);
  const auto units = units_of(view, {true, par});
  w.units = units.order();
  w.units_solvable = is_solvable(units);
  w.mask = std::move(mask);
}

// ---------------------------------------------------------------------------
// Oracle.

enum class OracleStrategy { Exhaustive, UnitPairs };

inline const char* to_string(OracleStrategy s) { return s == OracleStrategy::Exhaustive ? "exhaustive" : "unit_pairs"; }

struct OracleOptions {
  OracleStrategy strategy = OracleStrategy::Exhaustive;
  /// For unit_pairs, max_subrings bounds the number of pair closures.
  LatticeBudget budget{};
  Parallelism parallelism{};
};

/// Decides minimal simplicity on the ring itself. Exhaustive: subring
/// lattice with early exit. unit_pairs: subrings generated by pairs of units
/// in ascending id order; finding no witness is inconclusive.
inline Verdict minimal_simple_oracle(const Ring& r, const OracleOptions& opts = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };
  Verdict v;
  const auto units = units_of(r, {true, opts.parallelism});
  v.series = derived_series(units);
  if (v.series->solvable()) {
    v.kind = VerdictKind::UnitsSolvable;
    v.certificate = CertificateType::DerivedSeries;
    v.elapsed_ms = elapsed();
    return v;
  }
  if (opts.strategy == OracleStrategy::Exhaustive) {
    LatticeOptions lo;
    lo.budget = opts.budget;
    lo.early_exit = true;
    lo.parallelism = opts.parallelism;
    lo.units = &units;
    auto rep = subring_lattice(r, lo);
    if (rep.witness) {
      Witness w;
      w.kind = "lattice";
      w.order = rep.witness->order;
      w.units = rep.witness->units;
      w.units_solvable = false;
      w.mask = rep.witness->mask;
      w.generators = rep.witness->generators;
      w.description = "proper subring of order " + std::to_string(w.order);
      v.kind = VerdictKind::NotMinimal;
      v.certificate = CertificateType::Witness;
      v.witness = std::move(w);
    } else if (rep.exhaustive) {
      v.kind = VerdictKind::MinimalSimple;
      v.certificate = CertificateType::ExhaustiveLattice;
    } else {
      v.kind = VerdictKind::Inconclusive;
      v.certificate = CertificateType::Reason;
      v.reason = std::string("lattice budget exhausted (") + to_string(rep.stop) + ")";
    }
    v.lattice = std::move(rep);
    v.elapsed_ms = elapsed();
    return v;
  }

  const auto& us = units.elements();
  std::unordered_set<SubsetMask, SubsetMaskHash> seen;
  std::uint64_t closures = 0;
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = i + 1; j < us.size(); ++j) {
      if (closures >= opts.budget.max_subrings || elapsed() > static_cast<double>(opts.budget.max_millis)) {
        v.kind = VerdictKind::Inconclusive;
        v.certificate = CertificateType::Reason;
        v.reason = "unit-pair budget exhausted after " + std::to_string(closures) + " closures";
        v.elapsed_ms = elapsed();
        return v;
      }
      ++closures;
      auto mask = subring_generated(r, {us[i], us[j]});
      if (mask.count() == r.order() || !seen.insert(mask).second) continue;
      const auto [count, solv] = subring_unit_solvability(units, mask);
      if (solv) continue;
      Witness w;
      w.kind = "unit_pair";
      w.order = mask.count();
      w.units = count;
      w.units_solvable = false;
      w.generators = {us[i], us[j]};
      w.description = "subring generated by units " + std::to_string(us[i]) + ", " + std::to_string(us[j]);
      w.mask = std::move(mask);
      v.kind = VerdictKind::NotMinimal;
      v.certificate = CertificateType::Witness;
      v.witness = std::move(w);
      v.elapsed_ms = elapsed();
      return v;
    }
  v.kind = VerdictKind::Inconclusive;
  v.certificate = CertificateType::Reason;
  v.reason = "all unit pairs examined without a witness";
  v.elapsed_ms = elapsed();
  return v;
}

// ---------------------------------------------------------------------------
// Expression catalog.

/// Atoms Z(n) for 2 ≤ n ≤ 64, M(2,GF(q)) and UT(2,GF(q)) for q ≤ 5, plus Z(1);
/// then direct sums of two or three atoms (non-decreasing atom index) of
/// total order at most max_order.
inline std::vector<RingExpr> expression_catalog(std::uint64_t max_order = 1024) {
  std::vector<RingExpr> atoms;
  for (std::uint64_t n = 2; n <= 64; ++n) atoms.push_back(RingExpr::zmod(n));
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const auto pp = *prime_power(q);
    atoms.push_back(RingExpr::mat(2, RingExpr::gf(pp.first, pp.second)));
    atoms.push_back(RingExpr::ut(2, RingExpr::gf(pp.first, pp.second)));
  }
  std::vector<std::uint64_t> orders;
  for (const auto& a : atoms) orders.push_back(*expr_order(a));
  std::vector<RingExpr> out;
  out.push_back(RingExpr::zmod(1));
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (orders[i] <= max_order) out.push_back(atoms[i]);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i; j < atoms.size(); ++j) {
      const auto o2 = orders[i] * orders[j];
      if (o2 > max_order) continue;
      out.push_back(RingExpr::sum({atoms[i], atoms[j]}));
      for (std::size_t k = j; k < atoms.size(); ++k)
        if (o2 * orders[k] <= max_order) out.push_back(RingExpr::sum({atoms[i], atoms[j], atoms[k]}));
    }
  return out;
}

/// Catalog of expressions of order p^k, 1 ≤ k ≤ max_exponent, built from
/// Z(p^a), GF(p^a), UT(2,GF(p)) and M(2,GF(p)) with up to three summands.
inline std::vector<RingExpr> prime_power_catalog(std::uint64_t p, unsigned max_exponent) {
  struct Atom {
    RingExpr e;
    unsigned exponent;
  };
  std::vector<Atom> atoms;
  for (unsigned a = 1; a <= max_exponent; ++a) atoms.push_back({RingExpr::zmod(ipow(p, a)), a});
  for (unsigned a = 2; a <= max_exponent; ++a) atoms.push_back({RingExpr::gf(p, a), a});
  if (max_exponent >= 3) atoms.push_back({RingExpr::ut(2, RingExpr::gf(p, 1)), 3});
  if (max_exponent >= 4) atoms.push_back({RingExpr::mat(2, RingExpr::gf(p, 1)), 4});
  std::vector<RingExpr> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    out.push_back(atoms[i].e);
    for (std::size_t j = i; j < atoms.size(); ++j) {
      const unsigned e2 = atoms[i].exponent + atoms[j].exponent;
      if (e2 > max_exponent) continue;
      out.push_back(RingExpr::sum({atoms[i].e, atoms[j].e}));
      for (std::size_t k = j; k < atoms.size(); ++k)
        if (e2 + atoms[k].exponent <= max_exponent) out.push_back(RingExpr::sum({atoms[i].e, atoms[j].e, atoms[k].e}));
    }
  }
  return out;
}

}  // namespace ringlab
