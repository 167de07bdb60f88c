#pragma once
// Checks of specific structural facts about matrix rings over finite fields:
// Singer cycles and their normalizers, subrings generated by normalizer
// elements, a cube-rotation S4 in GL_3(3), the block subring Θ, small
// prime-power-order rings, and dihedral normalizers in PSL(2,q).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ringlab/analysis.hpp"
#include "ringlab/classify.hpp"
#include "ringlab/expr.hpp"
#include "ringlab/groups.hpp"

namespace ringlab {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifierReport {
  std::string verifier;
  std::string subject;
  std::vector<Check> checks;
  /// Named integer results (orders, counts) in insertion order.
  std::vector<std::pair<std::string, std::int64_t>> values;
  /// Free-form per-item findings (probe candidates, catalog rows).
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void check(std::string name, bool ok, std::string detail = {}) {
    checks.push_back(Check{std::move(name), ok, std::move(detail)});
  }
  void value(std::string name, std::int64_t v) { values.emplace_back(std::move(name), v); }
};

// ---------------------------------------------------------------------------
// Singer cycles.

/// Companion matrix of x^n + c_{n-1}x^{n-1} + ... + c_0.
inline Id companion_matrix(const MatrixImpl& mi, const std::vector<Id>& c) {
  const unsigned n = mi.dimension();
  std::vector<Id> e(n * n, 0);
  for (unsigned i = 0; i + 1 < n; ++i) e[(i + 1) * n + i] = 1;
  for (unsigned i = 0; i < n; ++i) e[i * n + (n - 1)] = mi.field().neg(c[i]);
  return mi.from_entries(e);
}

/// Companion matrix of the first monic degree-n polynomial (low coefficients
/// read as a base-q number) whose companion matrix has order q^n - 1.
inline Id singer_element(const Ring& matrices) {
  const auto* mi = matrices.as<MatrixImpl>();
  if (!mi) throw Error(ErrorKind::InvalidArgument, "Singer elements live in matrix rings");
  const unsigned n = mi->dimension();
  const std::uint64_t q = mi->field().order();
  const std::uint64_t target = ipow(q, n) - 1;
  const auto primes = prime_divisors(target);
  const std::uint64_t count = ipow(q, n);
  for (std::uint64_t low = 0; low < count; ++low) {
    std::vector<Id> c(n);
    std::uint64_t t = low;
    for (unsigned i = 0; i < n; ++i) {
      c[i] = static_cast<Id>(t % q);
      t /= q;
    }
    if (c[0] == 0) continue;
    const Id y = companion_matrix(*mi, c);
    if (matrices.pow(y, target) != matrices.one()) continue;
    bool primitive = true;
    for (auto p : primes)
      if (matrices.pow(y, target / p) == matrices.one()) {
        primitive = false;
        break;
      }
    if (primitive) return y;
  }
  throw InvariantViolation("no Singer element found");
}

struct Lemma32Options {
  unsigned samples = 25;
  std::uint64_t seed = 1;
  Parallelism parallelism{};
};

namespace detail {

inline void lemma32_part1(VerifierReport& rep, const Ring& r, const UnitGroup& g, Id y, std::uint64_t n,
                          std::uint64_t q, Parallelism par) {
  const std::uint64_t qn = ipow(q, n);
  const auto order = element_order(g, y);
  rep.value("singer_order", static_cast<std::int64_t>(order));
  rep.check("singer element has order q^n - 1", order == qn - 1, std::to_string(order));
  const auto cyc = subgroup_closure(g, {y});
  SubsetMask field_mask = cyc.mask;
  field_mask.set(0);
  rep.check("<y> with 0 has q^n elements", field_mask.count() == qn, std::to_string(field_mask.count()));
  rep.check("<y> with 0 is a unitary subring (a field copy)", is_unitary_subring(r, field_mask));
  const auto norm = normalizer(g, cyc, par);
  rep.value("normalizer_order", static_cast<std::int64_t>(norm.order()));
  rep.check("|N(<y>)| = n(q^n - 1)", norm.order() == n * (qn - 1), std::to_string(norm.order()));
  const Id yq = r.pow(y, q);
  std::optional<Id> w;
  for (Id u : norm.sorted())
    if (r.mul(r.mul(g.inverse(u), y), u) == yq) {
      w = u;
      break;
    }
  rep.check("some w in N conjugates y to y^q", w.has_value());
  if (!w) return;
  rep.value("frobenius_generator", *w);
  bool frob = true;
  for (Id z : cyc.elements)
    if (r.mul(r.mul(g.inverse(*w), z), *w) != r.pow(z, q)) {
      frob = false;
      break;
    }
  rep.check("conjugation by w is z -> z^q on <y>", frob);
  rep.check("N = <y, w>", subgroup_closure(g, {y, *w}).mask == norm.mask);
}

inline void lemma32_part2(VerifierReport& rep, const Ring& r, const UnitGroup& g, Id y, std::uint64_t n,
                          Parallelism par) {
  const auto cyc = subgroup_closure(g, {y});
  const auto norm = normalizer(g, cyc, par);
  const auto cent = centralizer(g, {y}, par);
  const Id yn = r.pow(y, n);
  rep.check("R* is not solvable", !is_solvable(g));
  std::uint64_t tested = 0, whole = 0, same_units = 0;
  for (Id w : norm.sorted()) {
    if (cent.contains(w)) continue;
    ++tested;
    const auto a = subring_generated(r, {y, w});
    const auto b = subring_generated(r, {yn, w});
    if (a.count() == r.order()) ++whole;
    if ((a & g.mask()) == (b & g.mask())) ++same_units;
  }
  rep.value("w_tested", static_cast<std::int64_t>(tested));
  rep.value("ring_order", static_cast<std::int64_t>(r.order()));
  rep.check("N \\ C(y) is nonempty", tested > 0);
  rep.check("R0[y,w] = R for every w in N \\ C(y)", whole == tested,
            std::to_string(whole) + " of " + std::to_string(tested));
  rep.check("R0[y^n,w] and R0[y,w] have the same units for every w", same_units == tested,
            std::to_string(same_units) + " of " + std::to_string(tested));
}

inline void lemma32_part3(VerifierReport& rep, const Ring& r, const UnitGroup& g, const Lemma32Options& opts) {
  const auto* mi = r.as<MatrixImpl>();
  const Id minus = mi->field().neg(1);
  // Determinant-1 signed permutation matrices.
  SubsetMask signed_perms(r.order());
  const unsigned perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms)
    for (unsigned signs = 0; signs < 8; ++signs) {
      std::vector<Id> e(9, 0);
      for (unsigned i = 0; i < 3; ++i) e[i * 3 + p[i]] = (signs >> i) & 1u ? minus : 1;
      const Id m = mi->from_entries(e);
      if (mi->determinant(m) == 1) signed_perms.set(m);
    }
  rep.value("rotation_matrices", static_cast<std::int64_t>(signed_perms.count()));
  const Id a = mi->from_entries({0, minus, 0, 1, 0, 0, 0, 0, 1});
  std::optional<Id> b;
  for (Id x : signed_perms.elements())
    if (element_order(g, x) == 2 && element_order(g, r.mul(a, x)) == 3) {
      b = x;
      break;
    }
  rep.check("an involution b with o(ab) = 3 exists", b.has_value());
  if (!b) return;
  rep.value("s4_a", a);
  rep.value("s4_b", *b);
  rep.check("recognize_s4(a, b)", recognize_s4(g, a, *b));
  rep.check("<a, b> is the rotation group", subgroup_closure(g, {a, *b}).mask == signed_perms);
  const auto gen = subring_generated(r, {a, *b});
  rep.value("generated_order", static_cast<std::int64_t>(gen.count()));
  rep.check("subring generated by S4 is R", gen.count() == r.order(), std::to_string(gen.count()));
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  unsigned ok = 0;
  for (unsigned i = 0; i < opts.samples; ++i) {
    const Id u = g.elements()[pick(rng)];
    const Id ui = g.inverse(u);
    const Id ca = r.mul(r.mul(ui, a), u), cb = r.mul(r.mul(ui, *b), u);
    if (recognize_s4(g, ca, cb) && subring_generated(r, {ca, cb}).count() == r.order()) ++ok;
  }
  rep.value("conjugates_tested", opts.samples);
  rep.check("every sampled conjugate S4 generates R", ok == opts.samples,
            std::to_string(ok) + " of " + std::to_string(opts.samples));
}

}  // namespace detail

/// Part 1: Singer normalizer and its Frobenius action. Part 2: subrings
/// generated by y and normalizer elements outside the centralizer. Part 3:
/// the cube-rotation S4 in GL_3(3) and seeded conjugates of it.
inline VerifierReport verify_lemma32(unsigned n, std::uint64_t q, int part, const Lemma32Options& opts = {}) {
  VerifierReport rep;
  rep.verifier = "lemma32";
  const auto pp = prime_power(q);
  if (!pp) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power");
  const auto expr = RingExpr::mat(n, RingExpr::gf(pp->first, pp->second));
  rep.subject = pretty(expr) + " part " + std::to_string(part);
  if (!gamma_membership(expr).member()) throw Error(ErrorKind::NotInGamma, pretty(expr) + " is not in Γ");
  if (part < 1 || part > 3) throw Error(ErrorKind::InvalidArgument, "part must be 1, 2 or 3");
  if (part == 3 && !(n == 3 && q == 3)) throw Error(ErrorKind::InvalidArgument, "part 3 is stated for M(3,GF(3))");
  const Ring r = eval(expr);
  const auto g = units_of(r, {true, opts.parallelism});
  rep.value("units", static_cast<std::int64_t>(g.order()));
  if (part == 3) {
    detail::lemma32_part3(rep, r, g, opts);
    return rep;
  }
  const Id y = singer_element(r);
  rep.value("singer", y);
  if (part == 1) detail::lemma32_part1(rep, r, g, y, n, q, opts.parallelism);
  else detail::lemma32_part2(rep, r, g, y, n, opts.parallelism);
  return rep;
}

// ---------------------------------------------------------------------------
// Θ = {[[A, B], [0, d]]} in M_n(F).

inline SubsetMask theta_subring(const Ring& matrices) {
  const auto* mi = matrices.as<MatrixImpl>();
  if (!mi) throw Error(ErrorKind::InvalidArgument, "Θ lives in a matrix ring");
  const unsigned n = mi->dimension();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "Θ needs n >= 2");
  const Id q = mi->field().order();
  std::vector<unsigned> cells;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (i + 1 < n || j + 1 == n) cells.push_back(i * n + j);
  SubsetMask mask(matrices.order());
  std::vector<Id> digits(cells.size(), 0);
  while (true) {
    std::vector<Id> e(n * n, 0);
    for (std::size_t c = 0; c < cells.size(); ++c) e[cells[c]] = digits[c];
    mask.set(mi->from_entries(e));
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return mask;
}

/// Θ is a unitary subring; its units contain the copy {[[A,0],[0,1]]} of
/// GL_{n-1}; reports whether Θ* is solvable.
inline VerifierReport verify_theta(unsigned n, const GaloisField& field, Parallelism par = {}) {
  VerifierReport rep;
  rep.verifier = "theta";
  const Ring r = make_matrix_ring(n, field);
  rep.subject = "Theta in " + r.describe();
  const auto mask = theta_subring(r);
  const std::uint64_t q = field.order();
  rep.value("order", static_cast<std::int64_t>(mask.count()));
  rep.check("|Θ| = q^(n(n-1)+1)", mask.count() == ipow(q, n * (n - 1) + 1));
  rep.check("Θ is a unitary subring", is_unitary_subring(r, mask));
  const Ring view = subring_view(r, mask);
  const auto units = units_of(view, {true, par});
  rep.value("units", static_cast<std::int64_t>(units.order()));
  const auto* mi = r.as<MatrixImpl>();
  const auto* vi = view.as<SubringViewImpl>();
  std::uint64_t beta = 0;
  for (Id u : units.elements()) {
    const Id m = vi->to_parent(u);
    bool ok = mi->entry(m, n - 1, n - 1) == 1;
    for (unsigned i = 0; i + 1 < n && ok; ++i) ok = mi->entry(m, i, n - 1) == 0;
    if (ok) ++beta;
  }
  const auto gl = units_of(make_matrix_ring(n - 1, field), {true, par});
  rep.value("beta_units", static_cast<std::int64_t>(beta));
  rep.check("Θ* contains a copy of GL_{n-1}", beta == gl.order(),
            std::to_string(beta) + " vs " + std::to_string(gl.order()));
  const auto series = derived_series(units);
  rep.value("units_solvable", series.solvable() ? 1 : 0);
  rep.value("gl_solvable", is_solvable(gl) ? 1 : 0);
  rep.check("Θ* solvable exactly when GL_{n-1} is", series.solvable() == is_solvable(gl));
  return rep;
}

// ---------------------------------------------------------------------------
// Small prime-power-order rings.

enum class Theorem35Mode { Catalog, Probe };

namespace detail {

/// S = M_2(F_p) on basis E11, E12, E21, E22 extended by J = F_p^2 on basis
/// j1, j2 with J^2 = 0. left: 0 zero, 1 natural (E_ab j_c = δ_bc j_a).
/// right: 0 zero, 1 row vectors (j_c E_ab = δ_ca j_b), 2 transpose
/// (j_c E_ab = δ_cb j_a).
inline StructureConstants bimodule_constants(std::uint64_t p, int left, int right) {
  const std::size_t k = 6;
  StructureConstants c(k, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
  auto e = [](unsigned a, unsigned b) { return static_cast<std::size_t>(a * 2 + b); };
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned b = 0; b < 2; ++b)
      for (unsigned d = 0; d < 2; ++d) c[e(a, b)][e(b, d)][e(a, d)] = 1;
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned b = 0; b < 2; ++b)
      for (unsigned cc = 0; cc < 2; ++cc) {
        if (left == 1 && b == cc) c[e(a, b)][4 + cc][4 + a] = 1;
        if (right == 1 && cc == a) c[4 + cc][e(a, b)][4 + b] = 1;
        if (right == 2 && cc == b) c[4 + cc][e(a, b)][4 + a] = 1;
      }
  (void)p;
  return c;
}

}  // namespace detail

struct Theorem35Options {
  OracleOptions oracle{};
};

/// Catalog: every ring of order p^k, k ≤ 5, in the prime-power catalog whose
/// units are not solvable must be minimal simple (fast path and oracle).
/// Probe: M_2(F_p) ⊕ J candidates of order p^6; reports per candidate whether
/// it is a ring and, if so, its classification. The probe asserts nothing.
inline VerifierReport verify_theorem35(std::uint64_t p, Theorem35Mode mode, const Theorem35Options& opts = {}) {
  VerifierReport rep;
  rep.verifier = "theorem35";
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (mode == Theorem35Mode::Catalog) {
    rep.subject = "catalog p=" + std::to_string(p);
    std::uint64_t non_solvable = 0;
    for (const auto& e : prime_power_catalog(p, 5)) {
      const auto fast = classify_fast(e);
      const Ring r = eval(e);
      const auto oracle = minimal_simple_oracle(r, opts.oracle);
      rep.rows.push_back({{"ring", pretty(e)},
                          {"order", std::to_string(r.order())},
                          {"fast", to_string(fast.kind)},
                          {"oracle", to_string(oracle.kind)}});
      if (oracle.kind == VerdictKind::UnitsSolvable) continue;
      ++non_solvable;
      rep.check(pretty(e) + " is minimal simple",
                oracle.kind == VerdictKind::MinimalSimple && fast.kind == VerdictKind::MinimalSimple,
                std::string("fast ") + to_string(fast.kind) + ", oracle " + to_string(oracle.kind));
    }
    rep.value("catalog_rings", static_cast<std::int64_t>(rep.rows.size()));
    rep.value("non_solvable", static_cast<std::int64_t>(non_solvable));
    return rep;
  }
  rep.subject = "probe p=" + std::to_string(p);
  const char* left_names[] = {"zero", "natural"};
  const char* right_names[] = {"zero", "natural-row", "transpose"};
  std::uint64_t rings = 0;
  for (int left = 0; left < 2; ++left)
    for (int right = 0; right < 3; ++right) {
      std::vector<std::pair<std::string, std::string>> row{{"left", left_names[left]}, {"right", right_names[right]}};
      try {
        const Ring r = make_table_ring(std::vector<std::uint64_t>(6, p), detail::bimodule_constants(p, left, right));
        ++rings;
        row.emplace_back("ring", "yes");
        row.emplace_back("classification", to_string(minimal_simple_oracle(r, opts.oracle).kind));
      } catch (const Error& err) {
        row.emplace_back("ring", "no");
        row.emplace_back("error", to_string(err.kind()));
      }
      rep.rows.push_back(std::move(row));
    }
  rep.value("candidates", static_cast<std::int64_t>(rep.rows.size()));
  rep.value("rings", static_cast<std::int64_t>(rings));
  return rep;
}

// ---------------------------------------------------------------------------
// Γ members at desk scale.

/// Exhaustive oracle against the theorem path. Γ members must come out
/// MinimalSimple with an exhaustive lattice; other rings must agree with the
/// fast path.
inline VerifierReport verify_gamma(const RingExpr& expr, const OracleOptions& opts = {}) {
  VerifierReport rep;
  rep.verifier = "gamma";
  const auto normalized = normalize(expr);
  rep.subject = pretty(normalized);
  const auto tag = gamma_membership(normalized);
  const auto fast = classify_fast(normalized);
  OracleOptions o = opts;
  o.strategy = OracleStrategy::Exhaustive;
  const Ring r = eval(normalized);
  const auto oracle = minimal_simple_oracle(r, o);
  rep.rows.push_back({{"gamma", to_string(tag.family)}, {"fast", to_string(fast.kind)}, {"oracle", to_string(oracle.kind)}});
  if (oracle.lattice) {
    rep.value("subring_count", static_cast<std::int64_t>(oracle.lattice->subring_count));
    rep.value("maximal_subrings", static_cast<std::int64_t>(oracle.lattice->maximal.size()));
    rep.value("exhaustive", oracle.lattice->exhaustive ? 1 : 0);
  }
  rep.check("oracle agrees with the theorem path", oracle.kind == fast.kind,
            std::string("fast ") + to_string(fast.kind) + ", oracle " + to_string(oracle.kind));
  if (tag.member())
    rep.check("Γ member is minimal simple by exhaustive lattice",
              oracle.kind == VerdictKind::MinimalSimple && oracle.lattice && oracle.lattice->exhaustive);
  return rep;
}

// ---------------------------------------------------------------------------
// PSL(2,q) as determinant-1 classes of GL_2(q) modulo scalars.

class PslGroup {
 public:
  PslGroup(const UnitGroup& gl, const MatrixImpl& mi) : gl_(&gl), mask_(gl.id_bound()) {
    const auto& f = mi.field();
    std::vector<Id> scalars;
    for (Id s = 1; s < f.order(); ++s)
      if (f.mul(s, s) == 1) scalars.push_back(mi.scalar(s));
    canon_.assign(gl.id_bound(), 0);
    for (Id u : gl.elements()) {
      if (mi.determinant(u) != 1) continue;
      Id best = u;
      for (Id s : scalars) best = std::min(best, gl.mul(s, u));
      canon_[u] = best;
      if (best == u) {
        mask_.set(u);
        elements_.push_back(u);
      }
    }
  }

  Id identity() const { return canon_[gl_->identity()]; }
  Id mul(Id a, Id b) const { return canon_[gl_->mul(a, b)]; }
  Id inverse(Id a) const { return canon_[gl_->inverse(a)]; }
  bool contains(Id a) const { return mask_.test(a); }
  std::size_t id_bound() const { return gl_->id_bound(); }
  const std::vector<Id>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

 private:
  const UnitGroup* gl_;
  SubsetMask mask_;
  std::vector<Id> canon_;
  std::vector<Id> elements_;
};

static_assert(FiniteGroup<PslGroup>);

/// For h of order q+1 in PSL(2,q): |N(<h>)| = 2(q+1), generated by h and an
/// involution inverting h; C(h) = <h>.
inline VerifierReport verify_psl_normalizer(std::uint64_t q, Parallelism par = {}) {
  VerifierReport rep;
  rep.verifier = "psl";
  const auto pp = prime_power(q);
  if (!pp) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power");
  const auto field = GaloisField::make(pp->first, pp->second);
  const Ring r = make_matrix_ring(2, field);
  rep.subject = "PSL(2," + std::to_string(q) + ")";
  const auto gl = units_of(r, {true, par});
  const PslGroup g(gl, *r.as<MatrixImpl>());
  rep.value("psl_order", static_cast<std::int64_t>(g.order()));
  const std::uint64_t expected = q * (q * q - 1) / ringlab::gcd(2, q - 1);
  rep.check("|PSL(2,q)| = q(q^2-1)/gcd(2,q-1)", g.order() == expected, std::to_string(g.order()));
  std::optional<Id> h;
  for (Id x : g.elements())
    if (element_order(g, x) == q + 1) {
      h = x;
      break;
    }
  rep.check("an element h of order q+1 exists", h.has_value());
  if (!h) return rep;
  rep.value("h", *h);
  const auto cyc = subgroup_closure(g, {*h});
  const auto norm = normalizer(g, cyc, par);
  rep.value("normalizer_order", static_cast<std::int64_t>(norm.order()));
  rep.check("|N(<h>)| = 2(q+1)", norm.order() == 2 * (q + 1), std::to_string(norm.order()));
  rep.check("<h> is inside N(<h>)", cyc.mask.is_subset_of(norm.mask));
  std::optional<Id> t;
  for (Id x : norm.sorted())
    if (element_order(g, x) == 2 && g.mul(g.mul(g.inverse(x), *h), x) == g.inverse(*h)) {
      t = x;
      break;
    }
  rep.check("an involution t with t^-1 h t = h^-1 exists", t.has_value());
  if (t) {
    rep.value("t", *t);
    rep.check("N(<h>) = <h, t> (dihedral)", subgroup_closure(g, {*h, *t}).mask == norm.mask);
  }
  const auto cent = centralizer(g, {*h}, par);
  rep.value("centralizer_order", static_cast<std::int64_t>(cent.order()));
  rep.check("|C(h)| = q+1", cent.order() == q + 1, std::to_string(cent.order()));
  return rep;
}

}  // namespace ringlab
