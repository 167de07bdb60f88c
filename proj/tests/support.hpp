#pragma once
// Reference computations used as independent oracles by the test suites.
// Everything here is deliberately naive: plain scans over element ids with
// no reuse of the library's fast paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ringlab/ringlab.hpp"

namespace oracle {

using ringlab::Id;
using ringlab::Ring;

/// Sample count and seed for axiom checks on rings above the exhaustive limit.
inline constexpr std::uint64_t kAxiomSamples = 100'000;
inline constexpr std::uint64_t kAxiomSeed = 20240601;
/// Literal triple enumeration up to this order.
inline constexpr std::uint64_t kLiteralTripleLimit = 64;
/// Generator-reduced exhaustive checks up to this order.
inline constexpr std::uint64_t kExhaustiveLimit = 4096;

// ---------------------------------------------------------------------------
// Integers and polynomials over GF(p).

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++c;
  return n == 1 ? 1 : c;
}

inline std::uint64_t pow_u(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// |GL_n(q)| = prod_{i<n} (q^n - q^i).
inline std::uint64_t gl_order(unsigned n, std::uint64_t q) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) r *= pow_u(q, n) - pow_u(q, i);
  return r;
}

/// Coefficients constant-term first, reduced mod p, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  for (std::uint64_t b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  return 0;
}

inline Poly poly_mod(Poly a, const Poly& d, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = inv_mod(d.back(), p);
  while (a.size() >= d.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) a[shift + i] = (a[shift + i] + p * p - c * d[i] % p) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

/// Monic polynomial of degree d whose lower coefficients are the base-p
/// digits of k.
inline Poly monic(unsigned d, std::uint64_t k, std::uint64_t p) {
  Poly f(d + 1, 0);
  for (unsigned i = 0; i < d; ++i, k /= p) f[i] = k % p;
  f[d] = 1;
  return f;
}

/// Irreducible iff no monic divisor of degree 1..deg/2 divides it.
inline bool irreducible_by_division(const Poly& f, std::uint64_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= n / 2; ++d)
    for (std::uint64_t k = 0; k < pow_u(p, d); ++k)
      if (poly_mod(f, monic(d, k, p), p).empty()) return false;
  return true;
}

/// First irreducible monic polynomial of degree m in base-p counting order.
inline Poly first_irreducible(unsigned m, std::uint64_t p) {
  for (std::uint64_t k = 0; k < pow_u(p, m); ++k) {
    auto f = monic(m, k, p);
    if (irreducible_by_division(f, p)) return f;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Ring-level scans.

inline std::vector<Id> brute_units(const Ring& r) {
  std::vector<Id> out;
  const std::uint64_t n = r.order();
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y)
      if (r.mul(x, y) == r.one() && r.mul(y, x) == r.one()) {
        out.push_back(x);
        break;
      }
  return out;
}

inline std::uint64_t additive_order(const Ring& r, Id x) {
  std::uint64_t k = 1;
  for (Id y = x; y != 0; y = r.add(y, x)) ++k;
  return x == 0 ? 1 : k;
}

/// Greedy additive generating set: each new generator lies outside the span
/// of the previous ones.
inline std::vector<Id> additive_generators(const Ring& r) {
  std::vector<char> in(r.order(), 0);
  std::vector<Id> span{0}, gens;
  in[0] = 1;
  for (Id x = 0; x < r.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    for (std::size_t i = 0; i < span.size(); ++i)
      for (Id y = r.add(span[i], x); !in[y]; y = r.add(y, x)) {
        in[y] = 1;
        span.push_back(y);
      }
  }
  return gens;
}

struct AxiomResult {
  bool ok = true;
  std::string failure;
  std::string method;
};

/// Abelian group, monoid and distributivity. Literal triples for small
/// orders; up to kExhaustiveLimit the same laws are checked exhaustively via
/// additivity against an additive generating set (every element is a sum of
/// generators, so x -> a*x with a*(b+g) = a*b + a*g for every b and generator
/// g is additive, and associativity of a biadditive product follows from
/// generator triples); above
/// that, kAxiomSamples random triples.
inline AxiomResult check_ring_axioms(const Ring& r) {
  AxiomResult res;
  const std::uint64_t n = r.order();
  auto fail = [&](const std::string& what, Id a, Id b, Id c) {
    if (res.ok) res.failure = what + " at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    res.ok = false;
  };
  auto triple = [&](Id a, Id b, Id c) {
    if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c))) fail("add assoc", a, b, c);
    if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))) fail("mul assoc", a, b, c);
    if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c))) fail("left distrib", a, b, c);
    if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c))) fail("right distrib", a, b, c);
  };
  auto unary = [&](Id a) {
    if (r.add(a, 0) != a) fail("zero", a, 0, 0);
    if (r.add(a, r.neg(a)) != 0) fail("neg", a, 0, 0);
    if (r.mul(a, r.one()) != a || r.mul(r.one(), a) != a) fail("one", a, 0, 0);
  };
  if (n <= kLiteralTripleLimit) {
    res.method = "literal";
    for (Id a = 0; a < n; ++a) {
      unary(a);
      for (Id b = 0; b < n; ++b) {
        if (r.add(a, b) != r.add(b, a)) fail("add comm", a, b, 0);
        for (Id c = 0; c < n; ++c) triple(a, b, c);
      }
    }
  } else if (n <= kExhaustiveLimit) {
    res.method = "generators";
    const auto gens = additive_generators(r);
    std::vector<Id> sum(n * n), left(n), right(n);
    for (Id a = 0; a < n; ++a)
      for (Id b = 0; b < n; ++b) sum[a * n + b] = r.add(a, b);
    auto add = [&](Id a, Id b) { return sum[a * n + b]; };
    for (Id a = 0; a < n && res.ok; ++a) {
      unary(a);
      for (Id b = 0; b < n; ++b) {
        left[b] = r.mul(a, b);
        right[b] = r.mul(b, a);
        if (add(a, b) != add(b, a)) fail("add comm", a, b, 0);
      }
      for (Id g : gens)
        for (Id b = 0; b < n && res.ok; ++b) {
          const Id bg = add(b, g);
          if (add(add(b, a), g) != add(b, add(a, g))) fail("add assoc", b, a, g);
          if (left[bg] != add(left[b], left[g])) fail("left distrib", a, b, g);
          if (right[bg] != add(right[b], right[g])) fail("right distrib", b, g, a);
        }
    }
    for (Id a : gens)
      for (Id b : gens)
        for (Id c : gens)
          if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))) fail("mul assoc", a, b, c);
  } else {
    res.method = "sampled";
    std::mt19937_64 rng(kAxiomSeed);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (std::uint64_t i = 0; i < kAxiomSamples && res.ok; ++i) {
      const Id a = static_cast<Id>(pick(rng)), b = static_cast<Id>(pick(rng)), c = static_cast<Id>(pick(rng));
      unary(a);
      if (r.add(a, b) != r.add(b, a)) fail("add comm", a, b, 0);
      triple(a, b, c);
    }
  }
  return res;
}

/// (order, char, unit count, sorted additive orders).
struct Fingerprint {
  std::uint64_t order = 0, characteristic = 0, units = 0;
  std::map<std::uint64_t, std::uint64_t> additive_orders;
  bool operator==(const Fingerprint&) const = default;
};

inline Fingerprint fingerprint(const Ring& r, std::uint64_t unit_count) {
  Fingerprint f{r.order(), r.characteristic(), unit_count, {}};
  for (Id x = 0; x < r.order(); ++x) ++f.additive_orders[additive_order(r, x)];
  return f;
}

/// Backtracking ring-isomorphism search. Images are chosen for a greedy
/// additive generating set starting with 1; every partial additive map is
/// propagated over the span and checked for consistency, injectivity and
/// multiplicativity before extending.
inline bool isomorphic(const Ring& a, const Ring& b) {
  if (a.order() != b.order() || a.characteristic() != b.characteristic()) return false;
  const std::uint64_t n = a.order();
  if (n == 1) return true;
  std::vector<Id> gens{a.one()};
  {
    std::vector<char> in(n, 0);
    std::vector<Id> span{0};
    in[0] = 1;
    auto grow = [&](Id x) {
      for (std::size_t i = 0; i < span.size(); ++i)
        for (Id y = a.add(span[i], x); !in[y]; y = a.add(y, x)) {
          in[y] = 1;
          span.push_back(y);
        }
    };
    grow(a.one());
    for (Id x = 0; x < n; ++x)
      if (!in[x]) {
        gens.push_back(x);
        grow(x);
      }
  }
  constexpr Id kNone = ~Id{0};
  std::vector<Id> phi(n, kNone), inverse(n, kNone);
  std::vector<Id> assigned;
  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == gens.size()) return true;
    const Id g = gens[k];
    const std::uint64_t og = additive_order(a, g);
    const std::vector<Id> candidates = [&] {
      if (k == 0) return std::vector<Id>{b.one()};
      std::vector<Id> c;
      for (Id h = 0; h < n; ++h)
        if (inverse[h] == kNone && additive_order(b, h) == og) c.push_back(h);
      return c;
    }();
    for (Id h : candidates) {
      const std::size_t mark = assigned.size();
      bool ok = true;
      auto assign = [&](Id x, Id y) {
        if (phi[x] != kNone) {
          ok = ok && phi[x] == y;
          return false;
        }
        if (inverse[y] != kNone) {
          ok = false;
          return false;
        }
        phi[x] = y;
        inverse[y] = x;
        assigned.push_back(x);
        return true;
      };
      if (phi[0] == kNone) assign(0, 0);
      // Span of the old span plus multiples of g.
      const std::vector<Id> base(assigned.begin(), assigned.begin() + static_cast<std::ptrdiff_t>(mark == 0 ? 1 : mark));
      for (std::size_t i = 0; i < base.size() && ok; ++i) {
        Id x = base[i], y = phi[x];
        for (std::uint64_t t = 1; t < og && ok; ++t) {
          x = a.add(x, g);
          y = b.add(y, h);
          assign(x, y);
        }
      }
      for (std::size_t i = 0; i < assigned.size() && ok; ++i)
        for (std::size_t j = 0; j < assigned.size() && ok; ++j) {
          const Id x = assigned[i], y = assigned[j];
          const Id s = a.mul(x, y);
          if (phi[s] != kNone && phi[s] != b.mul(phi[x], phi[y])) ok = false;
        }
      if (ok && extend(k + 1)) return true;
      while (assigned.size() > mark) {
        inverse[phi[assigned.back()]] = kNone;
        phi[assigned.back()] = kNone;
        assigned.pop_back();
      }
    }
    return false;
  };
  return extend(0);
}

}  // namespace oracle
