#pragma once
// Finite fields GF(p^m). Elements are ids in [0, p^m); the id is the base-p
// encoding of the coefficient vector of a polynomial of degree < m, constant
// term as the least significant digit. Id 0 is zero, id 1 is one.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ringlab/core.hpp"

namespace ringlab {

namespace detail {

/// Polynomials over GF(p), coefficient vector with the constant term first.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Remainder of a modulo a monic divisor d.
inline Poly poly_rem(Poly a, const Poly& d, std::uint32_t p) {
  poly_trim(a);
  const std::size_t dd = d.size() - 1;
  while (a.size() > dd) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) {
      const std::uint64_t sub = (lead * d[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    poly_trim(a);
  }
  return a;
}

inline Poly poly_decode(std::uint64_t id, std::uint32_t p, unsigned len) {
  Poly f(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    f[i] = static_cast<std::uint32_t>(id % p);
    id /= p;
  }
  return f;
}

inline std::uint64_t poly_encode(const Poly& f, std::uint32_t p, unsigned len) {
  std::uint64_t id = 0;
  for (unsigned i = len; i-- > 0;) id = id * p + (i < f.size() ? f[i] : 0);
  return id;
}

/// Monic f of degree m is irreducible iff no monic polynomial of degree
/// 1..m/2 divides it.
inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= m / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = poly_decode(low, p, d);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Immutable description of GF(p^m) with precomputed log/antilog tables.
class GaloisField {
 public:
  /// Lexicographically smallest irreducible monic modulus (coefficients read
  /// as a base-p number, constant term least significant) and smallest
  /// primitive root. For m = 1 the modulus is x and arithmetic is mod p.
  static GaloisField make(std::uint64_t p, unsigned m) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
    auto q = checked_pow(p, m);
    if (!q) throw Error(ErrorKind::CapExceeded, "field order overflows");
    check_cap(*q, "GF(" + std::to_string(p) + "^" + std::to_string(m) + ")");
    return GaloisField(static_cast<std::uint32_t>(p), m);
  }

  std::uint32_t characteristic() const noexcept { return t_->p; }
  unsigned degree() const noexcept { return t_->m; }
  std::uint32_t order() const noexcept { return t_->q; }
  const detail::Poly& modulus() const noexcept { return t_->modulus; }
  Id primitive_root() const noexcept { return t_->primitive_root; }

  Id zero() const noexcept { return 0; }
  Id one() const noexcept { return 1; }

  Id add(Id a, Id b) const noexcept {
    const auto& t = *t_;
    if (t.m == 1) return static_cast<Id>((a + b) % t.p);
    if (t.p == 2) return a ^ b;
    if (!t.add_table.empty()) return t.add_table[static_cast<std::size_t>(a) * t.q + b];
    return digitwise(a, b, false);
  }

  Id neg(Id a) const noexcept {
    const auto& t = *t_;
    if (t.m == 1) return a == 0 ? 0 : t.p - a;
    if (t.p == 2) return a;
    if (!t.neg_table.empty()) return t.neg_table[a];
    return digitwise(0, a, true);
  }

  Id sub(Id a, Id b) const noexcept { return add(a, neg(b)); }

  Id mul(Id a, Id b) const noexcept {
    const auto& t = *t_;
    if (t.m == 1) return static_cast<Id>(static_cast<std::uint64_t>(a) * b % t.p);
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = t.log[a] + t.log[b];
    if (e >= t.q - 1) e -= t.q - 1;
    return t.exp[e];
  }

  Id inv(Id a) const {
    if (a == 0) throw Error(ErrorKind::ZeroInverse, "inverse of zero in GF(" + std::to_string(order()) + ")");
    const auto& t = *t_;
    const std::uint32_t l = t.log[a];
    return t.exp[l == 0 ? 0 : (t.q - 1) - l];
  }

  Id pow(Id a, std::uint64_t e) const noexcept {
    const auto& t = *t_;
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t n = t.q - 1;
    return t.exp[static_cast<std::size_t>((static_cast<std::uint64_t>(t.log[a]) * (e % n)) % n)];
  }

  /// a^(p^k); frobenius(a, degree()) == a.
  Id frobenius(Id a, unsigned k) const noexcept {
    std::uint64_t e = 1;
    const std::uint64_t n = order() - 1;
    for (unsigned i = 0; i < k; ++i) e = (e * characteristic()) % (n ? n : 1);
    if (a == 0) return 0;
    if (n == 0) return a;
    return pow(a, e == 0 ? n : e);
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(Id a) const {
    if (a == 0) throw Error(ErrorKind::ZeroInverse, "zero has no multiplicative order");
    const std::uint64_t n = order() - 1;
    return n / ringlab::gcd(n, t_->log[a]);
  }

  /// Coefficient vector of an element (constant term first, length m).
  detail::Poly coefficients(Id a) const { return detail::poly_decode(a, characteristic(), degree()); }
  Id from_coefficients(const detail::Poly& c) const {
    return static_cast<Id>(detail::poly_encode(c, characteristic(), degree()));
  }

  /// "GF(5)" / "GF(2^6)".
  std::string name() const {
    return degree() == 1 ? "GF(" + std::to_string(characteristic()) + ")"
                         : "GF(" + std::to_string(characteristic()) + "^" + std::to_string(degree()) + ")";
  }

  friend bool operator==(const GaloisField& a, const GaloisField& b) {
    return a.characteristic() == b.characteristic() && a.degree() == b.degree();
  }

 private:
  struct Tables {
    std::uint32_t p = 0;
    unsigned m = 0;
    std::uint32_t q = 0;
    detail::Poly modulus;
    Id primitive_root = 0;
    std::vector<std::uint32_t> log;  // log[0] unused
    std::vector<Id> exp;             // exp[i] = g^i, i < q-1
    std::vector<Id> add_table;       // only for small odd-characteristic extensions
    std::vector<Id> neg_table;
  };

  GaloisField(std::uint32_t p, unsigned m) {
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->m = m;
    t->q = static_cast<std::uint32_t>(ipow(p, m));
    if (m == 1) {
      t->modulus = {0, 1};
    } else {
      const std::uint64_t count = ipow(p, m);
      for (std::uint64_t low = 0; low < count; ++low) {
        detail::Poly f = detail::poly_decode(low, p, m);
        f.push_back(1);
        if (f[0] != 0 && detail::poly_irreducible(f, p)) {
          t->modulus = std::move(f);
          break;
        }
      }
    }
    const std::uint64_t n = t->q - 1;
    const auto primes = prime_divisors(n);
    auto slow_mul = [&](Id a, Id b) -> Id {
      if (m == 1) return static_cast<Id>(static_cast<std::uint64_t>(a) * b % p);
      const auto fa = detail::poly_decode(a, p, m), fb = detail::poly_decode(b, p, m);
      detail::Poly prod(2 * m, 0);
      for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
          prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(fa[i]) * fb[j]) % p);
      return static_cast<Id>(detail::poly_encode(detail::poly_rem(prod, t->modulus, p), p, m));
    };
    auto slow_pow = [&](Id a, std::uint64_t e) {
      Id r = 1;
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    for (Id g = 1; g < t->q; ++g) {
      bool primitive = true;
      for (auto r : primes)
        if (slow_pow(g, n / r) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        t->primitive_root = g;
        break;
      }
    }
    t->exp.resize(n == 0 ? 1 : n);
    t->log.assign(t->q, 0);
    Id x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      t->exp[i] = x;
      t->log[x] = static_cast<std::uint32_t>(i);
      x = slow_mul(x, t->primitive_root);
    }
    t_ = t;
    if (m > 1 && p != 2 && t->q <= 1024) {
      t->add_table.resize(static_cast<std::size_t>(t->q) * t->q);
      t->neg_table.resize(t->q);
      for (Id a = 0; a < t->q; ++a) {
        t->neg_table[a] = digitwise(0, a, true);
        for (Id b = 0; b < t->q; ++b) t->add_table[static_cast<std::size_t>(a) * t->q + b] = digitwise(a, b, false);
      }
    }
  }

  Id digitwise(Id a, Id b, bool subtract) const noexcept {
    const std::uint32_t p = t_->p;
    Id r = 0, w = 1;
    for (unsigned i = 0; i < t_->m; ++i) {
      const std::uint32_t da = a % p, db = b % p;
      a /= p;
      b /= p;
      r += w * (subtract ? (da + p - db) % p : (da + db) % p);
      w *= p;
    }
    return r;
  }

  std::shared_ptr<const Tables> t_;
};

/// The subfield of order p^d together with its embedding into the parent.
struct Subfield {
  unsigned degree;
  GaloisField field;
  std::vector<Id> embedding;  // element id in the subfield -> id in the parent
};

/// One entry per divisor d of m, ascending. The embedding sends x to the
/// smallest root of the subfield's modulus in the parent and extends
/// GF(p)-linearly.
inline std::vector<Subfield> subfields(const GaloisField& f) {
  std::vector<Subfield> out;
  const std::uint32_t p = f.characteristic();
  for (auto d64 : divisors(f.degree())) {
    const unsigned d = static_cast<unsigned>(d64);
    GaloisField sub = GaloisField::make(p, d);
    const auto& mod = sub.modulus();
    auto eval = [&](Id x) {
      Id acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;) acc = f.add(f.mul(acc, x), static_cast<Id>(mod[i]));
      return acc;
    };
    Id root = 0;
    for (Id x = 0; x < f.order(); ++x)
      if (eval(x) == 0) {
        root = x;
        break;
      }
    std::vector<Id> emb(sub.order());
    for (Id a = 0; a < sub.order(); ++a) {
      const auto c = sub.coefficients(a);
      Id acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = f.add(f.mul(acc, root), static_cast<Id>(c[i]));
      emb[a] = acc;
    }
    out.push_back(Subfield{d, std::move(sub), std::move(emb)});
  }
  return out;
}

}  // namespace ringlab
