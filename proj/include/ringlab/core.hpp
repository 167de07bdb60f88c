#pragma once
// Shared vocabulary: element ids, error types, the element-count cap and the
// small amount of integer number theory every module leans on.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ringlab {

/// Dense element id inside a finite ring (0 .. order-1).
using Id = std::uint32_t;

enum class ErrorKind {
  NotPrime,
  CapExceeded,
  ZeroInverse,
  NotClosed,
  MissingIdentity,
  NotAnIdeal,
  NotAssociative,
  NotUnital,
  NotDistributive,
  NotAUnit,
  IdealNotInRadical,
  NotInGamma,
  InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::IdealNotInRadical: return "IdealNotInRadical";
    case ErrorKind::NotInGamma: return "NotInGamma";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Element-count cap. Default 2^20, overridable through RINGLAB_CAP or a
// ScopedCap (tests and the acceptance suite lift it for a few large parents).

namespace detail {
inline std::uint64_t& cap_storage() {
  static std::uint64_t cap = [] {
    if (const char* env = std::getenv("RINGLAB_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1} << 20;
  }();
  return cap;
}
}  // namespace detail

inline std::uint64_t element_cap() { return detail::cap_storage(); }
inline void set_element_cap(std::uint64_t cap) { detail::cap_storage() = cap; }

/// Not thread-safe; set it before spawning work.
class ScopedCap {
 public:
  explicit ScopedCap(std::uint64_t cap) : saved_(element_cap()) { set_element_cap(cap); }
  ~ScopedCap() { set_element_cap(saved_); }
  ScopedCap(const ScopedCap&) = delete;
  ScopedCap& operator=(const ScopedCap&) = delete;

 private:
  std::uint64_t saved_;
};

inline void check_cap(std::uint64_t order, const std::string& what) {
  if (order > element_cap() || order > std::numeric_limits<Id>::max())
    throw Error(ErrorKind::CapExceeded,
                what + " has " + std::to_string(order) + " elements, cap is " +
                    std::to_string(element_cap()));
}

// ---------------------------------------------------------------------------
// Integer helpers.

/// a*b, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::nullopt;
  return a * b;
}

inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    auto next = checked_mul(r, base);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

inline std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  auto r = checked_pow(base, exp);
  if (!r) throw Error(ErrorKind::CapExceeded, "integer power overflows 64 bits");
  return *r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Trial-division factorization: (prime, exponent) pairs, ascending.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// If n = p^k for a prime p and k >= 1, returns (p, k).
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return a / gcd(a, b) * b; }

}  // namespace ringlab
