#pragma once
// Ring-construction expressions:
//
//   Expr := Term { "(+)" Term }
//   Term := "Z" "(" int ")"
//         | "GF" "(" int [ "^" int ] ")"
//         | "M" "(" int "," Term ")"
//         | "UT" "(" int "," Term ")"
//
// Whitespace between tokens is ignored. Matrix and upper-triangular bases
// must be fields.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ringlab/gf.hpp"
#include "ringlab/ring.hpp"
#include "ringlab/views.hpp"

namespace ringlab {

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct RingExpr {
  enum class Kind { Zmod, GF, Mat, UT, DirectSum };

  Kind kind = Kind::Zmod;
  std::uint64_t n = 1;  // modulus for Zmod, matrix size for Mat/UT
  std::uint64_t p = 0;  // GF characteristic
  unsigned m = 1;       // GF degree
  std::vector<RingExpr> children;  // Mat/UT: the GF base; DirectSum: summands
  SourceSpan span;

  static RingExpr zmod(std::uint64_t n) {
    RingExpr e;
    e.kind = Kind::Zmod;
    e.n = n;
    return e;
  }
  static RingExpr gf(std::uint64_t p, unsigned m = 1) {
    RingExpr e;
    e.kind = Kind::GF;
    e.p = p;
    e.m = m;
    return e;
  }
  static RingExpr mat(std::uint64_t n, RingExpr base) {
    RingExpr e;
    e.kind = Kind::Mat;
    e.n = n;
    e.children.push_back(std::move(base));
    return e;
  }
  static RingExpr ut(std::uint64_t n, RingExpr base) {
    RingExpr e;
    e.kind = Kind::UT;
    e.n = n;
    e.children.push_back(std::move(base));
    return e;
  }
  static RingExpr sum(std::vector<RingExpr> parts) {
    RingExpr e;
    e.kind = Kind::DirectSum;
    e.children = std::move(parts);
    return e;
  }

  const RingExpr& base() const { return children.at(0); }
  /// Field order q = p^m of a GF node.
  std::uint64_t field_order() const { return ipow(p, m); }

  /// Structural equality; source spans are ignored.
  friend bool operator==(const RingExpr& a, const RingExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::Zmod: return a.n == b.n;
      case Kind::GF: return a.p == b.p && a.m == b.m;
      case Kind::Mat:
      case Kind::UT: return a.n == b.n && a.children == b.children;
      case Kind::DirectSum: return a.children == b.children;
    }
    return false;
  }
};

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error at a byte offset.
class ParseError : public ExprError {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, std::string message)
      : ExprError("parse error at offset " + std::to_string(offset) + ": " + message + expected_suffix(expected)),
        offset_(offset),
        expected_(std::move(expected)),
        message_(std::move(message)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string expected_suffix(const std::vector<std::string>& ex) {
    if (ex.empty()) return "";
    std::string s = " (expected ";
    for (std::size_t i = 0; i < ex.size(); ++i) s += (i ? ", " : "") + std::string("'") + ex[i] + "'";
    return s + ")";
  }
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string message_;
};

/// Well-formed syntax with an invalid meaning (non-prime p, matrix over Z_n...).
class SemanticError : public ExprError {
 public:
  SemanticError(SourceSpan span, const std::string& message)
      : ExprError("semantic error at " + std::to_string(span.begin) + ".." + std::to_string(span.end) + ": " + message),
        span_(span) {}
  SourceSpan span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  RingExpr parse() {
    RingExpr first = term();
    std::vector<RingExpr> parts;
    parts.push_back(std::move(first));
    skip_ws();
    while (peek_dsum()) {
      pos_ += 3;
      parts.push_back(term());
      skip_ws();
    }
    if (pos_ != text_.size()) fail({"(+)", "end of input"}, "unexpected trailing input");
    if (parts.size() == 1) return std::move(parts.front());
    RingExpr s = RingExpr::sum(std::move(parts));
    s.span = {s.children.front().span.begin, s.children.back().span.end};
    return s;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek_dsum() const { return text_.substr(pos_, 3) == "(+)"; }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
    throw ParseError(std::min(pos_, text_.size()), std::move(expected), msg);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail({std::string(1, c)}, "unexpected input");
    if (c == '(' && peek_dsum()) fail({"("}, "direct-sum token where '(' was expected");
    ++pos_;
  }

  std::uint64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail({"integer"}, "missing integer");
    if (pos_ - start > 18) {
      pos_ = start;
      fail({"integer"}, "integer literal too large");
    }
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  RingExpr term() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    const std::string_view word = text_.substr(start, end - start);
    const std::vector<std::string> heads{"Z", "GF", "M", "UT"};
    if (word != "Z" && word != "GF" && word != "M" && word != "UT") fail(heads, "expected a ring constructor");
    pos_ = end;
    RingExpr e;
    if (word == "Z") {
      expect('(');
      const auto n = integer();
      expect(')');
      e = RingExpr::zmod(n);
      e.span = {start, pos_};
      if (n < 1) throw SemanticError(e.span, "Z(n) needs n >= 1");
      return e;
    }
    if (word == "GF") {
      expect('(');
      const auto a = integer();
      skip_ws();
      std::optional<std::uint64_t> exponent;
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        exponent = integer();
      }
      expect(')');
      SourceSpan span{start, pos_};
      if (exponent) {
        if (!is_prime(a)) throw SemanticError(span, std::to_string(a) + " is not prime");
        if (*exponent < 1 || *exponent > 64) throw SemanticError(span, "field degree must be in 1..64");
        e = RingExpr::gf(a, static_cast<unsigned>(*exponent));
      } else {
        auto pp = prime_power(a);
        if (!pp) throw SemanticError(span, std::to_string(a) + " is not a prime power");
        e = RingExpr::gf(pp->first, pp->second);
      }
      e.span = span;
      return e;
    }
    expect('(');
    const auto n = integer();
    expect(',');
    RingExpr base = term();
    expect(')');
    e = word == "M" ? RingExpr::mat(n, std::move(base)) : RingExpr::ut(n, std::move(base));
    e.span = {start, pos_};
    if (e.base().kind != RingExpr::Kind::GF)
      throw SemanticError(e.base().span, std::string(word) + " base must be a field GF(q)");
    if (n < 1) throw SemanticError(e.span, "matrix size must be >= 1");
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RingExpr parse(std::string_view text) { return detail::ExprParser(text).parse(); }

inline std::string pretty(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::Kind::Zmod: return "Z(" + std::to_string(e.n) + ")";
    case RingExpr::Kind::GF:
      return e.m == 1 ? "GF(" + std::to_string(e.p) + ")"
                      : "GF(" + std::to_string(e.p) + "^" + std::to_string(e.m) + ")";
    case RingExpr::Kind::Mat: return "M(" + std::to_string(e.n) + "," + pretty(e.base()) + ")";
    case RingExpr::Kind::UT: return "UT(" + std::to_string(e.n) + "," + pretty(e.base()) + ")";
    case RingExpr::Kind::DirectSum: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) s += (i ? " (+) " : "") + pretty(e.children[i]);
      return s;
    }
  }
  return {};
}

/// Element count, or nullopt if it does not fit in 64 bits.
inline std::optional<std::uint64_t> expr_order(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::Kind::Zmod: return e.n;
    case RingExpr::Kind::GF: return checked_pow(e.p, e.m);
    case RingExpr::Kind::Mat:
    case RingExpr::Kind::UT: {
      auto q = expr_order(e.base());
      if (!q) return std::nullopt;
      const std::uint64_t cells = e.kind == RingExpr::Kind::Mat ? e.n * e.n : e.n * (e.n + 1) / 2;
      return checked_pow(*q, cells);
    }
    case RingExpr::Kind::DirectSum: {
      std::uint64_t r = 1;
      for (const auto& c : e.children) {
        auto o = expr_order(c);
        if (!o) return std::nullopt;
        auto next = checked_mul(r, *o);
        if (!next) return std::nullopt;
        r = *next;
      }
      return r;
    }
  }
  return std::nullopt;
}

/// Characteristic of the ring an expression denotes.
inline std::uint64_t expr_characteristic(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::Kind::Zmod: return e.n;
    case RingExpr::Kind::GF: return e.p;
    case RingExpr::Kind::Mat:
    case RingExpr::Kind::UT: return e.base().p;
    case RingExpr::Kind::DirectSum: {
      std::uint64_t c = 1;
      for (const auto& x : e.children) c = lcm(c, expr_characteristic(x));
      return c;
    }
  }
  return 1;
}

/// Upper-triangular matrices inside M_n(field), as a mask.
inline SubsetMask upper_triangular_mask(const Ring& matrices) {
  const auto* mi = matrices.as<MatrixImpl>();
  if (!mi) throw Error(ErrorKind::InvalidArgument, "upper-triangular mask needs a matrix ring");
  const unsigned n = mi->dimension();
  const Id q = mi->field().order();
  std::vector<std::pair<unsigned, unsigned>> cells;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) cells.emplace_back(i, j);
  SubsetMask mask(matrices.order());
  std::vector<Id> digits(cells.size(), 0);
  while (true) {
    std::vector<Id> entries(n * n, 0);
    for (std::size_t c = 0; c < cells.size(); ++c) entries[cells[c].first * n + cells[c].second] = digits[c];
    mask.set(mi->from_entries(entries));
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return mask;
}

inline Ring eval(const RingExpr& e) {
  auto order = expr_order(e);
  if (!order) throw Error(ErrorKind::CapExceeded, pretty(e) + " is too large");
  check_cap(*order, pretty(e));
  switch (e.kind) {
    case RingExpr::Kind::Zmod: return make_zmod(e.n);
    case RingExpr::Kind::GF: return make_field_ring(GaloisField::make(e.p, e.m));
    case RingExpr::Kind::Mat:
      return make_matrix_ring(static_cast<unsigned>(e.n), GaloisField::make(e.base().p, e.base().m));
    case RingExpr::Kind::UT: {
      const auto full = make_matrix_ring(static_cast<unsigned>(e.n), GaloisField::make(e.base().p, e.base().m));
      return subring_view(full, upper_triangular_mask(full));
    }
    case RingExpr::Kind::DirectSum: {
      std::vector<Ring> parts;
      for (const auto& c : e.children) parts.push_back(eval(c));
      return make_direct_sum(std::move(parts));
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown expression kind");
}

inline Ring eval(std::string_view text) { return eval(parse(text)); }

namespace detail {
inline void flatten_into(const RingExpr& e, std::vector<RingExpr>& out) {
  if (e.kind == RingExpr::Kind::DirectSum) {
    for (const auto& c : e.children) flatten_into(c, out);
    return;
  }
  out.push_back(e);
}

/// Canonical single-factor form: 1x1 matrix rings become their field, prime
/// fields become Z(p).
inline RingExpr canonical_factor(RingExpr e) {
  if ((e.kind == RingExpr::Kind::Mat || e.kind == RingExpr::Kind::UT) && e.n == 1) e = e.base();
  if (e.kind == RingExpr::Kind::GF && e.m == 1) return RingExpr::zmod(e.p);
  return e;
}
}  // namespace detail

/// Flattens direct sums, puts factors in canonical form, and merges cyclic
/// factors with coprime moduli. Cyclic moduli are taken in ascending order,
/// each joining the first bucket it is coprime to; surviving buckets share a
/// prime pairwise, which makes the result a fixed point. Non-cyclic factors
/// come first (by order, then notation), cyclic ones last in ascending order.
inline RingExpr normalize(const RingExpr& e) {
  std::vector<RingExpr> flat;
  detail::flatten_into(e, flat);
  std::vector<RingExpr> noncyclic;
  std::vector<std::uint64_t> cyclic;
  for (auto& f : flat) {
    RingExpr c = detail::canonical_factor(f);
    c.span = {};
    if (c.kind == RingExpr::Kind::Zmod) {
      if (c.n > 1) cyclic.push_back(c.n);
    } else {
      noncyclic.push_back(std::move(c));
    }
  }
  std::sort(cyclic.begin(), cyclic.end());
  std::vector<std::uint64_t> buckets;
  for (auto n : cyclic) {
    bool merged = false;
    for (auto& b : buckets)
      if (ringlab::gcd(b, n) == 1) {
        b *= n;
        merged = true;
        break;
      }
    if (!merged) buckets.push_back(n);
  }
  std::sort(buckets.begin(), buckets.end());
  auto order_key = [](const RingExpr& x) {
    return expr_order(x).value_or(std::numeric_limits<std::uint64_t>::max());
  };
  std::stable_sort(noncyclic.begin(), noncyclic.end(), [&](const RingExpr& a, const RingExpr& b) {
    const auto oa = order_key(a), ob = order_key(b);
    if (oa != ob) return oa < ob;
    return pretty(a) < pretty(b);
  });
  std::vector<RingExpr> parts = std::move(noncyclic);
  for (auto b : buckets) parts.push_back(RingExpr::zmod(b));
  if (parts.empty()) return RingExpr::zmod(1);
  if (parts.size() == 1) return parts.front();
  return RingExpr::sum(std::move(parts));
}

/// Factors of a (normalized) expression: the summands, or the expression itself.
inline std::vector<RingExpr> factors_of(const RingExpr& e) {
  if (e.kind == RingExpr::Kind::DirectSum) return e.children;
  return {e};
}

}  // namespace ringlab
