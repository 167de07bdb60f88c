#pragma once
// Finite unitary rings behind one handle type. Every ring exposes dense ids
// 0..order-1 with zero at id 0, an identity id, and add/neg/mul over ids.

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/core.hpp"
#include "ringlab/gf.hpp"
#include "ringlab/subset_mask.hpp"

namespace ringlab {

enum class Provenance { Zmod, Matrix, DirectSum, Quotient, SubringView, Table };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Zmod: return "Zmod";
    case Provenance::Matrix: return "Matrix";
    case Provenance::DirectSum: return "DirectSum";
    case Provenance::Quotient: return "Quotient";
    case Provenance::SubringView: return "SubringView";
    case Provenance::Table: return "Table";
  }
  return "Unknown";
}

/// Arithmetic backend of a ring. Implementations are immutable.
class RingImpl {
 public:
  virtual ~RingImpl() = default;
  virtual std::uint64_t order() const = 0;
  virtual Id one() const = 0;
  virtual Id add(Id a, Id b) const = 0;
  virtual Id neg(Id a) const = 0;
  virtual Id mul(Id a, Id b) const = 0;
  virtual Provenance provenance() const = 0;
  virtual std::string describe() const = 0;
  /// Constructor-specific unit test (gcd, determinant, ...), when one exists.
  virtual std::optional<bool> fast_is_unit(Id) const { return std::nullopt; }
  /// True when add/mul are already cheaper than a table lookup chain.
  virtual bool cheap_arithmetic() const { return false; }
};

class Ring;

namespace detail {
/// Lazily computed, idempotent per-ring data.
struct RingCache {
  std::once_flag generators_once;
  std::vector<Id> generators;
};
}  // namespace detail

/// Shared, immutable handle to a finite unitary ring.
class Ring {
 public:
  /// Rings of at most this many elements get memoized add/mul tables.
  static constexpr std::uint64_t kMemoLimit = 1024;

  Ring() = default;
  explicit Ring(std::shared_ptr<const RingImpl> impl) : impl_(std::move(impl)), cache_(std::make_shared<detail::RingCache>()) {
    order_ = impl_->order();
    one_ = impl_->one();
    Id x = one_;
    std::uint64_t k = 1;
    while (x != 0) {
      x = impl_->add(x, one_);
      ++k;
    }
    char_ = order_ == 1 ? 1 : k;
    if (order_ == 1) char_ = 1;
    if (!impl_->cheap_arithmetic() && order_ <= kMemoLimit) {
      auto t = std::make_shared<Tables>();
      const std::size_t n = order_;
      t->add.resize(n * n);
      t->mul.resize(n * n);
      t->neg.resize(n);
      for (Id a = 0; a < n; ++a) {
        t->neg[a] = static_cast<std::uint16_t>(impl_->neg(a));
        for (Id b = 0; b < n; ++b) {
          t->add[a * n + b] = static_cast<std::uint16_t>(impl_->add(a, b));
          t->mul[a * n + b] = static_cast<std::uint16_t>(impl_->mul(a, b));
        }
      }
      tables_ = std::move(t);
    }
  }

  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t characteristic() const noexcept { return char_; }
  Id zero() const noexcept { return 0; }
  Id one() const noexcept { return one_; }
  Provenance provenance() const { return impl_->provenance(); }
  std::string describe() const { return impl_->describe(); }
  const RingImpl& impl() const { return *impl_; }
  bool valid() const noexcept { return static_cast<bool>(impl_); }

  template <class T>
  const T* as() const {
    return dynamic_cast<const T*>(impl_.get());
  }

  Id add(Id a, Id b) const {
    if (tables_) return tables_->add[a * order_ + b];
    return impl_->add(a, b);
  }
  Id neg(Id a) const {
    if (tables_) return tables_->neg[a];
    return impl_->neg(a);
  }
  Id sub(Id a, Id b) const { return add(a, neg(b)); }
  Id mul(Id a, Id b) const {
    if (tables_) return tables_->mul[a * order_ + b];
    return impl_->mul(a, b);
  }

  /// k·x by doubling.
  Id times(std::uint64_t k, Id x) const {
    Id acc = 0;
    while (k) {
      if (k & 1) acc = add(acc, x);
      x = add(x, x);
      k >>= 1;
    }
    return acc;
  }

  /// x^e by squaring; x^0 = 1.
  Id pow(Id x, std::uint64_t e) const {
    Id acc = one_;
    while (e) {
      if (e & 1) acc = mul(acc, x);
      x = mul(x, x);
      e >>= 1;
    }
    return acc;
  }

  /// Smallest k >= 1 with k·x = 0.
  std::uint64_t additive_order(Id x) const {
    std::uint64_t best = char_;
    for (auto [p, e] : factorize(char_)) {
      (void)e;
      while (best % p == 0 && times(best / p, x) == 0) best /= p;
    }
    return best;
  }

  detail::RingCache& cache() const { return *cache_; }

 private:
  struct Tables {
    std::vector<std::uint16_t> add, mul, neg;
  };

  std::shared_ptr<const RingImpl> impl_;
  std::shared_ptr<const Tables> tables_;
  std::shared_ptr<detail::RingCache> cache_;
  std::uint64_t order_ = 0;
  std::uint64_t char_ = 0;
  Id one_ = 0;
};

// ---------------------------------------------------------------------------
// Z_n

class ZmodImpl final : public RingImpl {
 public:
  explicit ZmodImpl(std::uint64_t n) : n_(n) {}
  std::uint64_t order() const override { return n_; }
  Id one() const override { return n_ == 1 ? 0 : 1; }
  Id add(Id a, Id b) const override { return static_cast<Id>((std::uint64_t{a} + b) % n_); }
  Id neg(Id a) const override { return a == 0 ? 0 : static_cast<Id>(n_ - a); }
  Id mul(Id a, Id b) const override { return static_cast<Id>(std::uint64_t{a} * b % n_); }
  Provenance provenance() const override { return Provenance::Zmod; }
  std::string describe() const override { return "Z(" + std::to_string(n_) + ")"; }
  std::optional<bool> fast_is_unit(Id a) const override { return n_ == 1 || ringlab::gcd(a, n_) == 1; }
  bool cheap_arithmetic() const override { return true; }
  std::uint64_t modulus() const { return n_; }

 private:
  std::uint64_t n_;
};

inline Ring make_zmod(std::uint64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Z(n) needs n >= 1");
  check_cap(n, "Z(" + std::to_string(n) + ")");
  return Ring(std::make_shared<ZmodImpl>(n));
}

// ---------------------------------------------------------------------------
// M_n(GF(q)). Ids are the entries read row-major as base-q digits, the (0,0)
// entry being the most significant digit.

class MatrixImpl final : public RingImpl {
 public:
  static constexpr unsigned kMaxEntries = 32;
  using Entries = std::array<Id, kMaxEntries>;

  MatrixImpl(unsigned n, GaloisField field) : n_(n), field_(std::move(field)) {
    q_ = field_.order();
    order_ = ipow(q_, std::uint64_t{n_} * n_);
    weights_.resize(n_ * n_);
    std::uint64_t w = 1;
    for (unsigned k = n_ * n_; k-- > 0;) {
      weights_[k] = w;
      w *= q_;
    }
    one_ = 0;
    for (unsigned i = 0; i < n_; ++i) one_ += static_cast<Id>(weights_[i * n_ + i]);
  }

  std::uint64_t order() const override { return order_; }
  Id one() const override { return one_; }
  Provenance provenance() const override { return Provenance::Matrix; }
  std::string describe() const override {
    return n_ == 1 ? field_.name() : "M(" + std::to_string(n_) + "," + field_.name() + ")";
  }

  Id add(Id a, Id b) const override {
    if (q_ == 2) return a ^ b;
    Entries x = decode(a), y = decode(b);
    for (unsigned k = 0; k < n_ * n_; ++k) x[k] = field_.add(x[k], y[k]);
    return encode(x);
  }
  Id neg(Id a) const override {
    if (q_ == 2) return a;
    Entries x = decode(a);
    for (unsigned k = 0; k < n_ * n_; ++k) x[k] = field_.neg(x[k]);
    return encode(x);
  }
  Id mul(Id a, Id b) const override {
    const Entries x = decode(a), y = decode(b);
    Entries z{};
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j) {
        Id acc = 0;
        for (unsigned k = 0; k < n_; ++k) acc = field_.add(acc, field_.mul(x[i * n_ + k], y[k * n_ + j]));
        z[i * n_ + j] = acc;
      }
    return encode(z);
  }
  std::optional<bool> fast_is_unit(Id a) const override { return determinant(a) != 0; }

  unsigned dimension() const noexcept { return n_; }
  const GaloisField& field() const noexcept { return field_; }

  Entries decode(Id a) const {
    Entries e{};
    for (unsigned k = n_ * n_; k-- > 0;) {
      e[k] = static_cast<Id>(a % q_);
      a = static_cast<Id>(a / q_);
    }
    return e;
  }
  Id encode(const Entries& e) const {
    std::uint64_t id = 0;
    for (unsigned k = 0; k < n_ * n_; ++k) id = id * q_ + e[k];
    return static_cast<Id>(id);
  }
  /// Entries as a row-major vector.
  std::vector<Id> entries(Id a) const {
    const auto e = decode(a);
    return std::vector<Id>(e.begin(), e.begin() + n_ * n_);
  }
  Id from_entries(const std::vector<Id>& v) const {
    Entries e{};
    for (unsigned k = 0; k < n_ * n_; ++k) e[k] = v.at(k);
    return encode(e);
  }
  Id entry(Id a, unsigned r, unsigned c) const { return static_cast<Id>((a / weights_[r * n_ + c]) % q_); }

  /// E_rc scaled by s.
  Id unit_matrix(unsigned r, unsigned c, Id s = 1) const { return static_cast<Id>(weights_[r * n_ + c] * s); }
  Id scalar(Id s) const {
    Entries e{};
    for (unsigned i = 0; i < n_; ++i) e[i * n_ + i] = s;
    return encode(e);
  }

  /// Gaussian elimination over the field.
  Id determinant(Id a) const {
    Entries m = decode(a);
    Id det = 1;
    for (unsigned col = 0; col < n_; ++col) {
      unsigned pivot = col;
      while (pivot < n_ && m[pivot * n_ + col] == 0) ++pivot;
      if (pivot == n_) return 0;
      if (pivot != col) {
        for (unsigned c = 0; c < n_; ++c) std::swap(m[pivot * n_ + c], m[col * n_ + c]);
        det = field_.neg(det);
      }
      const Id pv = m[col * n_ + col];
      det = field_.mul(det, pv);
      const Id pinv = field_.inv(pv);
      for (unsigned r = col + 1; r < n_; ++r) {
        const Id f = field_.mul(m[r * n_ + col], pinv);
        if (f == 0) continue;
        for (unsigned c = col; c < n_; ++c)
          m[r * n_ + c] = field_.sub(m[r * n_ + c], field_.mul(f, m[col * n_ + c]));
      }
    }
    return det;
  }

 private:
  unsigned n_;
  GaloisField field_;
  std::uint32_t q_ = 0;
  std::uint64_t order_ = 0;
  std::vector<std::uint64_t> weights_;
  Id one_ = 0;
};

inline Ring make_matrix_ring(unsigned n, const GaloisField& field) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "matrix size must be >= 1");
  auto order = checked_pow(field.order(), std::uint64_t{n} * n);
  if (!order || n * n > MatrixImpl::kMaxEntries)
    throw Error(ErrorKind::CapExceeded, "M(" + std::to_string(n) + "," + field.name() + ") is too large");
  check_cap(*order, "M(" + std::to_string(n) + "," + field.name() + ")");
  return Ring(std::make_shared<MatrixImpl>(n, field));
}

/// GF(q) as a ring: the 1x1 matrix ring, ids identical to the field's.
inline Ring make_field_ring(const GaloisField& field) { return make_matrix_ring(1, field); }

// ---------------------------------------------------------------------------
// Direct sums. Tuple (c_0, ..., c_k-1) has id sum c_i * stride_i with
// stride_0 = 1.

class DirectSumImpl final : public RingImpl {
 public:
  explicit DirectSumImpl(std::vector<Ring> parts) : parts_(std::move(parts)) {
    std::uint64_t stride = 1;
    for (const auto& p : parts_) {
      strides_.push_back(stride);
      stride *= p.order();
    }
    order_ = stride;
    std::vector<Id> ones;
    for (const auto& p : parts_) ones.push_back(p.one());
    one_ = encode(ones);
  }

  std::uint64_t order() const override { return order_; }
  Id one() const override { return one_; }
  Provenance provenance() const override { return Provenance::DirectSum; }
  std::string describe() const override {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? " (+) " : "") + parts_[i].describe();
    return s;
  }
  bool cheap_arithmetic() const override {
    for (const auto& p : parts_)
      if (!p.impl().cheap_arithmetic()) return false;
    return true;
  }

  Id add(Id a, Id b) const override {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) r += strides_[i] * parts_[i].add(component(a, i), component(b, i));
    return static_cast<Id>(r);
  }
  Id neg(Id a) const override {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) r += strides_[i] * parts_[i].neg(component(a, i));
    return static_cast<Id>(r);
  }
  Id mul(Id a, Id b) const override {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) r += strides_[i] * parts_[i].mul(component(a, i), component(b, i));
    return static_cast<Id>(r);
  }
  std::optional<bool> fast_is_unit(Id a) const override {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      auto u = parts_[i].impl().fast_is_unit(component(a, i));
      if (!u) return std::nullopt;
      if (!*u) return false;
    }
    return true;
  }

  const std::vector<Ring>& parts() const noexcept { return parts_; }
  Id component(Id a, std::size_t i) const { return static_cast<Id>((a / strides_[i]) % parts_[i].order()); }
  Id encode(const std::vector<Id>& c) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) r += strides_[i] * c.at(i);
    return static_cast<Id>(r);
  }
  /// Element with x in slot i and zero elsewhere.
  Id inject(std::size_t i, Id x) const { return static_cast<Id>(strides_[i] * x); }

 private:
  std::vector<Ring> parts_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
  Id one_ = 0;
};

inline Ring make_direct_sum(std::vector<Ring> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "direct sum needs at least one component");
  std::uint64_t order = 1;
  for (const auto& p : parts) {
    auto next = checked_mul(order, p.order());
    if (!next) throw Error(ErrorKind::CapExceeded, "direct sum order overflows");
    order = *next;
  }
  check_cap(order, "direct sum");
  return Ring(std::make_shared<DirectSumImpl>(std::move(parts)));
}

// ---------------------------------------------------------------------------
// Structure-constant rings over a product of cyclic groups Z_{n_0} x ... .
// constants[i][j] lists the coordinates of e_i * e_j.

using StructureConstants = std::vector<std::vector<std::vector<std::int64_t>>>;

class TableImpl final : public RingImpl {
 public:
  TableImpl(std::vector<std::uint64_t> shape, StructureConstants c, Id one)
      : shape_(std::move(shape)), c_(std::move(c)), one_(one) {
    std::uint64_t stride = 1;
    for (auto n : shape_) {
      strides_.push_back(stride);
      stride *= n;
    }
    order_ = stride;
  }

  std::uint64_t order() const override { return order_; }
  Id one() const override { return one_; }
  Provenance provenance() const override { return Provenance::Table; }
  std::string describe() const override { return "Table(order " + std::to_string(order_) + ")"; }

  Id add(Id a, Id b) const override {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < shape_.size(); ++i) r += strides_[i] * ((coord(a, i) + coord(b, i)) % shape_[i]);
    return static_cast<Id>(r);
  }
  Id neg(Id a) const override {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < shape_.size(); ++i) r += strides_[i] * ((shape_[i] - coord(a, i)) % shape_[i]);
    return static_cast<Id>(r);
  }
  Id mul(Id a, Id b) const override { return multiply(shape_, strides_, c_, a, b); }

  static Id multiply(const std::vector<std::uint64_t>& shape, const std::vector<std::uint64_t>& strides,
                     const StructureConstants& c, Id a, Id b) {
    const std::size_t k = shape.size();
    std::vector<std::uint64_t> acc(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t ai = (a / strides[i]) % shape[i];
      if (!ai) continue;
      for (std::size_t j = 0; j < k; ++j) {
        const std::uint64_t bj = (b / strides[j]) % shape[j];
        if (!bj) continue;
        for (std::size_t t = 0; t < k; ++t) {
          const std::uint64_t n = shape[t];
          const std::uint64_t ct = static_cast<std::uint64_t>(((c[i][j][t] % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) % static_cast<std::int64_t>(n));
          acc[t] = (acc[t] + (ai * bj % n) * ct) % n;
        }
      }
    }
    std::uint64_t r = 0;
    for (std::size_t t = 0; t < k; ++t) r += strides[t] * acc[t];
    return static_cast<Id>(r);
  }

  const std::vector<std::uint64_t>& shape() const noexcept { return shape_; }

 private:
  std::uint64_t coord(Id a, std::size_t i) const { return (a / strides_[i]) % shape_[i]; }

  std::vector<std::uint64_t> shape_;
  StructureConstants c_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
  Id one_ = 0;
};

/// Validates the product (well-defined on the cyclic factors, associative on
/// basis triples, which suffices for a biadditive product) and locates the
/// identity.
inline Ring make_table_ring(const std::vector<std::uint64_t>& shape, const StructureConstants& c) {
  const std::size_t k = shape.size();
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "empty additive shape");
  std::uint64_t order = 1;
  for (auto n : shape) {
    if (!prime_power(n)) throw Error(ErrorKind::InvalidArgument, "shape entries must be prime powers");
    auto next = checked_mul(order, n);
    if (!next) throw Error(ErrorKind::CapExceeded, "table ring order overflows");
    order = *next;
  }
  check_cap(order, "table ring");
  if (c.size() != k) throw Error(ErrorKind::InvalidArgument, "structure constants have the wrong shape");
  for (const auto& row : c) {
    if (row.size() != k) throw Error(ErrorKind::InvalidArgument, "structure constants have the wrong shape");
    for (const auto& v : row)
      if (v.size() != k) throw Error(ErrorKind::InvalidArgument, "structure constants have the wrong shape");
  }
  auto mod = [](std::int64_t v, std::uint64_t n) {
    const auto sn = static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(((v % sn) + sn) % sn);
  };
  // n_i e_i = 0, so n_i (e_i e_j) and n_j (e_i e_j) must vanish.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < k; ++t) {
        const std::uint64_t ct = mod(c[i][j][t], shape[t]);
        if ((shape[i] % shape[t]) * ct % shape[t] != 0 || (shape[j] % shape[t]) * ct % shape[t] != 0)
          throw Error(ErrorKind::NotDistributive, "product of basis elements " + std::to_string(i) + "," +
                                                      std::to_string(j) + " is not compatible with their additive orders");
      }
  std::vector<std::uint64_t> strides;
  std::uint64_t s = 1;
  for (auto n : shape) {
    strides.push_back(s);
    s *= n;
  }
  std::vector<Id> basis(k);
  for (std::size_t i = 0; i < k; ++i) basis[i] = static_cast<Id>(strides[i]);
  auto mul = [&](Id a, Id b) { return TableImpl::multiply(shape, strides, c, a, b); };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < k; ++t)
        if (mul(mul(basis[i], basis[j]), basis[t]) != mul(basis[i], mul(basis[j], basis[t])))
          throw Error(ErrorKind::NotAssociative, "basis triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                                     std::to_string(t) + ") fails associativity");
  for (std::uint64_t u = 0; u < order; ++u) {
    bool unit = true;
    for (std::size_t i = 0; i < k && unit; ++i)
      unit = mul(static_cast<Id>(u), basis[i]) == basis[i] && mul(basis[i], static_cast<Id>(u)) == basis[i];
    if (unit) return Ring(std::make_shared<TableImpl>(shape, c, static_cast<Id>(u)));
  }
  throw Error(ErrorKind::NotUnital, "no two-sided identity element");
}

}  // namespace ringlab
