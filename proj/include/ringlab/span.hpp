#pragma once
// Additive spans and the closure routines built on them: generated subrings,
// generated ideals, subring/ideal membership checks, ring generators.
//
// A span is kept as a mask, its member list and the additive generators that
// were adjoined. Closure under multiplication is checked on those generators
// only: the product is biadditive, so A·g ⊆ A iff b·g ∈ A for every
// additive generator b of A.

#include <vector>

#include "ringlab/ring.hpp"
#include "ringlab/subset_mask.hpp"

namespace ringlab {

class AdditiveSpan {
 public:
  explicit AdditiveSpan(const Ring& r) : ring_(&r), mask_(r.order()) {
    mask_.set(0);
    members_.push_back(0);
  }

  bool contains(Id x) const { return mask_.test(x); }
  const SubsetMask& mask() const noexcept { return mask_; }
  const std::vector<Id>& members() const noexcept { return members_; }
  const std::vector<Id>& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return members_.size(); }

  /// Adjoins v. Returns false if v was already inside. When `limit` is given
  /// and the enlarged span would leave it, stops early and returns false with
  /// escaped() set.
  bool add(Id v, const SubsetMask* limit = nullptr) {
    if (mask_.test(v)) return false;
    basis_.push_back(v);
    const std::size_t old = members_.size();
    Id kv = v;
    while (!mask_.test(kv)) {
      for (std::size_t i = 0; i < old; ++i) {
        const Id x = ring_->add(members_[i], kv);
        if (limit && !limit->test(x)) {
          escaped_ = true;
          return false;
        }
        mask_.set(x);
        members_.push_back(x);
      }
      kv = ring_->add(kv, v);
    }
    return true;
  }

  bool escaped() const noexcept { return escaped_; }

  SubsetMask take_mask() && { return std::move(mask_); }

 private:
  const Ring* ring_;
  SubsetMask mask_;
  std::vector<Id> members_;
  std::vector<Id> basis_;
  bool escaped_ = false;
};

/// Smallest unitary subring containing `seeds` (together with the prime
/// subring). Returns the span so callers can reuse members and basis.
inline AdditiveSpan generate_subring_span(const Ring& r, const std::vector<Id>& seeds) {
  AdditiveSpan span(r);
  span.add(r.one());
  for (Id s : seeds) span.add(s);
  for (std::size_t i = 0; i < span.basis().size(); ++i)
    for (Id g : seeds) {
      const Id x = r.mul(span.basis()[i], g);
      if (!span.contains(x)) span.add(x);
    }
  return span;
}

/// Greedy ring generators: repeatedly adjoin the smallest id outside the
/// subring generated so far. At most log2(order) elements.
inline const std::vector<Id>& ring_generators(const Ring& r) {
  auto& cache = r.cache();
  std::call_once(cache.generators_once, [&] {
    std::vector<Id> gens;
    AdditiveSpan current = generate_subring_span(r, gens);
    for (std::uint64_t x = 0; x < r.order() && current.size() < r.order(); ++x) {
      if (current.contains(static_cast<Id>(x))) continue;
      gens.push_back(static_cast<Id>(x));
      current = generate_subring_span(r, gens);
    }
    cache.generators = std::move(gens);
  });
  return cache.generators;
}

/// Smallest two-sided ideal containing `seeds`.
inline AdditiveSpan generate_ideal_span(const Ring& r, const std::vector<Id>& seeds) {
  const auto& gens = ring_generators(r);
  AdditiveSpan span(r);
  for (Id s : seeds) span.add(s);
  for (std::size_t i = 0; i < span.basis().size(); ++i) {
    const Id b = span.basis()[i];
    for (Id g : gens) {
      const Id left = r.mul(g, b), right = r.mul(b, g);
      if (!span.contains(left)) span.add(left);
      if (!span.contains(right)) span.add(right);
    }
  }
  return span;
}

/// Builds the additive span of the mask's members, failing fast if it leaves
/// the mask. On success the mask is an additive subgroup and `out` holds its
/// span.
inline bool additive_closure_within(const Ring&, const SubsetMask& m, AdditiveSpan& out) {
  if (!m.test(0)) return false;
  bool ok = true;
  m.for_each([&](Id x) {
    if (!ok || out.contains(x)) return;
    out.add(x, &m);
    if (out.escaped()) ok = false;
  });
  return ok && out.size() == m.count();
}

/// Exact subring test: contains 1, additively closed, and closed under
/// products of additive generators.
inline bool is_unitary_subring(const Ring& r, const SubsetMask& m) {
  if (m.size() != r.order() || !m.test(r.one())) return false;
  AdditiveSpan span(r);
  if (!additive_closure_within(r, m, span)) return false;
  for (Id a : span.basis())
    for (Id b : span.basis())
      if (!m.test(r.mul(a, b))) return false;
  return true;
}

/// Exact two-sided ideal test.
inline bool is_ideal(const Ring& r, const SubsetMask& m) {
  if (m.size() != r.order()) return false;
  AdditiveSpan span(r);
  if (!additive_closure_within(r, m, span)) return false;
  for (Id b : span.basis())
    for (Id g : ring_generators(r))
      if (!m.test(r.mul(g, b)) || !m.test(r.mul(b, g))) return false;
  return true;
}

}  // namespace ringlab
