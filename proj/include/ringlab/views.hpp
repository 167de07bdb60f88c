#pragma once
// Rings derived from a parent: unitary subrings, quotients, and the additive
// p-component decomposition.

#include <algorithm>
#include <utility>
#include <vector>

#include "ringlab/ring.hpp"
#include "ringlab/span.hpp"

namespace ringlab {

/// A unitary subring as a ring of its own. Local ids follow ascending parent
/// ids, so local 0 is the parent's zero. The identity is the parent's.
class SubringViewImpl final : public RingImpl {
 public:
  static constexpr std::uint64_t kDenseIndexLimit = std::uint64_t{1} << 22;

  SubringViewImpl(Ring parent, std::vector<Id> members) : parent_(std::move(parent)), members_(std::move(members)) {
    if (parent_.order() <= kDenseIndexLimit) {
      local_.assign(parent_.order(), 0);
      for (std::size_t i = 0; i < members_.size(); ++i) local_[members_[i]] = static_cast<Id>(i);
    }
    one_ = to_local(parent_.one());
  }

  std::uint64_t order() const override { return members_.size(); }
  Id one() const override { return one_; }
  Provenance provenance() const override { return Provenance::SubringView; }
  std::string describe() const override {
    return "subring of order " + std::to_string(members_.size()) + " in " + parent_.describe();
  }
  Id add(Id a, Id b) const override { return to_local(parent_.add(members_[a], members_[b])); }
  Id neg(Id a) const override { return to_local(parent_.neg(members_[a])); }
  Id mul(Id a, Id b) const override { return to_local(parent_.mul(members_[a], members_[b])); }
  std::optional<bool> fast_is_unit(Id a) const override {
    // A unit of a finite ring has its inverse among its powers, so S* = R* ∩ S.
    return parent_.impl().fast_is_unit(members_[a]);
  }

  const Ring& parent() const noexcept { return parent_; }
  Id to_parent(Id local) const { return members_[local]; }
  Id to_local(Id p) const {
    if (!local_.empty()) return local_[p];
    return static_cast<Id>(std::lower_bound(members_.begin(), members_.end(), p) - members_.begin());
  }
  const std::vector<Id>& members() const noexcept { return members_; }

 private:
  Ring parent_;
  std::vector<Id> members_;
  std::vector<Id> local_;
  Id one_ = 0;
};

inline Ring subring_view(const Ring& parent, const SubsetMask& members) {
  if (members.size() != parent.order()) throw Error(ErrorKind::InvalidArgument, "mask size does not match ring order");
  if (!members.test(parent.one()) || !members.test(0))
    throw Error(ErrorKind::MissingIdentity, "subring mask must contain 0 and the parent's identity");
  if (!is_unitary_subring(parent, members))
    throw Error(ErrorKind::NotClosed, "mask is not closed under addition, negation and multiplication");
  return Ring(std::make_shared<SubringViewImpl>(parent, members.elements()));
}

/// R/I with the smallest id of each coset as its representative; quotient
/// ids follow ascending representatives.
class QuotientImpl final : public RingImpl {
 public:
  QuotientImpl(Ring parent, std::vector<Id> reps, std::vector<Id> projection)
      : parent_(std::move(parent)), reps_(std::move(reps)), proj_(std::move(projection)) {}

  std::uint64_t order() const override { return reps_.size(); }
  Id one() const override { return proj_[parent_.one()]; }
  Provenance provenance() const override { return Provenance::Quotient; }
  std::string describe() const override {
    return parent_.describe() + " / ideal of index " + std::to_string(reps_.size());
  }
  Id add(Id a, Id b) const override { return proj_[parent_.add(reps_[a], reps_[b])]; }
  Id neg(Id a) const override { return proj_[parent_.neg(reps_[a])]; }
  Id mul(Id a, Id b) const override { return proj_[parent_.mul(reps_[a], reps_[b])]; }

  const Ring& parent() const noexcept { return parent_; }
  Id representative(Id q) const { return reps_[q]; }

 private:
  Ring parent_;
  std::vector<Id> reps_;
  std::vector<Id> proj_;
};

struct QuotientResult {
  Ring ring;
  std::vector<Id> projection;  // parent id -> quotient id
};

inline QuotientResult quotient_ring(const Ring& parent, const SubsetMask& ideal) {
  if (!is_ideal(parent, ideal)) throw Error(ErrorKind::NotAnIdeal, "mask is not a two-sided ideal");
  const auto members = ideal.elements();
  constexpr Id kUnset = ~Id{0};
  std::vector<Id> proj(parent.order(), kUnset), reps;
  for (std::uint64_t x = 0; x < parent.order(); ++x) {
    if (proj[x] != kUnset) continue;
    const Id q = static_cast<Id>(reps.size());
    reps.push_back(static_cast<Id>(x));
    for (Id i : members) proj[parent.add(static_cast<Id>(x), i)] = q;
  }
  auto projection = proj;
  return {Ring(std::make_shared<QuotientImpl>(parent, std::move(reps), std::move(proj))), std::move(projection)};
}

/// For each prime p dividing the order, the elements of p-power additive
/// order. These are ideals and the ring is their internal direct sum.
inline std::vector<std::pair<std::uint64_t, SubsetMask>> p_component_decomposition(const Ring& r) {
  std::vector<std::pair<std::uint64_t, SubsetMask>> out;
  for (auto [p, e] : factorize(r.order())) {
    (void)e;
    std::uint64_t pe = 1;
    std::uint64_t c = r.characteristic();
    while (c % p == 0) {
      c /= p;
      pe *= p;
    }
    SubsetMask m(r.order());
    for (std::uint64_t x = 0; x < r.order(); ++x)
      if (r.times(pe, static_cast<Id>(x)) == 0) m.set(static_cast<Id>(x));
    out.emplace_back(p, std::move(m));
  }
  return out;
}

}  // namespace ringlab
