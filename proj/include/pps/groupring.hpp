#pragma once

// Integer group ring Z[(R,+)] for R = GR(4,n). Vectors are dense over the
// ring index idx = enc(a) 2^n + enc(b). The additive group is Z_4^n in the
// coordinates of the basis teich(x^j), which is what the character transform
// runs on.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pps/exact.hpp"
#include "pps/funcs.hpp"
#include "pps/gr4.hpp"

namespace pps {

inline constexpr int kMaxGroupRingDegree = 10;

// Coordinate tables for one ring; immutable and shared between copies.
class GroupCtx {
 public:
  // Throws CapacityError for n > kMaxGroupRingDegree.
  static GroupCtx create(const RingCtx& ring);
  static GroupCtx create(const FieldCtx& field) { return create(RingCtx(field)); }

  const RingCtx& ring() const { return impl_->ring; }
  const FieldCtx& field() const { return impl_->ring.field(); }
  int degree() const { return impl_->ring.degree(); }
  std::uint64_t size() const { return impl_->ring.size(); }
  bool same_group(const GroupCtx& other) const {
    return impl_ == other.impl_ || impl_->ring.same_ring(other.impl_->ring);
  }

  // Z_4 coordinates of ring element idx, two bits per digit.
  std::uint32_t coord(std::uint64_t idx) const { return impl_->coord[idx]; }
  std::uint64_t from_coord(std::uint32_t c) const { return impl_->from_coord[c]; }
  // w(a)_j = Tr(a teich(x^j)), so chi_a(x) = i^{<w(a), coord(x)>}.
  std::uint32_t dual_coord(std::uint64_t idx) const { return impl_->dual[idx]; }

  std::uint64_t add(std::uint64_t x, std::uint64_t y) const;
  std::uint64_t neg(std::uint64_t x) const;
  // Index of the additive identity and of 2t for t in T.
  std::uint64_t zero_index() const { return 0; }
  bool in_Z(std::uint64_t idx) const { return (idx >> degree()) == 0; }

 private:
  struct Impl {
    RingCtx ring;
    std::vector<std::uint32_t> coord;
    std::vector<std::uint64_t> from_coord;
    std::vector<std::uint32_t> dual;
  };
  explicit GroupCtx(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Packed Z_4^n vector arithmetic (two bits per digit).
namespace z4vec {
std::uint32_t add(std::uint32_t x, std::uint32_t y);
std::uint32_t neg(std::uint32_t x);
int dot(std::uint32_t x, std::uint32_t y);  // in Z_4
}  // namespace z4vec

// Signed counts; set semantics are the 0/1 case.
class GroupRingVec {
 public:
  explicit GroupRingVec(GroupCtx group);
  GroupRingVec(GroupCtx group, std::vector<std::int64_t> counts);
  static GroupRingVec delta(const GroupCtx& group, std::uint64_t idx, std::int64_t weight = 1);
  static GroupRingVec whole(const GroupCtx& group);       // R
  static GroupRingVec subgroup_Z(const GroupCtx& group);  // Z = 2R
  static GroupRingVec teichmuller(const GroupCtx& group); // T

  const GroupCtx& group() const { return group_; }
  std::uint64_t size() const { return counts_.size(); }
  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t operator[](std::uint64_t idx) const { return counts_[idx]; }
  std::int64_t& at(std::uint64_t idx) { return counts_.at(idx); }

  std::int64_t total() const;     // sum of counts = chi_0(A)
  std::int64_t l1_norm() const;
  std::uint64_t support_size() const;
  bool is_set() const;            // all counts in {0, 1}

  GroupRingVec& operator+=(const GroupRingVec& other);
  GroupRingVec& operator-=(const GroupRingVec& other);
  friend GroupRingVec operator+(GroupRingVec a, const GroupRingVec& b) { return a += b; }
  friend GroupRingVec operator-(GroupRingVec a, const GroupRingVec& b) { return a -= b; }
  friend GroupRingVec operator*(std::int64_t k, GroupRingVec a);
  friend bool operator==(const GroupRingVec& a, const GroupRingVec& b) {
    return a.group_.same_group(b.group_) && a.counts_ == b.counts_;
  }

 private:
  void require_same(const GroupRingVec& other) const;
  GroupCtx group_;
  std::vector<std::int64_t> counts_;
};

// chi_a(A) for every a, indexed like GroupRingVec.
struct SpectrumVec {
  GroupCtx group;
  std::vector<GaussInt> values;
};

GroupRingVec involute(const GroupRingVec& a);
// Double loop over supports with ring addition.
GroupRingVec convolve_naive(const GroupRingVec& a, const GroupRingVec& b);
// Through the character transform; falls back to the double loop when the
// exact bound 4^n |A|_1 |B|_1 < 2^62 does not hold.
GroupRingVec convolve(const GroupRingVec& a, const GroupRingVec& b, int threads = 1);

// Butterfly transform; threads == 1 uses the serial kernel.
SpectrumVec char_transform(const GroupRingVec& a, int threads = 1);
// Direct sum over g of A_g i^{Tr(ag)}; O(16^n), for tests.
SpectrumVec char_transform_naive(const GroupRingVec& a);
// A_h = 4^{-n} sum_a chi_a(A) chi_a(-h). Throws DomainError when the result
// is not an integer vector.
GroupRingVec inverse_transform(const SpectrumVec& s, int threads = 1);
// [A]_0 recovered from the spectrum alone.
std::int64_t identity_coefficient(const SpectrumVec& s);

// D_f = {x + 2 sqrt(f(x)) : x in T}.
GroupRingVec build_Df(const GroupCtx& group, const SparsePoly& f);

struct RdsViolation {
  std::uint64_t idx;
  std::int64_t expected;
  std::int64_t actual;
};

struct RdsReport {
  bool ok = false;
  std::uint64_t violation_count = 0;
  std::vector<RdsViolation> violations;  // first 10 by index
};

// D D^{(-1)} == 2^n delta_0 + (R - Z).
RdsReport verify_rds(const GroupRingVec& d, int threads = 1);

// Both parts of the Teichmuller lemma for the ring of the given group.
struct TeichmullerReport {
  bool difference_part = false;  // T T^{(-1)} = 2^n delta_0 + (R - Z)
  bool square_part = false;      // T^2: Z once each, half of R \ Z twice
  bool ok() const { return difference_part && square_part; }
};
TeichmullerReport teichmuller_lemma(const GroupCtx& group, int threads = 1);

}  // namespace pps
