#pragma once

// The Galois ring GR(4,n). An element is stored as its unique Teichmuller
// expansion a + 2b with a, b in T, and T is identified with F_{2^n} through
// reduction mod 2. Sums of Teichmuller elements carry into the 2-adic digit:
// s + t = (s (+) t) + 2 sqrt(st).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "pps/exact.hpp"
#include "pps/gf2n.hpp"

namespace pps {

struct RingElem {
  FieldElem a;  // Teichmuller digit
  FieldElem b;  // 2-adic digit

  constexpr auto operator<=>(const RingElem&) const = default;
};

class RingCtx {
 public:
  explicit RingCtx(FieldCtx field) : field_(std::move(field)) {}

  const FieldCtx& field() const { return field_; }
  int degree() const { return field_.degree(); }
  // |R| = 4^n.
  std::uint64_t size() const { return std::uint64_t{1} << (2 * field_.degree()); }

  bool same_ring(const RingCtx& other) const { return field_.same_field(other.field_); }

  RingElem zero() const { return {}; }
  RingElem one() const { return {{1}, {0}}; }
  // k in Z_4 embedded as the pairs (0,0), (1,0), (0,1), (1,1).
  static RingElem from_z4(int k) {
    k = ((k % 4) + 4) % 4;
    return {{static_cast<std::uint32_t>(k & 1)}, {static_cast<std::uint32_t>(k >> 1)}};
  }
  static int to_z4(RingElem x) { return static_cast<int>(x.a.bits + 2 * x.b.bits); }

  static RingElem teich(FieldElem t) { return {t, {0}}; }
  static RingElem two_times(FieldElem t) { return {{0}, t}; }
  static bool in_Z(RingElem x) { return x.a.is_zero(); }

  RingElem add(RingElem x, RingElem y) const {
    return {FieldCtx::add(x.a, y.a),
            FieldCtx::add(FieldCtx::add(x.b, y.b), field_.sqrt(field_.mul(x.a, y.a)))};
  }
  RingElem mul(RingElem x, RingElem y) const {
    return {field_.mul(x.a, y.a), FieldCtx::add(field_.mul(x.a, y.b), field_.mul(x.b, y.a))};
  }
  // -x = 3x.
  RingElem neg(RingElem x) const { return mul(x, from_z4(3)); }
  RingElem sub(RingElem x, RingElem y) const { return add(x, neg(y)); }

  RingElem frobenius(RingElem x) const { return {field_.square(x.a), field_.square(x.b)}; }
  RingElem frobenius(RingElem x, int k) const { return {field_.frob(x.a, k), field_.frob(x.b, k)}; }

  // Tr(x) = sum of the n Frobenius images, an element of Z_4.
  int trace(RingElem x) const;
  // chi_a(x) = i^{Tr(ax)}.
  GaussInt character(RingElem a, RingElem x) const { return GaussInt::i_pow(trace(mul(a, x))); }

  // Dense index enc(a) * 2^n + enc(b).
  std::uint64_t index(RingElem x) const {
    return (static_cast<std::uint64_t>(x.a.bits) << field_.degree()) | x.b.bits;
  }
  RingElem from_index(std::uint64_t idx) const;

  // "aHEX+2*bHEX"; a bare "aHEX" means b = 0.
  std::string format(RingElem x) const;
  RingElem parse(std::string_view literal) const;

 private:
  FieldCtx field_;
};

}  // namespace pps
