#pragma once

// Hot loops shared by funcs, groupring and search. Every parallel kernel has a
// serial twin that the tests treat as the reference.

#include <cstdint>
#include <span>
#include <vector>

#include "pps/exact.hpp"
#include "pps/gf2n.hpp"

namespace pps::kernels {

// Outcome of scanning the difference maps x -> f(x+e) + f(x) + e*x.
// eps == 0 means every map was a permutation; otherwise eps is the smallest
// failing e and x1 < x2 collide under it.
struct DiffScan {
  std::uint32_t eps = 0;
  std::uint32_t x1 = 0;
  std::uint32_t x2 = 0;

  bool ok() const { return eps == 0; }
  friend bool operator==(const DiffScan&, const DiffScan&) = default;
};

// Per-thread scratch for the direct test: a 2^n-bit seen set and the row of
// products e*x, built incrementally from e*x^k.
class DiffWorkspace {
 public:
  explicit DiffWorkspace(int n);
  // True when the map for eps is a bijection; on failure fills x1 < x2.
  bool is_perm(const FieldCtx& ctx, std::span<const std::uint32_t> values, std::uint32_t eps,
               std::uint32_t& x1, std::uint32_t& x2);

 private:
  int n_;
  std::vector<std::uint64_t> seen_;
  std::vector<std::uint32_t> row_;
};

// Direct test over all e != 0 in ascending order with early exit.
DiffScan diff_scan_serial(const FieldCtx& ctx, std::span<const std::uint32_t> values);
// Same result for any thread count; threads <= 0 uses the OpenMP default.
DiffScan diff_scan_parallel(const FieldCtx& ctx, std::span<const std::uint32_t> values, int threads);

// For f of algebraic degree <= 2 the map minus its value at 0 is F_2-linear,
// so bijectivity is a rank test on the images of the n basis vectors.
bool affine_diff_is_perm(const FieldCtx& ctx, std::span<const std::uint32_t> values, std::uint32_t eps);
// Smallest failing e, or 0. Returns the collision only through diff_scan_*.
std::uint32_t affine_scan(const FieldCtx& ctx, std::span<const std::uint32_t> values);

// Scalars l for which y -> l*g(y) + y is a bijection, as a 0/1 table indexed
// by l (entry 0 unused). With g(y) = (y+1)^t + y^t this decides c x^t for
// every c at once, since the map of c x^t at e is e^2 times the one for
// l = c e^{t-2} after x = e y.
std::vector<char> bijective_scalars_serial(const FieldCtx& ctx, std::span<const std::uint32_t> g);
std::vector<char> bijective_scalars_parallel(const FieldCtx& ctx, std::span<const std::uint32_t> g, int threads);

// Rank test for c1 x^{2^i1+2^j1} + c2 x^{2^i2+2^j2} without a value table.
class QuadBinomialScanner {
 public:
  explicit QuadBinomialScanner(const FieldCtx& ctx);
  // Smallest e whose difference map is singular, or 0.
  std::uint32_t scan(int i1, int j1, std::uint32_t c1, int i2, int j2, std::uint32_t c2) const;

 private:
  std::uint32_t pw(int i, std::uint32_t x) const { return frob_[static_cast<std::size_t>(i) * size_ + x]; }
  FieldCtx ctx_;
  int n_;
  std::uint32_t size_;
  std::vector<std::uint32_t> frob_;  // x^{2^i} at [i * 2^n + x]
};

// Rank over F_2 of a list of n-bit vectors.
int f2_rank(std::span<const std::uint32_t> vectors);

// In-place DFT over Z_4^n: data is indexed by base-4 digit strings packed two
// bits per digit, and the output at w is sum_c data[c] * i^{<w,c>}. The
// inverse uses i^{-<w,c>} and does not divide by 4^n.
void z4_dft_serial(std::span<GaussInt> data, int n, bool inverse);
void z4_dft_parallel(std::span<GaussInt> data, int n, bool inverse, int threads);

}  // namespace pps::kernels
