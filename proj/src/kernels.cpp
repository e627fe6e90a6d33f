#include "pps/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>

namespace pps::kernels {

DiffWorkspace::DiffWorkspace(int n)
    : n_(n), seen_(((std::size_t{1} << n) + 63) / 64), row_(std::size_t{1} << n) {}

bool DiffWorkspace::is_perm(const FieldCtx& ctx, std::span<const std::uint32_t> values, std::uint32_t eps,
                            std::uint32_t& x1, std::uint32_t& x2) {
  std::uint32_t basis[32];
  for (int k = 0; k < n_; ++k) basis[k] = ctx.mul({eps}, {std::uint32_t{1} << k}).bits;
  std::fill(seen_.begin(), seen_.end(), 0);
  const std::uint32_t size = std::uint32_t{1} << n_;
  row_[0] = 0;
  for (std::uint32_t x = 0; x < size; ++x) {
    if (x != 0) row_[x] = row_[x & (x - 1)] ^ basis[std::countr_zero(x)];
    const std::uint32_t v = values[x ^ eps] ^ values[x] ^ row_[x];
    std::uint64_t& word = seen_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (word & bit) {
      x2 = x;
      for (std::uint32_t y = 0; y < x; ++y)
        if ((values[y ^ eps] ^ values[y] ^ row_[y]) == v) {
          x1 = y;
          break;
        }
      return false;
    }
    word |= bit;
  }
  return true;
}

DiffScan diff_scan_serial(const FieldCtx& ctx, std::span<const std::uint32_t> values) {
  DiffWorkspace ws(ctx.degree());
  DiffScan out;
  for (std::uint32_t eps = 1; eps < ctx.size(); ++eps) {
    if (!ws.is_perm(ctx, values, eps, out.x1, out.x2)) {
      out.eps = eps;
      return out;
    }
  }
  return {};
}

DiffScan diff_scan_parallel(const FieldCtx& ctx, std::span<const std::uint32_t> values, int threads) {
  if (threads <= 0) threads = omp_get_max_threads();
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::atomic<std::uint32_t> first{kNone};
  const auto size = static_cast<std::int64_t>(ctx.size());
#pragma omp parallel num_threads(threads)
  {
    DiffWorkspace ws(ctx.degree());
    std::uint32_t x1 = 0, x2 = 0;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t e = 1; e < size; ++e) {
      const auto eps = static_cast<std::uint32_t>(e);
      if (eps > first.load(std::memory_order_relaxed)) continue;
      if (!ws.is_perm(ctx, values, eps, x1, x2)) {
        std::uint32_t cur = first.load();
        while (eps < cur && !first.compare_exchange_weak(cur, eps)) {
        }
      }
    }
  }
  if (first == kNone) return {};
  // The collision for the winning e is recomputed serially so it does not
  // depend on which thread found it.
  DiffScan out;
  out.eps = first;
  DiffWorkspace ws(ctx.degree());
  ws.is_perm(ctx, values, out.eps, out.x1, out.x2);
  return out;
}

int f2_rank(std::span<const std::uint32_t> vectors) {
  std::uint32_t pivots[32] = {};
  int rank = 0;
  for (std::uint32_t v : vectors) {
    while (v != 0) {
      const int top = 31 - std::countl_zero(v);
      if (pivots[top] == 0) {
        pivots[top] = v;
        ++rank;
        break;
      }
      v ^= pivots[top];
    }
  }
  return rank;
}

bool affine_diff_is_perm(const FieldCtx& ctx, std::span<const std::uint32_t> values, std::uint32_t eps) {
  const int n = ctx.degree();
  std::uint32_t images[32];
  const std::uint32_t base = values[eps] ^ values[0];
  for (int k = 0; k < n; ++k) {
    const std::uint32_t x = std::uint32_t{1} << k;
    images[k] = values[x ^ eps] ^ values[x] ^ base ^ ctx.mul({eps}, {x}).bits;
  }
  return f2_rank({images, static_cast<std::size_t>(n)}) == n;
}

std::uint32_t affine_scan(const FieldCtx& ctx, std::span<const std::uint32_t> values) {
  for (std::uint32_t eps = 1; eps < ctx.size(); ++eps)
    if (!affine_diff_is_perm(ctx, values, eps)) return eps;
  return 0;
}

namespace {

bool scaled_is_perm(const FieldCtx& ctx, std::span<const std::uint32_t> g, std::uint32_t lambda,
                    std::vector<std::uint64_t>& seen) {
  std::fill(seen.begin(), seen.end(), 0);
  for (std::uint32_t y = 0; y < ctx.size(); ++y) {
    const std::uint32_t v = ctx.mul({lambda}, {g[y]}).bits ^ y;
    std::uint64_t& word = seen[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (word & bit) return false;
    word |= bit;
  }
  return true;
}

}  // namespace

std::vector<char> bijective_scalars_serial(const FieldCtx& ctx, std::span<const std::uint32_t> g) {
  std::vector<char> good(ctx.size(), 0);
  std::vector<std::uint64_t> seen((ctx.size() + 63) / 64);
  for (std::uint32_t l = 1; l < ctx.size(); ++l) good[l] = scaled_is_perm(ctx, g, l, seen);
  return good;
}

std::vector<char> bijective_scalars_parallel(const FieldCtx& ctx, std::span<const std::uint32_t> g, int threads) {
  if (threads <= 0) threads = omp_get_max_threads();
  std::vector<char> good(ctx.size(), 0);
  const auto size = static_cast<std::int64_t>(ctx.size());
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint64_t> seen((ctx.size() + 63) / 64);
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t l = 1; l < size; ++l)
      good[static_cast<std::size_t>(l)] = scaled_is_perm(ctx, g, static_cast<std::uint32_t>(l), seen);
  }
  return good;
}

QuadBinomialScanner::QuadBinomialScanner(const FieldCtx& ctx)
    : ctx_(ctx), n_(ctx.degree()), size_(ctx.size()), frob_(static_cast<std::size_t>(n_) * size_) {
  for (std::uint32_t x = 0; x < size_; ++x) {
    std::uint32_t v = x;
    for (int i = 0; i < n_; ++i) {
      frob_[static_cast<std::size_t>(i) * size_ + x] = v;
      v = ctx.square({v}).bits;
    }
  }
}

std::uint32_t QuadBinomialScanner::scan(int i1, int j1, std::uint32_t c1, int i2, int j2, std::uint32_t c2) const {
  std::uint32_t images[32];
  for (std::uint32_t eps = 1; eps < size_; ++eps) {
    // (x+e)^{2^i+2^j} + x^{2^i+2^j} + e^{2^i+2^j} = e^{2^j} x^{2^i} + e^{2^i} x^{2^j}
    const std::uint32_t a1 = ctx_.mul({c1}, {pw(j1, eps)}).bits, b1 = ctx_.mul({c1}, {pw(i1, eps)}).bits;
    const std::uint32_t a2 = ctx_.mul({c2}, {pw(j2, eps)}).bits, b2 = ctx_.mul({c2}, {pw(i2, eps)}).bits;
    for (int k = 0; k < n_; ++k) {
      const std::uint32_t x = std::uint32_t{1} << k;
      images[k] = ctx_.mul({a1}, {pw(i1, x)}).bits ^ ctx_.mul({b1}, {pw(j1, x)}).bits ^
                  ctx_.mul({a2}, {pw(i2, x)}).bits ^ ctx_.mul({b2}, {pw(j2, x)}).bits ^ ctx_.mul({eps}, {x}).bits;
    }
    if (f2_rank({images, static_cast<std::size_t>(n_)}) != n_) return eps;
  }
  return 0;
}

namespace {

inline GaussInt times_i(GaussInt v) { return {-v.im, v.re}; }

inline void butterfly(GaussInt* p, std::size_t stride, bool inverse) {
  const GaussInt v0 = p[0], v1 = p[stride], v2 = p[2 * stride], v3 = p[3 * stride];
  const GaussInt s02 = v0 + v2, d02 = v0 - v2, s13 = v1 + v3;
  GaussInt d13 = times_i(v1 - v3);
  if (inverse) d13 = -d13;
  p[0] = s02 + s13;
  p[stride] = d02 + d13;
  p[2 * stride] = s02 - s13;
  p[3 * stride] = d02 - d13;
}

}  // namespace

void z4_dft_serial(std::span<GaussInt> data, int n, bool inverse) {
  const std::size_t size = data.size();
  for (int j = 0; j < n; ++j) {
    const std::size_t stride = std::size_t{1} << (2 * j);
    for (std::size_t block = 0; block < size; block += 4 * stride)
      for (std::size_t off = 0; off < stride; ++off) butterfly(&data[block + off], stride, inverse);
  }
}

void z4_dft_parallel(std::span<GaussInt> data, int n, bool inverse, int threads) {
  if (threads <= 0) threads = omp_get_max_threads();
  const auto quarter = static_cast<std::int64_t>(data.size() / 4);
  for (int j = 0; j < n; ++j) {
    const std::size_t stride = std::size_t{1} << (2 * j);
    // Butterfly t touches base(t) + {0,1,2,3}*stride with the digit j cleared.
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::int64_t t = 0; t < quarter; ++t) {
      const auto u = static_cast<std::size_t>(t);
      const std::size_t base = (u / stride) * 4 * stride + (u % stride);
      butterfly(&data[base], stride, inverse);
    }
  }
}

}  // namespace pps::kernels
