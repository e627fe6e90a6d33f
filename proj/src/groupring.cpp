#include "pps/groupring.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "pps/errors.hpp"
#include "pps/kernels.hpp"

namespace pps {

namespace z4vec {

namespace {
constexpr std::uint32_t kLow = 0x55555555u;
constexpr std::uint32_t kHigh = 0xAAAAAAAAu;
}  // namespace

std::uint32_t add(std::uint32_t x, std::uint32_t y) {
  return ((x ^ y) & kLow) | ((x ^ y ^ ((x & y & kLow) << 1)) & kHigh);
}

std::uint32_t neg(std::uint32_t x) { return x ^ ((x & kLow) << 1); }

int dot(std::uint32_t x, std::uint32_t y) {
  int s = 0;
  for (; x != 0 && y != 0; x >>= 2, y >>= 2) s += static_cast<int>((x & 3) * (y & 3));
  return s & 3;
}

}  // namespace z4vec

GroupCtx GroupCtx::create(const RingCtx& ring) {
  const int n = ring.degree();
  if (n > kMaxGroupRingDegree)
    throw CapacityError("group ring over GR(4," + std::to_string(n) + ") needs 4^" + std::to_string(n) +
                        " entries; the limit is n <= " + std::to_string(kMaxGroupRingDegree));
  auto impl = std::make_shared<Impl>(Impl{ring, {}, {}, {}});
  const std::uint64_t size = ring.size();
  impl->coord.assign(size, 0);
  impl->from_coord.assign(size, 0);
  impl->dual.assign(size, 0);

  // Trace form on the basis e_j = teich(x^j).
  std::vector<std::uint32_t> gram_row(n, 0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const RingElem p = ring.mul(RingCtx::teich({1u << k}), RingCtx::teich({1u << j}));
      gram_row[k] |= static_cast<std::uint32_t>(ring.trace(p)) << (2 * j);
    }

  std::vector<char> hit(size, 0);
  hit[0] = 1;
  for (std::uint64_t c = 1; c < size; ++c) {
    const int j = std::countr_zero(c) / 2;
    const std::uint64_t prev = c - (std::uint64_t{1} << (2 * j));
    const RingElem x = ring.add(ring.from_index(impl->from_coord[prev]), RingCtx::teich({1u << j}));
    const std::uint64_t idx = ring.index(x);
    if (hit[idx]) throw std::logic_error("Teichmuller basis is not a Z_4 basis");
    hit[idx] = 1;
    impl->from_coord[c] = idx;
    impl->coord[idx] = static_cast<std::uint32_t>(c);
    impl->dual[idx] = z4vec::add(impl->dual[impl->from_coord[prev]], gram_row[j]);
  }
  return GroupCtx(std::move(impl));
}

std::uint64_t GroupCtx::add(std::uint64_t x, std::uint64_t y) const {
  return impl_->from_coord[z4vec::add(impl_->coord[x], impl_->coord[y])];
}

std::uint64_t GroupCtx::neg(std::uint64_t x) const { return impl_->from_coord[z4vec::neg(impl_->coord[x])]; }

GroupRingVec::GroupRingVec(GroupCtx group) : group_(std::move(group)), counts_(group_.size(), 0) {}

GroupRingVec::GroupRingVec(GroupCtx group, std::vector<std::int64_t> counts)
    : group_(std::move(group)), counts_(std::move(counts)) {
  if (counts_.size() != group_.size())
    throw DomainError("group ring vector of length " + std::to_string(counts_.size()) + ", expected " +
                      std::to_string(group_.size()));
}

GroupRingVec GroupRingVec::delta(const GroupCtx& group, std::uint64_t idx, std::int64_t weight) {
  GroupRingVec v(group);
  v.at(idx) = weight;
  return v;
}

GroupRingVec GroupRingVec::whole(const GroupCtx& group) {
  return GroupRingVec(group, std::vector<std::int64_t>(group.size(), 1));
}

GroupRingVec GroupRingVec::subgroup_Z(const GroupCtx& group) {
  GroupRingVec v(group);
  for (std::uint64_t b = 0; b < group.field().size(); ++b) v.at(b) = 1;
  return v;
}

GroupRingVec GroupRingVec::teichmuller(const GroupCtx& group) {
  GroupRingVec v(group);
  for (std::uint64_t a = 0; a < group.field().size(); ++a) v.at(a << group.degree()) = 1;
  return v;
}

std::int64_t GroupRingVec::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

std::int64_t GroupRingVec::l1_norm() const {
  std::int64_t s = 0;
  for (auto c : counts_) s += c < 0 ? -c : c;
  return s;
}

std::uint64_t GroupRingVec::support_size() const {
  return static_cast<std::uint64_t>(std::count_if(counts_.begin(), counts_.end(), [](auto c) { return c != 0; }));
}

bool GroupRingVec::is_set() const {
  return std::all_of(counts_.begin(), counts_.end(), [](auto c) { return c == 0 || c == 1; });
}

void GroupRingVec::require_same(const GroupRingVec& other) const {
  if (!group_.same_group(other.group_)) throw DomainError("group ring vectors over different rings");
}

GroupRingVec& GroupRingVec::operator+=(const GroupRingVec& other) {
  require_same(other);
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

GroupRingVec& GroupRingVec::operator-=(const GroupRingVec& other) {
  require_same(other);
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] -= other.counts_[i];
  return *this;
}

GroupRingVec operator*(std::int64_t k, GroupRingVec a) {
  for (auto& c : a.counts_) c *= k;
  return a;
}

GroupRingVec involute(const GroupRingVec& a) {
  GroupRingVec out(a.group());
  for (std::uint64_t g = 0; g < a.size(); ++g)
    if (a[g] != 0) out.at(a.group().neg(g)) = a[g];
  return out;
}

GroupRingVec convolve_naive(const GroupRingVec& a, const GroupRingVec& b) {
  if (!a.group().same_group(b.group())) throw DomainError("convolution over different rings");
  const RingCtx& ring = a.group().ring();
  GroupRingVec out(a.group());
  for (std::uint64_t h = 0; h < a.size(); ++h) {
    if (a[h] == 0) continue;
    const RingElem x = ring.from_index(h);
    for (std::uint64_t g = 0; g < b.size(); ++g) {
      if (b[g] == 0) continue;
      out.at(ring.index(ring.add(x, ring.from_index(g)))) += a[h] * b[g];
    }
  }
  return out;
}

namespace {

void dft(std::vector<GaussInt>& data, int n, bool inverse, int threads) {
  if (threads == 1)
    kernels::z4_dft_serial(data, n, inverse);
  else
    kernels::z4_dft_parallel(data, n, inverse, threads);
}

bool transform_is_exact(const GroupRingVec& a, const GroupRingVec& b) {
  const __int128 bound = static_cast<__int128>(a.size()) * a.l1_norm() * b.l1_norm();
  return bound < (static_cast<__int128>(1) << 62);
}

}  // namespace

SpectrumVec char_transform(const GroupRingVec& a, int threads) {
  const GroupCtx& g = a.group();
  std::vector<GaussInt> data(a.size());
  for (std::uint64_t x = 0; x < a.size(); ++x) data[g.coord(x)] = {a[x], 0};
  dft(data, g.degree(), false, threads);
  SpectrumVec s{g, std::vector<GaussInt>(a.size())};
  for (std::uint64_t idx = 0; idx < a.size(); ++idx) s.values[idx] = data[g.dual_coord(idx)];
  return s;
}

SpectrumVec char_transform_naive(const GroupRingVec& a) {
  const GroupCtx& g = a.group();
  const RingCtx& ring = g.ring();
  SpectrumVec s{g, std::vector<GaussInt>(a.size())};
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    const RingElem c = ring.from_index(i);
    GaussInt sum;
    for (std::uint64_t x = 0; x < a.size(); ++x)
      if (a[x] != 0) sum += GaussInt{a[x], 0} * ring.character(c, ring.from_index(x));
    s.values[i] = sum;
  }
  return s;
}

GroupRingVec inverse_transform(const SpectrumVec& s, int threads) {
  const GroupCtx& g = s.group;
  if (s.values.size() != g.size()) throw DomainError("spectrum has the wrong length");
  std::vector<GaussInt> data(g.size());
  for (std::uint64_t idx = 0; idx < g.size(); ++idx) data[g.dual_coord(idx)] = s.values[idx];
  dft(data, g.degree(), true, threads);
  const auto scale = static_cast<std::int64_t>(g.size());
  GroupRingVec out(g);
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    const GaussInt v = data[g.coord(x)];
    if (v.im != 0 || v.re % scale != 0)
      throw DomainError("spectrum is not in the image lattice: coefficient at index " + std::to_string(x) + " is " +
                        v.str() + "/" + std::to_string(scale));
    out.at(x) = v.re / scale;
  }
  return out;
}

std::int64_t identity_coefficient(const SpectrumVec& s) {
  GaussInt sum;
  for (const GaussInt& v : s.values) sum += v;
  const auto scale = static_cast<std::int64_t>(s.values.size());
  if (sum.im != 0 || sum.re % scale != 0)
    throw DomainError("character sum " + sum.str() + " is not divisible by |G|");
  return sum.re / scale;
}

GroupRingVec convolve(const GroupRingVec& a, const GroupRingVec& b, int threads) {
  if (!a.group().same_group(b.group())) throw DomainError("convolution over different rings");
  if (!transform_is_exact(a, b)) return convolve_naive(a, b);
  SpectrumVec sa = char_transform(a, threads);
  const SpectrumVec sb = char_transform(b, threads);
  for (std::size_t i = 0; i < sa.values.size(); ++i) sa.values[i] *= sb.values[i];
  return inverse_transform(sa, threads);
}

GroupRingVec build_Df(const GroupCtx& group, const SparsePoly& f) {
  if (!group.field().same_field(f.field())) throw DomainError("D_f: function and ring use different fields");
  const FieldCtx& F = group.field();
  const auto values = f.value_table();
  GroupRingVec d(group);
  for (std::uint32_t x = 0; x < F.size(); ++x)
    d.at(group.ring().index({{x}, F.sqrt({values[x]})})) = 1;
  return d;
}

RdsReport verify_rds(const GroupRingVec& d, int threads) {
  const GroupCtx& g = d.group();
  const GroupRingVec c = convolve(d, involute(d), threads);
  const auto order = static_cast<std::int64_t>(g.field().size());
  RdsReport r;
  for (std::uint64_t x = 0; x < c.size(); ++x) {
    const std::int64_t expect = x == 0 ? order : (g.in_Z(x) ? 0 : 1);
    if (c[x] != expect) {
      if (r.violations.size() < 10) r.violations.push_back({x, expect, c[x]});
      ++r.violation_count;
    }
  }
  r.ok = r.violation_count == 0;
  return r;
}

TeichmullerReport teichmuller_lemma(const GroupCtx& group, int threads) {
  const GroupRingVec t = GroupRingVec::teichmuller(group);
  TeichmullerReport rep;
  rep.difference_part = verify_rds(t, threads).ok;
  const GroupRingVec sq = convolve(t, t, threads);
  bool ok = true;
  std::uint64_t twos = 0;
  for (std::uint64_t x = 0; x < sq.size() && ok; ++x) {
    if (group.in_Z(x))
      ok = sq[x] == 1;
    else if (sq[x] == 2)
      ++twos;
    else
      ok = sq[x] == 0;
  }
  const std::uint64_t outside = group.size() - group.field().size();
  rep.square_part = ok && 2 * twos == outside;
  return rep;
}

}  // namespace pps
