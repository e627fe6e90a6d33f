#include "pps/scheme.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <omp.h>

#include "pps/errors.hpp"

namespace pps {

namespace {

constexpr std::uint8_t kUnlabeled = 0xFF;

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

// b of the closed forms.
std::int64_t b_of(int n) { return n % 2 == 1 ? pow2((n - 1) / 2) : pow2((n - 2) / 2); }

GaussInt gi(std::int64_t re, std::int64_t im = 0) { return {re, im}; }

std::array<std::uint64_t, kSlots> to_sizes(const GaussIntMatrix& m) {
  std::array<std::uint64_t, kSlots> s{};
  for (int c = 0; c < kSlots; ++c) s[c] = static_cast<std::uint64_t>(m(0, c).re);
  return s;
}

std::vector<int> nonempty_of(const std::array<std::uint64_t, kSlots>& sizes) {
  std::vector<int> out;
  for (int i = 0; i < kSlots; ++i)
    if (sizes[i] != 0) out.push_back(i);
  return out;
}

int team_size(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

std::array<std::uint64_t, kSlots> Partition6::sizes() const {
  std::array<std::uint64_t, kSlots> s{};
  for (int i = 0; i < kSlots; ++i) s[i] = classes[i].support_size();
  return s;
}

std::vector<int> Partition6::nonempty() const { return nonempty_of(sizes()); }

std::vector<int> DualPartition::nonempty() const { return nonempty_of(sizes); }

SparsePoly vanish_at_zero(const SparsePoly& f) {
  const FieldElem c = f.eval(f.field().zero());
  if (c.is_zero()) return f;
  return f + SparsePoly(f.field(), {{0, c}});
}

Partition6 build_partition(const GroupRingVec& d, int threads) {
  const GroupCtx& g = d.group();
  if (!d.is_set() || d[0] != 1)
    throw DomainError("D must be a set containing 0 (shift f by the constant f(0))");
  const RdsReport rds = verify_rds(d, threads);
  if (!rds.ok)
    throw DomainError("D is not a relative difference set (" + std::to_string(rds.violation_count) +
                      " coefficients of D D^(-1) are wrong); the function is not pseudo-planar");

  std::vector<std::uint8_t> label(g.size(), kUnlabeled);
  auto mark = [&](std::uint64_t x, std::uint8_t slot) {
    if (label[x] != kUnlabeled)
      throw StructureError("classes S_" + std::to_string(label[x]) + " and S_" + std::to_string(slot) +
                           " overlap at ring index " + std::to_string(x));
    label[x] = slot;
  };
  mark(0, 0);
  for (std::uint64_t x = 1; x < g.size(); ++x)
    if (d[x] != 0) mark(x, 1);
  for (std::uint64_t x = 1; x < g.size(); ++x)
    if (d[x] != 0) mark(g.neg(x), 2);
  for (std::uint64_t x = 1; x < g.field().size(); ++x) mark(x, 3);

  const GroupRingVec dd = convolve(d, d, threads);
  for (std::uint64_t x = 0; x < g.size(); ++x)
    if (label[x] == kUnlabeled) label[x] = dd[x] > 0 ? 4 : 5;

  std::vector<GroupRingVec> classes(kSlots, GroupRingVec(g));
  for (std::uint64_t x = 0; x < g.size(); ++x) classes[label[x]].at(x) = 1;
  return Partition6{g, std::move(classes), std::move(label)};
}

std::vector<SpectrumVec> class_spectra(const Partition6& p, int threads) {
  std::vector<SpectrumVec> out;
  out.reserve(kSlots);
  for (const auto& c : p.classes) out.push_back(char_transform(c, threads));
  return out;
}

SchurResult verify_schur(const Partition6& p, int threads) {
  const auto spectra = class_spectra(p, threads);
  const auto sizes = p.sizes();
  const std::uint64_t size = p.group.size();
  std::array<std::optional<SchurWitness>, kSlots * kSlots> found;
  SchurResult res;

  const int team = team_size(threads);
#pragma omp parallel for schedule(dynamic) num_threads(team) if (team > 1)
  for (int t = 0; t < kSlots * kSlots; ++t) {
    const int i = t / kSlots, j = t % kSlots;
    if (sizes[i] == 0 || sizes[j] == 0) continue;
    SpectrumVec prod = spectra[i];
    for (std::uint64_t a = 0; a < size; ++a) prod.values[a] *= spectra[j].values[a];
    const GroupRingVec c = inverse_transform(prod, 1);
    std::array<std::uint64_t, kSlots> first;
    first.fill(size);
    for (std::uint64_t x = 0; x < size; ++x) {
      const int k = p.label[x];
      if (first[k] == size) {
        first[k] = x;
        res.p[i][j][k] = c[x];
      } else if (c[x] != res.p[i][j][k]) {
        found[t] = SchurWitness{i, j, k, first[k], x, res.p[i][j][k], c[x]};
        break;
      }
    }
  }

  for (const auto& w : found)
    if (w) {
      res.witness = w;
      return res;
    }
  res.ok = true;
  return res;
}

LemmaReport lemma_check(const Partition6& p, int threads) {
  const GroupCtx& g = p.group;
  const int n = g.degree();
  const auto& S = p.classes;
  const std::int64_t q1 = pow2(n) - 1;
  LemmaReport r;

  const GroupRingVec diff = convolve(S[1], involute(S[1]), threads);
  r.difference_identity = diff == q1 * S[0] + S[4] + S[5];

  const GroupRingVec sq = convolve(S[1], S[1], threads);
  bool mult = true;
  std::int64_t off = 0;
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    if (p.label[x] == 3) {
      mult = mult && sq[x] == 1;
    } else {
      mult = mult && (sq[x] == 0 || sq[x] == 2);
      off += sq[x];
    }
  }
  r.square_multiplicities = mult;
  r.multiplicity_sum = off == 2 * q1 * (pow2(n - 1) - 1);
  const GroupRingVec expect = n % 2 == 1 ? S[3] + 2 * S[4] : S[3] + 2 * S[2] + 2 * S[4];
  r.square_identity = sq == expect;
  return r;
}

DualPartition dual_partition(const Partition6& p, const std::vector<SpectrumVec>& spectra) {
  const int n = p.group.degree();
  const std::uint64_t size = p.group.size();
  const GaussIntMatrix closed = closed_form_P(n);

  DualPartition dual;
  dual.slot.assign(size, 0);
  std::array<std::uint64_t, kSlots> rep;
  rep.fill(size);
  for (std::uint64_t a = 0; a < size; ++a) {
    int slot = 0;
    if (a != 0) {
      const GaussInt v = spectra[1].values[a];
      slot = -1;
      for (int j = 1; j < kSlots; ++j)
        if (closed(j, 1) == v) slot = j;
      if (slot < 0)
        throw StructureError("character index " + std::to_string(a) + " has chi(S_1) = " + v.str() +
                             ", which is none of the six dual class values");
    }
    dual.slot[a] = static_cast<std::uint8_t>(slot);
    ++dual.sizes[slot];
    if (rep[slot] == size) {
      rep[slot] = a;
      continue;
    }
    for (int i = 0; i < kSlots; ++i)
      if (spectra[i].values[a] != spectra[i].values[rep[slot]])
        throw StructureError("characters " + std::to_string(rep[slot]) + " and " + std::to_string(a) + " share E_" +
                             std::to_string(slot) + " but differ on S_" + std::to_string(i) + ": " +
                             spectra[i].values[rep[slot]].str() + " vs " + spectra[i].values[a].str());
  }
  if (n >= 3)
    for (int j = 0; j < kSlots; ++j)
      if (dual.sizes[j] == 0) throw StructureError("dual class E_" + std::to_string(j) + " is empty");
  return dual;
}

GaussIntMatrix eigen_P(const Partition6& p, const DualPartition& dual, const std::vector<SpectrumVec>& spectra) {
  const auto rows = dual.nonempty();
  const auto cols = p.nonempty();
  const std::uint64_t size = p.group.size();
  GaussIntMatrix P(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::uint64_t a = 0;
    while (a < size && dual.slot[a] != rows[r]) ++a;
    for (std::size_t c = 0; c < cols.size(); ++c) P(r, c) = spectra[cols[c]].values[a];
  }
  return P;
}

GaussIntMatrix closed_form_P(int n) {
  if (n < 1) throw DomainError("closed forms need n >= 1");
  const std::int64_t b = b_of(n), b2 = b * b, b4 = b2 * b2;
  GaussIntMatrix P(kSlots, kSlots);
  auto row = [&](int j, std::array<GaussInt, kSlots> v) {
    for (int i = 0; i < kSlots; ++i) P(j, i) = v[i];
  };
  if (n % 2 == 1) {
    const GaussInt one = gi(1);
    row(0, {one, gi(2 * b2 - 1), gi(2 * b2 - 1), gi(2 * b2 - 1), gi(2 * b4 - 3 * b2 + 1), gi(2 * b4 - 3 * b2 + 1)});
    row(1, {one, gi(-1), gi(-1), gi(2 * b2 - 1), gi(1 - b2), gi(1 - b2)});
    const GaussInt lo = gi(1 - b), hi = gi(1 + b), pb = gi(1, b), mb = gi(1, -b);
    row(2, {one, gi(b - 1, b), gi(b - 1, -b), gi(-1), lo * mb, lo * pb});
    row(3, {one, gi(b - 1, -b), gi(b - 1, b), gi(-1), lo * pb, lo * mb});
    row(4, {one, gi(-1 - b, b), gi(-1 - b, -b), gi(-1), hi * mb, hi * pb});
    row(5, {one, gi(-1 - b, -b), gi(-1 - b, b), gi(-1), hi * pb, hi * mb});
  } else {
    const GaussInt one = gi(1);
    row(0, {one, gi(4 * b2 - 1), gi(4 * b2 - 1), gi(4 * b2 - 1), gi(8 * b4 - 10 * b2 + 2), gi(8 * b4 - 2 * b2)});
    row(1, {one, gi(-1), gi(-1), gi(4 * b2 - 1), gi(2 - 2 * b2), gi(-2 * b2)});
    row(2, {one, gi(2 * b - 1), gi(2 * b - 1), gi(-1), gi(2 * b2 - 4 * b + 2), gi(-2 * b2)});
    row(3, {one, gi(-2 * b - 1), gi(-2 * b - 1), gi(-1), gi(2 * b2 + 4 * b + 2), gi(-2 * b2)});
    row(4, {one, gi(-1, 2 * b), gi(-1, -2 * b), gi(-1), gi(2 - 2 * b2), gi(2 * b2)});
    row(5, {one, gi(-1, -2 * b), gi(-1, 2 * b), gi(-1), gi(2 - 2 * b2), gi(2 * b2)});
  }
  return P;
}

GaussRatMatrix closed_form_Q(int n) {
  if (n < 1) throw DomainError("closed forms need n >= 1");
  const std::int64_t b = b_of(n), b2 = b * b, b3 = b2 * b;
  GaussRatMatrix Q(kSlots, kSlots);
  auto row = [&](int j, std::array<GaussRat, kSlots> v) {
    for (int i = 0; i < kSlots; ++i) Q(j, i) = v[i];
  };
  const GaussRat one(gi(1));
  if (n % 2 == 1) {
    // (b/2) z
    auto h = [b](GaussInt z) { return GaussRat(gi(b) * z, 2); };
    const GaussRat m = gi(2 * b2 - 1);
    row(0, {one, m, h(gi(2 * b3 + 2 * b2 - b - 1)), h(gi(2 * b3 + 2 * b2 - b - 1)), h(gi(2 * b3 - 2 * b2 - b + 1)),
            h(gi(2 * b3 - 2 * b2 - b + 1))});
    row(1, {one, gi(-1), h(gi(b2 - 1, -(b2 + b))), h(gi(b2 - 1, b2 + b)), h(gi(1 - b2, -(b2 - b))),
            h(gi(1 - b2, b2 - b))});
    row(2, {one, gi(-1), h(gi(b2 - 1, b2 + b)), h(gi(b2 - 1, -(b2 + b))), h(gi(1 - b2, b2 - b)),
            h(gi(1 - b2, -(b2 - b)))});
    row(3, {one, m, h(gi(-(1 + b))), h(gi(-(1 + b))), h(gi(1 - b)), h(gi(1 - b))});
    row(4, {one, gi(-1), h(gi(-1, -b)), h(gi(-1, b)), h(gi(1, b)), h(gi(1, -b))});
    row(5, {one, gi(-1), h(gi(-1, b)), h(gi(-1, -b)), h(gi(1, -b)), h(gi(1, b))});
  } else {
    const GaussRat m = gi(4 * b2 - 1);
    row(0, {one, m, gi(b * (4 * b3 + 4 * b2 - b - 1)), gi(b * (4 * b3 - 4 * b2 - b + 1)), gi(b2 * (4 * b2 - 1)),
            gi(b2 * (4 * b2 - 1))});
    row(1, {one, gi(-1), gi(b * (2 * b2 + b - 1)), gi(-b * (2 * b2 - b - 1)), gi(-b2, -2 * b3), gi(-b2, 2 * b3)});
    row(2, {one, gi(-1), gi(b * (2 * b2 + b - 1)), gi(-b * (2 * b2 - b - 1)), gi(-b2, 2 * b3), gi(-b2, -2 * b3)});
    row(3, {one, m, gi(-b * (1 + b)), gi(-b * (b - 1)), gi(-b2), gi(-b2)});
    row(4, {one, gi(-1), gi(b * (b - 1)), gi(b * (1 + b)), gi(-b2), gi(-b2)});
    row(5, {one, gi(-1), gi(-b * (1 + b)), gi(-b * (b - 1)), gi(b2), gi(b2)});
  }
  return Q;
}

std::array<std::uint64_t, kSlots> closed_form_class_sizes(int n) { return to_sizes(closed_form_P(n)); }

std::array<std::uint64_t, kSlots> closed_form_dual_sizes(int n) {
  const GaussRatMatrix Q = closed_form_Q(n);
  std::array<std::uint64_t, kSlots> s{};
  for (int j = 0; j < kSlots; ++j) {
    if (!Q(0, j).is_integral() || Q(0, j).num().im != 0) throw std::logic_error("non-integral dual size");
    s[j] = static_cast<std::uint64_t>(Q(0, j).num().re);
  }
  return s;
}

FusionResult bm_fuse(const GaussIntMatrix& P, const std::vector<std::vector<int>>& lambda) {
  const std::size_t cols = P.cols();
  std::vector<int> seen(cols, 0);
  for (const auto& block : lambda)
    for (int c : block) {
      if (c < 0 || static_cast<std::size_t>(c) >= cols) throw DomainError("column " + std::to_string(c) + " out of range");
      if (seen[c]++) throw DomainError("column " + std::to_string(c) + " appears in two blocks");
    }
  if (std::count(seen.begin(), seen.end(), 0) != 0) throw DomainError("column partition does not cover every column");
  if (lambda.empty() || lambda[0] != std::vector<int>{0}) throw DomainError("the first column block must be {0}");

  FusionResult res;
  std::vector<std::vector<GaussInt>> sigs;
  for (std::size_t r = 0; r < P.rows(); ++r) {
    std::vector<GaussInt> sig;
    for (const auto& block : lambda) {
      GaussInt s;
      for (int c : block) s += P(r, static_cast<std::size_t>(c));
      sig.push_back(s);
    }
    const auto it = std::find(sigs.begin(), sigs.end(), sig);
    if (it == sigs.end()) {
      sigs.push_back(sig);
      res.row_blocks.push_back({static_cast<int>(r)});
    } else {
      res.row_blocks[static_cast<std::size_t>(it - sigs.begin())].push_back(static_cast<int>(r));
    }
  }
  if (res.row_blocks[0].size() != 1) {
    res.refusal = "row " + std::to_string(res.row_blocks[0][1]) + " has the same block row sums as row 0";
    return res;
  }
  if (sigs.size() != lambda.size()) {
    res.refusal = "rows fall into " + std::to_string(sigs.size()) + " block-sum classes for " +
                  std::to_string(lambda.size()) + " column blocks";
    return res;
  }
  res.fused = GaussIntMatrix(sigs.size(), lambda.size());
  for (std::size_t i = 0; i < sigs.size(); ++i)
    for (std::size_t j = 0; j < lambda.size(); ++j) res.fused(i, j) = sigs[i][j];
  res.ok = true;
  return res;
}

GaussIntMatrix expected_P(int n) {
  const GaussIntMatrix full = closed_form_P(n);
  if (n >= 3) return full;
  const auto m = closed_form_dual_sizes(n);
  const auto k = closed_form_class_sizes(n);
  const auto rows = nonempty_of(m);
  GaussIntMatrix sub(rows.size(), kSlots);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < kSlots; ++c) sub(r, c) = full(static_cast<std::size_t>(rows[r]), c);

  // Each nonempty column opens a block; an empty one joins the next
  // nonempty column to its right, or the last block when none is left.
  std::vector<std::vector<int>> lambda;
  std::vector<int> pending;
  for (int c = 0; c < kSlots; ++c) {
    pending.push_back(c);
    if (k[c] != 0) {
      lambda.push_back(pending);
      pending.clear();
    }
  }
  for (int c : pending) lambda.back().push_back(c);

  const FusionResult fr = bm_fuse(sub, lambda);
  if (!fr.ok) throw std::logic_error("degenerate fusion refused: " + fr.refusal);
  return fr.fused;
}

bool SchemeReport::valid() const {
  return schur.ok && lemmas.ok() && pq_identity && matches_closed_P && matches_closed_Q.value_or(true);
}

SchemeReport build_scheme(const SparsePoly& f_in, int threads) {
  const SparsePoly f = vanish_at_zero(f_in);
  const int n = f.field().degree();
  const GroupCtx g = GroupCtx::create(f.field());
  Partition6 part = build_partition(build_Df(g, f), threads);
  const auto spectra = class_spectra(part, threads);
  DualPartition dual = dual_partition(part, spectra);
  GaussIntMatrix P = eigen_P(part, dual, spectra);
  const auto scale = static_cast<std::int64_t>(g.size());
  GaussRatMatrix Q = scaled_inverse(P, scale);

  GaussRatMatrix ident(P.rows(), P.rows(), GaussRat(gi(0)));
  for (std::size_t i = 0; i < P.rows(); ++i) ident(i, i) = GaussRat(gi(scale));

  SchemeReport rep{std::move(part), f, {}, {}, std::move(dual), std::move(P), std::move(Q), 0, false, false, std::nullopt};
  rep.schur = verify_schur(rep.partition, threads);
  rep.lemmas = lemma_check(rep.partition, threads);
  rep.class_count = static_cast<int>(rep.partition.nonempty().size()) - 1;
  rep.pq_identity = multiply(to_rational(rep.P), rep.Q) == ident;
  rep.matches_closed_P = rep.P == expected_P(n);
  if (n >= 3) rep.matches_closed_Q = rep.Q == closed_form_Q(n);
  return rep;
}

Spectrum raw_spectrum(const SparsePoly& f, int threads) {
  const GroupCtx g = GroupCtx::create(f.field());
  const SpectrumVec s = char_transform(build_Df(g, f), threads);
  std::map<GaussInt, std::uint64_t> counts;
  for (const GaussInt& v : s.values) ++counts[v];
  Spectrum out;
  for (const auto& [v, c] : counts) out.push_back({v, c});
  return out;
}

Spectrum fourier_spectrum(const SparsePoly& f, int threads) {
  if (!is_pseudoplanar(f, threads))
    throw DomainError(f.str() + " is not pseudo-planar; its character values are unconstrained (use raw mode)");
  return raw_spectrum(vanish_at_zero(f), threads);
}

Spectrum closed_form_spectrum(int n) {
  if (n < 1) throw DomainError("closed forms need n >= 1");
  const std::int64_t b = b_of(n), b2 = b * b, b3 = b2 * b;
  std::vector<std::pair<GaussInt, std::int64_t>> rows;
  if (n % 2 == 1) {
    const std::int64_t up = b * (2 * b3 + 2 * b2 - b - 1) / 2, down = b * (2 * b3 - 2 * b2 - b + 1) / 2;
    rows = {{gi(2 * b2), 1},    {gi(0), 2 * b2 - 1}, {gi(b, b), up},
            {gi(b, -b), up},    {gi(-b, b), down},   {gi(-b, -b), down}};
  } else {
    rows = {{gi(4 * b2), 1},
            {gi(0), 4 * b2 - 1},
            {gi(2 * b), b * (4 * b3 + 4 * b2 - b - 1)},
            {gi(-2 * b), b * (4 * b3 - 4 * b2 - b + 1)},
            {gi(0, 2 * b), b2 * (4 * b2 - 1)},
            {gi(0, -2 * b), b2 * (4 * b2 - 1)}};
  }
  Spectrum out;
  for (const auto& [v, c] : rows)
    if (c != 0) out.push_back({v, static_cast<std::uint64_t>(c)});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  return out;
}

}  // namespace pps
