#include "doctest.h"

#include <numeric>

#include "pps/errors.hpp"
#include "pps/scheme.hpp"

using namespace pps;

namespace {

GaussIntMatrix row_vector(std::initializer_list<GaussInt> v) {
  GaussIntMatrix m(1, v.size());
  std::size_t c = 0;
  for (GaussInt x : v) m(0, c++) = x;
  return m;
}

GaussIntMatrix row_of(const GaussIntMatrix& m, std::size_t r) {
  GaussIntMatrix out(1, m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) out(0, c) = m(r, c);
  return out;
}

// Two pseudo-planar functions per field, one of them nonlinear for n >= 3.
std::vector<SparsePoly> samples(const FieldCtx& F) {
  switch (F.degree()) {
    case 3: return {SparsePoly::zero(F), SparsePoly::parse(F, "3:1,6:1")};
    case 4: return {SparsePoly::zero(F), SparsePoly::parse(F, "5:1")};
    case 5: return {SparsePoly::zero(F), SparsePoly::parse(F, "17:b,20:c,24:18")};
    case 6:
      for (std::uint32_t c = 1;; ++c)
        if (auto g = SparsePoly::monomial(F, 20, {c}); is_pseudoplanar(g))
          return {construct_binomial1(F, 2, F.pow(F.generator(), 7)), g};
    default: return {SparsePoly::zero(F), SparsePoly::parse(F, "1:1")};
  }
}

PTensor naive_tensor(const Partition6& p) {
  PTensor t{};
  for (int i = 0; i < kSlots; ++i)
    for (int j = 0; j < kSlots; ++j) {
      const auto c = convolve_naive(p.classes[i], p.classes[j]);
      for (int k = 0; k < kSlots; ++k)
        for (std::uint64_t x = 0; x < c.size(); ++x)
          if (p.label[x] == k) {
            t[i][j][k] = c[x];
            break;
          }
    }
  return t;
}

}  // namespace

TEST_CASE("closed-form eigenmatrices") {
  for (int n = 1; n <= 12; ++n) {
    const auto P = closed_form_P(n);
    const auto Q = closed_form_Q(n);
    const std::int64_t size = std::int64_t{1} << (2 * n);
    GaussRatMatrix ident(6, 6, GaussRat(GaussInt{0, 0}));
    for (std::size_t i = 0; i < 6; ++i) ident(i, i) = GaussRat(GaussInt{size, 0});
    CHECK(multiply(to_rational(P), Q) == ident);
    CHECK(scaled_inverse(P, size) == Q);
    const auto k = closed_form_class_sizes(n);
    const auto m = closed_form_dual_sizes(n);
    CHECK(std::accumulate(k.begin(), k.end(), std::uint64_t{0}) == static_cast<std::uint64_t>(size));
    CHECK(std::accumulate(m.begin(), m.end(), std::uint64_t{0}) == static_cast<std::uint64_t>(size));
    const std::uint64_t q1 = (std::uint64_t{1} << n) - 1;
    CHECK(k[1] == q1);
    CHECK(k[3] == q1);
    CHECK(m[1] == q1);
    if (n % 2 == 1) {
      CHECK(k[4] == q1 * ((std::uint64_t{1} << (n - 1)) - 1));
      CHECK(k[5] == k[4]);
    } else if (n >= 2) {
      CHECK(k[4] == 2 * q1 * ((std::uint64_t{1} << (n - 2)) - 1));
      CHECK(k[5] == (std::uint64_t{1} << (n - 1)) * q1);
      CHECK(m[2] - m[3] == (std::uint64_t{1} << (3 * n / 2)) - (std::uint64_t{1} << (n / 2)));
      CHECK(m[4] == m[5]);
    }
  }
  const auto P3 = closed_form_P(3);
  CHECK(row_of(P3, 0) == row_vector({{1, 0}, {7, 0}, {7, 0}, {7, 0}, {21, 0}, {21, 0}}));
  CHECK(row_of(P3, 2) == row_vector({{1, 0}, {1, 2}, {1, -2}, {-1, 0}, {-1, 2}, {-1, -2}}));
  CHECK(row_of(closed_form_P(4), 0) == row_vector({{1, 0}, {15, 0}, {15, 0}, {15, 0}, {90, 0}, {120, 0}}));
  const auto Q3 = closed_form_Q(3);
  const std::int64_t q3[] = {1, 7, -3, -3, -1, -1};
  for (std::size_t c = 0; c < 6; ++c) CHECK(Q3(3, c) == GaussRat(GaussInt{q3[c], 0}));
  CHECK(closed_form_dual_sizes(4) == std::array<std::uint64_t, 6>{1, 15, 90, 30, 60, 60});
  CHECK(closed_form_dual_sizes(3) == std::array<std::uint64_t, 6>{1, 7, 21, 21, 7, 7});
}

TEST_CASE("closed-form spectra") {
  CHECK(closed_form_spectrum(3) == Spectrum{{{-2, -2}, 7}, {{-2, 2}, 7}, {{0, 0}, 7}, {{2, -2}, 21}, {{2, 2}, 21}, {{8, 0}, 1}});
  CHECK(closed_form_spectrum(4) ==
        Spectrum{{{-4, 0}, 30}, {{0, -4}, 60}, {{0, 0}, 15}, {{0, 4}, 60}, {{4, 0}, 90}, {{16, 0}, 1}});
  for (int n = 1; n <= 12; ++n) {
    std::uint64_t total = 0;
    GaussInt sum;
    for (const auto& e : closed_form_spectrum(n)) {
      total += e.frequency;
      sum += GaussInt{static_cast<std::int64_t>(e.frequency), 0} * e.value;
    }
    CHECK(total == std::uint64_t{1} << (2 * n));
    // sum of chi(D) over all characters is |R| [D]_0 = |R|
    CHECK(sum == GaussInt{std::int64_t{1} << (2 * n), 0});
  }
}

TEST_CASE("partition") {
  auto F3 = FieldCtx::create(3);
  auto g3 = GroupCtx::create(F3);
  auto p = build_partition(build_Df(g3, SparsePoly::zero(F3)));
  CHECK(p.sizes() == std::array<std::uint64_t, 6>{1, 7, 7, 7, 21, 21});
  CHECK(p.classes[2] == involute(p.classes[1]));
  CHECK(p.classes[3] == GroupRingVec::subgroup_Z(g3) - GroupRingVec::delta(g3, 0));
  GroupRingVec sum(g3);
  for (const auto& c : p.classes) sum += c;
  CHECK(sum == GroupRingVec::whole(g3));

  auto F1 = FieldCtx::create(1);
  auto p1 = build_partition(build_Df(GroupCtx::create(F1), SparsePoly::zero(F1)));
  CHECK(p1.sizes() == std::array<std::uint64_t, 6>{1, 1, 1, 1, 0, 0});
  auto F2 = FieldCtx::create(2);
  auto p2 = build_partition(build_Df(GroupCtx::create(F2), SparsePoly::zero(F2)));
  CHECK(p2.sizes() == std::array<std::uint64_t, 6>{1, 3, 3, 3, 0, 6});

  for (int n = 3; n <= 6; ++n) {
    auto F = FieldCtx::create(n);
    for (const auto& f : samples(F)) {
      CHECK(is_pseudoplanar(f));
      CHECK(build_partition(build_Df(GroupCtx::create(F), vanish_at_zero(f))).sizes() == closed_form_class_sizes(n));
    }
  }

  auto F6 = FieldCtx::create(6);
  CHECK_THROWS_AS(build_partition(build_Df(GroupCtx::create(F6), SparsePoly::parse(F6, "5:1,20:1"))), DomainError);
  // Constant term moves D off 0.
  CHECK_THROWS_AS(build_partition(build_Df(g3, SparsePoly::parse(F3, "0:1"))), DomainError);
  CHECK(vanish_at_zero(SparsePoly::parse(F3, "0:1,3:1,6:1")) == SparsePoly::parse(F3, "3:1,6:1"));
}

TEST_CASE("Schur ring axioms") {
  auto F3 = FieldCtx::create(3);
  auto g3 = GroupCtx::create(F3);
  auto p0 = build_partition(build_Df(g3, SparsePoly::zero(F3)));
  auto p1 = build_partition(build_Df(g3, SparsePoly::parse(F3, "3:1,6:1")));
  const auto s0 = verify_schur(p0);
  const auto s1 = verify_schur(p1, 2);
  REQUIRE(s0.ok);
  REQUIRE(s1.ok);
  CHECK(s0.p == s1.p);
  CHECK(s0.p == naive_tensor(p0));
  CHECK(s1.p == naive_tensor(p1));
  CHECK(verify_schur(p1, 1).p == s1.p);
  const auto k = p0.sizes();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      CHECK(s0.p[0][j][i] == (i == j ? 1 : 0));
      std::int64_t row = 0;
      for (int jj = 0; jj < 6; ++jj) row += s0.p[i][jj][j];
      CHECK(row == static_cast<std::int64_t>(k[i]));
    }

  // Move one point of S_4 into S_5.
  auto broken = p0;
  std::uint64_t x = 0;
  while (broken.label[x] != 4) ++x;
  broken.label[x] = 5;
  broken.classes[4].at(x) = 0;
  broken.classes[5].at(x) = 1;
  const auto bad = verify_schur(broken);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
  const auto w = *bad.witness;
  const auto c = convolve_naive(broken.classes[w.i], broken.classes[w.j]);
  CHECK(broken.label[w.g] == w.k);
  CHECK(broken.label[w.h] == w.k);
  CHECK(c[w.g] == w.at_g);
  CHECK(c[w.h] == w.at_h);
  CHECK(w.at_g != w.at_h);
}

TEST_CASE("lemmas on S_1") {
  for (int n = 3; n <= 6; ++n) {
    auto F = FieldCtx::create(n);
    auto g = GroupCtx::create(F);
    for (const auto& f : samples(F)) {
      const auto rep = lemma_check(build_partition(build_Df(g, vanish_at_zero(f))));
      CHECK(rep.difference_identity);
      CHECK(rep.square_multiplicities);
      CHECK(rep.square_identity);
      CHECK(rep.multiplicity_sum);
    }
  }
}

TEST_CASE("dual partition") {
  for (int n = 3; n <= 4; ++n) {
    auto F = FieldCtx::create(n);
    auto g = GroupCtx::create(F);
    const auto p = build_partition(build_Df(g, SparsePoly::zero(F)));
    const auto dual = dual_partition(p, class_spectra(p));
    CHECK(dual.sizes == closed_form_dual_sizes(n));
    for (std::uint64_t a = 0; a < g.size(); ++a) CHECK((dual.slot[a] == 1) == (a != 0 && g.in_Z(a)));
  }
}

TEST_CASE("scheme reports for 3 <= n <= 6") {
  for (int n = 3; n <= 6; ++n) {
    auto F = FieldCtx::create(n);
    for (const auto& f : samples(F)) {
      const auto rep = build_scheme(f, n == 6 ? 2 : 1);
      CHECK(rep.valid());
      CHECK(rep.schur.ok);
      CHECK(rep.pq_identity);
      CHECK(rep.matches_closed_P);
      CHECK(rep.matches_closed_Q == std::optional<bool>(true));
      CHECK(rep.class_count == 5);
      CHECK(rep.P == closed_form_P(n));
      CHECK(rep.dual.sizes == closed_form_dual_sizes(n));
    }
  }
  auto F5 = FieldCtx::create(5);
  CHECK_THROWS_AS(build_scheme(SparsePoly::parse(F5, "3:1")), DomainError);
}

TEST_CASE("results do not depend on the modulus") {
  for (auto [n, m1, m2] : {std::tuple{3, 0xbu, 0xdu}, std::tuple{4, 0x13u, 0x19u}}) {
    auto Fa = FieldCtx::create(n, m1), Fb = FieldCtx::create(n, m2);
    const auto ra = build_scheme(samples(Fa)[1]);
    const auto rb = build_scheme(samples(Fb)[1]);
    CHECK(ra.valid());
    CHECK(rb.valid());
    CHECK(ra.P == rb.P);
    CHECK(ra.Q == rb.Q);
    CHECK(ra.schur.p == rb.schur.p);
    CHECK(fourier_spectrum(samples(Fa)[1]) == fourier_spectrum(samples(Fb)[1]));
  }
}

TEST_CASE("Fourier spectrum") {
  for (int n = 1; n <= 6; ++n) {
    auto F = FieldCtx::create(n);
    for (const auto& f : samples(F)) CHECK(fourier_spectrum(f) == closed_form_spectrum(n));
  }
  auto F4 = FieldCtx::create(4);
  for (std::uint32_t c = 1; c < 16; ++c) {
    const auto f = SparsePoly::monomial(F4, 5, {c});
    if (is_pseudoplanar(f)) CHECK(fourier_spectrum(f) == closed_form_spectrum(4));
  }
  // The constant shift matters for the raw multiset only.
  auto F3 = FieldCtx::create(3);
  const auto shifted = SparsePoly::parse(F3, "0:1,3:1,6:1");
  CHECK(fourier_spectrum(shifted) == closed_form_spectrum(3));
  CHECK(raw_spectrum(shifted) != closed_form_spectrum(3));
  const auto nonpp = SparsePoly::parse(F3, "3:1");
  CHECK_THROWS_AS(fourier_spectrum(nonpp), DomainError);
  std::uint64_t total = 0;
  for (const auto& e : raw_spectrum(nonpp)) total += e.frequency;
  CHECK(total == 64);
}

TEST_CASE("Bannai-Muzychuk fusion") {
  const auto P = closed_form_P(3);
  const auto id = bm_fuse(P, {{0}, {1}, {2}, {3}, {4}, {5}});
  REQUIRE(id.ok);
  CHECK(id.fused == P);

  const auto sym = bm_fuse(P, {{0}, {1, 2}, {3}, {4, 5}});
  REQUIRE(sym.ok);
  CHECK(sym.row_blocks == std::vector<std::vector<int>>{{0}, {1}, {2, 3}, {4, 5}});
  CHECK(sym.fused(2, 1) == GaussInt{2, 0});

  const auto refused = bm_fuse(P, {{0}, {1}, {2}, {3, 4, 5}});
  CHECK_FALSE(refused.ok);
  CHECK_FALSE(refused.refusal.empty());

  CHECK_THROWS_AS(bm_fuse(P, {{0, 1}, {2, 3, 4, 5}}), DomainError);
  CHECK_THROWS_AS(bm_fuse(P, {{0}, {1, 2}, {3}}), DomainError);
}

TEST_CASE("degenerate fields") {
  auto F1 = FieldCtx::create(1);
  const auto r1 = build_scheme(SparsePoly::zero(F1));
  CHECK(r1.class_count == 3);
  CHECK(r1.valid());
  CHECK(r1.P == expected_P(1));
  CHECK(r1.P.rows() == 4);

  auto F2 = FieldCtx::create(2);
  const auto r2 = build_scheme(SparsePoly::zero(F2));
  CHECK(r2.class_count == 4);
  CHECK(r2.valid());
  CHECK(r2.P.rows() == 5);
  // The fused matrix is the closed form with row 3 and column 4 removed.
  const auto full = closed_form_P(2);
  const std::size_t rows[] = {0, 1, 2, 4, 5}, cols[] = {0, 1, 2, 3, 5};
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) CHECK(r2.P(r, c) == full(rows[r], cols[c]));
}
