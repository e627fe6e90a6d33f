#include "doctest.h"

#include <random>

#include "pps/errors.hpp"
#include "pps/groupring.hpp"

using namespace pps;

namespace {

GroupRingVec random_vec(const GroupCtx& g, std::mt19937& rng, int support, bool signed_counts) {
  GroupRingVec v(g);
  for (int k = 0; k < support; ++k) {
    const auto c = static_cast<std::int64_t>(rng() % 5);
    v.at(rng() % g.size()) += signed_counts ? c - 2 : c;
  }
  return v;
}

SparsePoly random_quadratic(const FieldCtx& F, std::mt19937& rng) {
  const int n = F.degree();
  std::vector<Term> t;
  for (int k = 0; k < 2; ++k) {
    const int i = static_cast<int>(rng() % n);
    const int j = (i + 1 + static_cast<int>(rng() % (n - 1))) % n;
    t.push_back({(std::uint64_t{1} << i) + (std::uint64_t{1} << j), {static_cast<std::uint32_t>(rng()) & (F.size() - 1)}});
  }
  return SparsePoly(F, t);
}

}  // namespace

TEST_CASE("packed Z_4 vectors") {
  std::mt19937 rng(1);
  for (int t = 0; t < 2000; ++t) {
    const std::uint32_t x = rng() & 0xFFFFF, y = rng() & 0xFFFFF;
    std::uint32_t sum = 0, neg = 0;
    int dot = 0;
    for (int j = 0; j < 10; ++j) {
      const std::uint32_t a = (x >> (2 * j)) & 3, b = (y >> (2 * j)) & 3;
      sum |= ((a + b) & 3) << (2 * j);
      neg |= ((4 - a) & 3) << (2 * j);
      dot += static_cast<int>(a * b);
    }
    CHECK(z4vec::add(x, y) == sum);
    CHECK(z4vec::neg(x) == neg);
    CHECK(z4vec::dot(x, y) == dot % 4);
  }
}

TEST_CASE("coordinates realize ring addition and characters") {
  for (int n = 1; n <= 3; ++n) {
    auto g = GroupCtx::create(FieldCtx::create(n));
    const RingCtx& r = g.ring();
    for (std::uint64_t x = 0; x < g.size(); ++x) {
      CHECK(g.from_coord(g.coord(x)) == x);
      CHECK(g.neg(x) == r.index(r.neg(r.from_index(x))));
      for (std::uint64_t y = 0; y < g.size(); ++y) {
        CHECK(g.add(x, y) == r.index(r.add(r.from_index(x), r.from_index(y))));
        CHECK(r.character(r.from_index(x), r.from_index(y)) ==
              GaussInt::i_pow(z4vec::dot(g.dual_coord(x), g.coord(y))));
      }
    }
  }
  CHECK_THROWS_AS(GroupCtx::create(FieldCtx::create(11)), CapacityError);
}

TEST_CASE("character transform") {
  auto g3 = GroupCtx::create(FieldCtx::create(3));
  auto s = char_transform(GroupRingVec::delta(g3, 0));
  for (auto v : s.values) CHECK(v == GaussInt{1, 0});
  auto sr = char_transform(GroupRingVec::whole(g3));
  CHECK(sr.values[0] == GaussInt{64, 0});
  for (std::size_t i = 1; i < sr.values.size(); ++i) CHECK(sr.values[i].is_zero());

  std::mt19937 rng(2);
  for (int n = 1; n <= 3; ++n) {
    auto g = GroupCtx::create(FieldCtx::create(n));
    for (int rep = 0; rep < 5; ++rep) {
      auto a = random_vec(g, rng, 10, true);
      CHECK(char_transform(a).values == char_transform_naive(a).values);
    }
  }
  for (int n = 2; n <= 6; ++n) {
    auto g = GroupCtx::create(FieldCtx::create(n));
    auto a = random_vec(g, rng, 50, true);
    const auto serial = char_transform(a, 1).values;
    CHECK(char_transform(a, 2).values == serial);
    CHECK(char_transform(a, 0).values == serial);
  }
}

TEST_CASE("inversion formula") {
  std::mt19937 rng(3);
  for (int n = 2; n <= 4; ++n) {
    auto g = GroupCtx::create(FieldCtx::create(n));
    for (int rep = 0; rep < 30; ++rep) {
      auto a = random_vec(g, rng, 1 + rep, rep % 2 == 1);
      const auto s = char_transform(a);
      CHECK(inverse_transform(s) == a);
      CHECK(identity_coefficient(s) == a[0]);
    }
  }
  auto g = GroupCtx::create(FieldCtx::create(2));
  SpectrumVec bad{g, std::vector<GaussInt>(g.size())};
  bad.values[1] = {1, 0};
  CHECK_THROWS_AS(inverse_transform(bad), DomainError);
}

TEST_CASE("convolution") {
  std::mt19937 rng(4);
  for (int n = 1; n <= 5; ++n) {
    auto g = GroupCtx::create(FieldCtx::create(n));
    for (int rep = 0; rep < 6; ++rep) {
      auto a = random_vec(g, rng, 20, true), b = random_vec(g, rng, 20, rep % 2 == 0);
      const auto naive = convolve_naive(a, b);
      CHECK(convolve(a, b) == naive);
      CHECK(convolve(a, b, 2) == naive);
      CHECK(convolve(a, GroupRingVec::delta(g, 0)) == a);
    }
    const std::uint64_t x = rng() % g.size(), y = rng() % g.size();
    CHECK(convolve(GroupRingVec::delta(g, x), GroupRingVec::delta(g, y)) == GroupRingVec::delta(g, g.add(x, y)));
  }
}

TEST_CASE("involution") {
  auto g = GroupCtx::create(FieldCtx::create(4));
  CHECK(involute(GroupRingVec::delta(g, 0)) == GroupRingVec::delta(g, 0));
  auto z = GroupRingVec::subgroup_Z(g);
  CHECK(involute(z) == z);
  std::mt19937 rng(5);
  auto a = random_vec(g, rng, 30, true);
  CHECK(involute(involute(a)) == a);
  auto d = build_Df(g, SparsePoly::parse(g.field(), "5:1"));
  CHECK(involute(d).total() == 16);
  CHECK(involute(d).is_set());
}

TEST_CASE("D_f") {
  auto g = GroupCtx::create(FieldCtx::create(4));
  CHECK(build_Df(g, SparsePoly::zero(g.field())) == GroupRingVec::teichmuller(g));
  auto d = build_Df(g, SparsePoly::parse(g.field(), "5:1"));
  CHECK(d.total() == 16);
  CHECK(d.is_set());
  std::vector<int> first(16, 0);
  for (std::uint64_t x = 0; x < d.size(); ++x)
    if (d[x]) ++first[x >> 4];
  for (int c : first) CHECK(c == 1);
}

TEST_CASE("RDS verification") {
  auto g3 = GroupCtx::create(FieldCtx::create(3));
  // T T^{(-1)} = 8 delta_0 + every element outside Z once.
  const auto t = GroupRingVec::teichmuller(g3);
  const auto tt = convolve(t, involute(t));
  CHECK(tt == 8 * GroupRingVec::delta(g3, 0) + GroupRingVec::whole(g3) - GroupRingVec::subgroup_Z(g3));
  CHECK(verify_rds(t).ok);

  auto z = verify_rds(GroupRingVec::subgroup_Z(g3));
  CHECK_FALSE(z.ok);
  CHECK(z.violations.size() == 10);
  CHECK(z.violation_count > 10);

  auto g6 = GroupCtx::create(FieldCtx::create(6));
  auto bad = verify_rds(build_Df(g6, SparsePoly::parse(g6.field(), "5:1,20:1")));
  CHECK_FALSE(bad.ok);
  CHECK(verify_rds(build_Df(g6, SparsePoly::parse(g6.field(), "20:3"))).ok == is_pseudoplanar(SparsePoly::parse(g6.field(), "20:3")));
}

TEST_CASE("RDS property matches pseudo-planarity") {
  std::mt19937 rng(6);
  for (int n = 2; n <= 8; ++n) {
    auto g = GroupCtx::create(FieldCtx::create(n));
    int positives = 0;
    const int reps = n <= 6 ? 25 : 6;
    for (int rep = 0; rep < reps; ++rep) {
      SparsePoly f = rep % 3 == 0 ? SparsePoly::monomial(g.field(), std::uint64_t{1} << (rep % n), {1}) + random_quadratic(g.field(), rng)
                                  : random_quadratic(g.field(), rng);
      if (rep % 5 == 4) f = f + SparsePoly::parse(g.field(), "3:1");
      if (rep == 0) f = SparsePoly::monomial(g.field(), 2, {1});
      const bool pp = is_pseudoplanar(f);
      positives += pp;
      const auto d = build_Df(g, f);
      CHECK(verify_rds(d).ok == pp);
      if (pp) {
        const auto s = char_transform(d);
        for (std::uint64_t a = 0; a < g.size(); ++a)
          if (!g.in_Z(a)) CHECK(s.values[a].norm() == (std::int64_t{1} << n));
      }
    }
    if (n <= 6) CHECK(positives > 0);
  }
}

TEST_CASE("Teichmuller lemma for 3 <= n <= 8") {
  for (int n = 3; n <= 8; ++n) {
    auto rep = teichmuller_lemma(GroupCtx::create(FieldCtx::create(n)));
    CHECK(rep.difference_part);
    CHECK(rep.square_part);
  }
}
