#include "doctest.h"

#include <random>
#include <set>

#include "pps/errors.hpp"
#include "pps/gf2n.hpp"

using namespace pps;

namespace {

// Schoolbook product of two polynomials over F_2 followed by long division.
std::uint32_t schoolbook_mul(std::uint32_t a, std::uint32_t b, std::uint64_t mod, int n) {
  std::uint64_t prod = 0;
  for (int i = 0; i < n; ++i)
    if ((b >> i) & 1) prod ^= std::uint64_t{a} << i;
  for (int d = 2 * n - 2; d >= n; --d)
    if ((prod >> d) & 1) prod ^= mod << (d - n);
  return static_cast<std::uint32_t>(prod);
}

// Irreducible iff no polynomial of degree 1..n/2 divides it (brute force).
bool brute_irreducible(std::uint64_t p) {
  const int n = f2poly::degree(p);
  for (std::uint64_t q = 2; f2poly::degree(q) <= n / 2; ++q) {
    std::uint64_t r = p;
    const int dq = f2poly::degree(q);
    for (int dr = f2poly::degree(r); dr >= dq; dr = f2poly::degree(r)) r ^= q << (dr - dq);
    if (r == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("default modulus is the smallest irreducible") {
  CHECK(FieldCtx::create(1).modulus() == 0b11);
  CHECK(FieldCtx::create(3).modulus() == 0b1011);
  CHECK(FieldCtx::create(4).modulus() == 0b10011);
  for (int n = 2; n <= 10; ++n) {
    std::uint64_t smallest = 0;
    for (std::uint64_t p = (1u << n) | 1; p < (2u << n); p += 2)
      if (brute_irreducible(p)) {
        smallest = p;
        break;
      }
    CHECK(FieldCtx::create(n).modulus() == smallest);
  }
}

TEST_CASE("irreducibility test agrees with brute-force factor search") {
  for (int n = 2; n <= 9; ++n)
    for (std::uint64_t p = 1u << n; p < (2u << n); ++p)
      CHECK((f2poly::smallest_factor_degree(p) == 0 && (p & 1)) == brute_irreducible(p));
}

TEST_CASE("reducible modulus is rejected with the factor degree") {
  CHECK_NOTHROW(FieldCtx::create(4, 0b10011));
  // x^4 + x^2 + 1 = (x^2 + x + 1)^2
  try {
    FieldCtx::create(4, 0b10101);
    FAIL("accepted reducible modulus");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("degree 2") != std::string::npos);
  }
  CHECK_THROWS_AS(FieldCtx::create(4, 0b1011), DomainError);
  CHECK_THROWS_AS(FieldCtx::create(3, 0b1010), DomainError);
  CHECK_THROWS_AS(FieldCtx::create(25), DomainError);
}

TEST_CASE("field spec strings") {
  auto f = FieldCtx::parse("3:b");
  CHECK(f.degree() == 3);
  CHECK(f.modulus() == 0xb);
  CHECK(f.spec() == "3:b");
  CHECK(FieldCtx::parse("6").spec() == "6:43");
  CHECK_THROWS_AS(FieldCtx::parse("x:3"), ParseError);
  CHECK_THROWS_AS(FieldCtx::parse("3:zz"), ParseError);
  CHECK(f.parse_elem("6") == FieldElem{6});
  CHECK_THROWS_AS(f.parse_elem("8"), DomainError);
}

TEST_CASE("multiplication matches schoolbook reduction") {
  auto f3 = FieldCtx::create(3);
  CHECK(f3.mul({2}, {4}) == FieldElem{3});
  for (int n : {1, 2, 3, 4, 5, 8, 12, 17, 20}) {
    auto f = FieldCtx::create(n);
    std::mt19937 rng(n);
    for (int t = 0; t < 2000; ++t) {
      std::uint32_t a = rng() & (f.size() - 1), b = rng() & (f.size() - 1);
      CHECK(f.mul({a}, {b}).bits == schoolbook_mul(a, b, f.modulus(), n));
    }
  }
}

TEST_CASE("field axioms exhaustively for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    auto f = FieldCtx::create(n);
    for (std::uint32_t a = 0; a < f.size(); ++a) {
      CHECK(f.mul({a}, f.one()) == FieldElem{a});
      CHECK(f.mul({a}, f.zero()) == FieldElem{0});
      if (a != 0) CHECK(f.mul({a}, f.inv({a})) == f.one());
      for (std::uint32_t b = 0; b < f.size(); ++b) {
        CHECK(f.mul({a}, {b}) == f.mul({b}, {a}));
        CHECK(f.square(FieldCtx::add({a}, {b})) == FieldCtx::add(f.square({a}), f.square({b})));
        for (std::uint32_t c = 0; c < f.size(); ++c) {
          CHECK(f.mul(f.mul({a}, {b}), {c}) == f.mul({a}, f.mul({b}, {c})));
          CHECK(f.mul({a}, FieldCtx::add({b}, {c})) == FieldCtx::add(f.mul({a}, {b}), f.mul({a}, {c})));
        }
      }
    }
  }
}

TEST_CASE("randomized axioms for table and shift-and-reduce fields") {
  for (int n : {10, 16, 17, 24}) {
    auto f = FieldCtx::create(n);
    CHECK(f.uses_tables() == (n <= kMaxTableDegree));
    std::mt19937 rng(7 * n);
    for (int t = 0; t < 500; ++t) {
      FieldElem a{static_cast<std::uint32_t>(rng()) & (f.size() - 1)}, b{static_cast<std::uint32_t>(rng()) & (f.size() - 1)}, c{static_cast<std::uint32_t>(rng()) & (f.size() - 1)};
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, FieldCtx::add(b, c)) == FieldCtx::add(f.mul(a, b), f.mul(a, c)));
      if (!a.is_zero()) CHECK(f.mul(a, f.inv(a)) == f.one());
      CHECK(f.sqrt(f.square(a)) == a);
    }
  }
  CHECK_THROWS_AS(FieldCtx::create(5).inv({0}), DomainError);
}

TEST_CASE("sqrt is the inverse of squaring") {
  auto f3 = FieldCtx::create(3);
  CHECK(f3.sqrt({0}) == FieldElem{0});
  CHECK(f3.sqrt({1}) == FieldElem{1});
  CHECK(f3.sqrt(f3.square({2})) == FieldElem{2});
  auto f4 = FieldCtx::create(4);
  for (std::uint32_t a = 0; a < 16; ++a) {
    std::uint32_t found = 99;
    for (std::uint32_t y = 0; y < 16; ++y)
      if (f4.square({y}) == FieldElem{a}) found = y;
    CHECK(f4.sqrt({a}).bits == found);
    CHECK(f4.sqrt({a}) == f4.pow({a}, 8));
  }
}

TEST_CASE("absolute trace") {
  auto f3 = FieldCtx::create(3);
  auto f4 = FieldCtx::create(4);
  CHECK(f3.abs_trace({0}) == 0);
  CHECK(f3.abs_trace({1}) == 1);
  CHECK(f4.abs_trace({1}) == 0);
  int ones = 0;
  for (std::uint32_t a = 0; a < 16; ++a) ones += f4.abs_trace({a});
  CHECK(ones == 8);
}

TEST_CASE("multiplicative order") {
  auto f6 = FieldCtx::create(6);
  CHECK(mult_order(f6, f6.one()) == 1);
  std::set<std::uint64_t> orders;
  for (std::uint32_t a = 1; a < 64; ++a) {
    auto t = mult_order(f6, {a});
    CHECK(63 % t == 0);
    CHECK(f6.pow({a}, t) == f6.one());
    orders.insert(t);
  }
  CHECK(orders == std::set<std::uint64_t>{1, 3, 7, 9, 21, 63});
  auto g = f6.generator();
  CHECK(mult_order(f6, g) == 63);
  for (std::uint64_t d : {1, 3, 7, 9, 21}) CHECK(f6.pow(g, d) != f6.one());
  CHECK_THROWS_AS(mult_order(f6, {0}), DomainError);
}

TEST_CASE("relative trace and norm") {
  for (int m : {1, 2, 3}) {
    auto f = FieldCtx::create(3 * m);
    CHECK(rel_trace(f, m, {0}) == FieldElem{0});
    CHECK(rel_norm(f, m, {0}) == FieldElem{0});
    for (std::uint32_t e = 0; e < f.size(); ++e) {
      auto [tr, nm] = rel_trace_norm(f, m, {e});
      CHECK(in_subfield(f, tr, m));
      CHECK(in_subfield(f, nm, m));
      if (in_subfield(f, {e}, m)) {
        CHECK(tr == FieldElem{e});
        CHECK(nm == f.pow({e}, 3));
      }
      if (m == 1 && e != 0) CHECK(nm == f.one());
    }
    // linearity over the subfield and multiplicativity of the norm
    std::mt19937 rng(m);
    for (int t = 0; t < 200; ++t) {
      FieldElem x{static_cast<std::uint32_t>(rng()) & (f.size() - 1)}, y{static_cast<std::uint32_t>(rng()) & (f.size() - 1)};
      const FieldElem c = rel_trace(f, m, {static_cast<std::uint32_t>(rng()) & (f.size() - 1)});  // lies in F_{2^m}
      CHECK(rel_trace(f, m, FieldCtx::add(f.mul(c, x), y)) ==
            FieldCtx::add(f.mul(c, rel_trace(f, m, x)), rel_trace(f, m, y)));
      CHECK(rel_norm(f, m, f.mul(x, y)) == f.mul(rel_norm(f, m, x), rel_norm(f, m, y)));
    }
  }
  CHECK_THROWS_AS(rel_trace(FieldCtx::create(4), 1, {1}), DomainError);
}

TEST_CASE("cubic invariants satisfy the u1/u2 identities exhaustively for m = 1, 2") {
  for (int m : {1, 2}) {
    auto f = FieldCtx::create(3 * m);
    int checked = 0;
    for (std::uint32_t e = 0; e < f.size(); ++e) {
      if (in_subfield(f, {e}, m)) {
        CHECK_THROWS_AS(cubic_invariants(f, m, {e}), DomainError);
        continue;
      }
      auto c = cubic_invariants(f, m, {e});
      CHECK_FALSE(c.B3.is_zero());
      CHECK(c.B1 == rel_trace(f, m, {e}));
      CHECK(c.B3 == rel_norm(f, m, {e}));
      CHECK(FieldCtx::add(c.u1, c.u2) == FieldCtx::add(c.B3, f.mul(c.B1, c.B2)));
      const auto rhs = FieldCtx::add(FieldCtx::add(f.mul(f.pow(c.B1, 3), c.B3), f.pow(c.B2, 3)), f.square(c.B3));
      CHECK(f.mul(c.u1, c.u2) == rhs);
      // e is a root of its minimal polynomial
      FieldElem ev = f.pow({e}, 3);
      ev = FieldCtx::add(ev, f.mul(c.B1, f.square({e})));
      ev = FieldCtx::add(ev, f.mul(c.B2, {e}));
      ev = FieldCtx::add(ev, c.B3);
      CHECK(ev.is_zero());
      ++checked;
    }
    CHECK(checked == static_cast<int>(f.size() - (1u << m)));
  }
}
