#include "doctest.h"

#include <random>

#include "pps/errors.hpp"
#include "pps/exact.hpp"

using namespace pps;

TEST_CASE("Gaussian integers") {
  const GaussInt a{3, -2}, b{-1, 5};
  CHECK(a * b == GaussInt{7, 17});
  CHECK(a.conj() == GaussInt{3, 2});
  CHECK(a.norm() == 13);
  CHECK(GaussInt::i_pow(-1) == GaussInt{0, -1});
  CHECK(GaussInt::i_pow(6) == GaussInt{-1, 0});
  CHECK(GaussInt{2, -1}.str() == "2-i");
  CHECK(GaussInt{0, 3}.str() == "3i");
  CHECK(GaussInt{-4, 0}.str() == "-4");
}

TEST_CASE("Gaussian rationals") {
  const GaussRat h(GaussInt{2, 4}, -6);
  CHECK(h.num() == GaussInt{-1, -2});
  CHECK(h.den() == 3);
  CHECK(GaussRat(GaussInt{0, 0}, 7) == GaussRat(GaussInt{0, 0}));
  const GaussRat x(GaussInt{1, 1}, 2), y(GaussInt{1, -1}, 3);
  CHECK(x + y == GaussRat(GaussInt{5, 1}, 6));
  CHECK(x - x == GaussRat());
  CHECK(x * y == GaussRat(GaussInt{2, 0}, 6));
  CHECK((x / y) * y == x);
  CHECK_THROWS_AS(x / GaussRat(), DomainError);
  CHECK_THROWS_AS(GaussRat(GaussInt{1, 0}, 0), DomainError);
  const GaussRat big(GaussInt{std::int64_t{1} << 62, 0});
  CHECK_THROWS_AS(big * big, CapacityError);
  CHECK(x.str() == "(1+i)/2");
}

TEST_CASE("scaled inverse") {
  std::mt19937 rng(7);
  for (std::size_t k = 1; k <= 6; ++k) {
    for (int rep = 0; rep < 40; ++rep) {
      GaussIntMatrix m(k, k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
          m(r, c) = {static_cast<std::int64_t>(rng() % 21) - 10, static_cast<std::int64_t>(rng() % 21) - 10};
      GaussRatMatrix inv;
      try {
        inv = scaled_inverse(m, 12);
      } catch (const DomainError&) {
        continue;  // singular draw
      }
      GaussRatMatrix expect(k, k, GaussRat());
      for (std::size_t i = 0; i < k; ++i) expect(i, i) = GaussRat(GaussInt{12, 0});
      CHECK(multiply(to_rational(m), inv) == expect);
      CHECK(multiply(inv, to_rational(m)) == expect);
    }
  }
  GaussIntMatrix sing(2, 2);
  sing(0, 0) = {1, 1};
  sing(0, 1) = {2, 0};
  sing(1, 0) = GaussInt{1, -1} * sing(0, 0);
  sing(1, 1) = GaussInt{1, -1} * sing(0, 1);
  CHECK_THROWS_AS(scaled_inverse(sing, 1), DomainError);
  CHECK_THROWS_AS(scaled_inverse(GaussIntMatrix(2, 3), 1), DomainError);
}
