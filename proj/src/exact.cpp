#include "pps/exact.hpp"

#include <numeric>

#include "pps/errors.hpp"

namespace pps {

namespace {

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("Gaussian rational overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError("Gaussian rational overflow");
  return r;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw CapacityError("Gaussian rational overflow");
  return static_cast<std::int64_t>(v);
}

struct G128 {
  i128 re = 0;
  i128 im = 0;
  bool is_zero() const { return re == 0 && im == 0; }
};

G128 mul(G128 a, G128 b) {
  return {checked_add(checked_mul(a.re, b.re), -checked_mul(a.im, b.im)),
          checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
}

G128 sub(G128 a, G128 b) { return {checked_add(a.re, -b.re), checked_add(a.im, -b.im)}; }

// Rounded quotient a / b to the nearest Gaussian integer.
G128 round_div(G128 a, G128 b) {
  const i128 nb = checked_add(checked_mul(b.re, b.re), checked_mul(b.im, b.im));
  const G128 t = mul(a, {b.re, -b.im});
  auto nearest = [nb](i128 v) {
    const i128 q = v / nb, r = v % nb;
    if (2 * r > nb) return q + 1;
    if (2 * r < -nb) return q - 1;
    return q;
  };
  return {nearest(t.re), nearest(t.im)};
}

G128 gauss_gcd(G128 a, G128 b) {
  while (!b.is_zero()) {
    const G128 r = sub(a, mul(round_div(a, b), b));
    a = b;
    b = r;
  }
  return a;
}

struct Reduced {
  std::int64_t re, im, den;
};

Reduced reduce(i128 re, i128 im, i128 den) {
  if (den == 0) throw DomainError("division by zero");
  if (den < 0) {
    re = -re;
    im = -im;
    den = -den;
  }
  i128 g = gcd128(gcd128(re, im), den);
  if (g > 1) {
    re /= g;
    im /= g;
    den /= g;
  }
  return {narrow(re), narrow(im), narrow(den)};
}

// The constructor reduces again; on reduced input that is a no-op.
GaussRat make_rat(i128 re, i128 im, i128 den) {
  const Reduced r = reduce(re, im, den);
  return GaussRat({r.re, r.im}, r.den);
}

std::string rat_part(std::int64_t v) { return std::to_string(v); }

}  // namespace

std::string GaussInt::str() const {
  if (im == 0) return std::to_string(re);
  std::string s;
  if (re != 0) s = std::to_string(re) + (im > 0 ? "+" : "-");
  else if (im < 0) s = "-";
  const std::int64_t a = im < 0 ? -im : im;
  if (a != 1) s += std::to_string(a);
  return s + "i";
}

GaussRat::GaussRat(GaussInt num, std::int64_t den) {
  const Reduced r = reduce(num.re, num.im, den);
  num_ = {r.re, r.im};
  den_ = r.den;
}

GaussRat operator+(const GaussRat& a, const GaussRat& b) {
  const i128 d = checked_mul(a.den_, b.den_);
  return make_rat(checked_add(checked_mul(a.num_.re, b.den_), checked_mul(b.num_.re, a.den_)),
                  checked_add(checked_mul(a.num_.im, b.den_), checked_mul(b.num_.im, a.den_)), d);
}

GaussRat operator-(const GaussRat& a, const GaussRat& b) { return a + (-b); }

GaussRat operator*(const GaussRat& a, const GaussRat& b) {
  const G128 p = mul({a.num_.re, a.num_.im}, {b.num_.re, b.num_.im});
  return make_rat(p.re, p.im, checked_mul(a.den_, b.den_));
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  // a / b = a.num * conj(b.num) * b.den / (a.den * |b.num|^2)
  const G128 p = mul({a.num_.re, a.num_.im}, {b.num_.re, -b.num_.im});
  const i128 nb = checked_add(checked_mul(b.num_.re, b.num_.re), checked_mul(b.num_.im, b.num_.im));
  return make_rat(checked_mul(p.re, b.den_), checked_mul(p.im, b.den_), checked_mul(a.den_, nb));
}

std::string GaussRat::str() const {
  if (den_ == 1) return num_.str();
  if (num_.im == 0) return rat_part(num_.re) + "/" + std::to_string(den_);
  return "(" + num_.str() + ")/" + std::to_string(den_);
}

GaussRatMatrix to_rational(const GaussIntMatrix& m) {
  GaussRatMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = GaussRat(m(r, c));
  return out;
}

GaussRatMatrix multiply(const GaussRatMatrix& a, const GaussRatMatrix& b) {
  GaussRatMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      GaussRat s;
      for (std::size_t k = 0; k < a.cols(); ++k) s = s + a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

GaussIntMatrix multiply(const GaussIntMatrix& a, const GaussIntMatrix& b) {
  GaussIntMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      GaussInt s;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

GaussRatMatrix scaled_inverse(const GaussIntMatrix& m, std::int64_t scale) {
  const std::size_t k = m.rows();
  if (m.cols() != k) throw DomainError("inverse of a non-square matrix");
  std::vector<std::vector<G128>> a(k, std::vector<G128>(2 * k));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = {m(r, c).re, m(r, c).im};
    a[r][k + r] = {scale, 0};
  }
  // Fraction-free Gauss-Jordan. Each updated row is divided by the Gaussian
  // gcd of its entries; the previous pivot always divides it, so entries stay
  // bounded by minors of the augmented matrix.
  auto make_primitive = [](std::vector<G128>& row) {
    G128 g{0, 0};
    for (const G128& x : row) g = gauss_gcd(g, x);
    if (g.is_zero()) return;
    const i128 ng = checked_add(checked_mul(g.re, g.re), checked_mul(g.im, g.im));
    if (ng == 1) return;
    for (G128& x : row) {
      const G128 t = mul(x, {g.re, -g.im});
      x = {t.re / ng, t.im / ng};
    }
  };
  for (std::size_t p = 0; p < k; ++p) {
    std::size_t piv = p;
    while (piv < k && a[piv][p].is_zero()) ++piv;
    if (piv == k) throw DomainError("singular matrix");
    std::swap(a[p], a[piv]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == p || a[r][p].is_zero()) continue;
      const G128 lead = a[r][p];
      for (std::size_t c = 0; c < 2 * k; ++c) a[r][c] = sub(mul(a[p][p], a[r][c]), mul(lead, a[p][c]));
      make_primitive(a[r]);
    }
  }
  // Left block is diagonal; divide each row by its pivot.
  GaussRatMatrix out(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    const G128 d = a[r][r];
    const i128 nd = checked_add(checked_mul(d.re, d.re), checked_mul(d.im, d.im));
    for (std::size_t c = 0; c < k; ++c) {
      const G128 num = mul(a[r][k + c], {d.re, -d.im});
      out(r, c) = make_rat(num.re, num.im, nd);
    }
  }
  return out;
}

}  // namespace pps
