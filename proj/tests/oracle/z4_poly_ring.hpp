#pragma once

// Brute-force model of GR(4,n) as Z_4[y]/(h(y)), with h the lift of the field
// modulus under which y^(2^n - 1) = 1 (the Hensel lift; y then has the order of
// x in the field, which is 2^n - 1 for a primitive modulus). Shares nothing
// with the pair arithmetic in pps::RingCtx except the field modulus.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

class Z4PolyRing {
 public:
  using Elem = std::vector<int>;  // n coefficients in [0,4), low degree first

  explicit Z4PolyRing(int n, std::uint64_t modulus) : n_(n) {
    // Try all 2^n lifts: coefficient c_j of the modulus becomes c_j + 2 e_j.
    for (std::uint64_t lift = 0; lift < (std::uint64_t{1} << n); ++lift) {
      h_.assign(n, 0);
      for (int j = 0; j < n; ++j) h_[j] = static_cast<int>(((modulus >> j) & 1) + 2 * ((lift >> j) & 1));
      if (y_is_teichmuller()) return;
    }
    throw std::logic_error("no lift with y of order 2^n - 1");
  }

  int degree() const { return n_; }
  const Elem& h() const { return h_; }

  Elem zero() const { return Elem(n_, 0); }
  Elem one() const {
    Elem e = zero();
    e[0] = 1;
    return e;
  }
  Elem y() const {
    Elem e = zero();
    if (n_ == 1) e[0] = (4 - h_[0]) % 4;  // y = -h0 mod h when h = y + h0
    else e[1] = 1;
    return e;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(n_);
    for (int j = 0; j < n_; ++j) r[j] = (a[j] + b[j]) % 4;
    return r;
  }
  Elem scale(const Elem& a, int k) const {
    Elem r(n_);
    for (int j = 0; j < n_; ++j) r[j] = ((a[j] * k) % 4 + 4) % 4;
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<int> prod(2 * n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % 4;
    // y^n = -sum h_j y^j
    for (int d = 2 * n_ - 1; d >= n_; --d) {
      const int c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (int j = 0; j < n_; ++j) prod[d - n_ + j] = ((prod[d - n_ + j] - c * h_[j]) % 4 + 4) % 4;
    }
    return Elem(prod.begin(), prod.begin() + n_);
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e != 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Teichmuller lift of the field element with coordinate bits t.
  Elem teich(std::uint32_t t) const {
    Elem u = zero();
    for (int j = 0; j < n_; ++j) u[j] = static_cast<int>((t >> j) & 1);
    return pow(u, std::uint64_t{1} << n_);
  }

  // a + 2b with a, b given as field bit-vectors.
  Elem from_pair(std::uint32_t a, std::uint32_t b) const { return add(teich(a), scale(teich(b), 2)); }

  void to_pair(const Elem& x, std::uint32_t& a, std::uint32_t& b) const {
    a = 0;
    for (int j = 0; j < n_; ++j) a |= static_cast<std::uint32_t>(x[j] & 1) << j;
    Elem rest = add(x, scale(teich(a), 3));  // x - teich(a), every coefficient even
    b = 0;
    for (int j = 0; j < n_; ++j) {
      if (rest[j] % 2 != 0) throw std::logic_error("odd remainder");
      b |= static_cast<std::uint32_t>((rest[j] / 2) & 1) << j;
    }
  }

  // y is Teichmuller, so the Frobenius fixes Z_4 and sends y to y^2.
  Elem frobenius(const Elem& x) const {
    Elem r = zero();
    Elem y2 = mul(y(), y());
    Elem p = one();
    for (int j = 0; j < n_; ++j) {
      r = add(r, scale(p, x[j]));
      p = mul(p, y2);
    }
    return r;
  }

  int trace(Elem x) const {
    Elem s = zero();
    for (int i = 0; i < n_; ++i) {
      s = add(s, x);
      x = frobenius(x);
    }
    for (int j = 1; j < n_; ++j)
      if (s[j] != 0) throw std::logic_error("trace left Z_4");
    return s[0];
  }

 private:
  bool y_is_teichmuller() const {
    const std::uint64_t order = (std::uint64_t{1} << n_) - 1;
    return pow(y(), order) == one();
  }

  int n_;
  Elem h_;
};

}  // namespace oracle
