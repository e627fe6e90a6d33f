#pragma once

// Exact Gaussian integers and Gaussian rationals. Every character sum and
// eigenmatrix entry in this project lives here; nothing is floating point.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace pps {

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr auto operator<=>(const GaussInt&) const = default;

  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussInt& operator+=(GaussInt b) { return *this = *this + b; }
  GaussInt& operator-=(GaussInt b) { return *this = *this - b; }
  GaussInt& operator*=(GaussInt b) { return *this = *this * b; }

  constexpr GaussInt conj() const { return {re, -im}; }
  constexpr std::int64_t norm() const { return re * re + im * im; }
  constexpr bool is_zero() const { return re == 0 && im == 0; }

  // i^k for any integer k.
  static constexpr GaussInt i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }

  std::string str() const;
};

// num / den with den > 0 and gcd(num.re, num.im, den) = 1. Arithmetic is
// overflow-checked and throws CapacityError instead of wrapping.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(GaussInt num) : num_(num) {}  // NOLINT(implicit)
  GaussRat(GaussInt num, std::int64_t den);

  GaussInt num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }

  friend bool operator==(const GaussRat&, const GaussRat&) = default;

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b);
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b);
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b);
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b);
  friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.num_, a.den_); }

  std::string str() const;

 private:
  GaussInt num_{};
  std::int64_t den_ = 1;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using GaussIntMatrix = Matrix<GaussInt>;
using GaussRatMatrix = Matrix<GaussRat>;

GaussRatMatrix to_rational(const GaussIntMatrix& m);
GaussRatMatrix multiply(const GaussRatMatrix& a, const GaussRatMatrix& b);
GaussIntMatrix multiply(const GaussIntMatrix& a, const GaussIntMatrix& b);

// scale * m^{-1} by fraction-free Gauss-Jordan elimination over Z[i] on the
// augmented matrix [m | scale*I], finished with one division per entry.
// Throws DomainError for a singular m.
GaussRatMatrix scaled_inverse(const GaussIntMatrix& m, std::int64_t scale);

}  // namespace pps
