#pragma once

// Binary field F_{2^n} in a polynomial basis, plus the cubic tower
// F_{2^{3m}} / F_{2^m} used by the binomial constructions.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pps {

// Coordinates of sum c_i x^i packed as the integer sum c_i 2^i.
struct FieldElem {
  std::uint32_t bits = 0;

  constexpr auto operator<=>(const FieldElem&) const = default;
  constexpr bool is_zero() const { return bits == 0; }
};

inline constexpr int kMaxFieldDegree = 24;
inline constexpr int kMaxTableDegree = 16;

// Immutable after construction; copies share the same tables.
class FieldCtx {
 public:
  // Default modulus: the smallest irreducible of degree n read as an integer
  // (with nonzero constant term). Throws DomainError for a reducible modulus,
  // naming the degree of its smallest factor.
  static FieldCtx create(int n, std::optional<std::uint64_t> modulus = std::nullopt);

  // "n:POLYHEX" or "n" (default modulus).
  static FieldCtx parse(std::string_view spec);
  std::string spec() const;

  int degree() const { return impl_->n; }
  std::uint64_t modulus() const { return impl_->modulus; }
  std::uint32_t size() const { return impl_->size; }
  std::uint32_t group_order() const { return impl_->size - 1; }
  bool uses_tables() const { return !impl_->log.empty(); }

  bool same_field(const FieldCtx& other) const {
    return impl_ == other.impl_ ||
           (impl_->n == other.impl_->n && impl_->modulus == other.impl_->modulus);
  }

  bool valid(FieldElem a) const { return a.bits < impl_->size; }
  FieldElem elem(std::uint32_t bits) const;  // range-checked
  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }

  static FieldElem add(FieldElem a, FieldElem b) { return {a.bits ^ b.bits}; }
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem square(FieldElem a) const { return mul(a, a); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  // Negative exponents are allowed for a != 0.
  FieldElem pow_signed(FieldElem a, std::int64_t e) const;
  FieldElem inv(FieldElem a) const;
  // a^(2^k); k may exceed n.
  FieldElem frob(FieldElem a, int k) const;
  // The unique square root a^(2^(n-1)).
  FieldElem sqrt(FieldElem a) const;
  // Absolute trace onto F_2.
  int abs_trace(FieldElem a) const;

  // A fixed primitive element: the smallest encoding of order 2^n - 1.
  FieldElem generator() const { return {impl_->generator}; }
  // Prime factors of 2^n - 1, ascending.
  const std::vector<std::uint64_t>& order_factors() const { return impl_->order_primes; }

  // Raw table access for kernels; empty when degree() > kMaxTableDegree.
  const std::vector<std::uint32_t>& log_table() const { return impl_->log; }
  const std::vector<std::uint32_t>& exp_table() const { return impl_->exp; }

  std::string format(FieldElem a) const;
  FieldElem parse_elem(std::string_view hex) const;

 private:
  struct Impl {
    int n = 0;
    std::uint64_t modulus = 0;
    std::uint32_t size = 0;
    std::uint32_t generator = 0;
    std::vector<std::uint64_t> order_primes;
    std::vector<std::uint32_t> log;  // log[0] unused
    std::vector<std::uint32_t> exp;  // length 2(2^n - 1)
  };
  explicit FieldCtx(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  FieldElem mul_shift(FieldElem a, FieldElem b) const;

  std::shared_ptr<const Impl> impl_;
};

// Polynomials over F_2 packed into integers (bit i = coefficient of x^i).
namespace f2poly {
int degree(std::uint64_t p);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
// 0 if irreducible, otherwise the degree of the smallest irreducible factor.
int smallest_factor_degree(std::uint64_t p);
}  // namespace f2poly

// Smallest t >= 1 with a^t = 1. Throws DomainError for a = 0.
std::uint64_t mult_order(const FieldCtx& ctx, FieldElem a);

// True when a lies in the subfield F_{2^d}, d | n.
bool in_subfield(const FieldCtx& ctx, FieldElem a, int d);

struct TraceNorm {
  FieldElem trace;
  FieldElem norm;
};

// (Tr_3(e), N_3(e)) from F_{2^{3m}} down to F_{2^m}; ctx must have degree 3m.
TraceNorm rel_trace_norm(const FieldCtx& ctx3m, int m, FieldElem e);
FieldElem rel_trace(const FieldCtx& ctx3m, int m, FieldElem e);
FieldElem rel_norm(const FieldCtx& ctx3m, int m, FieldElem e);

// Coefficients of the minimal polynomial x^3 + B1 x^2 + B2 x + B3 of e over
// F_{2^m} and the two twisted traces u1 = Tr_3(e^{1+2^{2m+1}}),
// u2 = Tr_3(e^{1+2^{m+1}}).
struct CubicData {
  int m = 0;
  FieldElem epsilon;
  FieldElem B1, B2, B3;
  FieldElem u1, u2;
};

// Throws DomainError when e lies in F_{2^m}.
CubicData cubic_invariants(const FieldCtx& ctx3m, int m, FieldElem e);

}  // namespace pps
