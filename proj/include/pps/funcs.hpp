#pragma once

// Functions F_{2^n} -> F_{2^n} as sparse polynomials, the pseudo-planarity
// test, linearized polynomials and the binomial families over F_{2^{3m}}.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/gf2n.hpp"
#include "pps/kernels.hpp"

namespace pps {

struct Term {
  std::uint64_t exp = 0;
  FieldElem coeff;

  friend auto operator<=>(const Term&, const Term&) = default;
};

class SparsePoly {
 public:
  // Exponents must lie in [0, 2^n - 1]. Duplicate exponents are summed and
  // zero coefficients dropped. x^0 and x^{2^n-1} stay distinct (they differ
  // at 0).
  SparsePoly(FieldCtx field, std::vector<Term> terms);
  static SparsePoly zero(FieldCtx field) { return SparsePoly(std::move(field), {}); }
  static SparsePoly monomial(FieldCtx field, std::uint64_t exp, FieldElem coeff);
  // "e1:cHEX,e2:cHEX,..."; "0" or "" is the zero function.
  static SparsePoly parse(FieldCtx field, std::string_view literal);

  const FieldCtx& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FieldElem eval(FieldElem x) const;
  FieldElem operator()(FieldElem x) const { return eval(x); }
  // f(x) for every x in encoding order.
  std::vector<std::uint32_t> value_table() const;

  // Every exponent is 2^i + 2^j with i != j.
  bool is_quadratic_type() const;
  // Every exponent has binary weight <= 2: the difference maps are affine.
  bool has_affine_differences() const;

  SparsePoly operator+(const SparsePoly& other) const;
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.field_.same_field(b.field_) && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  FieldCtx field_;
  std::vector<Term> terms_;
};

struct PPResult {
  bool pseudoplanar = false;
  // Smallest e != 0 whose difference map is not a permutation, and a pair
  // x1 < x2 it sends to the same value.
  std::optional<FieldElem> witness_eps;
  FieldElem x1, x2;
};

// Direct test: x -> f(x+e) + f(x) + e*x must be a permutation for all e != 0.
// threads == 1 runs the serial kernel; the result never depends on threads.
PPResult test_pseudoplanar(const SparsePoly& f, int threads = 1);
bool is_pseudoplanar(const SparsePoly& f, int threads = 1);
// Rank-test shortcut, valid only when f.has_affine_differences().
bool is_pseudoplanar_affine(const SparsePoly& f);

// Single difference map.
bool difference_map_is_perm(const SparsePoly& f, FieldElem eps);

// L(x) = sum_i c_i x^{q^i} over F_{q^r}, q = 2^s, field degree s*r.
struct LinearizedPoly {
  FieldCtx field;
  int s = 1;
  std::vector<FieldElem> coeffs;  // r entries

  int r() const { return static_cast<int>(coeffs.size()); }
  FieldElem eval(FieldElem x) const;
};

// det of the r x r matrix with (j,k) entry c_{(j-k) mod r}^{q^k}. Nonzero iff
// L permutes F_{q^r}.
FieldElem moore_det(const LinearizedPoly& L);
// Exhaustive bijectivity check, for cross-checking moore_det.
bool is_bijective_bruteforce(const LinearizedPoly& L);

// For has_affine_differences() f: the linear part of the difference map at e,
// as a q = 2 linearized polynomial.
LinearizedPoly linearized_difference(const SparsePoly& f, FieldElem eps);
// All-e test through moore_det of linearized_difference.
bool is_pseudoplanar_moore(const SparsePoly& f);

// Known monomial families.
enum class Table1Family { Linear, GoldHalf, ScherrZieve };
Table1Family parse_table1_family(std::string_view name);
std::string to_string(Table1Family family);

// Linear: a x^{2^k}, 0 <= k < n. GoldHalf: n = 2k, a in F_{2^k}^*, with zero
// absolute trace from F_{2^k}: a x^{2^k+1}. ScherrZieve: n = 6k, a a
// (4^k-1)-th power that is not a 3(4^k-1)-th power: a x^{4^k(4^k+1)}.
// Throws DomainError naming the violated condition.
SparsePoly construct_table1(const FieldCtx& field, Table1Family family, int k, FieldElem a);

// True when a is a d-th power in F_{2^n}^*.
bool is_dth_power(const FieldCtx& field, FieldElem a, std::uint64_t d);

// First family: a^{2^{2m}+1} x^{2^{2m}+1} + a^{-(2^m+1)} x^{2^m+1} on F_{2^{3m}},
// m even. field must have degree 3m.
SparsePoly construct_binomial1(const FieldCtx& field, int m, FieldElem a);
// Tr_3((a^{t^2+t} + a^{-t^2-t-2})(a^{t+1} + e^{t-1}) e^{t+2} + a^{t-t^2} e^3
//      + e^{1+t+t^2}), t = 2^m.
FieldElem binomial1_trace(const FieldCtx& field, int m, FieldElem a, FieldElem eps);
// The linearized difference map of the first family over F_{q^3}, q = 2^m.
LinearizedPoly binomial1_moore_poly(const FieldCtx& field, int m, FieldElem a, FieldElem eps);
// All e != 0 give a nonzero trace; the returned witness is the smallest bad e.
struct CriterionResult {
  bool holds = false;
  std::optional<FieldElem> witness;
};
CriterionResult binomial1_criterion(const FieldCtx& field, int m, FieldElem a);
CriterionResult binomial1_determinant_criterion(const FieldCtx& field, int m, FieldElem a);

// Second and third families: x^{2^m+1} + x^{2^{2m}+2^m} (variant 2) and
// x^{2^{2m}+1} + x^{2^{2m}+2^m} (variant 3). Out-of-range m only adds a
// warning so the failing cases can be built.
struct BinomialBuild {
  SparsePoly f;
  std::vector<std::string> warnings;
};
BinomialBuild construct_binomial(const FieldCtx& field, int m, int variant);
// M_e = N_3(e) + Tr_3(e^3 + e^{1+2^{m+1}}) (variant 2) or e^{2+2^m} (variant 3).
FieldElem m_epsilon(const FieldCtx& field, int m, int variant, FieldElem eps);
CriterionResult binomial_criterion(const FieldCtx& field, int m, int variant);

}  // namespace pps
