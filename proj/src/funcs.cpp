#include "pps/funcs.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include "pps/errors.hpp"

namespace pps {

namespace {

constexpr int kMaxDirectDegree = 20;

std::uint64_t parse_dec(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 10);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

void require_degree(const FieldCtx& field, int n, const char* who) {
  if (field.degree() != n)
    throw DomainError(std::string(who) + " needs F_2^" + std::to_string(n) + ", got F_2^" +
                      std::to_string(field.degree()));
}

}  // namespace

SparsePoly::SparsePoly(FieldCtx field, std::vector<Term> terms) : field_(std::move(field)) {
  const std::uint64_t max_exp = field_.size() - 1;
  for (const Term& t : terms) {
    if (t.exp > max_exp)
      throw DomainError("exponent " + std::to_string(t.exp) + " exceeds 2^n - 1 = " + std::to_string(max_exp));
    if (!field_.valid(t.coeff)) throw DomainError("coefficient " + field_.format(t.coeff) + " outside the field");
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  for (const Term& t : terms) {
    if (!terms_.empty() && terms_.back().exp == t.exp)
      terms_.back().coeff = FieldCtx::add(terms_.back().coeff, t.coeff);
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff.is_zero(); });
}

SparsePoly SparsePoly::monomial(FieldCtx field, std::uint64_t exp, FieldElem coeff) {
  return SparsePoly(std::move(field), {{exp, coeff}});
}

SparsePoly SparsePoly::parse(FieldCtx field, std::string_view literal) {
  literal = trim(literal);
  std::vector<Term> terms;
  if (literal.empty() || literal == "0") return SparsePoly(std::move(field), {});
  while (!literal.empty()) {
    const auto comma = literal.find(',');
    const std::string_view item = trim(literal.substr(0, comma));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("bad term '" + std::string(item) + "' (expected EXP:COEFFHEX)");
    terms.push_back({parse_dec(item.substr(0, colon), "exponent"), field.parse_elem(item.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    literal.remove_prefix(comma + 1);
    if (literal.empty()) throw ParseError("trailing comma in polynomial literal");
  }
  return SparsePoly(std::move(field), std::move(terms));
}

FieldElem SparsePoly::eval(FieldElem x) const {
  FieldElem s{0};
  for (const Term& t : terms_) s = FieldCtx::add(s, field_.mul(t.coeff, t.exp == 0 ? field_.one() : field_.pow(x, t.exp)));
  return s;
}

std::vector<std::uint32_t> SparsePoly::value_table() const {
  if (field_.degree() > kMaxDirectDegree)
    throw CapacityError("value table for n = " + std::to_string(field_.degree()) + " exceeds n <= " +
                        std::to_string(kMaxDirectDegree));
  const std::uint32_t size = field_.size();
  std::vector<std::uint32_t> out(size, 0);
  out[0] = eval(field_.zero()).bits;
  // Walk x = g^l; each term's power advances by the fixed factor g^e.
  const FieldElem g = field_.generator();
  std::vector<FieldElem> cur, step;
  for (const Term& t : terms_) {
    cur.push_back(t.coeff);
    step.push_back(field_.pow(g, t.exp));
  }
  FieldElem x = field_.one();
  for (std::uint32_t l = 0; l + 1 < size; ++l) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      v ^= cur[i].bits;
      cur[i] = field_.mul(cur[i], step[i]);
    }
    out[x.bits] = v;
    x = field_.mul(x, g);
  }
  return out;
}

bool SparsePoly::is_quadratic_type() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return std::popcount(t.exp) == 2; });
}

bool SparsePoly::has_affine_differences() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return std::popcount(t.exp) <= 2; });
}

SparsePoly SparsePoly::operator+(const SparsePoly& other) const {
  if (!field_.same_field(other.field_)) throw DomainError("polynomials over different fields");
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return SparsePoly(field_, std::move(all));
}

std::string SparsePoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += ',';
    out += std::to_string(t.exp) + ":" + field_.format(t.coeff);
  }
  return out;
}

PPResult test_pseudoplanar(const SparsePoly& f, int threads) {
  const auto values = f.value_table();
  const auto scan = threads == 1 ? kernels::diff_scan_serial(f.field(), values)
                                 : kernels::diff_scan_parallel(f.field(), values, threads);
  PPResult r;
  r.pseudoplanar = scan.ok();
  if (!scan.ok()) {
    r.witness_eps = FieldElem{scan.eps};
    r.x1 = {scan.x1};
    r.x2 = {scan.x2};
  }
  return r;
}

bool is_pseudoplanar(const SparsePoly& f, int threads) { return test_pseudoplanar(f, threads).pseudoplanar; }

bool is_pseudoplanar_affine(const SparsePoly& f) {
  if (!f.has_affine_differences()) throw DomainError("rank test needs exponents of binary weight <= 2");
  const auto values = f.value_table();
  return kernels::affine_scan(f.field(), values) == 0;
}

bool difference_map_is_perm(const SparsePoly& f, FieldElem eps) {
  const auto values = f.value_table();
  kernels::DiffWorkspace ws(f.field().degree());
  std::uint32_t x1 = 0, x2 = 0;
  return ws.is_perm(f.field(), values, eps.bits, x1, x2);
}

FieldElem LinearizedPoly::eval(FieldElem x) const {
  FieldElem sum{0};
  for (int i = 0; i < r(); ++i) sum = FieldCtx::add(sum, field.mul(coeffs[i], field.frob(x, s * i)));
  return sum;
}

FieldElem moore_det(const LinearizedPoly& L) {
  const FieldCtx& F = L.field;
  const int r = L.r();
  if (r == 0 || F.degree() != L.s * r)
    throw DomainError("linearized polynomial needs degree s*r = " + std::to_string(L.s * r) + ", field has " +
                      std::to_string(F.degree()));
  std::vector<FieldElem> m(static_cast<std::size_t>(r * r));
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) m[j * r + k] = F.frob(L.coeffs[((j - k) % r + r) % r], L.s * k);
  // Characteristic 2: row swaps do not change the sign.
  FieldElem det = F.one();
  for (int col = 0; col < r; ++col) {
    int piv = col;
    while (piv < r && m[piv * r + col].is_zero()) ++piv;
    if (piv == r) return F.zero();
    if (piv != col)
      for (int k = 0; k < r; ++k) std::swap(m[piv * r + k], m[col * r + k]);
    const FieldElem p = m[col * r + col];
    det = F.mul(det, p);
    const FieldElem pinv = F.inv(p);
    for (int row = col + 1; row < r; ++row) {
      const FieldElem factor = F.mul(m[row * r + col], pinv);
      if (factor.is_zero()) continue;
      for (int k = col; k < r; ++k) m[row * r + k] = FieldCtx::add(m[row * r + k], F.mul(factor, m[col * r + k]));
    }
  }
  return det;
}

bool is_bijective_bruteforce(const LinearizedPoly& L) {
  std::vector<bool> seen(L.field.size(), false);
  for (std::uint32_t x = 0; x < L.field.size(); ++x) {
    const auto v = L.eval({x}).bits;
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

LinearizedPoly linearized_difference(const SparsePoly& f, FieldElem eps) {
  if (!f.has_affine_differences()) throw DomainError("difference map is not affine for " + f.str());
  const FieldCtx& F = f.field();
  LinearizedPoly L{F, 1, std::vector<FieldElem>(F.degree(), F.zero())};
  L.coeffs[0] = eps;
  for (const Term& t : f.terms()) {
    if (std::popcount(t.exp) != 2) continue;
    const int i = std::countr_zero(t.exp);
    const int j = 63 - std::countl_zero(t.exp);
    L.coeffs[i] = FieldCtx::add(L.coeffs[i], F.mul(t.coeff, F.frob(eps, j)));
    L.coeffs[j] = FieldCtx::add(L.coeffs[j], F.mul(t.coeff, F.frob(eps, i)));
  }
  return L;
}

bool is_pseudoplanar_moore(const SparsePoly& f) {
  for (std::uint32_t e = 1; e < f.field().size(); ++e)
    if (moore_det(linearized_difference(f, {e})).is_zero()) return false;
  return true;
}

Table1Family parse_table1_family(std::string_view name) {
  if (name == "linear") return Table1Family::Linear;
  if (name == "gold_half") return Table1Family::GoldHalf;
  if (name == "scherr_zieve") return Table1Family::ScherrZieve;
  throw ParseError("unknown family '" + std::string(name) + "' (linear, gold_half, scherr_zieve)");
}

std::string to_string(Table1Family family) {
  switch (family) {
    case Table1Family::Linear: return "linear";
    case Table1Family::GoldHalf: return "gold_half";
    case Table1Family::ScherrZieve: return "scherr_zieve";
  }
  return "?";
}

bool is_dth_power(const FieldCtx& field, FieldElem a, std::uint64_t d) {
  if (a.is_zero()) throw DomainError("power test on zero");
  const std::uint64_t order = field.group_order();
  return field.pow(a, order / std::gcd(d, order)) == field.one();
}

SparsePoly construct_table1(const FieldCtx& field, Table1Family family, int k, FieldElem a) {
  const int n = field.degree();
  if (!field.valid(a)) throw DomainError("coefficient outside the field");
  if (a.is_zero()) throw DomainError("condition a != 0 violated");
  switch (family) {
    case Table1Family::Linear:
      if (k < 0 || k >= n) throw DomainError("condition 0 <= k < n violated (k = " + std::to_string(k) + ")");
      return SparsePoly::monomial(field, std::uint64_t{1} << k, a);
    case Table1Family::GoldHalf: {
      if (k <= 0 || n != 2 * k) throw DomainError("condition n = 2k violated (n = " + std::to_string(n) + ")");
      if (!in_subfield(field, a, k)) throw DomainError("condition a in F_2^" + std::to_string(k) + " violated");
      FieldElem tr{0}, cur = a;
      for (int i = 0; i < k; ++i, cur = field.square(cur)) tr = FieldCtx::add(tr, cur);
      if (!tr.is_zero()) throw DomainError("condition Tr_{n/2}(a) = 0 violated");
      return SparsePoly::monomial(field, (std::uint64_t{1} << k) + 1, a);
    }
    case Table1Family::ScherrZieve: {
      if (k <= 0 || n != 6 * k) throw DomainError("condition n = 6k violated (n = " + std::to_string(n) + ")");
      const std::uint64_t d = (std::uint64_t{1} << (2 * k)) - 1;
      if (!is_dth_power(field, a, d))
        throw DomainError("condition 'a is a (4^k-1)-th power' violated");
      if (is_dth_power(field, a, 3 * d))
        throw DomainError("condition 'a is not a 3(4^k-1)-th power' violated");
      const std::uint64_t q = std::uint64_t{1} << (2 * k);
      return SparsePoly::monomial(field, q * (q + 1), a);
    }
  }
  throw DomainError("unknown family");
}

namespace {

void require_binomial1(const FieldCtx& field, int m, FieldElem a) {
  if (m <= 0 || m % 2 != 0) throw DomainError("first binomial family needs m even and positive, got " + std::to_string(m));
  require_degree(field, 3 * m, "first binomial family");
  if (a.is_zero() || !field.valid(a)) throw DomainError("first binomial family needs a != 0");
}

}  // namespace

SparsePoly construct_binomial1(const FieldCtx& field, int m, FieldElem a) {
  require_binomial1(field, m, a);
  const std::int64_t t = std::int64_t{1} << m;
  return SparsePoly(field, {{static_cast<std::uint64_t>(t * t + 1), field.pow_signed(a, t * t + 1)},
                            {static_cast<std::uint64_t>(t + 1), field.pow_signed(a, -(t + 1))}});
}

FieldElem binomial1_trace(const FieldCtx& F, int m, FieldElem a, FieldElem e) {
  require_binomial1(F, m, a);
  const std::int64_t t = std::int64_t{1} << m;
  const FieldElem A = FieldCtx::add(F.pow_signed(a, t * t + t), F.pow_signed(a, -t * t - t - 2));
  const FieldElem B = FieldCtx::add(F.pow_signed(a, t + 1), F.pow_signed(e, t - 1));
  FieldElem x = F.mul(F.mul(A, B), F.pow_signed(e, t + 2));
  x = FieldCtx::add(x, F.mul(F.pow_signed(a, t - t * t), F.pow_signed(e, 3)));
  x = FieldCtx::add(x, F.pow_signed(e, 1 + t + t * t));
  return rel_trace(F, m, x);
}

LinearizedPoly binomial1_moore_poly(const FieldCtx& F, int m, FieldElem a, FieldElem e) {
  require_binomial1(F, m, a);
  const std::int64_t t = std::int64_t{1} << m;
  const FieldElem A = F.pow_signed(a, t * t + 1);
  const FieldElem B = F.pow_signed(a, -(t + 1));
  const FieldElem c0 = FieldCtx::add(FieldCtx::add(F.mul(A, F.frob(e, 2 * m)), F.mul(B, F.frob(e, m))), e);
  return {F, m, {c0, F.mul(B, e), F.mul(A, e)}};
}

CriterionResult binomial1_criterion(const FieldCtx& F, int m, FieldElem a) {
  for (std::uint32_t e = 1; e < F.size(); ++e)
    if (binomial1_trace(F, m, a, {e}).is_zero()) return {false, FieldElem{e}};
  return {true, std::nullopt};
}

CriterionResult binomial1_determinant_criterion(const FieldCtx& F, int m, FieldElem a) {
  for (std::uint32_t e = 1; e < F.size(); ++e)
    if (moore_det(binomial1_moore_poly(F, m, a, {e})).is_zero()) return {false, FieldElem{e}};
  return {true, std::nullopt};
}

BinomialBuild construct_binomial(const FieldCtx& field, int m, int variant) {
  if (m <= 0) throw DomainError("m must be positive");
  require_degree(field, 3 * m, "binomial family");
  const std::uint64_t p = std::uint64_t{1} << m, p2 = std::uint64_t{1} << (2 * m);
  BinomialBuild out{SparsePoly::zero(field), {}};
  if (variant == 2) {
    out.f = SparsePoly(field, {{p + 1, field.one()}, {p2 + p, field.one()}});
    if (m % 3 == 2) out.warnings.push_back("m = 2 mod 3: this binomial is not guaranteed pseudo-planar");
  } else if (variant == 3) {
    out.f = SparsePoly(field, {{p2 + 1, field.one()}, {p2 + p, field.one()}});
    if (m % 3 == 1) out.warnings.push_back("m = 1 mod 3: this binomial is not guaranteed pseudo-planar");
  } else {
    throw DomainError("binomial variant must be 2 or 3, got " + std::to_string(variant));
  }
  return out;
}

FieldElem m_epsilon(const FieldCtx& F, int m, int variant, FieldElem e) {
  if (variant != 2 && variant != 3) throw DomainError("binomial variant must be 2 or 3");
  const std::uint64_t twist = variant == 2 ? 1 + (std::uint64_t{1} << (m + 1)) : 2 + (std::uint64_t{1} << m);
  return FieldCtx::add(rel_norm(F, m, e), rel_trace(F, m, FieldCtx::add(F.pow(e, 3), F.pow(e, twist))));
}

CriterionResult binomial_criterion(const FieldCtx& F, int m, int variant) {
  for (std::uint32_t e = 1; e < F.size(); ++e)
    if (m_epsilon(F, m, variant, {e}).is_zero()) return {false, FieldElem{e}};
  return {true, std::nullopt};
}

}  // namespace pps
