#include "pps/gf2n.hpp"

#include <bit>
#include <charconv>
#include <cstdio>

#include "pps/errors.hpp"

namespace pps {

namespace f2poly {

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  const int d = degree(mod);
  const std::uint64_t top = std::uint64_t{1} << d;
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= mod;
  }
  return r;
}

static std::uint64_t rem(std::uint64_t a, std::uint64_t b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = rem(a, b);
    std::swap(a, b);
  }
  return a;
}

int smallest_factor_degree(std::uint64_t p) {
  const int n = degree(p);
  if (n <= 0) return 0;
  if ((p & 1) == 0) return 1;
  // x^(2^i) mod p; a common factor with x^(2^i) - x has degree dividing i,
  // so the first hit is the smallest factor degree.
  if (n == 1) return 0;
  std::uint64_t xi = 2;
  for (int i = 1; i <= n / 2; ++i) {
    xi = mulmod(xi, xi, p);
    if (gcd(p, xi ^ 2) != 1) return i;
  }
  return 0;
}

}  // namespace f2poly

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::string hex(std::uint64_t v) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, 16);
  return std::string(buf, end);
}

std::uint64_t parse_hex(std::string_view s, const char* what) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(std::string("bad hex ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

FieldCtx FieldCtx::create(int n, std::optional<std::uint64_t> modulus) {
  if (n < 1 || n > kMaxFieldDegree)
    throw DomainError("field degree " + std::to_string(n) + " outside [1, " +
                      std::to_string(kMaxFieldDegree) + "]");
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->size = std::uint32_t{1} << n;
  const std::uint64_t top = std::uint64_t{1} << n;

  if (modulus) {
    const std::uint64_t p = *modulus;
    if (f2poly::degree(p) != n)
      throw DomainError("modulus 0x" + hex(p) + " is not monic of degree " + std::to_string(n));
    if ((p & 1) == 0)
      throw DomainError("modulus 0x" + hex(p) + " is divisible by x (factor of degree 1)");
    if (int d = f2poly::smallest_factor_degree(p); d != 0)
      throw DomainError("modulus 0x" + hex(p) + " is reducible: it has an irreducible factor of degree " +
                        std::to_string(d));
    impl->modulus = p;
  } else {
    for (std::uint64_t p = top | 1; p < 2 * top; p += 2) {
      if (f2poly::smallest_factor_degree(p) == 0) {
        impl->modulus = p;
        break;
      }
    }
  }

  const std::uint64_t order = impl->size - 1;
  impl->order_primes = order > 1 ? prime_factors(order) : std::vector<std::uint64_t>{};

  FieldCtx tmp(impl);
  // Primitive element search uses shift-and-reduce; tables come after.
  for (std::uint32_t g = 1; g < impl->size; ++g) {
    bool primitive = true;
    for (std::uint64_t q : impl->order_primes) {
      if (tmp.pow({g}, order / q) == FieldElem{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      impl->generator = g;
      break;
    }
  }

  if (n <= kMaxTableDegree) {
    impl->exp.resize(2 * order);
    impl->log.assign(impl->size, 0);
    FieldElem cur{1};
    for (std::uint64_t i = 0; i < order; ++i) {
      impl->exp[i] = cur.bits;
      impl->exp[i + order] = cur.bits;
      impl->log[cur.bits] = static_cast<std::uint32_t>(i);
      cur = tmp.mul_shift(cur, {impl->generator});
    }
  }
  return FieldCtx(std::move(impl));
}

FieldCtx FieldCtx::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view nstr = spec.substr(0, colon);
  int n = 0;
  auto [ptr, ec] = std::from_chars(nstr.data(), nstr.data() + nstr.size(), n);
  if (nstr.empty() || ec != std::errc{} || ptr != nstr.data() + nstr.size())
    throw ParseError("bad field spec '" + std::string(spec) + "' (expected n:POLYHEX)");
  if (colon == std::string_view::npos || colon + 1 == spec.size()) return create(n);
  return create(n, parse_hex(spec.substr(colon + 1), "modulus"));
}

std::string FieldCtx::spec() const { return std::to_string(impl_->n) + ":" + hex(impl_->modulus); }

FieldElem FieldCtx::elem(std::uint32_t bits) const {
  if (bits >= impl_->size)
    throw DomainError("element 0x" + hex(bits) + " outside F_2^" + std::to_string(impl_->n));
  return {bits};
}

FieldElem FieldCtx::mul_shift(FieldElem a, FieldElem b) const {
  return {static_cast<std::uint32_t>(f2poly::mulmod(a.bits, b.bits, impl_->modulus))};
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  if (a.bits == 0 || b.bits == 0) return {0};
  if (!impl_->log.empty()) return {impl_->exp[impl_->log[a.bits] + impl_->log[b.bits]]};
  return mul_shift(a, b);
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t e) const {
  if (e == 0) return {1};
  if (a.bits == 0) return {0};
  const std::uint64_t order = impl_->size - 1;
  if (!impl_->log.empty()) {
    const std::uint64_t l = (static_cast<std::uint64_t>(impl_->log[a.bits]) * (e % order)) % order;
    return {impl_->exp[l]};
  }
  e %= order;
  FieldElem r{1};
  while (e != 0) {
    if (e & 1) r = mul_shift(r, a);
    a = mul_shift(a, a);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::pow_signed(FieldElem a, std::int64_t e) const {
  if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
  if (a.bits == 0) throw DomainError("negative power of zero");
  const auto order = static_cast<std::int64_t>(impl_->size - 1);
  std::int64_t r = e % order;
  if (r < 0) r += order;
  return pow(a, static_cast<std::uint64_t>(r));
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.bits == 0) throw DomainError("inverse of zero");
  return pow(a, impl_->size - 2);
}

FieldElem FieldCtx::frob(FieldElem a, int k) const {
  k %= impl_->n;
  if (k < 0) k += impl_->n;
  for (int i = 0; i < k; ++i) a = square(a);
  return a;
}

FieldElem FieldCtx::sqrt(FieldElem a) const { return frob(a, impl_->n - 1); }

int FieldCtx::abs_trace(FieldElem a) const {
  FieldElem s{0};
  FieldElem cur = a;
  for (int i = 0; i < impl_->n; ++i) {
    s = add(s, cur);
    cur = square(cur);
  }
  return static_cast<int>(s.bits);
}

std::string FieldCtx::format(FieldElem a) const { return hex(a.bits); }

FieldElem FieldCtx::parse_elem(std::string_view s) const {
  const std::uint64_t v = parse_hex(s, "element");
  if (v >= impl_->size)
    throw DomainError("element 0x" + hex(v) + " outside F_2^" + std::to_string(impl_->n));
  return {static_cast<std::uint32_t>(v)};
}

std::uint64_t mult_order(const FieldCtx& ctx, FieldElem a) {
  if (a.is_zero()) throw DomainError("multiplicative order of zero");
  std::uint64_t t = ctx.group_order();
  for (std::uint64_t p : ctx.order_factors()) {
    while (t % p == 0 && ctx.pow(a, t / p) == ctx.one()) t /= p;
  }
  return t;
}

bool in_subfield(const FieldCtx& ctx, FieldElem a, int d) {
  if (d <= 0 || ctx.degree() % d != 0)
    throw DomainError(std::to_string(d) + " does not divide " + std::to_string(ctx.degree()));
  return ctx.frob(a, d) == a;
}

static void require_cubic(const FieldCtx& ctx, int m) {
  if (m <= 0 || ctx.degree() != 3 * m)
    throw DomainError("relative trace/norm needs degree 3m; got n=" + std::to_string(ctx.degree()) +
                      ", m=" + std::to_string(m));
}

FieldElem rel_trace(const FieldCtx& ctx, int m, FieldElem e) {
  require_cubic(ctx, m);
  const FieldElem e1 = ctx.frob(e, m);
  const FieldElem e2 = ctx.frob(e1, m);
  return FieldCtx::add(FieldCtx::add(e, e1), e2);
}

FieldElem rel_norm(const FieldCtx& ctx, int m, FieldElem e) {
  require_cubic(ctx, m);
  const FieldElem e1 = ctx.frob(e, m);
  const FieldElem e2 = ctx.frob(e1, m);
  return ctx.mul(ctx.mul(e, e1), e2);
}

TraceNorm rel_trace_norm(const FieldCtx& ctx, int m, FieldElem e) {
  return {rel_trace(ctx, m, e), rel_norm(ctx, m, e)};
}

CubicData cubic_invariants(const FieldCtx& ctx, int m, FieldElem e) {
  require_cubic(ctx, m);
  if (ctx.frob(e, m) == e)
    throw DomainError("element " + ctx.format(e) + " lies in F_2^" + std::to_string(m) +
                      "; its minimal polynomial is not cubic");
  const FieldElem x1 = e;
  const FieldElem x2 = ctx.frob(e, m);
  const FieldElem x3 = ctx.frob(x2, m);
  CubicData c;
  c.m = m;
  c.epsilon = e;
  c.B1 = FieldCtx::add(FieldCtx::add(x1, x2), x3);
  c.B2 = FieldCtx::add(FieldCtx::add(ctx.mul(x1, x2), ctx.mul(x1, x3)), ctx.mul(x2, x3));
  c.B3 = ctx.mul(ctx.mul(x1, x2), x3);
  c.u1 = rel_trace(ctx, m, ctx.mul(x1, ctx.square(x3)));
  c.u2 = rel_trace(ctx, m, ctx.mul(x1, ctx.square(x2)));
  return c;
}

}  // namespace pps
