#include "pps/search.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "pps/errors.hpp"
#include "pps/kernels.hpp"

namespace pps {

namespace {

constexpr std::string_view kCheckpointHeader = "pps-checkpoint 1";

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

std::pair<int, int> split_quadratic(std::uint64_t e) {
  const int i = std::countr_zero(e);
  return {i, std::countr_zero(e & (e - 1))};
}

}  // namespace

std::string to_string(SearchKind kind) { return kind == SearchKind::Monomial ? "monomial" : "quad_binomial"; }

SearchKind parse_search_kind(std::string_view name) {
  if (name == "monomial") return SearchKind::Monomial;
  if (name == "quad_binomial") return SearchKind::QuadBinomial;
  throw ParseError("unknown search kind '" + std::string(name) + "' (monomial, quad_binomial)");
}

Shard Shard::parse(std::string_view spec) {
  const auto slash = spec.find('/');
  if (slash == std::string_view::npos) throw ParseError("bad shard '" + std::string(spec) + "' (expected k/K)");
  Shard s{parse_u64(spec.substr(0, slash), "shard index"), parse_u64(spec.substr(slash + 1), "shard count")};
  if (s.count == 0 || s.index >= s.count)
    throw DomainError("shard " + std::string(spec) + " needs 0 <= k < K");
  return s;
}

std::string Shard::str() const { return std::to_string(index) + "/" + std::to_string(count); }

SearchSpace::SearchSpace(FieldCtx field, SearchKind kind, bool long_run) : field_(std::move(field)), kind_(kind) {
  const int n = field_.degree();
  const std::uint64_t q1 = field_.group_order();
  if (kind == SearchKind::Monomial) {
    if (n > kMaxMonomialDegree)
      throw CapacityError("monomial search supports n <= " + std::to_string(kMaxMonomialDegree));
    block_size_ = q1;
    block_count_ = q1;
    return;
  }
  const int cap = long_run ? kMaxLongRunBinomialDegree : kMaxBinomialDegree;
  if (n > cap)
    throw CapacityError("binomial search at n = " + std::to_string(n) + " needs " +
                        (long_run ? "n <= " + std::to_string(kMaxLongRunBinomialDegree) : std::string("--long-run")));
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) exps_.push_back((std::uint64_t{1} << i) + (std::uint64_t{1} << j));
  std::sort(exps_.begin(), exps_.end());
  for (std::uint32_t a = 0; a < exps_.size(); ++a)
    for (std::uint32_t b = a + 1; b < exps_.size(); ++b) pairs_.emplace_back(a, b);
  block_size_ = q1 * q1;
  block_count_ = pairs_.size();
}

std::pair<std::uint64_t, std::uint64_t> SearchSpace::exponent_pair(std::uint64_t block) const {
  const auto [a, b] = pairs_.at(block);
  return {exps_[a], exps_[b]};
}

std::vector<Term> SearchSpace::candidate(std::uint64_t index) const {
  if (index >= total()) throw DomainError("candidate index " + std::to_string(index) + " out of range");
  const std::uint64_t q1 = field_.group_order();
  if (kind_ == SearchKind::Monomial)
    return {{index / q1 + 1, {static_cast<std::uint32_t>(index % q1 + 1)}}};
  const auto [e1, e2] = exponent_pair(index / block_size_);
  const std::uint64_t r = index % block_size_;
  return {{e1, {static_cast<std::uint32_t>(r / q1 + 1)}}, {e2, {static_cast<std::uint32_t>(r % q1 + 1)}}};
}

std::uint64_t SearchSpace::index_of(const std::vector<Term>& terms) const {
  const std::uint64_t q1 = field_.group_order();
  if (kind_ == SearchKind::Monomial) {
    if (terms.size() != 1 || terms[0].exp == 0 || terms[0].exp > q1 || terms[0].coeff.is_zero())
      throw DomainError("not a monomial candidate");
    return (terms[0].exp - 1) * q1 + terms[0].coeff.bits - 1;
  }
  if (terms.size() != 2) throw DomainError("not a binomial candidate");
  const auto a = std::lower_bound(exps_.begin(), exps_.end(), terms[0].exp);
  const auto b = std::lower_bound(exps_.begin(), exps_.end(), terms[1].exp);
  if (a == exps_.end() || b == exps_.end() || *a != terms[0].exp || *b != terms[1].exp || a >= b ||
      terms[0].coeff.is_zero() || terms[1].coeff.is_zero())
    throw DomainError("not a binomial candidate");
  const auto pa = static_cast<std::uint32_t>(a - exps_.begin()), pb = static_cast<std::uint32_t>(b - exps_.begin());
  const auto block = static_cast<std::uint64_t>(
      std::find(pairs_.begin(), pairs_.end(), std::pair<std::uint32_t, std::uint32_t>{pa, pb}) - pairs_.begin());
  return block * block_size_ + (terms[0].coeff.bits - 1) * q1 + terms[1].coeff.bits - 1;
}

namespace {

// Owned hits of one block, sorted.
std::vector<std::uint64_t> monomial_block(const SearchSpace& space, std::uint64_t block, const Shard& shard,
                                          int threads) {
  const FieldCtx& F = space.field();
  const std::uint64_t q1 = F.group_order();
  const std::uint64_t t = block + 1;
  std::vector<std::uint32_t> g(F.size());
  for (std::uint32_t y = 0; y < F.size(); ++y)
    g[y] = F.pow({y ^ 1u}, t).bits ^ F.pow({y}, t).bits;
  const auto good = threads == 1 ? kernels::bijective_scalars_serial(F, g)
                                 : kernels::bijective_scalars_parallel(F, g, threads);
  // c x^t passes iff c e^{t-2} is good for every e, i.e. the coset c H of
  // H = <g^d>, d = gcd(t - 2 mod q1, q1), lies in the good set.
  const std::uint64_t h = (t + q1 - 2) % q1;
  const std::uint64_t d = std::gcd(h, q1);
  const auto& log = F.log_table();
  const auto& exp = F.exp_table();
  std::vector<std::uint64_t> hits;
  for (std::uint64_t c = 1; c <= q1; ++c) {
    const std::uint64_t idx = block * q1 + c - 1;
    if (!shard.owns(idx)) continue;
    bool ok = true;
    for (std::uint64_t l = log[c]; ok && l < log[c] + q1; l += d) ok = good[exp[l % q1]] != 0;
    if (ok) hits.push_back(idx);
  }
  return hits;
}

std::vector<std::uint64_t> binomial_block(const SearchSpace& space, const kernels::QuadBinomialScanner& scanner,
                                          std::uint64_t block, const Shard& shard, int threads) {
  const std::uint64_t q1 = space.field().group_order();
  const auto [e1, e2] = space.exponent_pair(block);
  const auto [i1, j1] = split_quadratic(e1);
  const auto [i2, j2] = split_quadratic(e2);
  const std::uint64_t base = block * space.block_size();
  std::vector<std::vector<std::uint64_t>> per_thread(static_cast<std::size_t>(threads));
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
  for (std::int64_t c1 = 1; c1 <= static_cast<std::int64_t>(q1); ++c1) {
    auto& out = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
    for (std::uint64_t c2 = 1; c2 <= q1; ++c2) {
      const std::uint64_t idx = base + (static_cast<std::uint64_t>(c1) - 1) * q1 + c2 - 1;
      if (!shard.owns(idx)) continue;
      if (scanner.scan(i1, j1, static_cast<std::uint32_t>(c1), i2, j2, static_cast<std::uint32_t>(c2)) == 0)
        out.push_back(idx);
    }
  }
  std::vector<std::uint64_t> hits;
  for (const auto& v : per_thread) hits.insert(hits.end(), v.begin(), v.end());
  std::sort(hits.begin(), hits.end());
  return hits;
}

std::vector<Hit> to_hits(const SearchSpace& space, const std::vector<std::uint64_t>& idx) {
  std::vector<Hit> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back({i, space.candidate(i)});
  return out;
}

}  // namespace

std::vector<Hit> predicted_monomials(const FieldCtx& field) {
  const SearchSpace space(field, SearchKind::Monomial);
  const int n = field.degree();
  const std::uint64_t q1 = field.group_order();
  std::set<std::uint64_t> idx;
  auto add_closure = [&](std::uint64_t t, FieldElem a) {
    const std::uint64_t h = (t + q1 - 2) % q1;
    for (std::uint32_t l = 1; l <= q1; ++l) {
      const FieldElem c = field.mul(a, field.pow({l}, h));
      idx.insert((t - 1) * q1 + c.bits - 1);
    }
  };
  auto literal_rows = [&](Table1Family family, int k) {
    for (std::uint32_t a = 1; a <= q1; ++a) {
      try {
        const SparsePoly f = construct_table1(field, family, k, {a});
        add_closure(f.terms().at(0).exp, {a});
      } catch (const DomainError&) {
      }
    }
  };
  for (int k = 0; k < n; ++k) literal_rows(Table1Family::Linear, k);
  if (n % 2 == 0) literal_rows(Table1Family::GoldHalf, n / 2);
  if (n % 6 == 0) literal_rows(Table1Family::ScherrZieve, n / 6);
  return to_hits(space, {idx.begin(), idx.end()});
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string checkpoint_serialize(const CheckpointState& s) {
  std::ostringstream body;
  body << kCheckpointHeader << '\n'
       << "field " << s.field_spec << '\n'
       << "kind " << to_string(s.kind) << '\n'
       << "shard " << s.shard.str() << '\n'
       << "next " << s.next << '\n'
       << "hits " << s.hits.size();
  for (auto h : s.hits) body << ' ' << h;
  body << '\n';
  const std::string text = body.str();
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
  return text + "digest " + digest + '\n';
}

CheckpointState checkpoint_parse(std::string_view text) {
  const auto pos = text.rfind("digest ");
  if (pos == std::string_view::npos || (pos != 0 && text[pos - 1] != '\n'))
    throw ParseError("checkpoint has no digest line");
  const std::string_view body = text.substr(0, pos);
  std::string_view dline = text.substr(pos + 7);
  while (!dline.empty() && (dline.back() == '\n' || dline.back() == '\r')) dline.remove_suffix(1);
  char expect[17];
  std::snprintf(expect, sizeof expect, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  if (dline != expect)
    throw ParseError("checkpoint digest mismatch (stored " + std::string(dline) + ", computed " + expect + ")");

  std::istringstream in{std::string(body)};
  std::string line;
  std::getline(in, line);
  if (line != kCheckpointHeader) throw ParseError("not a version 1 checkpoint: '" + line + "'");
  auto field = [&](const char* key) {
    std::string k, v;
    if (!std::getline(in, line)) throw ParseError(std::string("checkpoint is missing '") + key + "'");
    std::istringstream ls(line);
    ls >> k;
    std::getline(ls >> std::ws, v);
    if (k != key) throw ParseError(std::string("checkpoint expected '") + key + "', found '" + k + "'");
    return v;
  };
  CheckpointState s;
  s.field_spec = field("field");
  s.kind = parse_search_kind(field("kind"));
  s.shard = Shard::parse(field("shard"));
  s.next = parse_u64(field("next"), "next index");
  std::istringstream hs(field("hits"));
  std::string tok;
  hs >> tok;
  const std::uint64_t count = parse_u64(tok, "hit count");
  while (hs >> tok) s.hits.push_back(parse_u64(tok, "hit index"));
  if (s.hits.size() != count) throw ParseError("checkpoint hit count does not match its list");
  if (!std::is_sorted(s.hits.begin(), s.hits.end())) throw ParseError("checkpoint hits are not sorted");
  return s;
}

void checkpoint_save(const CheckpointState& state, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write checkpoint " + tmp);
    out << checkpoint_serialize(state);
    if (!out) throw DomainError("failed writing checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

CheckpointState checkpoint_resume(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read checkpoint " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return checkpoint_parse(buf.str());
}

SearchResult run_search(const FieldCtx& field, SearchKind kind, const SearchOptions& opts) {
  const SearchSpace space(field, kind, opts.long_run);
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

  CheckpointState state{field.spec(), kind, opts.shard, 0, {}};
  if (!opts.checkpoint.empty() && std::filesystem::exists(opts.checkpoint)) {
    const CheckpointState saved = checkpoint_resume(opts.checkpoint);
    if (saved.field_spec != state.field_spec || saved.kind != kind || !(saved.shard == opts.shard))
      throw DomainError("checkpoint " + opts.checkpoint + " belongs to field " + saved.field_spec + ", " +
                        to_string(saved.kind) + ", shard " + saved.shard.str());
    if (saved.next > space.total() || saved.next % space.block_size() != 0)
      throw DomainError("checkpoint position " + std::to_string(saved.next) + " is not a block boundary");
    state = saved;
  }

  std::optional<kernels::QuadBinomialScanner> scanner;
  if (kind == SearchKind::QuadBinomial) scanner.emplace(field);

  using Clock = std::chrono::steady_clock;
  auto last_save = Clock::now();
  std::uint64_t done_here = 0;
  for (std::uint64_t block = state.next / space.block_size(); block < space.block_count(); ++block) {
    if (opts.max_blocks && done_here >= *opts.max_blocks) break;
    const auto found = kind == SearchKind::Monomial ? monomial_block(space, block, opts.shard, threads)
                                                    : binomial_block(space, *scanner, block, opts.shard, threads);
    state.hits.insert(state.hits.end(), found.begin(), found.end());
    state.next = (block + 1) * space.block_size();
    ++done_here;
    if (opts.progress) opts.progress(block + 1, space.block_count());
    if (!opts.checkpoint.empty() && Clock::now() - last_save > std::chrono::seconds(2)) {
      checkpoint_save(state, opts.checkpoint);
      last_save = Clock::now();
    }
  }
  if (!opts.checkpoint.empty()) checkpoint_save(state, opts.checkpoint);

  SearchResult res;
  res.field_spec = state.field_spec;
  res.kind = kind;
  res.shard = opts.shard;
  res.total = space.total();
  res.next = state.next;
  res.complete = state.next == space.total();
  res.hits = to_hits(space, state.hits);

  // Independent single-threaded pass through the direct test.
  res.reverified = std::all_of(res.hits.begin(), res.hits.end(),
                               [&](const Hit& h) { return is_pseudoplanar(SparsePoly(field, h.terms), 1); });

  if (kind == SearchKind::Monomial && res.complete) {
    std::vector<Hit> predicted;
    for (auto& h : predicted_monomials(field))
      if (opts.shard.owns(h.index)) predicted.push_back(std::move(h));
    auto less = [](const Hit& a, const Hit& b) { return a.index < b.index; };
    std::set_difference(res.hits.begin(), res.hits.end(), predicted.begin(), predicted.end(),
                        std::back_inserter(res.unexpected), less);
    std::set_difference(predicted.begin(), predicted.end(), res.hits.begin(), res.hits.end(),
                        std::back_inserter(res.missing), less);
  }
  return res;
}

SearchResult merge_shards(const std::vector<SearchResult>& parts) {
  if (parts.empty()) throw DomainError("nothing to merge");
  const std::uint64_t count = parts[0].shard.count;
  if (parts.size() != count) throw DomainError("expected " + std::to_string(count) + " shards");
  std::vector<char> seen(count, 0);
  SearchResult out;
  out.field_spec = parts[0].field_spec;
  out.kind = parts[0].kind;
  out.total = parts[0].total;
  out.complete = true;
  out.reverified = true;
  out.next = out.total;
  for (const auto& p : parts) {
    if (p.field_spec != out.field_spec || p.kind != out.kind || p.shard.count != count)
      throw DomainError("shards come from different searches");
    if (seen[p.shard.index]++) throw DomainError("shard " + p.shard.str() + " given twice");
    out.complete = out.complete && p.complete;
    out.reverified = out.reverified && p.reverified;
    out.next = std::min(out.next, p.next);
    out.hits.insert(out.hits.end(), p.hits.begin(), p.hits.end());
    out.unexpected.insert(out.unexpected.end(), p.unexpected.begin(), p.unexpected.end());
    out.missing.insert(out.missing.end(), p.missing.begin(), p.missing.end());
  }
  auto less = [](const Hit& a, const Hit& b) { return a.index < b.index; };
  std::sort(out.hits.begin(), out.hits.end(), less);
  std::sort(out.unexpected.begin(), out.unexpected.end(), less);
  std::sort(out.missing.begin(), out.missing.end(), less);
  return out;
}

}  // namespace pps
