#pragma once

// Exhaustive, sharded and resumable searches for pseudo-planar monomials
// c x^t and quadratic-type binomials c1 x^{2^i+2^j} + c2 x^{2^k+2^l}.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/funcs.hpp"

namespace pps {

inline constexpr int kMaxMonomialDegree = 12;
inline constexpr int kMaxBinomialDegree = 6;
inline constexpr int kMaxLongRunBinomialDegree = 9;

enum class SearchKind { Monomial, QuadBinomial };
std::string to_string(SearchKind kind);
SearchKind parse_search_kind(std::string_view name);

// Candidates with index % count == index belong to the shard.
struct Shard {
  std::uint64_t index = 0;
  std::uint64_t count = 1;

  static Shard parse(std::string_view spec);  // "k/K"
  std::string str() const;
  bool owns(std::uint64_t candidate) const { return candidate % count == index; }
  friend bool operator==(const Shard&, const Shard&) = default;
};

// Deterministic numbering of the candidates, grouped into blocks that share
// precomputation: one exponent t for monomials, one exponent pair for
// binomials. Monomials are ordered by (t, c), binomials by (e1, e2, c1, c2)
// with e1 < e2.
class SearchSpace {
 public:
  // Throws CapacityError beyond the supported degrees.
  SearchSpace(FieldCtx field, SearchKind kind, bool long_run = false);

  const FieldCtx& field() const { return field_; }
  SearchKind kind() const { return kind_; }
  std::uint64_t total() const { return block_size_ * block_count_; }
  std::uint64_t block_size() const { return block_size_; }
  std::uint64_t block_count() const { return block_count_; }
  // Exponents 2^i + 2^j (i < j < n) in ascending order.
  const std::vector<std::uint64_t>& quadratic_exponents() const { return exps_; }
  // Exponent pair of binomial block b.
  std::pair<std::uint64_t, std::uint64_t> exponent_pair(std::uint64_t block) const;

  std::vector<Term> candidate(std::uint64_t index) const;
  std::uint64_t index_of(const std::vector<Term>& terms) const;

 private:
  FieldCtx field_;
  SearchKind kind_;
  std::vector<std::uint64_t> exps_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;  // positions into exps_
  std::uint64_t block_size_ = 0;
  std::uint64_t block_count_ = 0;
};

struct Hit {
  std::uint64_t index = 0;
  std::vector<Term> terms;
  friend bool operator==(const Hit&, const Hit&) = default;
};

struct SearchOptions {
  Shard shard;
  int threads = 1;
  std::string checkpoint;  // empty: no checkpointing
  bool long_run = false;
  // Stop after this many blocks of the current invocation (for staged runs).
  std::optional<std::uint64_t> max_blocks;
  // Called after each block with (blocks finished, blocks total).
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct SearchResult {
  std::string field_spec;
  SearchKind kind = SearchKind::Monomial;
  Shard shard;
  std::uint64_t total = 0;
  std::uint64_t next = 0;  // first candidate not yet examined
  bool complete = false;
  std::vector<Hit> hits;  // sorted by index
  bool reverified = false;
  // Monomials only, on complete runs: differences from the known families
  // closed under x -> l x, restricted to this shard.
  std::vector<Hit> unexpected;
  std::vector<Hit> missing;
};

SearchResult run_search(const FieldCtx& field, SearchKind kind, const SearchOptions& opts = {});
inline SearchResult search_monomials(const FieldCtx& field, const SearchOptions& opts = {}) {
  return run_search(field, SearchKind::Monomial, opts);
}
inline SearchResult search_quad_binomials(const FieldCtx& field, const SearchOptions& opts = {}) {
  return run_search(field, SearchKind::QuadBinomial, opts);
}

// Union of the shards 0..K-1 of one search; throws DomainError when the
// pieces do not fit together.
SearchResult merge_shards(const std::vector<SearchResult>& parts);

// Known monomial families with every coefficient c l^{t-2}, sorted by index.
std::vector<Hit> predicted_monomials(const FieldCtx& field);

struct CheckpointState {
  std::string field_spec;
  SearchKind kind = SearchKind::Monomial;
  Shard shard;
  std::uint64_t next = 0;
  std::vector<std::uint64_t> hits;
  friend bool operator==(const CheckpointState&, const CheckpointState&) = default;
};

std::uint64_t fnv1a64(std::string_view data);
std::string checkpoint_serialize(const CheckpointState& state);
// Throws ParseError on malformed text or a digest mismatch.
CheckpointState checkpoint_parse(std::string_view text);
void checkpoint_save(const CheckpointState& state, const std::string& path);
CheckpointState checkpoint_resume(const std::string& path);

}  // namespace pps
