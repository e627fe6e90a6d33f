#pragma once

// The partition S_0..S_5 of GR(4,n) built from a pseudo-planar function, its
// Schur ring axioms, eigenmatrices, dual classes, Fourier spectrum and
// Bannai-Muzychuk fusions.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pps/exact.hpp"
#include "pps/funcs.hpp"
#include "pps/groupring.hpp"

namespace pps {

inline constexpr int kSlots = 6;

// Six class slots; for n <= 2 some of them are empty but keep their index.
struct Partition6 {
  GroupCtx group;
  std::vector<GroupRingVec> classes;
  std::vector<std::uint8_t> label;  // slot of every ring index

  std::array<std::uint64_t, kSlots> sizes() const;
  std::vector<int> nonempty() const;
};

// f + f(0), the representative with f(0) = 0.
SparsePoly vanish_at_zero(const SparsePoly& f);

// Requires d to be an RDS containing 0; throws DomainError otherwise.
Partition6 build_partition(const GroupRingVec& d, int threads = 1);

using PTensor = std::array<std::array<std::array<std::int64_t, kSlots>, kSlots>, kSlots>;  // p[i][j][k]

// S_i S_j takes the values at_g and at_h on two points g, h of S_k.
struct SchurWitness {
  int i = 0, j = 0, k = 0;
  std::uint64_t g = 0, h = 0;
  std::int64_t at_g = 0, at_h = 0;
};

struct SchurResult {
  bool ok = false;
  PTensor p{};
  std::optional<SchurWitness> witness;
};

// Every product S_i S_j must be constant on every S_k. The 36 products run
// in parallel when threads != 1.
SchurResult verify_schur(const Partition6& p, int threads = 1);

struct LemmaReport {
  bool difference_identity = false;     // S1 S1^(-1) = (2^n - 1) 0 + S4 + S5
  bool square_multiplicities = false;   // S1^2: S3 once, everything else 0 or 2
  bool square_identity = false;         // S3 + 2S4 (odd n), S3 + 2S2 + 2S4 (even n)
  bool multiplicity_sum = false;        // half the mass of S1^2 off S3 is (2^n-1)(2^{n-1}-1)
  bool ok() const { return difference_identity && square_multiplicities && square_identity && multiplicity_sum; }
};
LemmaReport lemma_check(const Partition6& p, int threads = 1);

// chi_a(S_i) for every class, indexed [slot][a].
std::vector<SpectrumVec> class_spectra(const Partition6& p, int threads = 1);

struct DualPartition {
  std::vector<std::uint8_t> slot;  // dual class of every character index
  std::array<std::uint64_t, kSlots> sizes{};
  std::vector<int> nonempty() const;
};

// Slots follow the value of chi(S_1). Throws StructureError when a character
// falls outside the six expected values, when two characters of one slot
// disagree on some class, or (n >= 3) when a slot stays empty.
DualPartition dual_partition(const Partition6& p, const std::vector<SpectrumVec>& spectra);

// P[j][i] = chi(S_i) for chi in E_j over the nonempty slots.
GaussIntMatrix eigen_P(const Partition6& p, const DualPartition& dual, const std::vector<SpectrumVec>& spectra);

// Closed forms with b = 2^{(n-1)/2} (odd n) or 2^{(n-2)/2} (even n). At
// n <= 2 they are 6x6 matrices containing the vanishing rows and columns.
GaussIntMatrix closed_form_P(int n);
GaussRatMatrix closed_form_Q(int n);
std::array<std::uint64_t, kSlots> closed_form_dual_sizes(int n);
std::array<std::uint64_t, kSlots> closed_form_class_sizes(int n);

// Column partition Lambda with Lambda_0 = {0}. Rows are grouped by their
// block row sums; the fusion succeeds when that yields |Lambda| groups.
struct FusionResult {
  bool ok = false;
  GaussIntMatrix fused;
  std::vector<std::vector<int>> row_blocks;
  std::string refusal;
};
FusionResult bm_fuse(const GaussIntMatrix& P, const std::vector<std::vector<int>>& lambda);

// Closed-form P for n <= 2 with vanishing dual rows dropped and empty class
// columns merged into a neighbour, fused by bm_fuse. Equals closed_form_P
// for n >= 3.
GaussIntMatrix expected_P(int n);

struct SchemeReport {
  Partition6 partition;
  SparsePoly f;  // the normalized function, f(0) = 0
  SchurResult schur;
  LemmaReport lemmas;
  DualPartition dual;
  GaussIntMatrix P;
  GaussRatMatrix Q;
  int class_count = 0;
  bool pq_identity = false;
  bool matches_closed_P = false;
  std::optional<bool> matches_closed_Q;  // only defined for n >= 3
  bool valid() const;
};

// f is shifted by the constant f(0) so that 0 lies in D_f. Throws
// DomainError when f is not pseudo-planar.
SchemeReport build_scheme(const SparsePoly& f, int threads = 1);

struct SpectrumEntry {
  GaussInt value;
  std::uint64_t frequency = 0;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};
using Spectrum = std::vector<SpectrumEntry>;  // sorted by (re, im)

// Value multiset of chi(D_f) with D_f built from f as given.
Spectrum raw_spectrum(const SparsePoly& f, int threads = 1);
// Same after the f(0) shift; requires f pseudo-planar.
Spectrum fourier_spectrum(const SparsePoly& f, int threads = 1);
Spectrum closed_form_spectrum(int n);

}  // namespace pps
