// ppschemes: command-line driver for the pps library.
//
// Exit codes: 0 verified true, 1 verified false, 2 usage or domain error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pps/errors.hpp"
#include "pps/funcs.hpp"
#include "pps/groupring.hpp"
#include "pps/io.hpp"
#include "pps/scheme.hpp"
#include "pps/search.hpp"

using namespace pps;
using io::Json;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

// An error attributable to one flag or value.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string field;
  std::string modulus_override;
  std::string f;
  std::string out = "text";
  int threads = 1;
  std::string shard = "0/1";
  std::string checkpoint;
  bool long_run = false;
  bool progress = false;
  std::optional<std::uint64_t> max_blocks;
  bool raw = false;
  bool closed_form = false;
  std::string blocks;
  std::string family;
  int k = 0;
  int m = 0;
  std::string a = "1";
};

struct Outcome {
  int code = kTrue;
  Json result;
  std::string text;
  std::string csv;  // only spectrum fills this
};

template <class Fn>
auto flag(const char* name, const std::string& value, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw UsageError(std::string(name) + " '" + value + "': " + e.what());
  }
}

FieldCtx make_field(const RunConfig& cfg) {
  if (cfg.field.empty()) throw UsageError("--field is required");
  if (cfg.modulus_override.empty()) return flag("--field", cfg.field, [&] { return FieldCtx::parse(cfg.field); });
  const int n = flag("--field", cfg.field, [&] { return FieldCtx::parse(cfg.field).degree(); });
  return flag("--modulus-override", cfg.modulus_override, [&] {
    std::size_t used = 0;
    const std::uint64_t mod = std::stoull(cfg.modulus_override, &used, 16);
    if (used != cfg.modulus_override.size()) throw ParseError("not a hexadecimal polynomial");
    return FieldCtx::create(n, mod);
  });
}

SparsePoly make_poly(const FieldCtx& field, const RunConfig& cfg, bool required) {
  if (cfg.f.empty()) {
    if (required) throw UsageError("--f is required");
    return SparsePoly::zero(field);
  }
  return flag("--f", cfg.f, [&] { return SparsePoly::parse(field, cfg.f); });
}

void require_group_capacity(const FieldCtx& field) {
  if (field.degree() > kMaxGroupRingDegree)
    throw UsageError("--field '" + field.spec() + "': group ring computations support n <= " +
                     std::to_string(kMaxGroupRingDegree));
}

// Domain errors raised while computing on f are reported against --f.
template <class Fn>
auto on_f(const RunConfig& cfg, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw UsageError("--f '" + (cfg.f.empty() ? std::string("0") : cfg.f) + "': " + e.what());
  }
}

std::string gauss_str(GaussInt v) { return v.str(); }

template <class M>
std::string matrix_text(const M& m) {
  std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
  std::size_t width = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      cells[r][c] = m(r, c).str();
      width = std::max(width, cells[r][c].size());
    }
  std::ostringstream out;
  for (const auto& row : cells) {
    out << ' ';
    for (const auto& s : row) out << ' ' << std::string(width - s.size(), ' ') << s;
    out << '\n';
  }
  return out.str();
}

template <class A>
std::string join(const A& a, const char* sep = " ") {
  std::ostringstream out;
  bool first = true;
  for (const auto& x : a) {
    if (!first) out << sep;
    out << x;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------- commands

Outcome cmd_field_info(const RunConfig& cfg) {
  const FieldCtx F = make_field(cfg);
  std::ostringstream mod;
  mod << std::hex << F.modulus();
  Outcome o;
  o.result = Json{{"field", F.spec()},
                  {"degree", F.degree()},
                  {"modulus", mod.str()},
                  {"size", F.size()},
                  {"generator", F.format(F.generator())},
                  {"group_order", F.group_order()},
                  {"order_prime_factors", F.order_factors()}};
  std::ostringstream t;
  t << "field " << F.spec() << "\n"
    << "degree " << F.degree() << "\nmodulus 0x" << mod.str() << "\nsize " << F.size() << "\ngenerator "
    << F.format(F.generator()) << "\nmultiplicative order " << F.group_order() << " = primes {"
    << join(F.order_factors(), ",") << "}\n";
  o.text = t.str();
  return o;
}

Outcome cmd_pp_test(const RunConfig& cfg) {
  const FieldCtx F = make_field(cfg);
  const SparsePoly f = make_poly(F, cfg, true);
  const PPResult r = test_pseudoplanar(f, cfg.threads);
  Outcome o;
  o.code = r.pseudoplanar ? kTrue : kFalse;
  o.result = Json{{"pseudoplanar", r.pseudoplanar}, {"witness", nullptr}};
  std::ostringstream t;
  t << "f = " << f.str() << " on " << F.spec() << "\npseudo-planar: " << (r.pseudoplanar ? "true" : "false") << '\n';
  if (r.witness_eps) {
    o.result["witness"] =
        Json{{"epsilon", F.format(*r.witness_eps)}, {"x1", F.format(r.x1)}, {"x2", F.format(r.x2)}};
    t << "witness: epsilon = " << F.format(*r.witness_eps) << " maps x1 = " << F.format(r.x1)
      << " and x2 = " << F.format(r.x2) << " to the same value\n";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_construct(const RunConfig& cfg) {
  const FieldCtx F = make_field(cfg);
  if (cfg.family.empty()) throw UsageError("--family is required");
  std::optional<SparsePoly> f;
  std::optional<CriterionResult> crit;
  std::vector<std::string> warnings;
  const auto elem = [&] { return flag("--a", cfg.a, [&] { return F.parse_elem(cfg.a); }); };
  if (cfg.family == "binomial1") {
    const FieldElem a = elem();
    f = flag("--m", std::to_string(cfg.m), [&] { return construct_binomial1(F, cfg.m, a); });
    crit = binomial1_criterion(F, cfg.m, a);
  } else if (cfg.family == "binomial2" || cfg.family == "binomial3") {
    const int variant = cfg.family == "binomial2" ? 2 : 3;
    auto built = flag("--m", std::to_string(cfg.m), [&] { return construct_binomial(F, cfg.m, variant); });
    f = built.f;
    warnings = built.warnings;
    crit = binomial_criterion(F, cfg.m, variant);
  } else {
    const Table1Family fam = flag("--family", cfg.family, [&] { return parse_table1_family(cfg.family); });
    const FieldElem a = elem();
    f = flag("--family", cfg.family, [&] { return construct_table1(F, fam, cfg.k, a); });
  }
  const PPResult r = test_pseudoplanar(*f, cfg.threads);
  Outcome o;
  o.code = r.pseudoplanar ? kTrue : kFalse;
  o.result = Json{{"f", f->str()}, {"pseudoplanar", r.pseudoplanar}, {"criterion", nullptr}, {"warnings", warnings}};
  std::ostringstream t;
  t << "f = " << f->str() << "\npseudo-planar: " << (r.pseudoplanar ? "true" : "false") << '\n';
  if (crit) {
    o.result["criterion"] = Json{{"holds", crit->holds},
                                 {"witness", crit->witness ? Json(F.format(*crit->witness)) : Json(nullptr)}};
    t << "criterion: " << (crit->holds ? "true" : "false");
    if (crit->witness) t << " (epsilon = " << F.format(*crit->witness) << ')';
    t << '\n';
  }
  for (const auto& w : warnings) t << "warning: " << w << '\n';
  o.text = t.str();
  return o;
}

Outcome cmd_rds_verify(const RunConfig& cfg) {
  const FieldCtx F = make_field(cfg);
  const SparsePoly f = make_poly(F, cfg, false);
  require_group_capacity(F);
  const GroupCtx G = GroupCtx::create(F);
  const RdsReport r = verify_rds(build_Df(G, f), cfg.threads);
  Outcome o;
  o.code = r.ok ? kTrue : kFalse;
  o.result = io::to_json(r);
  std::ostringstream t;
  t << "D_f D_f^(-1) = 2^n + (R - Z): " << (r.ok ? "true" : "false") << '\n';
  if (!r.ok) {
    t << r.violation_count << " coefficients differ; first ones:\n";
    for (const auto& v : r.violations)
      t << "  index " << v.idx << ": expected " << v.expected << ", got " << v.actual << '\n';
  }
  o.text = t.str();
  return o;
}

Outcome cmd_scheme_build(const RunConfig& cfg, bool eigen_only) {
  const FieldCtx F = make_field(cfg);
  const SparsePoly f = make_poly(F, cfg, false);
  require_group_capacity(F);
  Outcome o;
  if (eigen_only && cfg.closed_form) {
    const int n = F.degree();
    const GaussIntMatrix P = expected_P(n);
    o.result = Json{{"P", io::to_json(P)}, {"Q", io::to_json(scaled_inverse(P, std::int64_t{1} << (2 * n)))}};
    o.text = "P\n" + matrix_text(P) + "Q\n" + matrix_text(scaled_inverse(P, std::int64_t{1} << (2 * n)));
    return o;
  }
  const SchemeReport rep = on_f(cfg, [&] { return build_scheme(f, cfg.threads); });
  o.code = rep.valid() ? kTrue : kFalse;
  const Json full = io::to_json(rep);
  if (eigen_only) {
    o.result = Json{{"field", full["field"]}, {"function", full["function"]}, {"rows", full["rows"]},
                    {"columns", full["columns"]}, {"P", full["P"]}, {"Q", full["Q"]}, {"checks", full["checks"]}};
  } else {
    o.result = full;
  }
  std::ostringstream t;
  t << "f = " << rep.f.str() << " on " << F.spec() << "\n";
  if (!eigen_only) {
    t << "class sizes " << join(rep.partition.sizes()) << "\ndual sizes  " << join(rep.dual.sizes) << "\n";
    t << "schur ring: " << (rep.schur.ok ? "true" : "false") << '\n';
    if (rep.schur.witness) {
      const auto& w = *rep.schur.witness;
      t << "  S" << w.i << " S" << w.j << " is " << w.at_g << " at " << w.g << " but " << w.at_h << " at " << w.h
        << ", both in S" << w.k << '\n';
    }
    t << "lemmas: " << (rep.lemmas.ok() ? "true" : "false") << '\n';
  }
  t << rep.class_count << "-class scheme\nP\n" << matrix_text(rep.P) << "Q\n" << matrix_text(rep.Q);
  t << "P Q = 4^n I: " << (rep.pq_identity ? "true" : "false") << "\nP matches closed form: "
    << (rep.matches_closed_P ? "true" : "false") << '\n';
  if (rep.matches_closed_Q) t << "Q matches closed form: " << (*rep.matches_closed_Q ? "true" : "false") << '\n';
  t << "valid: " << (rep.valid() ? "true" : "false") << '\n';
  o.text = t.str();
  return o;
}

Outcome cmd_spectrum(const RunConfig& cfg) {
  const FieldCtx F = make_field(cfg);
  const SparsePoly f = make_poly(F, cfg, false);
  require_group_capacity(F);
  const Spectrum s = on_f(cfg, [&] { return cfg.raw ? raw_spectrum(f, cfg.threads) : fourier_spectrum(f, cfg.threads); });
  Outcome o;
  o.result = Json{{"raw", cfg.raw}, {"spectrum", io::to_json(s)}};
  if (!cfg.raw) {
    const bool match = s == closed_form_spectrum(F.degree());
    o.result["matches_closed_form"] = match;
    o.code = match ? kTrue : kFalse;
  }
  o.csv = io::spectrum_csv(s);
  std::ostringstream t;
  for (const auto& e : s) t << gauss_str(e.value) << " : " << e.frequency << '\n';
  o.text = t.str();
  return o;
}

class ProgressPrinter {
 public:
  explicit ProgressPrinter(bool enabled) : enabled_(enabled), start_(Clock::now()), last_(start_) {}

  void operator()(std::uint64_t done, std::uint64_t total) {
    if (!enabled_) return;
    const auto now = Clock::now();
    if (done < total && now - last_ < std::chrono::seconds(1)) return;
    last_ = now;
    const double elapsed = std::chrono::duration<double>(now - start_).count();
    if (done > first_) {
      const double rate = static_cast<double>(done - first_) / std::max(elapsed, 1e-9);
      const double eta = static_cast<double>(total - done) / rate;
      std::fprintf(stderr, "\rblock %llu/%llu  %.1f%%  elapsed %.0fs  eta %.0fs   ", (unsigned long long)done,
                   (unsigned long long)total, 100.0 * done / total, elapsed, eta);
    } else {
      first_ = done;
    }
    if (done == total) std::fputc('\n', stderr);
  }

 private:
  using Clock = std::chrono::steady_clock;
  bool enabled_;
  Clock::time_point start_, last_;
  std::uint64_t first_ = 0;
};

Outcome cmd_search(const RunConfig& cfg, SearchKind kind) {
  const FieldCtx F = make_field(cfg);
  SearchOptions opts;
  opts.shard = flag("--shard", cfg.shard, [&] { return Shard::parse(cfg.shard); });
  opts.threads = cfg.threads;
  opts.checkpoint = cfg.checkpoint;
  opts.long_run = cfg.long_run;
  opts.max_blocks = cfg.max_blocks;
  flag("--field", F.spec(), [&] { return SearchSpace(F, kind, cfg.long_run); });
  auto printer = std::make_shared<ProgressPrinter>(cfg.progress || cfg.long_run);
  opts.progress = [printer](std::uint64_t d, std::uint64_t t) { (*printer)(d, t); };
  SearchResult r;
  try {
    r = run_search(F, kind, opts);
  } catch (const ParseError& e) {
    throw UsageError("--checkpoint '" + cfg.checkpoint + "': " + e.what());
  } catch (const DomainError& e) {
    throw UsageError("--checkpoint '" + cfg.checkpoint + "': " + e.what());
  }
  Outcome o;
  o.result = io::to_json(r);
  std::ostringstream t;
  t << to_string(kind) << " search on " << r.field_spec << " shard " << r.shard.str() << ": " << r.next << "/"
    << r.total << " candidates examined" << (r.complete ? "" : " (incomplete)") << '\n';
  t << r.hits.size() << " hits" << (r.reverified ? ", all re-verified by the direct test" : "") << '\n';
  for (const auto& h : r.hits) t << "  " << SparsePoly(F, h.terms).str() << '\n';
  if (!r.unexpected.empty() || !r.missing.empty()) {
    o.code = kFalse;
    std::cerr << "\n**********************************************************************\n"
              << "WARNING: monomial hits disagree with the known families\n";
    for (const auto& h : r.unexpected)
      std::cerr << "  UNEXPECTED pseudo-planar monomial (conjecture counterexample?): "
                << SparsePoly(F, h.terms).str() << '\n';
    for (const auto& h : r.missing) std::cerr << "  MISSING predicted monomial: " << SparsePoly(F, h.terms).str() << '\n';
    std::cerr << "**********************************************************************\n";
  }
  if (!r.reverified) o.code = kFalse;
  o.text = t.str();
  return o;
}

std::vector<std::vector<int>> parse_blocks(const std::string& spec) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(spec);
  std::string block;
  while (std::getline(ss, block, '|')) {
    std::vector<int> cols;
    std::stringstream bs(block);
    std::string item;
    while (std::getline(bs, item, ',')) {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw ParseError("bad column index '" + item + "'");
      cols.push_back(v);
    }
    if (cols.empty()) throw ParseError("empty block");
    blocks.push_back(std::move(cols));
  }
  if (blocks.empty()) throw ParseError("no blocks");
  return blocks;
}

Outcome cmd_bm_fuse(const RunConfig& cfg) {
  const FieldCtx F = make_field(cfg);
  if (cfg.blocks.empty()) throw UsageError("--blocks is required");
  const auto lambda = flag("--blocks", cfg.blocks, [&] { return parse_blocks(cfg.blocks); });
  GaussIntMatrix P = expected_P(F.degree());
  if (!cfg.f.empty()) {
    require_group_capacity(F);
    P = on_f(cfg, [&] { return build_scheme(make_poly(F, cfg, true), cfg.threads).P; });
  }
  const FusionResult r = flag("--blocks", cfg.blocks, [&] { return bm_fuse(P, lambda); });
  Outcome o;
  o.code = r.ok ? kTrue : kFalse;
  Json rows = Json::array();
  for (const auto& g : r.row_blocks) rows.push_back(g);
  o.result = Json{{"blocks", lambda}, {"P", io::to_json(P)}, {"fusion", r.ok}, {"row_blocks", rows},
                  {"fused", r.ok ? io::to_json(r.fused) : Json(nullptr)}, {"refusal", r.refusal}};
  std::ostringstream t;
  t << "P\n" << matrix_text(P) << "fusion: " << (r.ok ? "true" : "false") << '\n';
  if (r.ok) t << "fused P\n" << matrix_text(r.fused);
  else t << "refused: " << r.refusal << '\n';
  o.text = t.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-planar functions, relative difference sets and 5-class association schemes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");
  RunConfig cfg;

  const auto common = [&](CLI::App* sub, bool with_f) {
    sub->add_option("--field", cfg.field, "Field as n or n:POLYHEX")->required();
    sub->add_option("--modulus-override", cfg.modulus_override, "Replace the modulus of --field (hex)");
    if (with_f) sub->add_option("--f", cfg.f, "Function literal exp:coeff,... (hex coefficients)");
    sub->add_option("--out", cfg.out, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--threads", cfg.threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  };

  auto* field_info = app.add_subcommand("field-info", "Modulus, generator and order of a field");
  common(field_info, false);
  auto* pp = app.add_subcommand("pp-test", "Direct pseudo-planarity test; exit 1 with a witness when it fails");
  common(pp, true);
  auto* construct = app.add_subcommand("construct", "Build a known pseudo-planar function and test it");
  common(construct, false);
  construct->add_option("--family", cfg.family, "linear | gold_half | scherr_zieve | binomial1 | binomial2 | binomial3")
      ->required();
  construct->add_option("--k", cfg.k, "Family parameter k");
  construct->add_option("--m", cfg.m, "Binomial parameter m (n = 3m)");
  construct->add_option("--a", cfg.a, "Coefficient (hex)");
  auto* rds = app.add_subcommand("rds-verify", "Check the relative difference set identity for D_f");
  common(rds, true);
  auto* scheme = app.add_subcommand("scheme-build", "Partition, Schur ring axioms, lemmas and eigenmatrices");
  common(scheme, true);
  auto* eigen = app.add_subcommand("eigen", "First and second eigenmatrices");
  common(eigen, true);
  eigen->add_flag("--closed-form", cfg.closed_form, "Skip the computation and print the closed forms");
  auto* spectrum = app.add_subcommand("spectrum", "Value distribution of chi(D_f)");
  common(spectrum, true);
  spectrum->add_flag("--raw", cfg.raw, "Use f as given, without the f(0) shift or a pseudo-planarity check");
  CLI::App* searches[2];
  searches[0] = app.add_subcommand("search-monomials", "Exhaustive search for pseudo-planar c x^t");
  searches[1] = app.add_subcommand("search-binomials", "Exhaustive search for quadratic-type binomials");
  for (auto* sub : searches) {
    common(sub, false);
    sub->add_option("--shard", cfg.shard, "Shard k/K");
    sub->add_option("--checkpoint", cfg.checkpoint, "Checkpoint file; resumed when present");
    sub->add_flag("--long-run", cfg.long_run, "Allow the larger binomial searches");
    sub->add_flag("--progress", cfg.progress, "Print progress and ETA on stderr");
    sub->add_option("--max-blocks", cfg.max_blocks, "Stop after this many blocks");
  }
  auto* fuse = app.add_subcommand("bm-fuse", "Bannai-Muzychuk fusion of the first eigenmatrix");
  common(fuse, true);
  fuse->add_option("--blocks", cfg.blocks, "Column partition, e.g. 0|1,2|3|4,5")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  Json inputs;
  inputs["field"] = cfg.field;
  if (!cfg.modulus_override.empty()) inputs["modulus_override"] = cfg.modulus_override;
  for (const auto* opt : cmd->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_name() == "--field" ||
        opt->get_name() == "--modulus-override" || opt->get_name() == "--out")
      continue;
    const std::string key = opt->get_name().substr(2);
    if (opt->get_type_size() == 0) inputs[key] = true;
    else inputs[key] = opt->as<std::string>();
  }

  try {
    if (cfg.out == "csv" && name != "spectrum") throw UsageError("--out csv: only the spectrum command writes CSV");
    Outcome o;
    if (name == "field-info") o = cmd_field_info(cfg);
    else if (name == "pp-test") o = cmd_pp_test(cfg);
    else if (name == "construct") o = cmd_construct(cfg);
    else if (name == "rds-verify") o = cmd_rds_verify(cfg);
    else if (name == "scheme-build") o = cmd_scheme_build(cfg, false);
    else if (name == "eigen") o = cmd_scheme_build(cfg, true);
    else if (name == "spectrum") o = cmd_spectrum(cfg);
    else if (name == "search-monomials") o = cmd_search(cfg, SearchKind::Monomial);
    else if (name == "search-binomials") o = cmd_search(cfg, SearchKind::QuadBinomial);
    else o = cmd_bm_fuse(cfg);

    if (cfg.out == "json") std::cout << io::envelope(name, inputs, o.result).dump(2) << '\n';
    else if (cfg.out == "csv") std::cout << o.csv;
    else std::cout << o.text;
    return o.code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const CapacityError& e) {
    std::cerr << "error: --field '" << cfg.field << "': " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kUsage;
}
