#include "pps/io.hpp"

#include <sstream>

namespace pps::io {

Json to_json(GaussInt v) { return Json::array({v.re, v.im}); }

Json to_json(const GaussRat& v) { return Json::array({v.num().re, v.num().im, v.den()}); }

namespace {

template <class M>
Json matrix_json(const M& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class A>
Json array_json(const A& a) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(x);
  return out;
}

Json terms_json(const FieldCtx& field, const std::vector<Term>& terms) {
  return SparsePoly(field, terms).str();
}

}  // namespace

Json to_json(const GaussIntMatrix& m) { return matrix_json(m); }
Json to_json(const GaussRatMatrix& m) { return matrix_json(m); }

Json to_json(const GroupRingVec& v) {
  Json out = Json::array();
  for (std::uint64_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.push_back(Json::array({i, v[i]}));
  return out;
}

Json to_json(const SpectrumVec& s) {
  Json out = Json::array();
  for (std::size_t i = 0; i < s.values.size(); ++i) out.push_back(Json::array({i, s.values[i].re, s.values[i].im}));
  return out;
}

Json to_json(const Spectrum& s) {
  Json out = Json::array();
  for (const auto& e : s) out.push_back(Json{{"value", to_json(e.value)}, {"frequency", e.frequency}});
  return out;
}

Json to_json(const RdsReport& r) {
  Json viol = Json::array();
  for (const auto& v : r.violations)
    viol.push_back(Json{{"index", v.idx}, {"expected", v.expected}, {"actual", v.actual}});
  return Json{{"relative_difference_set", r.ok}, {"violation_count", r.violation_count}, {"violations", viol}};
}

Json to_json(const SchemeReport& r) {
  Json tensor = Json::array();
  for (int i = 0; i < kSlots; ++i)
    for (int j = 0; j < kSlots; ++j)
      for (int k = 0; k < kSlots; ++k)
        if (r.schur.p[i][j][k] != 0) tensor.push_back(Json::array({i, j, k, r.schur.p[i][j][k]}));
  Json witness = nullptr;
  if (r.schur.witness) {
    const auto& w = *r.schur.witness;
    witness = Json{{"i", w.i}, {"j", w.j}, {"k", w.k}, {"g", w.g}, {"h", w.h}, {"at_g", w.at_g}, {"at_h", w.at_h}};
  }
  Json out;
  out["field"] = r.f.field().spec();
  out["function"] = r.f.str();
  out["class_sizes"] = array_json(r.partition.sizes());
  out["dual_sizes"] = array_json(r.dual.sizes);
  out["class_count"] = r.class_count;
  out["rows"] = array_json(r.dual.nonempty());
  out["columns"] = array_json(r.partition.nonempty());
  out["p_tensor"] = tensor;
  out["P"] = to_json(r.P);
  out["Q"] = to_json(r.Q);
  out["checks"] = Json{{"schur_ring", r.schur.ok},
                       {"schur_witness", witness},
                       {"lemma_difference", r.lemmas.difference_identity},
                       {"lemma_square_multiplicities", r.lemmas.square_multiplicities},
                       {"lemma_square_identity", r.lemmas.square_identity},
                       {"lemma_multiplicity_sum", r.lemmas.multiplicity_sum},
                       {"pq_identity", r.pq_identity},
                       {"closed_form_P", r.matches_closed_P},
                       {"closed_form_Q", r.matches_closed_Q ? Json(*r.matches_closed_Q) : Json(nullptr)},
                       {"valid", r.valid()}};
  return out;
}

Json hits_json(const FieldCtx& field, const std::vector<Hit>& hits) {
  Json out = Json::array();
  for (const auto& h : hits) out.push_back(Json{{"index", h.index}, {"f", terms_json(field, h.terms)}});
  return out;
}

Json to_json(const SearchResult& r) {
  const FieldCtx field = FieldCtx::parse(r.field_spec);
  Json out;
  out["field"] = r.field_spec;
  out["kind"] = to_string(r.kind);
  out["shard"] = r.shard.str();
  out["total"] = r.total;
  out["next"] = r.next;
  out["complete"] = r.complete;
  out["reverified"] = r.reverified;
  out["hit_count"] = r.hits.size();
  out["hits"] = hits_json(field, r.hits);
  if (r.kind == SearchKind::Monomial) {
    out["unexpected"] = hits_json(field, r.unexpected);
    out["missing"] = hits_json(field, r.missing);
  }
  return out;
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream out;
  out << "value_re,value_im,frequency\n";
  for (const auto& e : s) out << e.value.re << ',' << e.value.im << ',' << e.frequency << '\n';
  return out.str();
}

Json envelope(const std::string& command, Json inputs, Json result) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  out["inputs"] = std::move(inputs);
  out["result"] = std::move(result);
  return out;
}

}  // namespace pps::io
