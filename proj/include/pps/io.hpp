#pragma once

// JSON and CSV renderings of the library's results. Every report carries
// schema_version; none carries a timestamp, so identical inputs give
// byte-identical output.

#include <string>

#include "json.hpp"
#include "pps/funcs.hpp"
#include "pps/groupring.hpp"
#include "pps/scheme.hpp"
#include "pps/search.hpp"

namespace pps::io {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json to_json(GaussInt v);                  // [re, im]
Json to_json(const GaussRat& v);           // [re, im, den]
Json to_json(const GaussIntMatrix& m);
Json to_json(const GaussRatMatrix& m);
Json to_json(const GroupRingVec& v);       // sparse [[idx, count], ...]
Json to_json(const SpectrumVec& s);        // [[idx, re, im], ...]
Json to_json(const Spectrum& s);           // [{"value": [re, im], "frequency": k}, ...]
Json to_json(const RdsReport& r);
Json to_json(const SchemeReport& r);
Json to_json(const SearchResult& r);
Json hits_json(const FieldCtx& field, const std::vector<Hit>& hits);

// value_re,value_im,frequency with rows sorted by (re, im).
std::string spectrum_csv(const Spectrum& s);

// Envelope {"schema_version", "command", "inputs", "result"}.
Json envelope(const std::string& command, Json inputs, Json result);

}  // namespace pps::io
