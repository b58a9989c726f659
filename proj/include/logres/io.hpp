#pragma once

#include <string>

#include "json.hpp"
#include "logres/dividedpower.hpp"
#include "logres/gsheaf.hpp"
#include "logres/jets.hpp"

namespace logres::io {

using json = nlohmann::json;

// Malformed documents raise InputError.
FieldSpec field_from_json(const json& j);  // {"char": p}, default 0

json to_json(const Scalar& s);  // decimal string over Q, integer over F_p
Scalar scalar_from_json(const FieldSpec& f, const json& j);

// {"nvars": n, "num": [[coeff, [e..]], ...], "den": {"z": [a..], "diff": [[i,j,b], ...]}}
json to_json(const RingElem& f);
RingElem ringelem_from_json(const FieldSpec& f, const json& j);

// {"builtin": name} for built-ins, otherwise {"dim", "names", "brackets": [[i, j, [c..]], ...]} (0-based)
json to_json(const LieAlgebra& g);
LieAlgebra lie_from_json(const FieldSpec& f, const json& j);
LieAlgebra lie_from_spec(const FieldSpec& f, const std::string& spec);  // builtin name or path to a JSON file

// {"order": i, "terms": [[[j_1..j_i], RingElem], ...]}; slots may be 0-based indices or basis names.
json to_json(const TensorForm& t);
TensorForm tensorform_from_json(const FieldSpec& f, const LieAlgebra& g, const json& j);

json to_json(const PDElem& a);  // {"nvars": k, "terms": [[coeff, [q..]], ...]}
PDElem pdelem_from_json(const FieldSpec& f, const json& j);

struct JetDocument {
  FieldSpec field;
  LieAlgebra g;
  JetTuple tuple;
};
// {"char": p, "model": ..., "g": ..., "omega": [scalar, TensorForm, ...]}
json to_json(const FieldSpec& f, const LieAlgebra& g, const JetTuple& w);
JetDocument jet_from_json(const json& j);

struct SectionDocument {
  FieldSpec field;
  LieAlgebra g;
  JetModel model = JetModel::Disk;
  GSection section;
};
// {"char": p, "model": ..., "g": ..., "section": TensorForm}
json to_json(const FieldSpec& f, const LieAlgebra& g, JetModel m, const GSection& s);
SectionDocument section_from_json(const json& j);

// [["e", -1], ["f", 0, "2"], [1, 3]]: basis name or index, power, optional coefficient.
GKWord word_from_json(const LieAlgebra& g, const json& j);
json to_json(const LieAlgebra& g, const GKElem& x);

json read_file(const std::string& path);
json parse(const std::string& text);

}  // namespace logres::io
