#include "logres/io.hpp"

#include <fstream>
#include <sstream>

namespace logres::io {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("bad value for ") + what + ": " + j.dump());
  }
}

int slot_index(const LieAlgebra& g, const json& j) {
  int a;
  if (j.is_string())
    a = g.index_of(j.get<std::string>());
  else
    a = get<int>(j, "slot index");
  if (a < 0 || a >= g.dim()) throw InputError("basis index out of range: " + j.dump());
  return a;
}

}  // namespace

FieldSpec field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("char")) return FieldSpec(0);
  long p = get<long>(j.at("char"), "char");
  if (p < 0) throw InputError("negative characteristic");
  return FieldSpec(static_cast<std::uint64_t>(p));
}

json to_json(const Scalar& s) {
  if (s.field().is_rational()) return s.to_string();
  return std::stoll(s.to_string());
}

Scalar scalar_from_json(const FieldSpec& f, const json& j) {
  if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  if (j.is_number_integer()) return Scalar(f, j.get<long>());
  throw InputError("scalars are decimal strings or integers: " + j.dump());
}

json to_json(const RingElem& f) {
  json num = json::array();
  for (auto& [m, c] : f.numerator()) num.push_back({to_json(c), m});
  std::vector<int> z(f.nvars());
  for (int i = 1; i <= f.nvars(); ++i) z[i - 1] = f.z_exp(i);
  json diff = json::array();
  for (auto& [e, b] : f.diff_exps())
    if (b) diff.push_back({e.first, e.second, b});
  return {{"nvars", f.nvars()}, {"num", num}, {"den", {{"z", z}, {"diff", diff}}}};
}

RingElem ringelem_from_json(const FieldSpec& f, const json& j) {
  int n = get<int>(need(j, "nvars"), "nvars");
  if (n < 0) throw InputError("nvars must be >= 0");
  Poly num;
  for (auto& t : need(j, "num")) {
    if (!t.is_array() || t.size() != 2) throw InputError("numerator terms are [coeff, exponents]");
    auto m = get<std::vector<int>>(t[1], "exponents");
    if (static_cast<int>(m.size()) != n) throw InputError("exponent vector length differs from nvars");
    for (int e : m)
      if (e < 0) throw InputError("numerator exponents must be >= 0");
    Scalar c = scalar_from_json(f, t[0]);
    auto it = num.try_emplace(m, Scalar::zero(f)).first;
    it->second += c;
    if (it->second.is_zero()) num.erase(it);
  }
  std::vector<int> a(n, 0);
  std::map<std::pair<int, int>, int> b;
  if (j.contains("den")) {
    const json& d = j.at("den");
    if (d.contains("z")) {
      a = get<std::vector<int>>(d.at("z"), "den.z");
      if (static_cast<int>(a.size()) != n) throw InputError("den.z length differs from nvars");
    }
    if (d.contains("diff"))
      for (auto& e : d.at("diff")) {
        auto v = get<std::vector<int>>(e, "den.diff entry");
        if (v.size() != 3 || v[0] < 1 || v[1] < 1 || v[0] > n || v[1] > n || v[0] == v[1])
          throw InputError("den.diff entries are [i, j, b] with distinct 1-based i, j");
        // (z_j - z_i)^b = (-1)^b (z_i - z_j)^b
        int i = std::min(v[0], v[1]), k = std::max(v[0], v[1]);
        if (v[0] > v[1] && v[2] % 2) {
          for (auto& [m, c] : num) c = -c;
        }
        b[{i, k}] += v[2];
      }
    for (int x : a)
      if (x < 0) throw InputError("denominator exponents must be >= 0");
    for (auto& [e, x] : b)
      if (x < 0) throw InputError("denominator exponents must be >= 0");
  }
  return RingElem::from_parts(f, n, std::move(num), std::move(a), b);
}

json to_json(const LieAlgebra& g) {
  if (!g.builtin_name().empty()) return {{"builtin", g.builtin_name()}};
  json br = json::array();
  for (int i = 0; i < g.dim(); ++i)
    for (int k = i + 1; k < g.dim(); ++k) {
      const Vec& v = g.bracket_basis(i, k);
      bool zero = true;
      json c = json::array();
      for (auto& s : v) {
        c.push_back(to_json(s));
        zero = zero && s.is_zero();
      }
      if (!zero) br.push_back({i, k, c});
    }
  return {{"dim", g.dim()}, {"names", g.names()}, {"brackets", br}};
}

LieAlgebra lie_from_json(const FieldSpec& f, const json& j) {
  if (j.is_string()) return LieAlgebra::builtin(j.get<std::string>(), f);
  if (j.contains("builtin")) return LieAlgebra::builtin(get<std::string>(j.at("builtin"), "builtin"), f);
  int d = get<int>(need(j, "dim"), "dim");
  if (d < 1) throw InputError("dim must be >= 1");
  std::vector<std::string> names;
  if (j.contains("names"))
    names = get<std::vector<std::string>>(j.at("names"), "names");
  else
    for (int i = 0; i < d; ++i) names.push_back("e" + std::to_string(i));
  if (static_cast<int>(names.size()) != d) throw InputError("names length differs from dim");
  std::vector<std::vector<Vec>> c(d, std::vector<Vec>(d, Vec(d, Scalar::zero(f))));
  for (auto& e : need(j, "brackets")) {
    if (!e.is_array() || e.size() != 3) throw InputError("brackets entries are [i, j, [c..]]");
    int i = get<int>(e[0], "bracket index"), k = get<int>(e[1], "bracket index");
    if (i < 0 || k < 0 || i >= d || k >= d) throw InputError("bracket index out of range");
    if (!e[2].is_array() || static_cast<int>(e[2].size()) != d) throw InputError("bracket value needs dim coefficients");
    for (int q = 0; q < d; ++q) {
      Scalar s = scalar_from_json(f, e[2][q]);
      c[i][k][q] = s;
      c[k][i][q] = -s;
    }
  }
  return LieAlgebra(f, names, c);
}

LieAlgebra lie_from_spec(const FieldSpec& f, const std::string& spec) {
  if (spec.find(".json") != std::string::npos) return lie_from_json(f, read_file(spec));
  return LieAlgebra::builtin(spec, f);
}

json to_json(const TensorForm& t) {
  json terms = json::array();
  for (auto& [k, f] : t.coeffs) terms.push_back({k, to_json(f)});
  return {{"order", t.order}, {"terms", terms}};
}

TensorForm tensorform_from_json(const FieldSpec& f, const LieAlgebra& g, const json& j) {
  TensorForm t{get<int>(need(j, "order"), "order"), {}};
  for (auto& e : need(j, "terms")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_array()) throw InputError("tensor terms are [[slots..], RingElem]");
    std::vector<int> key;
    for (auto& s : e[0]) key.push_back(slot_index(g, s));
    t.add(key, ringelem_from_json(f, e[1]));
  }
  return t;
}

json to_json(const PDElem& a) {
  json terms = json::array();
  for (auto& [q, c] : a.terms) terms.push_back({to_json(c), q});
  return {{"nvars", a.nvars}, {"terms", terms}};
}

PDElem pdelem_from_json(const FieldSpec& f, const json& j) {
  PDElem a(f, get<int>(need(j, "nvars"), "nvars"));
  for (auto& t : need(j, "terms")) {
    if (!t.is_array() || t.size() != 2) throw InputError("PD terms are [coeff, [q..]]");
    auto q = get<std::vector<int>>(t[1], "multi-index");
    if (static_cast<int>(q.size()) != a.nvars) throw InputError("multi-index length differs from nvars");
    for (int x : q)
      if (x < 0) throw InputError("multi-index entries must be >= 0");
    a.add(q, scalar_from_json(f, t[0]));
  }
  return a;
}

json to_json(const FieldSpec& f, const LieAlgebra& g, const JetTuple& w) {
  json omega = json::array();
  omega.push_back(to_json(w.omega0));
  for (auto& t : w.forms) omega.push_back(to_json(t));
  return {{"char", f.characteristic()}, {"model", to_string(w.model)}, {"g", to_json(g)}, {"omega", omega}};
}

JetDocument jet_from_json(const json& j) {
  FieldSpec f = field_from_json(j);
  LieAlgebra g = lie_from_json(f, need(j, "g"));
  JetTuple w;
  w.model = parse_jet_model(j.contains("model") ? get<std::string>(j.at("model"), "model") : "disk");
  const json& om = need(j, "omega");
  if (!om.is_array() || om.empty()) throw InputError("omega must be a non-empty array");
  w.omega0 = scalar_from_json(f, om[0]);
  for (std::size_t i = 1; i < om.size(); ++i) w.forms.push_back(tensorform_from_json(f, g, om[i]));
  return {f, std::move(g), std::move(w)};
}

json to_json(const FieldSpec& f, const LieAlgebra& g, JetModel m, const GSection& s) {
  return {{"char", f.characteristic()}, {"model", to_string(m)}, {"g", to_json(g)}, {"section", to_json(s)}};
}

SectionDocument section_from_json(const json& j) {
  FieldSpec f = field_from_json(j);
  LieAlgebra g = lie_from_json(f, need(j, "g"));
  JetModel m = parse_jet_model(j.contains("model") ? get<std::string>(j.at("model"), "model") : "disk");
  GSection s = tensorform_from_json(f, g, need(j, "section"));
  return {f, std::move(g), m, std::move(s)};
}

GKWord word_from_json(const LieAlgebra& g, const json& j) {
  if (!j.is_array()) throw InputError("a word is a list of [basis, power] pairs");
  GKWord w;
  for (auto& e : j) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw InputError("word letters are [basis, power] or [basis, power, coeff]");
    Scalar c = e.size() == 3 ? scalar_from_json(g.field(), e[2]) : Scalar::one(g.field());
    w.push_back(GKElem::mono(c, slot_index(g, e[0]), get<int>(e[1], "power")));
  }
  return w;
}

json to_json(const LieAlgebra& g, const GKElem& x) {
  json out = json::array();
  for (auto& [k, c] : x.terms) out.push_back({g.names()[k.first], k.second, to_json(c)});
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace logres::io
