#include "logres/jets.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "logres/linalg.hpp"

namespace logres {

namespace {

std::vector<int> iota1(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

RingElem zpow(const FieldSpec& f, int n, int var, int e) {
  std::vector<int> ex(n, 0);
  ex[var - 1] = e;
  return RingElem::monomial(f, n, Scalar::one(f), ex);
}

FieldSpec field_of(const JetTuple& w) { return w.omega0.field(); }

}  // namespace

// ---------------------------------------------------------------------------

const RingElem* TensorForm::find(const std::vector<int>& key) const {
  auto it = coeffs.find(key);
  return it == coeffs.end() ? nullptr : &it->second;
}

void TensorForm::add(const std::vector<int>& key, const RingElem& f) {
  if (f.is_zero()) return;
  auto it = coeffs.find(key);
  if (it == coeffs.end()) {
    coeffs.emplace(key, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) coeffs.erase(it);
}

TensorForm& TensorForm::operator+=(const TensorForm& o) {
  if (o.order != order) throw InputError("adding tensor forms of different orders");
  for (auto& [k, f] : o.coeffs) add(k, f);
  return *this;
}

TensorForm TensorForm::operator*(const Scalar& s) const {
  TensorForm out{order, {}};
  if (s.is_zero()) return out;
  for (auto& [k, f] : coeffs) out.coeffs.emplace(k, f * s);
  return out;
}

bool TensorForm::operator==(const TensorForm& o) const { return order == o.order && coeffs == o.coeffs; }

TensorForm act(const std::vector<int>& perm, const TensorForm& w) {
  if (static_cast<int>(perm.size()) != w.order) throw InputError("permutation size does not match the form order");
  Scalar sgn(w.coeffs.empty() ? FieldSpec(0) : w.coeffs.begin()->second.field(), static_cast<long>(permutation_sign(perm)));
  TensorForm out{w.order, {}};
  for (auto& [k, f] : w.coeffs) {
    std::vector<int> j(k.size());
    for (std::size_t m = 0; m < k.size(); ++m) j[perm[m] - 1] = k[m];
    out.add(j, f.relabel(perm) * sgn);
  }
  return out;
}

std::string to_string(JetModel m) {
  switch (m) {
    case JetModel::Disk: return "disk";
    case JetModel::Punctured: return "punctured";
    case JetModel::Genus0: return "genus0";
  }
  return "";
}

JetModel parse_jet_model(const std::string& s) {
  if (s == "disk") return JetModel::Disk;
  if (s == "punctured") return JetModel::Punctured;
  if (s == "genus0") return JetModel::Genus0;
  throw InputError("unknown jet model '" + s + "'");
}

JetTuple JetTuple::zero(const FieldSpec& f, JetModel m, int n) {
  JetTuple t;
  t.model = m;
  t.omega0 = Scalar::zero(f);
  for (int i = 1; i <= n; ++i) t.forms.push_back({i, {}});
  return t;
}

JetTuple& JetTuple::operator+=(const JetTuple& o) {
  if (o.n() != n()) throw InputError("adding jet tuples of different lengths");
  omega0 += o.omega0;
  for (int i = 0; i < n(); ++i) forms[i] += o.forms[i];
  if (o.model != model) model = JetModel::Punctured;
  return *this;
}

JetTuple JetTuple::operator*(const Scalar& s) const {
  JetTuple t = *this;
  t.omega0 *= s;
  for (auto& f : t.forms) f = f * s;
  return t;
}

// ---------------------------------------------------------------------------

GKElem GKElem::mono(const Scalar& c, int a, int l) {
  GKElem x;
  if (!c.is_zero()) x.terms.emplace(std::pair{a, l}, c);
  return x;
}

std::string GKElem::to_string(const LieAlgebra& g) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : terms) {
    os << (first ? "" : " + ") << c.to_string() << "*" << g.names()[k.first] << "t^" << k.second;
    first = false;
  }
  return os.str();
}

GKElem bracket(const LieAlgebra& g, const GKElem& x, const GKElem& y) {
  std::map<std::pair<int, int>, Scalar> out;
  for (auto& [kx, cx] : x.terms)
    for (auto& [ky, cy] : y.terms) {
      const Vec& b = g.bracket_basis(kx.first, ky.first);
      for (int c = 0; c < g.dim(); ++c)
        if (!b[c].is_zero()) {
          auto key = std::pair{c, kx.second + ky.second};
          out.try_emplace(key, Scalar::zero(g.field())).first->second += cx * cy * b[c];
        }
    }
  GKElem r;
  for (auto& [k, c] : out)
    if (!c.is_zero()) r.terms.emplace(k, c);
  return r;
}

TwistData TwistData::trivial(const LieAlgebra& g) { return {std::vector<int>(g.dim(), 0)}; }

TwistData TwistData::checked(const LieAlgebra& g, std::vector<int> w) {
  if (static_cast<int>(w.size()) != g.dim()) throw InputError("twist needs one weight per basis vector");
  for (int a = 0; a < g.dim(); ++a)
    for (int b = 0; b < g.dim(); ++b)
      for (int c = 0; c < g.dim(); ++c)
        if (!g.structure(a, b, c).is_zero() && w[c] != w[a] + w[b])
          throw InputError("weights are not additive on [" + g.names()[a] + "," + g.names()[b] + "]");
  return {std::move(w)};
}

bool TwistData::in_twisted_gO(const GKElem& x) const {
  for (auto& [k, c] : x.terms)
    if (k.second < weights.at(k.first)) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

Poly poly_mul(const Poly& a, const Poly& b, const FieldSpec& f) {
  Poly out;
  for (auto& [ma, ca] : a)
    for (auto& [mb, cb] : b) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.try_emplace(m, Scalar::zero(f)).first->second += ca * cb;
    }
  std::erase_if(out, [](auto& kv) { return kv.second.is_zero(); });
  return out;
}

Poly diff_linear(const FieldSpec& f, int n, int a, int b) {
  Mono ma(n, 0), mb(n, 0);
  ma[a - 1] = 1;
  mb[b - 1] = 1;
  return {{ma, Scalar::one(f)}, {mb, -Scalar::one(f)}};
}

std::vector<Mono> monomials_of_degree(int n, int d) {
  std::vector<Mono> out;
  Mono cur(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
  };
  if (n == 0) return d == 0 ? std::vector<Mono>{Mono{}} : std::vector<Mono>{};
  rec(0, d);
  return out;
}

bool acyclic(const std::vector<std::pair<int, int>>& edges, int n) {
  std::vector<int> p(n + 1);
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    p[ra] = rb;
  }
  return true;
}

}  // namespace

bool loop_free(const RingElem& f) {
  if (f.is_zero()) return true;
  std::vector<std::pair<int, int>> S;
  for (auto& [e, b] : f.diff_exps()) {
    if (b > 1) return false;
    if (b == 1) S.push_back(e);
  }
  int n = f.nvars();
  if (acyclic(S, n)) return true;
  const FieldSpec& F = f.field();
  // Spanning forests of S all have the same size; their complements generate the admissible numerators.
  std::size_t r = 0;
  std::vector<std::vector<std::pair<int, int>>> complements;
  for (std::size_t mask = 0; mask < (std::size_t{1} << S.size()); ++mask) {
    std::vector<std::pair<int, int>> in, out;
    for (std::size_t k = 0; k < S.size(); ++k) (mask >> k & 1 ? in : out).push_back(S[k]);
    if (!acyclic(in, n)) continue;
    if (in.size() > r) {
      r = in.size();
      complements.clear();
    }
    if (in.size() == r) complements.push_back(out);
  }
  std::vector<Poly> gens;
  for (auto& c : complements) {
    Poly p{{Mono(n, 0), Scalar::one(F)}};
    for (auto [a, b] : c) p = poly_mul(p, diff_linear(F, n, a, b), F);
    gens.push_back(p);
  }
  int c = static_cast<int>(S.size() - r);
  std::map<int, Poly> by_degree;
  for (auto& [m, s] : f.numerator()) by_degree[std::accumulate(m.begin(), m.end(), 0)].emplace(m, s);
  for (auto& [d, P] : by_degree) {
    if (d < c) return false;
    auto target = monomials_of_degree(n, d), unknown = monomials_of_degree(n, d - c);
    std::map<Mono, std::size_t> row_of;
    for (std::size_t i = 0; i < target.size(); ++i) row_of[target[i]] = i;
    Matrix M(F, target.size(), gens.size() * unknown.size());
    for (std::size_t gi = 0; gi < gens.size(); ++gi)
      for (std::size_t ui = 0; ui < unknown.size(); ++ui)
        for (auto& [m, s] : gens[gi]) {
          Mono t(n);
          for (int k = 0; k < n; ++k) t[k] = m[k] + unknown[ui][k];
          M(row_of.at(t), gi * unknown.size() + ui) += s;
        }
    Vec rhs(target.size(), Scalar::zero(F));
    for (auto& [m, s] : P) rhs[row_of.at(m)] = s;
    if (!solve(M, rhs)) return false;
  }
  return true;
}

MembershipReport check_membership(const JetTuple& w, const LieAlgebra& g) {
  const FieldSpec& F = g.field();
  auto fail = [](std::string what, int order, std::vector<int> slots, std::string detail) {
    MembershipReport r;
    r.ok = false;
    r.failure = std::move(what);
    r.order = order;
    r.slots = std::move(slots);
    r.detail = std::move(detail);
    return r;
  };
  if (!(w.omega0.field() == F)) return fail("arity", 0, {}, "omega_0 is over a different field");
  for (int i = 1; i <= w.n(); ++i) {
    const TensorForm& t = w.omega(i);
    if (t.order != i) return fail("arity", i, {}, "form in position " + std::to_string(i) + " has order " + std::to_string(t.order));
    for (auto& [k, f] : t.coeffs) {
      if (static_cast<int>(k.size()) != i) return fail("arity", i, k, "slot count differs from the order");
      for (int a : k)
        if (a < 0 || a >= g.dim()) return fail("arity", i, k, "basis index out of range");
      if (f.nvars() != i) return fail("arity", i, k, "coefficient has " + std::to_string(f.nvars()) + " variables");
      if (!(f.field() == F)) return fail("arity", i, k, "coefficient over a different field");
    }
  }
  for (int i = 1; i <= w.n(); ++i)
    for (auto& [k, f] : w.omega(i).coeffs) {
      for (int m = 1; m <= i; ++m) {
        if (w.model == JetModel::Disk && f.z_exp(m) > 0)
          return fail("model", i, k, "pole along z_" + std::to_string(m) + "=0 in the disk model");
        if (w.model == JetModel::Genus0 && f.degree_in(m) > -2)
          return fail("model", i, k, "pole at infinity in z_" + std::to_string(m));
      }
    }
  for (int i = 2; i <= w.n(); ++i) {
    const TensorForm& t = w.omega(i);
    for (int s = 1; s < i; ++s) {
      std::vector<int> perm = iota1(i);
      std::swap(perm[s - 1], perm[s]);
      TensorForm moved = act(perm, t), neg = t * Scalar(F, -1L);
      if (!(moved == neg)) {
        for (auto& [k, f] : t.coeffs) {
          const RingElem* o = moved.find(k);
          if (!o || *o != -f) return fail("anti-invariance", i, k, "transposition of slots " + std::to_string(s) + "," + std::to_string(s + 1));
        }
        for (auto& [k, f] : moved.coeffs)
          if (!t.find(k)) return fail("anti-invariance", i, k, "transposition of slots " + std::to_string(s) + "," + std::to_string(s + 1));
      }
    }
  }
  for (int i = 1; i <= w.n(); ++i)
    for (auto& [k, f] : w.omega(i).coeffs)
      for (auto& [e, b] : f.diff_exps())
        if (b > 1)
          return fail("log-pole", i, k, "pole of order " + std::to_string(b) + " along z_" + std::to_string(e.first) + "=z_" + std::to_string(e.second));
  for (int i = 1; i <= w.n(); ++i)
    for (auto& [k, f] : w.omega(i).coeffs)
      if (!loop_free(f)) return fail("no-loop", i, k, "denominator is not a sum over forests: " + f.to_string());
  for (int i = 2; i <= w.n(); ++i) {
    const TensorForm &t = w.omega(i), &prev = w.omega(i - 1);
    Direction d = Direction::diagonal(i - 1, i);
    std::set<std::vector<int>> keys;
    for (auto& [k, f] : t.coeffs) keys.insert(k);
    for (auto& [k, f] : prev.coeffs)
      for (int a = 0; a < g.dim(); ++a)
        for (int b = 0; b < g.dim(); ++b)
          if (!g.structure(a, b, k.back()).is_zero()) {
            std::vector<int> kk(k.begin(), k.end() - 1);
            kk.push_back(a);
            kk.push_back(b);
            keys.insert(kk);
          }
    for (auto& k : keys) {
      const RingElem* f = t.find(k);
      RingElem lhs = f ? residue(*f, d) : RingElem(F, i);
      RingElem rhs(F, i);
      std::vector<int> kk(k.begin(), k.end() - 2);
      kk.push_back(0);
      for (int c = 0; c < g.dim(); ++c) {
        const Scalar& s = g.structure(k[i - 2], k[i - 1], c);
        if (s.is_zero()) continue;
        kk.back() = c;
        if (const RingElem* p = prev.find(kk)) rhs += p->with_nvars(i) * s;
      }
      if (lhs != rhs)
        return fail("constraint", i, k, "residue along z_" + std::to_string(i - 1) + "=z_" + std::to_string(i) + " is " + lhs.to_string() + ", cobracket side is " + rhs.to_string());
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

Scalar pair_phi_k(const LieAlgebra& g, const GKWord& word, const JetTuple& w) {
  const FieldSpec& F = g.field();
  int k = static_cast<int>(word.size());
  if (k == 0) return w.omega0;
  if (k > w.n()) throw InputError("word of length " + std::to_string(k) + " exceeds the tuple length " + std::to_string(w.n()));
  // xi_m(z_m) split by basis index
  std::vector<std::map<int, RingElem>> fields(k);
  for (int m = 0; m < k; ++m)
    for (auto& [key, c] : word[m].terms) {
      auto it = fields[m].try_emplace(key.first, RingElem(F, k)).first;
      it->second += zpow(F, k, m + 1, key.second) * c;
    }
  // residues are linear: take them slot pattern by slot pattern, avoiding one huge common denominator
  Scalar total = Scalar::zero(F);
  for (auto& [key, f] : w.omega(k).coeffs) {
    RingElem term = f;
    bool zero = false;
    for (int m = 0; m < k && !zero; ++m) {
      auto it = fields[m].find(key[m]);
      if (it == fields[m].end())
        zero = true;
      else
        term *= it->second;
    }
    if (zero) continue;
    for (int m = k; m >= 1 && !term.is_zero(); --m) term = residue(term, Direction::at_zero(m));
    if (!term.is_zero()) total += term.constant_value();
  }
  return total;
}

Scalar relation_defect(const LieAlgebra& g, const GKElem& x, const GKElem& y, const GKWord& prefix,
                       const GKWord& suffix, const JetTuple& w) {
  auto build = [&](std::vector<GKElem> mid) {
    GKWord out = prefix;
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), suffix.begin(), suffix.end());
    return out;
  };
  Scalar d = pair_phi_k(g, build({x, y}), w) - pair_phi_k(g, build({y, x}), w);
  GKElem b = bracket(g, x, y);
  if (!b.is_zero()) d -= pair_phi_k(g, build({b}), w);
  return d;
}

bool check_relation_descent(const LieAlgebra& g, const GKElem& x, const GKElem& y, const GKWord& prefix,
                            const GKWord& suffix, const JetTuple& w) {
  return relation_defect(g, x, y, prefix, suffix, w).is_zero();
}

std::optional<DescentWitness> find_descent_witness(const LieAlgebra& g, const JetTuple& w, int max_power,
                                                   std::size_t budget) {
  const FieldSpec& F = g.field();
  std::vector<GKElem> letters;
  for (int l = -max_power; l <= max_power; ++l)
    for (int a = 0; a < g.dim(); ++a) letters.push_back(GKElem::mono(Scalar::one(F), a, l));
  std::size_t used = 0;
  auto probe = [&](const GKElem& x, const GKElem& y, GKWord prefix, GKWord suffix) -> std::optional<DescentWitness> {
    Scalar d = relation_defect(g, x, y, prefix, suffix, w);
    if (d.is_zero()) return std::nullopt;
    return DescentWitness{x, y, std::move(prefix), std::move(suffix), d};
  };
  if (w.n() >= 2)
    for (auto& x : letters)
      for (auto& y : letters) {
        if (used++ >= budget) return std::nullopt;
        if (auto r = probe(x, y, {}, {})) return r;
      }
  // longer words: the lexicographic order reaches the useful letters too late, so probe at random
  std::mt19937_64 rng(0x5eedULL);
  for (int len = 3; len <= w.n(); ++len) {
    std::size_t share = (budget - std::min(budget, used)) / static_cast<std::size_t>(w.n() - len + 1);
    for (std::size_t t = 0; t < share; ++t, ++used) {
      auto pick = [&]() -> const GKElem& { return letters[rng() % letters.size()]; };
      const GKElem& x = pick();
      const GKElem& y = pick();
      int pos = static_cast<int>(rng() % (len - 1));
      GKWord prefix, suffix;
      for (int q = 0; q < len - 2; ++q) (q < pos ? prefix : suffix).push_back(pick());
      if (auto r = probe(x, y, std::move(prefix), std::move(suffix))) return r;
    }
  }
  return std::nullopt;
}

Scalar vacuum_pairing(const LieAlgebra& g, const GKElem& xi, const GKWord& rest, const JetTuple& w) {
  GKWord word = rest;
  word.push_back(xi);
  return pair_phi_k(g, word, w);
}

bool check_vacuum_vanishing(const LieAlgebra& g, const GKElem& xi, const GKWord& rest, const JetTuple& w,
                            const TwistData& twist) {
  if (!twist.in_twisted_gO(xi)) throw InputError("element is outside the twisted positive loop algebra");
  return vacuum_pairing(g, xi, rest, w).is_zero();
}

bool is_out_element(const GKElem& x) {
  for (auto& [k, c] : x.terms)
    if (k.second > 0) return false;
  return true;
}

Scalar out_pairing(const LieAlgebra& g, const GKElem& xi, const GKWord& rest, const JetTuple& w) {
  GKWord word{xi};
  word.insert(word.end(), rest.begin(), rest.end());
  return pair_phi_k(g, word, w);
}

bool check_out_vanishing(const LieAlgebra& g, const GKElem& xi, const GKWord& rest, const JetTuple& w) {
  if (w.model != JetModel::Genus0) throw InputError("out vanishing needs a genus0 tuple");
  if (!is_out_element(xi)) throw InputError("element has positive powers of t");
  return out_pairing(g, xi, rest, w).is_zero();
}

// ---------------------------------------------------------------------------

JetTuple ope_tuple(const LieAlgebra& g, const Vec& chi, int n) {
  const FieldSpec& F = g.field();
  JetTuple t = JetTuple::zero(F, JetModel::Disk, n);
  t.omega0 = Scalar::one(F);
  for (int r = 1; r <= n; ++r) {
    // F(v_1..v_s at variables vars) = chi(v_1) F(v_2..) + sum_j F(v_2, .., [v_1, v_j], ..) / (z_{vars_1} - z_{vars_j})
    std::function<RingElem(const std::vector<Vec>&, const std::vector<int>&)> corr =
        [&](const std::vector<Vec>& v, const std::vector<int>& vars) -> RingElem {
      if (v.empty()) return RingElem::constant(F, r, 1L);
      std::vector<Vec> tail(v.begin() + 1, v.end());
      std::vector<int> tvars(vars.begin() + 1, vars.end());
      RingElem out(F, r);
      Scalar c = Scalar::zero(F);
      for (int a = 0; a < g.dim(); ++a) c += chi[a] * v[0][a];
      if (!c.is_zero()) out += corr(tail, tvars) * c;
      for (std::size_t j = 0; j < tail.size(); ++j) {
        std::vector<Vec> u = tail;
        u[j] = g.bracket(v[0], tail[j]);
        if (std::all_of(u[j].begin(), u[j].end(), [](const Scalar& s) { return s.is_zero(); })) continue;
        out += corr(u, tvars) * RingElem::diff_power(F, r, vars[0], tvars[j], -1);
      }
      return out;
    };
    std::vector<int> key(r, 0);
    for (;;) {
      std::vector<Vec> v;
      for (int a : key) v.push_back(g.basis_vector(a));
      t.forms[r - 1].add(key, corr(v, iota1(r)));
      int q = r - 1;
      while (q >= 0 && ++key[q] == g.dim()) key[q--] = 0;
      if (q < 0) break;
    }
  }
  return t;
}

JetTuple act_gk(const LieAlgebra& g, int a, int l, const JetTuple& w) {
  const FieldSpec& F = g.field();
  JetTuple out = JetTuple::zero(F, l < 0 || w.model == JetModel::Punctured ? JetModel::Punctured : w.model, w.n());
  if (l < 0 && w.model == JetModel::Genus0) out.model = JetModel::Punctured;
  for (int r = 1; r <= w.n(); ++r)
    for (auto& [k, f] : w.omega(r).coeffs)
      for (int m = 0; m < r; ++m) {
        RingElem zf = f * zpow(F, r, m + 1, l);
        for (int i = 0; i < g.dim(); ++i) {
          const Scalar& s = g.structure(a, i, k[m]);
          if (s.is_zero()) continue;
          std::vector<int> j = k;
          j[m] = i;
          out.forms[r - 1].add(j, zf * (-s));
        }
      }
  return out;
}

JetTuple twist_tuple(const TwistData& t, const JetTuple& w) {
  const FieldSpec F = field_of(w);
  JetTuple out = JetTuple::zero(F, w.model, w.n());
  out.omega0 = w.omega0;
  bool poles = false;
  for (int r = 1; r <= w.n(); ++r)
    for (auto& [k, f] : w.omega(r).coeffs) {
      std::vector<int> ex(r);
      for (int m = 0; m < r; ++m) {
        ex[m] = -t.weights.at(k[m]);
        if (ex[m] < 0) poles = true;
      }
      out.forms[r - 1].add(k, f * RingElem::monomial(F, r, Scalar::one(F), ex));
    }
  if (poles) out.model = JetModel::Punctured;
  return out;
}

JetTuple genus0_from_disk(const JetTuple& w) {
  if (w.model != JetModel::Disk) throw InputError("genus-zero pullback needs a disk tuple");
  const FieldSpec F = field_of(w);
  JetTuple out = JetTuple::zero(F, JetModel::Genus0, w.n());
  out.omega0 = w.omega0;
  for (int r = 1; r <= w.n(); ++r) {
    std::vector<int> ex(r, -2);
    Scalar sign(F, r % 2 ? -1L : 1L);
    RingElem jac = RingElem::monomial(F, r, sign, ex);
    for (auto& [k, f] : w.omega(r).coeffs) out.forms[r - 1].add(k, f.invert_variables(iota1(r)) * jac);
  }
  return out;
}

JetTuple regular_top(const LieAlgebra& g, int n, std::mt19937_64& rng, int max_deg) {
  const FieldSpec& F = g.field();
  TensorForm seed{n, {}};
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> key(n), ex(n);
    for (int m = 0; m < n; ++m) {
      key[m] = static_cast<int>(rng() % g.dim());
      ex[m] = static_cast<int>(rng() % (max_deg + 1));
    }
    seed.add(key, RingElem::monomial(F, n, Scalar(F, static_cast<long>(rng() % 7) - 3), ex));
  }
  TensorForm sym{n, {}};
  std::vector<int> perm = iota1(n);
  do sym += act(perm, seed) * Scalar(F, static_cast<long>(permutation_sign(perm)));
  while (std::next_permutation(perm.begin(), perm.end()));
  JetTuple out = JetTuple::zero(F, JetModel::Disk, n);
  out.forms[n - 1] = sym;
  return out;
}

JetTuple random_valid_tuple(const LieAlgebra& g, std::mt19937_64& rng, const GeneratorOptions& opt) {
  const FieldSpec& F = g.field();
  auto small = [&](int r) { return Scalar(F, static_cast<long>(rng() % (2 * r + 1)) - r); };
  JetTuple acc = JetTuple::zero(F, JetModel::Disk, opt.n);
  for (int s = 0; s < 2; ++s) {
    Vec chi(g.dim());
    for (auto& c : chi) c = small(2);
    JetTuple t = ope_tuple(g, chi, opt.n) * small(3);
    for (int a = 0; a < opt.actions; ++a) {
      int lo = opt.punctured ? -opt.max_power : 0;
      int l = lo + static_cast<int>(rng() % (opt.max_power - lo + 1));
      t += act_gk(g, static_cast<int>(rng() % g.dim()), l, t) * small(2);
    }
    acc += t;
  }
  acc += regular_top(g, opt.n, rng, 2);
  return acc;
}

std::string to_string(InvalidKind k) {
  switch (k) {
    case InvalidKind::NonSymmetric: return "non-symmetric";
    case InvalidKind::Loop: return "loop";
    case InvalidKind::ConstraintBroken: return "constraint";
    case InvalidKind::LogViolation: return "log-pole";
  }
  return "";
}

JetTuple invalid_tuple(const LieAlgebra& g, InvalidKind k, std::mt19937_64& rng, int n) {
  const FieldSpec& F = g.field();
  if (n < 2 || (k == InvalidKind::Loop && n < 3)) throw InputError("tuple too short for this defect");
  if (g.dim() < (k == InvalidKind::Loop ? 3 : 2)) throw InputError("Lie algebra too small for this defect");
  GeneratorOptions opt;
  opt.n = n;
  opt.actions = n >= 3 ? 1 : 2;
  JetTuple w = random_valid_tuple(g, rng, opt);
  switch (k) {
    case InvalidKind::NonSymmetric:
      w.forms[1].add({0, 1}, RingElem::var(F, 2, 1));
      break;
    case InvalidKind::ConstraintBroken: {
      RingElem p = RingElem::diff_power(F, 2, 1, 2, -1);
      w.forms[1].add({0, 1}, p);
      w.forms[1].add({1, 0}, -p);
      break;
    }
    case InvalidKind::LogViolation:
      w.forms[1].add({0, 0}, RingElem::diff_power(F, 2, 1, 2, -2));
      break;
    case InvalidKind::Loop: {
      RingElem d = RingElem::diff_power(F, 3, 1, 2, -1) * RingElem::diff_power(F, 3, 1, 3, -1) *
                   RingElem::diff_power(F, 3, 2, 3, -1);
      std::vector<int> perm{1, 2, 3};
      do w.forms[2].add({perm[0] - 1, perm[1] - 1, perm[2] - 1}, d * Scalar(F, static_cast<long>(permutation_sign(perm))));
      while (std::next_permutation(perm.begin(), perm.end()));
      break;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------

PerfectnessReport truncated_perfectness(const LieAlgebra& g, const TwistData& t, int L, int P) {
  const FieldSpec& F = g.field();
  std::vector<std::pair<int, int>> rows;
  for (int a = 0; a < g.dim(); ++a)
    for (int l = -L; l <= L; ++l)
      if (l < t.weights.at(a)) rows.emplace_back(a, l);
  std::vector<JetTuple> cols;
  for (int b = 0; b < g.dim(); ++b)
    for (int m = 0; m <= P; ++m) {
      JetTuple w = JetTuple::zero(F, JetModel::Disk, 1);
      w.forms[0].add({b}, RingElem::constant(F, 1, 1L) * zpow(F, 1, 1, m));
      cols.push_back(twist_tuple(t, w));
    }
  Matrix M(F, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      M(i, j) = pair_phi_k(g, {GKElem::mono(Scalar::one(F), rows[i].first, rows[i].second)}, cols[j]);
  return {rows.size(), cols.size(), rank(M), rows.size()};
}

LambdaTable lambda_table(const LieAlgebra& g, const JetTuple& w, int L) {
  const FieldSpec& F = g.field();
  LambdaTable out;
  out[{}] = w.omega0;
  std::vector<std::pair<int, int>> letters;
  for (int a = 0; a < g.dim(); ++a)
    for (int l = -L; l <= L; ++l) letters.emplace_back(a, l);
  for (int r = 1; r <= w.n(); ++r) {
    std::vector<std::size_t> idx(r, 0);
    for (;;) {
      std::vector<std::pair<int, int>> key;
      GKWord word;
      for (auto q : idx) {
        key.push_back(letters[q]);
        word.push_back(GKElem::mono(Scalar::one(F), letters[q].first, letters[q].second));
      }
      out[key] = pair_phi_k(g, word, w);
      int q = r - 1;
      while (q >= 0 && ++idx[q] == letters.size()) idx[q--] = 0;
      if (q < 0) break;
    }
  }
  return out;
}

ReconstructResult reconstruct_psi_k(const LieAlgebra& g, const LambdaTable& lambda, int n, int L) {
  const FieldSpec& F = g.field();
  if (n < 0 || n > 2) throw InputError("reconstruction is implemented for n <= 2");
  ReconstructResult res;
  const int B = L + 1, D = 2 * B + 2 * L, D1 = 2 * D;
  res.pole_bound = B;
  res.numerator_degree = D;
  for (auto& [key, v] : lambda) {
    if (static_cast<int>(key.size()) > n) throw InputError("table entry longer than n");
    for (auto [a, l] : key)
      if (a < 0 || a >= g.dim() || l < -L || l > L) throw InputError("table entry outside the basis or the power range");
  }
  // commutator relations inside the table
  for (auto& [key, v] : lambda) {
    if (key.size() != 2) continue;
    auto rev = lambda.find({key[1], key[0]});
    if (rev == lambda.end()) continue;
    Scalar d = v - rev->second;
    bool complete = true;
    const Vec& b = g.bracket_basis(key[0].first, key[1].first);
    for (int c = 0; c < g.dim(); ++c) {
      if (b[c].is_zero()) continue;
      auto it = lambda.find({{c, key[0].second + key[1].second}});
      if (it == lambda.end()) {
        complete = false;
        break;
      }
      d -= b[c] * it->second;
    }
    if (complete && !d.is_zero()) {
      res.message = "table violates a commutator relation";
      res.witness = key;
      return res;
    }
  }
  // unknowns: omega_0, omega_1[a] coefficients of z^p (p in [-B, D1]), numerators of omega_2[a][b] / (z1^B z2^B (z1 - z2))
  const int dim = g.dim();
  const int n1 = D1 + B + 1, n2 = (D + 1) * (D + 1);
  auto idx1 = [&](int a, int p) { return std::size_t(1 + a * n1 + (p + B)); };
  auto idx2 = [&](int a, int b, int p, int q) {
    return std::size_t(1 + (n >= 1 ? dim * n1 : 0) + ((a * dim + b) * n2) + p * (D + 1) + q);
  };
  std::size_t nunk = 1 + (n >= 1 ? dim * n1 : 0) + (n >= 2 ? dim * dim * n2 : 0);
  std::vector<Vec> rows;
  Vec rhs;
  auto new_row = [&]() { return Vec(nunk, Scalar::zero(F)); };
  // Res_{z1} Res_{z2} z1^al z2^be / (z1 - z2), cached
  std::map<std::pair<int, int>, Scalar> cache;
  auto two_point = [&](int al, int be) {
    auto it = cache.find({al, be});
    if (it != cache.end()) return it->second;
    std::vector<int> ex{al, be};
    RingElem f = RingElem::monomial(F, 2, Scalar::one(F), ex) * RingElem::diff_power(F, 2, 1, 2, -1);
    RingElem r = residue(residue(f, Direction::at_zero(2)), Direction::at_zero(1));
    Scalar v = r.is_zero() ? Scalar::zero(F) : r.constant_value();
    cache.emplace(std::pair{al, be}, v);
    return v;
  };
  for (auto& [key, v] : lambda) {
    Vec row = new_row();
    if (key.empty()) {
      row[0] = Scalar::one(F);
    } else if (key.size() == 1) {
      int p = -key[0].second - 1;
      if (p >= -B && p <= D1) row[idx1(key[0].first, p)] = Scalar::one(F);
    } else {
      auto [a, l] = key[0];
      auto [b, m] = key[1];
      for (int p = 0; p <= D; ++p)
        for (int q = 0; q <= D; ++q) {
          Scalar s = two_point(l + p - B, m + q - B);
          if (!s.is_zero()) row[idx2(a, b, p, q)] = s;
        }
    }
    rows.push_back(row);
    rhs.push_back(v);
  }
  if (n >= 2) {
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int p = 0; p <= D; ++p)
          for (int q = 0; q <= D; ++q) {
            if (std::pair{a, p} > std::pair{b, q} || (a == b && p == q && false)) continue;
            Vec row = new_row();
            row[idx2(a, b, p, q)] += Scalar::one(F);
            row[idx2(b, a, q, p)] += Scalar::one(F);
            rows.push_back(row);
            rhs.push_back(Scalar::zero(F));
          }
    // P_ab(z, z) = z^{2B} sum_c f_ab^c omega_1[c](z)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int s = 0; s <= std::max(2 * D, 2 * B + D1); ++s) {
          Vec row = new_row();
          for (int p = std::max(0, s - D); p <= std::min(D, s); ++p) row[idx2(a, b, p, s - p)] += Scalar::one(F);
          int p1 = s - 2 * B;
          if (p1 >= -B && p1 <= D1)
            for (int c = 0; c < dim; ++c)
              if (!g.structure(a, b, c).is_zero()) row[idx1(c, p1)] -= g.structure(a, b, c);
          rows.push_back(row);
          rhs.push_back(Scalar::zero(F));
        }
  }
  Matrix M(F, rows.size(), nunk);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nunk; ++j)
      if (!rows[i][j].is_zero()) M(i, j) = rows[i][j];
  auto sol = solve(M, rhs);
  if (!sol) {
    res.message = "no tuple with pole order <= " + std::to_string(B) + " reproduces the table";
    return res;
  }
  const Vec& x = *sol;
  JetTuple t = JetTuple::zero(F, JetModel::Punctured, n);
  t.omega0 = x[0];
  if (n >= 1)
    for (int a = 0; a < dim; ++a)
      for (int p = -B; p <= D1; ++p)
        if (!x[idx1(a, p)].is_zero()) t.forms[0].add({a}, zpow(F, 1, 1, p) * x[idx1(a, p)]);
  if (n >= 2) {
    RingElem den = RingElem::monomial(F, 2, Scalar::one(F), {-B, -B}) * RingElem::diff_power(F, 2, 1, 2, -1);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        RingElem num(F, 2);
        for (int p = 0; p <= D; ++p)
          for (int q = 0; q <= D; ++q)
            if (!x[idx2(a, b, p, q)].is_zero())
              num += RingElem::monomial(F, 2, x[idx2(a, b, p, q)], {p, q});
        t.forms[1].add({a, b}, num * den);
      }
  }
  MembershipReport rep = check_membership(t, g);
  if (!rep.ok) {
    res.message = "solution fails membership: " + rep.failure + " " + rep.detail;
    return res;
  }
  for (auto& [key, v] : lambda) {
    GKWord word;
    for (auto [a, l] : key) word.push_back(GKElem::mono(Scalar::one(F), a, l));
    if (pair_phi_k(g, word, t) != v) {
      res.message = "solution does not reproduce the table";
      return res;
    }
  }
  res.ok = true;
  res.message = "ok";
  res.tuple = std::move(t);
  return res;
}

}  // namespace logres
