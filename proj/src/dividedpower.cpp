#include "logres/dividedpower.hpp"

#include <set>

namespace logres {

namespace {

void check_same(const FieldSpec& a, int ka, const FieldSpec& b, int kb) {
  if (!(a == b) || ka != kb) throw InputError("divided-power elements over different variable sets");
}

std::string mono_string(const MultiIndex& q, const char* open, const char* close) {
  std::string s;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!q[i]) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (q[i] > 1) s += std::string(open) + std::to_string(q[i]) + close;
  }
  return s.empty() ? "1" : s;
}

}  // namespace

PDElem PDElem::monomial(const FieldSpec& f, const MultiIndex& q, const Scalar& c) {
  PDElem a(f, static_cast<int>(q.size()));
  a.add(q, c);
  return a;
}

PDElem PDElem::one(const FieldSpec& f, int k) { return monomial(f, MultiIndex(k, 0), Scalar::one(f)); }

Scalar PDElem::constant_term() const {
  auto it = terms.find(MultiIndex(nvars, 0));
  return it == terms.end() ? Scalar::zero(field) : it->second;
}

void PDElem::add(const MultiIndex& q, const Scalar& c) {
  if (static_cast<int>(q.size()) != nvars) throw InputError("multi-index length mismatch");
  for (int x : q)
    if (x < 0) throw InputError("negative divided-power exponent");
  if (c.is_zero()) return;
  auto it = terms.find(q);
  if (it == terms.end()) {
    terms.emplace(q, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

PDElem& PDElem::operator+=(const PDElem& o) {
  check_same(field, nvars, o.field, o.nvars);
  for (const auto& [q, c] : o.terms) add(q, c);
  return *this;
}

PDElem PDElem::operator+(const PDElem& o) const {
  PDElem r = *this;
  return r += o;
}

PDElem PDElem::operator-(const PDElem& o) const { return *this + o * -Scalar::one(field); }

PDElem PDElem::operator*(const Scalar& s) const {
  PDElem r(field, nvars);
  for (const auto& [q, c] : terms) r.add(q, c * s);
  return r;
}

std::string PDElem::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [q, c] : terms) {
    if (!s.empty()) s += " + ";
    s += c.to_string() + "*" + mono_string(q, "^[", "]");
  }
  return s;
}

PDElem pd_mul(const PDElem& a, const PDElem& b) {
  check_same(a.field, a.nvars, b.field, b.nvars);
  PDElem r(a.field, a.nvars);
  for (const auto& [q, c] : a.terms)
    for (const auto& [s, d] : b.terms) {
      MultiIndex t(q.size());
      Scalar coef = c * d;
      for (std::size_t i = 0; i < q.size(); ++i) {
        t[i] = q[i] + s[i];
        coef *= binomial(a.field, t[i], q[i]);
      }
      r.add(t, coef);
    }
  return r;
}

PDElem pd_pow(const PDElem& a, int e) {
  PDElem r = PDElem::one(a.field, a.nvars);
  for (int k = 0; k < e; ++k) r = pd_mul(r, a);
  return r;
}

namespace {

// gamma_0..gamma_n of a single PD monomial x^[q], q != 0.
std::vector<PDElem> monomial_gammas(const FieldSpec& f, const MultiIndex& q, int n) {
  int k = static_cast<int>(q.size());
  std::size_t first = 0;
  while (q[first] == 0) ++first;
  MultiIndex rest = q;
  rest[first] = 0;
  bool single = true;
  for (int x : rest) single &= x == 0;
  std::vector<PDElem> out;
  if (single) {
    for (int i = 0; i <= n; ++i) {
      MultiIndex t(k, 0);
      t[first] = q[first] * i;
      Scalar c = q[first] == 1 || i == 0 ? Scalar::one(f) : pd_composition_coeff(f, i, q[first]);
      out.push_back(PDElem::monomial(f, t, c));
    }
    return out;
  }
  // x^[q] = lambda * x^[rest] with lambda = x_first^[q_first]; gamma_i(lambda y) = lambda^i gamma_i(y).
  MultiIndex lq(k, 0);
  lq[first] = q[first];
  PDElem lambda = PDElem::monomial(f, lq, Scalar::one(f));
  auto inner = monomial_gammas(f, rest, n);
  PDElem lp = PDElem::one(f, k);
  for (int i = 0; i <= n; ++i) {
    out.push_back(pd_mul(lp, inner[i]));
    lp = pd_mul(lp, lambda);
  }
  return out;
}

}  // namespace

std::vector<PDElem> gammas(int n, const PDElem& a) {
  if (n < 0) throw InputError("gamma index must be non-negative");
  if (!a.constant_term().is_zero()) throw InputError("gamma needs an element without constant term");
  std::vector<PDElem> acc(n + 1, PDElem(a.field, a.nvars));
  acc[0] = PDElem::one(a.field, a.nvars);
  for (const auto& [q, c] : a.terms) {
    auto g = monomial_gammas(a.field, q, n);
    // scaling axiom
    Scalar cp = Scalar::one(a.field);
    for (int i = 0; i <= n; ++i) {
      g[i] = g[i] * cp;
      cp *= c;
    }
    // addition axiom
    std::vector<PDElem> next(n + 1, PDElem(a.field, a.nvars));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        if (!acc[j].is_zero() && !g[i].is_zero()) next[i + j] += pd_mul(g[i], acc[j]);
    acc = std::move(next);
  }
  return acc;
}

PDElem gamma(int n, const PDElem& a) { return gammas(n, a)[n]; }

Scalar pd_pair(const PDElem& a, const SymPoly& b) {
  check_same(a.field, a.nvars, b.field, b.nvars);
  Scalar s = Scalar::zero(a.field);
  for (const auto& [q, c] : a.terms) {
    auto it = b.terms.find(q);
    if (it != b.terms.end()) s += c * it->second;
  }
  return s;
}

std::vector<std::pair<MultiIndex, MultiIndex>> coproduct(const MultiIndex& q) {
  std::vector<std::pair<MultiIndex, MultiIndex>> out;
  MultiIndex i(q.size(), 0);
  for (;;) {
    MultiIndex j(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) j[k] = q[k] - i[k];
    out.emplace_back(i, j);
    std::size_t k = q.size();
    while (k > 0 && i[k - 1] == q[k - 1]) i[--k] = 0;
    if (k == 0) return out;
    ++i[k - 1];
  }
}

CrysOp CrysOp::basis(const FieldSpec& f, const MultiIndex& q) {
  CrysOp d(f, static_cast<int>(q.size()));
  d.terms.emplace(q, Scalar::one(f));
  return d;
}

std::string CrysOp::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [q, c] : terms) {
    if (!s.empty()) s += " + ";
    std::string idx;
    for (std::size_t k = 0; k < q.size(); ++k) idx += (k ? "," : "") + std::to_string(q[k]);
    s += c.to_string() + "*D(" + idx + ")";
  }
  return s;
}

Scalar crys_eval(const CrysOp& d, const MultiIndex& q) {
  auto it = d.terms.find(q);
  return it == d.terms.end() ? Scalar::zero(d.field) : it->second;
}

CrysOp crys_compose(const CrysOp& f, const CrysOp& g) {
  check_same(f.field, f.nvars, g.field, g.nvars);
  // <f o g, x^[r]> = sum over splittings r = i + j of <g, x^[i]> <f, x^[j]>; only sums of supports matter.
  std::set<MultiIndex> targets;
  for (const auto& [a, ca] : f.terms)
    for (const auto& [b, cb] : g.terms) {
      MultiIndex r(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
      targets.insert(r);
    }
  CrysOp out(f.field, f.nvars);
  for (const auto& r : targets) {
    Scalar v = Scalar::zero(f.field);
    for (const auto& [i, j] : coproduct(r)) v += crys_eval(g, i) * crys_eval(f, j);
    if (!v.is_zero()) out.terms.emplace(r, v);
  }
  return out;
}

std::vector<MultiIndex> multi_indices_of_degree(int nvars, int degree) {
  std::vector<MultiIndex> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  for (int a = degree; a >= 0; --a)
    for (auto& rest : multi_indices_of_degree(nvars - 1, degree - a)) {
      MultiIndex q{a};
      q.insert(q.end(), rest.begin(), rest.end());
      out.push_back(q);
    }
  return out;
}

}  // namespace logres
