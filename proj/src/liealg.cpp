#include "logres/liealg.hpp"

#include <algorithm>

namespace logres {

BracketExpr BracketExpr::bracket(BracketExpr a, BracketExpr b) {
  BracketExpr e;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

BracketExpr BracketExpr::left_normed(const std::vector<int>& seq) {
  if (seq.empty()) throw InputError("empty bracket sequence");
  BracketExpr e = letter(seq.back());
  for (auto it = seq.rbegin() + 1; it != seq.rend(); ++it) e = bracket(letter(*it), std::move(e));
  return e;
}

std::vector<int> BracketExpr::leaves() const {
  if (is_leaf()) return {leaf};
  auto l = kids[0].leaves(), r = kids[1].leaves();
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

int BracketExpr::min_leaf() const {
  auto l = leaves();
  return *std::min_element(l.begin(), l.end());
}

std::string BracketExpr::to_string() const {
  if (is_leaf()) return std::to_string(leaf);
  return "[" + kids[0].to_string() + "," + kids[1].to_string() + "]";
}

LieAlgebra::LieAlgebra(const FieldSpec& f, std::vector<std::string> names, std::vector<std::vector<Vec>> consts)
    : f_(f), names_(std::move(names)), c_(std::move(consts)) {
  int d = dim();
  if (static_cast<int>(c_.size()) != d) throw InputError("structure constant table has wrong size");
  for (auto& row : c_) {
    if (static_cast<int>(row.size()) != d) throw InputError("structure constant table has wrong size");
    for (auto& v : row)
      if (static_cast<int>(v.size()) != d) throw InputError("structure constant vector has wrong size");
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int q = 0; q < d; ++q)
        if (c_[i][j][q] != -c_[j][i][q]) throw InputError("structure constants are not antisymmetric");
  if (!jacobi_holds()) throw InputError("structure constants violate the Jacobi identity");
}

Vec LieAlgebra::basis_vector(int i) const {
  Vec v(dim(), Scalar::zero(f_));
  v.at(i) = Scalar::one(f_);
  return v;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  int d = dim();
  if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d) throw InputError("dimension mismatch");
  Vec r(d, Scalar::zero(f_));
  for (int i = 0; i < d; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (y[j].is_zero()) continue;
      Scalar xy = x[i] * y[j];
      for (int q = 0; q < d; ++q)
        if (!c_[i][j][q].is_zero()) r[q] += xy * c_[i][j][q];
    }
  }
  return r;
}

bool LieAlgebra::jacobi_holds() const {
  int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Vec a = bracket(basis_vector(i), c_[j][k]);
        Vec b = bracket(basis_vector(j), c_[k][i]);
        Vec c = bracket(basis_vector(k), c_[i][j]);
        for (int q = 0; q < d; ++q)
          if (!(a[q] + b[q] + c[q]).is_zero()) return false;
      }
  return true;
}

int LieAlgebra::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it != names_.end()) return static_cast<int>(it - names_.begin());
  try {
    std::size_t pos = 0;
    int k = std::stoi(name, &pos);
    if (pos == name.size() && k >= 0 && k < dim()) return k;
  } catch (const std::exception&) {
  }
  throw InputError("unknown basis element '" + name + "'");
}

namespace {

using IMat = std::vector<std::vector<long>>;

IMat commutator(const IMat& a, const IMat& b) {
  std::size_t n = a.size();
  IMat r(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) r[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
  return r;
}

IMat unit(std::size_t n, std::size_t i, std::size_t j) {
  IMat r(n, std::vector<long>(n, 0));
  r[i][j] = 1;
  return r;
}

// Matrix Lie algebra with basis: off-diagonal units, then H_k = E_kk - E_{k+1,k+1}.
LieAlgebra sl_n(const FieldSpec& f, std::size_t n, std::vector<std::string> names,
                const std::vector<std::pair<int, int>>& offdiag) {
  std::vector<IMat> basis;
  std::vector<int> order;  // position in `names` for each basis matrix
  for (auto [i, j] : offdiag) basis.push_back(unit(n, i, j));
  std::size_t nh = n - 1;
  std::vector<IMat> hs;
  for (std::size_t k = 0; k < nh; ++k) {
    IMat h = unit(n, k, k);
    h[k + 1][k + 1] = -1;
    hs.push_back(h);
  }
  // names order: positive roots, Cartans, negative roots; offdiag holds positives then negatives.
  std::size_t npos = offdiag.size() / 2;
  std::vector<IMat> all;
  for (std::size_t k = 0; k < npos; ++k) all.push_back(basis[k]);
  for (auto& h : hs) all.push_back(h);
  for (std::size_t k = npos; k < offdiag.size(); ++k) all.push_back(basis[k]);
  std::size_t d = all.size();
  auto coords = [&](const IMat& m) {
    Vec v(d, Scalar::zero(f));
    for (std::size_t k = 0; k < d; ++k) {
      if (k >= npos && k < npos + nh) continue;
      std::size_t idx = k < npos ? k : k - nh;
      auto [i, j] = offdiag[idx];
      v[k] = Scalar(f, m[i][j]);
    }
    // diagonal diag(a_0..a_{n-1}) with trace 0 = sum_k (a_0+...+a_k) H_k
    long run = 0;
    for (std::size_t k = 0; k < nh; ++k) {
      run += m[k][k];
      v[npos + k] = Scalar(f, run);
    }
    return v;
  };
  std::vector<std::vector<Vec>> c(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) c[i][j] = coords(commutator(all[i], all[j]));
  return LieAlgebra(f, std::move(names), std::move(c));
}

}  // namespace

LieAlgebra LieAlgebra::sl2(const FieldSpec& f) {
  LieAlgebra g = sl_n(f, 2, {"e", "h", "f"}, {{0, 1}, {1, 0}});
  g.weights_ = {2, 0, -2};
  g.builtin_ = "sl2";
  return g;
}

LieAlgebra LieAlgebra::sl3(const FieldSpec& f) {
  LieAlgebra g = sl_n(f, 3, {"e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3"},
                      {{0, 1}, {1, 2}, {0, 2}, {1, 0}, {2, 1}, {2, 0}});
  // cocharacter t -> diag(t^2, t^1, t^0)... weights of E_ij are mu_i - mu_j with mu = (2,1,0)
  g.weights_ = {1, 1, 2, 0, 0, -1, -1, -2};
  g.builtin_ = "sl3";
  return g;
}

LieAlgebra LieAlgebra::abelian(const FieldSpec& f, int d) {
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) names.push_back("x" + std::to_string(i + 1));
  std::vector<std::vector<Vec>> c(d, std::vector<Vec>(d, Vec(d, Scalar::zero(f))));
  LieAlgebra g(f, names, c);
  g.weights_.assign(d, 0);
  g.builtin_ = "abelian" + std::to_string(d);
  return g;
}

LieAlgebra LieAlgebra::builtin(const std::string& name, const FieldSpec& f) {
  if (name == "sl2") return sl2(f);
  if (name == "sl3") return sl3(f);
  if (name.rfind("abelian", 0) == 0) {
    int d = name.size() > 7 ? std::stoi(name.substr(7)) : 1;
    return abelian(f, d);
  }
  throw InputError("unknown builtin Lie algebra '" + name + "'");
}

std::vector<std::vector<int>> all_tuples(int dim, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(order, 0);
  for (;;) {
    out.push_back(t);
    int k = order - 1;
    while (k >= 0 && ++t[k] == dim) t[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

GTensor phi_lower(const LieAlgebra& g, int i, const GTensor& t) {
  if (i < 2) throw InputError("phi_lower needs order at least 2");
  GTensor r;
  for (const auto& [idx, c] : t) {
    if (static_cast<int>(idx.size()) != i) throw InputError("tensor order mismatch");
    const Vec& br = g.bracket_basis(idx[i - 2], idx[i - 1]);
    for (int q = 0; q < g.dim(); ++q) {
      if (br[q].is_zero()) continue;
      std::vector<int> k(idx.begin(), idx.end() - 1);
      k.back() = q;
      auto it = r.try_emplace(k, Scalar::zero(g.field())).first;
      it->second += c * br[q];
    }
  }
  for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

GTensor phi_upper(const LieAlgebra& g, int i, const GTensor& s) {
  if (i < 2) throw InputError("phi_upper needs order at least 2");
  GTensor r;
  for (const auto& [idx, c] : s) {
    if (static_cast<int>(idx.size()) != i - 1) throw InputError("tensor order mismatch");
    int q = idx.back();
    for (int a = 0; a < g.dim(); ++a)
      for (int b = 0; b < g.dim(); ++b) {
        const Scalar& f = g.structure(a, b, q);
        if (f.is_zero()) continue;
        std::vector<int> k(idx.begin(), idx.end() - 1);
        k.push_back(a);
        k.push_back(b);
        auto it = r.try_emplace(k, Scalar::zero(g.field())).first;
        it->second += c * f;
      }
  }
  for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

Vec evaluate_bracket(const LieAlgebra& g, const BracketExpr& p, const std::vector<Vec>& xs) {
  if (p.is_leaf()) return xs.at(p.leaf - 1);
  return g.bracket(evaluate_bracket(g, p.kids[0], xs), evaluate_bracket(g, p.kids[1], xs));
}

namespace {

// Map from full leaf assignment (indexed by letter) to coordinate vector, restricted to nonzero values.
std::map<std::vector<int>, Vec> bracket_table(const LieAlgebra& g, const BracketExpr& p, int d) {
  std::map<std::vector<int>, Vec> out;
  if (p.is_leaf()) {
    for (int a = 0; a < g.dim(); ++a) {
      std::vector<int> key(d, -1);
      key[p.leaf - 1] = a;
      out.emplace(key, g.basis_vector(a));
    }
    return out;
  }
  auto L = bracket_table(g, p.kids[0], d), R = bracket_table(g, p.kids[1], d);
  for (const auto& [kl, vl] : L)
    for (const auto& [kr, vr] : R) {
      Vec v = g.bracket(vl, vr);
      bool nz = false;
      for (auto& x : v) nz |= !x.is_zero();
      if (!nz) continue;
      std::vector<int> key = kl;
      for (int k = 0; k < d; ++k)
        if (kr[k] >= 0) key[k] = kr[k];
      out.emplace(key, std::move(v));
    }
  return out;
}

int check_pattern(const BracketExpr& p) {
  auto l = p.leaves();
  std::vector<int> s = l;
  std::sort(s.begin(), s.end());
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] != static_cast<int>(k) + 1) throw InputError("bracket pattern must use letters 1..d once each");
  return static_cast<int>(s.size());
}

}  // namespace

GTensor cobracket_tree(const LieAlgebra& g, const BracketExpr& pattern, const Vec& A) {
  int d = check_pattern(pattern);
  GTensor r;
  for (const auto& [key, v] : bracket_table(g, pattern, d)) {
    Scalar s = Scalar::zero(g.field());
    for (int q = 0; q < g.dim(); ++q)
      if (!v[q].is_zero()) s += A[q] * v[q];
    if (!s.is_zero()) r.emplace(key, s);
  }
  return r;
}

Matrix cobracket_matrix(const LieAlgebra& g, const BracketExpr& pattern) {
  int d = check_pattern(pattern);
  std::size_t cols = 1;
  for (int k = 0; k < d; ++k) cols *= g.dim();
  Matrix m(g.field(), g.dim(), cols);
  for (const auto& [key, v] : bracket_table(g, pattern, d)) {
    std::size_t col = 0;
    for (int k = 0; k < d; ++k) col = col * g.dim() + key[k];
    for (int q = 0; q < g.dim(); ++q) m(q, col) = v[q];
  }
  return m;
}

bool is_injective_cobracket(const LieAlgebra& g, const BracketExpr& pattern) {
  return rank(cobracket_matrix(g, pattern)) == static_cast<std::size_t>(g.dim());
}

Scalar pair(const GTensor& covector, const GTensor& vector) {
  Scalar s;
  bool init = false;
  for (const auto& [k, c] : covector) {
    auto it = vector.find(k);
    if (it == vector.end()) continue;
    if (!init) {
      s = Scalar::zero(c.field());
      init = true;
    }
    s += c * it->second;
  }
  if (!init) {
    if (!covector.empty()) return Scalar::zero(covector.begin()->second.field());
    if (!vector.empty()) return Scalar::zero(vector.begin()->second.field());
  }
  return s;
}

GTensor permute_slots(const GTensor& t, const std::vector<int>& perm) {
  GTensor r;
  for (const auto& [k, c] : t) {
    std::vector<int> k2(k.size());
    for (std::size_t s = 0; s < k.size(); ++s) k2[perm[s] - 1] = k[s];
    r.emplace(std::move(k2), c);
  }
  return r;
}

}  // namespace logres
