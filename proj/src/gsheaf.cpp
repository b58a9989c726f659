#include "logres/gsheaf.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "logres/linalg.hpp"

namespace logres {

namespace {

// Left inverse of the cobracket on a set of pivot tuples.
struct Factorizer {
  int d = 0, dim = 0;
  Matrix m;
  std::vector<std::size_t> pivots;
  std::vector<Vec> inv;  // inv[c][p]

  Factorizer(const LieAlgebra& g, const BracketExpr& pattern)
      : d(static_cast<int>(pattern.leaves().size())), dim(g.dim()), m(cobracket_matrix(g, pattern)) {
    const FieldSpec& F = g.field();
    SparseEchelon ech(F);
    for (std::size_t t = 0; t < m.cols() && pivots.size() < static_cast<std::size_t>(dim); ++t) {
      SparseRow col;
      for (int c = 0; c < dim; ++c)
        if (!m(c, t).is_zero()) col.emplace(c, m(c, t));
      if (!col.empty() && ech.insert(col)) pivots.push_back(t);
    }
    if (pivots.size() != static_cast<std::size_t>(dim))
      throw InputError("cobracket along " + pattern.to_string() + " is not injective over this field");
    // A S = r_piv with S = m restricted to the pivot columns
    Matrix st(F, dim, dim);
    for (int p = 0; p < dim; ++p)
      for (int c = 0; c < dim; ++c) st(p, c) = m(c, pivots[p]);
    inv.assign(dim, Vec(dim, Scalar::zero(F)));
    for (int p = 0; p < dim; ++p) {
      Vec e(dim, Scalar::zero(F));
      e[p] = Scalar::one(F);
      auto y = solve(st, e);
      for (int c = 0; c < dim; ++c) inv[c][p] = (*y)[c];
    }
  }

  std::size_t index(const std::vector<int>& t) const {
    std::size_t col = 0;
    for (int a : t) col = col * dim + a;
    return col;
  }
};

void check_labels(const std::vector<int>& labels, int n) {
  std::set<int> seen;
  for (int s : labels)
    if (s < 1 || s > n || !seen.insert(s).second) throw InputError("chain labels must be distinct and within 1.." + std::to_string(n));
}

std::vector<int> spectator_key(const std::vector<int>& key, const std::vector<int>& slots, std::vector<int>& cluster) {
  std::vector<int> spect;
  cluster.assign(slots.size(), 0);
  for (std::size_t k = 0; k < key.size(); ++k) {
    auto it = std::find(slots.begin(), slots.end(), static_cast<int>(k) + 1);
    if (it == slots.end())
      spect.push_back(key[k]);
    else
      cluster[it - slots.begin()] = key[k];
  }
  return spect;
}

std::vector<int> insert_slot(const std::vector<int>& spect, int pos, int c) {
  std::vector<int> out = spect;
  out.insert(out.begin() + pos, c);
  return out;
}

}  // namespace

TensorForm res_chain_labels(const GSection& w, const std::vector<int>& labels) {
  check_labels(labels, w.order);
  if (labels.size() < 2) return w;
  TensorForm cur = w;
  int rep = labels.back();
  for (int k = static_cast<int>(labels.size()) - 2; k >= 0; --k) {
    Direction dir = Direction::diagonal(labels[k], rep);
    TensorForm next{cur.order, {}};
    for (auto& [key, f] : cur.coeffs) next.add(key, residue(f, dir));
    cur = std::move(next);
    rep = std::min(rep, labels[k]);
  }
  return cur;
}

TensorForm res_chain(const GSection& w, const std::vector<int>& sigma, int d) {
  if (static_cast<int>(sigma.size()) != w.order) throw InputError("permutation size does not match the section order");
  check_labels(sigma, w.order);
  if (d < 1 || d > w.order) throw InputError("chain depth out of range");
  return res_chain_labels(w, std::vector<int>(sigma.begin(), sigma.begin() + d));
}

std::optional<TensorForm> factor_through_cobracket(const LieAlgebra& g, const TensorForm& r,
                                                   const BracketExpr& pattern, const std::vector<int>& slots) {
  Factorizer fz(g, pattern);
  if (static_cast<int>(slots.size()) != fz.d) throw InputError("one slot per pattern letter is needed");
  check_labels(slots, r.order);
  const FieldSpec& F = g.field();
  int pos = *std::min_element(slots.begin(), slots.end()) - 1;
  std::map<std::vector<int>, std::map<std::size_t, RingElem>> groups;
  int nv = -1;
  for (auto& [key, f] : r.coeffs) {
    std::vector<int> cluster;
    auto spect = spectator_key(key, slots, cluster);
    groups[spect].emplace(fz.index(cluster), f);
    nv = f.nvars();
  }
  TensorForm out{r.order - fz.d + 1, {}};
  for (auto& [spect, vals] : groups) {
    std::vector<RingElem> A(fz.dim, RingElem(F, nv));
    for (int c = 0; c < fz.dim; ++c)
      for (int p = 0; p < fz.dim; ++p) {
        auto it = vals.find(fz.pivots[p]);
        if (it != vals.end() && !fz.inv[c][p].is_zero()) A[c] += it->second * fz.inv[c][p];
      }
    for (std::size_t t = 0; t < fz.m.cols(); ++t) {
      RingElem img(F, nv);
      for (int c = 0; c < fz.dim; ++c)
        if (!fz.m(c, t).is_zero() && !A[c].is_zero()) img += A[c] * fz.m(c, t);
      auto it = vals.find(t);
      if (it == vals.end() ? !img.is_zero() : img != it->second) return std::nullopt;
    }
    for (int c = 0; c < fz.dim; ++c) out.add(insert_slot(spect, pos, c), A[c]);
  }
  return out;
}

BDReport bd_membership(const LieAlgebra& g, const GSection& w) {
  BDReport rep;
  int n = w.order;
  for (int d = 2; d <= n; ++d) {
    std::vector<int> seq(d);
    std::iota(seq.begin(), seq.end(), 1);
    BracketExpr pattern = BracketExpr::left_normed(seq);
    // ordered d-element label sequences
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    std::set<std::vector<int>> done;
    do {
      std::vector<int> s(labels.begin(), labels.begin() + d);
      if (s[d - 2] > s[d - 1] || !done.insert(s).second) continue;
      ++rep.chains_checked;
      TensorForm r = res_chain_labels(w, s);
      if (!factor_through_cobracket(g, r, pattern, s)) {
        rep.ok = false;
        rep.depth = d;
        rep.chain = s;
        std::string lab;
        for (int x : s) lab += (lab.empty() ? "" : ",") + std::to_string(x);
        rep.detail = "iterated residue along (" + lab + ") is not in the image of the cobracket " + pattern.to_string();
        return rep;
      }
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  return rep;
}

GSection residue_map(const LieAlgebra& g, const GSection& w) {
  int n = w.order;
  if (n < 2) throw InputError("the residue map needs order >= 2");
  TensorForm r{n, {}};
  Direction dir = Direction::diagonal(n - 1, n);
  for (auto& [key, f] : w.coeffs) r.add(key, residue(f, dir));
  auto a = factor_through_cobracket(g, r, BracketExpr::left_normed({1, 2}), {n - 1, n});
  if (!a) throw MathError("residue along z_" + std::to_string(n - 1) + "=z_" + std::to_string(n) + " is not a cobracket");
  GSection out{n - 1, {}};
  for (auto& [key, f] : a->coeffs) out.add(key, f.with_nvars(n - 1));
  return out;
}

bool is_regular(const GSection& w) {
  for (auto& [key, f] : w.coeffs)
    for (auto& [e, b] : f.diff_exps())
      if (b > 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

using Features = std::map<std::vector<int>, Scalar>;

Poly polynomial_part(const RingElem& f, const RingElem& D) {
  RingElem p = f * D;
  for (int m = 1; m <= p.nvars(); ++m)
    if (p.z_exp(m) != 0) throw std::logic_error("common denominator too small: " + f.to_string());
  for (auto& [e, b] : p.diff_exps())
    if (b != 0) throw std::logic_error("common denominator too small: " + f.to_string());
  return p.numerator();
}

RingElem denominator(const FieldSpec& F, int n, int zpow, int dpow) {
  RingElem D = RingElem::monomial(F, n, Scalar::one(F), std::vector<int>(n, zpow));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) D *= RingElem::diff_power(F, n, i, j, dpow);
  return D;
}

void put(Features& out, std::vector<int> key, const Scalar& s) {
  if (s.is_zero()) return;
  auto it = out.try_emplace(std::move(key), Scalar::zero(s.field())).first;
  it->second += s;
  if (it->second.is_zero()) out.erase(it);
}

void put_poly(Features& out, std::vector<int> prefix, const Poly& p) {
  for (auto& [m, c] : p) {
    std::vector<int> key = prefix;
    key.insert(key.end(), m.begin(), m.end());
    put(out, key, c);
  }
}

// Basis of the solution space of {x : sum_o x_o feats[o] = 0}, in orbit coordinates.
std::vector<Vec> solution_space(const FieldSpec& F, const std::vector<Features>& feats) {
  std::map<std::vector<int>, SparseRow> rows;
  for (std::size_t o = 0; o < feats.size(); ++o)
    for (auto& [k, c] : feats[o]) rows[k].emplace(o, c);
  SparseEchelon ech(F);
  std::vector<const SparseRow*> kept;
  for (auto& [k, row] : rows)
    if (ech.insert(row)) kept.push_back(&row);
  Matrix M(F, std::max<std::size_t>(kept.size(), 1), feats.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (auto& [o, c] : *kept[i]) M(i, o) = c;
  return nullspace(M);
}

Features combine(const std::vector<Features>& feats, const Vec& x) {
  Features out;
  for (std::size_t o = 0; o < feats.size(); ++o)
    if (!x[o].is_zero())
      for (auto& [k, c] : feats[o]) put(out, k, c * x[o]);
  return out;
}

std::size_t feature_rank(const FieldSpec& F, const std::vector<Features>& vs) {
  std::map<std::vector<int>, std::size_t> col;
  SparseEchelon ech(F);
  std::size_t r = 0;
  for (auto& v : vs) {
    SparseRow row;
    for (auto& [k, c] : v) row.emplace(col.try_emplace(k, col.size()).first->second, c);
    if (!row.empty() && ech.insert(row)) ++r;
  }
  return r;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

ExactnessReport kernel_and_exactness_report(const LieAlgebra& g, int n, int bound) {
  if (n < 1 || n > 3) throw InputError("exactness report supports 1 <= n <= 3");
  if (bound < 0 || bound > (n == 3 ? 2 : 4)) throw InputError("bound outside the supported range for this n");
  const FieldSpec& F = g.field();
  const int dim = g.dim(), B = bound, top = B + n - 3;
  ExactnessReport rep;
  rep.n = n;
  rep.bound = B;
  rep.sym_power_dim = B >= 2 ? binomial(static_cast<std::size_t>(dim * (B - 1) + n - 1), n) : 0;
  if (B < 2) rep.note = "bound below 2 leaves no regular one-forms";

  // orbit vectors of the simultaneous slot/variable action
  const RingElem D = denominator(F, n, B, 1), Dinv = denominator(F, n, -B, -1);
  std::vector<GSection> orbit;
  if (top >= 0) {
    std::vector<int> perm0(n);
    std::iota(perm0.begin(), perm0.end(), 1);
    for (auto& J : all_tuples(dim, n))
      for (auto& e : all_tuples(top + 1, n)) {
        bool is_rep = true;
        std::vector<int> p = perm0;
        do {
          std::vector<int> pj(n), pe(n);
          for (int k = 0; k < n; ++k) {
            pj[k] = J[p[k] - 1];
            pe[k] = e[p[k] - 1];
          }
          if (std::pair{pj, pe} < std::pair{J, e}) is_rep = false;
        } while (is_rep && std::next_permutation(p.begin(), p.end()));
        if (!is_rep) continue;
        GSection b{n, {}};
        b.add(J, RingElem::monomial(F, n, Scalar::one(F), e) * Dinv);
        GSection v{n, {}};
        p = perm0;
        do v += act(p, b) * Scalar(F, static_cast<long>(permutation_sign(p)));
        while (std::next_permutation(p.begin(), p.end()));
        if (!v.coeffs.empty()) orbit.push_back(std::move(v));
      }
  }
  if (orbit.empty()) {
    rep.kernel_is_regular = rep.additive = rep.image_in_bd = true;
    if (rep.note.empty()) rep.note = "empty truncation";
    return rep;
  }

  // constraints: no loops (n = 3) and BD membership; residue and regularity features
  const RingElem Dout = denominator(F, n, n * B + n, n);
  std::vector<Features> cons(orbit.size()), res(orbit.size()), reg(orbit.size());
  std::vector<std::pair<std::vector<int>, BracketExpr>> chains;
  for (int d = 2; d <= n; ++d) {
    std::vector<int> seq(d);
    std::iota(seq.begin(), seq.end(), 1);
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    std::set<std::vector<int>> done;
    do {
      std::vector<int> s(labels.begin(), labels.begin() + d);
      if (s[d - 2] < s[d - 1] && done.insert(s).second) chains.emplace_back(s, BracketExpr::left_normed(seq));
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  std::vector<std::vector<Vec>> annihilators;
  for (auto& [s, pat] : chains) annihilators.push_back(nullspace(cobracket_matrix(g, pat)));

  for (std::size_t o = 0; o < orbit.size(); ++o) {
    const GSection& v = orbit[o];
    for (auto& [J, f] : v.coeffs) {
      Poly p = polynomial_part(f, D);
      if (n == 3) {
        Features& c = cons[o];
        for (auto& [m, s] : p) {
          std::vector<int> key{0};
          key.insert(key.end(), J.begin(), J.end());
          key.push_back(std::accumulate(m.begin(), m.end(), 0));
          put(c, key, s);
        }
      }
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          for (auto& [m, s] : p) {
            std::vector<int> key{3, i, j};
            key.insert(key.end(), J.begin(), J.end());
            Mono r = m;
            r[i - 1] += r[j - 1];
            r[j - 1] = 0;
            key.insert(key.end(), r.begin(), r.end());
            put(reg[o], key, s);
          }
    }
    for (std::size_t ci = 0; ci < chains.size(); ++ci) {
      auto& [s, pat] = chains[ci];
      TensorForm r = res_chain_labels(v, s);
      Factorizer fz(g, pat);
      std::map<std::pair<std::size_t, std::vector<int>>, RingElem> acc;
      for (auto& [key, f] : r.coeffs) {
        std::vector<int> cluster;
        auto spect = spectator_key(key, s, cluster);
        std::size_t t = fz.index(cluster);
        for (std::size_t u = 0; u < annihilators[ci].size(); ++u) {
          const Scalar& c = annihilators[ci][u][t];
          if (c.is_zero()) continue;
          auto it = acc.try_emplace({u, spect}, RingElem(F, n)).first;
          it->second += f * c;
        }
      }
      for (auto& [k, f] : acc) {
        if (f.is_zero()) continue;
        std::vector<int> prefix{1, static_cast<int>(ci), static_cast<int>(k.first)};
        prefix.insert(prefix.end(), k.second.begin(), k.second.end());
        put_poly(cons[o], prefix, polynomial_part(f, Dout));
      }
    }
    if (n >= 2) {
      Direction dir = Direction::diagonal(n - 1, n);
      for (auto& [J, f] : v.coeffs) {
        std::vector<int> prefix{2};
        prefix.insert(prefix.end(), J.begin(), J.end());
        put_poly(res[o], prefix, polynomial_part(residue(f, dir), Dout));
      }
    }
  }

  auto V = solution_space(F, cons);
  rep.dim_total = V.size();
  std::vector<Features> both(orbit.size());
  for (std::size_t o = 0; o < orbit.size(); ++o) {
    both[o] = cons[o];
    for (auto& [k, c] : reg[o]) put(both[o], k, c);
  }
  auto R = solution_space(F, both);
  rep.dim_regular = R.size();

  if (n == 1) {
    rep.dim_kernel = rep.dim_total;
    rep.kernel_is_regular = rep.dim_regular == rep.dim_total;
    rep.additive = rep.image_in_bd = true;
    rep.note = "order 1: no residue map";
    return rep;
  }

  std::vector<Features> images;
  for (auto& x : V) images.push_back(combine(res, x));
  rep.dim_image = feature_rank(F, images);
  // kernel computed separately, as the solution space of the residue features restricted to V
  rep.dim_kernel = solution_space(F, images).size();
  std::vector<Features> reg_images;
  for (auto& x : R) reg_images.push_back(combine(res, x));
  rep.kernel_is_regular = rep.dim_kernel == rep.dim_regular && feature_rank(F, reg_images) == 0;
  rep.additive = rep.dim_total == rep.dim_kernel + rep.dim_image;

  rep.image_in_bd = true;
  for (auto& x : V) {
    GSection w{n, {}};
    for (std::size_t o = 0; o < orbit.size(); ++o)
      if (!x[o].is_zero()) w += orbit[o] * x[o];
    if (!bd_membership(g, residue_map(g, w)).ok) rep.image_in_bd = false;
  }
  return rep;
}

}  // namespace logres
