#include "logres/lieoperad.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace logres {

namespace {

WordVec expand_rec(const FieldSpec& f, const BracketExpr& b) {
  if (b.is_leaf()) return {{Word{b.leaf}, Scalar::one(f)}};
  WordVec l = expand_rec(f, b.kids[0]), r = expand_rec(f, b.kids[1]), out;
  for (auto& [u, c] : l)
    for (auto& [v, d] : r) {
      Word uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      Scalar cd = c * d;
      out.try_emplace(uv, Scalar::zero(f)).first->second += cd;
      out.try_emplace(vu, Scalar::zero(f)).first->second -= cd;
    }
  std::erase_if(out, [](auto& kv) { return kv.second.is_zero(); });
  return out;
}

void check_multilinear(const BracketExpr& b, int n) {
  std::vector<int> l = b.leaves();
  std::sort(l.begin(), l.end());
  std::vector<int> want(n);
  std::iota(want.begin(), want.end(), 1);
  if (l != want) throw InputError("bracket " + b.to_string() + " is not multilinear in 1.." + std::to_string(n));
}

// Lexicographic rank of a permutation of 1..n.
std::size_t word_rank(const Word& w) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[j] < w[i]) ++smaller;
    r = r * (w.size() - i) + smaller;
  }
  return r;
}

SparseRow to_row(const WordVec& w) {
  SparseRow r;
  for (auto& [word, c] : w) r[word_rank(word)] = c;
  return r;
}

}  // namespace

WordVec expand_words(const FieldSpec& f, const BracketExpr& b) { return expand_rec(f, b); }

LieElement LieElement::monomial(const FieldSpec& f, const BracketExpr& b) {
  LieElement x(f, static_cast<int>(b.leaves().size()));
  x.add(Scalar::one(f), b);
  return x;
}

void LieElement::add(const Scalar& c, const BracketExpr& b) {
  check_multilinear(b, n);
  terms.emplace_back(c, b);
  cache_.reset();
}

const WordVec& LieElement::expansion() const {
  if (!cache_) {
    WordVec out;
    for (auto& [c, b] : terms)
      for (auto& [w, d] : expand_rec(field, b)) out.try_emplace(w, Scalar::zero(field)).first->second += c * d;
    std::erase_if(out, [](auto& kv) { return kv.second.is_zero(); });
    cache_ = std::make_shared<WordVec>(std::move(out));
  }
  return *cache_;
}

std::vector<std::vector<int>> lie_basis_sequences(int n) {
  std::vector<int> s(n - 1);
  std::iota(s.begin(), s.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

BracketExpr lie_basis_element(const std::vector<int>& sigma) {
  std::vector<int> seq = sigma;
  seq.push_back(static_cast<int>(sigma.size()) + 1);
  return BracketExpr::left_normed(seq);
}

LieBasis::LieBasis(const FieldSpec& f, int n) : f_(f), n_(n), seqs_(lie_basis_sequences(n)), ech_(f) {
  for (auto& s : seqs_) ech_.insert(to_row(expand_rec(f, lie_basis_element(s))));
}

std::vector<Scalar> LieBasis::coordinates(const LieElement& x) const {
  if (x.n != n_) throw InputError("Lie element has the wrong number of letters");
  SparseRow row = to_row(x.expansion());
  std::map<std::size_t, Scalar> coeffs;
  ech_.reduce(row, coeffs);
  if (!row.empty()) throw std::logic_error("Lie element is not in the span of the left-normed basis");
  std::vector<Scalar> out(seqs_.size(), Scalar::zero(f_));
  for (auto& [k, c] : coeffs) out[k] = c;
  return out;
}

int lie_dim(int n, const FieldSpec& f) {
  if (n < 2 || n > 7) throw InputError("lie_dim needs 2 <= n <= 7");
  return static_cast<int>(LieBasis(f, n).rank());
}

std::vector<Scalar> jacobi_reduce(const LieElement& x) { return LieBasis(x.field, x.n).coordinates(x); }

// ---------------------------------------------------------------------------

WedgeMonomial WedgeMonomial::zero(int n) {
  WedgeMonomial m;
  m.n_ = n;
  return m;
}

WedgeMonomial::WedgeMonomial(int n, const std::vector<Edge>& edges) : n_(n), sign_(1) {
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : edges) {
    if (a < 1 || b < 1 || a > n || b > n) throw InputError("edge index out of range");
    if (a == b) throw InputError("edge (" + std::to_string(a) + "," + std::to_string(a) + ") is a loop");
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::set<Edge> seen;
  for (auto& e : edges_)
    if (!seen.insert(e).second) {
      sign_ = 0;
      edges_.clear();
      return;
    }
  for (auto& [a, b] : edges_) {
    int ra = find(a), rb = find(b);
    if (ra == rb) throw InputError("edge set " + to_string() + " contains a cycle");
    parent[ra] = rb;
  }
}

bool WedgeMonomial::is_spanning_tree() const { return sign_ != 0 && static_cast<int>(edges_.size()) == n_ - 1; }

std::string WedgeMonomial::to_string() const {
  if (sign_ == 0) return "0";
  std::ostringstream os;
  if (sign_ < 0) os << "-";
  for (std::size_t k = 0; k < edges_.size(); ++k)
    os << (k ? "^" : "") << "dlog(z" << edges_[k].first << "-z" << edges_[k].second << ")";
  if (edges_.empty()) os << "1";
  return os.str();
}

WedgeMonomial WedgeMonomial::residue(const Direction& d) const {
  if (d.kind != Direction::Kind::Diagonal) throw InputError("wedge monomials only have diagonal residues");
  if (sign_ == 0) return *this;
  int lo = std::min(d.i, d.j), hi = std::max(d.i, d.j);
  auto it = std::find(edges_.begin(), edges_.end(), Edge{lo, hi});
  if (it == edges_.end()) return zero(n_);
  WedgeMonomial out;
  out.n_ = n_;
  out.sign_ = sign_ * ((it - edges_.begin()) % 2 ? -1 : 1);
  std::set<Edge> seen;
  for (auto e = edges_.begin(); e != edges_.end(); ++e) {
    if (e == it) continue;
    int a = e->first == hi ? lo : e->first, b = e->second == hi ? lo : e->second;
    Edge m{std::min(a, b), std::max(a, b)};
    if (!seen.insert(m).second) return zero(n_);
    out.edges_.push_back(m);
  }
  return out;
}

std::vector<std::vector<WedgeMonomial::Edge>> spanning_trees(int n) {
  std::vector<WedgeMonomial::Edge> all;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) all.emplace_back(a, b);
  std::vector<std::vector<WedgeMonomial::Edge>> out;
  std::vector<WedgeMonomial::Edge> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (static_cast<int>(cur.size()) == n - 1) {
      try {
        WedgeMonomial m(n, cur);
        out.push_back(cur);
      } catch (const InputError&) {
      }
      return;
    }
    if (k == all.size()) return;
    cur.push_back(all[k]);
    rec(k + 1);
    cur.pop_back();
    rec(k + 1);
  };
  rec(0);
  return out;
}

std::vector<Direction> chain_of(const BracketExpr& b) {
  std::vector<Direction> out;
  std::function<int(const BracketExpr&)> rec = [&](const BracketExpr& x) {
    if (x.is_leaf()) return x.leaf;
    int l = rec(x.kids[0]), r = rec(x.kids[1]);
    out.push_back(Direction::diagonal(l, r));
    return std::min(l, r);
  };
  rec(b);
  return out;
}

WedgeMonomial res_partial(const WedgeMonomial& m, const std::vector<Direction>& chain) {
  std::vector<bool> alive(m.nvars() + 1, true);
  WedgeMonomial cur = m;
  for (auto& d : chain) {
    if (d.kind != Direction::Kind::Diagonal) throw InputError("residue chains consist of diagonals");
    if (d.i < 1 || d.j < 1 || d.i > m.nvars() || d.j > m.nvars() || !alive[d.i] || !alive[d.j])
      throw InputError("chain step " + d.to_string() + " uses a collapsed or unknown variable");
    alive[d.removed()] = false;
    cur = cur.residue(d);
  }
  return cur;
}

Scalar res_tree(const WedgeMonomial& m, const std::vector<Direction>& chain, const FieldSpec& f) {
  if (static_cast<int>(chain.size()) != m.nvars() - 1)
    throw InputError("a residue chain on " + std::to_string(m.nvars()) + " points has " +
                     std::to_string(m.nvars() - 1) + " steps");
  WedgeMonomial r = res_partial(m, chain);
  return Scalar(f, static_cast<long>(r.sign()));
}

int bracket_orientation(const BracketExpr& b) {
  std::vector<int> l = b.leaves();
  int s = permutation_sign(l);
  std::function<void(const BracketExpr&)> rec = [&](const BracketExpr& x) {
    if (x.is_leaf()) return;
    if (x.kids[1].leaves().size() % 2 == 0) s = -s;
    rec(x.kids[0]);
    rec(x.kids[1]);
  };
  rec(b);
  return s;
}

Scalar lie_pairing(const BracketExpr& b, const WedgeMonomial& m, const FieldSpec& f) {
  return Scalar(f, static_cast<long>(bracket_orientation(b))) * res_tree(m, chain_of(b), f);
}

Matrix pairing_matrix(int n, const FieldSpec& f) {
  if (n < 2 || n > 6) throw InputError("pairing_matrix needs 2 <= n <= 6");
  auto seqs = lie_basis_sequences(n);
  auto trees = spanning_trees(n);
  Matrix M(f, seqs.size(), trees.size());
  for (std::size_t r = 0; r < seqs.size(); ++r) {
    auto ch = chain_of(lie_basis_element(seqs[r]));
    for (std::size_t c = 0; c < trees.size(); ++c) M(r, c) = res_tree(WedgeMonomial(n, trees[c]), ch, f);
  }
  return M;
}

BracketExpr compose(const BracketExpr& b1, int i, const BracketExpr& b2) {
  if (b1.is_leaf()) return b1.leaf == i ? b2 : b1;
  return BracketExpr::bracket(compose(b1.kids[0], i, b2), compose(b1.kids[1], i, b2));
}

// ---------------------------------------------------------------------------

Scalar one_form_residue(const OneForm& w, int i, int j) {
  if (w.empty()) throw InputError("empty one-form");
  auto it = w.find({std::min(i, j), std::max(i, j)});
  return it == w.end() ? Scalar::zero(w.begin()->second.field()) : it->second;
}

Scalar collision_residue(const OneForm& w, const std::vector<int>& labels) {
  if (w.empty()) throw InputError("empty one-form");
  std::set<int> s(labels.begin(), labels.end());
  Scalar out = Scalar::zero(w.begin()->second.field());
  for (auto& [e, c] : w)
    if (s.count(e.first) && s.count(e.second)) out += c;
  return out;
}

bool extends_over_total_collision(const OneForm& w, int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);
  return collision_residue(w, all).is_zero();
}

Scalar lambda_pairing(const BracketExpr& b, const OneForm& w) {
  check_multilinear(b, 3);
  const BracketExpr& inner = b.kids[0].is_leaf() ? b.kids[1] : b.kids[0];
  Scalar lam = one_form_residue(w, inner.kids[0].leaf, inner.kids[1].leaf);
  return Scalar(lam.field(), static_cast<long>(bracket_orientation(b))) * lam;
}

GTensor res_of_bracket_image(const LieAlgebra& g, const std::vector<int>& sigma, const std::vector<Vec>& xis) {
  if (sigma.size() + 1 != xis.size()) throw InputError("sigma must be a permutation of 1..d-1");
  Vec v = evaluate_bracket(g, lie_basis_element(sigma), xis);
  GTensor out;
  for (int c = 0; c < g.dim(); ++c)
    if (!v[c].is_zero()) out[{c}] = v[c];
  return out;
}

}  // namespace logres
