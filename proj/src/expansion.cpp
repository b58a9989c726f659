#include <algorithm>
#include <climits>

#include "logres/diffring.hpp"

namespace logres {

struct RingElemAccess {
  static Poly& num(RingElem& f) { return f.num_; }
  static std::vector<int>& a(RingElem& f) { return f.a_; }
  static int& b(RingElem& f, int i, int j) { return f.b(i, j); }
  static int b(const RingElem& f, int i, int j) { return f.b(i, j); }
  static void canonicalize(RingElem& f) { f.canonicalize(); }
};

using Series = std::vector<RingElem>;

namespace {

Series series_mul(const Series& x, const Series& y, int K, const RingElem& zero) {
  Series r(K + 1, zero);
  for (int s = 0; s <= K && s < static_cast<int>(x.size()); ++s) {
    if (x[s].is_zero()) continue;
    for (int t = 0; s + t <= K && t < static_cast<int>(y.size()); ++t)
      if (!y[t].is_zero()) r[s + t] += x[s] * y[t];
  }
  return r;
}

// Signed linear form c + sigma*u with c = sign * z_k, or sign * (z_p - z_q).
struct RegularFactor {
  int k = -1, p = -1, q = -1;  // 1-based; k >= 0 means monomial form
  int sign = 1;
  int sigma = 1;
  int mult = 0;
};

RingElem c_inverse_power(const FieldSpec& F, int n, const RegularFactor& rf, int m) {
  if (rf.k > 0) {
    std::vector<int> e(n, 0);
    e[rf.k - 1] = -m;
    Scalar c = (rf.sign < 0 && m % 2) ? -Scalar::one(F) : Scalar::one(F);
    return RingElem::monomial(F, n, c, e);
  }
  RingElem r = RingElem::diff_power(F, n, rf.p, rf.q, -m);
  if (rf.sign < 0 && m % 2) r = -r;
  return r;
}

// (c + sigma u)^{-m} truncated at u^K.
Series factor_series(const FieldSpec& F, int n, const RegularFactor& rf, int K) {
  Series s;
  for (int t = 0; t <= K; ++t) {
    Scalar coef = binomial(F, rf.mult + t - 1, t);
    if ((rf.sigma > 0) && t % 2) coef = -coef;
    s.push_back(c_inverse_power(F, n, rf, rf.mult + t) * coef);
  }
  return s;
}

}  // namespace

Direction Direction::diagonal(int i, int j) {
  if (i == j) throw InputError("diagonal needs two distinct variables");
  return {Kind::Diagonal, i, j};
}

int Direction::removed() const { return kind == Kind::AtZero ? i : std::max(i, j); }
int Direction::survivor() const { return kind == Kind::AtZero ? 0 : std::min(i, j); }

int Direction::substitution_sign() const {
  if (kind == Kind::AtZero) return 1;
  return removed() == i ? kDiagonalOrientation : -kDiagonalOrientation;
}

std::string Direction::to_string() const {
  if (kind == Kind::AtZero) return "z" + std::to_string(i) + "=0";
  return "z" + std::to_string(i) + "=z" + std::to_string(j);
}

static void check_direction(const RingElem& f, const Direction& d) {
  int n = f.nvars();
  if (d.i < 1 || d.i > n) throw InputError("direction index out of range");
  if (d.kind == Direction::Kind::Diagonal && (d.j < 1 || d.j > n || d.j == d.i))
    throw InputError("diagonal index out of range");
}

int pole_order(const RingElem& f, const Direction& d) {
  check_direction(f, d);
  if (d.kind == Direction::Kind::AtZero) return f.z_exp(d.i);
  return f.diff_exp(d.i, d.j);
}

Expansion expand(const RingElem& f, const Direction& d, int order) {
  check_direction(f, d);
  Expansion out;
  if (f.is_zero()) return out;
  const FieldSpec& F = f.field();
  int n = f.nvars();
  int r = d.removed(), s = d.survivor();
  int sig0 = d.substitution_sign();
  bool diag = d.kind == Direction::Kind::Diagonal;
  int P = pole_order(f, d);
  int K = order + P;
  if (K < 0) return out;
  RingElem zero(F, n);
  RingElem one = RingElem::constant(F, n, 1L);

  // Denominator factors not involving z_r, and the regular factors that do.
  RingElem R = one;
  {
    std::vector<int> a(n, 0);
    for (int k = 1; k <= n; ++k)
      if (k != r) a[k - 1] = f.z_exp(k);
    std::map<std::pair<int, int>, int> bs;
    for (const auto& [pq, e] : f.diff_exps())
      if (pq.first != r && pq.second != r) bs[pq] = e;
    Poly p1;
    p1.emplace(Mono(n, 0), Scalar::one(F));
    R = RingElem::from_parts(F, n, p1, a, bs);
  }
  std::vector<RegularFactor> regs;
  if (diag && f.z_exp(r)) {
    RegularFactor rf;
    rf.k = s;
    rf.sigma = sig0;
    rf.mult = f.z_exp(r);
    regs.push_back(rf);
  }
  for (int k = 1; k <= n; ++k) {
    if (k == r || (diag && k == s)) continue;
    int e = f.diff_exp(k, r);
    if (!e) continue;
    RegularFactor rf;
    rf.mult = e;
    if (!diag) {
      rf.k = k;
      if (k < r) {
        rf.sign = 1;
        rf.sigma = -1;
      } else {
        rf.sign = -1;
        rf.sigma = 1;
      }
    } else if (k < r) {
      rf.p = k, rf.q = s;
      rf.sigma = -sig0;
    } else {
      rf.p = s, rf.q = k;
      rf.sigma = sig0;
    }
    regs.push_back(rf);
  }

  // Numerator in powers of u.
  Series num(K + 1, zero);
  for (const auto& [m, c] : f.numerator()) {
    int e = m[r - 1];
    std::vector<int> rest(m.begin(), m.end());
    rest[r - 1] = 0;
    if (!diag) {
      if (e <= K) num[e] += RingElem::monomial(F, n, c, rest);
      continue;
    }
    for (int t = 0; t <= std::min(e, K); ++t) {
      std::vector<int> ex = rest;
      ex[s - 1] += e - t;
      Scalar coef = c * binomial(F, e, t);
      if (sig0 < 0 && t % 2) coef = -coef;
      num[t] += RingElem::monomial(F, n, coef, ex);
    }
  }

  Series acc = num;
  for (const auto& rf : regs) acc = series_mul(acc, factor_series(F, n, rf, K), K, zero);

  Scalar pole_coef = Scalar::one(F);
  if (diag && P % 2 && sig0 > 0) pole_coef = -pole_coef;  // (z_s - z_r)^{-P} = (-sig0 u)^{-P}
  for (int t = 0; t <= K; ++t) {
    if (acc[t].is_zero()) continue;
    RingElem c = R * acc[t] * pole_coef;
    if (!c.is_zero()) out.emplace_back(t - P, std::move(c));
  }
  return out;
}

RingElem residue(const RingElem& f, const Direction& d) {
  for (auto& [e, c] : expand(f, d, -1))
    if (e == -1) return c;
  return RingElem(f.field(), f.nvars());
}

ParshinResult parshin_check(const RingElem& f, int i, int j) {
  auto zi = Direction::at_zero(i), zj = Direction::at_zero(j);
  ParshinResult r;
  r.lhs = residue(residue(f, zj), zi) - residue(residue(f, zi), zj);
  r.rhs = residue(residue(f, Direction::diagonal(i, j)), Direction::at_zero(std::min(i, j)));
  r.sign = Scalar(f.field(), static_cast<long>(kParshinSign));
  r.holds = r.lhs == r.rhs * r.sign;
  return r;
}

Expansion expand_at_infinity(const RingElem& f, int v, int lowest) {
  Expansion out;
  if (f.is_zero()) return out;
  const FieldSpec& F = f.field();
  int n = f.nvars();
  RingElem zero(F, n);
  int D0 = -f.z_exp(v);
  bool negate = false;
  std::vector<std::pair<int, int>> regs;  // (k, multiplicity)
  for (int k = 1; k <= n; ++k) {
    if (k == v) continue;
    int e = f.diff_exp(k, v);
    if (!e) continue;
    D0 -= e;
    if (k < v && e % 2) negate = !negate;
    regs.emplace_back(k, e);
  }
  int top = D0 + f.numerator_degree_in(v);
  int T = top - lowest;
  if (T < 0) return out;
  std::vector<int> a(n, 0);
  for (int k = 1; k <= n; ++k)
    if (k != v) a[k - 1] = f.z_exp(k);
  std::map<std::pair<int, int>, int> bs;
  for (const auto& [pq, e] : f.diff_exps())
    if (pq.first != v && pq.second != v) bs[pq] = e;
  Poly p1;
  p1.emplace(Mono(n, 0), Scalar::one(F));
  RingElem R = RingElem::from_parts(F, n, p1, a, bs);
  if (negate) R = -R;

  Series w(T + 1, zero);
  w[0] = RingElem::constant(F, n, 1L);
  for (auto [k, e] : regs) {
    Series s;
    for (int t = 0; t <= T; ++t) {
      std::vector<int> ex(n, 0);
      ex[k - 1] = t;
      s.push_back(RingElem::monomial(F, n, binomial(F, e + t - 1, t), ex));
    }
    w = series_mul(w, s, T, zero);
  }
  std::map<int, RingElem> by;  // exponent of z_v in numerator -> coefficient
  for (const auto& [m, c] : f.numerator()) {
    std::vector<int> ex(m.begin(), m.end());
    int e = ex[v - 1];
    ex[v - 1] = 0;
    auto it = by.try_emplace(e, zero).first;
    it->second += RingElem::monomial(F, n, c, ex);
  }
  for (int E = top; E >= lowest; --E) {
    RingElem c = zero;
    for (const auto& [e, ne] : by) {
      int t = D0 + e - E;
      if (t < 0 || t > T) continue;
      c += ne * w[t];
    }
    c *= R;
    if (!c.is_zero()) out.emplace_back(E, std::move(c));
  }
  return out;
}

RingElem residue_at_infinity(const RingElem& f, int var) {
  for (auto& [e, c] : expand_at_infinity(f, var, -1))
    if (e == -1) return -c;
  return RingElem(f.field(), f.nvars());
}

Scalar residue_at_infinity(const RingElem& f) {
  auto vs = f.variables();
  if (vs.size() > 1) throw InputError("residue at infinity needs a one-variable element");
  if (vs.empty()) return Scalar::zero(f.field());
  return residue_at_infinity(f, vs[0]).constant_value();
}

int permutation_sign(const std::vector<int>& perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

TopForm residue(const TopForm& w, const Direction& d) {
  int r = d.removed();
  auto it = std::find(w.vars.begin(), w.vars.end(), r);
  if (it == w.vars.end()) throw InputError("residue along a variable missing from the volume form");
  if (d.kind == Direction::Kind::Diagonal &&
      std::find(w.vars.begin(), w.vars.end(), d.survivor()) == w.vars.end())
    throw InputError("diagonal survivor missing from the volume form");
  int pos = static_cast<int>(it - w.vars.begin());
  int sign = (pos % 2 ? -1 : 1) * d.substitution_sign();
  TopForm out;
  out.value = residue(w.value, d) * Scalar(w.value.field(), static_cast<long>(sign));
  out.vars = w.vars;
  out.vars.erase(out.vars.begin() + pos);
  return out;
}

TopForm act(const std::vector<int>& perm, const TopForm& w) {
  TopForm out;
  out.value = w.value.relabel(perm);
  std::vector<int> img;
  for (int v : w.vars) img.push_back(perm.at(v - 1));
  int sign = permutation_sign(img);
  std::sort(img.begin(), img.end());
  out.vars = img;
  if (sign < 0) out.value = -out.value;
  return out;
}

}  // namespace logres
