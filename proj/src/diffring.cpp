#include "logres/diffring.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace logres {

namespace {

void add_term(Poly& p, const Mono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

void add_into(Poly& p, const Poly& q, const Scalar& s) {
  for (const auto& [m, c] : q) add_term(p, m, c * s);
}

Poly mul(const Poly& p, const Poly& q) {
  Poly r;
  for (const auto& [m1, c1] : p)
    for (const auto& [m2, c2] : q) {
      Mono m(m1.size());
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = m1[k] + m2[k];
      add_term(r, m, c1 * c2);
    }
  return r;
}

Poly shift(const Poly& p, int var, int k) {
  if (k == 0) return p;
  Poly r;
  for (const auto& [m, c] : p) {
    Mono m2 = m;
    m2[var] += k;
    r.emplace(std::move(m2), c);
  }
  return r;
}

// p * (z_i - z_j)
Poly mul_diff(const Poly& p, int i, int j) {
  Poly r = shift(p, i, 1);
  Poly s = shift(p, j, 1);
  Scalar m1 = -Scalar::one(p.empty() ? FieldSpec() : p.begin()->second.field());
  add_into(r, s, m1);
  return r;
}

Poly mul_diff_pow(Poly p, int i, int j, int k) {
  for (int t = 0; t < k; ++t) p = mul_diff(p, i, j);
  return p;
}

// Exact division by (z_i - z_j); false if not divisible.
bool div_diff(const Poly& p, int i, int j, Poly& out) {
  if (p.empty()) {
    out.clear();
    return true;
  }
  std::map<int, Poly> by;  // exponent of z_i -> coefficient poly (z_i exponent zero)
  int deg = 0;
  for (const auto& [m, c] : p) {
    Mono m2 = m;
    int e = m2[i];
    m2[i] = 0;
    by[e].emplace(std::move(m2), c);
    deg = std::max(deg, e);
  }
  if (deg == 0) return false;
  std::vector<Poly> q(deg);
  Poly carry;  // q_k
  for (int k = deg; k >= 1; --k) {
    Poly ck = by.count(k) ? by[k] : Poly{};
    if (k < deg) add_into(ck, shift(q[k], j, 1), Scalar::one(p.begin()->second.field()));
    q[k - 1] = std::move(ck);
  }
  Poly rem = by.count(0) ? by[0] : Poly{};
  add_into(rem, shift(q[0], j, 1), Scalar::one(p.begin()->second.field()));
  if (!rem.empty()) return false;
  out.clear();
  for (int k = 0; k < deg; ++k)
    for (const auto& [m, c] : q[k]) {
      Mono m2 = m;
      m2[i] += k;
      out.emplace(std::move(m2), c);
    }
  return true;
}

}  // namespace

RingElem::RingElem(const FieldSpec& f, int nvars)
    : f_(f), n_(nvars), a_(nvars, 0), b_(static_cast<std::size_t>(nvars) * nvars, 0) {}

RingElem RingElem::constant(const FieldSpec& f, int nvars, const Scalar& c) {
  RingElem r(f, nvars);
  if (!c.is_zero()) r.num_.emplace(Mono(nvars, 0), c);
  return r;
}

RingElem RingElem::constant(const FieldSpec& f, int nvars, long c) {
  return constant(f, nvars, Scalar(f, c));
}

RingElem RingElem::monomial(const FieldSpec& f, int nvars, const Scalar& c, const std::vector<int>& exps) {
  if (static_cast<int>(exps.size()) != nvars) throw InputError("exponent vector length mismatch");
  RingElem r(f, nvars);
  if (c.is_zero()) return r;
  Mono m(nvars, 0);
  for (int k = 0; k < nvars; ++k) {
    if (exps[k] >= 0)
      m[k] = exps[k];
    else
      r.a_[k] = -exps[k];
  }
  r.num_.emplace(std::move(m), c);
  return r;
}

RingElem RingElem::var(const FieldSpec& f, int nvars, int i) {
  std::vector<int> e(nvars, 0);
  e.at(i - 1) = 1;
  return monomial(f, nvars, Scalar::one(f), e);
}

RingElem RingElem::diff_power(const FieldSpec& f, int nvars, int i, int j, int k) {
  if (i == j || i < 1 || j < 1 || i > nvars || j > nvars) throw InputError("bad difference indices");
  int lo = std::min(i, j) - 1, hi = std::max(i, j) - 1;
  Scalar sign = (i < j || k % 2 == 0) ? Scalar::one(f) : -Scalar::one(f);
  RingElem r = constant(f, nvars, sign);
  if (k >= 0)
    r.num_ = mul_diff_pow(r.num_, lo, hi, k);
  else
    r.b(lo, hi) = -k;
  return r;
}

RingElem RingElem::from_parts(const FieldSpec& f, int nvars, Poly num, std::vector<int> a,
                              const std::map<std::pair<int, int>, int>& bs) {
  RingElem r(f, nvars);
  if (static_cast<int>(a.size()) != nvars) throw InputError("denominator length mismatch");
  for (int x : a)
    if (x < 0) throw InputError("negative denominator exponent");
  for (auto& [m, c] : num) {
    if (static_cast<int>(m.size()) != nvars) throw InputError("numerator exponent length mismatch");
    for (int x : m)
      if (x < 0) throw InputError("negative numerator exponent");
    add_term(r.num_, m, c);
  }
  r.a_ = std::move(a);
  for (const auto& [ij, e] : bs) {
    auto [i, j] = ij;
    if (i == j || i < 1 || j < 1 || i > nvars || j > nvars || e < 0) throw InputError("bad difference factor");
    int lo = std::min(i, j) - 1, hi = std::max(i, j) - 1;
    if (i > j && e % 2) r.num_ = [&] {
      Poly p;
      add_into(p, r.num_, -Scalar::one(f));
      return p;
    }();
    r.b(lo, hi) += e;
  }
  r.canonicalize();
  return r;
}

int RingElem::diff_exp(int i, int j) const {
  return b(std::min(i, j) - 1, std::max(i, j) - 1);
}

std::map<std::pair<int, int>, int> RingElem::diff_exps() const {
  std::map<std::pair<int, int>, int> r;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (b(i, j)) r[{i + 1, j + 1}] = b(i, j);
  return r;
}

void RingElem::canonicalize() {
  if (num_.empty()) {
    std::fill(a_.begin(), a_.end(), 0);
    std::fill(b_.begin(), b_.end(), 0);
    return;
  }
  for (int i = 0; i < n_; ++i) {
    if (!a_[i]) continue;
    int mn = INT_MAX;
    for (const auto& [m, c] : num_) mn = std::min(mn, m[i]);
    int k = std::min(mn, a_[i]);
    if (k > 0) {
      num_ = shift(num_, i, -k);
      a_[i] -= k;
    }
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      while (b(i, j) > 0) {
        Poly q;
        if (!div_diff(num_, i, j, q)) break;
        num_ = std::move(q);
        --b(i, j);
      }
}

bool RingElem::is_constant() const {
  if (num_.empty()) return true;
  if (num_.size() != 1) return false;
  for (int x : num_.begin()->first)
    if (x) return false;
  for (int x : a_)
    if (x) return false;
  for (int x : b_)
    if (x) return false;
  return true;
}

Scalar RingElem::constant_value() const {
  if (!is_constant()) throw std::logic_error("element is not constant: " + to_string());
  return num_.empty() ? Scalar::zero(f_) : num_.begin()->second;
}

bool RingElem::depends_on(int var) const {
  int v = var - 1;
  if (a_[v]) return true;
  for (int k = 0; k < n_; ++k)
    if (k != v && b(std::min(k, v), std::max(k, v))) return true;
  for (const auto& [m, c] : num_)
    if (m[v]) return true;
  return false;
}

std::vector<int> RingElem::variables() const {
  std::vector<int> r;
  for (int v = 1; v <= n_; ++v)
    if (depends_on(v)) r.push_back(v);
  return r;
}

int RingElem::numerator_degree_in(int var) const {
  if (num_.empty()) return INT_MIN;
  int d = 0;
  for (const auto& [m, c] : num_) d = std::max(d, m[var - 1]);
  return d;
}

int RingElem::degree_in(int var) const {
  if (num_.empty()) return INT_MIN;
  int v = var - 1;
  int d = numerator_degree_in(var) - a_[v];
  for (int k = 0; k < n_; ++k)
    if (k != v) d -= b(std::min(k, v), std::max(k, v));
  return d;
}

int RingElem::total_pole_order_along_diagonals() const {
  int s = 0;
  for (int x : b_) s += x;
  return s;
}

RingElem RingElem::operator-() const {
  RingElem r = *this;
  for (auto& [m, c] : r.num_) c = -c;
  return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  if (n_ != o.n_ || !(f_ == o.f_)) throw std::logic_error("ring element mismatch");
  if (o.num_.empty()) return *this;
  if (num_.empty()) return *this = o;
  Poly p1 = num_, p2 = o.num_;
  for (int i = 0; i < n_; ++i) {
    int m = std::max(a_[i], o.a_[i]);
    p1 = shift(p1, i, m - a_[i]);
    p2 = shift(p2, i, m - o.a_[i]);
    a_[i] = m;
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      int m = std::max(b(i, j), o.b(i, j));
      p1 = mul_diff_pow(std::move(p1), i, j, m - b(i, j));
      p2 = mul_diff_pow(std::move(p2), i, j, m - o.b(i, j));
      b(i, j) = m;
    }
  add_into(p1, p2, Scalar::one(f_));
  num_ = std::move(p1);
  canonicalize();
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) { return *this += -o; }

RingElem& RingElem::operator*=(const RingElem& o) {
  if (n_ != o.n_ || !(f_ == o.f_)) throw std::logic_error("ring element mismatch");
  num_ = mul(num_, o.num_);
  for (int i = 0; i < n_; ++i) a_[i] += o.a_[i];
  for (std::size_t k = 0; k < b_.size(); ++k) b_[k] += o.b_[k];
  canonicalize();
  return *this;
}

RingElem& RingElem::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    num_.clear();
    canonicalize();
    return *this;
  }
  for (auto& [m, c] : num_) c *= s;
  return *this;
}

bool RingElem::operator==(const RingElem& o) const {
  return n_ == o.n_ && f_ == o.f_ && num_ == o.num_ && a_ == o.a_ && b_ == o.b_;
}

RingElem RingElem::pow(int e) const {
  RingElem r = constant(f_, n_, 1L), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

RingElem RingElem::relabel(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) throw InputError("permutation length mismatch");
  RingElem r(f_, n_);
  bool negate = false;
  for (const auto& [m, c] : num_) {
    Mono m2(n_, 0);
    for (int k = 0; k < n_; ++k) m2[perm[k] - 1] = m[k];
    r.num_.emplace(std::move(m2), c);
  }
  for (int k = 0; k < n_; ++k) r.a_[perm[k] - 1] = a_[k];
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      if (!b(i, j)) continue;
      int pi = perm[i] - 1, pj = perm[j] - 1;
      if (pi > pj) {
        std::swap(pi, pj);
        if (b(i, j) % 2) negate = !negate;
      }
      r.b(pi, pj) = b(i, j);
    }
  if (negate) r = -r;
  return r;
}

RingElem RingElem::with_nvars(int n) const {
  for (int v : variables())
    if (v > n) throw InputError("variable out of range");
  RingElem r(f_, n);
  for (const auto& [m, c] : num_) {
    Mono m2(n, 0);
    for (int k = 0; k < std::min(n, n_); ++k) m2[k] = m[k];
    r.num_.emplace(std::move(m2), c);
  }
  for (int k = 0; k < std::min(n, n_); ++k) r.a_[k] = a_[k];
  for (int i = 0; i < std::min(n, n_); ++i)
    for (int j = i + 1; j < std::min(n, n_); ++j) r.b(i, j) = b(i, j);
  return r;
}

RingElem RingElem::invert_variables(const std::vector<int>& vars) const {
  std::vector<bool> inv(n_, false);
  for (int v : vars) inv.at(v - 1) = true;
  RingElem r(f_, n_);
  for (const auto& [m, c] : num_) {
    std::vector<int> e(n_);
    for (int k = 0; k < n_; ++k) e[k] = inv[k] ? -m[k] : m[k];
    r += monomial(f_, n_, c, e);
  }
  std::vector<int> zden(n_);
  for (int k = 0; k < n_; ++k) zden[k] = inv[k] ? a_[k] : -a_[k];
  r *= monomial(f_, n_, Scalar::one(f_), zden);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      int e = b(i, j);
      if (!e) continue;
      if (inv[i] != inv[j]) throw InputError("inversion must include both ends of every diagonal factor");
      if (!inv[i]) {
        r *= diff_power(f_, n_, i + 1, j + 1, -e);
        continue;
      }
      // 1/(1/z_i - 1/z_j) = -z_i z_j / (z_i - z_j)
      std::vector<int> zz(n_, 0);
      zz[i] = zz[j] = 1;
      RingElem t = monomial(f_, n_, -Scalar::one(f_), zz) * diff_power(f_, n_, i + 1, j + 1, -1);
      r *= t.pow(e);
    }
  return r;
}

RingElem RingElem::at_zero(int var) const {
  int v = var - 1;
  if (a_[v]) throw std::logic_error("pole at zero");
  RingElem r(f_, n_);
  r.a_ = a_;
  r.b_ = b_;
  for (const auto& [m, c] : num_)
    if (m[v] == 0) r.num_.emplace(m, c);
  // (z_v - z_k) factors become +-z_k.
  for (int k = 0; k < n_; ++k) {
    if (k == v) continue;
    int lo = std::min(k, v), hi = std::max(k, v);
    int e = r.b(lo, hi);
    if (!e) continue;
    r.b(lo, hi) = 0;
    r.a_[k] += e;
    // z_lo - z_hi with v set to zero: k<v gives z_k, k>v gives -z_k.
    if (k > v && e % 2)
      for (auto& [m, c] : r.num_) c = -c;
  }
  r.canonicalize();
  return r;
}

std::string RingElem::to_string() const {
  if (num_.empty()) return "0";
  auto mono_str = [&](const Mono& m) {
    std::string s;
    for (int k = 0; k < n_; ++k) {
      if (!m[k]) continue;
      if (!s.empty()) s += "*";
      s += "z" + std::to_string(k + 1);
      if (m[k] > 1) s += "^" + std::to_string(m[k]);
    }
    return s;
  };
  std::string num;
  for (auto it = num_.rbegin(); it != num_.rend(); ++it) {
    std::string ms = mono_str(it->first);
    std::string cs = it->second.to_string();
    if (!num.empty()) num += " + ";
    if (ms.empty())
      num += cs;
    else if (it->second.is_one())
      num += ms;
    else
      num += cs + "*" + ms;
  }
  std::string den;
  for (int k = 0; k < n_; ++k)
    if (a_[k]) {
      if (!den.empty()) den += "*";
      den += "z" + std::to_string(k + 1);
      if (a_[k] > 1) den += "^" + std::to_string(a_[k]);
    }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (b(i, j)) {
        if (!den.empty()) den += "*";
        den += "(z" + std::to_string(i + 1) + "-z" + std::to_string(j + 1) + ")";
        if (b(i, j) > 1) den += "^" + std::to_string(b(i, j));
      }
  if (den.empty()) return num;
  return "(" + num + ")/(" + den + ")";
}

}  // namespace logres
