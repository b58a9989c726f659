#include <random>

#include "doctest.h"
#include "logres/diffring.hpp"

using namespace logres;

namespace {

const FieldSpec QQ(0);
const FieldSpec F5(5);

Scalar s(const FieldSpec& f, long v) { return Scalar(f, v); }
Scalar s(long a, long b) { return Scalar(QQ, mpq_class(a, b)); }

RingElem mono(const FieldSpec& f, int n, long c, std::vector<int> e) {
  return RingElem::monomial(f, n, s(f, c), e);
}
RingElem diffp(const FieldSpec& f, int n, int i, int j, int k) { return RingElem::diff_power(f, n, i, j, k); }

RingElem random_elem(std::mt19937_64& rng, const FieldSpec& f, int n, int maxexp = 3) {
  std::uniform_int_distribution<int> ex(0, maxexp), coef(-4, 4), terms(1, 3), pole(0, 2);
  Poly num;
  int t = terms(rng);
  for (int k = 0; k < t; ++k) {
    Mono m(n);
    for (auto& x : m) x = ex(rng);
    Scalar c(f, static_cast<long>(coef(rng)));
    if (c.is_zero()) continue;
    auto it = num.find(m);
    if (it == num.end())
      num.emplace(m, c);
    else
      it->second += c;
  }
  std::vector<int> a(n);
  for (auto& x : a) x = pole(rng);
  std::map<std::pair<int, int>, int> b;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) b[{i, j}] = pole(rng);
  for (auto it = num.begin(); it != num.end();)
    it = it->second.is_zero() ? num.erase(it) : std::next(it);
  return RingElem::from_parts(f, n, num, a, b);
}

// Independent evaluation of the stored representation at a rational point.
mpq_class eval(const RingElem& f, const std::vector<mpq_class>& z) {
  mpq_class num = 0;
  for (const auto& [m, c] : f.numerator()) {
    mpq_class t = c.rational();
    for (std::size_t k = 0; k < m.size(); ++k)
      for (int e = 0; e < m[k]; ++e) t *= z[k];
    num += t;
  }
  mpq_class den = 1;
  for (int k = 1; k <= f.nvars(); ++k)
    for (int e = 0; e < f.z_exp(k); ++e) den *= z[k - 1];
  for (const auto& [ij, e] : f.diff_exps())
    for (int t = 0; t < e; ++t) den *= z[ij.first - 1] - z[ij.second - 1];
  return num / den;
}

using UPoly = std::vector<mpq_class>;  // coefficients in u

UPoly umul(const UPoly& a, const UPoly& b) {
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Laurent coefficients of f along d at the point `z` (removed coordinate ignored),
// obtained by univariate long division. Diagonal(i,j) uses u = z_i - z_j.
std::map<int, mpq_class> oracle_laurent(const RingElem& f, const Direction& d, std::vector<mpq_class> z,
                                        int order) {
  int n = f.nvars();
  int r = d.removed();
  // z_k as a polynomial in u
  std::vector<UPoly> lin(n);
  for (int k = 0; k < n; ++k) lin[k] = {z[k]};
  if (d.kind == Direction::Kind::AtZero) {
    lin[r - 1] = {0, 1};
  } else if (r == d.i) {
    lin[r - 1] = {z[d.j - 1], 1};
  } else {
    lin[r - 1] = {z[d.i - 1], -1};
  }
  UPoly num = {0};
  for (const auto& [m, c] : f.numerator()) {
    UPoly t = {c.rational()};
    for (int k = 0; k < n; ++k)
      for (int e = 0; e < m[k]; ++e) t = umul(t, lin[k]);
    if (t.size() > num.size()) num.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) num[k] += t[k];
  }
  UPoly den = {1};
  for (int k = 1; k <= n; ++k)
    for (int e = 0; e < f.z_exp(k); ++e) den = umul(den, lin[k - 1]);
  for (const auto& [ij, e] : f.diff_exps()) {
    UPoly df = lin[ij.first - 1];
    const UPoly& g = lin[ij.second - 1];
    if (g.size() > df.size()) df.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) df[k] -= g[k];
    for (int t = 0; t < e; ++t) den = umul(den, df);
  }
  int P = 0;
  while (P < static_cast<int>(den.size()) && den[P] == 0) ++P;
  UPoly dd(den.begin() + P, den.end());
  int K = order + P;
  std::map<int, mpq_class> out;
  if (K < 0) return out;
  num.resize(std::max<std::size_t>(num.size(), K + 1));
  dd.resize(std::max<std::size_t>(dd.size(), K + 1));
  UPoly q(K + 1);
  for (int t = 0; t <= K; ++t) {
    mpq_class acc = num[t];
    for (int s2 = 0; s2 < t; ++s2) acc -= q[s2] * dd[t - s2];
    q[t] = acc / dd[0];
    if (q[t] != 0) out[t - P] = q[t];
  }
  return out;
}

}  // namespace

TEST_CASE("canonical form and equality") {
  int n = 2;
  RingElem f = mono(QQ, n, 1, {1, 0}) - mono(QQ, n, 1, {0, 1});  // z1 - z2
  RingElem g = f * diffp(QQ, n, 1, 2, -1);
  CHECK(g == RingElem::constant(QQ, n, 1L));
  CHECK(diffp(QQ, n, 2, 1, -1) == -diffp(QQ, n, 1, 2, -1));
  RingElem h = mono(QQ, n, 1, {2, 0}) * mono(QQ, n, 1, {-1, 0});
  CHECK(h == mono(QQ, n, 1, {1, 0}));
  CHECK(h.z_exp(1) == 0);
  // (z1^2 - z2^2)/(z1 - z2) = z1 + z2
  RingElem k = (mono(QQ, n, 1, {2, 0}) - mono(QQ, n, 1, {0, 2})) * diffp(QQ, n, 1, 2, -1);
  CHECK(k == mono(QQ, n, 1, {1, 0}) + mono(QQ, n, 1, {0, 1}));
  CHECK(k.diff_exp(1, 2) == 0);
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937_64 rng(3);
  for (const FieldSpec& f : {QQ, F5}) {
    for (int t = 0; t < 60; ++t) {
      int n = 1 + t % 4;
      RingElem a = random_elem(rng, f, n), b = random_elem(rng, f, n), c = random_elem(rng, f, n);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      CHECK(a * RingElem::constant(f, n, 1L) == a);
    }
  }
}

TEST_CASE("equality agrees with cross-multiplied evaluation") {
  std::mt19937_64 rng(5);
  std::vector<mpq_class> pt = {mpq_class(3, 7), mpq_class(-5, 2), mpq_class(11, 3), mpq_class(2, 13)};
  for (int t = 0; t < 40; ++t) {
    int n = 2 + t % 3;
    RingElem a = random_elem(rng, QQ, n), b = random_elem(rng, QQ, n);
    std::vector<mpq_class> z(pt.begin(), pt.begin() + n);
    CHECK(eval(a * b, z) == eval(a, z) * eval(b, z));
    CHECK(eval(a + b, z) == eval(a, z) + eval(b, z));
  }
}

TEST_CASE("expansion examples") {
  int n = 2;
  // 1/(z1 z2 (z1 - z2)) along z1 = z2; z1 survives.
  RingElem f = mono(QQ, n, 1, {-1, -1}) * diffp(QQ, n, 1, 2, -1);
  auto e = expand(f, Direction::diagonal(1, 2), 0);
  REQUIRE(e.size() == 2);
  CHECK(e[0].first == -1);
  CHECK(e[0].second == mono(QQ, n, 1, {-2, 0}));
  CHECK(e[1].first == 0);
  CHECK(e[1].second == mono(QQ, n, 1, {-3, 0}));
  CHECK(residue(f, Direction::diagonal(1, 2)) == mono(QQ, n, 1, {-2, 0}));

  auto e2 = expand(mono(QQ, n, 1, {1, 0}), Direction::at_zero(1), 2);
  REQUIRE(e2.size() == 1);
  CHECK(e2[0].first == 1);
  CHECK(e2[0].second == RingElem::constant(QQ, n, 1L));

  auto e3 = expand(diffp(QQ, n, 1, 2, -1), Direction::at_zero(1), 1);
  REQUIRE(e3.size() == 2);
  CHECK(e3[0] == std::pair<int, RingElem>(0, mono(QQ, n, -1, {0, -1})));
  CHECK(e3[1] == std::pair<int, RingElem>(1, mono(QQ, n, -1, {0, -2})));

  CHECK(residue(mono(QQ, n, 1, {2, 0}), Direction::at_zero(1)).is_zero());
  CHECK(residue(diffp(QQ, n, 1, 2, -1), Direction::diagonal(1, 2)) == RingElem::constant(QQ, n, 1L));
  CHECK(expand(mono(QQ, n, 1, {-1, 0}), Direction::at_zero(1), -2).empty());
}

TEST_CASE("expansion matches univariate long division") {
  std::mt19937_64 rng(17);
  std::vector<mpq_class> pt = {mpq_class(3, 7), mpq_class(-5, 2), mpq_class(11, 3), mpq_class(2, 13)};
  for (int t = 0; t < 80; ++t) {
    int n = 2 + t % 3;
    RingElem f = random_elem(rng, QQ, n);
    std::uniform_int_distribution<int> pick(1, n);
    Direction d;
    if (t % 2) {
      d = Direction::at_zero(pick(rng));
    } else {
      int i = pick(rng), j = pick(rng);
      while (j == i) j = pick(rng);
      d = Direction::diagonal(i, j);
    }
    int order = 2;
    std::vector<mpq_class> z(pt.begin(), pt.begin() + n);
    auto want = oracle_laurent(f, d, z, order);
    auto got = expand(f, d, order);
    std::map<int, mpq_class> gotv;
    for (auto& [ex, c] : got) {
      mpq_class v = eval(c, z);
      if (v != 0) gotv[ex] = v;
    }
    CHECK(gotv == want);
    for (auto& [ex, c] : got) CHECK(!c.depends_on(d.removed()));
  }
}

TEST_CASE("residue linearity and multiplicativity of expansion") {
  std::mt19937_64 rng(23);
  for (const FieldSpec& fs : {QQ, F5}) {
    for (int t = 0; t < 40; ++t) {
      int n = 3;
      RingElem f = random_elem(rng, fs, n), g = random_elem(rng, fs, n);
      Scalar al(fs, 3L), be(fs, -2L);
      for (Direction d : {Direction::at_zero(2), Direction::diagonal(1, 3), Direction::diagonal(3, 2)}) {
        CHECK(residue(f * al + g * be, d) == residue(f, d) * al + residue(g, d) * be);
        int ord = 1;
        auto ef = expand(f, d, ord + pole_order(g, d));
        auto eg = expand(g, d, ord + pole_order(f, d));
        std::map<int, RingElem> prod;
        for (auto& [a, ca] : ef)
          for (auto& [b, cb] : eg)
            if (a + b <= ord) {
              auto it = prod.try_emplace(a + b, RingElem(fs, n)).first;
              it->second += ca * cb;
            }
        std::map<int, RingElem> direct;
        for (auto& [a, c] : expand(f * g, d, ord)) direct.emplace(a, c);
        for (auto it = prod.begin(); it != prod.end();)
          it = it->second.is_zero() ? prod.erase(it) : std::next(it);
        CHECK(prod == direct);
      }
    }
  }
}

TEST_CASE("parshin examples") {
  int n = 2;
  RingElem f1 = mono(QQ, n, 1, {-1, -1}) * diffp(QQ, n, 1, 2, -1);
  auto r1 = parshin_check(f1, 1, 2);
  CHECK(r1.lhs.is_zero());
  CHECK(r1.rhs.is_zero());
  RingElem f2 = mono(QQ, n, 1, {0, -1}) * diffp(QQ, n, 1, 2, -1);
  auto r2 = parshin_check(f2, 1, 2);
  CHECK(r2.lhs == RingElem::constant(QQ, n, 1L));
  CHECK(r2.rhs == RingElem::constant(QQ, n, static_cast<long>(kParshinSign)));
  CHECK(r2.holds);
  auto r3 = parshin_check(mono(QQ, n, 1, {1, 1}), 1, 2);
  CHECK(r3.lhs.is_zero());
  CHECK(r3.rhs.is_zero());
}

TEST_CASE("parshin sign is universal") {
  for (const FieldSpec& fs : {QQ, F5}) {
    int n = 2;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b)
        for (int c = 0; c <= 4; ++c) {
          RingElem f = mono(fs, n, 1, {-a, -b}) * diffp(fs, n, 1, 2, -c);
          CHECK(parshin_check(f, 1, 2).holds);
          CHECK(parshin_check(f, 2, 1).holds);
        }
    std::mt19937_64 rng(29);
    for (int t = 0; t < 60; ++t) {
      RingElem f = random_elem(rng, fs, 3);
      CHECK(parshin_check(f, 1, 2).holds);
      CHECK(parshin_check(f, 3, 1).holds);
    }
  }
}

TEST_CASE("residue at infinity") {
  int n = 1;
  CHECK(residue_at_infinity(mono(QQ, n, 1, {-1})) == s(QQ, -1));
  CHECK(residue_at_infinity(RingElem::constant(QQ, n, 1L)).is_zero());
  CHECK(residue_at_infinity(mono(QQ, n, 1, {-2})).is_zero());
  std::mt19937_64 rng(31);
  for (const FieldSpec& fs : {QQ, F5}) {
    for (int t = 0; t < 40; ++t) {
      RingElem f = random_elem(rng, fs, 1);
      CHECK((residue(f, Direction::at_zero(1)) + RingElem::constant(fs, 1, residue_at_infinity(f))).is_zero());
      // Two variables: residues in z2 at 0, at z1 and at infinity sum to zero.
      RingElem g = random_elem(rng, fs, 2);
      RingElem sum = residue(g, Direction::at_zero(2)) + residue(g, Direction::diagonal(2, 1)) +
                     residue_at_infinity(g, 2);
      CHECK(sum.is_zero());
    }
  }
}

TEST_CASE("degree and inversion") {
  int n = 2;
  RingElem f = mono(QQ, n, 1, {0, 0}) * mono(QQ, n, 1, {-1, -1}) * diffp(QQ, n, 1, 2, -1);
  CHECK(f.degree_in(1) == -2);
  RingElem g = f.invert_variables({1, 2});
  // 1/(z1 z2 (z1-z2)) at 1/z: z1 z2 * (-z1 z2/(z1-z2)) = -z1^2 z2^2/(z1-z2)
  CHECK(g == mono(QQ, n, -1, {2, 2}) * diffp(QQ, n, 1, 2, -1));
  CHECK(g.invert_variables({1, 2}) == f);
}

TEST_CASE("relabelling is an action") {
  std::mt19937_64 rng(37);
  std::vector<int> s{2, 3, 1}, t{3, 1, 2}, st(3);
  for (int k = 0; k < 3; ++k) st[k] = s[t[k] - 1];
  for (int r = 0; r < 20; ++r) {
    RingElem f = random_elem(rng, QQ, 3);
    CHECK(f.relabel(t).relabel(s) == f.relabel(st));
    CHECK(f.relabel(s).relabel(t).relabel({1, 2, 3}) == f.relabel(s).relabel(t));
    TopForm w{f, {1, 2, 3}};
    std::vector<int> sinv(3);
    for (int k = 0; k < 3; ++k) sinv[s[k] - 1] = k + 1;
    TopForm back = act(sinv, act(s, w));
    CHECK(back.value == f);
    CHECK(back.vars == w.vars);
  }
}

TEST_CASE("transversal diagonals on top forms anticommute") {
  std::mt19937_64 rng(41);
  for (int r = 0; r < 30; ++r) {
    RingElem f = random_elem(rng, QQ, 4);
    TopForm w{f, {1, 2, 3, 4}};
    auto d1 = Direction::diagonal(1, 2), d2 = Direction::diagonal(3, 4);
    TopForm x = residue(residue(w, d1), d2), y = residue(residue(w, d2), d1);
    CHECK(x.vars == y.vars);
    CHECK(x.value == -y.value);
    // plain coefficient residues commute
    CHECK(residue(residue(f, d1), d2) == residue(residue(f, d2), d1));
  }
}

TEST_CASE("top form residue of dlog") {
  // du/u ^ dz_1 with u = z1 - z2 has residue dz_1.
  int n = 2;
  TopForm w{diffp(QQ, n, 1, 2, -1), {1, 2}};  // dlog(z1-z2)^dz1 = dz1^dz2/(z1-z2)
  TopForm r = residue(w, Direction::diagonal(1, 2));
  CHECK(r.vars == std::vector<int>{1});
  CHECK(r.value == RingElem::constant(QQ, n, 1L));
}
