#include <algorithm>
#include <random>

#include "doctest.h"
#include "logres/dividedpower.hpp"

using namespace logres;

namespace {

const FieldSpec QQ(0);

PDElem random_pd(std::mt19937_64& rng, const FieldSpec& f, int k, int maxdeg) {
  std::uniform_int_distribution<int> terms(1, 3), deg(1, maxdeg), coef(-3, 3), var(0, k - 1);
  PDElem a(f, k);
  int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    MultiIndex q(k, 0);
    int d = deg(rng);
    for (int j = 0; j < d; ++j) ++q[var(rng)];
    a.add(q, Scalar(f, static_cast<long>(coef(rng))));
  }
  return a;
}

PDElem lift_reduce(const PDElem& a, const FieldSpec& f) {
  PDElem r(f, a.nvars);
  for (auto& [q, c] : a.terms) {
    REQUIRE(c.rational().get_den() == 1);
    r.add(q, Scalar(f, c.rational().get_num()));
  }
  return r;
}

PDElem to_field(const PDElem& a, const FieldSpec& f) {
  PDElem r(f, a.nvars);
  for (auto& [q, c] : a.terms) r.add(q, Scalar(f, c.rational()));
  return r;
}

mpz_class fact(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Ordinary polynomial image of x^[q] -> x^q / q!.
std::map<MultiIndex, mpq_class> ordinary(const PDElem& a) {
  std::map<MultiIndex, mpq_class> r;
  for (auto& [q, c] : a.terms) {
    mpq_class v = c.rational();
    for (int x : q) v /= fact(x);
    r[q] += v;
  }
  return r;
}

std::map<MultiIndex, mpq_class> ord_mul(const std::map<MultiIndex, mpq_class>& a,
                                        const std::map<MultiIndex, mpq_class>& b) {
  std::map<MultiIndex, mpq_class> r;
  for (auto& [q, c] : a)
    for (auto& [s, d] : b) {
      MultiIndex t(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) t[i] = q[i] + s[i];
      r[t] += c * d;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

}  // namespace

TEST_CASE("pd_mul examples") {
  PDElem x = PDElem::monomial(QQ, {1}, Scalar::one(QQ));
  CHECK(pd_mul(x, x) == PDElem::monomial(QQ, {2}, Scalar(QQ, 2L)));
  FieldSpec f2(2);
  PDElem x2 = PDElem::monomial(f2, {1}, Scalar::one(f2));
  CHECK(pd_mul(x2, x2).is_zero());
  CHECK(pd_mul(PDElem::monomial(QQ, {2, 0}, Scalar::one(QQ)), PDElem::monomial(QQ, {0, 3}, Scalar::one(QQ))) ==
        PDElem::monomial(QQ, {2, 3}, Scalar::one(QQ)));
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
    FieldSpec f(p);
    CHECK(pd_mul(PDElem::monomial(f, {1}, Scalar::one(f)), PDElem::monomial(f, {static_cast<int>(p) - 1}, Scalar::one(f)))
              .is_zero());
  }
}

TEST_CASE("gamma examples") {
  PDElem xy = PDElem::monomial(QQ, {1, 0}, Scalar::one(QQ)) + PDElem::monomial(QQ, {0, 1}, Scalar::one(QQ));
  PDElem want = PDElem::monomial(QQ, {2, 0}, Scalar::one(QQ)) + PDElem::monomial(QQ, {1, 1}, Scalar::one(QQ)) +
                PDElem::monomial(QQ, {0, 2}, Scalar::one(QQ));
  CHECK(gamma(2, xy) == want);
  CHECK(gamma(2, PDElem::monomial(QQ, {2}, Scalar::one(QQ))) == PDElem::monomial(QQ, {4}, Scalar(QQ, 3L)));
  for (int k = 1; k <= 4; ++k) CHECK(gamma(k, PDElem(QQ, 2)).is_zero());
  CHECK_THROWS_AS(gamma(2, PDElem::one(QQ, 1)), InputError);
  // gamma_2(gamma_2(x)) = 3 gamma_4(x)
  PDElem x = PDElem::monomial(QQ, {1}, Scalar::one(QQ));
  CHECK(gamma(2, gamma(2, x)) == gamma(4, x) * Scalar(QQ, 3L));
}

TEST_CASE("gamma agrees with x^n/n! over Q and with reduction from Z") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 100; ++t) {
    int k = 1 + t % 3;
    PDElem a = random_pd(rng, QQ, k, 2);
    for (int n = 0; n <= 4; ++n) {
      PDElem g = gamma(n, a);
      CHECK(g == pd_pow(a, n) * Scalar(QQ, mpq_class(1, fact(n))));
      for (unsigned long p : {2UL, 3UL, 5UL}) {
        FieldSpec f(p);
        CHECK(gamma(n, lift_reduce(a, f)) == lift_reduce(g, f));
      }
    }
  }
}

TEST_CASE("the five divided-power axioms") {
  std::mt19937_64 rng(202);
  for (unsigned long p : {0UL, 2UL, 3UL, 5UL}) {
    FieldSpec f(p);
    for (int t = 0; t < 60; ++t) {
      int k = 1 + t % 3;
      PDElem x = random_pd(rng, f, k, 2), y = random_pd(rng, f, k, 2);
      PDElem lam = random_pd(rng, f, k, 1) + PDElem::one(f, k) * Scalar(f, static_cast<long>(t % 4));
      // 1
      CHECK(gamma(0, x) == PDElem::one(f, k));
      CHECK(gamma(1, x) == x);
      for (int i = 1; i <= 3; ++i) CHECK(gamma(i, x).constant_term().is_zero());
      // 2
      for (int n = 0; n <= 3; ++n) {
        PDElem s(f, k);
        for (int i = 0; i <= n; ++i) s += pd_mul(gamma(i, x), gamma(n - i, y));
        CHECK(gamma(n, x + y) == s);
      }
      // 3
      PDElem lx = pd_mul(lam, x);
      for (int n = 0; n <= 3; ++n) CHECK(gamma(n, lx) == pd_mul(pd_pow(lam, n), gamma(n, x)));
      // 4
      for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
          CHECK(pd_mul(gamma(i, x), gamma(j, x)) == gamma(i + j, x) * binomial(f, i + j, i));
      // 5
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; a * b <= 4; ++b)
          CHECK(gamma(a, gamma(b, x)) == gamma(a * b, x) * pd_composition_coeff(f, a, b));
    }
  }
}

TEST_CASE("ordinary polynomial model intertwines multiplication") {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 100; ++t) {
    int k = 1 + t % 3;
    PDElem a = random_pd(rng, QQ, k, 3), b = random_pd(rng, QQ, k, 3);
    CHECK(ordinary(pd_mul(a, b)) == ord_mul(ordinary(a), ordinary(b)));
  }
}

TEST_CASE("pairing examples") {
  CHECK(pd_pair(PDElem::monomial(QQ, {3}, Scalar::one(QQ)), PDElem::monomial(QQ, {3}, Scalar::one(QQ))) ==
        Scalar::one(QQ));
  PDElem a = PDElem::monomial(QQ, {2, 1}, Scalar::one(QQ));
  CHECK(pd_pair(a, PDElem::monomial(QQ, {2, 1}, Scalar::one(QQ))) == Scalar::one(QQ));
  CHECK(pd_pair(a, PDElem::monomial(QQ, {1, 2}, Scalar::one(QQ))).is_zero());
}

TEST_CASE("pairing matrix equals the tensor orbit pairing") {
  // x^[q] corresponds to the sum of the distinct words of content q in V^{(x)d};
  // (x*)^m is represented by one word of content m in (V*)^{(x)d}. The natural
  // pairing of tensors counts the words in the orbit equal to that representative.
  for (unsigned long p : {0UL, 2UL, 3UL}) {
    FieldSpec f(p);
    for (int k = 1; k <= 3; ++k)
      for (int d = 0; d <= 4; ++d) {
        auto basis = multi_indices_of_degree(k, d);
        for (auto& q : basis) {
          std::vector<int> word;
          for (int i = 0; i < k; ++i) word.insert(word.end(), q[i], i);
          std::vector<std::vector<int>> orbit;
          std::vector<int> w = word;
          do orbit.push_back(w);
          while (std::next_permutation(w.begin(), w.end()));
          for (auto& m : basis) {
            std::vector<int> rep;
            for (int i = 0; i < k; ++i) rep.insert(rep.end(), m[i], i);
            long count = std::count(orbit.begin(), orbit.end(), rep);
            Scalar got = pd_pair(PDElem::monomial(f, q, Scalar::one(f)), PDElem::monomial(f, m, Scalar::one(f)));
            CHECK(got == Scalar(f, count));
          }
        }
      }
  }
}

TEST_CASE("coproduct") {
  auto c = coproduct({2});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == std::pair<MultiIndex, MultiIndex>({0}, {2}));
  CHECK(c[1] == std::pair<MultiIndex, MultiIndex>({1}, {1}));
  CHECK(c[2] == std::pair<MultiIndex, MultiIndex>({2}, {0}));
  CHECK(coproduct({0}).size() == 1);
  CHECK(coproduct({1, 1}).size() == 4);
  CHECK(coproduct({2, 3, 1}).size() == 3 * 4 * 2);
}

TEST_CASE("crystalline composition") {
  CHECK(crys_compose(CrysOp::basis(QQ, {1}), CrysOp::basis(QQ, {2})) == CrysOp::basis(QQ, {3}));
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    FieldSpec f(p);
    CrysOp d = CrysOp::basis(f, {0});
    for (unsigned long i = 0; i < p; ++i) d = crys_compose(d, CrysOp::basis(f, {1}));
    CHECK(d == CrysOp::basis(f, {static_cast<int>(p)}));
  }
  for (unsigned long p : {0UL, 2UL, 3UL, 5UL}) {
    FieldSpec f(p);
    for (int k = 1; k <= 2; ++k)
      for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b)
          for (auto& q : multi_indices_of_degree(k, a))
            for (auto& r : multi_indices_of_degree(k, b)) {
              MultiIndex s(k);
              for (int i = 0; i < k; ++i) s[i] = q[i] + r[i];
              CHECK(crys_compose(CrysOp::basis(f, q), CrysOp::basis(f, r)) == CrysOp::basis(f, s));
            }
  }
  // identity
  CrysOp g(QQ, 2);
  g.terms = {{{1, 0}, Scalar(QQ, 2L)}, {{0, 3}, Scalar(QQ, -1L)}};
  CHECK(crys_compose(CrysOp::basis(QQ, {0, 0}), g) == g);
  CHECK(crys_compose(g, CrysOp::basis(QQ, {0, 0})) == g);
}

TEST_CASE("composition is associative and agrees with the coproduct pairing") {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> e(0, 2), c(-3, 3);
  for (unsigned long p : {0UL, 3UL}) {
    FieldSpec f(p);
    auto rnd = [&] {
      CrysOp d(f, 2);
      for (int t = 0; t < 3; ++t) {
        Scalar v(f, static_cast<long>(c(rng)));
        if (!v.is_zero()) d.terms[{e(rng), e(rng)}] = v;
      }
      return d;
    };
    for (int t = 0; t < 50; ++t) {
      CrysOp a = rnd(), b = rnd(), cc = rnd();
      CHECK(crys_compose(crys_compose(a, b), cc) == crys_compose(a, crys_compose(b, cc)));
      CrysOp ab = crys_compose(a, b);
      for (int d = 0; d <= 4; ++d)
        for (auto& r : multi_indices_of_degree(2, d)) {
          Scalar v = Scalar::zero(f);
          for (auto& [i, j] : coproduct(r)) v += crys_eval(b, i) * crys_eval(a, j);
          CHECK(crys_eval(ab, r) == v);
        }
    }
  }
}
