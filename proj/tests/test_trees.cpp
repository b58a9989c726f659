#include <algorithm>
#include <functional>

#include "doctest.h"
#include "logres/trees.hpp"

using namespace logres;

namespace {

// Independent count: laminar families of subsets of size >= 2 of [n].
std::set<std::set<LabelSet>> laminar_families(int n) {
  std::vector<LabelSet> subsets;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    LabelSet s;
    for (int k = 0; k < n; ++k)
      if (mask >> k & 1) s.insert(k + 1);
    subsets.push_back(s);
  }
  auto compatible = [](const LabelSet& a, const LabelSet& b) {
    bool inter = false, a_in_b = true, b_in_a = true;
    for (int x : a) {
      if (b.count(x))
        inter = true;
      else
        a_in_b = false;
    }
    for (int x : b)
      if (!a.count(x)) b_in_a = false;
    return !inter || a_in_b || b_in_a;
  };
  std::set<std::set<LabelSet>> out;
  std::vector<LabelSet> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == subsets.size()) {
      out.insert(std::set<LabelSet>(cur.begin(), cur.end()));
      return;
    }
    rec(k + 1);
    for (auto& s : cur)
      if (!compatible(s, subsets[k])) return;
    cur.push_back(subsets[k]);
    rec(k + 1);
    cur.pop_back();
  };
  rec(0);
  return out;
}

bool subset_of(const std::set<LabelSet>& a, const std::set<LabelSet>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("enumeration examples") {
  auto t2 = enumerate_trees(2);
  REQUIRE(t2.size() == 2);
  std::set<std::string> js;
  for (auto& t : t2) js.insert(t.to_json());
  CHECK(js == std::set<std::string>{"[[1],[2]]", "[[1,2]]"});
  CHECK(enumerate_trees(1).size() == 1);
  CHECK(enumerate_trees(3).size() == 8);
  CHECK_THROWS(enumerate_trees(0));
  CHECK_THROWS(enumerate_trees(8));
}

TEST_CASE("enumeration matches laminar families") {
  for (int n = 1; n <= 5; ++n) {
    auto trees = enumerate_trees(n);
    auto fam = laminar_families(n);
    CHECK(trees.size() == fam.size());
    std::set<std::set<LabelSet>> got;
    for (auto& t : trees) got.insert(t.divisor_set());
    CHECK(got == fam);
  }
}

TEST_CASE("codim and divisors") {
  auto s3 = NTree::parse("[[1,2,3]]");
  CHECK(codim(s3) == 1);
  CHECK(codim(NTree::bare_lines({1, 2, 3})) == 0);
  auto n = NTree::parse("[[1,[2,3]]]");
  CHECK(codim(n) == 2);
  CHECK(n.divisor_set() == std::set<LabelSet>{{1, 2, 3}, {2, 3}});
  CHECK(NTree::parse("[[1,2]]").divisor_set() == std::set<LabelSet>{{1, 2}});
  CHECK(NTree::bare_lines({1, 2}).divisor_set().empty());
  for (int k = 1; k <= 4; ++k)
    for (auto& t : enumerate_trees(k)) CHECK(codim(t) == static_cast<int>(t.divisor_set().size()));
}

TEST_CASE("parse and print") {
  auto t = NTree::parse("[[[3,2],1],[4]]");
  CHECK(t.to_json() == "[[1,[2,3]],[4]]");
  CHECK(NTree::parse("[4, [1,2]]").to_json() == "[[1,2],[4]]");
  CHECK_THROWS(NTree::parse("[[1,1]]"));
  CHECK_THROWS(NTree::parse("[[1,[2]]]"));
  CHECK(t.to_dot().find("digraph") == 0);
}

TEST_CASE("order examples") {
  auto a = NTree::parse("[[1,[2,3]]]");
  auto s = NTree::parse("[[1,2,3]]");
  CHECK(leq(a, s));
  CHECK(leq(a, a));
  CHECK(!leq(NTree::parse("[[1,2],[3]]"), NTree::parse("[[1],[2,3]]")));
  CHECK(!leq(s, a));
}

TEST_CASE("poset axioms and divisor-set oracle") {
  for (int n = 1; n <= 4; ++n) {
    auto ts = enumerate_trees(n);
    std::vector<std::vector<bool>> le(ts.size(), std::vector<bool>(ts.size()));
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j) {
        le[i][j] = leq(ts[i], ts[j]);
        CHECK(le[i][j] == subset_of(ts[j].divisor_set(), ts[i].divisor_set()));
      }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(le[i][i]);
      for (std::size_t j = 0; j < ts.size(); ++j) {
        if (i != j) CHECK(!(le[i][j] && le[j][i]));
        for (std::size_t k = 0; k < ts.size(); ++k)
          if (le[i][j] && le[j][k]) CHECK(le[i][k]);
      }
    }
  }
}

TEST_CASE("composition") {
  auto t = compose(NTree::parse("[[1,2]]"), 2, NTree::parse("[[2,3]]"));
  CHECK(t == NTree::parse("[[1,[2,3]]]"));
  auto u = compose(NTree::parse("[[2,3]]"), 2, NTree::parse("[[1,2]]"));
  CHECK(u == NTree::parse("[[[1,2],3]]"));
  CHECK(!(t == u));
  auto x = NTree::parse("[[1,[2,3]],[4]]");
  CHECK(compose(x, 4, NTree::parse("[[4]]")) == x);
  CHECK(compose(x, 3, NTree::parse("[[3]]")) == x);
  CHECK_THROWS(compose(x, 7, NTree::parse("[[7,8]]")));
  for (auto& a : enumerate_trees(3))
    for (auto& b : enumerate_trees(2)) {
      if (!b.is_connected()) continue;
      auto b2 = b.relabel({3, 4});
      CHECK(codim(compose(a, 3, b2)) == codim(a) + codim(b2));
    }
}

TEST_CASE("relabelling equivariance") {
  for (int n = 2; n <= 4; ++n) {
    auto ts = enumerate_trees(n);
    std::set<std::string> all;
    for (auto& t : ts) all.insert(t.to_json());
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[k] = k + 1;
    do {
      for (auto& t : ts) {
        NTree r = t.relabel(perm);
        CHECK(all.count(r.to_json()));
        std::set<LabelSet> img;
        for (auto& e : t.divisor_set()) {
          LabelSet s;
          for (int x : e) s.insert(perm[x - 1]);
          img.insert(s);
        }
        CHECK(img == r.divisor_set());
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("caterpillar count") {
  long f = 1;
  for (int d = 1; d <= 6; ++d) {
    if (d > 1) f *= d - 1;
    int c = 0;
    for (auto& t : enumerate_trees(d)) c += is_caterpillar_ending_in(t, d);
    CHECK(c == f);
  }
  CHECK(is_caterpillar_ending_in(NTree::caterpillar({2, 1, 3}), 3));
}
