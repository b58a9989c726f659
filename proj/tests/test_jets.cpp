#include <random>

#include "doctest.h"
#include "logres/jets.hpp"

using namespace logres;

namespace {

const FieldSpec QQ(0);
const FieldSpec F5(5);

enum { E = 0, H = 1, F = 2 };

GKElem mono(const FieldSpec& f, int a, int l) { return GKElem::mono(Scalar::one(f), a, l); }

RingElem zpow1(const FieldSpec& f, int e) { return RingElem::monomial(f, 1, Scalar::one(f), {e}); }

// phi_upper(h*) in basis (e,h,f): [e,f] = h gives e*(x)f* - f*(x)e*.
JetTuple spec_example(const FieldSpec& f) {
  JetTuple w = JetTuple::zero(f, JetModel::Disk, 2);
  w.forms[0].add({H}, RingElem::constant(f, 1, 1L));
  RingElem d = RingElem::diff_power(f, 2, 1, 2, -1);
  w.forms[1].add({E, F}, d);
  w.forms[1].add({F, E}, -d);
  return w;
}

GKElem random_elem(const LieAlgebra& g, std::mt19937_64& rng, int lo, int hi) {
  GKElem x;
  int terms = 1 + static_cast<int>(rng() % 2);
  for (int t = 0; t < terms; ++t) {
    int a = static_cast<int>(rng() % g.dim());
    int l = lo + static_cast<int>(rng() % (hi - lo + 1));
    x.terms[{a, l}] = Scalar(g.field(), static_cast<long>(rng() % 5) + 1);
  }
  return x;
}

std::string expected_failure(InvalidKind k) {
  switch (k) {
    case InvalidKind::NonSymmetric: return "anti-invariance";
    case InvalidKind::Loop: return "no-loop";
    case InvalidKind::ConstraintBroken: return "constraint";
    case InvalidKind::LogViolation: return "log-pole";
  }
  return "";
}

}  // namespace

TEST_CASE("tensor form action and anti-invariance") {
  auto w = spec_example(QQ);
  CHECK(act({2, 1}, w.omega(2)) == w.omega(2) * Scalar(QQ, -1L));
  TensorForm t{2, {}};
  t.add({E, F}, RingElem::var(QQ, 2, 1));
  TensorForm moved = act({2, 1}, t);
  REQUIRE(moved.find({F, E}) != nullptr);
  CHECK(*moved.find({F, E}) == -RingElem::var(QQ, 2, 2));
  CHECK(parse_jet_model("genus0") == JetModel::Genus0);
  CHECK_THROWS_AS(parse_jet_model("torus"), InputError);
}

TEST_CASE("membership: spec examples") {
  auto g = LieAlgebra::sl2(QQ);
  auto w = spec_example(QQ);
  CHECK(check_membership(w, g).ok);

  // adding e*(x)e*/(z1-z2) breaks anti-invariance, not the constraint
  auto bad = w;
  bad.forms[1].add({E, E}, RingElem::diff_power(QQ, 2, 1, 2, -1));
  auto r = check_membership(bad, g);
  CHECK_FALSE(r.ok);
  CHECK(r.failure == "anti-invariance");

  // antisymmetric perturbation outside the cobracket image reaches the constraint
  auto bad2 = w;
  bad2.forms[1].add({E, H}, RingElem::diff_power(QQ, 2, 1, 2, -1));
  bad2.forms[1].add({H, E}, -RingElem::diff_power(QQ, 2, 1, 2, -1));
  r = check_membership(bad2, g);
  CHECK_FALSE(r.ok);
  CHECK(r.failure == "constraint");
  CHECK(r.order == 2);

  // regular anti-invariant layers with zero residues
  std::mt19937_64 rng(3);
  auto reg = regular_top(g, 3, rng, 2);
  CHECK(check_membership(reg, g).ok);

  // omega_1 is unconstrained
  JetTuple one = JetTuple::zero(QQ, JetModel::Disk, 1);
  one.forms[0].add({F}, RingElem::var(QQ, 1, 1));
  CHECK(check_membership(one, g).ok);
}

TEST_CASE("membership: malformed input and model checks") {
  auto g = LieAlgebra::sl2(QQ);
  auto w = spec_example(QQ);
  auto bad = w;
  bad.forms[1].add({E, 7}, RingElem::diff_power(QQ, 2, 1, 2, -1));
  CHECK(check_membership(bad, g).failure == "arity");
  bad = w;
  bad.forms[0].add({E}, RingElem::var(QQ, 2, 1));
  CHECK(check_membership(bad, g).failure == "arity");

  JetTuple disk = JetTuple::zero(QQ, JetModel::Disk, 1);
  disk.forms[0].add({E}, zpow1(QQ, -1));
  CHECK(check_membership(disk, g).failure == "model");
  disk.model = JetModel::Punctured;
  CHECK(check_membership(disk, g).ok);

  JetTuple glob = JetTuple::zero(QQ, JetModel::Genus0, 1);
  glob.forms[0].add({E}, RingElem::constant(QQ, 1, 1L));
  CHECK(check_membership(glob, g).failure == "model");
  glob.forms[0] = TensorForm{1, {}};
  glob.forms[0].add({E}, zpow1(QQ, -2));
  CHECK(check_membership(glob, g).ok);
}

TEST_CASE("loop_free as forest-span membership") {
  // 1/(z12 z23) and 1/(z12 z13) are forests
  auto d12 = RingElem::diff_power(QQ, 3, 1, 2, -1), d13 = RingElem::diff_power(QQ, 3, 1, 3, -1),
       d23 = RingElem::diff_power(QQ, 3, 2, 3, -1);
  CHECK(loop_free(d12 * d23));
  CHECK(loop_free(d12 * d13 + d12 * d23));
  CHECK_FALSE(loop_free(d12 * d13 * d23));
  CHECK_FALSE(loop_free(d12 * d12));
  // z12 * (1/(z12 z13 z23)) = 1/(z13 z23)
  CHECK(loop_free(d12 * d13 * d23 * RingElem::diff_power(QQ, 3, 1, 2, 1)));
  // partial-fraction identity: 1/(z12 z23) + 1/(z23 z31) + 1/(z31 z12) = 0 regardless of the cycle
  CHECK(loop_free(d12 * d23 - d23 * d13 - d13 * d12));
  CHECK(loop_free(RingElem::constant(QQ, 3, 1L)));
}

TEST_CASE("generated valid tuples pass membership") {
  for (const FieldSpec& f : {QQ, F5})
    for (std::string name : {"sl2", "sl3"}) {
      auto g = LieAlgebra::builtin(name, f);
      std::mt19937_64 rng(11);
      for (int n = 1; n <= 3; ++n)
        for (int s = 0; s < (name == "sl3" && n == 3 ? 2 : 5); ++s) {
          GeneratorOptions opt;
          opt.n = n;
          opt.punctured = s % 2 == 1;
          auto w = random_valid_tuple(g, rng, opt);
          auto r = check_membership(w, g);
          INFO(name, " n=", n, " ", r.failure, " ", r.detail);
          CHECK(r.ok);
        }
    }
}

TEST_CASE("pairing: spec examples") {
  auto g = LieAlgebra::sl2(QQ);
  JetTuple w = JetTuple::zero(QQ, JetModel::Punctured, 1);
  w.forms[0].add({E}, zpow1(QQ, -1));
  CHECK(pair_phi_k(g, {mono(QQ, E, 0)}, w) == Scalar::one(QQ));
  CHECK(pair_phi_k(g, {mono(QQ, E, 1)}, w).is_zero());
  CHECK(pair_phi_k(g, {mono(QQ, F, 0)}, w).is_zero());
  w.omega0 = Scalar(QQ, 7L);
  CHECK(pair_phi_k(g, {}, w) == Scalar(QQ, 7L));
  CHECK_THROWS_AS(pair_phi_k(g, {mono(QQ, E, 0), mono(QQ, E, 0)}, w), InputError);
}

TEST_CASE("descent: exact zeros on valid tuples") {
  auto g = LieAlgebra::sl2(QQ);
  auto w = spec_example(QQ);
  for (int a = -3; a <= 1; ++a)
    for (int b = -3; b <= 1; ++b) CHECK(check_relation_descent(g, mono(QQ, E, a), mono(QQ, F, b), {}, {}, w));

  auto ab = LieAlgebra::abelian(QQ, 2);
  std::mt19937_64 rng(5);
  auto wa = regular_top(ab, 2, rng, 2);
  for (int a = -4; a <= 0; ++a)
    for (int b = -4; b <= 0; ++b) CHECK(check_relation_descent(ab, mono(QQ, 0, a), mono(QQ, 1, b), {}, {}, wa));

  for (const FieldSpec& f : {QQ, F5}) {
    auto g3 = LieAlgebra::sl3(f);
    std::mt19937_64 r2(21);
    GeneratorOptions opt;
    opt.n = 3;
    opt.punctured = true;
    auto w3 = random_valid_tuple(g3, r2, opt);
    REQUIRE(check_membership(w3, g3).ok);
    for (int t = 0; t < 40; ++t) {
      auto x = random_elem(g3, r2, -3, 1), y = random_elem(g3, r2, -3, 1), z = random_elem(g3, r2, -3, 1);
      CHECK(check_relation_descent(g3, x, y, {}, {}, w3));
      CHECK(check_relation_descent(g3, x, y, {z}, {}, w3));
      CHECK(check_relation_descent(g3, x, y, {}, {z}, w3));
    }
  }
}

TEST_CASE("invalid tuples: rejected at the named check with a descent witness") {
  for (const FieldSpec& f : {QQ, F5}) {
    auto g = LieAlgebra::sl2(f);
    for (auto k : {InvalidKind::NonSymmetric, InvalidKind::Loop, InvalidKind::ConstraintBroken, InvalidKind::LogViolation}) {
      std::mt19937_64 rng(17);
      int n = k == InvalidKind::Loop ? 3 : 2;
      auto w = invalid_tuple(g, k, rng, n);
      auto r = check_membership(w, g);
      INFO(to_string(k), " -> ", r.failure, " ", r.detail);
      CHECK_FALSE(r.ok);
      CHECK(r.failure == expected_failure(k));
      auto wit = find_descent_witness(g, w, 3);
      REQUIRE(wit.has_value());
      CHECK_FALSE(wit->defect.is_zero());
      CHECK(relation_defect(g, wit->x, wit->y, wit->prefix, wit->suffix, w) == wit->defect);
    }
  }
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(invalid_tuple(LieAlgebra::sl2(QQ), InvalidKind::Loop, rng, 2), InputError);
}

TEST_CASE("descent needs the constraint") {
  // switching off the constraint: the Parshin identity alone does not give descent
  auto g = LieAlgebra::sl2(QQ);
  auto w = spec_example(QQ);
  w.forms[0] = TensorForm{1, {}};
  CHECK_FALSE(check_membership(w, g).ok);
  CHECK_FALSE(check_relation_descent(g, mono(QQ, E, -1), mono(QQ, F, 0), {}, {}, w));
  CHECK(find_descent_witness(g, w, 2).has_value());
}

TEST_CASE("vacuum vanishing, trivial and sl2 twist") {
  auto g = LieAlgebra::sl2(QQ);
  auto triv = TwistData::trivial(g);
  auto tw = TwistData::checked(g, {2, 0, -2});
  CHECK_THROWS_AS(TwistData::checked(g, {1, 0, 0}), InputError);
  CHECK(tw.in_twisted_gO(mono(QQ, F, -2)));
  CHECK_FALSE(tw.in_twisted_gO(mono(QQ, F, -3)));
  CHECK_FALSE(tw.in_twisted_gO(mono(QQ, E, 1)));

  std::mt19937_64 rng(29);
  for (int s = 0; s < 20; ++s) {
    GeneratorOptions opt;
    opt.n = 2;
    auto w = random_valid_tuple(g, rng, opt);
    auto wt = twist_tuple(tw, w);
    REQUIRE(check_membership(wt, g).ok);
    CHECK(check_vacuum_vanishing(g, mono(QQ, E, 2), {}, w, triv));
    CHECK(check_vacuum_vanishing(g, mono(QQ, F, 2), {}, wt, tw));
    for (int t = 0; t < 5; ++t) {
      GKElem xi;
      for (int a = 0; a < 3; ++a) xi.terms[{a, tw.weights[a] + static_cast<int>(rng() % 3)}] = Scalar(QQ, 1L + t);
      auto rest = random_elem(g, rng, -4, 2);
      CHECK(check_vacuum_vanishing(g, xi, {rest}, wt, tw));
    }
  }
  // f t^-3 is outside the twisted positive part: a disk one-form detects it
  JetTuple w = JetTuple::zero(QQ, JetModel::Disk, 1);
  w.forms[0].add({F}, RingElem::constant(QQ, 1, 1L));
  auto wt = twist_tuple(tw, w);
  CHECK_THROWS_AS(check_vacuum_vanishing(g, mono(QQ, F, -3), {}, wt, tw), InputError);
  CHECK(vacuum_pairing(g, mono(QQ, F, -3), {}, wt) == Scalar::one(QQ));
}

TEST_CASE("vacuum element must sit innermost") {
  // omega_2 = c (e*(x)f* - f*(x)e*)/(z1 - z2): g_O in the first position does not pair to zero
  auto g = LieAlgebra::sl2(QQ);
  auto w = spec_example(QQ);
  auto triv = TwistData::trivial(g);
  GKElem pos = mono(QQ, E, 0), neg = mono(QQ, F, -1);
  CHECK(check_vacuum_vanishing(g, pos, {neg}, w, triv));
  CHECK_FALSE(pair_phi_k(g, {pos, neg}, w).is_zero());
}

TEST_CASE("genus-zero out vanishing on seeded inputs") {
  auto g = LieAlgebra::sl2(QQ);
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int s = 0; s < 100; ++s) {
    GeneratorOptions opt;
    opt.n = 1 + s % 3;
    auto w = genus0_from_disk(random_valid_tuple(g, rng, opt));
    REQUIRE(check_membership(w, g).ok);
    int k = 1 + static_cast<int>(rng() % opt.n);
    GKWord rest;
    for (int m = 1; m < k; ++m) rest.push_back(random_elem(g, rng, -3, 3));
    auto xi = random_elem(g, rng, -3, 0);
    CHECK(check_out_vanishing(g, xi, rest, w));
    ++checked;
  }
  CHECK(checked == 100);
  // a trailing out element is not enough in general
  auto w = genus0_from_disk(spec_example(QQ));
  CHECK_FALSE(pair_phi_k(g, {mono(QQ, E, 2), mono(QQ, F, -1)}, w).is_zero());
  CHECK(out_pairing(g, mono(QQ, F, -1), {mono(QQ, E, 2)}, w).is_zero());
  CHECK_THROWS_AS(check_out_vanishing(g, mono(QQ, E, 1), {}, w), InputError);
}

TEST_CASE("truncated perfectness n=1 L=2") {
  for (const FieldSpec& f : {QQ, F5}) {
    auto g = LieAlgebra::sl2(f);
    auto r = truncated_perfectness(g, TwistData::trivial(g), 2, 3);
    CHECK(r.rows == 6);
    CHECK(r.rank == r.expected);
    auto tw = TwistData::checked(g, {2, 0, -2});
    auto r2 = truncated_perfectness(g, tw, 2, 5);
    CHECK(r2.rows == 4 + 2 + 0);
    CHECK(r2.rank == r2.expected);
  }
}

TEST_CASE("reconstruction") {
  auto g = LieAlgebra::sl2(QQ);
  // n = 1: lambda(e^(l)) = delta_{l,0}
  LambdaTable t1;
  for (int a = 0; a < 3; ++a)
    for (int l = -1; l <= 1; ++l) t1[{{a, l}}] = Scalar(QQ, a == E && l == 0 ? 1L : 0L);
  auto r1 = reconstruct_psi_k(g, t1, 1, 1);
  REQUIRE(r1.ok);
  CHECK(pair_phi_k(g, {mono(QQ, E, 0)}, r1.tuple) == Scalar::one(QQ));
  REQUIRE(r1.tuple.omega(1).find({E}) != nullptr);
  CHECK(*r1.tuple.omega(1).find({E}) == zpow1(QQ, -1));
  CHECK(r1.tuple.omega(1).coeffs.size() == 1);

  LambdaTable zero;
  zero[{}] = Scalar::zero(QQ);
  auto r0 = reconstruct_psi_k(g, zero, 2, 1);
  REQUIRE(r0.ok);
  CHECK(r0.tuple.omega0.is_zero());
  CHECK(r0.tuple.omega(2).coeffs.empty());

  // n = 2 round trip from a valid punctured tuple
  std::mt19937_64 rng(41);
  GeneratorOptions opt;
  opt.n = 2;
  opt.max_power = 1;
  opt.actions = 1;
  auto w = random_valid_tuple(g, rng, opt);
  auto table = lambda_table(g, w, 1);
  auto r2 = reconstruct_psi_k(g, table, 2, 1);
  INFO(r2.message);
  REQUIRE(r2.ok);
  CHECK(check_membership(r2.tuple, g).ok);
  CHECK(lambda_table(g, r2.tuple, 1) == table);
  CHECK(r2.pole_bound == 2);

  // inconsistent with [e,f] = h
  auto broken = table;
  broken[{{E, 0}, {F, 0}}] += Scalar::one(QQ);
  auto rb = reconstruct_psi_k(g, broken, 2, 1);
  CHECK_FALSE(rb.ok);
  REQUIRE(rb.witness.has_value());
  CHECK(rb.witness->size() == 2);
}
