#include "logres/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "logres/gsheaf.hpp"
#include "logres/io.hpp"
#include "logres/lieoperad.hpp"
#include "logres/trees.hpp"

namespace logres {

namespace {

constexpr std::size_t kMaxFailures = 5;

struct Event {
  std::string id;
  bool ok = true;
  json detail;  // recorded only for failures
};
using Events = std::vector<Event>;

class Collector {
 public:
  void record(const std::string& id, bool ok, const std::function<json()>& detail = {}) {
    Check& c = get(id);
    ++c.count;
    if (!ok) {
      c.pass = false;
      if (c.failures.size() < kMaxFailures) c.failures.push_back(detail ? detail() : json(nullptr));
    }
  }
  void merge(const Events& ev) {
    for (auto& e : ev) record(e.id, e.ok, [&] { return e.detail; });
  }
  void info(const std::string& id, json v) { get(id).info = std::move(v); }
  void absorb(const std::string& prefix, const std::vector<Check>& cs) {
    for (auto& c : cs) {
      Check d = c;
      d.id = prefix + c.id;
      m_[d.id] = d;
    }
  }
  std::vector<Check> take() {
    std::vector<Check> out;
    for (auto& [k, c] : m_) out.push_back(c);
    return out;
  }

 private:
  Check& get(const std::string& id) {
    auto it = m_.find(id);
    if (it == m_.end()) it = m_.emplace(id, Check{id, true, 0, json::array(), json()}).first;
    return it->second;
  }
  std::map<std::string, Check> m_;
};

void push(Events& ev, std::string id, bool ok, const std::function<json()>& detail = {}) {
  ev.push_back({std::move(id), ok, ok || !detail ? json() : detail()});
}

// Results are stored by index, so the merge order never depends on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t count, int jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::size_t workers = std::max(1, jobs);
  workers = std::min(workers, std::max<std::size_t>(count, 1));
  std::vector<std::exception_ptr> errs(count);
  auto run = [&](std::size_t i) {
    try {
      out[i] = fn(i);
    } catch (const std::exception& e) {
      if constexpr (std::is_same_v<T, Events>)
        out[i] = Events{{"exception", false, json{{"item", i}, {"what", e.what()}}}};
      else
        errs[i] = std::current_exception();
    }
  };
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) run(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<FieldSpec> fields(const RunConfig& cfg, std::initializer_list<std::uint64_t> defaults) {
  if (cfg.characteristic) return {FieldSpec(*cfg.characteristic)};
  std::vector<FieldSpec> out;
  for (auto p : defaults) out.emplace_back(p);
  return out;
}

std::vector<std::string> algebras(const RunConfig& cfg, std::initializer_list<const char*> defaults) {
  if (cfg.g) return {*cfg.g};
  return {defaults.begin(), defaults.end()};
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

json ring_json(const RingElem& f) { return f.to_string(); }

std::vector<int> iota1(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

json word_json(const LieAlgebra& g, const GKWord& w) {
  json a = json::array();
  for (auto& x : w) a.push_back(x.to_string(g));
  return a;
}

json witness_json(const LieAlgebra& g, const DescentWitness& w) {
  return {{"x", w.x.to_string(g)},
          {"y", w.y.to_string(g)},
          {"prefix", word_json(g, w.prefix)},
          {"suffix", word_json(g, w.suffix)},
          {"defect", w.defect.to_string()}};
}

// ---- parshin ----------------------------------------------------------------

struct ParshinCase {
  bool holds = true, plus = true, minus = true;
  json detail;
};

ParshinCase parshin_case(const RingElem& f, int i, int j) {
  auto r = parshin_check(f, i, j);
  ParshinCase c;
  c.holds = r.holds;
  c.plus = r.lhs == r.rhs;
  c.minus = r.lhs == -r.rhs;
  if (!c.holds) c.detail = {{"f", f.to_string()}, {"i", i}, {"j", j}, {"lhs", ring_json(r.lhs)}, {"rhs", ring_json(r.rhs)}};
  return c;
}

SuiteReport suite_parshin(const RunConfig& cfg) {
  int B = cfg.bound.value_or(4), trials = cfg.trials.value_or(200);
  if (B < 0 || B > 12) throw InputError("parshin: --bound must be in [0, 12]");
  Collector col;
  bool plus = true, minus = true;
  auto fold = [&](const std::string& id, const ParshinCase& c) {
    plus = plus && c.plus;
    minus = minus && c.minus;
    col.record(id, c.holds, [&] { return c.detail; });
  };
  for (const FieldSpec& f : fields(cfg, {0, 5})) {
    std::string F = f.name();
    for (int a = 0; a <= B; ++a)
      for (int b = 0; b <= B; ++b)
        for (int c = 0; c <= B; ++c) {
          RingElem m = RingElem::monomial(f, 2, Scalar::one(f), {-a, -b}) * RingElem::diff_power(f, 2, 1, 2, -c);
          fold("parshin." + F + ".monomials", parshin_case(m, 1, 2));
          fold("parshin." + F + ".monomials", parshin_case(m, 2, 1));
        }
    auto res = parallel_map<std::vector<ParshinCase>>(trials, cfg.jobs, [&](std::size_t k) {
      auto rng = item_rng(cfg.seed, "parshin." + F, k);
      RingElem e = random_ring_elem(f, 3, rng);
      return std::vector<ParshinCase>{parshin_case(e, 1, 2), parshin_case(e, 2, 3), parshin_case(e, 3, 1)};
    });
    for (auto& v : res)
      for (auto& c : v) fold("parshin." + F + ".random", c);
  }
  int eps = kParshinSign == 1 ? (plus ? 1 : (minus ? -1 : 0)) : (minus ? -1 : (plus ? 1 : 0));
  col.record("parshin.epsilon-universal", eps == kParshinSign,
             [&] { return json{{"plus_consistent", plus}, {"minus_consistent", minus}}; });
  col.info("parshin.epsilon-universal", {{"epsilon", eps}});
  SuiteReport r;
  r.checks = col.take();
  r.result = {{"epsilon", eps}};
  return r;
}

// ---- divided powers -----------------------------------------------------------

SuiteReport suite_pd(const RunConfig& cfg) {
  int trials = cfg.trials.value_or(500);
  Collector col;
  for (const FieldSpec& f : fields(cfg, {0, 2, 3, 5})) {
    std::string F = "pd." + f.name() + ".";
    auto res = parallel_map<Events>(trials, cfg.jobs, [&](std::size_t t) {
      auto rng = item_rng(cfg.seed, F, t);
      int k = 1 + static_cast<int>(t % 3);
      PDElem x = random_pd_elem(f, k, rng), y = random_pd_elem(f, k, rng);
      PDElem lam = random_pd_elem(f, k, rng, 1) + PDElem::one(f, k) * Scalar(f, static_cast<long>(t % 4));
      Events ev;
      auto show = [&](std::initializer_list<std::pair<const char*, PDElem>> xs) {
        json j;
        for (auto& [name, v] : xs) j[name] = v.to_string();
        return j;
      };
      bool ok = gamma(0, x) == PDElem::one(f, k) && gamma(1, x) == x;
      for (int i = 1; i <= 3; ++i) ok = ok && gamma(i, x).constant_term().is_zero();
      push(ev, F + "axiom1", ok, [&] { return show({{"x", x}}); });
      ok = true;
      for (int n = 0; n <= 3; ++n) {
        PDElem s(f, k);
        for (int i = 0; i <= n; ++i) s += pd_mul(gamma(i, x), gamma(n - i, y));
        ok = ok && gamma(n, x + y) == s;
      }
      push(ev, F + "axiom2", ok, [&] { return show({{"x", x}, {"y", y}}); });
      ok = true;
      PDElem lx = pd_mul(lam, x);
      for (int n = 0; n <= 3; ++n) ok = ok && gamma(n, lx) == pd_mul(pd_pow(lam, n), gamma(n, x));
      push(ev, F + "axiom3", ok, [&] { return show({{"x", x}, {"lambda", lam}}); });
      ok = true;
      for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
          ok = ok && pd_mul(gamma(i, x), gamma(j, x)) == gamma(i + j, x) * binomial(f, i + j, i);
      push(ev, F + "axiom4", ok, [&] { return show({{"x", x}}); });
      ok = true;
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; a * b <= 4; ++b)
          ok = ok && gamma(a, gamma(b, x)) == gamma(a * b, x) * pd_composition_coeff(f, a, b);
      push(ev, F + "axiom5", ok, [&] { return show({{"x", x}}); });
      PDElem g22 = gamma(2, gamma(2, x)), g4 = gamma(4, x) * Scalar(f, 3L);
      push(ev, F + "gamma2-gamma2", g22 == g4, [&] { return show({{"x", x}, {"gamma2(gamma2(x))", g22}, {"3 gamma4(x)", g4}}); });
      return ev;
    });
    for (auto& ev : res) col.merge(ev);
    for (int k = 1; k <= 3; ++k)
      for (int d = 0; d <= 4; ++d) {
        auto basis = multi_indices_of_degree(k, d);
        bool ok = true;
        json bad;
        for (std::size_t i = 0; i < basis.size(); ++i)
          for (std::size_t j = 0; j < basis.size(); ++j) {
            Scalar v = pd_pair(PDElem::monomial(f, basis[i], Scalar::one(f)), PDElem::monomial(f, basis[j], Scalar::one(f)));
            Scalar want = i == j ? Scalar::one(f) : Scalar::zero(f);
            if (v != want && ok) {
              ok = false;
              bad = {{"dim", k}, {"degree", d}, {"q", basis[i]}, {"m", basis[j]}, {"value", v.to_string()}};
            }
          }
        col.record(F + "pairing-identity", ok, [&] { return bad; });
      }
  }
  SuiteReport r;
  r.checks = col.take();
  return r;
}

// ---- crystalline operators ------------------------------------------------------

SuiteReport suite_crys(const RunConfig& cfg) {
  int trials = cfg.trials.value_or(100);
  int N = cfg.bound.value_or(6);
  if (N < 0 || N > 8) throw InputError("crys: --bound must be in [0, 8]");
  Collector col;
  for (const FieldSpec& f : fields(cfg, {0, 2, 3, 5})) {
    std::string F = "crys." + f.name() + ".";
    for (int k = 1; k <= 3; ++k)
      for (int a = 0; a <= N; ++a)
        for (int b = 0; a + b <= N; ++b)
          for (auto& q : multi_indices_of_degree(k, a))
            for (auto& s : multi_indices_of_degree(k, b)) {
              MultiIndex sum(k);
              for (int i = 0; i < k; ++i) sum[i] = q[i] + s[i];
              CrysOp got = crys_compose(CrysOp::basis(f, q), CrysOp::basis(f, s));
              col.record(F + "composition", got == CrysOp::basis(f, sum),
                         [&] { return json{{"q", q}, {"q'", s}, {"got", got.to_string()}}; });
            }
    if (!f.is_rational()) {
      int p = static_cast<int>(f.characteristic());
      CrysOp d = CrysOp::basis(f, {0});
      for (int i = 0; i < p; ++i) d = crys_compose(d, CrysOp::basis(f, {1}));
      col.record(F + "p-th-power", d == CrysOp::basis(f, {p}), [&] { return json{{"got", d.to_string()}}; });
    }
    auto res = parallel_map<Events>(trials, cfg.jobs, [&](std::size_t t) {
      auto rng = item_rng(cfg.seed, F, t);
      auto rnd = [&] {
        CrysOp d(f, 2);
        for (int i = 0; i < 3; ++i) {
          Scalar v(f, static_cast<long>(rng() % 7) - 3);
          if (!v.is_zero()) d.terms[{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}] = v;
        }
        return d;
      };
      CrysOp a = rnd(), b = rnd(), c = rnd();
      Events ev;
      CrysOp l = crys_compose(crys_compose(a, b), c), r = crys_compose(a, crys_compose(b, c));
      push(ev, F + "associativity", l == r, [&] {
        return json{{"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}, {"(ab)c", l.to_string()}, {"a(bc)", r.to_string()}};
      });
      CrysOp ab = crys_compose(a, b);
      bool ok = true;
      for (int d = 0; d <= 4; ++d)
        for (auto& q : multi_indices_of_degree(2, d)) {
          Scalar v = Scalar::zero(f);
          for (auto& [i, j] : coproduct(q)) v += crys_eval(b, i) * crys_eval(a, j);
          ok = ok && crys_eval(ab, q) == v;
        }
      push(ev, F + "coproduct-pairing", ok, [&] { return json{{"a", a.to_string()}, {"b", b.to_string()}}; });
      return ev;
    });
    for (auto& ev : res) col.merge(ev);
  }
  SuiteReport r;
  r.checks = col.take();
  return r;
}

// ---- Lie operad ---------------------------------------------------------------

SuiteReport suite_lie_dim(const RunConfig& cfg) {
  std::vector<int> ns;
  if (cfg.n)
    ns = {*cfg.n};
  else
    ns = {2, 3, 4, 5, 6};
  Collector col;
  json dims = json::object();
  for (const FieldSpec& f : fields(cfg, {0}))
    for (int n : ns) {
      int d = lie_dim(n, f);
      dims[std::to_string(n)] = d;
      col.record("lie-dim." + f.name(), d == factorial(n - 1),
                 [&] { return json{{"n", n}, {"dim", d}, {"expected", factorial(n - 1)}}; });
    }
  SuiteReport r;
  r.checks = col.take();
  r.result = dims;
  return r;
}

BracketExpr bl(int k) { return BracketExpr::letter(k); }
BracketExpr bb(BracketExpr a, BracketExpr b) { return BracketExpr::bracket(std::move(a), std::move(b)); }

std::vector<BracketExpr> all_brackets(const std::vector<int>& letters) {
  if (letters.size() == 1) return {bl(letters[0])};
  std::vector<BracketExpr> out;
  int n = static_cast<int>(letters.size());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<int> l, r;
    for (int k = 0; k < n; ++k) (mask >> k & 1 ? l : r).push_back(letters[k]);
    for (auto& a : all_brackets(l))
      for (auto& b : all_brackets(r)) out.push_back(bb(a, b));
  }
  return out;
}

long det(const std::vector<std::vector<long>>& a) {
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  long s = 0;
  do {
    long t = permutation_sign(p);
    for (std::size_t r = 0; r < a.size(); ++r) t *= a[r][p[r]];
    s += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

// m ^ dz_1 as a top form in the diffring model.
TopForm top_form_of(const WedgeMonomial& m) {
  const FieldSpec Q(0);
  int n = m.nvars();
  std::vector<std::vector<long>> c;
  RingElem value = RingElem::constant(Q, n, 1L);
  for (auto [a, b] : m.edges()) {
    std::vector<long> row(n, 0);
    row[a - 1] = 1;
    row[b - 1] = -1;
    c.push_back(row);
    value = value * RingElem::diff_power(Q, n, a, b, -1);
  }
  std::vector<long> last(n, 0);
  last[0] = 1;
  c.push_back(last);
  return {value * RingElem::constant(Q, n, det(c) * m.sign()), iota1(n)};
}

std::string edges_string(const std::vector<WedgeMonomial::Edge>& e) {
  std::ostringstream s;
  for (auto [a, b] : e) s << "(" << a << "," << b << ")";
  return s.str();
}

SuiteReport suite_pair_rank(const RunConfig& cfg) {
  std::vector<int> ns;
  if (cfg.n) {
    if (*cfg.n < 2 || *cfg.n > 6) throw InputError("pair-rank: -n must be in [2, 6]");
    ns = {*cfg.n};
  } else {
    ns = {2, 3, 4, 5};
  }
  int trials = cfg.trials.value_or(100);
  Collector col;
  json ranks = json::object();
  for (const FieldSpec& f : fields(cfg, {0, 7}))
    for (int n : ns) {
      std::size_t rk = rank(pairing_matrix(n, f));
      ranks[f.name()][std::to_string(n)] = rk;
      col.record("pair-rank." + f.name(), rk == static_cast<std::size_t>(factorial(n - 1)),
                 [&] { return json{{"n", n}, {"rank", rk}, {"expected", factorial(n - 1)}}; });
    }

  // three points: lambda_12 + lambda_13 + lambda_23 = 0 and Jacobi against the collision residue
  const FieldSpec Q(0);
  OneForm ex{{{1, 2}, Scalar(Q, 2L)}, {{1, 3}, Scalar(Q, 5L)}, {{2, 3}, Scalar(Q, -7L)}};
  col.record("lambda-model.example", collision_residue(ex, {1, 2, 3}).is_zero() && extends_over_total_collision(ex, 3));
  BracketExpr j1 = bb(bb(bl(1), bl(2)), bl(3)), j2 = bb(bb(bl(2), bl(3)), bl(1)), j3 = bb(bb(bl(3), bl(1)), bl(2));
  for (int t = 0; t < trials; ++t) {
    auto rng = item_rng(cfg.seed, "lambda-model", t);
    OneForm x;
    for (auto e : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}})
      x[e] = Scalar(Q, static_cast<long>(rng() % 11) - 5);
    if (t % 3 == 0) x[{2, 3}] = -(x[{1, 2}] + x[{1, 3}]);
    Scalar s = lambda_pairing(j1, x) + lambda_pairing(j2, x) + lambda_pairing(j3, x);
    Scalar sum = x[{1, 2}] + x[{1, 3}] + x[{2, 3}];
    auto show = [&] {
      return json{{"lambda12", x[{1, 2}].to_string()}, {"lambda13", x[{1, 3}].to_string()},
                  {"lambda23", x[{2, 3}].to_string()}, {"jacobi", s.to_string()}};
    };
    col.record("lambda-model.jacobi-duality", s == collision_residue(x, {1, 2, 3}), show);
    col.record("lambda-model.extension", sum.is_zero() == extends_over_total_collision(x, 3), show);
    col.record("lambda-model.antisymmetry", lambda_pairing(bb(bl(3), bb(bl(1), bl(2))), x) == -lambda_pairing(j1, x), show);
  }

  // cross-oracle: combinatorial res_tree against iterated residues of the rational top form
  for (int n = 2; n <= 4; ++n)
    for (auto& e : spanning_trees(n)) {
      std::vector<WedgeMonomial::Edge> rev(e.rbegin(), e.rend());
      for (auto& edges : {e, rev}) {
        WedgeMonomial m(n, edges);
        TopForm w = top_form_of(m);
        for (auto& b : all_brackets(iota1(n))) {
          auto ch = chain_of(b);
          TopForm r = w;
          for (auto& d : ch) r = residue(r, d);
          Scalar comb = res_tree(m, ch);
          bool ok = r.vars == std::vector<int>{1} && r.value.is_constant() && r.value.constant_value() == comb;
          col.record("cross-oracle.res-tree", ok, [&] {
            return json{{"n", n}, {"edges", edges_string(edges)}, {"tree", b.to_string()},
                        {"res_tree", comb.to_string()}, {"diffring", r.value.to_string()}};
          });
        }
      }
    }
  SuiteReport r;
  r.checks = col.take();
  r.result = {{"ranks", ranks}};
  return r;
}

// ---- trees --------------------------------------------------------------------

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

int count_vertices(const TreeNode& t) {
  if (t.is_leaf()) return 0;
  int c = 1;
  for (auto& k : t.kids) c += count_vertices(k);
  return c;
}

SuiteReport suite_trees(const RunConfig& cfg) {
  int N = cfg.n.value_or(4);
  if (N < 1 || N > 5) throw InputError("trees: -n must be in [1, 5]");
  Collector col;
  json counts = json::object();
  for (int n = 1; n <= std::max(N, 5); ++n) {
    auto ts = enumerate_trees(n);
    auto fam = laminar_families(n);
    std::set<std::set<LabelSet>> got;
    for (auto& t : ts) got.insert(t.divisor_set());
    counts[std::to_string(n)] = ts.size();
    col.record("trees.enumeration-oracle", ts.size() == fam.size() && got == fam,
               [&] { return json{{"n", n}, {"enumerated", ts.size()}, {"oracle", fam.size()}}; });
    if (n > N) continue;
    for (auto& t : ts) {
      int v = 0;
      for (auto& c : t.components()) v += count_vertices(c);
      col.record("trees.codim-vertices", codim(t) == v && codim(t) == static_cast<int>(t.divisor_set().size()),
                 [&] { return json{{"tree", t.to_json()}, {"codim", codim(t)}, {"vertices", v}}; });
    }
    std::vector<std::vector<bool>> le(ts.size(), std::vector<bool>(ts.size()));
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j) {
        le[i][j] = leq(ts[i], ts[j]);
        auto a = ts[j].divisor_set(), b = ts[i].divisor_set();
        bool oracle = std::includes(b.begin(), b.end(), a.begin(), a.end());
        col.record("trees.poset-divisor-oracle", le[i][j] == oracle,
                   [&] { return json{{"t", ts[i].to_json()}, {"t'", ts[j].to_json()}, {"leq", bool(le[i][j])}}; });
      }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      col.record("trees.poset-reflexive", le[i][i], [&] { return json{{"t", ts[i].to_json()}}; });
      for (std::size_t j = 0; j < ts.size(); ++j) {
        if (i != j)
          col.record("trees.poset-antisymmetric", !(le[i][j] && le[j][i]),
                     [&] { return json{{"t", ts[i].to_json()}, {"t'", ts[j].to_json()}}; });
        for (std::size_t k = 0; k < ts.size(); ++k)
          if (le[i][j] && le[j][k])
            col.record("trees.poset-transitive", le[i][k], [&] {
              return json{{"t", ts[i].to_json()}, {"t'", ts[j].to_json()}, {"t''", ts[k].to_json()}};
            });
      }
    }
  }
  for (int d = 1; d <= 6; ++d) {
    int c = 0;
    for (auto& t : enumerate_trees(d)) c += is_caterpillar_ending_in(t, d);
    col.record("trees.caterpillars", c == factorial(d - 1),
               [&] { return json{{"d", d}, {"count", c}, {"expected", factorial(d - 1)}}; });
  }
  SuiteReport r;
  r.checks = col.take();
  r.result = {{"tree_counts", counts}};
  return r;
}

// ---- jets ---------------------------------------------------------------------

enum { kE = 0, kH = 1, kF = 2 };

JetTuple spec_example(const FieldSpec& f) {
  JetTuple w = JetTuple::zero(f, JetModel::Disk, 2);
  w.forms[0].add({kH}, RingElem::constant(f, 1, 1L));
  RingElem d = RingElem::diff_power(f, 2, 1, 2, -1);
  w.forms[1].add({kE, kF}, d);
  w.forms[1].add({kF, kE}, -d);
  return w;
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

json membership_json(const MembershipReport& r) {
  return {{"ok", r.ok}, {"failure", r.failure}, {"order", r.order}, {"slots", r.slots}, {"detail", r.detail}};
}

SuiteReport jet_check_file(const RunConfig& cfg) {
  auto doc = io::jet_from_json(io::read_file(cfg.input));
  auto m = check_membership(doc.tuple, doc.g);
  Collector col;
  json info = membership_json(m);
  if (!m.ok) {
    auto wit = find_descent_witness(doc.g, doc.tuple, cfg.bound.value_or(3));
    info["descent_witness"] = wit ? witness_json(doc.g, *wit) : json(nullptr);
  }
  col.record("jets.file.membership", m.ok, [&] { return info; });
  SuiteReport r;
  r.checks = col.take();
  r.result = info;
  return r;
}

SuiteReport suite_jet_check(const RunConfig& cfg) {
  if (!cfg.input.empty()) return jet_check_file(cfg);
  int trials = cfg.trials.value_or(100);
  Collector col;
  auto fs = fields(cfg, {0, 5});
  for (const FieldSpec& f : fs) {
    auto g = LieAlgebra::sl2(f);
    auto m = check_membership(spec_example(f), g);
    col.record("jets.example.accepted", m.ok, [&] { return membership_json(m); });
    auto bad = spec_example(f);
    bad.forms[0] = TensorForm{1, {}};
    auto mb = check_membership(bad, g);
    col.record("jets.example.constraint-rejected", !mb.ok && mb.failure == "constraint", [&] { return membership_json(mb); });

    // truncated perfectness, n = 1, L = 2
    auto triv = TwistData::trivial(g);
    auto tw = TwistData::checked(g, {2, 0, -2});
    for (auto& [name, t, P] : {std::tuple{"trivial", triv, 3}, std::tuple{"twisted", tw, 5}}) {
      auto pr = truncated_perfectness(g, t, 2, P);
      json v{{"rows", pr.rows}, {"cols", pr.cols}, {"rank", pr.rank}, {"expected", pr.expected}};
      std::string id = std::string("jets.perfectness.") + name + "." + f.name();
      col.record(id, pr.rank == pr.expected && pr.rows == pr.expected, [&] { return v; });
      col.info(id, v);
    }
  }
  const FieldSpec& f = fs.front();
  auto g = LieAlgebra::sl2(f);
  auto triv = TwistData::trivial(g);
  auto tw = TwistData::checked(g, {2, 0, -2});
  auto res = parallel_map<Events>(trials, cfg.jobs, [&](std::size_t s) {
    Events ev;
    auto rng = item_rng(cfg.seed, "jets.vacuum", s);
    GeneratorOptions opt;
    opt.n = 2 + static_cast<int>(s % 2);
    auto w = random_valid_tuple(g, rng, opt);
    // xi in g_O (trivial twist) and in Ad_phi(g_O) for the twisted tuple
    GKElem xi, xt;
    for (int a = 0; a < 3; ++a) {
      xi.terms[{a, static_cast<int>(rng() % 3)}] = Scalar(f, 1L + static_cast<long>(rng() % 4));
      xt.terms[{a, tw.weights[a] + static_cast<int>(rng() % 3)}] = Scalar(f, 1L + static_cast<long>(rng() % 4));
    }
    GKWord rest;
    for (int k = 1; k < opt.n; ++k) rest.push_back(random_gk_elem(g, rng, -4, 2));
    Scalar v = vacuum_pairing(g, xi, rest, w);
    push(ev, "jets.vacuum.trivial", check_vacuum_vanishing(g, xi, rest, w, triv),
         [&] { return json{{"xi", xi.to_string(g)}, {"rest", word_json(g, rest)}, {"value", v.to_string()}}; });
    auto wt = twist_tuple(tw, w);
    auto mt = check_membership(wt, g);
    push(ev, "jets.vacuum.twisted-membership", mt.ok, [&] { return membership_json(mt); });
    Scalar vt = vacuum_pairing(g, xt, rest, wt);
    push(ev, "jets.vacuum.twisted", check_vacuum_vanishing(g, xt, rest, wt, tw),
         [&] { return json{{"xi", xt.to_string(g)}, {"rest", word_json(g, rest)}, {"value", vt.to_string()}}; });

    auto r2 = item_rng(cfg.seed, "jets.out", s);
    GeneratorOptions o2;
    o2.n = 1 + static_cast<int>(s % 3);
    auto w0 = genus0_from_disk(random_valid_tuple(g, r2, o2));
    auto m0 = check_membership(w0, g);
    push(ev, "jets.out.genus0-membership", m0.ok, [&] { return membership_json(m0); });
    int k = 1 + static_cast<int>(r2() % o2.n);
    GKWord rest2;
    for (int m = 1; m < k; ++m) rest2.push_back(random_gk_elem(g, r2, -3, 3));
    auto xo = random_gk_elem(g, r2, -3, 0);
    Scalar vo = out_pairing(g, xo, rest2, w0);
    push(ev, "jets.out.genus0", check_out_vanishing(g, xo, rest2, w0),
         [&] { return json{{"xi", xo.to_string(g)}, {"rest", word_json(g, rest2)}, {"value", vo.to_string()}}; });
    return ev;
  });
  for (auto& ev : res) col.merge(ev);
  SuiteReport r;
  r.checks = col.take();
  return r;
}

SuiteReport suite_jet_fuzz(const RunConfig& cfg) {
  int trials = cfg.trials.value_or(500);
  auto fs = fields(cfg, {0, 5});
  auto gs = algebras(cfg, {"sl2", "sl3"});
  int maxn = cfg.n.value_or(3);
  if (maxn < 1 || maxn > 3) throw InputError("jet-fuzz: -n must be in [1, 3]");
  // one algebra per (name, field), built up front
  std::map<std::pair<std::string, std::uint64_t>, LieAlgebra> lie;
  for (auto& name : gs)
    for (auto& f : fs) lie.emplace(std::pair{name, f.characteristic()}, io::lie_from_spec(f, name));

  Collector col;
  auto res = parallel_map<Events>(trials, cfg.jobs, [&](std::size_t i) {
    Events ev;
    const std::string& name = gs[i % gs.size()];
    const FieldSpec& f = fs[(i / gs.size()) % fs.size()];
    const LieAlgebra& g = lie.at({name, f.characteristic()});
    std::size_t c = i / (gs.size() * fs.size());
    GeneratorOptions opt;
    opt.n = 1 + static_cast<int>(c % maxn);
    opt.punctured = (c / maxn) % 2 == 1;
    opt.actions = g.dim() > 3 && opt.n == 3 ? 1 : 2;
    auto rng = item_rng(cfg.seed, "jet-fuzz", i);
    auto w = random_valid_tuple(g, rng, opt);
    auto m = check_membership(w, g);
    json where{{"item", i}, {"g", name}, {"char", f.characteristic()}, {"n", opt.n}, {"model", to_string(w.model)}};
    push(ev, "jets.valid.membership", m.ok, [&] {
      json j = where;
      j["report"] = membership_json(m);
      return j;
    });
    // adjacent transposition insertions in words of length <= min(n, 3)
    if (opt.n >= 2) {
      int reps = opt.n == 2 ? 3 : 2;
      for (int t = 0; t < reps; ++t) {
        auto x = random_gk_elem(g, rng, -3, 1), y = random_gk_elem(g, rng, -3, 1);
        std::vector<std::pair<GKWord, GKWord>> ctx{{{}, {}}};
        if (opt.n >= 3) {
          ctx.push_back({{random_gk_elem(g, rng, -3, 1)}, {}});
          ctx.push_back({{}, {random_gk_elem(g, rng, -3, 1)}});
        }
        for (auto& [pre, suf] : ctx) {
          Scalar d = relation_defect(g, x, y, pre, suf, w);
          push(ev, "jets.valid.descent", d.is_zero(), [&] {
            json j = where;
            j["witness"] = witness_json(g, DescentWitness{x, y, pre, suf, d});
            return j;
          });
        }
      }
    }
    return ev;
  });
  for (auto& ev : res) col.merge(ev);

  for (auto& f : fs)
    for (auto& name : gs) {
      const LieAlgebra& g = lie.at({name, f.characteristic()});
      for (auto k : {InvalidKind::NonSymmetric, InvalidKind::Loop, InvalidKind::ConstraintBroken, InvalidKind::LogViolation}) {
        auto rng = item_rng(cfg.seed, "jet-fuzz.invalid." + to_string(k), f.characteristic());
        int n = k == InvalidKind::Loop ? 3 : 2;
        JetTuple w = invalid_tuple(g, k, rng, n);
        auto m = check_membership(w, g);
        auto wit = find_descent_witness(g, w, 3);
        bool ok = !m.ok && m.failure == expected_failure(k) && wit && !wit->defect.is_zero() &&
                  relation_defect(g, wit->x, wit->y, wit->prefix, wit->suffix, w) == wit->defect;
        json info{{"g", name}, {"char", f.characteristic()}, {"report", membership_json(m)},
                  {"witness", wit ? witness_json(g, *wit) : json(nullptr)}};
        std::string id = "jets.invalid." + to_string(k);
        col.record(id, ok, [&] { return info; });
        if (f == fs.front() && name == gs.front()) col.info(id, info);
      }
    }
  SuiteReport r;
  r.checks = col.take();
  return r;
}

// ---- BD sheaf -----------------------------------------------------------------

GSection constructed_section(const LieAlgebra& g, std::mt19937_64& rng, int n, bool punctured, JetTuple* full = nullptr) {
  GeneratorOptions opt;
  opt.n = n;
  opt.punctured = punctured;
  opt.actions = 1;
  auto t = random_valid_tuple(g, rng, opt);
  if (full) *full = t;
  return t.omega(n);
}

json bd_json(const BDReport& r) {
  return {{"ok", r.ok}, {"depth", r.depth}, {"chain", r.chain}, {"slots", r.slots}, {"detail", r.detail},
          {"chains_checked", r.chains_checked}};
}

SuiteReport bd_check_file(const RunConfig& cfg) {
  auto doc = io::section_from_json(io::read_file(cfg.input));
  auto rep = bd_membership(doc.g, doc.section);
  Collector col;
  col.record("bd.file.membership", rep.ok, [&] { return bd_json(rep); });
  SuiteReport r;
  r.checks = col.take();
  r.result = bd_json(rep);
  return r;
}

SuiteReport suite_bd_check(const RunConfig& cfg) {
  if (!cfg.input.empty()) return bd_check_file(cfg);
  int trials = cfg.trials.value_or(100);
  Collector col;
  auto fs = fields(cfg, {0, 5});
  {
    const FieldSpec& f = fs.front();
    auto g = LieAlgebra::sl2(f);
    auto w = spec_example(f).omega(2);
    auto rep = bd_membership(g, w);
    col.record("bd.example.accepted", rep.ok, [&] { return bd_json(rep); });
    w.add({kF, kF}, RingElem::diff_power(f, 2, 1, 2, -1));
    rep = bd_membership(g, w);
    col.record("bd.example.rejected", !rep.ok && rep.depth == 2, [&] { return bd_json(rep); });
  }
  auto gs = algebras(cfg, {"sl2"});
  auto res = parallel_map<Events>(trials, cfg.jobs, [&](std::size_t i) {
    Events ev;
    const FieldSpec& f = fs[i % fs.size()];
    auto g = io::lie_from_spec(f, gs[(i / fs.size()) % gs.size()]);
    auto rng = item_rng(cfg.seed, "bd-check", i);
    int n = 2 + static_cast<int>(i % 2);
    if (i % 7 == 0) {
      auto reg = regular_top(g, n, rng, 2).omega(n);
      auto rr = bd_membership(g, reg);
      push(ev, "bd.regular.accepted", rr.ok && is_regular(reg), [&] { return bd_json(rr); });
    }
    auto w = constructed_section(g, rng, n, rng() % 2 == 1);
    auto rep = bd_membership(g, w);
    push(ev, "bd.constructed.accepted", rep.ok, [&] { return bd_json(rep); });
    // a symmetric slot pair under the last diagonal is never a cobracket
    int a = static_cast<int>(rng() % g.dim());
    std::vector<int> key(n, a);
    w.add(key, RingElem::diff_power(f, n, n - 1, n, -1));
    auto bad = bd_membership(g, w);
    push(ev, "bd.perturbed.rejected", !bad.ok, [&] { return bd_json(bad); });
    return ev;
  });
  for (auto& ev : res) col.merge(ev);
  SuiteReport r;
  r.checks = col.take();
  return r;
}

SuiteReport residue_map_file(const RunConfig& cfg) {
  auto doc = io::section_from_json(io::read_file(cfg.input));
  Collector col;
  SuiteReport r;
  try {
    auto out = residue_map(doc.g, doc.section);
    auto rep = bd_membership(doc.g, out);
    col.record("residue-map.file.factorized", true);
    col.record("residue-map.file.output-in-bd", rep.ok, [&] { return bd_json(rep); });
    r.output = io::to_json(doc.field, doc.g, doc.model, out);
  } catch (const MathError& e) {
    col.record("residue-map.file.factorized", false, [&] { return json{{"detail", e.what()}}; });
  }
  r.checks = col.take();
  return r;
}

SuiteReport suite_residue_map(const RunConfig& cfg) {
  if (!cfg.input.empty()) return residue_map_file(cfg);
  int trials = cfg.trials.value_or(500);
  int maxn = cfg.n.value_or(3);
  if (maxn < 2 || maxn > 3) throw InputError("residue-map: -n must be 2 or 3");
  auto fs = fields(cfg, {0, 5});
  auto gs = algebras(cfg, {"sl2"});
  std::map<std::pair<std::string, std::uint64_t>, LieAlgebra> lie;
  for (auto& name : gs)
    for (auto& f : fs) lie.emplace(std::pair{name, f.characteristic()}, io::lie_from_spec(f, name));
  Collector col;
  auto res = parallel_map<Events>(trials, cfg.jobs, [&](std::size_t i) {
    Events ev;
    const FieldSpec& f = fs[i % fs.size()];
    const std::string& name = gs[(i / fs.size()) % gs.size()];
    const LieAlgebra& g = lie.at({name, f.characteristic()});
    auto rng = item_rng(cfg.seed, "residue-map", i);
    int n = 2 + static_cast<int>((i / 2) % (maxn - 1));
    JetTuple t;
    auto w = constructed_section(g, rng, n, (i / 4) % 2 == 1, &t);
    json where{{"item", i}, {"g", name}, {"char", f.characteristic()}, {"n", n}};
    auto out = residue_map(g, w);
    auto rep = bd_membership(g, out);
    push(ev, "residue-map.output-in-bd", rep.ok, [&] {
      json j = where;
      j["report"] = bd_json(rep);
      return j;
    });
    push(ev, "residue-map.lower-layer", out == t.omega(n - 1), [&] { return where; });
    push(ev, "residue-map.zero-iff-regular", out.coeffs.empty() == is_regular(w), [&] { return where; });
    if (i % 10 == 0) {
      auto reg = regular_top(g, n, rng, 2).omega(n);
      push(ev, "residue-map.regular-to-zero", residue_map(g, reg).coeffs.empty(), [&] { return where; });
    }
    return ev;
  });
  for (auto& ev : res) col.merge(ev);
  SuiteReport r;
  r.checks = col.take();
  return r;
}

SuiteReport suite_exactness(const RunConfig& cfg) {
  auto fs = fields(cfg, {0});
  auto g = io::lie_from_spec(fs.front(), cfg.g.value_or("sl2"));
  int n = cfg.n.value_or(2), B = cfg.bound.value_or(2);
  auto rep = kernel_and_exactness_report(g, n, B);
  json v{{"n", rep.n},
         {"bound", rep.bound},
         {"dim_total", rep.dim_total},
         {"dim_kernel", rep.dim_kernel},
         {"dim_regular", rep.dim_regular},
         {"dim_image", rep.dim_image},
         {"sym_power_dim", rep.sym_power_dim},
         {"note", rep.note}};
  Collector col;
  col.record("exactness.kernel-is-regular", rep.kernel_is_regular, [&] { return v; });
  col.record("exactness.additive", rep.additive && rep.dim_total == rep.dim_kernel + rep.dim_image, [&] { return v; });
  col.record("exactness.image-in-bd", rep.image_in_bd, [&] { return v; });
  col.record("exactness.regular-is-sym-power", rep.dim_regular == rep.sym_power_dim, [&] { return v; });
  SuiteReport r;
  r.checks = col.take();
  r.result = v;
  return r;
}

using SuiteFn = SuiteReport (*)(const RunConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"parshin", suite_parshin},       {"pd-axioms", suite_pd},          {"crys", suite_crys},
      {"lie-dim", suite_lie_dim},       {"pair-rank", suite_pair_rank},   {"trees", suite_trees},
      {"jet-check", suite_jet_check},   {"jet-fuzz", suite_jet_fuzz},     {"bd-check", suite_bd_check},
      {"residue-map", suite_residue_map}, {"exactness", suite_exactness},
  };
  return r;
}

json config_json(const RunConfig& cfg) {
  json c = json::object();
  c["char"] = cfg.characteristic ? json(*cfg.characteristic) : json(nullptr);
  c["g"] = cfg.g ? json(*cfg.g) : json(nullptr);
  c["n"] = cfg.n ? json(*cfg.n) : json(nullptr);
  c["bound"] = cfg.bound ? json(*cfg.bound) : json(nullptr);
  c["trials"] = cfg.trials ? json(*cfg.trials) : json(nullptr);
  c["seed"] = cfg.seed;
  c["input"] = cfg.input.empty() ? json(nullptr) : json(cfg.input);
  return c;
}

}  // namespace

std::mt19937_64 item_rng(std::uint64_t seed, const std::string& stream, std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : stream) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

RingElem random_ring_elem(const FieldSpec& f, int n, std::mt19937_64& rng, int max_exp, int max_pole) {
  std::uniform_int_distribution<int> ex(0, max_exp), coef(-4, 4), terms(1, 3), pole(0, max_pole);
  Poly num;
  int t = terms(rng);
  for (int k = 0; k < t; ++k) {
    Mono m(n);
    for (auto& x : m) x = ex(rng);
    Scalar c(f, static_cast<long>(coef(rng)));
    auto it = num.try_emplace(m, Scalar::zero(f)).first;
    it->second += c;
    if (it->second.is_zero()) num.erase(it);
  }
  std::vector<int> a(n);
  for (auto& x : a) x = pole(rng);
  std::map<std::pair<int, int>, int> b;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) b[{i, j}] = pole(rng);
  return RingElem::from_parts(f, n, num, a, b);
}

PDElem random_pd_elem(const FieldSpec& f, int k, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> terms(1, 3), deg(1, max_deg), coef(-3, 3), var(0, k - 1);
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

GKElem random_gk_elem(const LieAlgebra& g, std::mt19937_64& rng, int lo, int hi) {
  GKElem x;
  int terms = 1 + static_cast<int>(rng() % 2);
  for (int t = 0; t < terms; ++t) {
    int a = static_cast<int>(rng() % g.dim());
    int l = lo + static_cast<int>(rng() % (hi - lo + 1));
    x.terms[{a, l}] = Scalar(g.field(), static_cast<long>(rng() % 5) + 1);
  }
  return x;
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json SuiteReport::to_json() const {
  json cs = json::array();
  for (auto& c : checks) {
    json j{{"id", c.id}, {"pass", c.pass}, {"count", c.count}};
    if (!c.pass) j["failures"] = c.failures;
    if (!c.info.is_null()) j["info"] = c.info;
    cs.push_back(j);
  }
  json out{{"schema", 1}, {"suite", suite}, {"config", config}, {"pass", pass()}, {"checks", cs}};
  if (!result.is_null()) out["result"] = result;
  return out;
}

std::string SuiteReport::human() const {
  std::ostringstream s;
  if (suite == "lie-dim" && result.is_object() && result.size() == 1) {
    s << result.begin().value().get<int>() << "\n";
    return s.str();
  }
  for (auto& c : checks) {
    s << (c.pass ? "PASS " : "FAIL ") << c.id << " (" << c.count << ")";
    if (!c.info.is_null()) s << " " << c.info.dump();
    s << "\n";
    if (!c.pass)
      for (auto& f : c.failures) s << "    " << f.dump() << "\n";
  }
  if (!result.is_null()) s << "result: " << result.dump() << "\n";
  s << suite << ": " << (pass() ? "PASS" : "FAIL") << "\n";
  return s.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& [k, f] : registry()) v.push_back(k);
    v.push_back("all");
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  if (cfg.jobs < 1) throw InputError("--jobs must be >= 1");
  if (cfg.trials && *cfg.trials < 0) throw InputError("--trials must be >= 0");
  if (cfg.characteristic && *cfg.characteristic != 0 && !is_prime(*cfg.characteristic))
    throw InputError("--char must be 0 or a prime");
  SuiteReport r;
  if (name == "all") {
    RunConfig sub = cfg;
    sub.input.clear();
    Collector col;
    json summary = json::object();
    for (auto& [k, fn] : registry()) {
      SuiteReport s = fn(sub);
      col.absorb(k + "/", s.checks);
      summary[k] = s.pass();
    }
    r.checks = col.take();
    r.result = summary;
  } else {
    auto it = std::find_if(registry().begin(), registry().end(), [&](auto& e) { return e.first == name; });
    if (it == registry().end()) throw InputError("unknown suite '" + name + "'");
    r = it->second(cfg);
  }
  r.suite = name;
  r.config = config_json(cfg);
  return r;
}

}  // namespace logres
