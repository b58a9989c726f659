// Acceptance criteria 1-11: one PASS/FAIL line each, exit status 0 iff all pass.

#include <chrono>
#include <iostream>
#include <map>
#include <thread>

#include "logres/gsheaf.hpp"
#include "logres/suites.hpp"

using namespace logres;

namespace {

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

RunConfig base() {
  RunConfig c;
  c.seed = 20240601;
  c.jobs = jobs();
  return c;
}

const Check* find(const SuiteReport& r, const std::string& id) {
  for (auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

// Every check whose id starts with `prefix` passed; returns how many instances were seen.
bool all_pass(const SuiteReport& r, const std::string& prefix, std::size_t& count, std::string& why) {
  bool ok = true, any = false;
  for (auto& c : r.checks) {
    if (c.id.rfind(prefix, 0) != 0) continue;
    any = true;
    count += c.count;
    if (!c.pass) {
      ok = false;
      if (why.empty()) why = c.id + " " + c.failures.dump();
    }
  }
  if (!any) why = "no checks named " + prefix + "*";
  return ok && any;
}

int failures = 0;
auto last = std::chrono::steady_clock::now();

void line(int k, bool ok, const std::string& what) {
  auto now = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(now - last).count();
  last = now;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << k << ": " << what << " [" << static_cast<int>(secs + 0.5) << "s]"
            << std::endl;
  if (!ok) ++failures;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  std::string why;
  std::size_t count = 0;

  {  // 1
    auto r = run_suite("parshin", base());
    why.clear();
    count = 0;
    bool ok = all_pass(r, "parshin.", count, why) && find(r, "parshin.Q.random") && find(r, "parshin.F5.random") &&
              find(r, "parshin.Q.random")->count == 600 && find(r, "parshin.Q.monomials")->count == 250;
    line(1, ok, "Parshin identity with one sign epsilon=" + r.result["epsilon"].dump() + ", " + std::to_string(count) +
                    " cases over Q and F5 " + why);
  }
  {  // 2
    auto r = run_suite("pd-axioms", base());
    why.clear();
    count = 0;
    bool ok = all_pass(r, "pd.", count, why);
    for (auto F : {"Q", "F2", "F3", "F5"}) {
      auto* c = find(r, std::string("pd.") + F + ".axiom5");
      ok = ok && c && c->count == 500 && find(r, std::string("pd.") + F + ".gamma2-gamma2") &&
           find(r, std::string("pd.") + F + ".pairing-identity");
    }
    line(2, ok, "divided-power axioms on 500 elements per field, gamma2(gamma2(x)) = 3 gamma4(x), pairing identity " + why);
  }
  {  // 3
    auto r = run_suite("crys", base());
    why.clear();
    count = 0;
    bool ok = all_pass(r, "crys.", count, why);
    for (auto F : {"Q", "F2", "F3", "F5"})
      ok = ok && find(r, std::string("crys.") + F + ".composition") && find(r, std::string("crys.") + F + ".associativity");
    line(3, ok, "D_q D_q' = D_{q+q'} for |q|+|q'| <= 6 and associativity, " + std::to_string(count) + " checks " + why);
  }
  SuiteReport pr = run_suite("pair-rank", base());
  {  // 4
    auto ld = run_suite("lie-dim", base());
    why.clear();
    count = 0;
    bool ok = all_pass(ld, "lie-dim.", count, why) && ld.result.size() == 5 && all_pass(pr, "pair-rank.Q", count, why) &&
              all_pass(pr, "pair-rank.F7", count, why) && all_pass(pr, "lambda-model.", count, why) &&
              find(pr, "pair-rank.Q")->count == 4 && find(pr, "lambda-model.jacobi-duality");
    line(4, ok, "dim Lie(n) = (n-1)! for n <= 6, pairing rank (n-1)! for n <= 5 over Q and F7, three-point model " + why);
  }
  {  // 5
    why.clear();
    count = 0;
    bool ok = all_pass(pr, "cross-oracle.res-tree", count, why);
    line(5, ok, "res_tree equals iterated diffring residues on " + std::to_string(count) + " (tree, chain) pairs, n <= 4 " + why);
  }
  {  // 6
    auto r = run_suite("trees", base());
    why.clear();
    count = 0;
    bool ok = all_pass(r, "trees.", count, why) && find(r, "trees.caterpillars") && find(r, "trees.caterpillars")->count == 6;
    line(6, ok, "codim = vertices, poset axioms, laminar-family oracle, caterpillar counts " + why);
  }
  {  // 7
    auto r = run_suite("jet-fuzz", base());
    why.clear();
    count = 0;
    bool ok = all_pass(r, "jets.", count, why) && find(r, "jets.valid.membership")->count == 500;
    for (auto k : {"constraint", "log-pole", "loop", "non-symmetric"}) ok = ok && find(r, std::string("jets.invalid.") + k);
    line(7, ok, "500 constructed tuples accepted, " + std::to_string(find(r, "jets.valid.descent")->count) +
                    " descent defects exactly 0, every invalid kind rejected with a witness " + why);
  }
  SuiteReport jc = run_suite("jet-check", base());
  {  // 8
    why.clear();
    count = 0;
    bool ok = all_pass(jc, "jets.vacuum.", count, why) && all_pass(jc, "jets.out.", count, why) &&
              find(jc, "jets.vacuum.trivial")->count >= 100 && find(jc, "jets.vacuum.twisted")->count >= 100 &&
              find(jc, "jets.out.genus0")->count >= 100;
    line(8, ok, "vacuum (trivial and sl2 twist (2,0,-2)) and genus-zero out pairings exactly 0 on 100 instances each " + why);
  }
  {  // 9
    why.clear();
    count = 0;
    bool ok = all_pass(jc, "jets.perfectness.", count, why) && count == 4;
    auto* c = find(jc, "jets.perfectness.trivial.Q");
    line(9, ok, "n=1, L=2 pairing block has full rank " + (c ? c->info.dump() : std::string()) + " " + why);
  }
  {  // 10
    auto r = run_suite("residue-map", base());
    why.clear();
    count = 0;
    bool ok = all_pass(r, "residue-map.", count, why) && find(r, "residue-map.output-in-bd")->count == 500;
    std::string dims;
    for (int B = 1; B <= 3; ++B) {
      RunConfig c = base();
      c.n = 2;
      c.bound = B;
      c.g = "sl2";
      auto e = run_suite("exactness", c);
      std::size_t k = 0;
      ok = ok && all_pass(e, "exactness.", k, why);
      dims += " B=" + std::to_string(B) + ":" + std::to_string(e.result["dim_kernel"].get<int>()) + "+" +
              std::to_string(e.result["dim_image"].get<int>()) + "=" + std::to_string(e.result["dim_total"].get<int>());
    }
    line(10, ok, "residue_map outputs in BD on 500 sections; kernel = regular, additivity for sl2 n=2" + dims + " " + why);
  }
  {  // 11
    bool ok = true;
    std::string bad;
    for (const auto& name : suite_names()) {
      RunConfig a;
      a.seed = 7;
      a.trials = name == "all" ? 2 : 12;
      RunConfig b = a;
      b.jobs = 3;
      std::string x = run_suite(name, a).to_json().dump(), y = run_suite(name, b).to_json().dump();
      std::string z = run_suite(name, a).to_json().dump();
      if (x != y || x != z) {
        ok = false;
        bad += " " + name;
      }
    }
    // full default parshin report
    RunConfig p = base();
    if (run_suite("parshin", p).to_json().dump() != run_suite("parshin", p).to_json().dump()) {
      ok = false;
      bad += " parshin(full)";
    }
    line(11, ok, "reruns with the same seed give byte-identical JSON for every suite" + (bad.empty() ? "" : ", differs:" + bad));
  }

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "total " << static_cast<int>(secs) << "s, " << failures << " failed" << std::endl;
  return failures ? 1 : 0;
}
