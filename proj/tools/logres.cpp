// logres: verification suites and file checkers.
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input or configuration error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "logres/gsheaf.hpp"
#include "logres/io.hpp"
#include "logres/suites.hpp"

namespace {

struct Options {
  long long characteristic = -1;
  std::string g;
  int n = -1, bound = -1, trials = -1;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string format = "human";
  std::string out;
  std::string input;
  std::string word;
};

logres::RunConfig to_config(const Options& o) {
  logres::RunConfig c;
  if (o.characteristic >= 0) c.characteristic = static_cast<std::uint64_t>(o.characteristic);
  if (!o.g.empty()) c.g = o.g;
  if (o.n >= 0) c.n = o.n;
  if (o.bound >= 0) c.bound = o.bound;
  if (o.trials >= 0) c.trials = o.trials;
  c.seed = o.seed;
  c.jobs = o.jobs;
  c.input = o.input;
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw logres::InputError("cannot write '" + path + "'");
  f << text;
}

int run_report(const std::string& suite, const Options& o) {
  auto rep = logres::run_suite(suite, to_config(o));
  std::string js = rep.to_json().dump(2) + "\n";
  if (o.format == "json")
    std::cout << js;
  else
    std::cout << rep.human();
  if (!o.out.empty()) write_file(o.out, rep.output.is_null() ? js : rep.output.dump(2) + "\n");
  return rep.pass() ? 0 : 1;
}

int run_pair(const Options& o) {
  auto doc = logres::io::jet_from_json(logres::io::read_file(o.input));
  auto word = logres::io::word_from_json(doc.g, logres::io::parse(o.word));
  auto v = logres::pair_phi_k(doc.g, word, doc.tuple);
  if (o.format == "json")
    std::cout << logres::json{{"schema", 1}, {"pairing", logres::io::to_json(v)}}.dump(2) << "\n";
  else
    std::cout << v.to_string() << "\n";
  return 0;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--char", o.characteristic, "field characteristic (0 or a prime)");
  app->add_option("--g", o.g, "Lie algebra: sl2, sl3, abelianN or a JSON file");
  app->add_option("-n", o.n, "arity / order bound");
  app->add_option("--bound", o.bound, "pole or degree bound");
  app->add_option("--seed", o.seed, "PRNG seed (mt19937_64)");
  app->add_option("--trials", o.trials, "number of random instances");
  app->add_option("--format", o.format, "human or json")->check(CLI::IsMember({"human", "json"}));
  app->add_option("--jobs", o.jobs, "worker threads");
  app->add_option("-o", o.out, "write the report (or the output document) here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residue and jet computations on configuration spaces"};
  app.require_subcommand(1);
  Options o;
  std::string chosen;
  for (const auto& name : logres::suite_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " suite");
    add_common(sub, o);
    if (name == "jet-check" || name == "bd-check" || name == "residue-map")
      sub->add_option("file", o.input, "JSON document to check");
    sub->callback([&chosen, name] { chosen = name; });
  }
  auto* pair = app.add_subcommand("pair", "pair a word with a jet tuple");
  add_common(pair, o);
  pair->add_option("--word", o.word, "word as [[basis, power(, coeff)], ...]")->required();
  pair->add_option("file", o.input, "jet tuple document")->required();
  pair->callback([&chosen] { chosen = "pair"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (chosen == "pair") return run_pair(o);
    return run_report(chosen, o);
  } catch (const logres::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const logres::MathError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
