#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "logres/coeff.hpp"
#include "logres/diffring.hpp"
#include "logres/liealg.hpp"

namespace logres {

// value[j_1..j_i] * dz_1 ^ ... ^ dz_i with (g^*)^{(x) i} slots; absent keys are zero.
struct TensorForm {
  int order = 0;
  std::map<std::vector<int>, RingElem> coeffs;

  const RingElem* find(const std::vector<int>& key) const;
  void add(const std::vector<int>& key, const RingElem& f);
  TensorForm& operator+=(const TensorForm& o);
  TensorForm operator*(const Scalar& s) const;
  bool operator==(const TensorForm& o) const;
};

// sigma acts on slots, variables and the volume symbol; perm[k] = sigma(k+1).
TensorForm act(const std::vector<int>& perm, const TensorForm& w);

enum class JetModel { Disk, Punctured, Genus0 };
std::string to_string(JetModel m);
JetModel parse_jet_model(const std::string& s);

struct JetTuple {
  JetModel model = JetModel::Disk;
  Scalar omega0;
  std::vector<TensorForm> forms;  // forms[i-1] is omega_i

  int n() const { return static_cast<int>(forms.size()); }
  const TensorForm& omega(int i) const { return forms.at(i - 1); }
  static JetTuple zero(const FieldSpec& f, JetModel m, int n);
  JetTuple& operator+=(const JetTuple& o);
  JetTuple operator*(const Scalar& s) const;
};

// Finite sum of c * e_a t^l.
struct GKElem {
  std::map<std::pair<int, int>, Scalar> terms;  // (basis index, power) -> coefficient

  static GKElem mono(const Scalar& c, int a, int l);
  bool is_zero() const { return terms.empty(); }
  std::string to_string(const LieAlgebra& g) const;
};
GKElem bracket(const LieAlgebra& g, const GKElem& x, const GKElem& y);
using GKWord = std::vector<GKElem>;

// Ad_phi(e_a t^l) = e_a t^{l + w_a}; weights must be additive on brackets.
struct TwistData {
  std::vector<int> weights;

  static TwistData trivial(const LieAlgebra& g);
  static TwistData checked(const LieAlgebra& g, std::vector<int> w);
  bool in_twisted_gO(const GKElem& x) const;
};

struct MembershipReport {
  bool ok = true;
  std::string failure;  // "arity", "model", "anti-invariance", "no-loop", "log-pole", "constraint"
  int order = 0;
  std::vector<int> slots;
  std::string detail;
};

MembershipReport check_membership(const JetTuple& w, const LieAlgebra& g);

// f has only simple poles along diagonals and lies in the span of fractions over forests of diagonals.
bool loop_free(const RingElem& f);

Scalar pair_phi_k(const LieAlgebra& g, const GKWord& word, const JetTuple& w);
// prefix xi xi' suffix - prefix xi' xi suffix - prefix [xi,xi'] suffix
Scalar relation_defect(const LieAlgebra& g, const GKElem& x, const GKElem& y, const GKWord& prefix,
                       const GKWord& suffix, const JetTuple& w);
bool check_relation_descent(const LieAlgebra& g, const GKElem& x, const GKElem& y, const GKWord& prefix,
                            const GKWord& suffix, const JetTuple& w);

struct DescentWitness {
  GKElem x, y;
  GKWord prefix, suffix;
  Scalar defect;
};
// Deterministic search over words of basis letters with powers in [-max_power, max_power]: every
// length-2 word, then seeded random probes for longer words.
std::optional<DescentWitness> find_descent_witness(const LieAlgebra& g, const JetTuple& w, int max_power,
                                                   std::size_t budget = 20000);

// The Ad_phi(g_O) element sits innermost (last); see the notes in README.
Scalar vacuum_pairing(const LieAlgebra& g, const GKElem& xi, const GKWord& rest, const JetTuple& w);
bool check_vacuum_vanishing(const LieAlgebra& g, const GKElem& xi, const GKWord& rest, const JetTuple& w,
                            const TwistData& twist);
// The g (x) k[t^-1] element sits outermost (first).
Scalar out_pairing(const LieAlgebra& g, const GKElem& xi, const GKWord& rest, const JetTuple& w);
bool check_out_vanishing(const LieAlgebra& g, const GKElem& xi, const GKWord& rest, const JetTuple& w);
bool is_out_element(const GKElem& x);

// ---- constructions -------------------------------------------------------

// Tuple determined by a covector chi through the OPE recursion (disk model, constant numerators).
JetTuple ope_tuple(const LieAlgebra& g, const Vec& chi, int n);
// Coadjoint action of A t^l in every slot; omega_0 goes to 0.
JetTuple act_gk(const LieAlgebra& g, int a, int l, const JetTuple& w);
// Slot a at z_m is multiplied by z_m^{-w_a}.
JetTuple twist_tuple(const TwistData& t, const JetTuple& w);
// Pullback along z -> 1/z; disk tuples become genus-zero global tuples.
JetTuple genus0_from_disk(const JetTuple& w);
// Symmetrized regular top layer with zeros below.
JetTuple regular_top(const LieAlgebra& g, int n, std::mt19937_64& rng, int max_deg);

struct GeneratorOptions {
  int n = 2;
  int max_power = 2;  // g_O action powers 0..max_power
  int actions = 2;
  bool punctured = false;  // also apply negative powers
};
JetTuple random_valid_tuple(const LieAlgebra& g, std::mt19937_64& rng, const GeneratorOptions& opt);

enum class InvalidKind { NonSymmetric, Loop, ConstraintBroken, LogViolation };
std::string to_string(InvalidKind k);
// A valid tuple perturbed so that exactly the named condition breaks first; n >= 3 for Loop.
JetTuple invalid_tuple(const LieAlgebra& g, InvalidKind k, std::mt19937_64& rng, int n);

// ---- finite-order perfectness and reconstruction -------------------------

struct PerfectnessReport {
  std::size_t rows = 0, cols = 0, rank = 0, expected = 0;
};
// Rows e_a^(l), -L <= l <= L, outside Ad_phi(g_O); columns twisted disk one-forms e^a z^{m - w_a}, 0 <= m <= P.
PerfectnessReport truncated_perfectness(const LieAlgebra& g, const TwistData& t, int L, int P);

// Table of lambda on monomials e_{i_1}^(l_1) ... e_{i_r}^(l_r); keys are ((i_1,l_1),...).
using LambdaTable = std::map<std::vector<std::pair<int, int>>, Scalar>;
LambdaTable lambda_table(const LieAlgebra& g, const JetTuple& w, int L);

struct ReconstructResult {
  bool ok = false;
  std::string message;
  int pole_bound = 0;       // B(L,n): exponent of z_m in the common denominator
  int numerator_degree = 0;  // per-variable numerator degree of the ansatz
  JetTuple tuple;
  std::optional<std::vector<std::pair<int, int>>> witness;  // violated commutator relation
};
// n <= 2.
ReconstructResult reconstruct_psi_k(const LieAlgebra& g, const LambdaTable& lambda, int n, int L);

}  // namespace logres
