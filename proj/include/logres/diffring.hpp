#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "logres/coeff.hpp"

namespace logres {

using Mono = std::vector<int>;
using Poly = std::map<Mono, Scalar>;

// Orientation of diagonal parameters: Diagonal(i,j) uses u = kDiagonalOrientation*(z_i - z_j).
inline constexpr int kDiagonalOrientation = 1;
// Parshin sign: Res_i Res_j f - Res_j Res_i f = kParshinSign * Res_{z_min=0} Res_{Diag(i,j)} f,
// residues taken innermost first.
inline constexpr int kParshinSign = 1;

// Variables are labelled 1..n. Collapsing a variable never renumbers the rest.
class RingElem {
 public:
  RingElem() = default;
  RingElem(const FieldSpec& f, int nvars);

  static RingElem constant(const FieldSpec& f, int nvars, const Scalar& c);
  static RingElem constant(const FieldSpec& f, int nvars, long c);
  // c * prod z_i^{e_i}; negative exponents go to the denominator.
  static RingElem monomial(const FieldSpec& f, int nvars, const Scalar& c, const std::vector<int>& exps);
  static RingElem var(const FieldSpec& f, int nvars, int i);
  // (z_i - z_j)^k for any integer k, i != j.
  static RingElem diff_power(const FieldSpec& f, int nvars, int i, int j, int k);
  // numerator / (prod z_i^{a_i} prod_{i<j} (z_i - z_j)^{b_ij}); b indexed [i][j] with 1-based pairs.
  static RingElem from_parts(const FieldSpec& f, int nvars, Poly num, std::vector<int> a,
                             const std::map<std::pair<int, int>, int>& b);

  const FieldSpec& field() const { return f_; }
  int nvars() const { return n_; }
  const Poly& numerator() const { return num_; }
  int z_exp(int i) const { return a_[i - 1]; }
  int diff_exp(int i, int j) const;  // exponent of (z_min - z_max) in the denominator
  std::map<std::pair<int, int>, int> diff_exps() const;

  bool is_zero() const { return num_.empty(); }
  bool is_constant() const;
  Scalar constant_value() const;  // requires is_constant()
  bool depends_on(int var) const;
  std::vector<int> variables() const;
  // Degree as a rational function of z_var; nullopt-like INT_MIN for zero.
  int degree_in(int var) const;
  int numerator_degree_in(int var) const;
  int total_pole_order_along_diagonals() const;

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);
  RingElem& operator*=(const Scalar& s);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
  friend RingElem operator*(RingElem a, const Scalar& s) { return a *= s; }
  friend RingElem operator*(const Scalar& s, RingElem a) { return a *= s; }
  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }
  RingElem pow(int e) const;  // e >= 0

  // z_i -> z_{perm[i-1]}.
  RingElem relabel(const std::vector<int>& perm) const;
  // Change the ambient variable count (labels must stay in range).
  RingElem with_nvars(int n) const;
  // f(1/z_1,...,1/z_n) for the listed variables.
  RingElem invert_variables(const std::vector<int>& vars) const;
  // Substitute z_var -> 0 (requires no pole at z_var = 0).
  RingElem at_zero(int var) const;

  std::string to_string() const;

 private:
  void canonicalize();
  int& b(int i, int j) { return b_[i * n_ + j]; }
  int b(int i, int j) const { return b_[i * n_ + j]; }

  FieldSpec f_;
  int n_ = 0;
  Poly num_;
  std::vector<int> a_;
  std::vector<int> b_;  // n*n, upper triangle used
  friend struct RingElemAccess;
};

struct Direction {
  enum class Kind { AtZero, Diagonal };
  Kind kind = Kind::AtZero;
  int i = 1;
  int j = 0;

  static Direction at_zero(int i) { return {Kind::AtZero, i, 0}; }
  static Direction diagonal(int i, int j);
  int removed() const;   // variable that disappears
  int survivor() const;  // surviving variable for a diagonal
  // z_removed = z_survivor + substitution_sign() * u  (diagonals), z_removed = u (AtZero).
  int substitution_sign() const;
  std::string to_string() const;
};

using Expansion = std::vector<std::pair<int, RingElem>>;

int pole_order(const RingElem& f, const Direction& d);
// Nonzero coefficients of u^e for e <= order.
Expansion expand(const RingElem& f, const Direction& d, int order);
RingElem residue(const RingElem& f, const Direction& d);

struct ParshinResult {
  RingElem lhs, rhs;
  Scalar sign;
  bool holds;
};
ParshinResult parshin_check(const RingElem& f, int i, int j);

// Coefficients of z_var^e, e from degree_in(var) down to `lowest`, in the expansion at infinity.
Expansion expand_at_infinity(const RingElem& f, int var, int lowest);
RingElem residue_at_infinity(const RingElem& f, int var);
Scalar residue_at_infinity(const RingElem& f);  // one-variable elements

// value * dz_{vars[0]} ^ ... ^ dz_{vars.back()}
struct TopForm {
  RingElem value;
  std::vector<int> vars;
};
TopForm residue(const TopForm& w, const Direction& d);
// sigma acts by relabelling variables and by the sign of sigma.
TopForm act(const std::vector<int>& perm, const TopForm& w);

int permutation_sign(const std::vector<int>& perm);

}  // namespace logres
