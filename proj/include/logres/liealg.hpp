#pragma once

#include <map>
#include <string>
#include <vector>

#include "logres/coeff.hpp"
#include "logres/linalg.hpp"

namespace logres {

// Binary bracket expression on leaves labelled by positive integers.
struct BracketExpr {
  int leaf = 0;  // > 0 for a leaf
  std::vector<BracketExpr> kids;

  static BracketExpr letter(int k) { return {k, {}}; }
  static BracketExpr bracket(BracketExpr a, BracketExpr b);
  // [s_1,[s_2,...,[s_{d-1},s_d]...]]
  static BracketExpr left_normed(const std::vector<int>& seq);
  bool is_leaf() const { return leaf > 0; }
  std::vector<int> leaves() const;  // left to right
  int min_leaf() const;
  std::string to_string() const;
  bool operator==(const BracketExpr&) const = default;
};

using GTensor = std::map<std::vector<int>, Scalar>;  // basis-index tuples (0-based) -> coefficient

class LieAlgebra {
 public:
  // consts[i][j] is the coordinate vector of [e_i, e_j]; Jacobi and antisymmetry are checked.
  LieAlgebra(const FieldSpec& f, std::vector<std::string> names, std::vector<std::vector<Vec>> consts);

  static LieAlgebra sl2(const FieldSpec& f);
  static LieAlgebra sl3(const FieldSpec& f);
  static LieAlgebra abelian(const FieldSpec& f, int d);
  static LieAlgebra builtin(const std::string& name, const FieldSpec& f);

  const FieldSpec& field() const { return f_; }
  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;
  const Vec& bracket_basis(int i, int j) const { return c_[i][j]; }
  const Scalar& structure(int i, int j, int q) const { return c_[i][j][q]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec basis_vector(int i) const;
  // Weights of a cocharacter for which every basis vector is a weight vector; empty if none.
  const std::vector<int>& default_weights() const { return weights_; }
  std::string builtin_name() const { return builtin_; }

  // Largest absolute Jacobi residual is zero.
  bool jacobi_holds() const;

 private:
  FieldSpec f_;
  std::vector<std::string> names_;
  std::vector<std::vector<Vec>> c_;
  std::vector<int> weights_;
  std::string builtin_;
};

// xi_1 (x) ... (x) xi_i  ->  xi_1 (x) ... (x) [xi_{i-1}, xi_i]
GTensor phi_lower(const LieAlgebra& g, int i, const GTensor& t);
// Adjoint of phi_lower on the dual side.
GTensor phi_upper(const LieAlgebra& g, int i, const GTensor& s);
// x_1 (x) ... (x) x_d -> A(pattern(x_1,...,x_d)); letters of the pattern are 1..d.
GTensor cobracket_tree(const LieAlgebra& g, const BracketExpr& pattern, const Vec& A);
Vec evaluate_bracket(const LieAlgebra& g, const BracketExpr& pattern, const std::vector<Vec>& xs);
// Matrix with rows indexed by basis covectors e^c and columns by d-tuples (lexicographic).
Matrix cobracket_matrix(const LieAlgebra& g, const BracketExpr& pattern);
bool is_injective_cobracket(const LieAlgebra& g, const BracketExpr& pattern);

Scalar pair(const GTensor& covector, const GTensor& vector);
GTensor permute_slots(const GTensor& t, const std::vector<int>& perm);  // slot k -> slot perm[k]-1
std::vector<std::vector<int>> all_tuples(int dim, int order);

}  // namespace logres
