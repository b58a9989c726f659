#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "logres/coeff.hpp"
#include "logres/diffring.hpp"
#include "logres/liealg.hpp"
#include "logres/linalg.hpp"

namespace logres {

using Word = std::vector<int>;
using WordVec = std::map<Word, Scalar>;

WordVec expand_words(const FieldSpec& f, const BracketExpr& b);

// Multilinear Lie polynomial on letters 1..n.
struct LieElement {
  FieldSpec field;
  int n = 0;
  std::vector<std::pair<Scalar, BracketExpr>> terms;

  LieElement(const FieldSpec& f, int n_) : field(f), n(n_) {}
  static LieElement monomial(const FieldSpec& f, const BracketExpr& b);
  void add(const Scalar& c, const BracketExpr& b);
  const WordVec& expansion() const;

 private:
  mutable std::shared_ptr<WordVec> cache_;
};

// sigma in S_{n-1} in lexicographic order; x_sigma = [s_1,[s_2,...,[s_{n-1},n]...]].
std::vector<std::vector<int>> lie_basis_sequences(int n);
BracketExpr lie_basis_element(const std::vector<int>& sigma);

int lie_dim(int n, const FieldSpec& f = FieldSpec(0));

// Echelonized word expansions of the x_sigma basis.
class LieBasis {
 public:
  LieBasis(const FieldSpec& f, int n);
  int n() const { return n_; }
  std::size_t size() const { return seqs_.size(); }
  const std::vector<std::vector<int>>& sequences() const { return seqs_; }
  std::size_t rank() const { return ech_.rank(); }
  std::vector<Scalar> coordinates(const LieElement& x) const;

 private:
  FieldSpec f_;
  int n_;
  std::vector<std::vector<int>> seqs_;
  SparseEchelon ech_;
};

std::vector<Scalar> jacobi_reduce(const LieElement& x);

// dlog(z_a - z_b) ^ ... with a < b for every factor; sign 0 means the zero form.
class WedgeMonomial {
 public:
  using Edge = std::pair<int, int>;

  WedgeMonomial(int n, const std::vector<Edge>& edges);  // throws on loops or cycles
  static WedgeMonomial zero(int n);

  int nvars() const { return n_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool is_spanning_tree() const;
  std::string to_string() const;

  // Residue along z_i = z_j, variable max(i,j) merged into min(i,j).
  WedgeMonomial residue(const Direction& d) const;

 private:
  WedgeMonomial() = default;
  int n_ = 0;
  int sign_ = 0;
  std::vector<Edge> edges_;
};

std::vector<std::vector<WedgeMonomial::Edge>> spanning_trees(int n);

// Diagonals of the vertices of b, deepest first; each joins the minimal labels of the two branches.
std::vector<Direction> chain_of(const BracketExpr& b);
Scalar res_tree(const WedgeMonomial& m, const std::vector<Direction>& chain, const FieldSpec& f = FieldSpec(0));
// Residues along a partial chain; the result lives on the collapsed vertex set.
WedgeMonomial res_partial(const WedgeMonomial& m, const std::vector<Direction>& chain);

// sign(leaf order) * prod over vertices [L,R] of (-1)^(|R|-1)
int bracket_orientation(const BracketExpr& b);
// Pairing of a bracket monomial with a wedge monomial, compatible with antisymmetry and Jacobi.
Scalar lie_pairing(const BracketExpr& b, const WedgeMonomial& m, const FieldSpec& f = FieldSpec(0));

// Rows: x_sigma in lie_basis_sequences order. Columns: spanning_trees(n) order.
Matrix pairing_matrix(int n, const FieldSpec& f = FieldSpec(0));

// Replace leaf i of b1 by b2.
BracketExpr compose(const BracketExpr& b1, int i, const BracketExpr& b2);

// Logarithmic one-forms sum lambda_e dlog(z_a - z_b) on three points.
using OneForm = std::map<WedgeMonomial::Edge, Scalar>;
Scalar one_form_residue(const OneForm& w, int i, int j);
// Residue along the divisor where all points of `labels` collide.
Scalar collision_residue(const OneForm& w, const std::vector<int>& labels);
bool extends_over_total_collision(const OneForm& w, int n);
// <[[i,j],k], w> = orientation * lambda_ij; defined for n = 3.
Scalar lambda_pairing(const BracketExpr& b, const OneForm& w);

// [xi_{s_1},[...,[xi_{s_{d-1}},xi_d]...]] as an order-one tensor.
GTensor res_of_bracket_image(const LieAlgebra& g, const std::vector<int>& sigma, const std::vector<Vec>& xis);

}  // namespace logres
