#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "logres/coeff.hpp"

namespace logres {

using MultiIndex = std::vector<int>;

// Linear combination of divided-power monomials x^[q].
struct PDElem {
  FieldSpec field;
  int nvars = 0;
  std::map<MultiIndex, Scalar> terms;

  PDElem() = default;
  PDElem(const FieldSpec& f, int k) : field(f), nvars(k) {}
  static PDElem monomial(const FieldSpec& f, const MultiIndex& q, const Scalar& c);
  static PDElem one(const FieldSpec& f, int k);

  bool is_zero() const { return terms.empty(); }
  Scalar constant_term() const;
  void add(const MultiIndex& q, const Scalar& c);
  PDElem& operator+=(const PDElem& o);
  PDElem operator+(const PDElem& o) const;
  PDElem operator-(const PDElem& o) const;
  PDElem operator*(const Scalar& s) const;
  bool operator==(const PDElem& o) const { return nvars == o.nvars && terms == o.terms; }
  std::string to_string() const;
};

PDElem pd_mul(const PDElem& a, const PDElem& b);
PDElem pd_pow(const PDElem& a, int e);
// gamma_n on the augmentation ideal.
PDElem gamma(int n, const PDElem& a);
// gamma_0 .. gamma_n of a
std::vector<PDElem> gammas(int n, const PDElem& a);

// Symmetric polynomial on V^*, in the monomial basis (x^*)^m.
using SymPoly = PDElem;
Scalar pd_pair(const PDElem& a, const SymPoly& b);

std::vector<std::pair<MultiIndex, MultiIndex>> coproduct(const MultiIndex& q);

// Linear combination of the dual-basis operators D_q.
struct CrysOp {
  FieldSpec field;
  int nvars = 0;
  std::map<MultiIndex, Scalar> terms;

  CrysOp() = default;
  CrysOp(const FieldSpec& f, int k) : field(f), nvars(k) {}
  static CrysOp basis(const FieldSpec& f, const MultiIndex& q);
  bool operator==(const CrysOp& o) const { return nvars == o.nvars && terms == o.terms; }
  std::string to_string() const;
};

// <D, x^[q]>
Scalar crys_eval(const CrysOp& d, const MultiIndex& q);
CrysOp crys_compose(const CrysOp& f, const CrysOp& g);

std::vector<MultiIndex> multi_indices_of_degree(int nvars, int degree);

}  // namespace logres
