#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "logres/coeff.hpp"

namespace logres {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix(const FieldSpec& f, std::size_t rows, std::size_t cols);
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return f_; }
  void append_row(const Vec& row);
  Vec apply(const Vec& x) const;
  Matrix transpose() const;

 private:
  FieldSpec f_;
  std::size_t rows_, cols_;
  std::vector<Scalar> a_;
};

std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(const Matrix& m);
// Some x with m x = b, or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

// Sparse rows keyed by column; incremental echelon form that also records
// each pivot row as a combination of the inserted rows.
using SparseRow = std::map<std::size_t, Scalar>;

class SparseEchelon {
 public:
  explicit SparseEchelon(const FieldSpec& f) : f_(f) {}
  // Returns true when the row is independent of the earlier ones.
  bool insert(const SparseRow& row);
  std::size_t rank() const { return pivots_.size(); }
  // Reduces `row` against the stored pivots. On return `row` holds the
  // residual and `coeffs` the combination of inserted rows that was removed.
  void reduce(SparseRow& row, std::map<std::size_t, Scalar>& coeffs) const;

 private:
  struct Pivot {
    SparseRow row;
    std::map<std::size_t, Scalar> origin;
  };
  FieldSpec f_;
  std::map<std::size_t, Pivot> pivots_;  // keyed by leading (largest) column
  std::size_t inserted_ = 0;
};

void axpy(SparseRow& y, const Scalar& a, const SparseRow& x);

}  // namespace logres
