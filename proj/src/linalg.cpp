#include "logres/linalg.hpp"

#include <cstdint>

namespace logres {

Matrix::Matrix(const FieldSpec& f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

void Matrix::append_row(const Vec& row) {
  if (row.size() != cols_) throw std::logic_error("row length mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

Vec Matrix::apply(const Vec& x) const {
  Vec y(rows_, Scalar::zero(f_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
  return y;
}

Matrix Matrix::transpose() const {
  Matrix t(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref_q(std::vector<std::vector<mpq_class>>& a, std::size_t cols) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t s = r;
    while (s < a.size() && sgn(a[s][c]) == 0) ++s;
    if (s == a.size()) continue;
    std::swap(a[s], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

std::vector<std::size_t> rref_p(std::vector<std::vector<std::uint64_t>>& a, std::size_t cols,
                                std::uint64_t p) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t s = r;
    while (s < a.size() && a[s][c] == 0) ++s;
    if (s == a.size()) continue;
    std::swap(a[s], a[r]);
    std::uint64_t inv = inv_mod(a[r][c], p);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = p - a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j]) a[i][j] = (a[i][j] + f * a[r][j]) % p;
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// Row-reduces [m | extra columns] and returns the reduced rows as Scalars.
struct Reduced {
  std::vector<Vec> rows;
  std::vector<std::size_t> piv;
};

Reduced reduce(const Matrix& m, const std::vector<Vec>& extra_cols) {
  const FieldSpec& f = m.field();
  std::size_t cols = m.cols() + extra_cols.size();
  Reduced out;
  if (f.is_rational()) {
    std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(cols));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).rational();
      for (std::size_t k = 0; k < extra_cols.size(); ++k) a[i][m.cols() + k] = extra_cols[k][i].rational();
    }
    out.piv = rref_q(a, cols);
    for (auto& row : a) {
      Vec v;
      v.reserve(cols);
      for (auto& x : row) v.emplace_back(f, x);
      out.rows.push_back(std::move(v));
    }
  } else {
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).residue();
      for (std::size_t k = 0; k < extra_cols.size(); ++k) a[i][m.cols() + k] = extra_cols[k][i].residue();
    }
    out.piv = rref_p(a, cols, f.characteristic());
    for (auto& row : a) {
      Vec v;
      v.reserve(cols);
      for (auto x : row) v.emplace_back(f, static_cast<long>(x));
      out.rows.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

std::size_t rank(const Matrix& m) { return reduce(m, {}).piv.size(); }

std::vector<Vec> nullspace(const Matrix& m) {
  Reduced r = reduce(m, {});
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : r.piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    Vec x(m.cols(), Scalar::zero(m.field()));
    x[free] = Scalar::one(m.field());
    for (std::size_t k = 0; k < r.piv.size(); ++k) x[r.piv[k]] = -r.rows[k][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::logic_error("rhs length mismatch");
  Reduced r = reduce(m, {b});
  if (!r.piv.empty() && r.piv.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), Scalar::zero(m.field()));
  for (std::size_t k = 0; k < r.piv.size(); ++k) x[r.piv[k]] = r.rows[k][m.cols()];
  return x;
}

void axpy(SparseRow& y, const Scalar& a, const SparseRow& x) {
  for (const auto& [c, v] : x) {
    auto it = y.find(c);
    if (it == y.end()) {
      y.emplace(c, a * v);
    } else {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

void SparseEchelon::reduce(SparseRow& row, std::map<std::size_t, Scalar>& coeffs) const {
  for (;;) {
    auto r = row.rbegin();
    auto p = pivots_.end();
    for (; r != row.rend(); ++r) {
      p = pivots_.find(r->first);
      if (p != pivots_.end()) break;
    }
    if (r == row.rend()) return;
    Scalar f = -(r->second / p->second.row.rbegin()->second);
    axpy(row, f, p->second.row);
    for (const auto& [k, v] : p->second.origin) {
      auto& slot = coeffs.try_emplace(k, Scalar::zero(f_)).first->second;
      slot -= f * v;
    }
  }
}

bool SparseEchelon::insert(const SparseRow& row) {
  SparseRow r = row;
  std::map<std::size_t, Scalar> removed;
  // Only the leading term needs to be new for independence.
  while (!r.empty()) {
    auto lead = std::prev(r.end());
    auto it = pivots_.find(lead->first);
    if (it == pivots_.end()) break;
    Scalar f = -(lead->second / it->second.row.rbegin()->second);
    axpy(r, f, it->second.row);
    for (const auto& [k, v] : it->second.origin) {
      auto& slot = removed.try_emplace(k, Scalar::zero(f_)).first->second;
      slot -= f * v;
    }
  }
  std::size_t id = inserted_++;
  if (r.empty()) return false;
  Pivot p;
  p.row = std::move(r);
  for (auto& [k, v] : removed)
    if (!v.is_zero()) p.origin.emplace(k, -v);
  p.origin.emplace(id, Scalar::one(f_));
  std::size_t key = p.row.rbegin()->first;
  pivots_.emplace(key, std::move(p));
  return true;
}

}  // namespace logres
