#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "metacover/cyclotomic.hpp"

namespace metacover {

/// Sparse vector over Q(zeta_N): strictly increasing indices, nonzero values.
using SparseRow = std::vector<std::pair<std::size_t, CycNum>>;

/// Incremental exact row echelon form over a single cyclotomic field.
class RowReducer {
 public:
  RowReducer(std::size_t columns, std::size_t conductor);

  /// Reduces the row against the stored pivots and keeps the remainder.
  /// Returns true when the rank grew.
  bool add(const SparseRow& row);
  bool in_span(const SparseRow& row) const;

  std::size_t rank() const { return pivots_.size(); }
  std::size_t columns() const { return columns_; }
  std::size_t conductor() const { return conductor_; }

  /// Basis of the solutions x of r . x = 0 over all added rows, one vector
  /// per non-pivot column in increasing order.
  std::vector<SparseRow> nullspace() const;
  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivot_columns() const;

 private:
  std::map<std::size_t, CycNum> reduce(const SparseRow& row) const;

  std::size_t columns_;
  std::size_t conductor_;
  std::map<std::size_t, SparseRow> pivots_;  // leading entry 1
};

class CycMatrix {
 public:
  CycMatrix() : CycMatrix(0, 0, 1) {}
  CycMatrix(std::size_t rows, std::size_t cols, std::size_t conductor);

  static CycMatrix identity(std::size_t n, std::size_t conductor);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t conductor() const { return conductor_; }

  CycNum& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycNum& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  CycMatrix embed(std::size_t target) const;
  SparseRow row(std::size_t r) const;
  CycMatrix transpose() const;

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b);
  friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b);
  friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b);
  friend CycMatrix operator*(const CycNum& s, const CycMatrix& a);
  friend bool operator==(const CycMatrix& a, const CycMatrix& b);
  friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t conductor_;
  std::vector<CycNum> data_;
};

std::size_t rank(const CycMatrix& m);
/// Basis of {x : m x = 0}.
std::vector<std::vector<CycNum>> kernel_basis(const CycMatrix& m);
/// Some x with m x = b, if one exists.
std::optional<std::vector<CycNum>> solve(const CycMatrix& m, const std::vector<CycNum>& b);
std::optional<CycMatrix> inverse(const CycMatrix& m);
/// Basis of all X with lhs[i] X = X rhs[i] for every i.
std::vector<CycMatrix> intertwiner_space(const std::vector<CycMatrix>& lhs,
                                         const std::vector<CycMatrix>& rhs);
/// Columns of m spanning its column space, as a matrix with rank(m) columns.
CycMatrix column_basis(const CycMatrix& m);
/// Block diagonal sum.
CycMatrix direct_sum(const CycMatrix& a, const CycMatrix& b);

}  // namespace metacover
