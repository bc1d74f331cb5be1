#include "metacover/linalg.hpp"

#include <algorithm>

#include "metacover/error.hpp"

namespace metacover {

RowReducer::RowReducer(std::size_t columns, std::size_t conductor)
    : columns_(columns), conductor_(conductor) {}

std::map<std::size_t, CycNum> RowReducer::reduce(const SparseRow& row) const {
  std::map<std::size_t, CycNum> work;
  for (const auto& [c, v] : row) {
    if (c >= columns_) throw DimensionError("row index out of range");
    if (!v.is_zero()) work.emplace(c, v);
  }
  auto it = work.begin();
  while (it != work.end()) {
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const CycNum factor = it->second;
    for (const auto& [c, v] : piv->second) {
      auto [slot, inserted] = work.try_emplace(c, conductor_);
      slot->second -= factor * v;
      if (slot->second.is_zero()) work.erase(slot);
    }
    it = work.upper_bound(col);
  }
  return work;
}

bool RowReducer::add(const SparseRow& row) {
  auto work = reduce(row);
  if (work.empty()) return false;
  const CycNum inv = work.begin()->second.inverse();
  SparseRow stored;
  stored.reserve(work.size());
  for (auto& [c, v] : work) stored.emplace_back(c, v * inv);
  const std::size_t lead = stored.front().first;
  pivots_.emplace(lead, std::move(stored));
  return true;
}

bool RowReducer::in_span(const SparseRow& row) const { return reduce(row).empty(); }

std::vector<std::size_t> RowReducer::pivot_columns() const {
  std::vector<std::size_t> out;
  for (const auto& [c, r] : pivots_) out.push_back(c);
  return out;
}

std::vector<SparseRow> RowReducer::nullspace() const {
  // Back substitution to reduced row echelon form.
  std::map<std::size_t, std::map<std::size_t, CycNum>> rref;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    std::map<std::size_t, CycNum> work;
    for (const auto& [c, v] : it->second) work.emplace(c, v);
    for (auto w = std::next(work.begin()); w != work.end();) {
      auto lower = rref.find(w->first);
      if (lower == rref.end()) {
        ++w;
        continue;
      }
      const std::size_t col = w->first;
      const CycNum factor = w->second;
      for (const auto& [c, v] : lower->second) {
        auto [slot, inserted] = work.try_emplace(c, conductor_);
        slot->second -= factor * v;
        if (slot->second.is_zero()) work.erase(slot);
      }
      w = work.upper_bound(col);
    }
    rref.emplace(it->first, std::move(work));
  }
  std::map<std::size_t, SparseRow> basis;
  for (std::size_t c = 0; c < columns_; ++c) {
    if (!pivots_.count(c)) basis[c].emplace_back(c, CycNum(conductor_, 1));
  }
  for (const auto& [p, row] : rref) {
    for (const auto& [c, v] : row) {
      if (c == p) continue;
      basis[c].emplace_back(p, -v);
    }
  }
  std::vector<SparseRow> out;
  out.reserve(basis.size());
  for (auto& [c, vec] : basis) {
    std::sort(vec.begin(), vec.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(vec));
  }
  return out;
}

CycMatrix::CycMatrix(std::size_t rows, std::size_t cols, std::size_t conductor)
    : rows_(rows), cols_(cols), conductor_(conductor), data_(rows * cols, CycNum(conductor)) {}

CycMatrix CycMatrix::identity(std::size_t n, std::size_t conductor) {
  CycMatrix m(n, n, conductor);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycNum(conductor, 1);
  return m;
}

bool CycMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

CycMatrix CycMatrix::embed(std::size_t target) const {
  CycMatrix out(rows_, cols_, target);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].embed(target);
  return out;
}

SparseRow CycMatrix::row(std::size_t r) const {
  SparseRow out;
  for (std::size_t c = 0; c < cols_; ++c) {
    const auto& v = (*this)(r, c);
    if (!v.is_zero()) out.emplace_back(c, v);
  }
  return out;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix out(cols_, rows_, conductor_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
  if (a.conductor_ != b.conductor_) throw ConductorError("matrix product: conductors differ");
  CycMatrix out(a.rows_, b.cols_, a.conductor_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const CycNum& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const CycNum& y = b(k, j);
        if (y.is_zero()) continue;
        out(i, j) += x * y;
      }
    }
  }
  return out;
}

CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum: shapes differ");
  CycMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference: shapes differ");
  CycMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

CycMatrix operator*(const CycNum& s, const CycMatrix& a) {
  CycMatrix out = a;
  for (auto& v : out.data_) {
    if (!v.is_zero()) v = s * v;
  }
  return out;
}

bool operator==(const CycMatrix& a, const CycMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::size_t rank(const CycMatrix& m) {
  RowReducer red(m.cols(), m.conductor());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add(m.row(r));
  return red.rank();
}

namespace {

std::vector<CycNum> densify(const SparseRow& row, std::size_t n, std::size_t conductor) {
  std::vector<CycNum> out(n, CycNum(conductor));
  for (const auto& [c, v] : row) out[c] = v;
  return out;
}

}  // namespace

std::vector<std::vector<CycNum>> kernel_basis(const CycMatrix& m) {
  RowReducer red(m.cols(), m.conductor());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add(m.row(r));
  std::vector<std::vector<CycNum>> out;
  for (const auto& v : red.nullspace()) out.push_back(densify(v, m.cols(), m.conductor()));
  return out;
}

std::optional<std::vector<CycNum>> solve(const CycMatrix& m, const std::vector<CycNum>& b) {
  if (b.size() != m.rows()) throw DimensionError("solve: right-hand side has wrong length");
  const std::size_t n = m.cols();
  RowReducer red(n + 1, m.conductor());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow row = m.row(r);
    if (!b[r].is_zero()) row.emplace_back(n, -b[r]);
    red.add(row);
  }
  for (const auto& v : red.nullspace()) {
    if (v.empty() || v.back().first != n) continue;
    const CycNum scale = v.back().second.inverse();
    std::vector<CycNum> x(n, CycNum(m.conductor()));
    for (const auto& [c, val] : v) {
      if (c < n) x[c] = val * scale;
    }
    return x;
  }
  return std::nullopt;
}

std::optional<CycMatrix> inverse(const CycMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  CycMatrix out(n, n, m.conductor());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<CycNum> e(n, CycNum(m.conductor()));
    e[j] = CycNum(m.conductor(), 1);
    auto x = solve(m, e);
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) out(i, j) = (*x)[i];
  }
  if (!(m * out == CycMatrix::identity(n, m.conductor()))) return std::nullopt;
  return out;
}

std::vector<CycMatrix> intertwiner_space(const std::vector<CycMatrix>& lhs,
                                         const std::vector<CycMatrix>& rhs) {
  if (lhs.size() != rhs.size()) throw DimensionError("intertwiner space: generator lists differ in length");
  if (lhs.empty()) throw DimensionError("intertwiner space: no generators");
  const std::size_t p = lhs.front().rows();
  const std::size_t q = rhs.front().rows();
  const std::size_t conductor = lhs.front().conductor();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i].rows() != p || lhs[i].cols() != p || rhs[i].rows() != q || rhs[i].cols() != q) {
      throw DimensionError("intertwiner space: inconsistent dimensions");
    }
    if (lhs[i].conductor() != conductor || rhs[i].conductor() != conductor) {
      throw ConductorError("intertwiner space: conductors differ");
    }
  }
  // Unknown X(k, b) sits at column k * q + b.
  RowReducer red(p * q, conductor);
  for (std::size_t g = 0; g < lhs.size(); ++g) {
    const auto& a = lhs[g];
    const auto& c = rhs[g];
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        std::map<std::size_t, CycNum> eq;
        for (std::size_t k = 0; k < p; ++k) {
          if (!a(i, k).is_zero()) eq.try_emplace(k * q + j, conductor).first->second += a(i, k);
        }
        for (std::size_t k = 0; k < q; ++k) {
          if (!c(k, j).is_zero()) eq.try_emplace(i * q + k, conductor).first->second -= c(k, j);
        }
        SparseRow row;
        for (auto& [col, v] : eq) {
          if (!v.is_zero()) row.emplace_back(col, v);
        }
        if (!row.empty()) red.add(row);
      }
    }
  }
  std::vector<CycMatrix> out;
  for (const auto& v : red.nullspace()) {
    CycMatrix x(p, q, conductor);
    for (const auto& [col, val] : v) x(col / q, col % q) = val;
    out.push_back(std::move(x));
  }
  return out;
}

CycMatrix column_basis(const CycMatrix& m) {
  RowReducer red(m.rows(), m.conductor());
  std::vector<std::size_t> keep;
  const CycMatrix t = m.transpose();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (red.add(t.row(c))) keep.push_back(c);
  }
  CycMatrix out(m.rows(), keep.size(), m.conductor());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, j) = m(r, keep[j]);
  }
  return out;
}

CycMatrix direct_sum(const CycMatrix& a, const CycMatrix& b) {
  if (a.conductor() != b.conductor()) throw ConductorError("direct sum: conductors differ");
  CycMatrix out(a.rows() + b.rows(), a.cols() + b.cols(), a.conductor());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  }
  return out;
}

}  // namespace metacover
