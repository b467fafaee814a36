#include "matchhom/sparse_matrix.hpp"

#include <algorithm>
#include <map>

#include "matchhom/errors.hpp"

namespace matchhom {

std::size_t SparseIntMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseIntMatrix::set_column(std::size_t j, std::vector<Entry> entries) {
  if (j >= columns_.size()) throw InvalidInput("column index out of range");
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (e.row >= rows_) throw InvalidInput("row index out of range");
    if (!merged.empty() && merged.back().row == e.row) {
      merged.back().value += e.value;
    } else {
      merged.push_back(std::move(e));
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == 0; });
  columns_[j] = std::move(merged);
}

void SparseIntMatrix::push_column(std::vector<Entry> entries) {
  columns_.emplace_back();
  set_column(columns_.size() - 1, std::move(entries));
}

Integer SparseIntMatrix::get(std::size_t i, std::size_t j) const {
  const auto& c = columns_.at(j);
  auto it = std::lower_bound(c.begin(), c.end(), i, [](const Entry& e, std::size_t r) { return e.row < r; });
  if (it != c.end() && it->row == i) return it->value;
  return 0;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols(), rows());
  for (std::size_t j = 0; j < cols(); ++j) {
    for (const auto& e : columns_[j]) t.columns_[e.row].push_back({static_cast<std::uint32_t>(j), e.value});
  }
  return t;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& other) const {
  if (cols() != other.rows()) throw InvalidInput("matrix shape mismatch in multiply");
  SparseIntMatrix out(rows(), other.cols());
  std::map<std::uint32_t, Integer> acc;
  for (std::size_t j = 0; j < other.cols(); ++j) {
    acc.clear();
    for (const auto& b : other.columns_[j]) {
      for (const auto& a : columns_[b.row]) acc[a.row] += a.value * b.value;
    }
    std::vector<Entry> col;
    for (auto& [r, v] : acc) {
      if (v != 0) col.push_back({r, v});
    }
    out.columns_[j] = std::move(col);
  }
  return out;
}

std::vector<Integer> SparseIntMatrix::apply(std::span<const Integer> x) const {
  if (x.size() != cols()) throw InvalidInput("vector length mismatch in apply");
  std::vector<Integer> y(rows());
  for (std::size_t j = 0; j < cols(); ++j) {
    if (x[j] == 0) continue;
    for (const auto& e : columns_[j]) y[e.row] += e.value * x[j];
  }
  return y;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long>>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m ? rows[0].size() : 0;
  SparseIntMatrix out(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].size() != n) throw InvalidInput("ragged dense matrix");
      if (rows[i][j] != 0) out.columns_[j].push_back({static_cast<std::uint32_t>(i), Integer(rows[i][j])});
    }
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n) {
  SparseIntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.columns_[i].push_back({static_cast<std::uint32_t>(i), Integer(1)});
  return out;
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols() != b.cols()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto& x = a.columns_[j];
    const auto& y = b.columns_[j];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].row != y[k].row || x[k].value != y[k].value) return false;
    }
  }
  return true;
}

}  // namespace matchhom
