#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace matchhom {

using Integer = mpz_class;

/// Column-major sparse integer matrix. Columns are sorted by row, no stored zeros.
class SparseIntMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    Integer value;
  };

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t nnz() const;

  std::span<const Entry> column(std::size_t j) const { return columns_[j]; }
  /// Replaces column j. Entries are sorted and zeros dropped; duplicates summed.
  void set_column(std::size_t j, std::vector<Entry> entries);
  /// Appends a column, growing cols() by one.
  void push_column(std::vector<Entry> entries);
  Integer get(std::size_t i, std::size_t j) const;

  SparseIntMatrix transpose() const;
  /// this * other; throws InvalidInput on a shape mismatch.
  SparseIntMatrix multiply(const SparseIntMatrix& other) const;
  std::vector<Integer> apply(std::span<const Integer> x) const;
  bool is_zero() const { return nnz() == 0; }

  /// Dense constructor for tests and small fixtures.
  static SparseIntMatrix from_dense(const std::vector<std::vector<long>>& rows);
  static SparseIntMatrix identity(std::size_t n);

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

}  // namespace matchhom
