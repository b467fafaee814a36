#pragma once

// Sparse Smith normal form over the integers, and ranks over prime fields.
//
// Elimination pivots on +-1 entries first, choosing the one of least
// Markowitz cost (row length - 1) * (column count - 1), ties broken by
// (row, column). Once no unit entry remains, the entry of least magnitude is
// used and gcd row/column combinations clear its row and column. Arithmetic
// runs in checked 64-bit integers and restarts in GMP integers on overflow.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "matchhom/sparse_matrix.hpp"

namespace matchhom {

/// One elementary unimodular operation on a pair of rows (or columns).
/// axpy: x_i += t * x_j.  mix: (x_i, x_j) <- (a x_i + b x_j, c x_i + d x_j).
/// negate: x_i <- -x_i.
struct ElementaryOp {
  enum class Kind : std::uint8_t { axpy, mix, negate };
  Kind kind = Kind::axpy;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  Integer a, b, c, d;  // axpy uses a as t
};

/// Unimodular U and V with U * M * V = D, kept as operation logs.
class SmithTransforms {
 public:
  SmithTransforms(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t op_count() const { return row_ops_.size() + col_ops_.size(); }

  /// U x for x indexed by rows.
  std::vector<Integer> apply_u(std::vector<Integer> x) const;
  std::vector<Integer> apply_u_inverse(std::vector<Integer> x) const;
  /// V x for x indexed by columns.
  std::vector<Integer> apply_v(std::vector<Integer> x) const;
  std::vector<Integer> apply_v_inverse(std::vector<Integer> x) const;

  /// Row operations as they were applied to M (M <- E M).
  void log_row(ElementaryOp op) { row_ops_.push_back(std::move(op)); }
  /// Column operations as they were applied to M (M <- M F).
  void log_col(ElementaryOp op) { col_ops_.push_back(std::move(op)); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<ElementaryOp> row_ops_;
  std::vector<ElementaryOp> col_ops_;
};

struct SmithOptions {
  bool want_transforms = false;
  /// Abort when the active submatrix holds more nonzeros than this (0 = no cap).
  std::size_t max_entries = 0;
  /// Wall-clock cap in seconds (0 = no cap).
  double max_seconds = 0;
  /// Primes whose field ranks must agree with the integer result.
  std::vector<std::uint32_t> check_primes = {2147483647u};
};

struct SmithPivot {
  std::uint32_t row;
  std::uint32_t col;
};

/// Result of smith_normal_form. Diagonal entries are positive and form a
/// divisibility chain; pivots[k] is where diagonal[k] sits in U*M*V.
struct SmithForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> diagonal;
  std::vector<SmithPivot> pivots;
  std::optional<SmithTransforms> transforms;
  bool used_bignum = false;

  std::size_t rank() const { return diagonal.size(); }
  /// Diagonal entries greater than one.
  std::vector<Integer> invariant_factors() const;
  /// Row index -> position in diagonal, or -1 for rows without a pivot.
  std::vector<long> pivot_of_row() const;
  std::vector<long> pivot_of_col() const;
};

SmithForm smith_normal_form(const SparseIntMatrix& m, const SmithOptions& options = {});

/// Checks U * M * V == D entrywise using the recorded transforms.
bool verify_smith(const SparseIntMatrix& m, const SmithForm& form);

/// Rank over the field with p elements (p prime, p < 2^32).
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const SmithOptions& options = {});

bool is_prime(std::uint64_t p);

}  // namespace matchhom
