#pragma once

// Integer lattices in row echelon (Hermite) form. Used for the small dense
// problems: bases of C^G, integer kernels, and subgroup membership tests when
// checking exactness of induced maps.

#include <map>
#include <optional>
#include <vector>

#include "matchhom/sparse_matrix.hpp"

namespace matchhom {

using IntVector = std::vector<Integer>;

class Lattice {
 public:
  explicit Lattice(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds a generator, keeping the basis in echelon form with positive pivots.
  void insert(IntVector v);
  bool contains(IntVector v) const;
  /// Coordinates with respect to basis(), or nullopt when v is not in the lattice.
  std::optional<IntVector> coordinates(IntVector v) const;

  /// Reduces entries above each pivot into [0, pivot). After this the basis
  /// is the unique Hermite normal form of the lattice.
  void hermite_reduce();
  /// Basis vectors ordered by pivot position.
  std::vector<IntVector> basis() const;
  std::vector<std::size_t> pivots() const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.dim_ == b.dim_ && a.rows_ == b.rows_; }

 private:
  std::size_t dim_;
  std::map<std::size_t, IntVector> rows_;  // pivot position -> vector
};

/// Basis of {x : M x = 0} for the matrix whose columns are given.
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& columns, std::size_t rows);

}  // namespace matchhom
