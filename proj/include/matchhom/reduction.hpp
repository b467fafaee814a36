#pragma once

// Homology-preserving reduction of a free chain complex. A pair (a, b) with
// <da, b> = +-1 is cancelled: every other cell x with b in dx gets
// dx - <dx, b> <da, b> da, then a and b leave the complex (a also leaves the
// boundaries one degree up). The result is chain homotopy equivalent to the
// input over the integers, hence over every field too.
//
// Pairs of zero Markowitz cost (a cell with a single face, or a face with a
// single coface) are taken first. They cause no fill, and each cancellation
// tends to expose more of them in the neighbouring degrees, which is what
// makes this much cheaper than eliminating each boundary matrix on its own.

#include <cstddef>
#include <vector>

#include "matchhom/smith.hpp"
#include "matchhom/sparse_matrix.hpp"

namespace matchhom {

struct ReducedComplex {
  int min_degree = 0;
  std::vector<std::size_t> counts;          // index d - min_degree
  std::vector<SparseIntMatrix> boundaries;  // [k] is d_{min_degree + k + 1}
  std::size_t cancelled = 0;                // pairs removed
};

/// boundaries[k] maps degree min_degree + k + 1 to min_degree + k; counts has
/// one more entry than boundaries. Honors the entry and time caps of limits.
/// Throws std::overflow_error when a coefficient leaves 32 bits; callers then
/// fall back to the unreduced matrices.
ReducedComplex reduce_complex(int min_degree, std::vector<std::size_t> counts,
                              const std::vector<SparseIntMatrix>& boundaries, const SmithOptions& limits = {});

}  // namespace matchhom
