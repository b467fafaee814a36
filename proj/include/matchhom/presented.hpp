#pragma once

// Chain complexes whose chain groups are finitely presented: each generator
// is free or has a finite order (2 for orbits that the group maps to their
// negatives). Homology is computed with explicit coordinates so that maps
// between homology groups can be written down and compared.

#include <cstdint>
#include <string>
#include <vector>

#include "matchhom/chain_algebra.hpp"
#include "matchhom/homology.hpp"

namespace matchhom {

/// Per-degree generators with orders (0 = free) and boundary matrices.
/// Boundary entries in rows of order-m generators are only meaningful mod m.
class PresentedChainComplex {
 public:
  PresentedChainComplex(int min_degree, std::vector<std::vector<std::uint32_t>> orders,
                        std::vector<SparseIntMatrix> boundaries);
  static PresentedChainComplex from_free(const FreeChainComplex& complex);

  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(orders_.size()) - 1; }
  std::size_t rank(int d) const;
  /// Generator orders in degree d; empty outside the range.
  const std::vector<std::uint32_t>& orders(int d) const;
  std::size_t torsion_count(int d) const;
  /// d_d; d_{max+1} is the zero map from the zero group, other degrees
  /// outside the range give an empty matrix.
  const SparseIntMatrix& boundary(int d) const;

  /// d_{d-1} d_d lands in the relations, and the boundary of m * g lands in
  /// the relations for every generator g of order m.
  bool check_d_squared() const;

 private:
  int min_degree_;
  std::vector<std::vector<std::uint32_t>> orders_;
  std::vector<SparseIntMatrix> boundaries_;
  SparseIntMatrix top_;
  SparseIntMatrix empty_;
  std::vector<std::uint32_t> none_;
};

/// H_d of a presented complex with coordinates: the group is
/// Z/orders[0] + ... with order 0 meaning a free coordinate. Torsion
/// coordinates come first, in divisibility order.
class HomologyModel {
 public:
  /// d_in = d_d with lower_orders the orders in degree d-1; d_out = d_{d+1}
  /// with orders the orders in degree d.
  HomologyModel(const SparseIntMatrix& d_in, std::vector<std::uint32_t> lower_orders, const SparseIntMatrix& d_out,
                std::vector<std::uint32_t> orders, const SmithOptions& options = {});
  HomologyModel(const PresentedChainComplex& complex, int d, const SmithOptions& options = {});

  const AbelianGroup& group() const { return group_; }
  std::size_t size() const { return coord_order_.size(); }
  const std::vector<Integer>& coordinate_orders() const { return coord_order_; }
  std::size_t chain_rank() const { return chain_rank_; }

  /// Homology coordinates of a cycle given in chain coordinates; torsion
  /// coordinates reduced into [0, order). Throws NotACycle.
  std::vector<Integer> classify(const std::vector<Integer>& x) const;
  /// A cycle representing coordinate k.
  std::vector<Integer> generator(std::size_t k) const;

 private:
  std::vector<Integer> kernel_coordinates(const std::vector<Integer>& x) const;

  std::size_t chain_rank_ = 0;
  SparseIntMatrix d_in_;
  std::vector<std::uint32_t> lower_orders_;
  std::vector<std::uint32_t> orders_;
  SmithForm kernel_form_;
  std::vector<std::uint32_t> kernel_cols_;
  SmithForm quotient_form_;
  std::vector<std::uint32_t> coord_rows_;
  std::vector<Integer> coord_order_;
  AbelianGroup group_;
};

/// Homomorphism between homology groups in model coordinates: column j is
/// the image of coordinate generator j.
struct GroupHom {
  std::vector<Integer> source_orders;
  std::vector<Integer> target_orders;
  std::vector<std::vector<Integer>> columns;

  /// The zero map in the quotient sense (every column reduces to 0).
  bool is_zero() const;
  friend GroupHom compose(const GroupHom& second, const GroupHom& first);
  /// this - k * identity; requires equal source and target.
  GroupHom minus_multiple_of_identity(const Integer& k) const;
};

/// H_d(f) for a chain map given by its degree-d matrix.
GroupHom induced_map(const HomologyModel& source, const SparseIntMatrix& f_d, const HomologyModel& target);

/// Exactness of A -alpha-> B -beta-> C at B: beta alpha = 0 and ker beta is
/// contained in the image of alpha.
bool check_exact(const GroupHom& alpha, const GroupHom& beta);

/// General path: homology of every degree via HomologyModel.
HomologySummary homology_general(const PresentedChainComplex& complex, const std::string& id,
                                 const SmithOptions& options = {});

}  // namespace matchhom
