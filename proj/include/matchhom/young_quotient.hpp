#pragma once

// Young groups acting on matching complexes by permuting vertices inside
// blocks: orbits of oriented faces, the quotient complex C/G, the projection
// pi and transfer phi, the map kappa onto bounded-degree complexes, and the
// splitting of C/G into a free part and a part of elementary 2-groups.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "matchhom/chain_algebra.hpp"
#include "matchhom/hermite.hpp"
#include "matchhom/homology.hpp"
#include "matchhom/presented.hpp"

namespace matchhom {

/// Vertex permutation as a lookup table; entry 0 is unused.
using Permutation = std::vector<std::uint8_t>;

class YoungAction {
 public:
  explicit YoungAction(BlockPartition partition);
  /// Consecutive blocks for the degree vector.
  static YoungAction from_lambda(std::vector<int> lambda);

  const BlockPartition& partition() const { return partition_; }
  int vertex_count() const { return partition_.total(); }
  std::uint64_t group_order() const { return partition_.group_order(); }
  /// Adjacent transpositions inside each block.
  const std::vector<Permutation>& generators() const { return generators_; }

  Permutation identity() const;
  /// (g * h)(v) = g(h(v)).
  static Permutation compose(const Permutation& g, const Permutation& h);
  Permutation random_element(std::mt19937_64& rng) const;
  bool preserves_blocks(const Permutation& g) const;

  /// Throws InvalidInput unless g preserves every block.
  OrientedSimplex act(const Permutation& g, const OrientedSimplex& s) const;
  ChainVector act(const Permutation& g, const ChainVector& c) const;

 private:
  OrientedSimplex act_unchecked(const Permutation& g, const Simplex& s) const;

  BlockPartition partition_;
  std::vector<Permutation> generators_;
};

enum class OrbitKind : std::uint8_t { free, order2 };
enum class OrbitPart : std::uint8_t { gamma, delta };

struct OrbitClass {
  Simplex representative;  // lexicographic minimum of the orbit
  OrbitKind kind = OrbitKind::free;
  OrbitPart part = OrbitPart::gamma;
  std::size_t size = 0;
};

/// A face s together with the sign e such that s = e * g(representative)
/// for some g. For order-2 orbits the sign carries no information.
struct OrbitMembership {
  OrbitClass orbit;
  int sign = 1;
};

/// Orbit of one face, by closing under the generators.
OrbitMembership orbit_of(const Simplex& s, const YoungAction& action);
/// Every member of the orbit with its sign relative to the representative.
std::vector<std::pair<Simplex, int>> orbit_members(const OrbitClass& orbit, const YoungAction& action);

/// Orbits of the d-faces of a complex, ordered by representative.
struct OrbitDecomposition {
  std::vector<OrbitClass> orbits;
  std::vector<std::uint32_t> orbit_of;  // per face index
  std::vector<std::int8_t> sign_of;     // per face index
};
OrbitDecomposition orbit_decompose(const FreeChainComplex& complex, const YoungAction& action, int d);

/// Element of C/G written on orbit representatives. Coefficients of order-2
/// orbits are kept in {0, 1}.
struct QuotientChain {
  int degree = -1;
  std::map<Simplex, Integer> terms;

  friend bool operator==(const QuotientChain&, const QuotientChain&) = default;
};

/// pi.
QuotientChain project_chain(const ChainVector& c, const YoungAction& action);
/// phi: sum over all g of g(c), taken representative by representative.
ChainVector transfer_chain(const QuotientChain& q, const YoungAction& action);

/// kappa on an oriented simplex, with the sign of sorting the image edges.
/// Throws ParallelEdge on the Delta part.
OrientedSimplex kappa_oriented(const Simplex& s, const BlockPartition& partition);
/// kappa-hat: Gamma-part quotient chain to a chain of the bounded-degree complex.
ChainVector kappa_iso(const QuotientChain& q, const YoungAction& action);
/// mu, the inverse of kappa-hat.
QuotientChain kappa_inverse(const ChainVector& c, const YoungAction& action);

/// The quotient complex C(M_N)/G, with orbit bookkeeping for every degree.
class QuotientComplex {
 public:
  QuotientComplex(const FreeChainComplex& complex, YoungAction action);

  const YoungAction& action() const { return action_; }
  const FreeChainComplex& source() const { return complex_; }
  const PresentedChainComplex& presented() const { return presented_; }
  int min_degree() const { return presented_.min_degree(); }
  int max_degree() const { return presented_.max_degree(); }
  const OrbitDecomposition& orbits(int d) const;

  std::vector<Integer> coordinates(const QuotientChain& q) const;
  QuotientChain from_coordinates(int d, const std::vector<Integer>& x) const;
  /// pi_d as a matrix from face coordinates to orbit coordinates.
  SparseIntMatrix projection_matrix(int d) const;
  /// phi_d as a matrix from orbit coordinates to face coordinates.
  SparseIntMatrix transfer_matrix(int d) const;

 private:
  const FreeChainComplex& complex_;
  YoungAction action_;
  std::vector<OrbitDecomposition> orbits_;
  PresentedChainComplex presented_;
};

struct OrbitCounts {
  int degree = 0;
  std::size_t free = 0, order2 = 0, gamma = 0, delta = 0;
};
std::vector<OrbitCounts> orbit_report(const QuotientComplex& q);

/// The two summands of C/G. Gamma generators are free and listed with the
/// bounded-degree face they map to under kappa; Delta generators have order 2.
struct SplitDecomposition {
  PresentedChainComplex gamma;
  PresentedChainComplex delta;
  std::vector<std::vector<std::uint32_t>> gamma_index;  // quotient index per Gamma generator
  std::vector<std::vector<std::uint32_t>> delta_index;
  std::vector<std::vector<OrientedSimplex>> gamma_faces;
};
/// Throws InternalInvariant if a boundary crosses between the summands.
SplitDecomposition split_decomposition(const QuotientComplex& q);

/// kappa-hat intertwines the Gamma boundaries with those of the bounded-degree
/// complex, generator for generator.
bool check_kappa_chain_map(const SplitDecomposition& split, const FreeChainComplex& bounded);

struct PresentedHomology {
  HomologySummary gamma;            // integral
  HomologySummary delta_mod2;       // dimensions over the 2-element field
  HomologySummary total;            // gamma + (Z_2)^dim
  std::optional<HomologySummary> general;
};
/// Integral homology of the Gamma summand plus mod-2 homology of the Delta
/// summand. With cross_check the general presented path must agree.
PresentedHomology homology_presented(const QuotientComplex& q, bool cross_check = true,
                                     const SmithOptions& options = {});

/// Chains of a presented complex with every generator free.
HomologySummary homology_of_free_part(const PresentedChainComplex& complex, const std::string& id,
                                      const SmithOptions& options = {});

/// Hermite basis of C_d^G, the span of s - g(s). Throws ResourceLimit when the
/// vertex count exceeds max_vertices.
Lattice subcomplex_CG_basis(const FreeChainComplex& complex, const YoungAction& action, int d,
                            int max_vertices = 8);
/// The same lattice from orbits: s - e_s * rep, and 2 * rep for order-2 orbits.
Lattice subcomplex_CG_basis_from_orbits(const FreeChainComplex& complex, const YoungAction& action, int d);

}  // namespace matchhom
