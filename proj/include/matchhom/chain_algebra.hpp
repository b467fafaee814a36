#pragma once

// Oriented simplices, integer chains, boundary operators with the
// augmentation into degree -1, and wedge products of chains on disjoint
// vertex sets.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matchhom/graph_complexes.hpp"
#include "matchhom/sparse_matrix.hpp"

namespace matchhom {

/// A simplex with an orientation; the ascending edge order carries sign +1.
struct OrientedSimplex {
  Simplex simplex;
  int sign = 1;

  /// Sorts edges given in wedge order; the sign picks up the parity of the
  /// sorting permutation. nullopt when an edge repeats (the wedge vanishes).
  static std::optional<OrientedSimplex> from_wedge(std::vector<Edge> edges);
};

/// Sparse integer combination of simplices, all of one dimension.
class ChainVector {
 public:
  using Terms = std::map<Simplex, Integer>;

  explicit ChainVector(int degree = -1) : degree_(degree) {}

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Simplex& s) const;

  /// Adds c * s, dropping the term if it cancels. Throws on a degree mismatch.
  void add(const Simplex& s, const Integer& c);
  void add(const OrientedSimplex& s, const Integer& c) { add(s.simplex, s.sign * c); }
  /// Adds c times a wedge of edges in the written order.
  void add_wedge(std::vector<Edge> edges, const Integer& c);

  ChainVector& operator+=(const ChainVector& other);
  ChainVector& operator-=(const ChainVector& other);
  ChainVector& operator*=(const Integer& k);
  friend ChainVector operator+(ChainVector a, const ChainVector& b) { return a += b; }
  friend ChainVector operator-(ChainVector a, const ChainVector& b) { return a -= b; }
  friend ChainVector operator*(const Integer& k, ChainVector a) { return a *= k; }

  /// Vertices touched by any term.
  std::vector<int> support_vertices() const;

  friend bool operator==(const ChainVector& a, const ChainVector& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  int degree_;
  Terms terms_;
};

ChainVector boundary_of_simplex(const OrientedSimplex& s);
ChainVector boundary(const ChainVector& c);

/// Bilinear wedge product u ^ v. The two chains must use disjoint vertices.
ChainVector wedge_chains(const ChainVector& u, const ChainVector& v);

/// Column j holds the boundary of face j of dimension d, rows indexed by the
/// (d-1)-faces. d = 0 gives the augmentation row.
SparseIntMatrix assemble_boundary(const FaceList& faces, const FaceList& lower_faces);

/// Chain coordinates of c in a face list; throws if a simplex is missing.
std::vector<Integer> chain_to_coordinates(const ChainVector& c, const FaceList& faces);
ChainVector coordinates_to_chain(const std::vector<Integer>& x, const FaceList& faces, int degree);

/// Reduced simplicial chain complex of one graph complex: faces from -1 up,
/// boundaries for every degree whose source and target exist.
class FreeChainComplex {
 public:
  explicit FreeChainComplex(ComplexSpec spec);

  const ComplexSpec& spec() const { return faces_.spec(); }
  const FaceTable& faces() const { return faces_; }
  int min_dim() const { return faces_.min_dim(); }
  int max_dim() const { return faces_.max_dim(); }
  std::size_t rank(int d) const { return faces_.count(d); }
  /// d_d : C_d -> C_{d-1}; an empty matrix of the right shape outside the range.
  const SparseIntMatrix& boundary(int d) const;

 private:
  FaceTable faces_;
  std::vector<SparseIntMatrix> boundaries_;  // index d - min_dim
  SparseIntMatrix empty_;
  mutable std::map<int, SparseIntMatrix> edge_cases_;
};

/// d_{d-1} * d_d == 0 for every consecutive pair.
bool check_d_squared(const std::vector<SparseIntMatrix>& boundaries);
bool check_d_squared(const FreeChainComplex& complex);

/// Line-oriented chain document:
///   chain <name>
///   degree <d>
///   terms <count>
///   <coefficient> <a-b> <a-b> ...
///   end
/// Terms are written in canonical simplex order.
void write_chain(std::ostream& out, const std::string& name, const ChainVector& c);
std::string format_chain(const std::string& name, const ChainVector& c);
struct NamedChain {
  std::string name;
  ChainVector chain;
};
std::vector<NamedChain> read_chains(std::istream& in);
std::vector<NamedChain> parse_chains(const std::string& text);

/// "dim d" header followed by one face per line.
void write_faces(std::ostream& out, int d, const std::vector<Simplex>& faces);

}  // namespace matchhom
