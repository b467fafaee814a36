#pragma once

// Graph complexes on a labelled vertex set: matching complexes, bounded-degree
// complexes (loops allowed, a loop counts twice), and the split of a matching
// complex into the parts with and without a pair of "parallel" edges relative
// to a block partition of the vertices.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace matchhom {

/// Largest vertex label supported. Edges pack into 10 bits.
inline constexpr int kMaxVertices = 31;

/// Unordered pair {a, b} of 1-based vertices with a <= b; a loop when a == b.
struct Edge {
  std::uint8_t a = 0;
  std::uint8_t b = 0;

  Edge() = default;
  Edge(int x, int y);

  bool is_loop() const { return a == b; }
  std::uint16_t code() const { return static_cast<std::uint16_t>(a << 5 | b); }
  std::string to_string() const;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A face of a graph complex, identified with its edge set. Edges are kept in
/// strictly increasing lexicographic order; the empty simplex has dimension -1.
class Simplex {
 public:
  Simplex() = default;
  /// Sorts the edges. Duplicate edges are rejected.
  explicit Simplex(std::vector<Edge> edges);
  Simplex(std::initializer_list<Edge> edges) : Simplex(std::vector<Edge>(edges)) {}

  int dimension() const { return static_cast<int>(edges_.size()) - 1; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }

  /// The face obtained by deleting the edge at canonical position i.
  Simplex without(std::size_t i) const;
  bool contains(const Edge& e) const;
  /// Largest vertex label used, 0 for the empty simplex.
  int max_vertex() const;
  /// Number of edge endpoints at v, loops counted twice.
  int degree(int v) const;

  /// Edges as "a-b" tokens separated by single spaces.
  std::string to_string() const;
  static Simplex parse(std::string_view text);

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  struct SortedTag {};
  Simplex(std::vector<Edge> edges, SortedTag) : edges_(std::move(edges)) {}
  friend class SimplexBuilder;

  std::vector<Edge> edges_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Expands "2^6,1^2" into (2,2,2,2,2,2,1,1). Tokens are "v" or "v^k".
std::vector<int> parse_degree_vector(std::string_view text);
std::string format_degree_vector(std::span<const int> lambda);

/// Ordered partition U_1, ..., U_n of [N] with |U_i| = lambda_i.
class BlockPartition {
 public:
  /// U_1 = {1..lambda_1}, U_2 the next lambda_2 labels, and so on.
  static BlockPartition consecutive(std::vector<int> lambda);
  /// U_i = {i, i+n, i+2n, ...}; requires every lambda_i to be equal.
  static BlockPartition interleaved(std::vector<int> lambda);
  static BlockPartition from_blocks(std::vector<std::vector<int>> blocks);
  /// "consecutive", "interleaved", or explicit blocks "1,8/2,9/...".
  static BlockPartition parse(std::string_view text, std::vector<int> lambda);

  int total() const { return static_cast<int>(block_of_.size()) - 1; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  /// 0-based block index i; vertices sorted ascending.
  const std::vector<int>& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  /// 1-based block label of vertex v, i.e. kappa(v).
  int block_of(int v) const { return block_of_[static_cast<std::size_t>(v)]; }
  /// Product of lambda_i!.
  std::uint64_t group_order() const;
  std::string to_string() const;

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> sizes_;
  std::vector<int> block_of_;
};

enum class ComplexKind { matching, bounded, gamma, delta, matching_minus_e };

/// Which member of the graph-complex family to build.
class ComplexSpec {
 public:
  static ComplexSpec matching(int n);
  static ComplexSpec bounded(std::vector<int> lambda);
  /// Matchings on [N] without a parallel pair of edges.
  static ComplexSpec gamma(BlockPartition partition);
  /// Matchings on [N] with a parallel pair of edges (upward closed).
  static ComplexSpec delta(BlockPartition partition);
  /// M_N with the 0-cell {N-1, N} removed.
  static ComplexSpec matching_minus_e(int n);

  ComplexKind kind() const { return kind_; }
  int vertex_count() const { return static_cast<int>(capacity_.size()); }
  /// Degree bound per vertex (1 for the matching kinds).
  const std::vector<int>& capacities() const { return capacity_; }
  bool allows_loops() const { return kind_ == ComplexKind::bounded; }
  const std::optional<BlockPartition>& partition() const { return partition_; }
  /// The deleted edge {N-1, N}; only meaningful for matching_minus_e.
  Edge deleted_edge() const;
  /// Upper bound on face dimension.
  int max_dimension() const;
  /// Human and machine identifier, e.g. "matching(7)" or "bounded(2^7)".
  std::string id() const;

 private:
  ComplexKind kind_ = ComplexKind::matching;
  std::vector<int> capacity_;
  std::optional<BlockPartition> partition_;
};

bool has_parallel_pair(const Simplex& s, const BlockPartition& partition);

/// Membership test. Throws InvalidInput if a vertex lies outside the spec.
bool is_face(const ComplexSpec& spec, const Simplex& s);

/// Streams the d-faces in lexicographic order without materializing them.
void for_each_face(const ComplexSpec& spec, int d, const std::function<void(const Simplex&)>& visit);
std::vector<Simplex> enumerate_faces(const ComplexSpec& spec, int d);

/// f_{-1}, f_0, ..., up to the top nonempty dimension.
std::vector<std::size_t> face_counts(const ComplexSpec& spec);

/// Sorted faces of one dimension with ordinal lookup.
class FaceList {
 public:
  FaceList() = default;
  explicit FaceList(std::vector<Simplex> faces);

  std::size_t size() const { return faces_.size(); }
  const Simplex& operator[](std::size_t i) const { return faces_[i]; }
  std::span<const Simplex> faces() const { return faces_; }
  std::optional<std::uint32_t> find(const Simplex& s) const;
  /// Like find() but throws InternalInvariant when absent.
  std::uint32_t at(const Simplex& s) const;

 private:
  std::vector<Simplex> faces_;
  std::unordered_map<Simplex, std::uint32_t, SimplexHash> index_;
};

/// Face lists for a contiguous range of dimensions. Immutable once built.
class FaceTable {
 public:
  /// All dimensions from -1 to the top.
  explicit FaceTable(ComplexSpec spec);
  FaceTable(ComplexSpec spec, int min_dim, int max_dim);

  const ComplexSpec& spec() const { return spec_; }
  int min_dim() const { return min_dim_; }
  /// Largest dimension present (may be below the requested max when empty).
  int max_dim() const { return min_dim_ + static_cast<int>(lists_.size()) - 1; }
  bool has(int d) const { return d >= min_dim_ && d <= max_dim(); }
  const FaceList& dim(int d) const;
  std::size_t count(int d) const { return has(d) ? dim(d).size() : 0; }

 private:
  ComplexSpec spec_;
  int min_dim_ = -1;
  std::vector<FaceList> lists_;
};

/// Collapses each block to a vertex. Throws ParallelEdge for simplices of the
/// parallel (Delta) part, whose image would repeat an edge.
Simplex kappa_simplex(const Simplex& s, const BlockPartition& partition);

/// A matching in the fiber of kappa over tau, assigning the smallest unused
/// element of each block to each endpoint in edge order.
Simplex kappa_fiber_representative(const Simplex& tau, const BlockPartition& partition);

}  // namespace matchhom
