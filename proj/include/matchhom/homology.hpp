#pragma once

// Reduced homology of free chain complexes over the integers and over prime
// fields, orders of homology classes, and explicit torsion generators.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchhom/chain_algebra.hpp"
#include "matchhom/smith.hpp"

namespace matchhom {

/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  /// Normalizes arbitrary cyclic orders (1s dropped) into invariant factors.
  AbelianGroup(std::size_t free_rank, std::vector<Integer> cyclic_orders);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  bool is_zero() const { return free_rank_ == 0 && factors_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  /// Number of invariant factors divisible by p.
  std::size_t p_rank(unsigned long p) const;
  /// Exponent of the torsion subgroup (1 when torsion-free).
  Integer torsion_exponent() const;
  AbelianGroup torsion() const { return AbelianGroup(0, factors_); }

  /// "0", "Z^42", "Z_3^8 + Z^42", "Z_2 + Z_6".
  std::string to_string() const;
  static AbelianGroup parse(const std::string& text);

  friend AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.factors_ == b.factors_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> factors_;
};

/// Homology of one complex, degree by degree.
struct HomologySummary {
  std::string complex_id;
  /// "Z" or "F_p".
  std::string coefficients = "Z";
  int min_degree = -1;
  std::vector<AbelianGroup> groups;  // index d - min_degree
  double seconds = 0;

  int max_degree() const { return min_degree + static_cast<int>(groups.size()) - 1; }
  /// The zero group outside the computed range.
  AbelianGroup at(int d) const;
  /// Field dimensions are stored as free ranks.
  std::size_t dimension(int d) const { return at(d).free_rank(); }
};

struct HomologyOptions {
  SmithOptions smith;
  /// Independent boundary matrices may be reduced concurrently.
  int threads = 1;
  /// Cancel unit pairs across the whole complex before taking Smith forms.
  /// Off means one Smith form per boundary matrix of the original complex.
  bool reduce = true;
};

/// Rank and invariant factors of every boundary matrix of a complex.
struct BoundaryRanks {
  int min_degree = -1;
  std::vector<std::size_t> face_counts;            // index d - min_degree
  std::vector<std::size_t> ranks;                  // rank of d_d
  std::vector<std::vector<Integer>> factors;       // invariant factors of d_d (>1)
};

HomologySummary homology_free(const FreeChainComplex& complex, const HomologyOptions& options = {});
/// Builds faces once and assembles one boundary at a time.
HomologySummary homology_free(const ComplexSpec& spec, const HomologyOptions& options = {});

/// Dimensions of reduced homology with coefficients in the field with p elements.
HomologySummary betti_mod_p(const FreeChainComplex& complex, std::uint32_t p, const HomologyOptions& options = {});
HomologySummary betti_mod_p(const ComplexSpec& spec, std::uint32_t p, const HomologyOptions& options = {});

/// Assembles homology groups from boundary ranks and factors.
HomologySummary summarize(const std::string& id, const BoundaryRanks& ranks);

/// Order of a homology class; nullopt means infinite order.
using ClassOrder = std::optional<Integer>;
std::string to_string(const ClassOrder& order);

/// Smith data of d_{d+1} with transforms, for answering class-order queries
/// about many d-cycles of one complex.
class CycleClassifier {
 public:
  CycleClassifier(const FreeChainComplex& complex, int d, const SmithOptions& options = {});

  int degree() const { return degree_; }
  /// Throws NotACycle when the boundary of z is nonzero.
  ClassOrder class_order(const ChainVector& z) const;
  /// Cycles generating the torsion of H_d, with orders equal to the
  /// invariant factors.
  std::vector<std::pair<ChainVector, Integer>> torsion_generators() const;
  const SmithForm& smith() const { return form_; }

 private:
  const FreeChainComplex& complex_;
  int degree_;
  SmithForm form_;
};

ClassOrder class_order(const ChainVector& z, const FreeChainComplex& complex, int d);
std::vector<std::pair<ChainVector, Integer>> extract_torsion_generators(const FreeChainComplex& complex, int d);

}  // namespace matchhom
