#include <random>

#include "doctest.h"
#include "matchhom/errors.hpp"
#include "matchhom/homology.hpp"
#include "matchhom/reduction.hpp"
#include "oracles.hpp"

using namespace matchhom;

namespace {

using oracle::Dense;

Dense to_dense(const SparseIntMatrix& m) {
  Dense out(m.rows(), std::vector<oracle::Int>(m.cols(), 0));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (const auto& e : m.column(j)) out[e.row][j] = e.value;
  }
  return out;
}

SparseIntMatrix to_sparse(const Dense& d, std::size_t rows) {
  SparseIntMatrix m(rows, 0);
  const std::size_t cols = d.empty() ? 0 : d[0].size();
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<SparseIntMatrix::Entry> col;
    for (std::size_t i = 0; i < rows; ++i) {
      if (d[i][j] != 0) col.push_back({static_cast<std::uint32_t>(i), d[i][j]});
    }
    m.push_column(std::move(col));
  }
  return m;
}

// Free rank and nontrivial invariant factors of every degree, from dense Smith
// forms of the boundaries.
std::vector<std::pair<std::size_t, std::vector<oracle::Int>>> dense_homology(const std::vector<std::size_t>& counts,
                                                                            const std::vector<Dense>& bd) {
  const std::size_t L = counts.size();
  std::vector<std::size_t> rank(L + 1, 0);
  std::vector<std::vector<oracle::Int>> tors(L + 1);
  for (std::size_t k = 1; k < L; ++k) {
    if (counts[k] == 0 || counts[k - 1] == 0) continue;
    for (const auto& x : oracle::smith_diagonal(bd[k - 1])) {
      if (x == 0) continue;
      ++rank[k];
      if (abs(x) != 1) tors[k].push_back(abs(x));
    }
  }
  std::vector<std::pair<std::size_t, std::vector<oracle::Int>>> out;
  for (std::size_t k = 0; k < L; ++k) {
    auto t = tors[k + 1];
    std::sort(t.begin(), t.end());
    out.emplace_back(counts[k] - rank[k] - rank[k + 1], t);
  }
  return out;
}

}  // namespace

TEST_CASE("reduction agrees with per-matrix elimination") {
  std::vector<ComplexSpec> specs;
  for (int n = 2; n <= 9; ++n) specs.push_back(ComplexSpec::matching(n));
  for (auto lambda : {std::vector<int>{2, 2, 2, 2, 1}, {2, 2, 2, 1, 1, 1}, {3, 2, 2, 1}, {2, 2, 2, 2, 2}}) {
    specs.push_back(ComplexSpec::bounded(lambda));
  }
  HomologyOptions direct;
  direct.reduce = false;
  for (const auto& spec : specs) {
    CAPTURE(spec.id());
    CHECK(homology_free(spec).groups == homology_free(spec, direct).groups);
    for (std::uint32_t p : {2u, 3u}) CHECK(betti_mod_p(spec, p).groups == betti_mod_p(spec, p, direct).groups);
  }
}

TEST_CASE("reduction preserves homology under random changes of basis") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const auto& spec : {ComplexSpec::matching(6), ComplexSpec::bounded({2, 2, 1, 1, 1}), ComplexSpec::matching(7)}) {
    const FaceTable faces(spec);
    std::vector<std::size_t> counts;
    std::vector<Dense> bd;
    for (int d = faces.min_dim(); d <= faces.max_dim(); ++d) {
      counts.push_back(faces.count(d));
      if (d > faces.min_dim()) bd.push_back(to_dense(assemble_boundary(faces.dim(d), faces.dim(d - 1))));
    }
    for (int trial = 0; trial < 4; ++trial) {
      auto b = bd;
      // Basis change e_i <- e_i + t e_j in degree k: column i of d_k gains t
      // times column j, row j of d_{k+1} loses t times row i.
      for (int step = 0; step < 300; ++step) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, counts.size() - 1)(rng);
        if (counts[k] < 2) continue;
        std::uniform_int_distribution<std::size_t> pick(0, counts[k] - 1);
        const std::size_t i = pick(rng), j = pick(rng);
        const int t = coef(rng);
        if (i == j || t == 0) continue;
        if (k >= 1) {
          for (auto& row : b[k - 1]) row[i] += t * row[j];
        }
        if (k + 1 < counts.size()) {
          auto& m = b[k];
          for (std::size_t c = 0; c < m[j].size(); ++c) m[j][c] -= t * m[i][c];
        }
      }
      std::vector<SparseIntMatrix> sparse;
      for (std::size_t k = 0; k < b.size(); ++k) sparse.push_back(to_sparse(b[k], counts[k]));
      const auto r = reduce_complex(faces.min_dim(), counts, sparse);
      std::vector<Dense> rb;
      for (std::size_t k = 0; k < r.boundaries.size(); ++k) {
        rb.push_back(to_dense(r.boundaries[k]));
        if (k + 1 < r.boundaries.size()) CHECK(r.boundaries[k].multiply(r.boundaries[k + 1]).is_zero());
      }
      CAPTURE(spec.id());
      CHECK(dense_homology(counts, b) == dense_homology(r.counts, rb));
      CHECK(r.cancelled > 0);
    }
  }
}

TEST_CASE("reduction honors the entry cap") {
  const FaceTable faces(ComplexSpec::matching(8));
  std::vector<std::size_t> counts;
  std::vector<SparseIntMatrix> bd;
  for (int d = faces.min_dim(); d <= faces.max_dim(); ++d) {
    counts.push_back(faces.count(d));
    if (d > faces.min_dim()) bd.push_back(assemble_boundary(faces.dim(d), faces.dim(d - 1)));
  }
  SmithOptions limits;
  limits.max_entries = 10;
  CHECK_THROWS_AS(reduce_complex(faces.min_dim(), counts, bd, limits), ResourceLimit);
  CHECK_THROWS_AS(reduce_complex(faces.min_dim(), {1}, bd), InvalidInput);
}
