#include "doctest.h"
#include "matchhom/errors.hpp"
#include "matchhom/presented.hpp"

using namespace matchhom;

TEST_CASE("presented path agrees with the free path") {
  for (int n : {5, 7, 8}) {
    const FreeChainComplex c(ComplexSpec::matching(n));
    const auto p = PresentedChainComplex::from_free(c);
    CHECK(p.check_d_squared());
    CHECK(homology_general(p, "m").groups == homology_free(c).groups);
  }
}

TEST_CASE("torsion generators in the chain groups") {
  // C_1 = Z --(1)--> C_0 = Z/2: the map is onto, kernel is 2Z
  PresentedChainComplex p(0, {{2}, {0}}, {SparseIntMatrix(0, 1), SparseIntMatrix::from_dense({{1}})});
  const auto h = homology_general(p, "x");
  CHECK(h.at(0).is_zero());
  CHECK(h.at(1).to_string() == "Z");
  // C_1 = Z --(2)--> C_0 = Z: H_0 = Z_2
  PresentedChainComplex q(0, {{0}, {0}}, {SparseIntMatrix(0, 1), SparseIntMatrix::from_dense({{2}})});
  CHECK(homology_general(q, "y").at(0).to_string() == "Z_2");
  // C_0 = Z/2 alone
  PresentedChainComplex r(0, {{2}}, {SparseIntMatrix(0, 1)});
  CHECK(homology_general(r, "z").at(0).to_string() == "Z_2");
}

TEST_CASE("shape mismatches are rejected") {
  CHECK_THROWS_AS(PresentedChainComplex(0, {{0}, {0}}, {SparseIntMatrix(0, 1), SparseIntMatrix(2, 1)}),
                  InvalidInput);
}

TEST_CASE("induced maps and exactness on 0 -> Z -2-> Z -> Z_2 -> 0") {
  // three one-degree complexes, viewed in degree 0
  auto model = [](std::vector<std::uint32_t> orders) {
    return HomologyModel(SparseIntMatrix(0, orders.size()), {}, SparseIntMatrix(orders.size(), 0), orders);
  };
  const auto a = model({0});
  const auto b = model({0});
  const auto c = model({2});
  const auto times2 = induced_map(a, SparseIntMatrix::from_dense({{2}}), b);
  const auto reduce = induced_map(b, SparseIntMatrix::from_dense({{1}}), c);
  CHECK(compose(reduce, times2).is_zero());
  CHECK(check_exact(times2, reduce));
  const auto id = induced_map(b, SparseIntMatrix::from_dense({{1}}), b);
  CHECK_FALSE(check_exact(times2, id));
  CHECK(times2.minus_multiple_of_identity(2).is_zero());
}
