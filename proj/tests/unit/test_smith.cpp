#include <random>

#include "doctest.h"
#include "matchhom/errors.hpp"
#include "matchhom/smith.hpp"
#include "oracles.hpp"

using namespace matchhom;

namespace {

oracle::Dense to_dense(const SparseIntMatrix& m) {
  oracle::Dense d(m.rows(), std::vector<oracle::Int>(m.cols(), 0));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (const auto& e : m.column(j)) d[e.row][j] = e.value;
  }
  return d;
}

SparseIntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density, long bound) {
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<long> value(-bound, bound);
  std::vector<std::vector<long>> d(rows, std::vector<long>(cols, 0));
  for (auto& r : d) {
    for (auto& x : r) {
      if (coin(rng) < density) x = value(rng);
    }
  }
  return SparseIntMatrix::from_dense(d);
}

std::vector<Integer> sorted_diagonal(const SmithForm& f) {
  auto d = f.diagonal;
  std::sort(d.begin(), d.end());
  return d;
}

/// U M V against D, column by column, using only the transform actions.
bool transforms_diagonalize(const SparseIntMatrix& m, const SmithForm& f) {
  const auto& t = *f.transforms;
  const auto pc = f.pivot_of_col();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Integer> e(m.cols(), 0);
    e[j] = 1;
    const auto vj = t.apply_v(e);
    const auto col = t.apply_u(m.apply(vj));
    for (std::size_t i = 0; i < col.size(); ++i) {
      Integer want = 0;
      if (pc[j] >= 0 && f.pivots[static_cast<std::size_t>(pc[j])].row == i) want = f.diagonal[static_cast<std::size_t>(pc[j])];
      if (col[i] != want) return false;
    }
    if (t.apply_v_inverse(vj) != e) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("invariant factors agree with a dense reference on random matrices") {
  std::mt19937_64 rng(20261017);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 30;
    const std::size_t cols = 1 + rng() % 30;
    const double density = 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
    const auto m = random_matrix(rng, rows, cols, density, 9);
    SmithOptions o;
    o.want_transforms = trial % 4 == 0;
    const auto f = smith_normal_form(m, o);
    CHECK(sorted_diagonal(f) == oracle::smith_diagonal(to_dense(m)));
    for (std::size_t k = 1; k < f.diagonal.size(); ++k) CHECK(f.diagonal[k] % f.diagonal[k - 1] == 0);
    if (o.want_transforms) {
      CHECK(verify_smith(m, f));
      CHECK(transforms_diagonalize(m, f));
    }
  }
}

TEST_CASE("low-rank products keep their torsion") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_matrix(rng, 20, 4, 0.7, 5);
    const auto b = random_matrix(rng, 4, 25, 0.7, 5);
    const auto m = a.multiply(b);
    CHECK(sorted_diagonal(smith_normal_form(m)) == oracle::smith_diagonal(to_dense(m)));
  }
}

TEST_CASE("field ranks agree with dense elimination") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(rng, 1 + rng() % 25, 1 + rng() % 25, 0.4, 9);
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 2147483647u}) CHECK(rank_mod_p(m, p) == oracle::rank_mod(to_dense(m), p));
  }
}

TEST_CASE("large entries take the arbitrary-precision path") {
  const long big = 3037000499L;  // squares overflow 63 bits
  const auto m = SparseIntMatrix::from_dense({{big, big + 1, 3}, {big - 1, big, 5}, {7, 11, big}});
  SmithOptions o;
  o.want_transforms = true;
  const auto f = smith_normal_form(m, o);
  CHECK(sorted_diagonal(f) == oracle::smith_diagonal(to_dense(m)));
  CHECK(verify_smith(m, f));
}

TEST_CASE("caps raise ResourceLimit") {
  std::mt19937_64 rng(3);
  const auto m = random_matrix(rng, 30, 30, 0.9, 9);
  SmithOptions o;
  o.max_entries = 10;
  CHECK_THROWS_AS(smith_normal_form(m, o), ResourceLimit);
}

TEST_CASE("empty and zero matrices") {
  CHECK(smith_normal_form(SparseIntMatrix(0, 5)).rank() == 0);
  CHECK(smith_normal_form(SparseIntMatrix(4, 0)).rank() == 0);
  CHECK(smith_normal_form(SparseIntMatrix(3, 3)).rank() == 0);
  const auto f = smith_normal_form(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}));
  CHECK(f.invariant_factors() == std::vector<Integer>{6});
}

TEST_CASE("primality helper") {
  CHECK(is_prime(2));
  CHECK(is_prime(2147483647ULL));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(2147483649ULL));
}
