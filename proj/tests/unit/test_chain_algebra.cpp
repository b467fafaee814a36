#include <random>

#include "doctest.h"
#include "matchhom/chain_algebra.hpp"
#include "matchhom/errors.hpp"

using namespace matchhom;

namespace {

ChainVector random_chain(std::mt19937_64& rng, const FaceTable& t, int d, int terms) {
  ChainVector c(d);
  const auto& list = t.dim(d);
  for (int k = 0; k < terms; ++k) c.add(list[rng() % list.size()], Integer(static_cast<long>(rng() % 7) - 3));
  return c;
}

}  // namespace

TEST_CASE("wedge order fixes the sign") {
  auto s = OrientedSimplex::from_wedge({Edge(3, 4), Edge(1, 2)});
  REQUIRE(s);
  CHECK(s->sign == -1);
  CHECK(s->simplex.to_string() == "1-2 3-4");
  auto t = OrientedSimplex::from_wedge({Edge(5, 6), Edge(3, 4), Edge(1, 2)});
  CHECK(t->sign == -1);
  CHECK_FALSE(OrientedSimplex::from_wedge({Edge(1, 2), Edge(1, 2)}));
}

TEST_CASE("boundary drops edges with alternating signs") {
  const ChainVector b = boundary_of_simplex({Simplex{Edge(1, 2), Edge(3, 4), Edge(5, 6)}, 1});
  CHECK(b.coefficient(Simplex{Edge(3, 4), Edge(5, 6)}) == 1);
  CHECK(b.coefficient(Simplex{Edge(1, 2), Edge(5, 6)}) == -1);
  CHECK(b.coefficient(Simplex{Edge(1, 2), Edge(3, 4)}) == 1);
  // reduced: a vertex has the empty face as boundary
  CHECK(boundary_of_simplex({Simplex{Edge(1, 2)}, 1}).coefficient(Simplex{}) == 1);
}

TEST_CASE("boundary squares to zero") {
  std::mt19937_64 rng(5);
  for (const auto& spec : {ComplexSpec::matching(8), ComplexSpec::bounded({2, 2, 2, 2, 1})}) {
    const FaceTable t(spec);
    for (int d = 1; d <= t.max_dim(); ++d) {
      for (int k = 0; k < 20; ++k) CHECK(boundary(boundary(random_chain(rng, t, d, 6))).is_zero());
    }
    CHECK(check_d_squared(FreeChainComplex(spec)));
  }
}

TEST_CASE("boundary matrix columns are boundaries of faces") {
  const FreeChainComplex c(ComplexSpec::bounded({2, 2, 1, 1}));
  for (int d = 0; d <= c.max_dim(); ++d) {
    const auto& faces = c.faces().dim(d);
    for (std::uint32_t j = 0; j < faces.size(); ++j) {
      const ChainVector b = boundary_of_simplex({faces[j], 1});
      std::vector<Integer> e(faces.size(), 0);
      e[j] = 1;
      CHECK(coordinates_to_chain(c.boundary(d).apply(e), c.faces().dim(d - 1), d - 1) == b);
    }
  }
}

TEST_CASE("wedge is bilinear and keeps cycles") {
  ChainVector u(0), v(0);
  u.add(Simplex{Edge(1, 2)}, 1);
  v.add(Simplex{Edge(3, 4)}, 1);
  v.add(Simplex{Edge(4, 5)}, -1);
  const auto w = wedge_chains(u, v);
  CHECK(w.size() == 2);
  CHECK(w.coefficient(Simplex{Edge(1, 2), Edge(3, 4)}) == 1);
  CHECK(w.coefficient(Simplex{Edge(1, 2), Edge(4, 5)}) == -1);

  ChainVector a(0), b(0);
  a.add(Simplex{Edge(1, 2)}, 1);
  a.add(Simplex{Edge(3, 4)}, -1);
  b.add(Simplex{Edge(5, 6)}, 1);
  b.add(Simplex{Edge(7, 8)}, -1);
  REQUIRE(boundary(a).is_zero());
  CHECK(boundary(wedge_chains(a, b)).is_zero());
  CHECK_THROWS_AS(wedge_chains(a, a), InvalidInput);
}

TEST_CASE("chain documents round trip exactly") {
  std::mt19937_64 rng(9);
  const FaceTable t(ComplexSpec::matching(7));
  const auto c = random_chain(rng, t, 2, 10);
  ChainVector big(1);
  big.add(Simplex{Edge(1, 2), Edge(3, 4)}, Integer("123456789012345678901234567890"));
  const std::string text = format_chain("x", c) + format_chain("big", big);
  const auto back = parse_chains(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].name == "x");
  CHECK(back[0].chain == c);
  CHECK(back[1].chain == big);
  CHECK(format_chain("x", back[0].chain) + format_chain("big", back[1].chain) == text);
  CHECK_THROWS_AS(parse_chains("chain z\ndegree 1\nterms 1\n1 1-2\nend\n"), InvalidInput);
}
