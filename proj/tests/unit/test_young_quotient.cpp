#include <random>
#include <set>

#include "doctest.h"
#include "matchhom/errors.hpp"
#include "matchhom/young_quotient.hpp"
#include "oracles.hpp"

using namespace matchhom;

namespace {

struct Case {
  int n;
  std::vector<int> lambda;
};

const std::vector<Case> kCases = {{4, {2, 2}}, {6, {2, 2, 2}}, {6, {3, 2, 1}}, {6, {2, 2, 1, 1}}};

std::vector<Permutation> whole_group(const BlockPartition& p) {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < p.num_blocks(); ++i) blocks.push_back(p.block(i));
  return oracle::young_group(blocks, p.total());
}

/// g applied to s by hand: relabel, then sort with a bubble sort counting swaps.
std::pair<Simplex, int> apply_by_hand(const Permutation& g, const Simplex& s) {
  std::vector<Edge> e;
  for (const auto& x : s.edges()) {
    int a = g[static_cast<std::size_t>(x.a)], b = g[static_cast<std::size_t>(x.b)];
    e.emplace_back(std::min(a, b), std::max(a, b));
  }
  int sign = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j + 1 < e.size() - i; ++j) {
      if (e[j + 1] < e[j]) {
        std::swap(e[j], e[j + 1]);
        sign = -sign;
      }
    }
  }
  return {Simplex(e), sign};
}

QuotientChain random_quotient_chain(std::mt19937_64& rng, const QuotientComplex& q, int d) {
  const auto& orbits = q.orbits(d).orbits;
  std::vector<Integer> x(orbits.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = static_cast<long>(rng() % 11) - 5;
    if (orbits[k].kind == OrbitKind::order2) x[k] = rng() % 2;
  }
  return q.from_coordinates(d, x);
}

}  // namespace

TEST_CASE("orbits agree with the whole group applied face by face") {
  for (const auto& c : kCases) {
    const YoungAction action(BlockPartition::consecutive(c.lambda));
    const auto group = whole_group(action.partition());
    CHECK(group.size() == action.group_order());
    const FreeChainComplex complex(ComplexSpec::matching(c.n));
    for (int d = complex.min_dim(); d <= complex.max_dim(); ++d) {
      const auto dec = orbit_decompose(complex, action, d);
      const auto& faces = complex.faces().dim(d);
      for (std::uint32_t i = 0; i < faces.size(); ++i) {
        std::set<Simplex> orbit;
        bool negated = false;
        for (const auto& g : group) {
          auto [t, sign] = apply_by_hand(g, faces[i]);
          orbit.insert(t);
          if (t == faces[i] && sign == -1) negated = true;
        }
        const auto& cls = dec.orbits[dec.orbit_of[i]];
        CHECK(cls.representative == *orbit.begin());
        CHECK(cls.size == orbit.size());
        CHECK((cls.kind == OrbitKind::order2) == negated);
        CHECK((cls.part == OrbitPart::delta) == has_parallel_pair(faces[i], action.partition()));
      }
    }
  }
}

TEST_CASE("orbit signs relate faces to representatives") {
  const YoungAction action(BlockPartition::consecutive({2, 2, 2}));
  const auto group = whole_group(action.partition());
  for (const auto& s : enumerate_faces(ComplexSpec::matching(6), 1)) {
    const auto m = orbit_of(s, action);
    if (m.orbit.kind == OrbitKind::order2) continue;
    bool found = false;
    for (const auto& g : group) {
      auto [t, sign] = apply_by_hand(g, m.orbit.representative);
      if (t == s && sign == m.sign) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("the {12, 34} orbit for lambda = (2,2) is free and lies in Gamma") {
  const YoungAction action(BlockPartition::consecutive({2, 2}));
  const auto m = orbit_of(Simplex{Edge(1, 2), Edge(3, 4)}, action);
  CHECK(m.orbit.kind == OrbitKind::free);
  CHECK(m.orbit.part == OrbitPart::gamma);
  const auto d = orbit_of(Simplex{Edge(1, 3), Edge(2, 4)}, action);
  CHECK(d.orbit.kind == OrbitKind::order2);
  CHECK(d.orbit.part == OrbitPart::delta);
}

TEST_CASE("the action commutes with the boundary") {
  std::mt19937_64 rng(17);
  for (const auto& c : kCases) {
    const YoungAction action(BlockPartition::consecutive(c.lambda));
    const FaceTable t(ComplexSpec::matching(c.n));
    for (int trial = 0; trial < 30; ++trial) {
      const int d = static_cast<int>(rng() % static_cast<unsigned>(t.max_dim() + 1));
      ChainVector x(d);
      for (int k = 0; k < 5; ++k) x.add(t.dim(d)[rng() % t.dim(d).size()], Integer(static_cast<long>(rng() % 5) - 2));
      const auto g = action.random_element(rng);
      CHECK(action.preserves_blocks(g));
      CHECK(boundary(action.act(g, x)) == action.act(g, boundary(x)));
    }
  }
}

TEST_CASE("act rejects permutations that leave the blocks") {
  const YoungAction action(BlockPartition::consecutive({2, 2}));
  Permutation swap13 = {0, 3, 2, 1, 4};
  CHECK_FALSE(action.preserves_blocks(swap13));
  CHECK_THROWS_AS(action.act(swap13, OrientedSimplex{Simplex{Edge(1, 2)}, 1}), InvalidInput);
}

TEST_CASE("pi after phi is multiplication by the group order") {
  std::mt19937_64 rng(23);
  for (const auto& c : kCases) {
    const FreeChainComplex complex(ComplexSpec::matching(c.n));
    const QuotientComplex q(complex, YoungAction(BlockPartition::consecutive(c.lambda)));
    const Integer order(static_cast<unsigned long>(q.action().group_order()));
    for (int trial = 0; trial < 50; ++trial) {
      const int d = complex.min_dim() + static_cast<int>(rng() % static_cast<unsigned>(complex.max_dim() - complex.min_dim() + 1));
      const auto x = random_quotient_chain(rng, q, d);
      const auto back = project_chain(transfer_chain(x, q.action()), q.action());
      QuotientChain want{d, {}};
      for (const auto& [rep, coeff] : x.terms) {
        Integer v = order * coeff;
        if (orbit_of(rep, q.action()).orbit.kind == OrbitKind::order2) v = v % 2;
        if (v != 0) want.terms[rep] = v;
      }
      CHECK(back == want);
    }
  }
}

TEST_CASE("projection and transfer matrices are chain maps") {
  for (const auto& c : kCases) {
    const FreeChainComplex complex(ComplexSpec::matching(c.n));
    const QuotientComplex q(complex, YoungAction(BlockPartition::consecutive(c.lambda)));
    CHECK(q.presented().check_d_squared());
    for (int d = complex.min_dim() + 1; d <= complex.max_dim(); ++d) {
      // phi commutes with the boundary exactly
      CHECK(complex.boundary(d).multiply(q.transfer_matrix(d)) ==
            q.transfer_matrix(d - 1).multiply(q.presented().boundary(d)));
    }
  }
}

TEST_CASE("kappa-hat and mu are inverse on the Gamma part") {
  std::mt19937_64 rng(29);
  for (const auto& lambda : std::vector<std::vector<int>>{{2, 2, 2}, {2, 2, 1, 1}, {3, 2, 1}}) {
    const YoungAction action(BlockPartition::consecutive(lambda));
    const FaceTable bd(ComplexSpec::bounded(lambda));
    for (int d = 0; d <= bd.max_dim(); ++d) {
      for (int trial = 0; trial < 10; ++trial) {
        ChainVector c(d);
        for (int k = 0; k < 4; ++k) c.add(bd.dim(d)[rng() % bd.dim(d).size()], Integer(static_cast<long>(rng() % 7) - 3));
        CHECK(kappa_iso(kappa_inverse(c, action), action) == c);
      }
    }
  }
}

TEST_CASE("splitting into Gamma and Delta parts") {
  for (const auto& c : kCases) {
    const FreeChainComplex complex(ComplexSpec::matching(c.n));
    const QuotientComplex q(complex, YoungAction(BlockPartition::consecutive(c.lambda)));
    const auto split = split_decomposition(q);
    const FreeChainComplex bd(ComplexSpec::bounded(c.lambda));
    CHECK(check_kappa_chain_map(split, bd));
    const auto h = homology_presented(q, true);
    REQUIRE(h.general);
    CHECK(h.general->groups == h.total.groups);
    const auto hb = homology_free(bd);
    for (int d = h.gamma.min_degree; d <= h.gamma.max_degree(); ++d) CHECK(h.gamma.at(d) == hb.at(d));
  }
}

TEST_CASE("the two constructions of C^G agree") {
  for (const auto& c : kCases) {
    const FreeChainComplex complex(ComplexSpec::matching(c.n));
    const YoungAction action(BlockPartition::consecutive(c.lambda));
    for (int d = complex.min_dim(); d <= complex.max_dim(); ++d) {
      auto a = subcomplex_CG_basis(complex, action, d);
      auto b = subcomplex_CG_basis_from_orbits(complex, action, d);
      a.hermite_reduce();
      b.hermite_reduce();
      CHECK(a == b);
      std::size_t free_orbits = 0;
      for (const auto& o : orbit_decompose(complex, action, d).orbits) free_orbits += o.kind == OrbitKind::free;
      CHECK(a.rank() == complex.rank(d) - free_orbits);
    }
  }
  const FreeChainComplex big(ComplexSpec::matching(10));
  CHECK_THROWS_AS(subcomplex_CG_basis(big, YoungAction(BlockPartition::consecutive({2, 2, 2, 2, 2})), 1),
                  ResourceLimit);
}
