#include "matchhom/young_quotient.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "matchhom/errors.hpp"

namespace matchhom {

YoungAction::YoungAction(BlockPartition partition) : partition_(std::move(partition)) {
  for (int i = 0; i < partition_.num_blocks(); ++i) {
    const auto& b = partition_.block(i);
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      Permutation g = identity();
      g[static_cast<std::size_t>(b[k])] = static_cast<std::uint8_t>(b[k + 1]);
      g[static_cast<std::size_t>(b[k + 1])] = static_cast<std::uint8_t>(b[k]);
      generators_.push_back(std::move(g));
    }
  }
}

YoungAction YoungAction::from_lambda(std::vector<int> lambda) {
  return YoungAction(BlockPartition::consecutive(std::move(lambda)));
}

Permutation YoungAction::identity() const {
  Permutation g(static_cast<std::size_t>(vertex_count()) + 1);
  std::iota(g.begin(), g.end(), 0);
  return g;
}

Permutation YoungAction::compose(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) throw InvalidInput("composing permutations of different sizes");
  Permutation out(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) out[v] = g[h[v]];
  return out;
}

Permutation YoungAction::random_element(std::mt19937_64& rng) const {
  Permutation g = identity();
  for (int i = 0; i < partition_.num_blocks(); ++i) {
    auto images = partition_.block(i);
    std::shuffle(images.begin(), images.end(), rng);
    const auto& b = partition_.block(i);
    for (std::size_t k = 0; k < b.size(); ++k) {
      g[static_cast<std::size_t>(b[k])] = static_cast<std::uint8_t>(images[k]);
    }
  }
  return g;
}

bool YoungAction::preserves_blocks(const Permutation& g) const {
  const auto n = static_cast<std::size_t>(vertex_count());
  if (g.size() != n + 1) return false;
  std::vector<bool> hit(n + 1, false);
  for (std::size_t v = 1; v <= n; ++v) {
    const int w = g[v];
    if (w < 1 || static_cast<std::size_t>(w) > n || hit[static_cast<std::size_t>(w)]) return false;
    hit[static_cast<std::size_t>(w)] = true;
    if (partition_.block_of(w) != partition_.block_of(static_cast<int>(v))) return false;
  }
  return true;
}

OrientedSimplex YoungAction::act_unchecked(const Permutation& g, const Simplex& s) const {
  std::vector<Edge> edges;
  edges.reserve(s.size());
  for (const auto& e : s.edges()) edges.emplace_back(g[e.a], g[e.b]);
  auto out = OrientedSimplex::from_wedge(std::move(edges));
  if (!out) throw InternalInvariant("a permutation merged two edges");
  return *out;
}

OrientedSimplex YoungAction::act(const Permutation& g, const OrientedSimplex& s) const {
  if (!preserves_blocks(g)) throw InvalidInput("permutation does not preserve the blocks");
  if (s.simplex.max_vertex() > vertex_count()) throw InvalidInput("simplex uses a vertex outside the partition");
  auto out = act_unchecked(g, s.simplex);
  out.sign *= s.sign;
  return out;
}

ChainVector YoungAction::act(const Permutation& g, const ChainVector& c) const {
  if (!preserves_blocks(g)) throw InvalidInput("permutation does not preserve the blocks");
  ChainVector out(c.degree());
  for (const auto& [s, coef] : c.terms()) {
    if (s.max_vertex() > vertex_count()) throw InvalidInput("simplex uses a vertex outside the partition");
    out.add(act_unchecked(g, s), coef);
  }
  return out;
}

namespace {

struct Closure {
  std::vector<std::pair<Simplex, int>> members;  // signs relative to the start
  bool reversed = false;
};

Closure close_orbit(const Simplex& start, const YoungAction& action) {
  if (start.max_vertex() > action.vertex_count()) throw InvalidInput("simplex uses a vertex outside the partition");
  Closure out;
  std::unordered_map<Simplex, int, SimplexHash> seen;
  seen.emplace(start, 1);
  out.members.emplace_back(start, 1);
  for (std::size_t head = 0; head < out.members.size(); ++head) {
    const Simplex cur = out.members[head].first;
    const int sign = out.members[head].second;
    for (const auto& g : action.generators()) {
      std::vector<Edge> edges;
      edges.reserve(cur.size());
      for (const auto& e : cur.edges()) edges.emplace_back(g[e.a], g[e.b]);
      const auto t = OrientedSimplex::from_wedge(std::move(edges));
      const int s = sign * t->sign;
      auto [it, inserted] = seen.emplace(t->simplex, s);
      if (inserted) {
        out.members.emplace_back(t->simplex, s);
      } else if (it->second != s) {
        out.reversed = true;
      }
    }
  }
  return out;
}

OrbitPart part_of(const Simplex& s, const BlockPartition& p) {
  return has_parallel_pair(s, p) ? OrbitPart::delta : OrbitPart::gamma;
}

Integer reduce_mod2(const Integer& v) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), 2);
  return r;
}

}  // namespace

OrbitMembership orbit_of(const Simplex& s, const YoungAction& action) {
  const auto c = close_orbit(s, action);
  const auto best = std::min_element(c.members.begin(), c.members.end(),
                                     [](const auto& x, const auto& y) { return x.first < y.first; });
  OrbitMembership m;
  m.orbit.representative = best->first;
  m.orbit.kind = c.reversed ? OrbitKind::order2 : OrbitKind::free;
  m.orbit.part = part_of(best->first, action.partition());
  m.orbit.size = c.members.size();
  // best = e * h(s), so s = e * h^-1(best)
  m.sign = best->second;
  return m;
}

std::vector<std::pair<Simplex, int>> orbit_members(const OrbitClass& orbit, const YoungAction& action) {
  auto members = close_orbit(orbit.representative, action).members;
  std::sort(members.begin(), members.end());
  return members;
}

OrbitDecomposition orbit_decompose(const FreeChainComplex& complex, const YoungAction& action, int d) {
  if (complex.spec().vertex_count() != action.vertex_count()) {
    throw InvalidInput("action and complex have different vertex counts");
  }
  OrbitDecomposition out;
  if (!complex.faces().has(d)) return out;
  const auto& faces = complex.faces().dim(d);
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  out.orbit_of.assign(faces.size(), kUnset);
  out.sign_of.assign(faces.size(), 0);
  for (std::uint32_t i = 0; i < faces.size(); ++i) {
    if (out.orbit_of[i] != kUnset) continue;
    // the first unvisited face in lexicographic order is its orbit's minimum
    const auto c = close_orbit(faces[i], action);
    const auto idx = static_cast<std::uint32_t>(out.orbits.size());
    for (const auto& [s, sign] : c.members) {
      const auto k = faces.at(s);
      out.orbit_of[k] = idx;
      out.sign_of[k] = static_cast<std::int8_t>(sign);
    }
    OrbitClass o;
    o.representative = faces[i];
    o.kind = c.reversed ? OrbitKind::order2 : OrbitKind::free;
    o.part = part_of(faces[i], action.partition());
    o.size = c.members.size();
    out.orbits.push_back(std::move(o));
  }
  return out;
}

QuotientChain project_chain(const ChainVector& c, const YoungAction& action) {
  QuotientChain q;
  q.degree = c.degree();
  std::map<Simplex, OrbitKind> kinds;
  for (const auto& [s, coef] : c.terms()) {
    const auto m = orbit_of(s, action);
    q.terms[m.orbit.representative] += m.sign * coef;
    kinds[m.orbit.representative] = m.orbit.kind;
  }
  for (auto it = q.terms.begin(); it != q.terms.end();) {
    if (kinds[it->first] == OrbitKind::order2) it->second = reduce_mod2(it->second);
    it = it->second == 0 ? q.terms.erase(it) : std::next(it);
  }
  return q;
}

ChainVector transfer_chain(const QuotientChain& q, const YoungAction& action) {
  ChainVector out(q.degree);
  const Integer order(static_cast<unsigned long>(action.group_order()));
  for (const auto& [rep, coef] : q.terms) {
    const auto m = orbit_of(rep, action);
    if (m.orbit.representative != rep) throw InvalidInput(rep.to_string() + " is not an orbit representative");
    // an orientation-reversing stabilizer element cancels the orbit sum
    if (m.orbit.kind == OrbitKind::order2) continue;
    const Integer stab = order / static_cast<unsigned long>(m.orbit.size);
    for (const auto& [s, sign] : orbit_members(m.orbit, action)) out.add(s, sign * stab * coef);
  }
  return out;
}

OrientedSimplex kappa_oriented(const Simplex& s, const BlockPartition& partition) {
  if (s.max_vertex() > partition.total()) throw InvalidInput("simplex uses a vertex outside the partition");
  std::vector<Edge> image;
  image.reserve(s.size());
  for (const auto& e : s.edges()) image.emplace_back(partition.block_of(e.a), partition.block_of(e.b));
  auto out = OrientedSimplex::from_wedge(std::move(image));
  if (!out) throw ParallelEdge("simplex " + s.to_string() + " has a parallel pair of edges");
  return *out;
}

ChainVector kappa_iso(const QuotientChain& q, const YoungAction& action) {
  ChainVector out(q.degree);
  for (const auto& [rep, coef] : q.terms) {
    if (has_parallel_pair(rep, action.partition())) {
      throw InvalidInput("kappa-hat is defined on the Gamma part only; got " + rep.to_string());
    }
    out.add(kappa_oriented(rep, action.partition()), coef);
  }
  return out;
}

QuotientChain kappa_inverse(const ChainVector& c, const YoungAction& action) {
  QuotientChain q;
  q.degree = c.degree();
  for (const auto& [tau, coef] : c.terms()) {
    const Simplex m = kappa_fiber_representative(tau, action.partition());
    const auto image = kappa_oriented(m, action.partition());
    if (image.simplex != tau) throw InternalInvariant("fiber representative does not map back");
    const auto o = orbit_of(m, action);
    q.terms[o.orbit.representative] += image.sign * o.sign * coef;
  }
  for (auto it = q.terms.begin(); it != q.terms.end();) it = it->second == 0 ? q.terms.erase(it) : std::next(it);
  return q;
}

namespace {

std::vector<OrbitDecomposition> decompose_all(const FreeChainComplex& complex, const YoungAction& action) {
  std::vector<OrbitDecomposition> out;
  for (int d = complex.min_dim(); d <= complex.max_dim(); ++d) out.push_back(orbit_decompose(complex, action, d));
  return out;
}

PresentedChainComplex build_presented(const FreeChainComplex& complex, const std::vector<OrbitDecomposition>& orbits) {
  std::vector<std::vector<std::uint32_t>> orders;
  std::vector<SparseIntMatrix> boundaries;
  for (int d = complex.min_dim(); d <= complex.max_dim(); ++d) {
    const auto& od = orbits[static_cast<std::size_t>(d - complex.min_dim())];
    std::vector<std::uint32_t> ord;
    for (const auto& o : od.orbits) ord.push_back(o.kind == OrbitKind::order2 ? 2 : 0);
    const std::size_t below = d == complex.min_dim() ? 0 : orbits[static_cast<std::size_t>(d - 1 - complex.min_dim())].orbits.size();
    SparseIntMatrix m(below, 0);
    if (d > complex.min_dim()) {
      const auto& lower = orbits[static_cast<std::size_t>(d - 1 - complex.min_dim())];
      const auto& faces = complex.faces().dim(d);
      for (const auto& o : od.orbits) {
        std::map<std::uint32_t, Integer> acc;
        for (const auto& e : complex.boundary(d).column(faces.at(o.representative))) {
          acc[lower.orbit_of[e.row]] += lower.sign_of[e.row] * e.value;
        }
        std::vector<SparseIntMatrix::Entry> col;
        for (auto& [row, v] : acc) {
          if (lower.orbits[row].kind == OrbitKind::order2) v = reduce_mod2(v);
          if (v != 0) col.push_back({row, v});
        }
        m.push_column(std::move(col));
      }
    } else {
      for (std::size_t j = 0; j < od.orbits.size(); ++j) m.push_column({});
    }
    orders.push_back(std::move(ord));
    boundaries.push_back(std::move(m));
  }
  return PresentedChainComplex(complex.min_dim(), std::move(orders), std::move(boundaries));
}

}  // namespace

QuotientComplex::QuotientComplex(const FreeChainComplex& complex, YoungAction action)
    : complex_(complex),
      action_(std::move(action)),
      orbits_(decompose_all(complex_, action_)),
      presented_(build_presented(complex_, orbits_)) {}

const OrbitDecomposition& QuotientComplex::orbits(int d) const {
  if (d < min_degree() || d > max_degree()) throw InvalidInput("degree out of range: " + std::to_string(d));
  return orbits_[static_cast<std::size_t>(d - min_degree())];
}

std::vector<Integer> QuotientComplex::coordinates(const QuotientChain& q) const {
  const auto& od = orbits(q.degree);
  std::vector<Integer> x(od.orbits.size());
  const auto& faces = complex_.faces().dim(q.degree);
  for (const auto& [rep, coef] : q.terms) {
    const auto idx = faces.find(rep);
    if (!idx) throw InvalidInput(rep.to_string() + " is not a face of the complex");
    const auto o = od.orbit_of[*idx];
    if (od.orbits[o].representative != rep) throw InvalidInput(rep.to_string() + " is not an orbit representative");
    x[o] = od.orbits[o].kind == OrbitKind::order2 ? reduce_mod2(coef) : coef;
  }
  return x;
}

QuotientChain QuotientComplex::from_coordinates(int d, const std::vector<Integer>& x) const {
  const auto& od = orbits(d);
  if (x.size() != od.orbits.size()) throw InvalidInput("quotient coordinates have the wrong length");
  QuotientChain q;
  q.degree = d;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Integer v = od.orbits[j].kind == OrbitKind::order2 ? reduce_mod2(x[j]) : x[j];
    if (v != 0) q.terms.emplace(od.orbits[j].representative, v);
  }
  return q;
}

SparseIntMatrix QuotientComplex::projection_matrix(int d) const {
  const auto& od = orbits(d);
  SparseIntMatrix m(od.orbits.size(), 0);
  for (std::size_t i = 0; i < od.orbit_of.size(); ++i) {
    const auto o = od.orbit_of[i];
    const int v = od.orbits[o].kind == OrbitKind::order2 ? 1 : od.sign_of[i];
    m.push_column({{o, Integer(v)}});
  }
  return m;
}

SparseIntMatrix QuotientComplex::transfer_matrix(int d) const {
  const auto& od = orbits(d);
  const Integer order(static_cast<unsigned long>(action_.group_order()));
  std::vector<std::vector<SparseIntMatrix::Entry>> cols(od.orbits.size());
  for (std::uint32_t i = 0; i < od.orbit_of.size(); ++i) {
    const auto& o = od.orbits[od.orbit_of[i]];
    if (o.kind == OrbitKind::order2) continue;
    cols[od.orbit_of[i]].push_back({i, od.sign_of[i] * (order / static_cast<unsigned long>(o.size))});
  }
  SparseIntMatrix m(od.orbit_of.size(), 0);
  for (auto& c : cols) m.push_column(std::move(c));
  return m;
}

std::vector<OrbitCounts> orbit_report(const QuotientComplex& q) {
  std::vector<OrbitCounts> out;
  for (int d = q.min_degree(); d <= q.max_degree(); ++d) {
    OrbitCounts c;
    c.degree = d;
    for (const auto& o : q.orbits(d).orbits) {
      (o.kind == OrbitKind::free ? c.free : c.order2) += 1;
      (o.part == OrbitPart::gamma ? c.gamma : c.delta) += 1;
    }
    out.push_back(c);
  }
  return out;
}

SplitDecomposition split_decomposition(const QuotientComplex& q) {
  const auto& pc = q.presented();
  std::vector<std::vector<std::uint32_t>> gamma_idx, delta_idx;
  std::vector<std::vector<OrientedSimplex>> gamma_faces;
  std::vector<std::vector<std::uint32_t>> local;  // quotient index -> index within its summand
  for (int d = pc.min_degree(); d <= pc.max_degree(); ++d) {
    const auto& od = q.orbits(d);
    std::vector<std::uint32_t> g, dl, loc(od.orbits.size());
    std::vector<OrientedSimplex> gf;
    for (std::uint32_t j = 0; j < od.orbits.size(); ++j) {
      const auto& o = od.orbits[j];
      if (o.part == OrbitPart::gamma) {
        if (o.kind != OrbitKind::free) throw InternalInvariant("Gamma orbit of " + o.representative.to_string() + " has order 2");
        loc[j] = static_cast<std::uint32_t>(g.size());
        g.push_back(j);
        gf.push_back(kappa_oriented(o.representative, q.action().partition()));
      } else {
        if (o.kind != OrbitKind::order2) throw InternalInvariant("Delta orbit of " + o.representative.to_string() + " is free");
        loc[j] = static_cast<std::uint32_t>(dl.size());
        dl.push_back(j);
      }
    }
    gamma_idx.push_back(std::move(g));
    delta_idx.push_back(std::move(dl));
    gamma_faces.push_back(std::move(gf));
    local.push_back(std::move(loc));
  }

  auto build = [&](const std::vector<std::vector<std::uint32_t>>& idx, OrbitPart part, std::uint32_t order) {
    std::vector<std::vector<std::uint32_t>> orders;
    std::vector<SparseIntMatrix> bds;
    for (int d = pc.min_degree(); d <= pc.max_degree(); ++d) {
      const auto k = static_cast<std::size_t>(d - pc.min_degree());
      const std::size_t below = k == 0 ? 0 : idx[k - 1].size();
      SparseIntMatrix m(below, 0);
      for (auto j : idx[k]) {
        std::vector<SparseIntMatrix::Entry> col;
        for (const auto& e : pc.boundary(d).column(j)) {
          if (q.orbits(d - 1).orbits[e.row].part != part) {
            throw InternalInvariant("boundary of " + q.orbits(d).orbits[j].representative.to_string() +
                                    " crosses between the Gamma and Delta parts");
          }
          col.push_back({local[k - 1][e.row], e.value});
        }
        m.push_column(std::move(col));
      }
      orders.emplace_back(idx[k].size(), order);
      bds.push_back(std::move(m));
    }
    return PresentedChainComplex(pc.min_degree(), std::move(orders), std::move(bds));
  };

  return SplitDecomposition{build(gamma_idx, OrbitPart::gamma, 0), build(delta_idx, OrbitPart::delta, 2), gamma_idx,
                            delta_idx, gamma_faces};
}

bool check_kappa_chain_map(const SplitDecomposition& split, const FreeChainComplex& bounded) {
  const auto& g = split.gamma;
  std::vector<std::vector<std::uint32_t>> to_bd;
  for (int d = g.min_degree(); d <= g.max_degree(); ++d) {
    const auto k = static_cast<std::size_t>(d - g.min_degree());
    if (g.rank(d) != bounded.rank(d)) return false;
    std::vector<std::uint32_t> map;
    std::vector<bool> hit(bounded.rank(d), false);
    for (const auto& f : split.gamma_faces[k]) {
      const auto idx = bounded.faces().dim(d).find(f.simplex);
      if (!idx || hit[*idx]) return false;
      hit[*idx] = true;
      map.push_back(*idx);
    }
    to_bd.push_back(std::move(map));
  }
  if (bounded.max_dim() > g.max_degree() && bounded.rank(g.max_degree() + 1) != 0) return false;
  for (int d = g.min_degree() + 1; d <= g.max_degree(); ++d) {
    const auto k = static_cast<std::size_t>(d - g.min_degree());
    for (std::size_t j = 0; j < g.rank(d); ++j) {
      std::map<std::uint32_t, Integer> lhs, rhs;
      for (const auto& e : g.boundary(d).column(j)) lhs[to_bd[k - 1][e.row]] += split.gamma_faces[k - 1][e.row].sign * e.value;
      for (const auto& e : bounded.boundary(d).column(to_bd[k][j])) rhs[e.row] += split.gamma_faces[k][j].sign * e.value;
      std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
      std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
      if (lhs != rhs) return false;
    }
  }
  return true;
}

HomologySummary homology_of_free_part(const PresentedChainComplex& complex, const std::string& id,
                                      const SmithOptions& options) {
  BoundaryRanks r;
  r.min_degree = complex.min_degree();
  for (int d = complex.min_degree(); d <= complex.max_degree(); ++d) {
    if (complex.torsion_count(d) != 0) throw InvalidInput("complex has generators of finite order");
    r.face_counts.push_back(complex.rank(d));
    const auto form = smith_normal_form(complex.boundary(d), options);
    r.ranks.push_back(form.rank());
    r.factors.push_back(form.invariant_factors());
  }
  return summarize(id, r);
}

PresentedHomology homology_presented(const QuotientComplex& q, bool cross_check, const SmithOptions& options) {
  const auto split = split_decomposition(q);
  const std::string id = q.source().spec().id() + "/S(" + q.action().partition().to_string() + ")";
  PresentedHomology out;
  out.gamma = homology_of_free_part(split.gamma, id + ":gamma", options);

  BoundaryRanks r;
  r.min_degree = split.delta.min_degree();
  for (int d = split.delta.min_degree(); d <= split.delta.max_degree(); ++d) {
    r.face_counts.push_back(split.delta.rank(d));
    r.ranks.push_back(rank_mod_p(split.delta.boundary(d), 2, options));
    r.factors.emplace_back();
  }
  out.delta_mod2 = summarize(id + ":delta", r);
  out.delta_mod2.coefficients = "F_2";

  out.total.complex_id = id;
  out.total.min_degree = q.min_degree();
  for (int d = q.min_degree(); d <= q.max_degree(); ++d) {
    const AbelianGroup twos(0, std::vector<Integer>(out.delta_mod2.dimension(d), Integer(2)));
    out.total.groups.push_back(direct_sum(out.gamma.at(d), twos));
  }
  if (cross_check) {
    out.general = homology_general(q.presented(), id, options);
    for (int d = q.min_degree(); d <= q.max_degree(); ++d) {
      if (!(out.general->at(d) == out.total.at(d))) {
        throw InternalInvariant("presented homology paths disagree in degree " + std::to_string(d) + ": " +
                                out.total.at(d).to_string() + " vs " + out.general->at(d).to_string());
      }
    }
  }
  return out;
}

Lattice subcomplex_CG_basis(const FreeChainComplex& complex, const YoungAction& action, int d, int max_vertices) {
  if (action.vertex_count() > max_vertices) {
    throw ResourceLimit("C^G basis limited to " + std::to_string(max_vertices) + " vertices");
  }
  const std::size_t n = complex.rank(d);
  Lattice lat(n);
  if (n == 0) return lat;
  const auto& faces = complex.faces().dim(d);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (const auto& g : action.generators()) {
      const auto t = action.act(g, OrientedSimplex{faces[i], 1});
      IntVector v(n);
      v[i] += 1;
      v[faces.at(t.simplex)] -= t.sign;
      lat.insert(std::move(v));
    }
  }
  lat.hermite_reduce();
  return lat;
}

Lattice subcomplex_CG_basis_from_orbits(const FreeChainComplex& complex, const YoungAction& action, int d) {
  const std::size_t n = complex.rank(d);
  Lattice lat(n);
  if (n == 0) return lat;
  const auto od = orbit_decompose(complex, action, d);
  const auto& faces = complex.faces().dim(d);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& o = od.orbits[od.orbit_of[i]];
    const auto rep = faces.at(o.representative);
    IntVector v(n);
    if (rep == i) {
      if (o.kind == OrbitKind::free) continue;
      v[i] = 2;
    } else {
      v[i] = 1;
      v[rep] = -od.sign_of[i];
    }
    lat.insert(std::move(v));
  }
  lat.hermite_reduce();
  return lat;
}

}  // namespace matchhom
