#include "matchhom/chain_algebra.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "matchhom/errors.hpp"

namespace matchhom {

std::optional<OrientedSimplex> OrientedSimplex::from_wedge(std::vector<Edge> edges) {
  // insertion sort, counting transpositions
  int sign = 1;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    for (std::size_t j = i; j > 0 && edges[j] < edges[j - 1]; --j) {
      std::swap(edges[j], edges[j - 1]);
      sign = -sign;
    }
  }
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return std::nullopt;
  return OrientedSimplex{Simplex(std::move(edges)), sign};
}

Integer ChainVector::coefficient(const Simplex& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Integer(0) : it->second;
}

void ChainVector::add(const Simplex& s, const Integer& c) {
  if (s.dimension() != degree_) {
    throw InvalidInput("simplex of dimension " + std::to_string(s.dimension()) + " added to a degree-" +
                       std::to_string(degree_) + " chain");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void ChainVector::add_wedge(std::vector<Edge> edges, const Integer& c) {
  if (auto o = OrientedSimplex::from_wedge(std::move(edges))) add(*o, c);
}

ChainVector& ChainVector::operator+=(const ChainVector& other) {
  if (other.is_zero()) return *this;
  if (other.degree_ != degree_) throw InvalidInput("adding chains of different degrees");
  for (const auto& [s, c] : other.terms_) add(s, c);
  return *this;
}

ChainVector& ChainVector::operator-=(const ChainVector& other) {
  if (other.is_zero()) return *this;
  if (other.degree_ != degree_) throw InvalidInput("subtracting chains of different degrees");
  for (const auto& [s, c] : other.terms_) add(s, -c);
  return *this;
}

ChainVector& ChainVector::operator*=(const Integer& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, c] : terms_) c *= k;
  return *this;
}

std::vector<int> ChainVector::support_vertices() const {
  std::set<int> v;
  for (const auto& [s, c] : terms_) {
    for (const auto& e : s.edges()) {
      v.insert(e.a);
      v.insert(e.b);
    }
  }
  return {v.begin(), v.end()};
}

ChainVector boundary_of_simplex(const OrientedSimplex& s) {
  ChainVector out(s.simplex.dimension() - 1);
  if (s.simplex.empty()) throw InvalidInput("the empty simplex has no boundary");
  for (std::size_t i = 0; i < s.simplex.size(); ++i) {
    out.add(s.simplex.without(i), Integer((i % 2 == 0 ? 1 : -1) * s.sign));
  }
  return out;
}

ChainVector boundary(const ChainVector& c) {
  ChainVector out(c.degree() - 1);
  for (const auto& [s, coef] : c.terms()) {
    for (std::size_t i = 0; i < s.size(); ++i) out.add(s.without(i), i % 2 == 0 ? coef : Integer(-coef));
  }
  return out;
}

ChainVector wedge_chains(const ChainVector& u, const ChainVector& v) {
  const auto vu = u.support_vertices();
  const auto vv = v.support_vertices();
  std::vector<int> common;
  std::set_intersection(vu.begin(), vu.end(), vv.begin(), vv.end(), std::back_inserter(common));
  if (!common.empty()) throw InvalidInput("wedge of chains sharing vertex " + std::to_string(common.front()));
  ChainVector out(u.degree() + v.degree() + 1);
  for (const auto& [s, a] : u.terms()) {
    for (const auto& [t, b] : v.terms()) {
      std::vector<Edge> edges(s.edges().begin(), s.edges().end());
      edges.insert(edges.end(), t.edges().begin(), t.edges().end());
      out.add_wedge(std::move(edges), a * b);
    }
  }
  return out;
}

SparseIntMatrix assemble_boundary(const FaceList& faces, const FaceList& lower_faces) {
  SparseIntMatrix m(lower_faces.size(), 0);
  for (const auto& s : faces.faces()) {
    std::vector<SparseIntMatrix::Entry> col;
    col.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto row = lower_faces.find(s.without(i));
      // Faces of upward-closed families may have boundary faces outside the
      // list; those terms vanish in the quotient.
      if (row) col.push_back({*row, Integer(i % 2 == 0 ? 1 : -1)});
    }
    m.push_column(std::move(col));
  }
  return m;
}

std::vector<Integer> chain_to_coordinates(const ChainVector& c, const FaceList& faces) {
  std::vector<Integer> x(faces.size());
  for (const auto& [s, coef] : c.terms()) {
    const auto idx = faces.find(s);
    if (!idx) throw InvalidInput("chain term " + s.to_string() + " is not a face of the complex");
    x[*idx] = coef;
  }
  return x;
}

ChainVector coordinates_to_chain(const std::vector<Integer>& x, const FaceList& faces, int degree) {
  ChainVector c(degree);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) c.add(faces[i], x[i]);
  }
  return c;
}

FreeChainComplex::FreeChainComplex(ComplexSpec spec) : faces_(std::move(spec)) {
  for (int d = min_dim(); d <= max_dim(); ++d) {
    if (d == min_dim()) {
      boundaries_.emplace_back(0, faces_.count(d));
    } else {
      boundaries_.push_back(assemble_boundary(faces_.dim(d), faces_.dim(d - 1)));
    }
  }
}

const SparseIntMatrix& FreeChainComplex::boundary(int d) const {
  if (d >= min_dim() && d <= max_dim()) return boundaries_[static_cast<std::size_t>(d - min_dim())];
  auto it = edge_cases_.find(d);
  if (it == edge_cases_.end()) {
    it = edge_cases_.emplace(d, SparseIntMatrix(rank(d - 1), rank(d))).first;
  }
  return it->second;
}

bool check_d_squared(const std::vector<SparseIntMatrix>& boundaries) {
  for (std::size_t k = 1; k < boundaries.size(); ++k) {
    const auto& lower = boundaries[k - 1];
    const auto& upper = boundaries[k];
    if (lower.cols() != upper.rows()) throw InvalidInput("boundary shapes do not chain");
    if (!lower.multiply(upper).is_zero()) return false;
  }
  return true;
}

bool check_d_squared(const FreeChainComplex& complex) {
  std::vector<SparseIntMatrix> ds;
  for (int d = complex.min_dim(); d <= complex.max_dim() + 1; ++d) ds.push_back(complex.boundary(d));
  return check_d_squared(ds);
}

void write_chain(std::ostream& out, const std::string& name, const ChainVector& c) {
  out << "chain " << name << '\n';
  out << "degree " << c.degree() << '\n';
  out << "terms " << c.size() << '\n';
  for (const auto& [s, coef] : c.terms()) {
    out << coef.get_str();
    if (!s.empty()) out << ' ' << s.to_string();
    out << '\n';
  }
  out << "end\n";
}

std::string format_chain(const std::string& name, const ChainVector& c) {
  std::ostringstream out;
  write_chain(out, name, c);
  return out.str();
}

namespace {

std::string expect_field(std::istream& in, const std::string& key) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind(key + " ", 0) != 0 && line != key) {
      throw InvalidInput("expected '" + key + "' in chain document, got '" + line + "'");
    }
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
  }
  throw InvalidInput("chain document ended while looking for '" + key + "'");
}

}  // namespace

std::vector<NamedChain> read_chains(std::istream& in) {
  std::vector<NamedChain> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("chain", 0) != 0) throw InvalidInput("expected 'chain' header, got '" + line + "'");
    NamedChain nc;
    nc.name = line.size() > 6 ? line.substr(6) : std::string();
    const int degree = std::stoi(expect_field(in, "degree"));
    const long count = std::stol(expect_field(in, "terms"));
    nc.chain = ChainVector(degree);
    for (long k = 0; k < count; ++k) {
      if (!std::getline(in, line)) throw InvalidInput("chain document truncated");
      const auto space = line.find(' ');
      Integer coef;
      if (coef.set_str(line.substr(0, space), 10) != 0) throw InvalidInput("bad coefficient in '" + line + "'");
      const Simplex s = space == std::string::npos ? Simplex() : Simplex::parse(line.substr(space + 1));
      if (nc.chain.coefficient(s) != 0) throw InvalidInput("repeated term " + s.to_string());
      nc.chain.add(s, coef);
    }
    expect_field(in, "end");
    out.push_back(std::move(nc));
  }
  return out;
}

std::vector<NamedChain> parse_chains(const std::string& text) {
  std::istringstream in(text);
  return read_chains(in);
}

void write_faces(std::ostream& out, int d, const std::vector<Simplex>& faces) {
  out << "dim " << d << '\n';
  for (const auto& s : faces) out << s.to_string() << '\n';
}

}  // namespace matchhom
