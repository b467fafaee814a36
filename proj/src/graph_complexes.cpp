#include "matchhom/graph_complexes.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "matchhom/errors.hpp"

namespace matchhom {

namespace {

int parse_int(std::string_view s, const char* what) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInput(std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Edge::Edge(int x, int y) {
  if (x < 1 || y < 1 || x > kMaxVertices || y > kMaxVertices) {
    throw InvalidInput("edge endpoint out of range: " + std::to_string(x) + "-" + std::to_string(y));
  }
  a = static_cast<std::uint8_t>(std::min(x, y));
  b = static_cast<std::uint8_t>(std::max(x, y));
}

std::string Edge::to_string() const { return std::to_string(a) + "-" + std::to_string(b); }

Simplex::Simplex(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InvalidInput("simplex has a repeated edge");
  }
}

Simplex Simplex::without(std::size_t i) const {
  std::vector<Edge> out;
  out.reserve(edges_.size() - 1);
  for (std::size_t j = 0; j < edges_.size(); ++j) {
    if (j != i) out.push_back(edges_[j]);
  }
  return Simplex(std::move(out), SortedTag{});
}

bool Simplex::contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

int Simplex::max_vertex() const {
  int m = 0;
  for (const auto& e : edges_) m = std::max(m, static_cast<int>(e.b));
  return m;
}

int Simplex::degree(int v) const {
  int d = 0;
  for (const auto& e : edges_) d += (e.a == v) + (e.b == v);
  return d;
}

std::string Simplex::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out += ' ';
    out += edges_[i].to_string();
  }
  return out;
}

Simplex Simplex::parse(std::string_view text) {
  std::vector<Edge> edges;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos) throw InvalidInput("edge token must be 'a-b': " + tok);
    std::string_view sv(tok);
    edges.emplace_back(parse_int(sv.substr(0, dash), "vertex"), parse_int(sv.substr(dash + 1), "vertex"));
  }
  return Simplex(std::move(edges));
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& e : s.edges()) {
    h ^= e.code();
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::vector<int> parse_degree_vector(std::string_view text) {
  std::vector<int> out;
  for (auto tok : split(text, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw InvalidInput("empty token in degree vector '" + std::string(text) + "'");
    const auto caret = tok.find('^');
    const int value = parse_int(tok.substr(0, caret), "degree");
    const int reps = caret == std::string_view::npos ? 1 : parse_int(tok.substr(caret + 1), "repeat count");
    if (value < 0 || reps < 0) throw InvalidInput("degree vector entries must be nonnegative");
    out.insert(out.end(), static_cast<std::size_t>(reps), value);
  }
  if (out.empty()) throw InvalidInput("degree vector is empty");
  return out;
}

std::string format_degree_vector(std::span<const int> lambda) {
  std::string out;
  for (std::size_t i = 0; i < lambda.size();) {
    std::size_t j = i;
    while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(lambda[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

BlockPartition BlockPartition::from_blocks(std::vector<std::vector<int>> blocks) {
  BlockPartition p;
  int total = 0;
  for (const auto& b : blocks) total += static_cast<int>(b.size());
  if (total > kMaxVertices) throw InvalidInput("partition covers too many vertices");
  p.block_of_.assign(static_cast<std::size_t>(total) + 1, 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::sort(blocks[i].begin(), blocks[i].end());
    for (int v : blocks[i]) {
      if (v < 1 || v > total) throw InvalidInput("partition vertex out of range: " + std::to_string(v));
      if (p.block_of_[static_cast<std::size_t>(v)] != 0) {
        throw InvalidInput("vertex " + std::to_string(v) + " appears in two blocks");
      }
      p.block_of_[static_cast<std::size_t>(v)] = static_cast<int>(i) + 1;
    }
    p.sizes_.push_back(static_cast<int>(blocks[i].size()));
  }
  p.blocks_ = std::move(blocks);
  return p;
}

BlockPartition BlockPartition::consecutive(std::vector<int> lambda) {
  std::vector<std::vector<int>> blocks;
  int next = 1;
  for (int size : lambda) {
    if (size < 0) throw InvalidInput("negative block size");
    std::vector<int> b(static_cast<std::size_t>(size));
    std::iota(b.begin(), b.end(), next);
    next += size;
    blocks.push_back(std::move(b));
  }
  return from_blocks(std::move(blocks));
}

BlockPartition BlockPartition::interleaved(std::vector<int> lambda) {
  if (lambda.empty()) throw InvalidInput("empty degree vector");
  if (std::adjacent_find(lambda.begin(), lambda.end(), std::not_equal_to<>()) != lambda.end()) {
    throw InvalidInput("interleaved partition needs equal block sizes");
  }
  const int n = static_cast<int>(lambda.size());
  std::vector<std::vector<int>> blocks(lambda.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < lambda[0]; ++j) blocks[static_cast<std::size_t>(i)].push_back(i + 1 + j * n);
  }
  return from_blocks(std::move(blocks));
}

BlockPartition BlockPartition::parse(std::string_view text, std::vector<int> lambda) {
  text = trim(text);
  if (text.empty() || text == "consecutive") return consecutive(std::move(lambda));
  if (text == "interleaved") return interleaved(std::move(lambda));
  std::vector<std::vector<int>> blocks;
  for (auto part : split(text, '/')) {
    std::vector<int> b;
    for (auto tok : split(part, ',')) {
      tok = trim(tok);
      if (!tok.empty()) b.push_back(parse_int(tok, "vertex"));
    }
    blocks.push_back(std::move(b));
  }
  auto p = from_blocks(std::move(blocks));
  if (!lambda.empty() && p.sizes() != lambda) throw InvalidInput("block sizes do not match the degree vector");
  return p;
}

std::uint64_t BlockPartition::group_order() const {
  std::uint64_t order = 1;
  for (int s : sizes_) {
    for (int k = 2; k <= s; ++k) order *= static_cast<std::uint64_t>(k);
  }
  return order;
}

std::string BlockPartition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += '/';
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j) out += ',';
      out += std::to_string(blocks_[i][j]);
    }
  }
  return out;
}

ComplexSpec ComplexSpec::matching(int n) {
  if (n < 1 || n > kMaxVertices) throw InvalidInput("vertex count out of range: " + std::to_string(n));
  ComplexSpec s;
  s.kind_ = ComplexKind::matching;
  s.capacity_.assign(static_cast<std::size_t>(n), 1);
  return s;
}

ComplexSpec ComplexSpec::bounded(std::vector<int> lambda) {
  if (lambda.empty() || lambda.size() > kMaxVertices) throw InvalidInput("degree vector length out of range");
  for (int v : lambda) {
    if (v < 0) throw InvalidInput("degree bounds must be nonnegative");
  }
  ComplexSpec s;
  s.kind_ = ComplexKind::bounded;
  s.capacity_ = std::move(lambda);
  return s;
}

ComplexSpec ComplexSpec::gamma(BlockPartition partition) {
  ComplexSpec s = matching(partition.total());
  s.kind_ = ComplexKind::gamma;
  s.partition_ = std::move(partition);
  return s;
}

ComplexSpec ComplexSpec::delta(BlockPartition partition) {
  ComplexSpec s = matching(partition.total());
  s.kind_ = ComplexKind::delta;
  s.partition_ = std::move(partition);
  return s;
}

ComplexSpec ComplexSpec::matching_minus_e(int n) {
  if (n < 2) throw InvalidInput("matching_minus_e needs at least two vertices");
  ComplexSpec s = matching(n);
  s.kind_ = ComplexKind::matching_minus_e;
  return s;
}

Edge ComplexSpec::deleted_edge() const { return Edge(vertex_count() - 1, vertex_count()); }

int ComplexSpec::max_dimension() const {
  const int total = std::accumulate(capacity_.begin(), capacity_.end(), 0);
  return total / 2 - 1;
}

std::string ComplexSpec::id() const {
  switch (kind_) {
    case ComplexKind::matching:
      return "matching(" + std::to_string(vertex_count()) + ")";
    case ComplexKind::bounded:
      return "bounded(" + format_degree_vector(capacity_) + ")";
    case ComplexKind::gamma:
      return "gamma(" + partition_->to_string() + ")";
    case ComplexKind::delta:
      return "delta(" + partition_->to_string() + ")";
    case ComplexKind::matching_minus_e:
      return "matching_minus_e(" + std::to_string(vertex_count()) + ")";
  }
  return {};
}

bool has_parallel_pair(const Simplex& s, const BlockPartition& partition) {
  // Two edges are parallel exactly when they collapse to the same block pair.
  std::vector<std::pair<int, int>> images;
  images.reserve(s.size());
  for (const auto& e : s.edges()) {
    int x = partition.block_of(e.a);
    int y = partition.block_of(e.b);
    if (x > y) std::swap(x, y);
    images.emplace_back(x, y);
  }
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) != images.end();
}

bool is_face(const ComplexSpec& spec, const Simplex& s) {
  const int n = spec.vertex_count();
  if (s.max_vertex() > n) {
    throw InvalidInput("simplex " + s.to_string() + " uses a vertex outside [" + std::to_string(n) + "]");
  }
  std::vector<int> deg(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : s.edges()) {
    if (e.is_loop()) {
      if (!spec.allows_loops()) return false;
      deg[e.a] += 2;
    } else {
      ++deg[e.a];
      ++deg[e.b];
    }
  }
  for (int v = 1; v <= n; ++v) {
    if (deg[static_cast<std::size_t>(v)] > spec.capacities()[static_cast<std::size_t>(v) - 1]) return false;
  }
  switch (spec.kind()) {
    case ComplexKind::gamma:
      return !has_parallel_pair(s, *spec.partition());
    case ComplexKind::delta:
      return has_parallel_pair(s, *spec.partition());
    case ComplexKind::matching_minus_e:
      return !s.contains(spec.deleted_edge());
    default:
      return true;
  }
}

class SimplexBuilder {
 public:
  static Simplex make(std::vector<Edge> sorted) { return Simplex(std::move(sorted), Simplex::SortedTag{}); }
};

namespace {

struct Enumerator {
  const ComplexSpec& spec;
  std::size_t target;
  const std::function<void(const Simplex&)>& visit;
  std::vector<Edge> universe;
  std::vector<int> capacity;
  std::vector<Edge> current;
  // Block-pair images already used, for pruning the gamma kind.
  std::vector<std::pair<int, int>> images;

  void run(std::size_t start) {
    if (current.size() == target) {
      if (spec.kind() == ComplexKind::delta && !has_parallel_pair(SimplexBuilder::make(current), *spec.partition())) {
        return;
      }
      visit(SimplexBuilder::make(current));
      return;
    }
    const std::size_t remaining = target - current.size();
    for (std::size_t i = start; i + remaining <= universe.size(); ++i) {
      const Edge e = universe[i];
      auto& ca = capacity[e.a];
      auto& cb = capacity[e.b];
      if (e.is_loop()) {
        if (ca < 2) continue;
      } else if (ca < 1 || cb < 1) {
        continue;
      }
      std::pair<int, int> image;
      if (spec.kind() == ComplexKind::gamma) {
        const auto& p = *spec.partition();
        image = std::minmax(p.block_of(e.a), p.block_of(e.b));
        if (std::find(images.begin(), images.end(), image) != images.end()) continue;
        images.push_back(image);
      }
      --ca;
      --cb;
      current.push_back(e);
      run(i + 1);
      current.pop_back();
      ++ca;
      ++cb;
      if (spec.kind() == ComplexKind::gamma) images.pop_back();
    }
  }
};

}  // namespace

void for_each_face(const ComplexSpec& spec, int d, const std::function<void(const Simplex&)>& visit) {
  if (d < -1) return;
  Enumerator en{spec, static_cast<std::size_t>(d + 1), visit, {}, {}, {}, {}};
  const int n = spec.vertex_count();
  en.capacity.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) en.capacity[static_cast<std::size_t>(v)] = spec.capacities()[static_cast<std::size_t>(v) - 1];
  for (int a = 1; a <= n; ++a) {
    for (int b = a; b <= n; ++b) {
      if (a == b && !spec.allows_loops()) continue;
      const Edge e(a, b);
      if (spec.kind() == ComplexKind::matching_minus_e && e == spec.deleted_edge()) continue;
      en.universe.push_back(e);
    }
  }
  en.run(0);
}

std::vector<Simplex> enumerate_faces(const ComplexSpec& spec, int d) {
  std::vector<Simplex> out;
  for_each_face(spec, d, [&](const Simplex& s) { out.push_back(s); });
  return out;
}

std::vector<std::size_t> face_counts(const ComplexSpec& spec) {
  std::vector<std::size_t> counts;
  for (int d = -1; d <= spec.max_dimension(); ++d) {
    std::size_t c = 0;
    for_each_face(spec, d, [&](const Simplex&) { ++c; });
    // delta has no faces in low dimensions but is nonempty above them
    if (c == 0 && d >= 0 && spec.kind() != ComplexKind::delta) break;
    counts.push_back(c);
  }
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  return counts;
}

FaceList::FaceList(std::vector<Simplex> faces) : faces_(std::move(faces)) {
  index_.reserve(faces_.size());
  for (std::size_t i = 0; i < faces_.size(); ++i) index_.emplace(faces_[i], static_cast<std::uint32_t>(i));
}

std::optional<std::uint32_t> FaceList::find(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t FaceList::at(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw InternalInvariant("face " + s.to_string() + " missing from face list");
  return it->second;
}

FaceTable::FaceTable(ComplexSpec spec) : FaceTable(spec, -1, spec.max_dimension()) {}

FaceTable::FaceTable(ComplexSpec spec, int min_dim, int max_dim) : spec_(std::move(spec)), min_dim_(min_dim) {
  if (min_dim < -1) throw InvalidInput("dimension below -1");
  for (int d = min_dim; d <= max_dim; ++d) lists_.emplace_back(enumerate_faces(spec_, d));
  // Trim empty trailing dimensions, but keep the ones the caller asked for
  // inside a delta complex whose low dimensions are empty.
  while (lists_.size() > 1 && lists_.back().size() == 0) lists_.pop_back();
}

const FaceList& FaceTable::dim(int d) const {
  if (!has(d)) throw InvalidInput("dimension " + std::to_string(d) + " not in face table");
  return lists_[static_cast<std::size_t>(d - min_dim_)];
}

Simplex kappa_simplex(const Simplex& s, const BlockPartition& partition) {
  if (s.max_vertex() > partition.total()) throw InvalidInput("simplex uses a vertex outside the partition");
  std::vector<Edge> image;
  image.reserve(s.size());
  for (const auto& e : s.edges()) image.emplace_back(partition.block_of(e.a), partition.block_of(e.b));
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
    throw ParallelEdge("simplex " + s.to_string() + " has a parallel pair of edges");
  }
  return SimplexBuilder::make(std::move(image));
}

Simplex kappa_fiber_representative(const Simplex& tau, const BlockPartition& partition) {
  const int n = partition.num_blocks();
  if (tau.max_vertex() > n) throw InvalidInput("simplex uses a block label outside [n]");
  std::vector<std::size_t> used(static_cast<std::size_t>(n), 0);
  auto take = [&](int block_label) {
    const auto i = static_cast<std::size_t>(block_label) - 1;
    const auto& b = partition.block(static_cast<int>(i));
    if (used[i] >= b.size()) {
      throw InvalidInput("simplex " + tau.to_string() + " exceeds the degree bound at " + std::to_string(block_label));
    }
    return b[used[i]++];
  };
  std::vector<Edge> edges;
  for (const auto& e : tau.edges()) {
    const int x = take(e.a);
    const int y = take(e.b);
    edges.emplace_back(x, y);
  }
  return Simplex(std::move(edges));
}

}  // namespace matchhom
