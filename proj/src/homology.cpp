#include "matchhom/homology.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <thread>

#include "matchhom/errors.hpp"
#include "matchhom/reduction.hpp"

namespace matchhom {

AbelianGroup::AbelianGroup(std::size_t free_rank, std::vector<Integer> cyclic_orders) : free_rank_(free_rank) {
  for (auto& a : cyclic_orders) {
    if (a < 0) a = -a;
    if (a == 0) throw InvalidInput("cyclic order 0; count it in the free rank");
  }
  std::sort(cyclic_orders.begin(), cyclic_orders.end());
  const std::size_t n = cyclic_orders.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Integer g, l;
      mpz_gcd(g.get_mpz_t(), cyclic_orders[i].get_mpz_t(), cyclic_orders[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), cyclic_orders[i].get_mpz_t(), cyclic_orders[j].get_mpz_t());
      cyclic_orders[i] = g;
      cyclic_orders[j] = l;
    }
  }
  for (auto& a : cyclic_orders) {
    if (a != 1) factors_.push_back(std::move(a));
  }
}

std::size_t AbelianGroup::p_rank(unsigned long p) const {
  std::size_t k = 0;
  for (const auto& a : factors_) {
    if (mpz_divisible_ui_p(a.get_mpz_t(), p)) ++k;
  }
  return k;
}

Integer AbelianGroup::torsion_exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << " + ";
    first = false;
  };
  for (std::size_t i = 0; i < factors_.size();) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    sep();
    out << "Z_" << factors_[i].get_str();
    if (j - i > 1) out << '^' << (j - i);
    i = j;
  }
  if (free_rank_ > 0) {
    sep();
    out << 'Z';
    if (free_rank_ > 1) out << '^' << free_rank_;
  }
  return out.str();
}

AbelianGroup AbelianGroup::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s += ch;
  }
  if (s == "0") return {};
  std::size_t free_rank = 0;
  std::vector<Integer> orders;
  std::size_t pos = 0;
  auto fail = [&] { throw InvalidInput("cannot parse abelian group '" + text + "'"); };
  auto read_number = [&](std::size_t& at) {
    const std::size_t start = at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    if (at == start) fail();
    return s.substr(start, at - start);
  };
  while (pos < s.size()) {
    if (s[pos] != 'Z') fail();
    ++pos;
    std::string order;
    if (pos < s.size() && s[pos] == '_') {
      ++pos;
      order = read_number(pos);
    }
    std::size_t mult = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      mult = std::stoul(read_number(pos));
    }
    if (order.empty()) {
      free_rank += mult;
    } else {
      for (std::size_t k = 0; k < mult; ++k) orders.emplace_back(order);
    }
    if (pos < s.size()) {
      if (s[pos] != '+') fail();
      ++pos;
    }
  }
  return AbelianGroup(free_rank, std::move(orders));
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Integer> orders = a.factors_;
  orders.insert(orders.end(), b.factors_.begin(), b.factors_.end());
  return AbelianGroup(a.free_rank_ + b.free_rank_, std::move(orders));
}

AbelianGroup HomologySummary::at(int d) const {
  if (d < min_degree || d > max_degree()) return {};
  return groups[static_cast<std::size_t>(d - min_degree)];
}

HomologySummary summarize(const std::string& id, const BoundaryRanks& r) {
  HomologySummary out;
  out.complex_id = id;
  out.min_degree = r.min_degree;
  const std::size_t n = r.face_counts.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t rank_in = r.ranks[k];
    const std::size_t rank_out = k + 1 < n ? r.ranks[k + 1] : 0;
    if (rank_in + rank_out > r.face_counts[k]) throw InternalInvariant("boundary ranks exceed the chain rank");
    std::vector<Integer> torsion;
    if (k + 1 < n) torsion = r.factors[k + 1];
    out.groups.emplace_back(r.face_counts[k] - rank_in - rank_out, std::move(torsion));
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

/// Runs job(k) for k in [0, n) on up to `threads` workers; results land by
/// index so the outcome does not depend on scheduling.
void run_indexed(std::size_t n, int threads, const std::function<void(std::size_t)>& job) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= n) return;
        try {
          job(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

using MatrixSource = std::function<SparseIntMatrix(int)>;

BoundaryRanks integral_ranks(int min_dim, const std::vector<std::size_t>& counts, const MatrixSource& boundary,
                             const HomologyOptions& options) {
  BoundaryRanks r;
  r.min_degree = min_dim;
  r.face_counts = counts;
  r.ranks.assign(counts.size(), 0);
  r.factors.assign(counts.size(), {});
  // d_{min} maps into the zero group
  run_indexed(counts.size() > 0 ? counts.size() - 1 : 0, options.threads, [&](std::size_t k) {
    const int d = min_dim + static_cast<int>(k) + 1;
    const auto form = smith_normal_form(boundary(d), options.smith);
    r.ranks[k + 1] = form.rank();
    r.factors[k + 1] = form.invariant_factors();
  });
  return r;
}

BoundaryRanks field_ranks(int min_dim, const std::vector<std::size_t>& counts, const MatrixSource& boundary,
                          std::uint32_t p, const HomologyOptions& options) {
  BoundaryRanks r;
  r.min_degree = min_dim;
  r.face_counts = counts;
  r.ranks.assign(counts.size(), 0);
  r.factors.assign(counts.size(), {});
  run_indexed(counts.size() > 0 ? counts.size() - 1 : 0, options.threads, [&](std::size_t k) {
    const int d = min_dim + static_cast<int>(k) + 1;
    r.ranks[k + 1] = rank_mod_p(boundary(d), p, options.smith);
  });
  return r;
}

/// Ranks of the original complex, read off a reduced copy when
/// options.reduce is set. p = 0 means the integers. Coefficient overflow in
/// the reduction falls back to the matrices as given.
BoundaryRanks complex_ranks(int min_dim, const std::vector<std::size_t>& counts, const MatrixSource& boundary,
                            std::uint32_t p, const HomologyOptions& options) {
  auto direct = [&](int lo, const std::vector<std::size_t>& c, const MatrixSource& source) {
    return p == 0 ? integral_ranks(lo, c, source, options) : field_ranks(lo, c, source, p, options);
  };
  if (!options.reduce || counts.size() < 2) return direct(min_dim, counts, boundary);
  std::vector<SparseIntMatrix> mats;
  for (std::size_t k = 1; k < counts.size(); ++k) mats.push_back(boundary(min_dim + static_cast<int>(k)));
  std::optional<ReducedComplex> reduced;
  try {
    reduced = reduce_complex(min_dim, counts, mats, options.smith);
  } catch (const std::overflow_error&) {
    return direct(min_dim, counts, [&](int d) { return mats[static_cast<std::size_t>(d - min_dim - 1)]; });
  }
  return direct(min_dim, reduced->counts,
                [&](int d) { return reduced->boundaries[static_cast<std::size_t>(d - min_dim - 1)]; });
}

std::vector<std::size_t> counts_of(const FaceTable& faces) {
  std::vector<std::size_t> counts;
  for (int d = faces.min_dim(); d <= faces.max_dim(); ++d) counts.push_back(faces.count(d));
  return counts;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string field_name(std::uint32_t p) { return "F_" + std::to_string(p); }

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
}

}  // namespace

HomologySummary homology_free(const FreeChainComplex& complex, const HomologyOptions& options) {
  const auto start = Clock::now();
  const auto ranks = complex_ranks(
      complex.min_dim(), counts_of(complex.faces()), [&](int d) { return complex.boundary(d); }, 0, options);
  auto out = summarize(complex.spec().id(), ranks);
  out.seconds = seconds_since(start);
  return out;
}

HomologySummary homology_free(const ComplexSpec& spec, const HomologyOptions& options) {
  const auto start = Clock::now();
  const FaceTable faces(spec);
  const auto ranks = complex_ranks(
      faces.min_dim(), counts_of(faces), [&](int d) { return assemble_boundary(faces.dim(d), faces.dim(d - 1)); }, 0,
      options);
  auto out = summarize(spec.id(), ranks);
  out.seconds = seconds_since(start);
  return out;
}

HomologySummary betti_mod_p(const FreeChainComplex& complex, std::uint32_t p, const HomologyOptions& options) {
  require_prime(p);
  const auto start = Clock::now();
  const auto ranks = complex_ranks(
      complex.min_dim(), counts_of(complex.faces()), [&](int d) { return complex.boundary(d); }, p, options);
  auto out = summarize(complex.spec().id(), ranks);
  out.coefficients = field_name(p);
  out.seconds = seconds_since(start);
  return out;
}

HomologySummary betti_mod_p(const ComplexSpec& spec, std::uint32_t p, const HomologyOptions& options) {
  require_prime(p);
  const auto start = Clock::now();
  const FaceTable faces(spec);
  const auto ranks = complex_ranks(
      faces.min_dim(), counts_of(faces), [&](int d) { return assemble_boundary(faces.dim(d), faces.dim(d - 1)); }, p,
      options);
  auto out = summarize(spec.id(), ranks);
  out.coefficients = field_name(p);
  out.seconds = seconds_since(start);
  return out;
}

std::string to_string(const ClassOrder& order) { return order ? order->get_str() : "infinite"; }

CycleClassifier::CycleClassifier(const FreeChainComplex& complex, int d, const SmithOptions& options)
    : complex_(complex), degree_(d) {
  SmithOptions opts = options;
  opts.want_transforms = true;
  form_ = smith_normal_form(complex.boundary(d + 1), opts);
}

ClassOrder CycleClassifier::class_order(const ChainVector& z) const {
  if (z.is_zero()) return Integer(1);
  if (z.degree() != degree_) {
    throw InvalidInput("chain of degree " + std::to_string(z.degree()) + " given to a degree-" +
                       std::to_string(degree_) + " classifier");
  }
  if (!complex_.faces().has(degree_)) throw InvalidInput("complex has no faces in degree " + std::to_string(degree_));
  const auto x = chain_to_coordinates(z, complex_.faces().dim(degree_));
  for (const auto& v : complex_.boundary(degree_).apply(x)) {
    if (v != 0) throw NotACycle("chain is not a cycle");
  }
  const auto y = form_.transforms->apply_u(x);
  const auto row_pivot = form_.pivot_of_row();
  Integer order = 1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if (row_pivot[i] < 0) return std::nullopt;
    const Integer& di = form_.diagonal[static_cast<std::size_t>(row_pivot[i])];
    Integer g;
    mpz_gcd(g.get_mpz_t(), di.get_mpz_t(), y[i].get_mpz_t());
    const Integer need = di / g;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), need.get_mpz_t());
  }
  return order;
}

std::vector<std::pair<ChainVector, Integer>> CycleClassifier::torsion_generators() const {
  std::vector<std::pair<ChainVector, Integer>> out;
  const std::size_t n = form_.rows;
  for (std::size_t k = 0; k < form_.rank(); ++k) {
    if (form_.diagonal[k] == 1) continue;
    std::vector<Integer> e(n);
    e[form_.pivots[k].row] = 1;
    const auto x = form_.transforms->apply_u_inverse(std::move(e));
    out.emplace_back(coordinates_to_chain(x, complex_.faces().dim(degree_), degree_), form_.diagonal[k]);
  }
  return out;
}

ClassOrder class_order(const ChainVector& z, const FreeChainComplex& complex, int d) {
  return CycleClassifier(complex, d).class_order(z);
}

std::vector<std::pair<ChainVector, Integer>> extract_torsion_generators(const FreeChainComplex& complex, int d) {
  return CycleClassifier(complex, d).torsion_generators();
}

}  // namespace matchhom
