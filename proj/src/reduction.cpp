#include "matchhom/reduction.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "matchhom/errors.hpp"

namespace matchhom {

namespace {

struct Cell {
  std::uint32_t face;
  std::int64_t val;
};

bool is_unit(std::int64_t v) { return v == 1 || v == -1; }

// Coefficients past 32 bits mean the reduced complex has turned dense with
// large entries, and its Smith forms cost more than the original ones.
constexpr std::int64_t kMaxCoefficient = INT32_MAX;

std::int64_t bounded(std::int64_t v) {
  if (v > kMaxCoefficient || v < -kMaxCoefficient) throw std::overflow_error("reduction coefficient overflow");
  return v;
}

std::int64_t mul(std::int64_t a, std::int64_t b) { return bounded(a * b); }
std::int64_t add(std::int64_t a, std::int64_t b) { return bounded(a + b); }

class Reducer {
 public:
  Reducer(std::vector<std::size_t> counts, const std::vector<SparseIntMatrix>& boundaries, const SmithOptions& limits)
      : counts_(std::move(counts)), limits_(limits) {
    const std::size_t L = counts_.size();
    bd_.resize(L);
    cob_.resize(L);
    cnt_.resize(L);
    alive_.resize(L);
    mark_.resize(L);
    qsize_.resize(L);
    for (std::size_t k = 0; k < L; ++k) {
      alive_[k].assign(counts_[k], 1);
      mark_[k].assign(counts_[k], 0);
      qsize_[k].assign(counts_[k], 0);
      cnt_[k].assign(counts_[k], 0);
      cob_[k].resize(counts_[k]);
      bd_[k].resize(counts_[k]);
    }
    for (std::size_t k = 1; k < L; ++k) {
      const auto& m = boundaries[k - 1];
      if (m.cols() != counts_[k] || m.rows() != counts_[k - 1]) throw InvalidInput("boundary shape does not match counts");
      for (std::uint32_t a = 0; a < m.cols(); ++a) {
        for (const auto& e : m.column(a)) {
          if (!e.value.fits_slong_p()) throw std::overflow_error("reduction coefficient overflow");
          const std::int64_t v = bounded(e.value.get_si());
          if (v == 0) continue;
          bd_[k][a].push_back({e.row, v});
          cob_[k - 1][e.row].push_back(a);
          ++cnt_[k - 1][e.row];
          units_ += is_unit(v);
          ++nnz_;
        }
      }
      for (std::uint32_t a = 0; a < counts_[k]; ++a) set_size(k, a);
    }
    for (std::size_t k = 0; k + 1 < L; ++k) {
      for (std::uint32_t f = 0; f < counts_[k]; ++f) requeue_face(k, f);
    }
    start_ = std::chrono::steady_clock::now();
  }

  std::size_t run() {
    std::size_t cancelled = 0;
    std::uint32_t k = 0, a = 0, b = 0;
    while (units_ > 0 && find_pair(k, a, b)) {
      check_limits();
      cancel(k, a, b);
      ++cancelled;
    }
    return cancelled;
  }

  ReducedComplex result(int min_degree) const {
    ReducedComplex out;
    out.min_degree = min_degree;
    const std::size_t L = counts_.size();
    std::vector<std::vector<std::uint32_t>> index(L);
    for (std::size_t k = 0; k < L; ++k) {
      index[k].assign(counts_[k], UINT32_MAX);
      std::uint32_t next = 0;
      for (std::uint32_t i = 0; i < counts_[k]; ++i) {
        if (alive_[k][i]) index[k][i] = next++;
      }
      out.counts.push_back(next);
    }
    for (std::size_t k = 1; k < L; ++k) {
      SparseIntMatrix m(out.counts[k - 1], 0);
      for (std::uint32_t a = 0; a < counts_[k]; ++a) {
        if (!alive_[k][a]) continue;
        std::vector<SparseIntMatrix::Entry> col;
        for (const auto& c : bd_[k][a]) {
          const auto r = index[k - 1][c.face];
          if (r == UINT32_MAX) throw InternalInvariant("reduced boundary meets a cancelled cell");
          col.push_back({r, Integer(static_cast<long>(c.val))});
        }
        m.push_column(std::move(col));
      }
      out.boundaries.push_back(std::move(m));
    }
    return out;
  }

 private:
  using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;  // (size, level, index)

  void check_limits() {
    if (limits_.max_entries && nnz_ > limits_.max_entries) {
      throw ResourceLimit("reduction exceeded " + std::to_string(limits_.max_entries) + " active entries");
    }
    if (limits_.max_seconds > 0 && (++steps_ & 255) == 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > limits_.max_seconds) throw ResourceLimit("reduction exceeded the time cap");
    }
  }

  static const Cell* entry(const std::vector<Cell>& col, std::uint32_t f) {
    auto it = std::lower_bound(col.begin(), col.end(), f, [](const Cell& c, std::uint32_t x) { return c.face < x; });
    return it != col.end() && it->face == f ? &*it : nullptr;
  }

  /// Keeps the column queue in step with the length of d(k, a).
  void set_size(std::uint32_t k, std::uint32_t a) {
    auto& s = qsize_[k][a];
    if (s) col_q_.erase({s, k, a});
    s = alive_[k][a] ? static_cast<std::uint32_t>(bd_[k][a].size()) : 0;
    if (s) col_q_.emplace(s, k, a);
  }

  void set_count(std::uint32_t k, std::uint32_t f, std::uint32_t c) {
    if (cnt_[k][f] && alive_[k][f]) row_q_.erase({cnt_[k][f], k, f});
    cnt_[k][f] = c;
    if (c && alive_[k][f]) row_q_.emplace(c, k, f);
  }

  void requeue_face(std::uint32_t k, std::uint32_t f) {
    if (cnt_[k][f] && alive_[k][f]) row_q_.emplace(cnt_[k][f], k, f);
  }

  /// Live cells of level k + 1 whose boundary holds f; compacts the list.
  const std::vector<std::uint32_t>& gather(std::uint32_t k, std::uint32_t f) {
    auto& list = cob_[k][f];
    auto& mark = mark_[k + 1];
    ++stamp_;
    std::size_t w = 0;
    for (std::uint32_t x : list) {
      if (!alive_[k + 1][x] || mark[x] == stamp_ || !entry(bd_[k + 1][x], f)) continue;
      mark[x] = stamp_;
      list[w++] = x;
    }
    list.resize(w);
    return list;
  }

  void consider(std::uint64_t cost, std::uint32_t k, std::uint32_t a, std::uint32_t b, std::uint64_t& best,
                std::uint32_t& bk, std::uint32_t& ba, std::uint32_t& bb) const {
    if (cost < best || (cost == best && std::tie(k, a, b) < std::tie(bk, ba, bb))) {
      best = cost;
      bk = k;
      ba = a;
      bb = b;
    }
  }

  bool find_pair(std::uint32_t& bk, std::uint32_t& ba, std::uint32_t& bb) {
    constexpr int kCandidates = 4;
    std::uint64_t best = UINT64_MAX;
    int examined = 0;
    for (const auto& [size, k, a] : col_q_) {
      bool found = false;
      for (const auto& c : bd_[k][a]) {
        if (!is_unit(c.val)) continue;
        consider(std::uint64_t(size - 1) * (cnt_[k - 1][c.face] - 1), k, a, c.face, best, bk, ba, bb);
        found = true;
      }
      if (found && (best == 0 || ++examined >= kCandidates)) break;
    }
    examined = 0;
    for (auto it = row_q_.begin(); best > 0 && it != row_q_.end(); ++it) {
      const auto [count, k, f] = *it;
      bool found = false;
      for (std::uint32_t x : gather(k, f)) {
        const Cell* c = entry(bd_[k + 1][x], f);
        if (!is_unit(c->val)) continue;
        consider(std::uint64_t(count - 1) * (bd_[k + 1][x].size() - 1), k + 1, x, f, best, bk, ba, bb);
        found = true;
      }
      if (found && ++examined >= kCandidates) break;
    }
    return best != UINT64_MAX;
  }

  void gained(std::uint32_t k, std::uint32_t x, const Cell& c) {
    units_ += is_unit(c.val);
    ++nnz_;
    cob_[k - 1][c.face].push_back(x);
    set_count(k - 1, c.face, cnt_[k - 1][c.face] + 1);
  }

  void lost(std::uint32_t k, const Cell& c) {
    units_ -= is_unit(c.val);
    --nnz_;
    set_count(k - 1, c.face, cnt_[k - 1][c.face] - 1);
  }

  // d(k, x) += t * d(k, a)
  void axpy(std::uint32_t k, std::uint32_t x, std::int64_t t, std::uint32_t a) {
    const auto& X = bd_[k][x];
    const auto& A = bd_[k][a];
    scratch_.clear();
    std::size_t i = 0, j = 0;
    while (i < X.size() || j < A.size()) {
      if (j == A.size() || (i < X.size() && X[i].face < A[j].face)) {
        scratch_.push_back(X[i++]);
      } else if (i == X.size() || A[j].face < X[i].face) {
        const Cell c{A[j].face, mul(t, A[j].val)};
        gained(k, x, c);
        scratch_.push_back(c);
        ++j;
      } else {
        const std::int64_t v = add(X[i].val, mul(t, A[j].val));
        if (v == 0) {
          lost(k, X[i]);
        } else {
          units_ += is_unit(v);
          units_ -= is_unit(X[i].val);
          scratch_.push_back({X[i].face, v});
        }
        ++i;
        ++j;
      }
    }
    bd_[k][x].swap(scratch_);
    set_size(k, x);
  }

  // a in level k, b in level k - 1, <da, b> = +-1
  void cancel(std::uint32_t k, std::uint32_t a, std::uint32_t b) {
    const std::int64_t u = entry(bd_[k][a], b)->val;
    const std::vector<std::uint32_t> targets = gather(k - 1, b);
    for (std::uint32_t x : targets) {
      if (x == a) continue;
      const std::int64_t c = entry(bd_[k][x], b)->val;
      axpy(k, x, mul(c, -u), a);
    }

    for (const auto& c : bd_[k][a]) lost(k, c);
    bd_[k][a].clear();
    if (k + 1 < counts_.size()) {
      for (std::uint32_t y : std::vector<std::uint32_t>(gather(k, a))) {
        auto& Y = bd_[k + 1][y];
        auto it = std::lower_bound(Y.begin(), Y.end(), a, [](const Cell& c, std::uint32_t f) { return c.face < f; });
        units_ -= is_unit(it->val);
        --nnz_;
        Y.erase(it);
        set_size(k + 1, y);
      }
      cob_[k][a].clear();
      set_count(k, a, 0);
    }
    alive_[k][a] = 0;
    set_size(k, a);

    if (cnt_[k - 1][b] != 0) throw InternalInvariant("cancelled face still has cofaces");
    if (k >= 2) {
      for (const auto& c : bd_[k - 1][b]) lost(k - 1, c);
      bd_[k - 1][b].clear();
    }
    cob_[k - 1][b].clear();
    alive_[k - 1][b] = 0;
    set_size(k - 1, b);
  }

  std::vector<std::size_t> counts_;
  const SmithOptions& limits_;
  std::vector<std::vector<std::vector<Cell>>> bd_;
  std::vector<std::vector<std::vector<std::uint32_t>>> cob_;
  std::vector<std::vector<std::uint32_t>> cnt_;
  std::vector<std::vector<char>> alive_;
  std::vector<std::vector<std::uint32_t>> mark_;
  std::vector<std::vector<std::uint32_t>> qsize_;
  std::set<Key> col_q_;
  std::set<Key> row_q_;
  std::uint32_t stamp_ = 0;
  std::size_t units_ = 0;
  std::size_t nnz_ = 0;
  std::size_t steps_ = 0;
  std::vector<Cell> scratch_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

ReducedComplex reduce_complex(int min_degree, std::vector<std::size_t> counts,
                              const std::vector<SparseIntMatrix>& boundaries, const SmithOptions& limits) {
  if (counts.size() != boundaries.size() + 1) throw InvalidInput("need one more cell count than boundary matrices");
  Reducer r(std::move(counts), boundaries, limits);
  const std::size_t cancelled = r.run();
  auto out = r.result(min_degree);
  out.cancelled = cancelled;
  return out;
}

}  // namespace matchhom
