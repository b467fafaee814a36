#include "matchhom/smith.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <string>

#include "matchhom/errors.hpp"

namespace matchhom {

namespace {

struct Overflow {};

// Checked 64-bit integers; any overflow aborts the run so it can be redone
// with GMP integers.
struct CheckedInt {
  using T = std::int64_t;
  static constexpr bool is_field = false;

  T from(const Integer& v) const {
    if (!v.fits_slong_p()) throw Overflow{};
    return v.get_si();
  }
  Integer to_integer(T v) const { return Integer(static_cast<long>(v)); }
  bool is_unit(T v) const { return v == 1 || v == -1; }
  T add(T a, T b) const {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  T mul(T a, T b) const {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  T neg(T a) const {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
  }
  bool divides(T a, T b) const { return a == -1 || b % a == 0; }
  T quot(T b, T a) const {
    if (a == -1) return neg(b);
    return b / a;
  }
  T gcdext(T a, T b, T& s, T& t) const {
    // iterative extended Euclid on nonzero a, b; result positive
    T old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
    while (r != 0) {
      const T q = old_r / r;
      T tmp = sub(old_r, mul(q, r));
      old_r = r;
      r = tmp;
      tmp = sub(old_s, mul(q, cs));
      old_s = cs;
      cs = tmp;
      tmp = sub(old_t, mul(q, ct));
      old_t = ct;
      ct = tmp;
    }
    if (old_r < 0) {
      old_r = neg(old_r);
      old_s = neg(old_s);
      old_t = neg(old_t);
    }
    s = old_s;
    t = old_t;
    return old_r;
  }
  T sub(T a, T b) const {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  bool less_mag(T a, T b) const {
    const auto ua = a < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
    const auto ub = b < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
    return ua < ub;
  }
};

struct BigInt {
  using T = Integer;
  static constexpr bool is_field = false;

  T from(const Integer& v) const { return v; }
  Integer to_integer(const T& v) const { return v; }
  bool is_unit(const T& v) const { return v == 1 || v == -1; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  bool divides(const T& a, const T& b) const { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }
  T quot(const T& b, const T& a) const {
    T q;
    mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    return q;
  }
  T gcdext(const T& a, const T& b, T& s, T& t) const {
    T g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  bool less_mag(const T& a, const T& b) const { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
};

struct ModP {
  using T = std::uint32_t;
  static constexpr bool is_field = true;
  std::uint64_t p;

  T from(const Integer& v) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
    return static_cast<T>(r.get_ui());
  }
  Integer to_integer(T v) const { return Integer(static_cast<unsigned long>(v)); }
  bool is_unit(T v) const { return v != 0; }
  T add(T a, T b) const { return static_cast<T>((std::uint64_t{a} + b) % p); }
  T sub(T a, T b) const { return static_cast<T>((std::uint64_t{a} + p - b) % p); }
  T mul(T a, T b) const { return static_cast<T>(std::uint64_t{a} * b % p); }
  T neg(T a) const { return a == 0 ? 0 : static_cast<T>(p - a); }
  bool divides(T, T) const { return true; }
  T inverse(T a) const {
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<T>(result);
  }
  T quot(T b, T a) const { return mul(b, inverse(a)); }
  T gcdext(T a, T, T& s, T& t) const {
    s = inverse(a);
    t = 0;
    return 1;
  }
  bool less_mag(T, T) const { return false; }
};

template <class Ring>
class Eliminator {
 public:
  using T = typename Ring::T;
  struct Cell {
    std::uint32_t col;
    T val;
  };
  struct Pivot {
    std::uint32_t row;
    std::uint32_t col;
    T val;
  };

  Eliminator(const SparseIntMatrix& m, Ring ring, const SmithOptions& options, SmithTransforms* log)
      : R_(std::move(ring)), opt_(options), log_(log) {
    rows_.resize(m.rows());
    row_alive_.assign(m.rows(), 1);
    col_rows_.resize(m.cols());
    col_count_.assign(m.cols(), 0);
    mark_.assign(m.rows(), 0);
    for (std::uint32_t j = 0; j < m.cols(); ++j) {
      for (const auto& e : m.column(j)) {
        T v = R_.from(e.value);
        if (v == T(0)) continue;
        units_ += R_.is_unit(v);
        rows_[e.row].push_back({j, std::move(v)});
        col_rows_[j].push_back(e.row);
        ++col_count_[j];
        ++nnz_;
      }
      if (col_count_[j]) queue_.emplace(col_count_[j], j);
    }
    row_size_.assign(m.rows(), 0);
    for (std::uint32_t r = 0; r < m.rows(); ++r) set_row_size(r, rows_[r].size());
    start_ = std::chrono::steady_clock::now();
  }

  std::vector<Pivot> run() {
    while (nnz_ > 0) {
      check_limits();
      if (units_ > 0) {
        std::uint32_t p = 0, c = 0;
        if (find_unit_pivot(p, c)) {
          eliminate_unit(p, c);
          continue;
        }
      }
      core_step();
    }
    return std::move(pivots_);
  }

 private:
  void check_limits() {
    if (opt_.max_entries && nnz_ > opt_.max_entries) {
      throw ResourceLimit("elimination exceeded " + std::to_string(opt_.max_entries) + " active entries");
    }
    if (opt_.max_seconds > 0 && (++steps_ & 255) == 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > opt_.max_seconds) throw ResourceLimit("elimination exceeded the time cap");
    }
  }

  const T* entry(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Cell& x, std::uint32_t col) { return x.col < col; });
    if (it != row.end() && it->col == c) return &it->val;
    return nullptr;
  }

  void set_count(std::uint32_t c, std::uint32_t count) {
    if (col_count_[c]) queue_.erase({col_count_[c], c});
    col_count_[c] = count;
    if (count) queue_.emplace(count, c);
  }

  void set_row_size(std::uint32_t r, std::size_t size) {
    if (row_size_[r]) row_queue_.erase({row_size_[r], r});
    row_size_[r] = static_cast<std::uint32_t>(size);
    if (size) row_queue_.emplace(row_size_[r], r);
  }

  /// Live rows holding an entry in column c; compacts the stored list.
  const std::vector<std::uint32_t>& gather(std::uint32_t c) {
    auto& list = col_rows_[c];
    ++stamp_;
    std::size_t w = 0;
    for (std::uint32_t r : list) {
      if (!row_alive_[r] || mark_[r] == stamp_ || !entry(r, c)) continue;
      mark_[r] = stamp_;
      list[w++] = r;
    }
    list.resize(w);
    return list;
  }

  /// Installs a new sorted row r, updating column counts and lists.
  void replace_row(std::uint32_t r, std::vector<Cell>& fresh) {
    auto& old = rows_[r];
    std::size_t i = 0, k = 0;
    while (i < old.size() || k < fresh.size()) {
      if (k == fresh.size() || (i < old.size() && old[i].col < fresh[k].col)) {
        const auto c = old[i].col;
        units_ -= R_.is_unit(old[i].val);
        --nnz_;
        set_count(c, col_count_[c] - 1);
        ++i;
      } else if (i == old.size() || fresh[k].col < old[i].col) {
        const auto c = fresh[k].col;
        units_ += R_.is_unit(fresh[k].val);
        ++nnz_;
        set_count(c, col_count_[c] + 1);
        col_rows_[c].push_back(r);
        ++k;
      } else {
        units_ += R_.is_unit(fresh[k].val);
        units_ -= R_.is_unit(old[i].val);
        ++i;
        ++k;
      }
    }
    old.swap(fresh);
    fresh.clear();
    set_row_size(r, old.size());
  }

  // a * row_x + b * row_y into out
  void combine(const std::vector<Cell>& x, const T& a, const std::vector<Cell>& y, const T& b, std::vector<Cell>& out) {
    out.clear();
    std::size_t i = 0, k = 0;
    const bool a_one = a == T(1);
    while (i < x.size() || k < y.size()) {
      if (k == y.size() || (i < x.size() && x[i].col < y[k].col)) {
        T v = a_one ? x[i].val : R_.mul(a, x[i].val);
        if (v != T(0)) out.push_back({x[i].col, std::move(v)});
        ++i;
      } else if (i == x.size() || y[k].col < x[i].col) {
        T v = R_.mul(b, y[k].val);
        if (v != T(0)) out.push_back({y[k].col, std::move(v)});
        ++k;
      } else {
        T v = R_.add(a_one ? x[i].val : R_.mul(a, x[i].val), R_.mul(b, y[k].val));
        if (v != T(0)) out.push_back({x[i].col, std::move(v)});
        ++i;
        ++k;
      }
    }
  }

  // row_r += f * row_p
  void row_axpy(std::uint32_t r, std::uint32_t p, const T& f) {
    combine(rows_[r], T(1), rows_[p], f, scratch_);
    replace_row(r, scratch_);
    if (log_) log_->log_row({ElementaryOp::Kind::axpy, r, p, R_.to_integer(f), {}, {}, {}});
  }

  // (row_p, row_q) <- (a row_p + b row_q, c row_p + d row_q)
  void row_mix(std::uint32_t p, std::uint32_t q, const T& a, const T& b, const T& c, const T& d) {
    std::vector<Cell> np, nq;
    combine(rows_[p], a, rows_[q], b, np);
    combine(rows_[p], c, rows_[q], d, nq);
    replace_row(p, np);
    replace_row(q, nq);
    if (log_) {
      log_->log_row({ElementaryOp::Kind::mix, p, q, R_.to_integer(a), R_.to_integer(b), R_.to_integer(c),
                     R_.to_integer(d)});
    }
  }

  void set_entry(std::uint32_t r, std::uint32_t c, T v) {
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Cell& x, std::uint32_t col) { return x.col < col; });
    const bool present = it != row.end() && it->col == c;
    if (present) {
      units_ -= R_.is_unit(it->val);
      if (v == T(0)) {
        row.erase(it);
        --nnz_;
        set_count(c, col_count_[c] - 1);
      } else {
        units_ += R_.is_unit(v);
        it->val = std::move(v);
      }
    } else if (v != T(0)) {
      units_ += R_.is_unit(v);
      row.insert(it, Cell{c, std::move(v)});
      ++nnz_;
      set_count(c, col_count_[c] + 1);
      col_rows_[c].push_back(r);
    }
    set_row_size(r, row.size());
  }

  // (col_c, col_j) <- (a col_c + b col_j, cc col_c + d col_j)
  void col_mix(std::uint32_t c, std::uint32_t j, const T& a, const T& b, const T& cc, const T& d) {
    std::vector<std::uint32_t> touched = gather(c);
    const auto& other = gather(j);
    touched.insert(touched.end(), other.begin(), other.end());
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::uint32_t r : touched) {
      const T* pc = entry(r, c);
      const T* pj = entry(r, j);
      const T xc = pc ? *pc : T(0);
      const T xj = pj ? *pj : T(0);
      set_entry(r, c, R_.add(R_.mul(a, xc), R_.mul(b, xj)));
      set_entry(r, j, R_.add(R_.mul(cc, xc), R_.mul(d, xj)));
    }
    if (log_) {
      log_->log_col({ElementaryOp::Kind::mix, c, j, R_.to_integer(a), R_.to_integer(b), R_.to_integer(cc),
                     R_.to_integer(d)});
    }
  }

  bool find_unit_pivot(std::uint32_t& best_row, std::uint32_t& best_col) {
    constexpr int kColumnsWithCandidates = 4;
    std::uint64_t best_cost = UINT64_MAX;
    int examined = 0;
    for (auto it = queue_.begin(); it != queue_.end();) {
      const auto [count, c] = *it;
      ++it;  // gather() does not touch the queue
      bool found = false;
      for (std::uint32_t r : gather(c)) {
        const T* v = entry(r, c);
        if (!R_.is_unit(*v)) continue;
        const std::uint64_t cost = std::uint64_t(rows_[r].size() - 1) * (count - 1);
        if (cost < best_cost || (cost == best_cost && (r < best_row || (r == best_row && c < best_col)))) {
          best_cost = cost;
          best_row = r;
          best_col = c;
        }
        found = true;
      }
      if (found && (best_cost == 0 || ++examined >= kColumnsWithCandidates)) break;
    }
    // Short rows: a unit in a row of length one clears its column without fill.
    examined = 0;
    for (auto it = row_queue_.begin(); best_cost > 0 && it != row_queue_.end(); ++it) {
      const auto [size, r] = *it;
      bool found = false;
      for (const auto& cell : rows_[r]) {
        if (!R_.is_unit(cell.val)) continue;
        const std::uint64_t cost = std::uint64_t(size - 1) * (col_count_[cell.col] - 1);
        if (cost < best_cost || (cost == best_cost && (r < best_row || (r == best_row && cell.col < best_col)))) {
          best_cost = cost;
          best_row = r;
          best_col = cell.col;
        }
        found = true;
      }
      if (found && ++examined >= kColumnsWithCandidates) break;
    }
    return best_cost != UINT64_MAX;
  }

  void retire_pivot(std::uint32_t p, std::uint32_t c) {
    const T pivot = *entry(p, c);
    if (log_) {
      // Column operations clearing the rest of the pivot row. Column c is zero
      // outside row p, so no other row changes.
      for (const auto& cell : rows_[p]) {
        if (cell.col == c) continue;
        const T t = R_.neg(R_.quot(cell.val, pivot));
        log_->log_col({ElementaryOp::Kind::axpy, cell.col, c, R_.to_integer(t), {}, {}, {}});
      }
    }
    for (const auto& cell : rows_[p]) {
      units_ -= R_.is_unit(cell.val);
      --nnz_;
      set_count(cell.col, col_count_[cell.col] - 1);
    }
    rows_[p].clear();
    set_row_size(p, 0);
    row_alive_[p] = 0;
    pivots_.push_back({p, c, pivot});
  }

  void eliminate_unit(std::uint32_t p, std::uint32_t c) {
    const T u = *entry(p, c);
    const std::vector<std::uint32_t> targets = gather(c);
    for (std::uint32_t r : targets) {
      if (r == p) continue;
      const T f = R_.neg(R_.quot(*entry(r, c), u));
      row_axpy(r, p, f);
    }
    retire_pivot(p, c);
  }

  void core_step() {
    // Entry of least magnitude, then least Markowitz cost, then (row, col).
    bool have = false;
    std::uint32_t p = 0, c = 0;
    std::uint64_t cost = 0;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (!row_alive_[r]) continue;
      for (const auto& cell : rows_[r]) {
        const std::uint64_t k = std::uint64_t(rows_[r].size() - 1) * (col_count_[cell.col] - 1);
        bool better = !have;
        if (have) {
          const T& cur = *entry(p, c);
          if (R_.less_mag(cell.val, cur)) {
            better = true;
          } else if (!R_.less_mag(cur, cell.val)) {
            better = k < cost;
          }
        }
        if (better) {
          have = true;
          p = r;
          c = cell.col;
          cost = k;
        }
      }
    }
    if (!have) throw InternalInvariant("core step with no active entries");

    while (true) {
      // Clear column c below and above the pivot.
      for (std::uint32_t r : std::vector<std::uint32_t>(gather(c))) {
        if (r == p) continue;
        const T a = *entry(p, c);
        const T b = *entry(r, c);
        if (R_.divides(a, b)) {
          row_axpy(r, p, R_.neg(R_.quot(b, a)));
        } else {
          T s, t;
          const T g = R_.gcdext(a, b, s, t);
          row_mix(p, r, s, t, R_.neg(R_.quot(b, g)), R_.quot(a, g));
        }
      }
      // Clear the pivot row with column operations.
      bool dirty = false;
      const std::vector<Cell> snapshot = rows_[p];
      for (const auto& cell : snapshot) {
        if (cell.col == c) continue;
        const T a = *entry(p, c);
        const T* e = entry(p, cell.col);
        if (!e) continue;
        if (R_.divides(a, *e)) {
          // column c is zero outside row p, so only row p changes
          if (log_) {
            log_->log_col({ElementaryOp::Kind::axpy, cell.col, c, R_.to_integer(R_.neg(R_.quot(*e, a))), {}, {}, {}});
          }
          set_entry(p, cell.col, T(0));
        } else {
          T s, t;
          const T ev = *e;
          const T g = R_.gcdext(a, ev, s, t);
          col_mix(c, cell.col, s, t, R_.neg(R_.quot(ev, g)), R_.quot(a, g));
          dirty = true;
          break;
        }
      }
      if (!dirty) break;
    }
    // row p and column c now meet only at the pivot
    retire_pivot_without_log(p, c);
  }

  void retire_pivot_without_log(std::uint32_t p, std::uint32_t c) {
    const T pivot = *entry(p, c);
    units_ -= R_.is_unit(pivot);
    --nnz_;
    set_count(c, col_count_[c] - 1);
    rows_[p].clear();
    set_row_size(p, 0);
    row_alive_[p] = 0;
    pivots_.push_back({p, c, pivot});
  }

  Ring R_;
  const SmithOptions& opt_;
  SmithTransforms* log_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<char> row_alive_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_count_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> queue_;
  std::vector<std::uint32_t> row_size_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> row_queue_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::size_t units_ = 0;
  std::size_t nnz_ = 0;
  std::size_t steps_ = 0;
  std::vector<Cell> scratch_;
  std::vector<Pivot> pivots_;
  std::chrono::steady_clock::time_point start_;
};

template <class Ring>
void collect(const SparseIntMatrix& m, Ring ring, const SmithOptions& options, SmithForm& form) {
  SmithTransforms* log = form.transforms ? &*form.transforms : nullptr;
  Eliminator<Ring> elim(m, ring, options, log);
  for (auto& p : elim.run()) {
    form.pivots.push_back({p.row, p.col});
    form.diagonal.push_back(ring.to_integer(p.val));
  }
}

// Positive diagonal in divisibility order.
void normalize(SmithForm& form) {
  auto* log = form.transforms ? &*form.transforms : nullptr;
  for (std::size_t k = 0; k < form.diagonal.size(); ++k) {
    if (form.diagonal[k] < 0) {
      form.diagonal[k] = -form.diagonal[k];
      if (log) log->log_row({ElementaryOp::Kind::negate, form.pivots[k].row, 0, {}, {}, {}, {}});
    }
  }
  std::vector<std::size_t> ones, big;
  for (std::size_t k = 0; k < form.diagonal.size(); ++k) (form.diagonal[k] == 1 ? ones : big).push_back(k);
  std::stable_sort(big.begin(), big.end(), [&](std::size_t x, std::size_t y) { return form.diagonal[x] < form.diagonal[y]; });
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      Integer& a = form.diagonal[big[i]];
      Integer& b = form.diagonal[big[j]];
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const auto [p, c] = form.pivots[big[i]];
      const auto [q, c2] = form.pivots[big[j]];
      if (log) {
        log->log_col({ElementaryOp::Kind::axpy, c, c2, Integer(1), {}, {}, {}});
        log->log_row({ElementaryOp::Kind::mix, p, q, s, t, Integer(-b / g), Integer(a / g)});
        log->log_col({ElementaryOp::Kind::axpy, c2, c, Integer(-t * b / g), {}, {}, {}});
      }
      const Integer lcm = a / g * b;
      a = g;
      b = lcm;
    }
  }
  SmithForm sorted;
  for (auto k : ones) {
    sorted.diagonal.push_back(form.diagonal[k]);
    sorted.pivots.push_back(form.pivots[k]);
  }
  for (auto k : big) {
    sorted.diagonal.push_back(form.diagonal[k]);
    sorted.pivots.push_back(form.pivots[k]);
  }
  form.diagonal = std::move(sorted.diagonal);
  form.pivots = std::move(sorted.pivots);
}

}  // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (const auto& d : diagonal) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

std::vector<long> SmithForm::pivot_of_row() const {
  std::vector<long> out(rows, -1);
  for (std::size_t k = 0; k < pivots.size(); ++k) out[pivots[k].row] = static_cast<long>(k);
  return out;
}

std::vector<long> SmithForm::pivot_of_col() const {
  std::vector<long> out(cols, -1);
  for (std::size_t k = 0; k < pivots.size(); ++k) out[pivots[k].col] = static_cast<long>(k);
  return out;
}

std::vector<Integer> SmithTransforms::apply_u(std::vector<Integer> x) const {
  for (const auto& op : row_ops_) {
    switch (op.kind) {
      case ElementaryOp::Kind::axpy:
        if (x[op.j] != 0) x[op.i] += op.a * x[op.j];
        break;
      case ElementaryOp::Kind::mix: {
        Integer xi = op.a * x[op.i] + op.b * x[op.j];
        x[op.j] = op.c * x[op.i] + op.d * x[op.j];
        x[op.i] = std::move(xi);
        break;
      }
      case ElementaryOp::Kind::negate:
        x[op.i] = -x[op.i];
        break;
    }
  }
  return x;
}

std::vector<Integer> SmithTransforms::apply_u_inverse(std::vector<Integer> x) const {
  for (auto it = row_ops_.rbegin(); it != row_ops_.rend(); ++it) {
    const auto& op = *it;
    switch (op.kind) {
      case ElementaryOp::Kind::axpy:
        if (x[op.j] != 0) x[op.i] -= op.a * x[op.j];
        break;
      case ElementaryOp::Kind::mix: {
        const Integer det = op.a * op.d - op.b * op.c;
        Integer xi = (op.d * x[op.i] - op.b * x[op.j]) * det;
        x[op.j] = (op.a * x[op.j] - op.c * x[op.i]) * det;
        x[op.i] = std::move(xi);
        break;
      }
      case ElementaryOp::Kind::negate:
        x[op.i] = -x[op.i];
        break;
    }
  }
  return x;
}

std::vector<Integer> SmithTransforms::apply_v(std::vector<Integer> x) const {
  for (auto it = col_ops_.rbegin(); it != col_ops_.rend(); ++it) {
    const auto& op = *it;
    switch (op.kind) {
      case ElementaryOp::Kind::axpy:
        if (x[op.i] != 0) x[op.j] += op.a * x[op.i];
        break;
      case ElementaryOp::Kind::mix: {
        Integer xi = op.a * x[op.i] + op.c * x[op.j];
        x[op.j] = op.b * x[op.i] + op.d * x[op.j];
        x[op.i] = std::move(xi);
        break;
      }
      case ElementaryOp::Kind::negate:
        x[op.i] = -x[op.i];
        break;
    }
  }
  return x;
}

std::vector<Integer> SmithTransforms::apply_v_inverse(std::vector<Integer> x) const {
  for (const auto& op : col_ops_) {
    switch (op.kind) {
      case ElementaryOp::Kind::axpy:
        if (x[op.i] != 0) x[op.j] -= op.a * x[op.i];
        break;
      case ElementaryOp::Kind::mix: {
        const Integer det = op.a * op.d - op.b * op.c;
        Integer xi = (op.d * x[op.i] - op.c * x[op.j]) * det;
        x[op.j] = (op.a * x[op.j] - op.b * x[op.i]) * det;
        x[op.i] = std::move(xi);
        break;
      }
      case ElementaryOp::Kind::negate:
        x[op.i] = -x[op.i];
        break;
    }
  }
  return x;
}

SmithForm smith_normal_form(const SparseIntMatrix& m, const SmithOptions& options) {
  SmithForm form;
  form.rows = m.rows();
  form.cols = m.cols();
  if (options.want_transforms) form.transforms.emplace(m.rows(), m.cols());
  try {
    collect(m, CheckedInt{}, options, form);
  } catch (const Overflow&) {
    form.pivots.clear();
    form.diagonal.clear();
    if (options.want_transforms) form.transforms.emplace(m.rows(), m.cols());
    form.used_bignum = true;
    collect(m, BigInt{}, options, form);
  }
  normalize(form);

  for (std::uint32_t p : options.check_primes) {
    std::size_t divisible = 0;
    for (const auto& d : form.diagonal) divisible += mpz_divisible_ui_p(d.get_mpz_t(), p) != 0;
    const std::size_t expected = form.rank() - divisible;
    SmithOptions field = options;
    field.want_transforms = false;
    const std::size_t got = rank_mod_p(m, p, field);
    if (got != expected) {
      throw InternalInvariant("rank mod " + std::to_string(p) + " is " + std::to_string(got) + ", Smith form predicts " +
                              std::to_string(expected));
    }
  }
  return form;
}

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const SmithOptions& options) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  Eliminator<ModP> elim(m, ModP{p}, options, nullptr);
  return elim.run().size();
}

bool verify_smith(const SparseIntMatrix& m, const SmithForm& form) {
  if (!form.transforms) throw InvalidInput("Smith form was computed without transforms");
  const auto& tr = *form.transforms;
  // U*M stored by column.
  std::vector<std::vector<Integer>> um(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Integer> x(m.rows());
    for (const auto& e : m.column(j)) x[e.row] = e.value;
    um[j] = tr.apply_u(std::move(x));
  }
  const auto prow = form.pivot_of_row();
  const auto pcol = form.pivot_of_col();
  // (U*M*V) e_k = (U*M) (V e_k)
  for (std::size_t k = 0; k < m.cols(); ++k) {
    std::vector<Integer> ek(m.cols());
    ek[k] = 1;
    const auto vk = tr.apply_v(std::move(ek));
    std::vector<Integer> col(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (vk[j] == 0) continue;
      for (std::size_t i = 0; i < m.rows(); ++i) col[i] += um[j][i] * vk[j];
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Integer expected = 0;
      if (pcol[k] >= 0 && prow[i] == pcol[k]) expected = form.diagonal[static_cast<std::size_t>(pcol[k])];
      if (col[i] != expected) return false;
    }
  }
  return true;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

}  // namespace matchhom
