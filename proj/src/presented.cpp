#include "matchhom/presented.hpp"

#include <chrono>

#include "matchhom/errors.hpp"
#include "matchhom/hermite.hpp"

namespace matchhom {

namespace {

Integer reduce(const Integer& v, const Integer& order) {
  if (order == 0) return v;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), order.get_mpz_t());
  return r;
}

bool vanishes_mod(const Integer& v, std::uint32_t order) {
  if (order == 0) return v == 0;
  return mpz_divisible_ui_p(v.get_mpz_t(), order) != 0;
}

}  // namespace

PresentedChainComplex::PresentedChainComplex(int min_degree, std::vector<std::vector<std::uint32_t>> orders,
                                             std::vector<SparseIntMatrix> boundaries)
    : min_degree_(min_degree), orders_(std::move(orders)), boundaries_(std::move(boundaries)) {
  if (orders_.size() != boundaries_.size()) throw InvalidInput("one boundary matrix per degree is required");
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    const std::size_t below = k == 0 ? 0 : orders_[k - 1].size();
    if (boundaries_[k].cols() != orders_[k].size() || boundaries_[k].rows() != below) {
      throw InvalidInput("boundary in degree " + std::to_string(min_degree_ + static_cast<int>(k)) +
                         " has the wrong shape");
    }
  }
  top_ = SparseIntMatrix(orders_.empty() ? 0 : orders_.back().size(), 0);
}

PresentedChainComplex PresentedChainComplex::from_free(const FreeChainComplex& complex) {
  std::vector<std::vector<std::uint32_t>> orders;
  std::vector<SparseIntMatrix> boundaries;
  for (int d = complex.min_dim(); d <= complex.max_dim(); ++d) {
    orders.emplace_back(complex.rank(d), 0);
    boundaries.push_back(complex.boundary(d));
  }
  return PresentedChainComplex(complex.min_dim(), std::move(orders), std::move(boundaries));
}

std::size_t PresentedChainComplex::rank(int d) const { return orders(d).size(); }

const std::vector<std::uint32_t>& PresentedChainComplex::orders(int d) const {
  if (d < min_degree_ || d > max_degree()) return none_;
  return orders_[static_cast<std::size_t>(d - min_degree_)];
}

std::size_t PresentedChainComplex::torsion_count(int d) const {
  std::size_t k = 0;
  for (auto m : orders(d)) k += m != 0;
  return k;
}

const SparseIntMatrix& PresentedChainComplex::boundary(int d) const {
  if (d >= min_degree_ && d <= max_degree()) return boundaries_[static_cast<std::size_t>(d - min_degree_)];
  if (d == max_degree() + 1) return top_;
  return empty_;
}

bool PresentedChainComplex::check_d_squared() const {
  for (int d = min_degree_; d <= max_degree(); ++d) {
    const auto& lower = orders(d - 1);
    const auto& bd = boundary(d);
    const auto& own = orders(d);
    for (std::size_t j = 0; j < bd.cols(); ++j) {
      if (own[j] == 0) continue;
      for (const auto& e : bd.column(j)) {
        if (!vanishes_mod(own[j] * e.value, lower[e.row])) return false;
      }
    }
    if (d - 1 < min_degree_) continue;
    const auto dd = boundary(d - 1).multiply(bd);
    const auto& lowest = orders(d - 2);
    for (std::size_t j = 0; j < dd.cols(); ++j) {
      for (const auto& e : dd.column(j)) {
        if (!vanishes_mod(e.value, lowest[e.row])) return false;
      }
    }
  }
  return true;
}

HomologyModel::HomologyModel(const PresentedChainComplex& complex, int d, const SmithOptions& options)
    : HomologyModel(complex.boundary(d), complex.orders(d - 1), complex.boundary(d + 1), complex.orders(d), options) {}

HomologyModel::HomologyModel(const SparseIntMatrix& d_in, std::vector<std::uint32_t> lower_orders,
                             const SparseIntMatrix& d_out, std::vector<std::uint32_t> orders,
                             const SmithOptions& options)
    : chain_rank_(orders.size()), d_in_(d_in), lower_orders_(std::move(lower_orders)), orders_(std::move(orders)) {
  if (d_in_.cols() != chain_rank_ || d_in_.rows() != lower_orders_.size() || d_out.rows() != chain_rank_) {
    throw InvalidInput("homology model: boundary shapes do not match the generator lists");
  }
  SmithOptions opts = options;
  opts.want_transforms = true;

  // cycles: x with d_in x in the relations, i.e. the kernel of [d_in | R]
  SparseIntMatrix a = d_in_;
  for (std::uint32_t i = 0; i < lower_orders_.size(); ++i) {
    if (lower_orders_[i] != 0) a.push_column({{i, Integer(lower_orders_[i])}});
  }
  kernel_form_ = smith_normal_form(a, opts);
  const auto col_pivot = kernel_form_.pivot_of_col();
  for (std::uint32_t j = 0; j < a.cols(); ++j) {
    if (col_pivot[j] < 0) kernel_cols_.push_back(j);
  }

  // boundaries and relations, in kernel coordinates
  SparseIntMatrix c(kernel_cols_.size(), 0);
  auto push = [&](const std::vector<Integer>& x) {
    const auto k = kernel_coordinates(x);
    std::vector<SparseIntMatrix::Entry> col;
    for (std::uint32_t i = 0; i < k.size(); ++i) {
      if (k[i] != 0) col.push_back({i, k[i]});
    }
    c.push_column(std::move(col));
  };
  for (std::size_t j = 0; j < d_out.cols(); ++j) {
    std::vector<Integer> x(chain_rank_);
    for (const auto& e : d_out.column(j)) x[e.row] = e.value;
    push(x);
  }
  for (std::size_t i = 0; i < chain_rank_; ++i) {
    if (orders_[i] == 0) continue;
    std::vector<Integer> x(chain_rank_);
    x[i] = orders_[i];
    push(x);
  }
  quotient_form_ = smith_normal_form(c, opts);

  std::vector<Integer> torsion;
  for (std::size_t k = 0; k < quotient_form_.rank(); ++k) {
    if (quotient_form_.diagonal[k] == 1) continue;
    coord_rows_.push_back(quotient_form_.pivots[k].row);
    coord_order_.push_back(quotient_form_.diagonal[k]);
    torsion.push_back(quotient_form_.diagonal[k]);
  }
  const auto row_pivot = quotient_form_.pivot_of_row();
  std::size_t free_rank = 0;
  for (std::uint32_t i = 0; i < kernel_cols_.size(); ++i) {
    if (row_pivot[i] >= 0) continue;
    coord_rows_.push_back(i);
    coord_order_.emplace_back(0);
    ++free_rank;
  }
  group_ = AbelianGroup(free_rank, std::move(torsion));
}

std::vector<Integer> HomologyModel::kernel_coordinates(const std::vector<Integer>& x) const {
  if (x.size() != chain_rank_) throw InvalidInput("chain coordinates have the wrong length");
  const auto r = d_in_.apply(x);
  std::vector<Integer> z = x;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint32_t m = lower_orders_[i];
    if (m == 0) {
      if (r[i] != 0) throw NotACycle("chain is not a cycle");
      continue;
    }
    if (!vanishes_mod(r[i], m)) throw NotACycle("chain is not a cycle modulo the relations");
    z.push_back(-r[i] / m);
  }
  const auto w = kernel_form_.transforms->apply_v_inverse(std::move(z));
  for (const auto& p : kernel_form_.pivots) {
    if (w[p.col] != 0) throw InternalInvariant("cycle has a component outside the kernel basis");
  }
  std::vector<Integer> out;
  out.reserve(kernel_cols_.size());
  for (auto j : kernel_cols_) out.push_back(w[j]);
  return out;
}

std::vector<Integer> HomologyModel::classify(const std::vector<Integer>& x) const {
  const auto y = quotient_form_.transforms->apply_u(kernel_coordinates(x));
  std::vector<Integer> out;
  out.reserve(coord_rows_.size());
  for (std::size_t k = 0; k < coord_rows_.size(); ++k) out.push_back(reduce(y[coord_rows_[k]], coord_order_[k]));
  return out;
}

std::vector<Integer> HomologyModel::generator(std::size_t k) const {
  if (k >= coord_rows_.size()) throw InvalidInput("homology coordinate out of range");
  std::vector<Integer> e(kernel_cols_.size());
  e[coord_rows_[k]] = 1;
  const auto c = quotient_form_.transforms->apply_u_inverse(std::move(e));
  std::vector<Integer> w(kernel_form_.cols);
  for (std::size_t i = 0; i < kernel_cols_.size(); ++i) w[kernel_cols_[i]] = c[i];
  auto z = kernel_form_.transforms->apply_v(std::move(w));
  z.resize(chain_rank_);
  return z;
}

bool GroupHom::is_zero() const {
  for (const auto& col : columns) {
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (reduce(col[i], target_orders[i]) != 0) return false;
    }
  }
  return true;
}

GroupHom compose(const GroupHom& second, const GroupHom& first) {
  if (first.target_orders != second.source_orders) throw InvalidInput("composing maps between different groups");
  GroupHom out{first.source_orders, second.target_orders, {}};
  for (const auto& col : first.columns) {
    std::vector<Integer> v(second.target_orders.size());
    for (std::size_t j = 0; j < col.size(); ++j) {
      if (col[j] == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += col[j] * second.columns[j][i];
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = reduce(v[i], second.target_orders[i]);
    out.columns.push_back(std::move(v));
  }
  return out;
}

GroupHom GroupHom::minus_multiple_of_identity(const Integer& k) const {
  if (source_orders != target_orders) throw InvalidInput("identity needs equal source and target");
  GroupHom out = *this;
  for (std::size_t j = 0; j < out.columns.size(); ++j) {
    out.columns[j][j] -= k;
    out.columns[j][j] = reduce(out.columns[j][j], target_orders[j]);
  }
  return out;
}

GroupHom induced_map(const HomologyModel& source, const SparseIntMatrix& f_d, const HomologyModel& target) {
  if (f_d.cols() != source.chain_rank() || f_d.rows() != target.chain_rank()) {
    throw InvalidInput("chain map has the wrong shape");
  }
  GroupHom out{source.coordinate_orders(), target.coordinate_orders(), {}};
  for (std::size_t k = 0; k < source.size(); ++k) out.columns.push_back(target.classify(f_d.apply(source.generator(k))));
  return out;
}

bool check_exact(const GroupHom& alpha, const GroupHom& beta) {
  if (alpha.target_orders != beta.source_orders) throw InvalidInput("maps do not compose");
  if (!compose(beta, alpha).is_zero()) return false;
  const auto& mid = beta.source_orders;
  const std::size_t kb = mid.size();
  const std::size_t kc = beta.target_orders.size();

  // ker beta = projection of ker [beta | relations of C]
  std::vector<IntVector> cols = beta.columns;
  for (std::size_t i = 0; i < kc; ++i) {
    if (beta.target_orders[i] == 0) continue;
    IntVector v(kc);
    v[i] = beta.target_orders[i];
    cols.push_back(std::move(v));
  }
  const auto kernel = integer_kernel(cols, kc);

  Lattice image(kb);
  for (const auto& col : alpha.columns) image.insert(col);
  for (std::size_t i = 0; i < kb; ++i) {
    if (mid[i] == 0) continue;
    IntVector v(kb);
    v[i] = mid[i];
    image.insert(std::move(v));
  }
  for (const auto& k : kernel) {
    IntVector x(k.begin(), k.begin() + static_cast<long>(kb));
    if (!image.contains(std::move(x))) return false;
  }
  return true;
}

HomologySummary homology_general(const PresentedChainComplex& complex, const std::string& id,
                                 const SmithOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  HomologySummary out;
  out.complex_id = id;
  out.min_degree = complex.min_degree();
  for (int d = complex.min_degree(); d <= complex.max_degree(); ++d) {
    out.groups.push_back(HomologyModel(complex, d, options).group());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace matchhom
