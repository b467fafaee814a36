#include "matchhom/hermite.hpp"

#include "matchhom/errors.hpp"

namespace matchhom {

namespace {

std::size_t leading(const IntVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  return v.size();
}

void axpy(IntVector& y, const Integer& t, const IntVector& x) {
  if (t == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i] != 0) y[i] += t * x[i];
  }
}

}  // namespace

void Lattice::insert(IntVector v) {
  if (v.size() != dim_) throw InvalidInput("lattice vector has the wrong length");
  while (true) {
    const std::size_t p = leading(v);
    if (p == dim_) return;
    auto it = rows_.find(p);
    if (it == rows_.end()) {
      if (v[p] < 0) {
        for (auto& x : v) x = -x;
      }
      rows_.emplace(p, std::move(v));
      return;
    }
    IntVector& b = it->second;
    const Integer a = b[p];
    const Integer c = v[p];
    if (mpz_divisible_p(c.get_mpz_t(), a.get_mpz_t())) {
      axpy(v, Integer(-c / a), b);
      continue;
    }
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    IntVector nb(dim_), nv(dim_);
    const Integer cg = -c / g;
    const Integer ag = a / g;
    for (std::size_t i = 0; i < dim_; ++i) {
      nb[i] = s * b[i] + t * v[i];
      nv[i] = cg * b[i] + ag * v[i];
    }
    b = std::move(nb);
    v = std::move(nv);
  }
}

bool Lattice::contains(IntVector v) const { return coordinates(std::move(v)).has_value(); }

std::optional<IntVector> Lattice::coordinates(IntVector v) const {
  if (v.size() != dim_) throw InvalidInput("lattice vector has the wrong length");
  IntVector coords(rows_.size());
  std::size_t k = 0;
  for (const auto& [p, b] : rows_) {
    // entries before p are already zero
    for (std::size_t i = 0; i < p; ++i) {
      if (v[i] != 0) return std::nullopt;
    }
    if (v[p] != 0) {
      if (!mpz_divisible_p(v[p].get_mpz_t(), b[p].get_mpz_t())) return std::nullopt;
      const Integer q = v[p] / b[p];
      axpy(v, Integer(-q), b);
      coords[k] = q;
    }
    ++k;
  }
  for (const auto& x : v) {
    if (x != 0) return std::nullopt;
  }
  return coords;
}

void Lattice::hermite_reduce() {
  for (auto it = rows_.begin(); it != rows_.end(); ++it) {
    const std::size_t p = it->first;
    const Integer& pivot = it->second[p];
    for (auto above = rows_.begin(); above != it; ++above) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), above->second[p].get_mpz_t(), pivot.get_mpz_t());
      axpy(above->second, Integer(-q), it->second);
    }
  }
}

std::vector<IntVector> Lattice::basis() const {
  std::vector<IntVector> out;
  out.reserve(rows_.size());
  for (const auto& [p, b] : rows_) out.push_back(b);
  return out;
}

std::vector<std::size_t> Lattice::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, b] : rows_) out.push_back(p);
  return out;
}

std::vector<IntVector> integer_kernel(const std::vector<IntVector>& columns, std::size_t rows) {
  const std::size_t n = columns.size();
  Lattice aug(rows + n);
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != rows) throw InvalidInput("kernel column has the wrong length");
    IntVector v(rows + n);
    for (std::size_t i = 0; i < rows; ++i) v[i] = columns[j][i];
    v[rows + j] = 1;
    aug.insert(std::move(v));
  }
  std::vector<IntVector> out;
  for (const auto& b : aug.basis()) {
    bool zero_head = true;
    for (std::size_t i = 0; i < rows && zero_head; ++i) zero_head = b[i] == 0;
    if (zero_head) out.emplace_back(b.begin() + static_cast<long>(rows), b.end());
  }
  return out;
}

}  // namespace matchhom
