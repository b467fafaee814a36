#pragma once

// Reference implementations used only by the tests. They are deliberately
// naive so that they share no code with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Int = mpz_class;
using Dense = std::vector<std::vector<Int>>;

/// Faces of a graph complex by depth-first search over the allowed edges.
/// capacity[v] bounds the degree of v (loops count twice); extra(edges) can veto.
inline std::vector<std::size_t> count_faces(const std::vector<int>& capacity, bool loops,
                                            const std::function<bool(const std::vector<std::pair<int, int>>&)>& keep =
                                                {}) {
  const int n = static_cast<int>(capacity.size());
  std::vector<std::pair<int, int>> all;
  for (int a = 1; a <= n; ++a) {
    for (int b = a; b <= n; ++b) {
      if (a != b || loops) all.emplace_back(a, b);
    }
  }
  std::vector<std::size_t> counts;
  std::vector<int> deg(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::pair<int, int>> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!keep || keep(chosen)) {
      if (counts.size() <= chosen.size()) counts.resize(chosen.size() + 1, 0);
      ++counts[chosen.size()];
    }
    for (std::size_t i = start; i < all.size(); ++i) {
      auto [a, b] = all[i];
      deg[a] += 1;
      deg[b] += 1;
      if (deg[a] <= capacity[a - 1] && deg[b] <= capacity[b - 1]) {
        chosen.push_back(all[i]);
        rec(i + 1);
        chosen.pop_back();
      }
      deg[a] -= 1;
      deg[b] -= 1;
    }
  };
  rec(0);
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return counts;
}

/// Diagonal of the Smith normal form by the textbook algorithm.
inline std::vector<Int> smith_diagonal(Dense a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<Int> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero magnitude in the trailing block
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == m) {
        std::sort(diag.begin(), diag.end());
        return diag;
      }
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        Int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      // divisibility: fold a row that the pivot does not divide into row t
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

inline std::size_t rank_mod(Dense a, unsigned long p) {
  for (auto& row : a) {
    for (auto& x : row) {
      x %= static_cast<long>(p);
      if (x < 0) x += static_cast<long>(p);
    }
  }
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i) {
      if (a[i][j] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == m) continue;
    std::swap(a[r], a[piv]);
    Int inv;
    Int pp(static_cast<long>(p));
    mpz_invert(inv.get_mpz_t(), a[r][j].get_mpz_t(), pp.get_mpz_t());
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][j] == 0) continue;
      Int f = a[i][j] * inv % pp;
      for (std::size_t k = j; k < n; ++k) {
        a[i][k] = (a[i][k] - f * a[r][k]) % pp;
        if (a[i][k] < 0) a[i][k] += pp;
      }
    }
    ++r;
  }
  return r;
}

/// Every permutation of [N] preserving the blocks; entry 0 unused.
inline std::vector<std::vector<std::uint8_t>> young_group(const std::vector<std::vector<int>>& blocks, int total) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> g(static_cast<std::size_t>(total) + 1);
  for (int v = 0; v <= total; ++v) g[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(v);
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      out.push_back(g);
      return;
    }
    auto images = blocks[b];
    std::sort(images.begin(), images.end());
    do {
      for (std::size_t k = 0; k < images.size(); ++k) g[static_cast<std::size_t>(blocks[b][k])] = static_cast<std::uint8_t>(images[k]);
      rec(b + 1);
    } while (std::next_permutation(images.begin(), images.end()));
  };
  rec(0);
  return out;
}

inline Int binomial_matchings(int n, int k) {
  // n! / (k! 2^k (n-2k)!)
  if (2 * k > n) return 0;
  Int num = 1;
  for (int i = n - 2 * k + 1; i <= n; ++i) num *= i;
  Int den = 1;
  for (int i = 2; i <= k; ++i) den *= i;
  for (int i = 0; i < k; ++i) den *= 2;
  return num / den;
}

}  // namespace oracle
