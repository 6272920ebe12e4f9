#pragma once

// Invariant factors of an integer matrix localized at a prime p, from
// determinantal divisors: e_k = v_p(d_k) - v_p(d_{k-1}) where d_k is the gcd
// of all k x k minors. Brute force over all minors; only for small matrices.

#include <gmpxx.h>

#include <vector>

namespace oracle {

using IMat = std::vector<std::vector<mpz_class>>;

inline mpz_class det_cofactor(const IMat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    IMat minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    mpz_class t = m[0][j] * det_cofactor(minor);
    s += (j % 2 == 0) ? t : mpz_class(-t);
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline int vp(mpz_class z, long p) {
  if (z == 0) return -1;
  int k = 0;
  while (z % p == 0) {
    z /= p;
    ++k;
  }
  return k;
}

/// Nonzero-rank invariant exponents (one per unit of rank, zeros included).
inline std::vector<int> local_invariants(const IMat& m, long p) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<int> out;
  int prev = 0;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        IMat sub;
        for (auto i : ri) {
          std::vector<mpz_class> row;
          for (auto j : ci) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        mpz_class d = det_cofactor(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    const int cur_v = vp(g, p);
    out.push_back(cur_v - prev);
    prev = cur_v;
  }
  return out;
}

}  // namespace oracle
