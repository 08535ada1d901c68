#pragma once

/// @file lp.hpp
/// Exact rational feasibility of {z >= 0 : A z = b} by phase-one simplex
/// with Bland's rule.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "coefmod/error.hpp"

namespace coefmod {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

inline bool lp_feasible(RationalMatrix a, std::vector<mpq_class> b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw Error(Errc::dimension_mismatch, "rhs length");
  const std::size_t n = m == 0 ? 0 : a.front().size();
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw Error(Errc::dimension_mismatch, "ragged constraint matrix");
    if (sgn(b[i]) < 0) {
      for (auto& v : a[i]) v = -v;
      b[i] = -b[i];
    }
  }
  // Tableau columns: n structural, m artificial, then rhs.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<mpq_class>> t(m + 1, std::vector<mpq_class>(cols, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][cols - 1] = b[i];
    basis[i] = n + i;
  }
  // Objective row: minimize the sum of artificials, kept in reduced form.
  for (std::size_t j = 0; j < cols; ++j) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (j < n || j == cols - 1) s += t[i][j];
    }
    t[m][j] = s;
  }
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (sgn(t[m][j]) > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      mpq_class ratio = t[i][cols - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;
    mpq_class piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      mpq_class f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return sgn(t[m][cols - 1]) == 0;
}

}  // namespace coefmod
