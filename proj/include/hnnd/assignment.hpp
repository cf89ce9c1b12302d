#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace hnnd {

/// Maximum-weight one-to-one assignment between the rows and columns of a
/// non-negative integer matrix (Kuhn-Munkres with potentials, O(r^2 c)).
/// Returns, for every row, its column or -1 when left unmatched.
inline std::vector<long> max_weight_assignment(const std::vector<std::vector<long>>& weight) {
  const std::size_t rows = weight.size();
  const std::size_t cols = rows == 0 ? 0 : weight.front().size();
  if (rows == 0 || cols == 0) return std::vector<long>(rows, -1);

  // The solver needs rows <= cols; transpose otherwise.
  if (rows > cols) {
    std::vector<std::vector<long>> t(cols, std::vector<long>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) t[c][r] = weight[r][c];
    }
    const auto by_col = max_weight_assignment(t);
    std::vector<long> out(rows, -1);
    for (std::size_t c = 0; c < cols; ++c) {
      if (by_col[c] >= 0) out[static_cast<std::size_t>(by_col[c])] = static_cast<long>(c);
    }
    return out;
  }

  // Minimise cost = -weight; 1-based arrays with a virtual column 0.
  constexpr long inf = std::numeric_limits<long>::max() / 4;
  const std::size_t n = rows, m = cols;
  std::vector<long> u(n + 1, 0), v(m + 1, 0);
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<long> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      long delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const long cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) minv[j] = cur, way[j] = j0;
        if (minv[j] < delta) delta = minv[j], j1 = j;
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<long> out(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (match[j] != 0) out[match[j] - 1] = static_cast<long>(j - 1);
  }
  return out;
}

}  // namespace hnnd
