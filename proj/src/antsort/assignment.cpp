#include "antinspect/antsort/assignment.hpp"

#include <algorithm>
#include <limits>

namespace antinspect::antsort {

// Layout of the (rows + cols) square problem:
//   [ pair costs      | row r left open ]
//   [ col c left open | zeros           ]
// Open-slot blocks are diagonal; off-diagonal slots are forbidden.
double padded_cost(const CostMatrix& m, std::size_t r, std::size_t c, double unmatched_cost) {
  constexpr double kForbidden = std::numeric_limits<double>::infinity();
  const bool real_row = r < m.rows;
  const bool real_col = c < m.cols;
  if (real_row && real_col) {
    const std::size_t i = r * m.cols + c;
    return m.feasible[i] ? m.cost[i] : 2.0 * unmatched_cost;
  }
  if (real_row) return c - m.cols == r ? unmatched_cost : kForbidden;
  if (real_col) return r - m.rows == c ? unmatched_cost : kForbidden;
  return 0.0;
}

std::vector<std::optional<std::size_t>> solve_assignment(const CostMatrix& m,
                                                         double unmatched_cost) {
  std::vector<std::optional<std::size_t>> result(m.rows);
  const std::size_t n = m.rows + m.cols;
  if (n == 0) return result;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials/matching; column 0 is the virtual start column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match_col(n + 1, 0), way(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    match_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match_col[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double entry = padded_cost(m, i0 - 1, j - 1, unmatched_cost);
        const double cur = entry == kInf ? kInf : entry - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t r = match_col[j] - 1;
    const std::size_t c = j - 1;
    if (r < m.rows && c < m.cols && m.feasible[r * m.cols + c]) result[r] = c;
  }
  return result;
}

}  // namespace antinspect::antsort
