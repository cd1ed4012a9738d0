#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace antinspect::antsort {

/// Dense row-major cost matrix with a feasibility flag per entry.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cost;
  std::vector<bool> feasible;

  CostMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), cost(r * c, 0.0), feasible(r * c, true) {}

  double& at(std::size_t r, std::size_t c) { return cost[r * cols + c]; }
  [[nodiscard]] double at(std::size_t r, std::size_t c) const { return cost[r * cols + c]; }
};

// Minimum-cost linear assignment. The problem is augmented to a square matrix in
// which leaving a row or column unassigned costs `unmatched_cost`, and
// infeasible pairs cost the same as leaving both sides unmatched. Returns, for
// each row, the assigned column or nullopt. Exact O(n^3) Hungarian method with
// row/column potentials; rows and columns are scanned in index order, so the
// result is deterministic.
std::vector<std::optional<std::size_t>> solve_assignment(const CostMatrix& m,
                                                         double unmatched_cost);

/// Entry (r, c) of the (rows + cols) square problem used by solve_assignment;
/// +infinity marks slots that may not be used.
double padded_cost(const CostMatrix& m, std::size_t r, std::size_t c, double unmatched_cost);

}  // namespace antinspect::antsort
