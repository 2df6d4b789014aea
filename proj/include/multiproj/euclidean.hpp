#ifndef MULTIPROJ_EUCLIDEAN_HPP
#define MULTIPROJ_EUCLIDEAN_HPP

#include <vector>

#include "multiproj/tensor.hpp"

namespace multiproj {

/// Optimal per-column maxima for the exact l_{1,inf} projection. theta is
/// the common post-clip residual l1 mass of the active columns: every column
/// with budget > 0 satisfies sum_i max(|Y_ij| - u_j, 0) = theta, and columns
/// with budget 0 have pre-clip l1 mass <= theta.
struct ColumnBudgetSolution {
  std::vector<double> budgets;
  double theta;
};

struct EuclidResult {
  DenseTensor X;
  ColumnBudgetSolution sol;
};

/// Exact Euclidean projection onto the l_{1,inf} ball: the distance
/// minimizer, via per-column magnitude sort and exact breakpoint search for
/// the common residual multiplier. O(nm log(nm)).
EuclidResult euclid_project_l1inf(const DenseTensor& y, double eta);

/// Exhaustive simplex grid search (m <= 3) minimizing the clipping cost
/// sum_j sum_i max(|Y_ij| - u_j, 0)^2 at resolution eta/steps. Independent
/// verification oracle for euclid_project_l1inf.
ColumnBudgetSolution budget_oracle_grid(const DenseTensor& y, double eta,
                                        std::size_t steps);

/// Clipping cost of a budget assignment: sum_j sum_i max(|Y_ij|-u_j, 0)^2.
double clip_cost(const DenseTensor& y, std::span<const double> budgets);

}  // namespace multiproj

#endif
