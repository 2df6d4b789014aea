#ifndef MULTIPROJ_BILEVEL_HPP
#define MULTIPROJ_BILEVEL_HPP

#include <vector>

#include "multiproj/parallel.hpp"
#include "multiproj/tensor.hpp"

namespace multiproj {

struct BilevelResult {
  DenseTensor X;
  /// Per-column radii from the outer projection of the aggregated vector.
  std::vector<double> budgets;
  std::size_t zero_columns;
};

/// Bi-level l_{p,q} projection: project the vector of per-column q-norms
/// onto the l_p ball of radius eta, then project each column onto the
/// l_q ball at its budget. Feasible inputs pass through unchanged.
BilevelResult bilevel_project(const DenseTensor& y, Norm p, Norm q, double eta,
                              ThreadPool* pool = nullptr);

/// Named fast path for p=1, q=inf.
BilevelResult bilevel_project_l1inf(const DenseTensor& y, double eta,
                                    ThreadPool* pool = nullptr);

}  // namespace multiproj

#endif
