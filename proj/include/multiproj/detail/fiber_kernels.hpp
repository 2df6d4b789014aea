#ifndef MULTIPROJ_DETAIL_FIBER_KERNELS_HPP
#define MULTIPROJ_DETAIL_FIBER_KERNELS_HPP

#include <span>

#include "multiproj/tensor.hpp"

namespace multiproj::detail {

/// Aggregates fibers [f0,f1) of y by the q norm into v (v pre-zeroed).
/// Row sweep over the fiber block; per-fiber accumulation order matches the
/// sequential left-to-right loop.
void aggregate_block(const DenseTensor& y, Norm q, std::size_t f0,
                     std::size_t f1, std::span<double> v);

/// Projects fibers [f0,f1) of x onto the q ball at their budgets, in place.
/// v holds the pre-computed per-fiber q norms; feasible fibers are left
/// bitwise untouched.
void project_block(DenseTensor& x, Norm q, std::size_t f0, std::size_t f1,
                   std::span<const double> v, std::span<const double> budgets);

}  // namespace multiproj::detail

#endif
