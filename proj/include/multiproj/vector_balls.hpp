#ifndef MULTIPROJ_VECTOR_BALLS_HPP
#define MULTIPROJ_VECTOR_BALLS_HPP

#include <span>
#include <vector>

#include "multiproj/tensor.hpp"

namespace multiproj {

/// Euclidean projection onto the l1 ball, reference sort-based threshold.
std::vector<double> project_l1_sort(std::span<const double> y, double radius);

/// Same contract as project_l1_sort, expected-linear pivot/filter scan.
std::vector<double> project_l1_fast(std::span<const double> y, double radius);

/// Radial scaling onto the l2 ball.
std::vector<double> project_l2(std::span<const double> y, double radius);

/// Sign-preserving clip onto the linf ball.
std::vector<double> project_linf(std::span<const double> y, double radius);

/// Dispatch on the norm tag; l1 uses the fast path.
std::vector<double> project_ball(std::span<const double> y, Norm q,
                                 double radius);

/// In-place variants used by the projection kernels. The vector is assumed
/// finite; the radius nonnegative. Feasible inputs are left untouched.
void project_l1_fast_inplace(std::span<double> y, double radius);
void project_l2_inplace(std::span<double> y, double radius);
void project_linf_inplace(std::span<double> y, double radius);
void project_ball_inplace(std::span<double> y, Norm q, double radius);

}  // namespace multiproj

#endif
