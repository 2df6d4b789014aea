#include "multiproj/detail/fiber_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "multiproj/vector_balls.hpp"

namespace multiproj::detail {

void aggregate_block(const DenseTensor& y, Norm q, std::size_t f0,
                     std::size_t f1, std::span<double> v) {
  const std::size_t n = y.fiber_length();
  const std::size_t m = y.fiber_count();
  std::span<const double> d = y.data();
  switch (q) {
    case Norm::L1:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = f0; f < f1; ++f) v[f] += std::abs(d[i * m + f]);
      break;
    case Norm::L2:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = f0; f < f1; ++f) {
          double x = d[i * m + f];
          v[f] += x * x;
        }
      for (std::size_t f = f0; f < f1; ++f) v[f] = std::sqrt(v[f]);
      break;
    case Norm::Inf:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = f0; f < f1; ++f)
          v[f] = std::max(v[f], std::abs(d[i * m + f]));
      break;
  }
}

void project_block(DenseTensor& x, Norm q, std::size_t f0, std::size_t f1,
                   std::span<const double> v, std::span<const double> budgets) {
  const std::size_t n = x.fiber_length();
  const std::size_t m = x.fiber_count();
  std::span<double> d = x.mutable_data();
  switch (q) {
    case Norm::Inf:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = f0; f < f1; ++f) {
          double& e = d[i * m + f];
          if (std::abs(e) > budgets[f]) e = std::copysign(budgets[f], e);
        }
      break;
    case Norm::L2:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = f0; f < f1; ++f) {
          if (v[f] > budgets[f]) d[i * m + f] *= budgets[f] / v[f];
        }
      break;
    case Norm::L1: {
      std::vector<double> fiber(n);
      for (std::size_t f = f0; f < f1; ++f) {
        if (v[f] <= budgets[f]) continue;
        for (std::size_t i = 0; i < n; ++i) fiber[i] = d[i * m + f];
        project_l1_fast_inplace(fiber, budgets[f]);
        for (std::size_t i = 0; i < n; ++i) d[i * m + f] = fiber[i];
      }
      break;
    }
  }
}

}  // namespace multiproj::detail
