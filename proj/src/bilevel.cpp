#include "multiproj/bilevel.hpp"

#include <cmath>

#include "multiproj/detail/fiber_kernels.hpp"
#include "multiproj/vector_balls.hpp"

namespace multiproj {

BilevelResult bilevel_project(const DenseTensor& y, Norm p, Norm q, double eta,
                              ThreadPool* pool) {
  if (y.order() != 2) throw ShapeError("bilevel_project requires order 2");
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw ValueError("radius must be a finite nonnegative real");
  const std::size_t m = y.fiber_count();

  std::vector<double> v(m, 0.0);
  parallel_for(pool, m, [&](std::size_t f0, std::size_t f1) {
    detail::aggregate_block(y, q, f0, f1, v);
  });

  std::vector<double> budgets = project_ball(v, p, eta);

  BilevelResult result{y, std::move(budgets), 0};
  parallel_for(pool, m, [&](std::size_t f0, std::size_t f1) {
    detail::project_block(result.X, q, f0, f1, v, result.budgets);
  });

  for (std::size_t f = 0; f < m; ++f)
    if (result.budgets[f] == 0.0 || v[f] == 0.0) ++result.zero_columns;
  return result;
}

BilevelResult bilevel_project_l1inf(const DenseTensor& y, double eta,
                                    ThreadPool* pool) {
  return bilevel_project(y, Norm::L1, Norm::Inf, eta, pool);
}

}  // namespace multiproj
