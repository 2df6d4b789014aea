#ifndef MULTIPROJ_MULTILEVEL_HPP
#define MULTIPROJ_MULTILEVEL_HPP

#include <string>
#include <vector>

#include "multiproj/parallel.hpp"
#include "multiproj/tensor.hpp"

namespace multiproj {

/// Ordered norm levels, innermost first. Level i consumes one leading axis;
/// when applied to an order-r tensor the spec must have exactly r levels,
/// the last being the radius-constrained projection of the remaining vector.
struct NormSpec {
  std::vector<Norm> levels;

  std::size_t depth() const { return levels.size(); }
  std::string to_string() const;
};

/// Parses comma-separated tokens from {"1","2","inf"}, innermost first.
/// "inf,1" is the bi-level l_{1,inf}; "inf,inf,1" the tri-level.
NormSpec parse_norm_spec(const std::string& s);

/// Intermediate budget tensors from the iterative form, outermost (deepest
/// aggregate) first. The last entry is the projected tensor itself.
struct MultilevelResult {
  DenseTensor X;
  std::vector<DenseTensor> budget_chain;
};

/// Recursive multi-level projection (reference implementation). |nu| must
/// equal the tensor order; |nu| = 1 is the plain vector-ball projection.
DenseTensor multilevel_project(const DenseTensor& t, const NormSpec& nu,
                               double eta, ThreadPool* pool = nullptr);

/// Iterative form: builds the full aggregation chain, projects the deepest
/// aggregate at radius eta, then unwinds level by level. Agrees with the
/// recursive form and exposes the budget chain.
MultilevelResult multilevel_project_iter(const DenseTensor& t,
                                         const NormSpec& nu, double eta,
                                         ThreadPool* pool = nullptr);

/// Named fast path for order-3 tensors with nu = (inf, inf, 1).
DenseTensor trilevel_project_l1infinf(const DenseTensor& t, double eta,
                                      ThreadPool* pool = nullptr);

/// Nested-norm value of t under nu: iterated leading-axis aggregation
/// followed by the outermost norm. Used for feasibility checks.
double multilevel_norm(const DenseTensor& t, const NormSpec& nu);

}  // namespace multiproj

#endif
