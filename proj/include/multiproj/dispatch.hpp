#ifndef MULTIPROJ_DISPATCH_HPP
#define MULTIPROJ_DISPATCH_HPP

#include <optional>
#include <string>

#include "multiproj/multilevel.hpp"
#include "multiproj/parallel.hpp"
#include "multiproj/tensor.hpp"

namespace multiproj {

/// Projection algorithm selector. Tags: "bilevel-l1inf", "bilevel-l11",
/// "bilevel-l12", "euclid", "multilevel:<spec>" (e.g. "multilevel:inf,inf,1").
struct Algorithm {
  enum class Kind { BilevelL1Inf, BilevelL11, BilevelL12, Euclid, Multilevel };
  Kind kind;
  NormSpec spec;  // Multilevel only

  static Algorithm parse(const std::string& tag);
  std::string tag() const;
};

/// Runs the selected projection with the given worker configuration. The
/// aggregation and per-fiber passes are each split into cfg.workers
/// contiguous chunks; the outer l1 projection stays sequential. Output is
/// identical to the workers=1 run.
DenseTensor parallel_project(const Algorithm& algorithm,
                             const DenseTensor& input, double eta,
                             const ExecConfig& cfg);

/// Same, reusing a caller-owned pool (one pool per worker count).
DenseTensor run_projection(const Algorithm& algorithm, const DenseTensor& input,
                           double eta, ThreadPool* pool);

}  // namespace multiproj

#endif
