#include "multiproj/multilevel.hpp"

#include <cmath>
#include <sstream>

#include "multiproj/detail/fiber_kernels.hpp"
#include "multiproj/vector_balls.hpp"

namespace multiproj {

std::string NormSpec::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i > 0) out << ',';
    out << norm_name(levels[i]);
  }
  return out.str();
}

NormSpec parse_norm_spec(const std::string& s) {
  NormSpec spec;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string token = s.substr(pos, comma == std::string::npos
                                          ? std::string::npos
                                          : comma - pos);
    if (token == "1")
      spec.levels.push_back(Norm::L1);
    else if (token == "2")
      spec.levels.push_back(Norm::L2);
    else if (token == "inf")
      spec.levels.push_back(Norm::Inf);
    else
      throw ConfigError("bad norm token '" + token +
                        "' in spec '" + s + "' (expected 1, 2 or inf)");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

namespace {

void check_args(const DenseTensor& t, const NormSpec& nu, double eta) {
  if (nu.depth() == 0) throw ConfigError("empty norm spec");
  if (nu.depth() != t.order())
    throw ShapeError("norm spec depth " + std::to_string(nu.depth()) +
                     " does not match tensor order " +
                     std::to_string(t.order()));
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw ValueError("radius must be a finite nonnegative real");
}

// Projects every fiber of x onto the nu ball at its budget; v holds the
// per-fiber norms (the next aggregate up the chain).
void project_fibers(DenseTensor& x, Norm nu, std::span<const double> v,
                    std::span<const double> budgets, ThreadPool* pool) {
  parallel_for(pool, x.fiber_count(), [&](std::size_t f0, std::size_t f1) {
    detail::project_block(x, nu, f0, f1, v, budgets);
  });
}

DenseTensor aggregate_parallel(const DenseTensor& t, Norm q,
                               ThreadPool* pool) {
  std::vector<std::size_t> out_shape(t.shape().begin() + 1, t.shape().end());
  DenseTensor out = DenseTensor::zeros(std::move(out_shape));
  std::span<double> o = out.mutable_data();
  parallel_for(pool, t.fiber_count(), [&](std::size_t f0, std::size_t f1) {
    detail::aggregate_block(t, q, f0, f1, o);
  });
  return out;
}

}  // namespace

DenseTensor multilevel_project(const DenseTensor& t, const NormSpec& nu,
                               double eta, ThreadPool* pool) {
  check_args(t, nu, eta);
  if (nu.depth() == 1)
    return DenseTensor(t.shape(),
                       project_ball(t.data(), nu.levels[0], eta));

  DenseTensor v = aggregate_parallel(t, nu.levels[0], pool);
  NormSpec rest{std::vector<Norm>(nu.levels.begin() + 1, nu.levels.end())};
  DenseTensor budgets = multilevel_project(v, rest, eta, pool);

  DenseTensor x = t;
  project_fibers(x, nu.levels[0], v.data(), budgets.data(), pool);
  return x;
}

MultilevelResult multilevel_project_iter(const DenseTensor& t,
                                         const NormSpec& nu, double eta,
                                         ThreadPool* pool) {
  check_args(t, nu, eta);
  const std::size_t depth = nu.depth();

  // Aggregation chain: chain[0] = t, chain[i] = nu_i-aggregate of chain[i-1].
  std::vector<DenseTensor> chain;
  chain.reserve(depth);
  chain.push_back(t);
  for (std::size_t i = 1; i < depth; ++i)
    chain.push_back(aggregate_parallel(chain[i - 1], nu.levels[i - 1], pool));

  // Deepest aggregate is a vector: plain radius-constrained projection.
  std::vector<DenseTensor> budgets;
  budgets.reserve(depth);
  budgets.push_back(DenseTensor(
      chain[depth - 1].shape(),
      project_ball(chain[depth - 1].data(), nu.levels[depth - 1], eta)));

  // Unwind: level i fibers are projected at the budgets from level i+1.
  for (std::size_t i = depth - 1; i-- > 0;) {
    DenseTensor u = chain[i];
    project_fibers(u, nu.levels[i], chain[i + 1].data(),
                   budgets.back().data(), pool);
    budgets.push_back(std::move(u));
  }

  MultilevelResult result{budgets.back(), {}};
  result.budget_chain = std::move(budgets);
  return result;
}

DenseTensor trilevel_project_l1infinf(const DenseTensor& t, double eta,
                                      ThreadPool* pool) {
  if (t.order() != 3)
    throw ShapeError("trilevel_project_l1infinf requires order 3");
  NormSpec nu{{Norm::Inf, Norm::Inf, Norm::L1}};
  return multilevel_project_iter(t, nu, eta, pool).X;
}

double multilevel_norm(const DenseTensor& t, const NormSpec& nu) {
  if (nu.depth() != t.order())
    throw ShapeError("norm spec depth does not match tensor order");
  DenseTensor cur = t;
  for (std::size_t i = 0; i + 1 < nu.depth(); ++i)
    cur = aggregate_leading_axis(cur, nu.levels[i]);
  return vector_norm(cur.data(), nu.levels.back());
}

}  // namespace multiproj
