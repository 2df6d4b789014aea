#include "multiproj/dispatch.hpp"

#include "multiproj/bilevel.hpp"
#include "multiproj/euclidean.hpp"

namespace multiproj {

Algorithm Algorithm::parse(const std::string& tag) {
  if (tag == "bilevel-l1inf") return {Kind::BilevelL1Inf, {}};
  if (tag == "bilevel-l11") return {Kind::BilevelL11, {}};
  if (tag == "bilevel-l12") return {Kind::BilevelL12, {}};
  if (tag == "euclid") return {Kind::Euclid, {}};
  if (tag.rfind("multilevel:", 0) == 0)
    return {Kind::Multilevel, parse_norm_spec(tag.substr(11))};
  throw ConfigError("unknown algorithm tag '" + tag + "'");
}

std::string Algorithm::tag() const {
  switch (kind) {
    case Kind::BilevelL1Inf:
      return "bilevel-l1inf";
    case Kind::BilevelL11:
      return "bilevel-l11";
    case Kind::BilevelL12:
      return "bilevel-l12";
    case Kind::Euclid:
      return "euclid";
    case Kind::Multilevel:
      return "multilevel:" + spec.to_string();
  }
  return "?";
}

DenseTensor run_projection(const Algorithm& algorithm, const DenseTensor& input,
                           double eta, ThreadPool* pool) {
  switch (algorithm.kind) {
    case Algorithm::Kind::BilevelL1Inf:
      return bilevel_project(input, Norm::L1, Norm::Inf, eta, pool).X;
    case Algorithm::Kind::BilevelL11:
      return bilevel_project(input, Norm::L1, Norm::L1, eta, pool).X;
    case Algorithm::Kind::BilevelL12:
      return bilevel_project(input, Norm::L1, Norm::L2, eta, pool).X;
    case Algorithm::Kind::Euclid:
      return euclid_project_l1inf(input, eta).X;
    case Algorithm::Kind::Multilevel:
      return multilevel_project_iter(input, algorithm.spec, eta, pool).X;
  }
  throw ConfigError("unreachable algorithm kind");
}

DenseTensor parallel_project(const Algorithm& algorithm,
                             const DenseTensor& input, double eta,
                             const ExecConfig& cfg) {
  if (cfg.workers == 0) throw ConfigError("worker count must be >= 1");
  if (cfg.workers == 1) return run_projection(algorithm, input, eta, nullptr);
  ThreadPool pool(cfg.workers);
  return run_projection(algorithm, input, eta, &pool);
}

}  // namespace multiproj
