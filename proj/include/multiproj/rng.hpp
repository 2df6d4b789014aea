#ifndef MULTIPROJ_RNG_HPP
#define MULTIPROJ_RNG_HPP

#include <cstdint>

#include "multiproj/tensor.hpp"

namespace multiproj {

/// Fixed, documented generator so every implementation reproduces the same
/// matrices bit-exactly: the 64-bit seed is expanded through SplitMix64
/// (gamma 0x9e3779b97f4a7c15, mix constants 0xbf58476d1ce4e5b9 and
/// 0x94d049bb133111eb) into the 4-word state of xoshiro256++ (rotl(s0+s3,23)
/// + s0 output, shift 17 / rotations 45). Doubles take the top 53 bits.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, 1).
  double next_double();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal, Box-Muller on two uniforms.
  double normal();

 private:
  std::uint64_t state_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic uniform matrix, entries in [lo, hi). Requires lo < hi.
DenseTensor gen_uniform_matrix(std::size_t n, std::size_t m,
                               std::uint64_t seed, double lo, double hi);

/// Same generator for arbitrary-order shapes.
DenseTensor gen_uniform_tensor(const std::vector<std::size_t>& shape,
                               std::uint64_t seed, double lo, double hi);

/// FNV-1a over the raw little-endian bytes of the tensor payload.
std::uint64_t tensor_checksum(const DenseTensor& t);

}  // namespace multiproj

#endif
