#include "multiproj/rng.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>

#include "multiproj/errors.hpp"

namespace multiproj {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double Xoshiro256pp::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256pp::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

double Xoshiro256pp::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_double();
  double u2 = next_double();
  while (u1 <= 0.0) u1 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

DenseTensor gen_uniform_tensor(const std::vector<std::size_t>& shape,
                               std::uint64_t seed, double lo, double hi) {
  if (!(lo < hi)) throw ConfigError("uniform bounds require lo < hi");
  std::size_t total = 1;
  for (std::size_t d : shape) total *= d;
  Xoshiro256pp rng(seed);
  std::vector<double> data(total);
  for (double& v : data) v = rng.uniform(lo, hi);
  return DenseTensor(shape, std::move(data));
}

DenseTensor gen_uniform_matrix(std::size_t n, std::size_t m,
                               std::uint64_t seed, double lo, double hi) {
  if (n < 1 || m < 1) throw ConfigError("matrix dims must be >= 1");
  return gen_uniform_tensor({n, m}, seed, lo, hi);
}

std::uint64_t tensor_checksum(const DenseTensor& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : t.data()) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 64; b += 8) {
      h ^= (bits >> b) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace multiproj
