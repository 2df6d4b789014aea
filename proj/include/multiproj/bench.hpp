#ifndef MULTIPROJ_BENCH_HPP
#define MULTIPROJ_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "multiproj/dispatch.hpp"
#include "multiproj/tensor.hpp"

namespace multiproj {

/// One timing measurement: median wall seconds over `repetitions` runs after
/// one warmup, plus the feasibility-verified output summary.
struct BenchRecord {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> extra_dims;
  double radius = 0.0;
  unsigned workers = 1;
  std::size_t repetitions = 0;
  double median_seconds = 0.0;
  double achieved_norm = 0.0;
  std::size_t zero_columns = 0;
  std::uint64_t output_checksum = 0;
};

/// Times one (algorithm, input, radius) combination: 1 warmup run, then
/// `reps` timed runs, median reported. Verifies feasibility of the output
/// before reporting.
BenchRecord bench_one(const Algorithm& algorithm, const DenseTensor& input,
                      double eta, std::size_t reps, unsigned workers);

/// Radius sweep: single uniform [0,1) matrix reused across every
/// (algorithm, radius) pair.
std::vector<BenchRecord> run_radius_sweep(
    const std::vector<std::string>& algorithms, std::size_t n, std::size_t m,
    const std::vector<double>& radii, std::uint64_t seed, std::size_t reps,
    unsigned workers);

/// Size sweep: fixed radius, one record per (algorithm, shape).
/// Shapes may be order 2 or 3.
std::vector<BenchRecord> run_size_sweep(
    const std::vector<std::string>& algorithms,
    const std::vector<std::vector<std::size_t>>& sizes, double eta,
    std::uint64_t seed, std::size_t reps, unsigned workers);

/// Scaling sweep: one record per worker count on the same input; output
/// checksums are verified equal across worker counts.
std::vector<BenchRecord> measure_speedup(const Algorithm& algorithm,
                                         const std::vector<std::size_t>& shape,
                                         double eta,
                                         const std::vector<unsigned>& workers,
                                         std::size_t reps,
                                         std::uint64_t seed = 42);

/// Header: algorithm,n,m,extra_dims,radius,workers,reps,median_seconds,
/// achieved_norm,zero_columns,checksum. Deterministic input order; doubles
/// at 17 significant digits so the file round-trips losslessly.
void write_csv_records(const std::vector<BenchRecord>& records,
                       const std::string& path);
std::vector<BenchRecord> read_csv_records(const std::string& path);

/// Nested-norm value the algorithm's ball constrains (for matrices the
/// l_{p,q} norm, for multilevel the spec norm).
double achieved_norm(const Algorithm& algorithm, const DenseTensor& x);

struct ProjectionReport {
  double achieved_norm;
  double distance;
  std::size_t zero_columns;
};

/// One-shot file projection: reads MLPT or CSV, projects, writes the result
/// in the input's format.
ProjectionReport project_file(const std::string& input_path,
                              const std::string& output_path,
                              const Algorithm& algorithm, double eta,
                              unsigned workers);

}  // namespace multiproj

#endif
