#include "multiproj/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "multiproj/rng.hpp"
#include "multiproj/tensor_io.hpp"

namespace multiproj {

namespace {

NormSpec constraint_spec(const Algorithm& algorithm, std::size_t order) {
  switch (algorithm.kind) {
    case Algorithm::Kind::BilevelL1Inf:
    case Algorithm::Kind::Euclid:
      return {{Norm::Inf, Norm::L1}};
    case Algorithm::Kind::BilevelL11:
      return {{Norm::L1, Norm::L1}};
    case Algorithm::Kind::BilevelL12:
      return {{Norm::L2, Norm::L1}};
    case Algorithm::Kind::Multilevel:
      return algorithm.spec;
  }
  (void)order;
  throw ConfigError("unreachable algorithm kind");
}

std::size_t zero_group_count(const DenseTensor& x) {
  DenseTensor cur = x;
  while (cur.order() > 1) cur = aggregate_leading_axis(cur, Norm::Inf);
  std::size_t zeros = 0;
  for (double v : cur.data())
    if (v == 0.0) ++zeros;
  return zeros;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

double achieved_norm(const Algorithm& algorithm, const DenseTensor& x) {
  return multilevel_norm(x, constraint_spec(algorithm, x.order()));
}

BenchRecord bench_one(const Algorithm& algorithm, const DenseTensor& input,
                      double eta, std::size_t reps, unsigned workers) {
  if (reps == 0) throw ConfigError("reps must be >= 1");
  std::unique_ptr<ThreadPool> pool;
  if (workers > 1) pool = std::make_unique<ThreadPool>(workers);

  // Warmup run, also the correctness-checked output.
  DenseTensor out = run_projection(algorithm, input, eta, pool.get());
  double norm = achieved_norm(algorithm, out);
  if (norm > eta * (1.0 + 1e-9))
    throw ConfigError("projection output infeasible: " + std::to_string(norm) +
                      " > " + std::to_string(eta));

  std::vector<double> times;
  times.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    DenseTensor x = run_projection(algorithm, input, eta, pool.get());
    auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
    (void)x;
  }

  BenchRecord rec;
  rec.algorithm = algorithm.tag();
  rec.n = input.shape()[0];
  rec.m = input.order() > 1 ? input.shape()[1] : 1;
  rec.extra_dims.assign(input.shape().begin() + std::min<std::size_t>(2, input.order()),
                        input.shape().end());
  rec.radius = eta;
  rec.workers = workers;
  rec.repetitions = reps;
  rec.median_seconds = median(std::move(times));
  rec.achieved_norm = norm;
  rec.zero_columns = zero_group_count(out);
  rec.output_checksum = tensor_checksum(out);
  return rec;
}

std::vector<BenchRecord> run_radius_sweep(
    const std::vector<std::string>& algorithms, std::size_t n, std::size_t m,
    const std::vector<double>& radii, std::uint64_t seed, std::size_t reps,
    unsigned workers) {
  std::vector<Algorithm> algos;
  for (const auto& tag : algorithms) algos.push_back(Algorithm::parse(tag));
  std::vector<BenchRecord> records;
  if (radii.empty() || algos.empty()) return records;
  DenseTensor y = gen_uniform_matrix(n, m, seed, 0.0, 1.0);
  for (const auto& algo : algos)
    for (double radius : radii)
      records.push_back(bench_one(algo, y, radius, reps, workers));
  return records;
}

std::vector<BenchRecord> run_size_sweep(
    const std::vector<std::string>& algorithms,
    const std::vector<std::vector<std::size_t>>& sizes, double eta,
    std::uint64_t seed, std::size_t reps, unsigned workers) {
  std::vector<Algorithm> algos;
  for (const auto& tag : algorithms) algos.push_back(Algorithm::parse(tag));
  std::vector<BenchRecord> records;
  for (const auto& shape : sizes) {
    DenseTensor y = gen_uniform_tensor(shape, seed, 0.0, 1.0);
    for (const auto& algo : algos)
      records.push_back(bench_one(algo, y, eta, reps, workers));
  }
  return records;
}

std::vector<BenchRecord> measure_speedup(const Algorithm& algorithm,
                                         const std::vector<std::size_t>& shape,
                                         double eta,
                                         const std::vector<unsigned>& workers,
                                         std::size_t reps, std::uint64_t seed) {
  DenseTensor y = gen_uniform_tensor(shape, seed, 0.0, 1.0);
  std::vector<BenchRecord> records;
  for (unsigned w : workers) {
    records.push_back(bench_one(algorithm, y, eta, reps, w));
    if (records.back().output_checksum != records.front().output_checksum)
      throw ConfigError("nondeterministic output across worker counts");
  }
  return records;
}

ProjectionReport project_file(const std::string& input_path,
                              const std::string& output_path,
                              const Algorithm& algorithm, double eta,
                              unsigned workers) {
  DenseTensor y = read_tensor(input_path);
  if (algorithm.kind == Algorithm::Kind::Multilevel) {
    if (algorithm.spec.depth() != y.order())
      throw ConfigError("norm spec depth " +
                        std::to_string(algorithm.spec.depth()) +
                        " does not match tensor order " +
                        std::to_string(y.order()));
  } else if (y.order() != 2) {
    throw ConfigError("algorithm '" + algorithm.tag() +
                      "' requires an order-2 tensor");
  }
  DenseTensor x = parallel_project(algorithm, y, eta, {workers});
  if (format_for_path(input_path) == TensorFormat::Csv)
    write_csv_matrix(x, output_path);
  else
    write_mlpt(x, output_path);
  return {achieved_norm(algorithm, x), frobenius_distance(y, x),
          zero_group_count(x)};
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string format_extra_dims(const std::vector<std::size_t>& dims) {
  std::ostringstream out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) out << 'x';
    out << dims[i];
  }
  return out.str();
}

std::vector<std::size_t> parse_extra_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t sep = s.find('x', pos);
    std::string tok = s.substr(pos, sep == std::string::npos ? std::string::npos
                                                             : sep - pos);
    dims.push_back(static_cast<std::size_t>(std::stoull(tok)));
    if (sep == std::string::npos) break;
    pos = sep + 1;
  }
  return dims;
}

constexpr const char* kCsvHeader =
    "algorithm,n,m,extra_dims,radius,workers,reps,median_seconds,"
    "achieved_norm,zero_columns,checksum";

}  // namespace

void write_csv_records(const std::vector<BenchRecord>& records,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    // Multilevel tags contain commas; quote them.
    if (r.algorithm.find(',') != std::string::npos)
      out << '"' << r.algorithm << '"' << ',';
    else
      out << r.algorithm << ',';
    out << r.n << ',' << r.m << ','
        << format_extra_dims(r.extra_dims) << ',' << format_double(r.radius)
        << ',' << r.workers << ',' << r.repetitions << ','
        << format_double(r.median_seconds) << ','
        << format_double(r.achieved_norm) << ',' << r.zero_columns << ','
        << r.output_checksum << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<BenchRecord> read_csv_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw IoError("'" + path + "': unexpected CSV header");
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string algorithm;
    std::string rest = line;
    if (!line.empty() && line[0] == '"') {
      std::size_t close = line.find('"', 1);
      if (close == std::string::npos || close + 1 >= line.size() ||
          line[close + 1] != ',')
        throw IoError("'" + path + "': bad quoted CSV field");
      algorithm = line.substr(1, close - 1);
      rest = line.substr(close + 2);
    } else {
      std::size_t comma = line.find(',');
      if (comma == std::string::npos)
        throw IoError("'" + path + "': bad CSV row");
      algorithm = line.substr(0, comma);
      rest = line.substr(comma + 1);
    }
    std::istringstream ls(rest);
    std::string cell;
    std::vector<std::string> cells{algorithm};
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) throw IoError("'" + path + "': bad CSV row");
    BenchRecord r;
    r.algorithm = cells[0];
    r.n = std::stoull(cells[1]);
    r.m = std::stoull(cells[2]);
    r.extra_dims = parse_extra_dims(cells[3]);
    r.radius = std::stod(cells[4]);
    r.workers = static_cast<unsigned>(std::stoul(cells[5]));
    r.repetitions = std::stoull(cells[6]);
    r.median_seconds = std::stod(cells[7]);
    r.achieved_norm = std::stod(cells[8]);
    r.zero_columns = std::stoull(cells[9]);
    r.output_checksum = std::stoull(cells[10]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace multiproj
