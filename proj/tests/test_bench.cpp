#include <doctest.h>

#include <filesystem>
#include <unistd.h>

#include "multiproj/bench.hpp"
#include "multiproj/bilevel.hpp"
#include "multiproj/rng.hpp"
#include "multiproj/tensor_io.hpp"
#include "test_util.hpp"

using namespace multiproj;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("multiproj-bench-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("algorithm tags round-trip through parse") {
  for (const char* tag : {"bilevel-l1inf", "bilevel-l11", "bilevel-l12",
                          "euclid", "multilevel:inf,inf,1"}) {
    Algorithm a = Algorithm::parse(tag);
    CHECK(a.tag() == tag);
  }
  CHECK_THROWS_AS(Algorithm::parse("unknown"), ConfigError);
  CHECK_THROWS_AS(Algorithm::parse("multilevel:bad"), ConfigError);
}

TEST_CASE("bench_one reports a feasible verified output") {
  Algorithm algo = Algorithm::parse("bilevel-l1inf");
  DenseTensor y = gen_uniform_matrix(50, 40, 7, 0.0, 1.0);
  BenchRecord rec = bench_one(algo, y, 2.5, 3, 1);
  CHECK(rec.algorithm == "bilevel-l1inf");
  CHECK(rec.n == 50);
  CHECK(rec.m == 40);
  CHECK(rec.radius == 2.5);
  CHECK(rec.repetitions == 3);
  CHECK(rec.median_seconds >= 0.0);
  CHECK(rec.achieved_norm <= 2.5 * (1 + 1e-9));
  auto direct = bilevel_project_l1inf(y, 2.5);
  CHECK(rec.output_checksum == tensor_checksum(direct.X));
  CHECK(rec.zero_columns == direct.zero_columns);
}

TEST_CASE("radius sweep reuses one matrix per (algorithm, radius) grid") {
  auto recs = run_radius_sweep({"bilevel-l1inf", "euclid"}, 30, 20,
                               {0.5, 1.0, 2.0}, 11, 2, 1);
  REQUIRE(recs.size() == 6);
  for (const auto& r : recs) {
    CHECK(r.n == 30);
    CHECK(r.m == 20);
    CHECK(r.achieved_norm <= r.radius * (1 + 1e-9));
  }
  // Same radius, different algorithm: same input, different projections may
  // differ, but both are feasible; the record grid is algorithm-major.
  CHECK(recs[0].algorithm == "bilevel-l1inf");
  CHECK(recs[3].algorithm == "euclid");
  CHECK(recs[0].radius == recs[3].radius);
}

TEST_CASE("size sweep handles order-2 and order-3 shapes") {
  auto flat = run_size_sweep({"bilevel-l1inf", "euclid"}, {{20, 10}, {30, 15}},
                             1.5, 12, 2, 1);
  REQUIRE(flat.size() == 4);
  for (const auto& r : flat) CHECK(r.median_seconds >= 0.0);

  auto deep = run_size_sweep({"multilevel:inf,inf,1"}, {{10, 8, 6}}, 1.5, 12,
                             2, 1);
  REQUIRE(deep.size() == 1);
  CHECK(deep[0].n == 10);
  CHECK(deep[0].m == 8);
  CHECK(deep[0].extra_dims == std::vector<std::size_t>{6});

  // Arity mismatches are rejected rather than silently skipped.
  CHECK_THROWS(run_size_sweep({"bilevel-l1inf"}, {{10, 8, 6}}, 1.5, 12, 2, 1));
}

TEST_CASE("speedup records share one checksum across worker counts") {
  Algorithm algo = Algorithm::parse("bilevel-l1inf");
  auto recs = measure_speedup(algo, {60, 50}, 2.0, {1, 2, 4}, 2, 99);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].workers == 1);
  CHECK(recs[1].workers == 2);
  CHECK(recs[2].workers == 4);
  CHECK(recs[0].output_checksum == recs[1].output_checksum);
  CHECK(recs[0].output_checksum == recs[2].output_checksum);
}

TEST_CASE("record csv round-trips losslessly, commas in tags included") {
  TempDir tmp;
  Algorithm multi = Algorithm::parse("multilevel:inf,inf,1");
  DenseTensor t = gen_uniform_tensor({8, 6, 4}, 5, 0.0, 1.0);
  std::vector<BenchRecord> recs;
  recs.push_back(bench_one(multi, t, 1.25, 2, 1));
  recs.push_back(bench_one(Algorithm::parse("bilevel-l1inf"),
                           gen_uniform_matrix(10, 5, 6, 0.0, 1.0), 0.75, 2, 1));
  std::string path = tmp.file("records.csv");
  write_csv_records(recs, path);
  auto back = read_csv_records(path);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].algorithm == recs[i].algorithm);
    CHECK(back[i].n == recs[i].n);
    CHECK(back[i].m == recs[i].m);
    CHECK(back[i].extra_dims == recs[i].extra_dims);
    CHECK(back[i].radius == recs[i].radius);
    CHECK(back[i].workers == recs[i].workers);
    CHECK(back[i].repetitions == recs[i].repetitions);
    CHECK(back[i].median_seconds == recs[i].median_seconds);
    CHECK(back[i].achieved_norm == recs[i].achieved_norm);
    CHECK(back[i].zero_columns == recs[i].zero_columns);
    CHECK(back[i].output_checksum == recs[i].output_checksum);
  }
}

TEST_CASE("project_file reads, projects and writes in the input format") {
  TempDir tmp;
  DenseTensor y = gen_uniform_matrix(12, 9, 21, -1.0, 1.0);
  std::string in_csv = tmp.file("in.csv");
  std::string out_csv = tmp.file("out.csv");
  write_tensor(y, in_csv);
  Algorithm algo = Algorithm::parse("bilevel-l1inf");
  ProjectionReport rep = project_file(in_csv, out_csv, algo, 1.0, 1);
  CHECK(rep.achieved_norm <= 1.0 * (1 + 1e-9));
  CHECK(rep.distance >= 0.0);
  DenseTensor out = read_tensor(out_csv);
  auto direct = bilevel_project_l1inf(y, 1.0);
  CHECK(testutil::bit_equal(out.data(), direct.X.data()));
  CHECK(rep.zero_columns == direct.zero_columns);

  // Arity mismatch: multilevel spec of depth 3 against an order-2 file.
  CHECK_THROWS_AS(project_file(in_csv, out_csv,
                               Algorithm::parse("multilevel:inf,inf,1"), 1.0, 1),
                  ConfigError);
}
