#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "multiproj/bench.hpp"
#include "multiproj/bilevel.hpp"
#include "multiproj/rng.hpp"
#include "multiproj/tensor_io.hpp"
#include "test_util.hpp"

using namespace multiproj;

namespace {

#ifndef MULTIPROJ_CLI_PATH
#error "MULTIPROJ_CLI_PATH must point at the built CLI binary"
#endif

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("multiproj-cli-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

// Runs the CLI with the given arguments, returning its exit code.
int run_cli(const std::string& args, const std::string& stdout_path = "") {
  std::string cmd = std::string(MULTIPROJ_CLI_PATH) + " " + args;
  if (!stdout_path.empty()) cmd += " > " + stdout_path;
  cmd += " 2>/dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("project subcommand round-trips through files") {
  TempDir tmp;
  DenseTensor y = gen_uniform_matrix(20, 15, 77, -1.0, 1.0);
  std::string in = tmp.file("in.mlpt");
  std::string out = tmp.file("out.mlpt");
  write_tensor(y, in);

  int code = run_cli("project --in " + in + " --output " + out +
                     " --algo bilevel-l1inf --radius 1.5");
  CHECK(code == 0);
  DenseTensor got = read_tensor(out);
  auto direct = bilevel_project_l1inf(y, 1.5);
  CHECK(testutil::bit_equal(got.data(), direct.X.data()));
}

TEST_CASE("project accepts a multilevel spec via --norms") {
  TempDir tmp;
  DenseTensor y = gen_uniform_tensor({6, 5, 4}, 78, -1.0, 1.0);
  std::string in = tmp.file("in.mlpt");
  std::string out = tmp.file("out.mlpt");
  write_tensor(y, in);
  int code = run_cli("project --in " + in + " --output " + out +
                     " --norms inf,inf,1 --radius 2.0");
  CHECK(code == 0);
  DenseTensor got = read_tensor(out);
  CHECK(multilevel_norm(got, NormSpec{{Norm::Inf, Norm::Inf, Norm::L1}}) <=
        2.0 * (1 + 1e-9));
}

TEST_CASE("csv input produces csv output") {
  TempDir tmp;
  DenseTensor y = gen_uniform_matrix(8, 6, 79, 0.0, 1.0);
  std::string in = tmp.file("in.csv");
  std::string out = tmp.file("out.csv");
  write_tensor(y, in);
  CHECK(run_cli("project --in " + in + " --output " + out +
                " --radius 0.5") == 0);
  DenseTensor got = read_tensor(out);
  CHECK(got.shape() == y.shape());
}

TEST_CASE("missing input exits 3, bad config exits 2") {
  TempDir tmp;
  CHECK(run_cli("project --in " + tmp.file("nonexistent.mlpt") +
                " --output " + tmp.file("o.mlpt")) == 3);

  DenseTensor y = gen_uniform_matrix(4, 4, 80, 0.0, 1.0);
  std::string in = tmp.file("in.mlpt");
  write_tensor(y, in);
  CHECK(run_cli("project --in " + in + " --output " + tmp.file("o.mlpt") +
                " --algo no-such-algorithm") == 2);
  CHECK(run_cli("project --in " + in + " --output " + tmp.file("o.mlpt") +
                " --norms inf,bogus") == 2);
}

TEST_CASE("bench-radius writes a readable record csv") {
  TempDir tmp;
  std::string out = tmp.file("radius.csv");
  int code = run_cli(
      "bench-radius --algo bilevel-l1inf euclid --rows 40 --cols 30 "
      "--radii 0.5,1.0 --reps 2 --seed 5 --out " +
      out);
  CHECK(code == 0);
  auto recs = read_csv_records(out);
  REQUIRE(recs.size() == 4);
  for (const auto& r : recs) {
    CHECK(r.n == 40);
    CHECK(r.m == 30);
    CHECK(r.achieved_norm <= r.radius * (1 + 1e-9));
  }
}

TEST_CASE("bench-size accepts order-2 and order-3 shapes") {
  TempDir tmp;
  std::string out = tmp.file("size.csv");
  int code = run_cli(
      "bench-size --algo bilevel-l1inf --sizes 30x20 --reps 2 --radius 1.0 "
      "--out " +
      out);
  CHECK(code == 0);
  auto recs = read_csv_records(out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].n == 30);

  std::string out3 = tmp.file("size3.csv");
  code = run_cli(
      "bench-size --algo multilevel:inf,inf,1 --dims 8,6,5 --reps 2 "
      "--radius 1.0 --out " +
      out3);
  CHECK(code == 0);
  auto recs3 = read_csv_records(out3);
  REQUIRE(recs3.size() == 1);
  CHECK(recs3[0].extra_dims == std::vector<std::size_t>{5});
}

TEST_CASE("bench-workers verifies identical output across counts") {
  TempDir tmp;
  std::string out = tmp.file("workers.csv");
  int code = run_cli(
      "bench-workers --algo bilevel-l1inf --rows 50 --cols 40 --radius 1.0 "
      "--workers 1,2,4 --reps 2 --out " +
      out);
  CHECK(code == 0);
  auto recs = read_csv_records(out);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].output_checksum == recs[1].output_checksum);
  CHECK(recs[0].output_checksum == recs[2].output_checksum);
}

TEST_CASE("demo trains, reports metrics and writes history") {
  TempDir tmp;
  std::string hist = tmp.file("history.csv");
  std::string stdout_file = tmp.file("stdout.txt");
  int code = run_cli(
      "demo --samples 120 --features 20 --informative 4 --steps 60 "
      "--eta 1.0 --lr 0.2 --seed 9 --out " +
          hist,
      stdout_file);
  CHECK(code == 0);
  std::string text = slurp(stdout_file);
  CHECK(text.find("final_loss=") != std::string::npos);
  CHECK(text.find("test_accuracy=") != std::string::npos);
  CHECK(text.find("zero_feature_fraction=") != std::string::npos);
  std::string history = slurp(hist);
  CHECK(history.rfind("step,loss,accuracy,zero_feature_fraction\n", 0) == 0);
  // Header plus one line per step (plus the initial projected state).
  std::size_t lines = std::count(history.begin(), history.end(), '\n');
  CHECK(lines >= 60);
}
