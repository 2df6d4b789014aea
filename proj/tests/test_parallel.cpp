#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <numeric>

#include "multiproj/dispatch.hpp"
#include "multiproj/parallel.hpp"
#include "multiproj/rng.hpp"
#include "test_util.hpp"

using namespace multiproj;

TEST_CASE("parallel_for covers the range in disjoint contiguous chunks") {
  ThreadPool pool(4);
  for (std::size_t count : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
    std::vector<std::atomic<int>> hits(count);
    std::atomic<int> chunks{0};
    pool.parallel_for(count, [&](std::size_t lo, std::size_t hi) {
      CHECK(lo < hi);
      chunks.fetch_add(1);
      for (std::size_t i = lo; i < hi; ++i) hits[i].fetch_add(1);
    });
    for (std::size_t i = 0; i < count; ++i) CHECK(hits[i].load() == 1);
    if (count > 0) CHECK(chunks.load() <= 4);
  }
}

TEST_CASE("chunk boundaries depend only on count and workers") {
  ThreadPool pool(3);
  auto collect = [&] {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::mutex mu;
    pool.parallel_for(10, [&](std::size_t lo, std::size_t hi) {
      std::lock_guard<std::mutex> lock(mu);
      out.emplace_back(lo, hi);
    });
    std::sort(out.begin(), out.end());
    return out;
  };
  auto a = collect();
  auto b = collect();
  CHECK(a == b);
  // ceil(10/3) = 4: chunks [0,4), [4,8), [8,10).
  REQUIRE(a.size() == 3);
  CHECK(a[0] == std::pair<std::size_t, std::size_t>{0, 4});
  CHECK(a[2] == std::pair<std::size_t, std::size_t>{8, 10});
}

TEST_CASE("null pool runs inline as a single chunk") {
  int calls = 0;
  parallel_for(nullptr, 7, [&](std::size_t lo, std::size_t hi) {
    ++calls;
    CHECK(lo == 0);
    CHECK(hi == 7);
  });
  CHECK(calls == 1);
}

TEST_CASE("projection output is bit-identical across worker counts") {
  Xoshiro256pp seeds(51);
  for (const char* tag :
       {"bilevel-l1inf", "bilevel-l11", "bilevel-l12", "euclid",
        "multilevel:inf,inf,1"}) {
    Algorithm algo = Algorithm::parse(tag);
    std::vector<std::size_t> shape =
        algo.kind == Algorithm::Kind::Multilevel
            ? std::vector<std::size_t>{7, 5, 4}
            : std::vector<std::size_t>{40, 30};
    DenseTensor y = gen_uniform_tensor(shape, seeds.next(), -1.0, 1.0);
    double eta = 3.0;
    DenseTensor base = parallel_project(algo, y, eta, ExecConfig{1});
    for (unsigned w : {2u, 3u, 4u, 7u}) {
      DenseTensor out = parallel_project(algo, y, eta, ExecConfig{w});
      CHECK(tensor_checksum(out) == tensor_checksum(base));
      CHECK(testutil::bit_equal(out.data(), base.data()));
    }
  }
}

TEST_CASE("default_workers reads the environment") {
  unsetenv("MULTIPROJ_WORKERS");
  CHECK(default_workers() == 1);
  setenv("MULTIPROJ_WORKERS", "6", 1);
  CHECK(default_workers() == 6);
  unsetenv("MULTIPROJ_WORKERS");
}

TEST_CASE("pool is reusable across many submissions") {
  ThreadPool pool(2);
  std::vector<double> acc(100, 0.0);
  for (int round = 0; round < 200; ++round)
    pool.parallel_for(acc.size(),
                      [&](std::size_t lo, std::size_t hi) {
                        for (std::size_t i = lo; i < hi; ++i) acc[i] += 1.0;
                      });
  for (double v : acc) CHECK(v == 200.0);
}
