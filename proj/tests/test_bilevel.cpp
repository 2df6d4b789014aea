#include <doctest.h>

#include <cmath>

#include "multiproj/bilevel.hpp"
#include "multiproj/tensor.hpp"
#include "test_util.hpp"

using namespace multiproj;

TEST_CASE("bilevel l1,inf on the identity matrix") {
  DenseTensor y({2, 2}, {1, 0, 0, 1});
  auto res = bilevel_project_l1inf(y, 1.0);
  CHECK(res.budgets[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.budgets[1] == doctest::Approx(0.5).epsilon(1e-12));
  std::vector<double> expect{0.5, 0, 0, 0.5};
  CHECK(testutil::max_abs_diff(res.X.data(), expect) <= 1e-12);
  CHECK(res.zero_columns == 0);
}

TEST_CASE("bilevel l1,inf zeroes a weak column") {
  // Columns (0.9, 0.1) and (0.1, 0.05); the second column's max falls below
  // the outer threshold and its whole budget goes to zero.
  DenseTensor y({2, 2}, {0.9, 0.1, 0.1, 0.05});
  auto res = bilevel_project_l1inf(y, 0.6);
  CHECK(res.budgets[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(res.budgets[1] == doctest::Approx(0.0));
  std::vector<double> expect{0.6, 0, 0.1, 0};
  CHECK(testutil::max_abs_diff(res.X.data(), expect) <= 1e-12);
  CHECK(res.zero_columns == 1);
}

TEST_CASE("bilevel l1,1 worked example") {
  DenseTensor y({2, 2}, {0.5, 0.25, 0.5, 0.25});
  auto res = bilevel_project(y, Norm::L1, Norm::L1, 1.0);
  CHECK(res.budgets[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(res.budgets[1] == doctest::Approx(0.25).epsilon(1e-12));
  std::vector<double> expect{0.375, 0.125, 0.375, 0.125};
  CHECK(testutil::max_abs_diff(res.X.data(), expect) <= 1e-12);
}

TEST_CASE("bilevel l1,2 worked example") {
  DenseTensor y({2, 2}, {3, 0, 4, 0});
  auto res = bilevel_project(y, Norm::L1, Norm::L2, 1.0);
  CHECK(res.budgets[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.budgets[1] == doctest::Approx(0.0));
  std::vector<double> expect{0.6, 0, 0.8, 0};
  CHECK(testutil::max_abs_diff(res.X.data(), expect) <= 1e-12);
}

TEST_CASE("bilevel rejects bad arguments") {
  DenseTensor y({2, 2}, {1, 0, 0, 1});
  CHECK_THROWS_AS(bilevel_project(y, Norm::L1, Norm::Inf, -1.0), ValueError);
  DenseTensor vec({3}, {1, 2, 3});
  CHECK_THROWS_AS(bilevel_project(vec, Norm::L1, Norm::Inf, 1.0), ShapeError);
}

TEST_CASE("bilevel invariants over random matrices") {
  Xoshiro256pp rng(21);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t n = 1 + rng.next() % 12;
    std::size_t m = 1 + rng.next() % 12;
    DenseTensor y = testutil::random_matrix(rng, n, m);
    double norm = matrix_pq_norm(y, Norm::L1, Norm::Inf);
    double eta = rng.next_double() * 1.2 * norm;
    auto res = bilevel_project_l1inf(y, eta);

    // Feasibility of the result and consistency with the reported budgets.
    CHECK(matrix_pq_norm(res.X, Norm::L1, Norm::Inf) <=
          eta * (1 + 1e-9) + 1e-15);
    DenseTensor achieved = aggregate_leading_axis(res.X, Norm::Inf);
    REQUIRE(achieved.size() == res.budgets.size());
    for (std::size_t f = 0; f < m; ++f)
      CHECK(achieved[f] <= res.budgets[f] * (1 + 1e-9) + 1e-15);

    // zero_columns agrees with the projected matrix.
    CHECK(res.zero_columns ==
          structured_sparsity(res.X, 0.0).zero_columns);

    // Feasible input is returned bit-identically (idempotence).
    auto res2 = bilevel_project_l1inf(res.X, eta * (1 + 1e-9));
    CHECK(testutil::bit_equal(res.X.data(), res2.X.data()));
  }
}

TEST_CASE("bilevel feasible input is the identity map") {
  DenseTensor y({2, 3}, {0.1, -0.2, 0.05, 0.0, 0.1, 0.02});
  double norm = matrix_pq_norm(y, Norm::L1, Norm::Inf);
  auto res = bilevel_project_l1inf(y, norm + 1.0);
  CHECK(testutil::bit_equal(y.data(), res.X.data()));
}
