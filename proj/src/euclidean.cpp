#include "multiproj/euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace multiproj {

namespace {

// Per-column description of the residual function
// r(u) = sum_i max(a_i - u, 0) on the sorted magnitudes a_1 >= ... >= a_n.
// r is piecewise linear, decreasing from r(0) = sum a_i to r(a_1) = 0.
// In theta space the breakpoints are t_k = P_k - k * a_k (non-decreasing
// in k); for t_k <= theta < t_{k+1} the inverse is u(theta) = (P_k - theta)/k.
struct ColumnProfile {
  std::vector<double> sorted_mags;    // descending
  std::vector<long double> prefix;    // prefix[k] = a_1 + ... + a_k
  std::vector<double> theta_breaks;   // t_k, k = 1..n
  double total_mass;                  // r(0)

  // Active-segment index k for a given theta (theta < total_mass), i.e. the
  // number of entries strictly above the resulting budget.
  std::size_t segment(double theta) const {
    auto it = std::upper_bound(theta_breaks.begin(), theta_breaks.end(), theta);
    return static_cast<std::size_t>(it - theta_breaks.begin());
  }

  double budget_at(double theta, std::size_t k) const {
    return static_cast<double>(
        (prefix[k] - static_cast<long double>(theta)) /
        static_cast<long double>(k));
  }
};

ColumnProfile make_profile(const DenseTensor& y, std::size_t col) {
  const std::size_t n = y.fiber_length();
  ColumnProfile p;
  p.sorted_mags.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    p.sorted_mags[i] = std::abs(y.fiber_at(col, i));
  std::sort(p.sorted_mags.begin(), p.sorted_mags.end(), std::greater<>());
  p.prefix.resize(n + 1, 0.0L);
  p.theta_breaks.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    p.prefix[k] = p.prefix[k - 1] + p.sorted_mags[k - 1];
    p.theta_breaks[k - 1] = static_cast<double>(
        p.prefix[k] - static_cast<long double>(k) * p.sorted_mags[k - 1]);
  }
  p.total_mass = static_cast<double>(p.prefix[n]);
  return p;
}

// Total budget sum_j u_j(theta); non-increasing in theta.
double budget_sum(const std::vector<ColumnProfile>& cols, double theta) {
  long double s = 0.0L;
  for (const auto& c : cols) {
    if (theta >= c.total_mass) continue;
    std::size_t k = c.segment(theta);
    if (k == 0) k = 1;
    s += c.budget_at(theta, k);
  }
  return static_cast<double>(s);
}

}  // namespace

double clip_cost(const DenseTensor& y, std::span<const double> budgets) {
  if (y.order() != 2) throw ShapeError("clip_cost requires order 2");
  const std::size_t m = y.fiber_count();
  const std::size_t n = y.fiber_length();
  double cost = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      double over = std::abs(y.fiber_at(j, i)) - budgets[j];
      if (over > 0.0) cost += over * over;
    }
  return cost;
}

EuclidResult euclid_project_l1inf(const DenseTensor& y, double eta) {
  if (y.order() != 2) throw ShapeError("euclid_project_l1inf requires order 2");
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw ValueError("radius must be a finite nonnegative real");
  const std::size_t m = y.fiber_count();
  const std::size_t n = y.fiber_length();

  std::vector<ColumnProfile> cols;
  cols.reserve(m);
  for (std::size_t j = 0; j < m; ++j) cols.push_back(make_profile(y, j));

  double l1inf = 0.0;
  for (const auto& c : cols) l1inf += c.sorted_mags.empty() ? 0.0 : c.sorted_mags[0];

  if (l1inf <= eta) {
    // Feasible: identity, budgets are the column maxima.
    std::vector<double> budgets(m);
    for (std::size_t j = 0; j < m; ++j) budgets[j] = cols[j].sorted_mags[0];
    return {y, {std::move(budgets), 0.0}};
  }

  if (eta == 0.0) {
    double theta = 0.0;
    for (const auto& c : cols) theta = std::max(theta, c.total_mass);
    return {DenseTensor::zeros(y.shape()),
            {std::vector<double>(m, 0.0), theta}};
  }

  // Candidate theta values: every per-column breakpoint plus the column
  // deactivation points r_j(0). The optimal theta solves sum_j u_j(theta)
  // = eta inside one linear segment.
  std::vector<double> breaks;
  breaks.reserve(m * (n + 1) + 1);
  breaks.push_back(0.0);
  for (const auto& c : cols) {
    breaks.insert(breaks.end(), c.theta_breaks.begin(), c.theta_breaks.end());
    breaks.push_back(c.total_mass);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // First breakpoint where the budget sum drops to <= eta.
  std::size_t lo = 0, hi = breaks.size() - 1;
  // budget_sum(breaks[0] = 0) = l1inf > eta; budget_sum at the largest
  // breakpoint (max total mass) is 0 <= eta.
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (budget_sum(cols, breaks[mid]) <= eta)
      hi = mid;
    else
      lo = mid;
  }

  double theta;
  double s_hi = budget_sum(cols, breaks[hi]);
  if (s_hi == eta) {
    theta = breaks[hi];
  } else {
    // Solve the linear segment (breaks[lo], breaks[hi]) exactly: the
    // per-column segment indices are constant there.
    double probe = 0.5 * (breaks[lo] + breaks[hi]);
    long double a = 0.0L, b = 0.0L;
    for (const auto& c : cols) {
      if (probe >= c.total_mass) continue;
      std::size_t k = c.segment(probe);
      if (k == 0) k = 1;
      a += c.prefix[k] / static_cast<long double>(k);
      b += 1.0L / static_cast<long double>(k);
    }
    theta = static_cast<double>((a - static_cast<long double>(eta)) / b);
    theta = std::clamp(theta, breaks[lo], breaks[hi]);
  }

  std::vector<double> budgets(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    if (theta >= cols[j].total_mass) continue;
    std::size_t k = cols[j].segment(theta);
    if (k == 0) k = 1;
    budgets[j] = std::max(0.0, cols[j].budget_at(theta, k));
  }

  DenseTensor x = y;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      double& e = x.fiber_at(j, i);
      if (std::abs(e) > budgets[j]) e = std::copysign(budgets[j], e);
    }
  return {std::move(x), {std::move(budgets), theta}};
}

ColumnBudgetSolution budget_oracle_grid(const DenseTensor& y, double eta,
                                        std::size_t steps) {
  if (y.order() != 2) throw ShapeError("budget_oracle_grid requires order 2");
  const std::size_t m = y.fiber_count();
  if (m > 3) throw ConfigError("budget_oracle_grid supports m <= 3 only");
  if (steps < 100) throw ConfigError("budget_oracle_grid needs steps >= 100");
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw ValueError("radius must be a finite nonnegative real");
  const std::size_t n = y.fiber_length();

  // Per-column cost tables on the budget grid u = g * eta / steps.
  std::vector<std::vector<double>> cost(m);
  for (std::size_t j = 0; j < m; ++j) {
    cost[j].resize(steps + 1);
    for (std::size_t g = 0; g <= steps; ++g) {
      double u = eta * static_cast<double>(g) / static_cast<double>(steps);
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double over = std::abs(y.fiber_at(j, i)) - u;
        if (over > 0.0) c += over * over;
      }
      cost[j][g] = c;
    }
  }

  std::vector<std::size_t> best(m, 0);
  double best_cost = std::numeric_limits<double>::infinity();
  if (m == 1) {
    best[0] = steps;
    best_cost = cost[0][steps];
  } else if (m == 2) {
    for (std::size_t i = 0; i <= steps; ++i) {
      double c = cost[0][i] + cost[1][steps - i];
      if (c < best_cost) {
        best_cost = c;
        best = {i, steps - i};
      }
    }
  } else {
    for (std::size_t i = 0; i <= steps; ++i) {
      const double ci = cost[0][i];
      if (ci >= best_cost) continue;
      const double* c1 = cost[1].data();
      const double* c2 = cost[2].data();
      for (std::size_t k = 0; k + i <= steps; ++k) {
        double c = ci + c1[k] + c2[steps - i - k];
        if (c < best_cost) {
          best_cost = c;
          best = {i, k, steps - i - k};
        }
      }
    }
  }

  ColumnBudgetSolution sol;
  sol.budgets.resize(m);
  for (std::size_t j = 0; j < m; ++j)
    sol.budgets[j] =
        eta * static_cast<double>(best[j]) / static_cast<double>(steps);
  sol.theta = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (sol.budgets[j] <= 0.0) continue;
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      r += std::max(0.0, std::abs(y.fiber_at(j, i)) - sol.budgets[j]);
    sol.theta = std::max(sol.theta, r);
  }
  return sol;
}

}  // namespace multiproj
