#include "multiproj/vector_balls.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "multiproj/errors.hpp"

namespace multiproj {

namespace {

void check_radius(double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw ValueError("radius must be a finite nonnegative real");
}

void check_finite(std::span<const double> y) {
  for (double v : y)
    if (!std::isfinite(v)) throw ValueError("non-finite vector entry");
}

double l1_norm(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += std::abs(v);
  return s;
}

// Final threshold for the l1 projection given the active-set cutoff:
// the k active entries are exactly those with |y_i| >= cutoff. Both the
// sort and the pivot path funnel through this sum so they agree bitwise.
double l1_threshold_from_cutoff(std::span<const double> y, double cutoff,
                                std::size_t k, double radius) {
  long double s = 0.0L;
  for (double v : y) {
    double a = std::abs(v);
    if (a >= cutoff) s += a;
  }
  return static_cast<double>((s - radius) / static_cast<long double>(k));
}

void soft_threshold(std::span<const double> y, double tau,
                    std::span<double> out) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    double a = std::abs(y[i]) - tau;
    out[i] = a > 0.0 ? std::copysign(a, y[i]) : 0.0;
  }
}

// Maximal k with z_(k) > (P_k - radius)/k on the descending-sorted
// magnitudes; returns (cutoff z_(k), k). Requires ||z||_1 > radius.
std::pair<double, std::size_t> sort_cutoff(std::vector<double>& mags,
                                           double radius) {
  std::sort(mags.begin(), mags.end(), std::greater<>());
  long double prefix = 0.0L;
  double cutoff = mags[0];
  std::size_t k = 1;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    prefix += mags[i];
    double candidate =
        static_cast<double>((prefix - radius) / static_cast<long double>(i + 1));
    if (mags[i] > candidate) {
      cutoff = mags[i];
      k = i + 1;
    } else {
      break;
    }
  }
  return {cutoff, k};
}

// Duchi-style randomized pivot partition on magnitudes; expected linear.
// Returns the same (cutoff, k) pair as sort_cutoff.
std::pair<double, std::size_t> pivot_cutoff(std::vector<double>& w,
                                            double radius) {
  std::uint64_t rng = 0x9e3779b97f4a7c15ULL;
  auto next = [&rng]() {
    rng ^= rng << 13;
    rng ^= rng >> 7;
    rng ^= rng << 17;
    return rng;
  };
  std::size_t lo = 0, hi = w.size();
  long double active_sum = 0.0L;
  std::size_t active_count = 0;
  double cutoff = 0.0;
  while (lo < hi) {
    double p = w[lo + next() % (hi - lo)];
    // Partition [lo,hi) so entries >= p come first.
    std::size_t mid = lo;
    long double gsum = 0.0L;
    for (std::size_t i = lo; i < hi; ++i) {
      if (w[i] >= p) {
        std::swap(w[i], w[mid]);
        gsum += w[mid];
        ++mid;
      }
    }
    std::size_t gcount = mid - lo;
    long double excess = (active_sum + gsum) -
                         static_cast<long double>(active_count + gcount) * p;
    if (excess < radius) {
      // Threshold lies below p: everything >= p is active.
      active_sum += gsum;
      active_count += gcount;
      cutoff = p;
      lo = mid;
    } else {
      // Threshold is >= p: discard entries equal to p, keep the rest of G.
      std::size_t keep = lo;
      for (std::size_t i = lo; i < mid; ++i) {
        if (w[i] > p) {
          std::swap(w[i], w[keep]);
          ++keep;
        }
      }
      hi = keep;
    }
  }
  return {cutoff, active_count};
}

}  // namespace

std::vector<double> project_l1_sort(std::span<const double> y, double radius) {
  check_radius(radius);
  check_finite(y);
  std::vector<double> out(y.begin(), y.end());
  if (out.empty() || l1_norm(y) <= radius) return out;
  if (radius == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return out;
  }
  std::vector<double> mags(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) mags[i] = std::abs(y[i]);
  auto [cutoff, k] = sort_cutoff(mags, radius);
  double tau = l1_threshold_from_cutoff(y, cutoff, k, radius);
  soft_threshold(y, tau, out);
  return out;
}

std::vector<double> project_l1_fast(std::span<const double> y, double radius) {
  check_radius(radius);
  check_finite(y);
  std::vector<double> out(y.begin(), y.end());
  project_l1_fast_inplace(out, radius);
  return out;
}

void project_l1_fast_inplace(std::span<double> y, double radius) {
  if (y.empty() || l1_norm(y) <= radius) return;
  if (radius == 0.0) {
    std::fill(y.begin(), y.end(), 0.0);
    return;
  }
  std::vector<double> mags(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) mags[i] = std::abs(y[i]);
  auto [cutoff, k] = pivot_cutoff(mags, radius);
  double tau = l1_threshold_from_cutoff(y, cutoff, k, radius);
  soft_threshold(y, tau, y);
}

std::vector<double> project_l2(std::span<const double> y, double radius) {
  check_radius(radius);
  check_finite(y);
  std::vector<double> out(y.begin(), y.end());
  project_l2_inplace(out, radius);
  return out;
}

void project_l2_inplace(std::span<double> y, double radius) {
  double norm = vector_norm(y, Norm::L2);
  if (norm <= radius) return;
  if (norm == 0.0) return;
  double scale = radius / norm;
  for (double& v : y) v *= scale;
}

std::vector<double> project_linf(std::span<const double> y, double radius) {
  check_radius(radius);
  check_finite(y);
  std::vector<double> out(y.begin(), y.end());
  project_linf_inplace(out, radius);
  return out;
}

void project_linf_inplace(std::span<double> y, double radius) {
  for (double& v : y) {
    if (std::abs(v) > radius) v = std::copysign(radius, v);
  }
}

void project_ball_inplace(std::span<double> y, Norm q, double radius) {
  switch (q) {
    case Norm::L1:
      project_l1_fast_inplace(y, radius);
      return;
    case Norm::L2:
      project_l2_inplace(y, radius);
      return;
    case Norm::Inf:
      project_linf_inplace(y, radius);
      return;
  }
}

std::vector<double> project_ball(std::span<const double> y, Norm q,
                                 double radius) {
  check_radius(radius);
  check_finite(y);
  std::vector<double> out(y.begin(), y.end());
  project_ball_inplace(out, q, radius);
  return out;
}

}  // namespace multiproj
