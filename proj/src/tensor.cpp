#include "multiproj/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace multiproj {

std::string norm_name(Norm q) {
  switch (q) {
    case Norm::L1:
      return "1";
    case Norm::L2:
      return "2";
    case Norm::Inf:
      return "inf";
  }
  return "?";
}

namespace {

std::size_t checked_size(const std::vector<std::size_t>& shape) {
  if (shape.empty()) throw ShapeError("tensor order must be >= 1");
  std::size_t n = 1;
  for (std::size_t d : shape) {
    if (d == 0) throw ShapeError("zero dimension in shape");
    n *= d;
  }
  return n;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> shape,
                         std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (checked_size(shape_) != data_.size())
    throw ShapeError("shape/data size mismatch");
  for (double v : data_)
    if (!std::isfinite(v)) throw ValueError("non-finite tensor entry");
  fiber_count_ = data_.size() / shape_[0];
}

DenseTensor DenseTensor::zeros(std::vector<std::size_t> shape) {
  std::size_t n = checked_size(shape);
  return DenseTensor(std::move(shape), std::vector<double>(n, 0.0));
}

DenseTensor DenseTensor::matrix(std::size_t rows, std::size_t cols,
                                std::vector<double> row_major) {
  return DenseTensor({rows, cols}, std::move(row_major));
}

DenseTensor DenseTensor::vector(std::vector<double> values) {
  std::size_t n = values.size();  // read before the move: eval order is
                                  // unspecified across arguments
  return DenseTensor({n}, std::move(values));
}

std::size_t DenseTensor::fiber_count() const { return fiber_count_; }

void DenseTensor::copy_fiber(std::size_t fiber, std::span<double> out) const {
  const std::size_t n = fiber_length();
  for (std::size_t i = 0; i < n; ++i) out[i] = fiber_at(fiber, i);
}

void DenseTensor::set_fiber(std::size_t fiber, std::span<const double> values) {
  const std::size_t n = fiber_length();
  for (std::size_t i = 0; i < n; ++i) fiber_at(fiber, i) = values[i];
}

FiberView::FiberView(const DenseTensor& base, std::size_t fiber)
    : base_(&base), fiber_(fiber) {
  if (fiber >= base.fiber_count()) throw ShapeError("fiber index out of range");
}

double vector_norm(std::span<const double> v, Norm q) {
  for (double x : v)
    if (!std::isfinite(x)) throw ValueError("non-finite vector entry");
  switch (q) {
    case Norm::L1: {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return s;
    }
    case Norm::L2: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    }
    case Norm::Inf: {
      double s = 0.0;
      for (double x : v) s = std::max(s, std::abs(x));
      return s;
    }
  }
  return 0.0;
}

double matrix_pq_norm(const DenseTensor& y, Norm p, Norm q) {
  if (y.order() != 2) throw ShapeError("matrix_pq_norm requires order 2");
  DenseTensor agg = aggregate_leading_axis(y, q);
  return vector_norm(agg.data(), p);
}

DenseTensor aggregate_leading_axis(const DenseTensor& t, Norm q) {
  if (t.order() < 2)
    throw ShapeError("aggregate_leading_axis requires order >= 2");
  std::vector<std::size_t> out_shape(t.shape().begin() + 1, t.shape().end());
  DenseTensor out = DenseTensor::zeros(std::move(out_shape));
  const std::size_t n = t.fiber_length();
  const std::size_t m = t.fiber_count();
  std::span<double> o = out.mutable_data();
  std::span<const double> d = t.data();
  // Row sweep: each accumulator is updated in ascending i, matching the
  // left-to-right order of a per-fiber loop.
  switch (q) {
    case Norm::L1:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < m; ++f) o[f] += std::abs(d[i * m + f]);
      break;
    case Norm::L2:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < m; ++f) {
          double x = d[i * m + f];
          o[f] += x * x;
        }
      for (std::size_t f = 0; f < m; ++f) o[f] = std::sqrt(o[f]);
      break;
    case Norm::Inf:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < m; ++f)
          o[f] = std::max(o[f], std::abs(d[i * m + f]));
      break;
  }
  return out;
}

double frobenius_distance(const DenseTensor& a, const DenseTensor& b) {
  if (!a.same_shape(b)) throw ShapeError("frobenius_distance shape mismatch");
  double s = 0.0;
  std::span<const double> da = a.data();
  std::span<const double> db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    double diff = da[i] - db[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

SparsityCount structured_sparsity(const DenseTensor& x, double tol) {
  if (x.order() != 2) throw ShapeError("structured_sparsity requires order 2");
  const std::size_t m = x.fiber_count();
  const std::size_t n = x.fiber_length();
  std::size_t count = 0;
  for (std::size_t f = 0; f < m; ++f) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      mx = std::max(mx, std::abs(x.fiber_at(f, i)));
    if (mx <= tol) ++count;
  }
  return {count, static_cast<double>(count) / static_cast<double>(m)};
}

}  // namespace multiproj
