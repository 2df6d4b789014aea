#ifndef MULTIPROJ_TENSOR_HPP
#define MULTIPROJ_TENSOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multiproj/errors.hpp"

namespace multiproj {

enum class Norm { L1, L2, Inf };

std::string norm_name(Norm q);

/// Dense order-r array of doubles, row-major. Shape (d_1,...,d_r); the
/// leading axis is the grouped one: a fiber is the length-d_1 slice
/// obtained by fixing the trailing r-1 indices. For a matrix (n,m) the
/// fibers are the m columns.
class DenseTensor {
 public:
  DenseTensor(std::vector<std::size_t> shape, std::vector<double> data);

  static DenseTensor zeros(std::vector<std::size_t> shape);
  /// Order-2 tensor from row-major entries.
  static DenseTensor matrix(std::size_t rows, std::size_t cols,
                            std::vector<double> row_major);
  static DenseTensor vector(std::vector<double> values);

  std::size_t order() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  std::span<const double> data() const { return data_; }
  std::span<double> mutable_data() { return data_; }

  /// Length of one leading-axis fiber (d_1).
  std::size_t fiber_length() const { return shape_.empty() ? 0 : shape_[0]; }
  /// Number of leading-axis fibers (product of trailing dims).
  std::size_t fiber_count() const;

  /// Element i of fiber f. Fibers are strided: stride = fiber_count().
  double fiber_at(std::size_t fiber, std::size_t i) const {
    return data_[i * fiber_count_ + fiber];
  }
  double& fiber_at(std::size_t fiber, std::size_t i) {
    return data_[i * fiber_count_ + fiber];
  }

  /// Copies fiber f into out (out.size() == fiber_length()).
  void copy_fiber(std::size_t fiber, std::span<double> out) const;
  void set_fiber(std::size_t fiber, std::span<const double> values);

  double operator[](std::size_t flat) const { return data_[flat]; }
  double& operator[](std::size_t flat) { return data_[flat]; }

  bool same_shape(const DenseTensor& other) const {
    return shape_ == other.shape_;
  }

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
  std::size_t fiber_count_ = 0;
};

/// Read-only view of one leading-axis fiber.
class FiberView {
 public:
  FiberView(const DenseTensor& base, std::size_t fiber);
  std::size_t size() const { return base_->fiber_length(); }
  double operator[](std::size_t i) const { return base_->fiber_at(fiber_, i); }
  std::size_t fiber_index() const { return fiber_; }

 private:
  const DenseTensor* base_;
  std::size_t fiber_;
};

/// ||v||_q for q in {1,2,inf}; 0 for the empty vector.
double vector_norm(std::span<const double> v, Norm q);

/// ||Y||_{p,q}: p-norm of the vector of per-column q-norms. Y must be order 2.
double matrix_pq_norm(const DenseTensor& y, Norm p, Norm q);

/// Removes the leading axis: out[i] = ||fiber_i||_q. Input order must be >= 2.
DenseTensor aggregate_leading_axis(const DenseTensor& t, Norm q);

/// Frobenius distance ||A - B||_F. Shapes must match.
double frobenius_distance(const DenseTensor& a, const DenseTensor& b);

struct SparsityCount {
  std::size_t zero_columns;
  double fraction;
};

/// Columns of order-2 X whose max magnitude is <= tol.
SparsityCount structured_sparsity(const DenseTensor& x, double tol);

}  // namespace multiproj

#endif
