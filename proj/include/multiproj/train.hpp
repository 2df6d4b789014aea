#ifndef MULTIPROJ_TRAIN_HPP
#define MULTIPROJ_TRAIN_HPP

#include <cstdint>
#include <vector>

#include "multiproj/parallel.hpp"
#include "multiproj/tensor.hpp"

namespace multiproj {

struct SyntheticDataset {
  DenseTensor X;                     // samples x features
  std::vector<int> labels;           // in {0,...,classes-1}
  std::vector<bool> informative;     // one flag per feature
  std::size_t classes;
};

/// Gaussian blobs: class means are +/- separability on the informative
/// coordinates (class 0 negative, class 1 positive for the binary case,
/// seeded random sign patterns beyond that), zero elsewhere; unit-variance
/// noise everywhere. Deterministic given the seed.
SyntheticDataset gen_synthetic_classification(std::size_t n_samples,
                                              std::size_t n_features,
                                              std::size_t n_informative,
                                              std::size_t n_classes,
                                              double separability,
                                              std::uint64_t seed);

struct LinearModel {
  DenseTensor W;            // features x classes
  std::vector<double> b;    // per-class bias
};

struct GradResult {
  double loss;
  DenseTensor grad_w;
  std::vector<double> grad_b;
};

/// Mean softmax cross-entropy over the samples, with gradients.
GradResult softmax_xent_grad(const LinearModel& model, const DenseTensor& x,
                             const std::vector<int>& labels);

/// Argmax accuracy; prediction ties break toward the lower class index.
double evaluate(const LinearModel& model, const DenseTensor& x,
                const std::vector<int>& labels);

struct TrainStep {
  double loss;
  double accuracy;
  double zero_feature_fraction;
};

struct TrainResult {
  LinearModel model;
  std::vector<TrainStep> history;
};

/// Full-batch projected gradient descent: after every step W is projected
/// so the per-feature groups satisfy the bi-level (1,q) constraint at
/// radius eta. A zeroed feature budget removes the feature entirely.
TrainResult train_projected(const SyntheticDataset& data, double eta, Norm q,
                            std::size_t steps, double lr, std::uint64_t seed,
                            ThreadPool* pool = nullptr);

/// Row/column split helpers used by the demo and its tests.
struct TrainTestSplit {
  DenseTensor train_x;
  std::vector<int> train_y;
  DenseTensor test_x;
  std::vector<int> test_y;
};

/// Deterministic shuffled 75/25 split.
TrainTestSplit split_dataset(const SyntheticDataset& data, double test_fraction,
                             std::uint64_t seed);

}  // namespace multiproj

#endif
