#include "multiproj/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multiproj/bilevel.hpp"
#include "multiproj/rng.hpp"

namespace multiproj {

namespace {

DenseTensor transpose(const DenseTensor& a) {
  const std::size_t rows = a.shape()[0];
  const std::size_t cols = a.shape()[1];
  DenseTensor out = DenseTensor::zeros({cols, rows});
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out.mutable_data()[j * rows + i] = a.data()[i * cols + j];
  return out;
}

// One budget per feature: rows of W are the grouped fibers, so the
// projection runs on the transpose.
void project_features(DenseTensor& w, Norm q, double eta, ThreadPool* pool) {
  DenseTensor wt = transpose(w);
  BilevelResult r = bilevel_project(wt, Norm::L1, q, eta, pool);
  w = transpose(r.X);
}

double zero_feature_fraction(const DenseTensor& w) {
  const std::size_t features = w.shape()[0];
  const std::size_t classes = w.shape()[1];
  std::size_t zeros = 0;
  for (std::size_t f = 0; f < features; ++f) {
    bool all_zero = true;
    for (std::size_t c = 0; c < classes; ++c)
      if (w.data()[f * classes + c] != 0.0) {
        all_zero = false;
        break;
      }
    if (all_zero) ++zeros;
  }
  return static_cast<double>(zeros) / static_cast<double>(features);
}

}  // namespace

SyntheticDataset gen_synthetic_classification(std::size_t n_samples,
                                              std::size_t n_features,
                                              std::size_t n_informative,
                                              std::size_t n_classes,
                                              double separability,
                                              std::uint64_t seed) {
  if (n_informative > n_features)
    throw ConfigError("n_informative must be <= n_features");
  if (n_classes < 2) throw ConfigError("n_classes must be >= 2");
  if (n_samples == 0) throw ConfigError("n_samples must be >= 1");

  Xoshiro256pp rng(seed);

  // Informative coordinates: partial Fisher-Yates over the feature indices.
  std::vector<std::size_t> order(n_features);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < n_informative; ++i) {
    std::size_t j = i + rng.next() % (n_features - i);
    std::swap(order[i], order[j]);
  }
  std::vector<bool> informative(n_features, false);
  for (std::size_t i = 0; i < n_informative; ++i) informative[order[i]] = true;

  // Per-class sign pattern on the informative coordinates. Binary data uses
  // opposite signs; more classes get seeded random patterns.
  std::vector<double> sign(n_classes * n_features, 0.0);
  for (std::size_t f = 0; f < n_features; ++f) {
    if (!informative[f]) continue;
    if (n_classes == 2) {
      sign[0 * n_features + f] = -1.0;
      sign[1 * n_features + f] = 1.0;
    } else {
      for (std::size_t c = 0; c < n_classes; ++c)
        sign[c * n_features + f] = (rng.next() & 1) ? 1.0 : -1.0;
    }
  }

  std::vector<int> labels(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i)
    labels[i] = static_cast<int>(rng.next() % n_classes);

  std::vector<double> x(n_samples * n_features);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double* s = &sign[static_cast<std::size_t>(labels[i]) * n_features];
    for (std::size_t f = 0; f < n_features; ++f)
      x[i * n_features + f] = separability * s[f] + rng.normal();
  }

  return {DenseTensor::matrix(n_samples, n_features, std::move(x)),
          std::move(labels), std::move(informative), n_classes};
}

GradResult softmax_xent_grad(const LinearModel& model, const DenseTensor& x,
                             const std::vector<int>& labels) {
  if (x.order() != 2 || model.W.order() != 2)
    throw ShapeError("softmax_xent_grad requires order-2 inputs");
  const std::size_t n = x.shape()[0];
  const std::size_t d = x.shape()[1];
  const std::size_t k = model.W.shape()[1];
  if (model.W.shape()[0] != d || model.b.size() != k || labels.size() != n)
    throw ShapeError("softmax_xent_grad shape mismatch");

  GradResult result{0.0, DenseTensor::zeros({d, k}), std::vector<double>(k, 0.0)};
  std::span<const double> xd = x.data();
  std::span<const double> wd = model.W.data();
  std::span<double> gw = result.grad_w.mutable_data();

  std::vector<double> logits(k);
  const double inv_n = 1.0 / static_cast<double>(n);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) logits[c] = model.b[c];
    for (std::size_t f = 0; f < d; ++f) {
      double xv = xd[i * d + f];
      if (xv == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) logits[c] += xv * wd[f * k + c];
    }
    double mx = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      logits[c] = std::exp(logits[c] - mx);
      z += logits[c];
    }
    int y = labels[i];
    if (y < 0 || static_cast<std::size_t>(y) >= k)
      throw ShapeError("label out of range");
    loss -= std::log(logits[static_cast<std::size_t>(y)] / z);
    for (std::size_t c = 0; c < k; ++c) {
      double p = logits[c] / z;
      double g = (p - (static_cast<std::size_t>(y) == c ? 1.0 : 0.0)) * inv_n;
      result.grad_b[c] += g;
      for (std::size_t f = 0; f < d; ++f)
        gw[f * k + c] += g * xd[i * d + f];
    }
  }
  result.loss = loss * inv_n;
  return result;
}

double evaluate(const LinearModel& model, const DenseTensor& x,
                const std::vector<int>& labels) {
  const std::size_t n = x.shape()[0];
  const std::size_t d = x.shape()[1];
  const std::size_t k = model.W.shape()[1];
  if (model.W.shape()[0] != d || labels.size() != n)
    throw ShapeError("evaluate shape mismatch");
  std::span<const double> xd = x.data();
  std::span<const double> wd = model.W.data();
  std::vector<double> logits(k);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) logits[c] = model.b[c];
    for (std::size_t f = 0; f < d; ++f) {
      double xv = xd[i * d + f];
      for (std::size_t c = 0; c < k; ++c) logits[c] += xv * wd[f * k + c];
    }
    std::size_t arg = 0;
    for (std::size_t c = 1; c < k; ++c)
      if (logits[c] > logits[arg]) arg = c;  // ties keep the lower index
    if (static_cast<int>(arg) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

TrainResult train_projected(const SyntheticDataset& data, double eta, Norm q,
                            std::size_t steps, double lr, std::uint64_t seed,
                            ThreadPool* pool) {
  if (!(eta > 0.0)) throw ConfigError("eta must be > 0");
  if (!(lr > 0.0)) throw ConfigError("lr must be > 0");
  const std::size_t d = data.X.shape()[1];
  const std::size_t k = data.classes;

  Xoshiro256pp rng(seed);
  std::vector<double> w0(d * k);
  for (double& v : w0) v = 0.01 * rng.normal();
  LinearModel model{DenseTensor::matrix(d, k, std::move(w0)),
                    std::vector<double>(k, 0.0)};
  project_features(model.W, q, eta, pool);

  TrainResult result{std::move(model), {}};
  result.history.reserve(steps);
  for (std::size_t step = 0; step < steps; ++step) {
    GradResult g = softmax_xent_grad(result.model, data.X, data.labels);
    if (!std::isfinite(g.loss))
      throw TrainingError("training diverged (non-finite loss)", step);
    std::span<double> wd = result.model.W.mutable_data();
    std::span<const double> gw = g.grad_w.data();
    for (std::size_t i = 0; i < wd.size(); ++i) wd[i] -= lr * gw[i];
    for (std::size_t c = 0; c < k; ++c) result.model.b[c] -= lr * g.grad_b[c];
    project_features(result.model.W, q, eta, pool);
    result.history.push_back({g.loss, evaluate(result.model, data.X, data.labels),
                              zero_feature_fraction(result.model.W)});
  }
  return result;
}

TrainTestSplit split_dataset(const SyntheticDataset& data, double test_fraction,
                             std::uint64_t seed) {
  const std::size_t n = data.X.shape()[0];
  const std::size_t d = data.X.shape()[1];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Xoshiro256pp rng(seed);
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng.next() % i]);
  std::size_t n_test = static_cast<std::size_t>(
      std::round(test_fraction * static_cast<double>(n)));
  std::size_t n_train = n - n_test;

  std::vector<double> train_x(n_train * d), test_x(n_test * d);
  std::vector<int> train_y(n_train), test_y(n_test);
  for (std::size_t i = 0; i < n_train; ++i) {
    std::copy_n(&data.X.data()[order[i] * d], d, &train_x[i * d]);
    train_y[i] = data.labels[order[i]];
  }
  for (std::size_t i = 0; i < n_test; ++i) {
    std::copy_n(&data.X.data()[order[n_train + i] * d], d, &test_x[i * d]);
    test_y[i] = data.labels[order[n_train + i]];
  }
  return {DenseTensor::matrix(n_train, d, std::move(train_x)),
          std::move(train_y),
          DenseTensor::matrix(n_test, d, std::move(test_x)),
          std::move(test_y)};
}

}  // namespace multiproj
