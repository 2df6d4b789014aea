#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multiproj/bench.hpp"
#include "multiproj/train.hpp"

namespace {

using namespace multiproj;

std::vector<double> parse_radii(const std::string& s) {
  // lo:hi:steps (geometric endpoints included) or a comma list.
  std::vector<double> radii;
  if (s.find(':') != std::string::npos) {
    double lo, hi;
    std::size_t steps;
    if (std::sscanf(s.c_str(), "%lf:%lf:%zu", &lo, &hi, &steps) != 3 ||
        steps < 1 || !(lo > 0.0) || !(hi >= lo))
      throw ConfigError("bad --radii range '" + s + "' (want lo:hi:steps)");
    for (std::size_t i = 0; i < steps; ++i) {
      double t = steps == 1 ? 0.0
                            : static_cast<double>(i) /
                                  static_cast<double>(steps - 1);
      radii.push_back(lo * std::pow(hi / lo, t));
    }
    return radii;
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      radii.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad radius '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return radii;
}

std::vector<std::size_t> parse_dims(const std::string& s, char sep) {
  std::vector<std::size_t> dims;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t c = s.find(sep, pos);
    std::string tok =
        s.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
    try {
      dims.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad dimension '" + tok + "'");
    }
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return dims;
}

Norm parse_norm_tag(const std::string& s) {
  NormSpec spec = parse_norm_spec(s);
  if (spec.depth() != 1) throw ConfigError("--q expects a single norm tag");
  return spec.levels[0];
}

void print_records(const std::vector<BenchRecord>& records,
                   const std::string& out_path) {
  if (!out_path.empty()) {
    write_csv_records(records, out_path);
    std::cout << "wrote " << records.size() << " records to " << out_path
              << "\n";
    return;
  }
  for (const auto& r : records)
    std::cout << r.algorithm << " n=" << r.n << " m=" << r.m
              << " radius=" << r.radius << " workers=" << r.workers
              << " median_s=" << r.median_seconds
              << " achieved=" << r.achieved_norm
              << " zero_cols=" << r.zero_columns << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured-sparsity norm-ball projections and benchmarks"};
  app.require_subcommand(1);

  unsigned workers = default_workers();
  std::uint64_t seed = 42;
  std::size_t reps = 5;
  std::string out_path;

  // project
  auto* project = app.add_subcommand("project", "Project a tensor file");
  std::string in_path, output_path, algo_tag = "bilevel-l1inf", norms;
  double radius = 1.0;
  project->add_option("--in", in_path, "input tensor (MLPT or CSV)")
      ->required();
  project->add_option("--output", output_path, "output tensor path")
      ->required();
  project->add_option("--algo", algo_tag, "algorithm tag");
  project->add_option("--norms", norms,
                      "norm spec, innermost first (implies multilevel)");
  project->add_option("--radius", radius, "ball radius");
  project->add_option("--workers", workers, "worker threads");

  // bench-radius
  auto* bench_radius =
      app.add_subcommand("bench-radius", "Time a radius sweep");
  std::vector<std::string> algos{"bilevel-l1inf"};
  std::size_t rows = 1000, cols = 10000;
  std::string radii_arg = "0.25:4:5";
  bench_radius->add_option("--algo", algos, "algorithm tags");
  bench_radius->add_option("--rows", rows, "matrix rows");
  bench_radius->add_option("--cols", cols, "matrix cols");
  bench_radius->add_option("--radii", radii_arg, "lo:hi:steps or comma list");
  bench_radius->add_option("--seed", seed, "rng seed");
  bench_radius->add_option("--reps", reps, "timed repetitions");
  bench_radius->add_option("--workers", workers, "worker threads");
  bench_radius->add_option("--out", out_path, "CSV output path");

  // bench-size
  auto* bench_size = app.add_subcommand("bench-size", "Time a size sweep");
  std::vector<std::string> size_args;
  std::string dims_arg;
  double eta = 1.0;
  bench_size->add_option("--algo", algos, "algorithm tags");
  bench_size->add_option("--sizes", size_args,
                         "shapes, e.g. 1000x1000 32x1000x100");
  bench_size->add_option("--dims", dims_arg, "single shape a,b,c");
  bench_size->add_option("--radius", eta, "ball radius");
  bench_size->add_option("--seed", seed, "rng seed");
  bench_size->add_option("--reps", reps, "timed repetitions");
  bench_size->add_option("--workers", workers, "worker threads");
  bench_size->add_option("--out", out_path, "CSV output path");

  // bench-workers
  auto* bench_workers =
      app.add_subcommand("bench-workers", "Measure worker speedup");
  std::string workers_arg = "1,2,4";
  std::string bw_algo = "bilevel-l1inf";
  bench_workers->add_option("--algo", bw_algo, "algorithm tag");
  bench_workers->add_option("--rows", rows, "matrix rows");
  bench_workers->add_option("--cols", cols, "matrix cols");
  bench_workers->add_option("--dims", dims_arg, "shape a,b,c (overrides rows/cols)");
  bench_workers->add_option("--radius", eta, "ball radius");
  bench_workers->add_option("--workers", workers_arg, "comma list of counts");
  bench_workers->add_option("--seed", seed, "rng seed");
  bench_workers->add_option("--reps", reps, "timed repetitions");
  bench_workers->add_option("--out", out_path, "CSV output path");

  // demo
  auto* demo =
      app.add_subcommand("demo", "Projected-gradient sparse training demo");
  std::size_t samples = 200, features = 50, informative = 8, classes = 2,
              steps = 500;
  double sep = 2.0, demo_eta = 1.0, lr = 0.1;
  std::string q_tag = "inf";
  demo->add_option("--samples", samples, "sample count");
  demo->add_option("--features", features, "feature count");
  demo->add_option("--informative", informative, "informative features");
  demo->add_option("--classes", classes, "class count");
  demo->add_option("--sep", sep, "class separability");
  demo->add_option("--eta", demo_eta, "projection radius");
  demo->add_option("--q", q_tag, "inner norm (1, 2 or inf)");
  demo->add_option("--steps", steps, "gradient steps");
  demo->add_option("--lr", lr, "learning rate");
  demo->add_option("--seed", seed, "rng seed");
  demo->add_option("--out", out_path, "CSV history path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*project) {
      Algorithm algorithm = norms.empty()
                                ? Algorithm::parse(algo_tag)
                                : Algorithm{Algorithm::Kind::Multilevel,
                                            parse_norm_spec(norms)};
      ProjectionReport report =
          project_file(in_path, output_path, algorithm, radius, workers);
      std::cout << "achieved_norm=" << report.achieved_norm
                << " distance=" << report.distance
                << " zero_columns=" << report.zero_columns << "\n";
    } else if (*bench_radius) {
      print_records(run_radius_sweep(algos, rows, cols,
                                     parse_radii(radii_arg), seed, reps,
                                     workers),
                    out_path);
    } else if (*bench_size) {
      std::vector<std::vector<std::size_t>> sizes;
      for (const auto& s : size_args) sizes.push_back(parse_dims(s, 'x'));
      if (!dims_arg.empty()) sizes.push_back(parse_dims(dims_arg, ','));
      if (sizes.empty()) throw ConfigError("bench-size needs --sizes or --dims");
      print_records(run_size_sweep(algos, sizes, eta, seed, reps, workers),
                    out_path);
    } else if (*bench_workers) {
      std::vector<std::size_t> shape = dims_arg.empty()
                                           ? std::vector<std::size_t>{rows, cols}
                                           : parse_dims(dims_arg, ',');
      std::vector<unsigned> counts;
      for (std::size_t w : parse_dims(workers_arg, ','))
        counts.push_back(static_cast<unsigned>(w));
      print_records(measure_speedup(Algorithm::parse(bw_algo), shape, eta,
                                    counts, reps, seed),
                    out_path);
    } else if (*demo) {
      SyntheticDataset data = gen_synthetic_classification(
          samples, features, informative, classes, sep, seed);
      TrainTestSplit split = split_dataset(data, 0.25, seed + 1);
      SyntheticDataset train{split.train_x, split.train_y, data.informative,
                             classes};
      TrainResult result =
          train_projected(train, demo_eta, parse_norm_tag(q_tag), steps, lr,
                          seed + 2);
      LinearModel& model = result.model;
      double test_acc = evaluate(model, split.test_x, split.test_y);
      const TrainStep& last = result.history.back();
      std::cout << "final_loss=" << last.loss
                << " train_accuracy=" << last.accuracy
                << " test_accuracy=" << test_acc
                << " zero_feature_fraction=" << last.zero_feature_fraction
                << "\n";
      if (!out_path.empty()) {
        std::ofstream hist(out_path);
        if (!hist) throw IoError("cannot open '" + out_path + "'");
        hist << "step,loss,accuracy,zero_feature_fraction\n";
        hist.precision(17);
        for (std::size_t i = 0; i < result.history.size(); ++i)
          hist << i << ',' << result.history[i].loss << ','
               << result.history[i].accuracy << ','
               << result.history[i].zero_feature_fraction << '\n';
      }
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
