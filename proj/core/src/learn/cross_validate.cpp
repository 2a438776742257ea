#include "gbnl/learn/cross_validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "gbnl/error.hpp"
#include "gbnl/learn/metrics.hpp"
#include "gbnl/learn/rng.hpp"
#include "gbnl/parallel.hpp"

namespace gbnl::learn {

std::vector<std::uint64_t> default_seeds(std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{0});
  return seeds;
}

std::vector<std::vector<std::size_t>> assign_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
  if (folds == 0 || n < folds) {
    raise(ErrorCode::kArgument, "cross-validation: " + std::to_string(n) + " rows cannot fill " +
                                    std::to_string(folds) + " folds");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> out(folds);
  std::size_t start = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t size = n / folds + (f < n % folds ? 1 : 0);
    out[f].assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                  order.begin() + static_cast<std::ptrdiff_t>(start + size));
    start += size;
  }
  return out;
}

std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold) {
  return seed * 1000003u + static_cast<std::uint64_t>(fold);
}

FoldTrainer gbdt_trainer(const GbdtConfig& config) {
  return [config](const Matrix& train_x, std::span<const double> train_y, std::uint64_t seed) -> Predictor {
    GbdtConfig c = config;
    c.seed = seed;
    auto pipeline = std::make_shared<Pipeline>(train_pipeline(train_x, train_y, c));
    return [pipeline](const Matrix& rows) { return pipeline->predict(rows); };
  };
}

namespace {

double metric_or_nan(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return pearson(a, b).value_or(std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

EvalReport cross_validate(const Matrix& x, std::span<const double> y, const CvOptions& options,
                          const FoldTrainer& trainer) {
  if (x.rows() != y.size()) raise(ErrorCode::kArgument, "cross-validation: row count differs from targets");
  if (options.seeds.empty()) raise(ErrorCode::kArgument, "cross-validation: no seeds");

  const std::size_t folds = options.n_folds;
  std::vector<std::vector<std::vector<std::size_t>>> assignments;
  for (auto seed : options.seeds) assignments.push_back(assign_folds(x.rows(), folds, seed));

  // one task per (seed, fold); each writes its own slot
  std::vector<std::vector<double>> fold_predictions(options.seeds.size() * folds);
  parallel_for(fold_predictions.size(), options.jobs, [&](std::size_t task) {
    const std::size_t s = task / folds;
    const std::size_t f = task % folds;
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < folds; ++g) {
      if (g != f) train.insert(train.end(), assignments[s][g].begin(), assignments[s][g].end());
    }
    std::sort(train.begin(), train.end());
    std::vector<double> train_y;
    for (auto r : train) train_y.push_back(y[r]);
    const auto predictor = trainer(x.select_rows(train), train_y, fold_seed(options.seeds[s], f));
    fold_predictions[task] = predictor(x.select_rows(assignments[s][f]));
    if (fold_predictions[task].size() != assignments[s][f].size()) {
      raise(ErrorCode::kInternal, "cross-validation: predictor returned the wrong number of values");
    }
  });

  EvalReport report;
  for (std::size_t s = 0; s < options.seeds.size(); ++s) {
    SeedReport sr;
    sr.seed = options.seeds[s];
    sr.fold_of_row.assign(x.rows(), 0);
    sr.predictions.assign(x.rows(), 0.0);
    for (std::size_t f = 0; f < folds; ++f) {
      const auto& rows = assignments[s][f];
      const auto& pred = fold_predictions[s * folds + f];
      std::vector<double> truth;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        sr.fold_of_row[rows[k]] = f;
        sr.predictions[rows[k]] = pred[k];
        truth.push_back(y[rows[k]]);
      }
      sr.fold_pearson.push_back(metric_or_nan(truth, pred));
      sr.fold_rmse.push_back(rmse(truth, pred));
    }
    sr.pearson_r = metric_or_nan(y, sr.predictions);
    sr.rmse = rmse(y, sr.predictions);
    report.pearson_r += sr.pearson_r;
    report.rmse += sr.rmse;
    report.per_seed.push_back(std::move(sr));
  }
  report.pearson_r /= static_cast<double>(options.seeds.size());
  report.rmse /= static_cast<double>(options.seeds.size());
  return report;
}

}  // namespace gbnl::learn
