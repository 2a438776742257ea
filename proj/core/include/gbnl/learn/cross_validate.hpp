#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gbnl/learn/gbdt.hpp"
#include "gbnl/matrix.hpp"

namespace gbnl::learn {

/// Seeds 0..count-1.
std::vector<std::uint64_t> default_seeds(std::size_t count = 20);

/// Seeded shuffle of 0..n-1 cut into `folds` contiguous chunks whose sizes
/// differ by at most one (the larger chunks first).
std::vector<std::vector<std::size_t>> assign_folds(std::size_t n, std::size_t folds, std::uint64_t seed);

/// Fits on the training rows of one fold and predicts arbitrary rows.
using Predictor = std::function<std::vector<double>(const Matrix& rows)>;
using FoldTrainer =
    std::function<Predictor(const Matrix& train_x, std::span<const double> train_y, std::uint64_t seed)>;

/// Standardizer fitted on the training rows only, then boosting.
FoldTrainer gbdt_trainer(const GbdtConfig& config);

struct CvOptions {
  std::size_t n_folds = 10;
  std::vector<std::uint64_t> seeds = default_seeds();
  std::size_t jobs = 1;
};

struct SeedReport {
  std::uint64_t seed = 0;
  double pearson_r = 0.0;  ///< NaN if undefined
  double rmse = 0.0;
  std::vector<double> fold_pearson;  ///< NaN for folds where it is undefined
  std::vector<double> fold_rmse;
  std::vector<std::size_t> fold_of_row;
  std::vector<double> predictions;  ///< out-of-fold, indexed by row
};

struct EvalReport {
  double pearson_r = 0.0;  ///< mean over seeds
  double rmse = 0.0;       ///< mean over seeds
  std::vector<SeedReport> per_seed;
};

/// Seed used for the model of one fold.
std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold);

/// K-fold cross-validation repeated over seeds. Metrics are computed per seed
/// on the concatenated out-of-fold predictions and averaged. Throws
/// kArgument when a fold would be empty.
EvalReport cross_validate(const Matrix& x, std::span<const double> y, const CvOptions& options,
                          const FoldTrainer& trainer);

}  // namespace gbnl::learn
