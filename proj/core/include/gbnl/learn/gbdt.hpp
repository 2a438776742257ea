#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbnl/learn/standardize.hpp"
#include "gbnl/matrix.hpp"

namespace gbnl::learn {

struct GbdtConfig {
  std::size_t n_estimators = 10000;
  std::size_t max_depth = 7;
  std::size_t min_samples_split = 3;
  double learning_rate = 0.01;
  /// Candidate features per split; unset means ceil(sqrt(feature count)).
  std::optional<std::size_t> max_features;
  /// Row fraction drawn without replacement for each stage.
  double subsample = 0.7;
  std::uint64_t seed = 0;

  /// Throws kArgument if any field is out of range.
  void validate() const;
  std::size_t features_per_split(std::size_t feature_count) const;

  friend bool operator==(const GbdtConfig&, const GbdtConfig&) = default;
};

struct TreeNode {
  std::int32_t feature = -1;  ///< -1 for a leaf
  double threshold = 0.0;     ///< rows with x[feature] <= threshold go left
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;         ///< leaf output (mean residual)

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  ///< nodes[0] is the root

  double predict(std::span<const double> x) const;
  std::size_t depth() const;

  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;
};

/// Least-squares gradient-boosted regression trees.
class GbdtModel {
 public:
  GbdtModel() = default;
  GbdtModel(GbdtConfig config, std::size_t feature_count, double initial, std::vector<RegressionTree> trees);

  const GbdtConfig& config() const { return config_; }
  std::size_t feature_count() const { return feature_count_; }
  double initial() const { return initial_; }
  const std::vector<RegressionTree>& trees() const { return trees_; }

  double predict(std::span<const double> x) const;
  std::vector<double> predict(const Matrix& x) const;
  /// Mean squared error on (x, y) after each stage; element 0 is the
  /// constant model.
  std::vector<double> staged_mse(const Matrix& x, std::span<const double> y) const;

  friend bool operator==(const GbdtModel&, const GbdtModel&) = default;

 private:
  GbdtConfig config_;
  std::size_t feature_count_ = 0;
  double initial_ = 0.0;
  std::vector<RegressionTree> trees_;
};

/// Stagewise boosting from the mean of y. Each stage fits a tree to the
/// residuals of a seeded row subsample; splits maximise squared-error
/// reduction over ceil(sqrt(p)) sampled features with midpoint thresholds,
/// ties going to the lower feature index and then the lower threshold.
/// Throws kArgument on shape errors and kNumeric on non-finite input.
GbdtModel gbdt_train(const Matrix& x, std::span<const double> y, const GbdtConfig& config);
std::vector<double> gbdt_predict(const GbdtModel& model, const Matrix& x);

/// Standardizer plus ensemble, as saved to a model file.
struct Pipeline {
  std::vector<std::string> columns;  ///< expected matrix columns, may be empty
  Standardizer scaler;
  GbdtModel model;

  std::vector<double> predict(const Matrix& raw) const;

  friend bool operator==(const Pipeline&, const Pipeline&) = default;
};

Pipeline train_pipeline(const Matrix& raw, std::span<const double> y, const GbdtConfig& config,
                        std::vector<std::string> columns = {});

/// Versioned JSON text; doubles are written so that they parse back exactly.
std::string serialize(const Pipeline& pipeline);
Pipeline parse_pipeline(std::string_view text);

std::string serialize(const GbdtConfig& config);
GbdtConfig parse_config(std::string_view text);

}  // namespace gbnl::learn
