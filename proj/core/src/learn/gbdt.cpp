#include "gbnl/learn/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbnl/error.hpp"
#include "gbnl/learn/metrics.hpp"
#include "gbnl/learn/rng.hpp"
#include "json.hpp"

namespace gbnl::learn {

using nlohmann::json;

void GbdtConfig::validate() const {
  if (n_estimators == 0) raise(ErrorCode::kArgument, "gbdt: n_estimators must be positive");
  if (max_depth == 0) raise(ErrorCode::kArgument, "gbdt: max_depth must be positive");
  if (min_samples_split < 2) raise(ErrorCode::kArgument, "gbdt: min_samples_split must be >= 2");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    raise(ErrorCode::kArgument, "gbdt: learning_rate must be positive");
  }
  if (max_features && *max_features == 0) raise(ErrorCode::kArgument, "gbdt: max_features must be positive");
  if (!(subsample > 0.0 && subsample <= 1.0)) raise(ErrorCode::kArgument, "gbdt: subsample must lie in (0, 1]");
}

std::size_t GbdtConfig::features_per_split(std::size_t feature_count) const {
  if (max_features) return std::min(*max_features, feature_count);
  auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(feature_count))));
  while (m * m < feature_count) ++m;
  while (m > 1 && (m - 1) * (m - 1) >= feature_count) --m;
  return std::max<std::size_t>(1, std::min(m, feature_count));
}

double RegressionTree::predict(std::span<const double> x) const {
  std::size_t k = 0;
  while (nodes[k].feature >= 0) {
    const auto& n = nodes[k];
    k = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[k].value;
}

std::size_t RegressionTree::depth() const {
  std::vector<std::size_t> level(nodes.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    deepest = std::max(deepest, level[k]);
    if (nodes[k].feature >= 0) {
      level[static_cast<std::size_t>(nodes[k].left)] = level[k] + 1;
      level[static_cast<std::size_t>(nodes[k].right)] = level[k] + 1;
    }
  }
  return deepest;
}

GbdtModel::GbdtModel(GbdtConfig config, std::size_t feature_count, double initial,
                     std::vector<RegressionTree> trees)
    : config_(std::move(config)), feature_count_(feature_count), initial_(initial), trees_(std::move(trees)) {}

double GbdtModel::predict(std::span<const double> x) const {
  if (x.size() != feature_count_) raise(ErrorCode::kArgument, "gbdt predict: feature count mismatch");
  double f = initial_;
  for (const auto& t : trees_) f += config_.learning_rate * t.predict(x);
  return f;
}

std::vector<double> GbdtModel::predict(const Matrix& x) const {
  std::vector<double> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = predict(x.row(r));
  return out;
}

std::vector<double> GbdtModel::staged_mse(const Matrix& x, std::span<const double> y) const {
  std::vector<double> f(x.rows(), initial_);
  std::vector<double> out;
  auto mse = [&] {
    double acc = 0.0;
    for (std::size_t r = 0; r < f.size(); ++r) acc += (y[r] - f[r]) * (y[r] - f[r]);
    return acc / static_cast<double>(f.size());
  };
  out.push_back(mse());
  for (const auto& t : trees_) {
    for (std::size_t r = 0; r < x.rows(); ++r) f[r] += config_.learning_rate * t.predict(x.row(r));
    out.push_back(mse());
  }
  return out;
}

namespace {

struct Split {
  std::int32_t feature = -1;
  double threshold = 0.0;
  double score = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, const std::vector<double>& residual, const GbdtConfig& config, Rng& rng)
      : x_(x), residual_(residual), config_(config), rng_(rng),
        per_split_(config.features_per_split(x.cols())) {}

  RegressionTree build(std::vector<std::size_t> rows) {
    tree_.nodes.clear();
    grow(std::move(rows), 0);
    return std::move(tree_);
  }

 private:
  std::int32_t grow(std::vector<std::size_t> rows, std::size_t depth) {
    const auto index = static_cast<std::int32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    double sum = 0.0;
    for (auto r : rows) sum += residual_[r];
    tree_.nodes.back().value = sum / static_cast<double>(rows.size());

    if (depth >= config_.max_depth || rows.size() < config_.min_samples_split || pure(rows)) return index;
    const Split best = find_split(rows, sum);
    if (best.feature < 0) return index;

    std::vector<std::size_t> left, right;
    for (auto r : rows) {
      (x_(r, static_cast<std::size_t>(best.feature)) <= best.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const auto l = grow(std::move(left), depth + 1);
    const auto rt = grow(std::move(right), depth + 1);
    auto& node = tree_.nodes[static_cast<std::size_t>(index)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = rt;
    return index;
  }

  bool pure(const std::vector<std::size_t>& rows) const {
    const double first = residual_[rows.front()];
    return std::all_of(rows.begin(), rows.end(), [&](std::size_t r) { return residual_[r] == first; });
  }

  Split find_split(const std::vector<std::size_t>& rows, double total) {
    const auto candidates = rng_.sample(x_.cols(), per_split_);
    const auto n = static_cast<double>(rows.size());
    Split best;
    bool found = false;
    std::vector<std::size_t> order(rows.size());
    for (auto f : candidates) {
      order = rows;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return x_(a, f) < x_(b, f); });
      double left_sum = 0.0;
      for (std::size_t k = 1; k < order.size(); ++k) {
        left_sum += residual_[order[k - 1]];
        const double lo = x_(order[k - 1], f);
        const double hi = x_(order[k], f);
        if (!(lo < hi)) continue;
        const auto nl = static_cast<double>(k);
        const double right_sum = total - left_sum;
        const double score = left_sum * left_sum / nl + right_sum * right_sum / (n - nl);
        if (!found || score > best.score) {
          double threshold = lo + (hi - lo) / 2.0;
          if (threshold >= hi) threshold = lo;
          best = {static_cast<std::int32_t>(f), threshold, score};
          found = true;
        }
      }
    }
    return best;
  }

  const Matrix& x_;
  const std::vector<double>& residual_;
  const GbdtConfig& config_;
  Rng& rng_;
  std::size_t per_split_;
  RegressionTree tree_;
};

void check_finite(const Matrix& x, std::span<const double> y) {
  for (double v : x.data()) {
    if (!std::isfinite(v)) raise(ErrorCode::kNumeric, "gbdt: non-finite feature value");
  }
  for (double v : y) {
    if (!std::isfinite(v)) raise(ErrorCode::kNumeric, "gbdt: non-finite target value");
  }
}

}  // namespace

GbdtModel gbdt_train(const Matrix& x, std::span<const double> y, const GbdtConfig& config) {
  config.validate();
  if (x.rows() != y.size()) raise(ErrorCode::kArgument, "gbdt: row count differs from target length");
  if (x.rows() < 2) raise(ErrorCode::kArgument, "gbdt: need at least two rows");
  if (x.cols() == 0) raise(ErrorCode::kArgument, "gbdt: need at least one feature");
  check_finite(x, y);

  const double initial = shifted_mean(y);
  std::vector<double> f(y.size(), initial);
  std::vector<double> residual(y.size());
  const auto in_bag = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(config.subsample * static_cast<double>(x.rows()))));

  Rng rng(config.seed);
  TreeBuilder builder(x, residual, config, rng);
  std::vector<RegressionTree> trees;
  trees.reserve(config.n_estimators);
  for (std::size_t stage = 0; stage < config.n_estimators; ++stage) {
    for (std::size_t r = 0; r < y.size(); ++r) residual[r] = y[r] - f[r];
    auto rows = in_bag == x.rows() ? [&] {
      std::vector<std::size_t> all(x.rows());
      std::iota(all.begin(), all.end(), std::size_t{0});
      return all;
    }() : rng.sample(x.rows(), in_bag);
    trees.push_back(builder.build(std::move(rows)));
    for (std::size_t r = 0; r < y.size(); ++r) f[r] += config.learning_rate * trees.back().predict(x.row(r));
  }
  return GbdtModel(config, x.cols(), initial, std::move(trees));
}

std::vector<double> gbdt_predict(const GbdtModel& model, const Matrix& x) { return model.predict(x); }

std::vector<double> Pipeline::predict(const Matrix& raw) const { return model.predict(scaler.apply(raw)); }

Pipeline train_pipeline(const Matrix& raw, std::span<const double> y, const GbdtConfig& config,
                        std::vector<std::string> columns) {
  Pipeline p;
  p.columns = std::move(columns);
  p.scaler = standardize_fit(raw);
  p.model = gbdt_train(p.scaler.apply(raw), y, config);
  return p;
}

namespace {

constexpr std::string_view kModelFormat = "gbnl-gbdt-model";
constexpr int kModelVersion = 1;

json config_json(const GbdtConfig& c) {
  json j;
  j["n_estimators"] = c.n_estimators;
  j["max_depth"] = c.max_depth;
  j["min_samples_split"] = c.min_samples_split;
  j["learning_rate"] = c.learning_rate;
  j["max_features"] = c.max_features ? json(*c.max_features) : json("sqrt");
  j["subsample"] = c.subsample;
  j["seed"] = c.seed;
  return j;
}

GbdtConfig config_from(const json& j) {
  GbdtConfig c;
  c.n_estimators = j.value("n_estimators", c.n_estimators);
  c.max_depth = j.value("max_depth", c.max_depth);
  c.min_samples_split = j.value("min_samples_split", c.min_samples_split);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  if (j.contains("max_features")) {
    const auto& mf = j.at("max_features");
    if (mf.is_string()) {
      if (mf.get<std::string>() != "sqrt") raise(ErrorCode::kConfig, "config: max_features must be 'sqrt' or a count");
      c.max_features.reset();
    } else {
      c.max_features = mf.get<std::size_t>();
    }
  }
  c.subsample = j.value("subsample", c.subsample);
  c.seed = j.value("seed", c.seed);
  c.validate();
  return c;
}

}  // namespace

std::string serialize(const GbdtConfig& config) { return config_json(config).dump(2) + "\n"; }

GbdtConfig parse_config(std::string_view text) {
  try {
    return config_from(json::parse(text));
  } catch (const json::exception& e) {
    raise(ErrorCode::kConfig, std::string("config: ") + e.what());
  } catch (const Error& e) {
    raise(ErrorCode::kConfig, e.what());
  }
}

std::string serialize(const Pipeline& p) {
  json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["config"] = config_json(p.model.config());
  j["columns"] = p.columns;
  j["feature_count"] = p.model.feature_count();
  j["standardizer"] = {{"means", p.scaler.means}, {"stds", p.scaler.stds}};
  j["initial"] = p.model.initial();
  json trees = json::array();
  for (const auto& t : p.model.trees()) {
    json feature = json::array(), threshold = json::array(), left = json::array(), right = json::array(),
         value = json::array();
    for (const auto& n : t.nodes) {
      feature.push_back(n.feature);
      threshold.push_back(n.threshold);
      left.push_back(n.left);
      right.push_back(n.right);
      value.push_back(n.value);
    }
    trees.push_back({{"feature", feature}, {"threshold", threshold}, {"left", left}, {"right", right},
                     {"value", value}});
  }
  j["trees"] = std::move(trees);
  return j.dump() + "\n";
}

Pipeline parse_pipeline(std::string_view text) {
  try {
    const auto j = json::parse(text);
    if (j.at("format").get<std::string>() != kModelFormat || j.at("version").get<int>() != kModelVersion) {
      raise(ErrorCode::kConfig, "model: unsupported format or version");
    }
    Pipeline p;
    p.columns = j.at("columns").get<std::vector<std::string>>();
    p.scaler.means = j.at("standardizer").at("means").get<std::vector<double>>();
    p.scaler.stds = j.at("standardizer").at("stds").get<std::vector<double>>();
    const auto features = j.at("feature_count").get<std::size_t>();
    if (p.scaler.means.size() != features || p.scaler.stds.size() != features) {
      raise(ErrorCode::kConfig, "model: standardizer width mismatch");
    }
    std::vector<RegressionTree> trees;
    for (const auto& tj : j.at("trees")) {
      const auto feature = tj.at("feature").get<std::vector<std::int32_t>>();
      const auto threshold = tj.at("threshold").get<std::vector<double>>();
      const auto left = tj.at("left").get<std::vector<std::int32_t>>();
      const auto right = tj.at("right").get<std::vector<std::int32_t>>();
      const auto value = tj.at("value").get<std::vector<double>>();
      const std::size_t count = feature.size();
      if (count == 0 || threshold.size() != count || left.size() != count || right.size() != count ||
          value.size() != count) {
        raise(ErrorCode::kConfig, "model: malformed tree");
      }
      RegressionTree t;
      for (std::size_t k = 0; k < count; ++k) {
        const auto in_range = [&](std::int32_t child) {
          return child > static_cast<std::int32_t>(k) && child < static_cast<std::int32_t>(count);
        };
        if (feature[k] >= static_cast<std::int32_t>(features) ||
            (feature[k] >= 0 && (!in_range(left[k]) || !in_range(right[k])))) {
          raise(ErrorCode::kConfig, "model: malformed tree node");
        }
        t.nodes.push_back({feature[k], threshold[k], left[k], right[k], value[k]});
      }
      trees.push_back(std::move(t));
    }
    p.model = GbdtModel(config_from(j.at("config")), features, j.at("initial").get<double>(), std::move(trees));
    return p;
  } catch (const json::exception& e) {
    raise(ErrorCode::kConfig, std::string("model: ") + e.what());
  }
}

}  // namespace gbnl::learn
