#include <cmath>
#include <iostream>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "commands.hpp"
#include "gbnl/error.hpp"
#include "gbnl/featurize.hpp"
#include "gbnl/learn/cross_validate.hpp"
#include "gbnl/learn/gbdt.hpp"
#include "gbnl/learn/metrics.hpp"
#include "gbnl/text.hpp"
#include "io.hpp"

namespace gbnl::cli {

namespace {

struct ModelFlags {
  std::string config;
  std::string profile = "full";
  std::optional<std::size_t> n_estimators;
  std::optional<std::size_t> max_depth;
  std::optional<double> learning_rate;
  std::optional<double> subsample;
  std::optional<std::size_t> max_features;
  std::optional<std::uint64_t> seed;
};

void add_model_flags(CLI::App* sub, ModelFlags& f) {
  sub->add_option("--config", f.config, "Boosting configuration file");
  sub->add_option("--profile", f.profile, "full (10000 stages) or reduced (1000 stages)")
      ->check(CLI::IsMember({"full", "reduced"}))
      ->capture_default_str();
  sub->add_option("--n-estimators", f.n_estimators, "Boosting stages");
  sub->add_option("--max-depth", f.max_depth, "Tree depth");
  sub->add_option("--learning-rate", f.learning_rate, "Shrinkage");
  sub->add_option("--subsample", f.subsample, "Row fraction per stage");
  sub->add_option("--max-features", f.max_features, "Candidate features per split (default sqrt)");
  sub->add_option("--seed", f.seed, "Model seed");
}

learn::GbdtConfig resolve_config(const ModelFlags& f, RunManifest& manifest) {
  learn::GbdtConfig c;
  if (!f.config.empty()) {
    const auto text = read_input(f.config);
    manifest.add_input(f.config, text);
    c = learn::parse_config(text);
  } else if (f.profile == "reduced") {
    c.n_estimators = 1000;
  }
  if (f.n_estimators) c.n_estimators = *f.n_estimators;
  if (f.max_depth) c.max_depth = *f.max_depth;
  if (f.learning_rate) c.learning_rate = *f.learning_rate;
  if (f.subsample) c.subsample = *f.subsample;
  if (f.max_features) c.max_features = *f.max_features;
  if (f.seed) c.seed = *f.seed;
  c.validate();
  return c;
}

DesignMatrix load_matrix(const std::string& path, RunManifest& manifest) {
  const auto text = read_input(path);
  manifest.add_input(path, text);
  std::istringstream in(text);
  return read_matrix(in);
}

/// Labels in matrix row order; ids must match exactly in both directions.
std::vector<double> load_labels(const std::string& path, const DesignMatrix& matrix, RunManifest& manifest) {
  const auto text = read_input(path);
  manifest.add_input(path, text);
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::unordered_map<std::string, double> labels;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto view = text::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = text::split(view, ',');
    if (!header) {
      if (fields.size() != 2 || fields[0] != "id") raise(ErrorCode::kConfig, "labels: header must be 'id,<label>'");
      header = true;
      continue;
    }
    if (fields.size() != 2) raise(ErrorCode::kConfig, "labels: expected two fields in '" + line + "'");
    const double v = text::parse_double(fields[1], "labels");
    if (!std::isfinite(v)) raise(ErrorCode::kNumeric, "labels: non-finite value for '" + std::string(fields[0]) + "'");
    if (!labels.emplace(std::string(fields[0]), v).second) {
      raise(ErrorCode::kConfig, "labels: duplicate id '" + std::string(fields[0]) + "'");
    }
  }
  if (!header) raise(ErrorCode::kConfig, "labels: missing header");

  std::vector<double> y;
  std::string missing;
  for (const auto& id : matrix.ids) {
    auto it = labels.find(id);
    if (it == labels.end()) {
      missing += " " + id;
    } else {
      y.push_back(it->second);
    }
  }
  if (!missing.empty()) raise(ErrorCode::kJoinMismatch, "labels missing for:" + missing);
  if (labels.size() != matrix.ids.size()) {
    raise(ErrorCode::kJoinMismatch, "labels file has ids that are not in the matrix");
  }
  return y;
}

struct TrainOptions {
  std::string matrix;
  std::string labels;
  std::string model_out;
  ModelFlags model;
};

void run_train(const TrainOptions& opt) {
  RunManifest manifest;
  manifest.command = "train";
  manifest.arguments = process_arguments();
  const auto matrix = load_matrix(opt.matrix, manifest);
  const auto y = load_labels(opt.labels, matrix, manifest);
  const auto config = resolve_config(opt.model, manifest);
  manifest.seeds = {config.seed};

  const auto pipeline = learn::train_pipeline(matrix.values, y, config, matrix.columns);
  const auto text = learn::serialize(pipeline);
  write_output(opt.model_out, text);
  manifest.add_output(opt.model_out, text);
  write_manifest(opt.model_out, manifest);

  const auto fitted = pipeline.predict(matrix.values);
  const auto r = learn::pearson(fitted, y);
  std::cerr << "trained on " << matrix.values.rows() << " x " << matrix.values.cols() << ", in-sample R_p "
            << (r ? text::format_sig6(*r) : "undefined") << ", RMSE " << text::format_sig6(learn::rmse(fitted, y))
            << '\n';
}

struct EvaluateOptions {
  std::string matrix;
  std::string labels;
  std::size_t folds = 10;
  std::string seeds = "0..19";
  std::string out = "-";
  std::string predictions_out;
  std::optional<std::size_t> jobs;
  ModelFlags model;
};

std::string sig6_or_nan(double v) { return std::isnan(v) ? "nan" : text::format_sig6(v); }

void run_evaluate(const EvaluateOptions& opt) {
  RunManifest manifest;
  manifest.command = "evaluate";
  manifest.arguments = process_arguments();
  const auto matrix = load_matrix(opt.matrix, manifest);
  const auto y = load_labels(opt.labels, matrix, manifest);
  const auto config = resolve_config(opt.model, manifest);

  learn::CvOptions cv;
  cv.n_folds = opt.folds;
  cv.seeds.clear();
  for (auto s : parse_grid(opt.seeds)) cv.seeds.push_back(static_cast<std::uint64_t>(s));
  cv.jobs = resolve_jobs(opt.jobs);
  manifest.seeds = cv.seeds;

  const auto report = learn::cross_validate(matrix.values, y, cv, learn::gbdt_trainer(config));
  std::string text = "seed,pearson_r,rmse\n";
  for (const auto& s : report.per_seed) {
    text += std::to_string(s.seed) + "," + sig6_or_nan(s.pearson_r) + "," + sig6_or_nan(s.rmse) + "\n";
  }
  text += "mean," + sig6_or_nan(report.pearson_r) + "," + sig6_or_nan(report.rmse) + "\n";
  write_output(opt.out, text);
  manifest.add_output(opt.out, text);

  if (!opt.predictions_out.empty()) {
    std::string preds = "seed,id,fold,prediction\n";
    for (const auto& s : report.per_seed) {
      for (std::size_t r = 0; r < matrix.ids.size(); ++r) {
        preds += std::to_string(s.seed) + "," + matrix.ids[r] + "," + std::to_string(s.fold_of_row[r]) + "," +
                 text::format_exact(s.predictions[r]) + "\n";
      }
    }
    write_output(opt.predictions_out, preds);
    manifest.add_output(opt.predictions_out, preds);
  }
  write_manifest(opt.out, manifest);
}

struct PredictOptions {
  std::string matrix;
  std::string model;
  std::string out = "-";
};

void run_predict(const PredictOptions& opt) {
  RunManifest manifest;
  manifest.command = "predict";
  manifest.arguments = process_arguments();
  const auto matrix = load_matrix(opt.matrix, manifest);
  const auto model_text = read_input(opt.model);
  manifest.add_input(opt.model, model_text);
  const auto pipeline = learn::parse_pipeline(model_text);
  if (!pipeline.columns.empty() && pipeline.columns != matrix.columns) {
    raise(ErrorCode::kJoinMismatch, "matrix columns differ from the columns the model was trained on");
  }
  const auto predictions = pipeline.predict(matrix.values);
  std::string text = "id,prediction\n";
  for (std::size_t r = 0; r < predictions.size(); ++r) {
    text += matrix.ids[r] + "," + text::format_exact(predictions[r]) + "\n";
  }
  write_output(opt.out, text);
  manifest.add_output(opt.out, text);
  write_manifest(opt.out, manifest);
}

}  // namespace

void add_train(CLI::App& app) {
  auto opt = std::make_shared<TrainOptions>();
  auto* sub = app.add_subcommand("train", "Fit the standardizer and boosted trees on a full matrix");
  sub->add_option("matrix", opt->matrix, "Design matrix")->required();
  sub->add_option("--labels", opt->labels, "Labels file id,delta_g")->required();
  sub->add_option("--model-out", opt->model_out, "Model file")->required();
  add_model_flags(sub, opt->model);
  sub->callback([opt] { run_train(*opt); });
}

void add_evaluate(CLI::App& app) {
  auto opt = std::make_shared<EvaluateOptions>();
  auto* sub = app.add_subcommand("evaluate", "K-fold cross-validation averaged over seeds");
  sub->add_option("matrix", opt->matrix, "Design matrix")->required();
  sub->add_option("--labels", opt->labels, "Labels file id,delta_g")->required();
  sub->add_option("--folds", opt->folds, "Folds")->capture_default_str();
  sub->add_option("--seeds", opt->seeds, "Seed list, 'lo..hi' or comma separated")->capture_default_str();
  sub->add_option("--out", opt->out, "Report ('-' for stdout)")->capture_default_str();
  sub->add_option("--predictions-out", opt->predictions_out, "Out-of-fold predictions per seed");
  sub->add_option("--jobs", opt->jobs, "Worker threads");
  add_model_flags(sub, opt->model);
  sub->callback([opt] { run_evaluate(*opt); });
}

void add_predict(CLI::App& app) {
  auto opt = std::make_shared<PredictOptions>();
  auto* sub = app.add_subcommand("predict", "Apply a saved model to a matrix");
  sub->add_option("matrix", opt->matrix, "Design matrix")->required();
  sub->add_option("--model", opt->model, "Model file")->required();
  sub->add_option("--out", opt->out, "Predictions ('-' for stdout)")->capture_default_str();
  sub->callback([opt] { run_predict(*opt); });
}

}  // namespace gbnl::cli
