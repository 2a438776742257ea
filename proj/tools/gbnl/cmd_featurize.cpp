#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "gbnl/error.hpp"
#include "gbnl/featurize.hpp"
#include "gbnl/learn/metrics.hpp"
#include "gbnl/parallel.hpp"
#include "gbnl/text.hpp"
#include "io.hpp"

namespace gbnl::cli {

namespace {

struct FeaturizeOptions {
  std::string dataset;
  std::string grid = "0..9";
  std::string embeddings;
  bool no_embeddings = false;
  std::string schema_in;
  std::string schema_out;
  std::string matrix_out = "-";
  std::string labels_out;
  std::optional<std::size_t> jobs;
};

void run_featurize(const FeaturizeOptions& opt, bool grid_given) {
  RunManifest manifest;
  manifest.command = "featurize";
  manifest.arguments = process_arguments();

  const auto dataset_text = read_input(opt.dataset);
  manifest.add_input(opt.dataset, dataset_text);
  std::istringstream dataset_stream(dataset_text);
  const Dataset dataset = parse_dataset(dataset_stream);
  for (const auto& r : dataset.rejections) {
    std::cerr << "rejected line " << r.line << " (" << r.id << "): " << r.reason << '\n';
  }
  if (dataset.records.empty()) raise(ErrorCode::kConfig, "no usable records in '" + opt.dataset + "'");

  std::optional<FeatureSchema> saved;
  if (!opt.schema_in.empty()) {
    const auto text = read_input(opt.schema_in);
    manifest.add_input(opt.schema_in, text);
    manifest.schema_path = opt.schema_in;
    saved = FeatureSchema::parse(text);
  }
  EpsilonGrid grid = parse_grid(opt.grid);
  if (saved) {
    if (grid_given && grid != saved->grid) raise(ErrorCode::kUsage, "--grid differs from the saved schema's grid");
    grid = saved->grid;
  }
  manifest.grid = grid;

  std::unique_ptr<EmbeddingTable> embeddings;
  if (!opt.embeddings.empty()) {
    const auto text = read_input(opt.embeddings);
    manifest.add_input(opt.embeddings, text);
    std::istringstream in(text);
    embeddings = std::make_unique<EmbeddingTable>(read_embeddings(in));
  }

  const auto& records = dataset.records;
  std::vector<ClassCurves> curves(records.size());
  parallel_for(records.size(), resolve_jobs(opt.jobs),
               [&](std::size_t r) { curves[r] = sequence_curves(records[r].na_sequence, grid); });

  FeatureSchema schema =
      saved ? *saved : build_schema(curves, grid, embeddings ? embeddings->dim() : 0);
  std::vector<FeatureVector> vectors(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) vectors[r] = {records[r].id, vectorize(curves[r], schema)};

  DesignMatrix matrix;
  if (saved) {
    if (schema.embedding_width != (embeddings ? embeddings->dim() : 0)) {
      raise(ErrorCode::kConfig, "embedding width does not match the saved schema");
    }
    matrix = apply_schema(vectors, schema, embeddings.get());
  } else {
    auto assembled = assemble_design_matrix(vectors, std::move(schema), embeddings.get());
    matrix = std::move(assembled.matrix);
    schema = std::move(assembled.schema);
  }

  std::ostringstream matrix_text;
  write_matrix(matrix_text, matrix);
  write_output(opt.matrix_out, matrix_text.str());
  manifest.add_output(opt.matrix_out, matrix_text.str());

  if (!opt.schema_out.empty()) {
    const auto text = schema.serialize();
    write_output(opt.schema_out, text);
    manifest.add_output(opt.schema_out, text);
    manifest.schema_path = opt.schema_out;
  }
  if (!opt.labels_out.empty()) {
    std::string text = "id,delta_g\n";
    for (const auto& r : records) {
      text += r.id + "," + text::format_exact(learn::to_delta_g(r.label_value, r.label_unit)) + "\n";
    }
    write_output(opt.labels_out, text);
    manifest.add_output(opt.labels_out, text);
  }
  write_manifest(opt.matrix_out, manifest);

  std::cerr << "records " << records.size() << ", rejected " << dataset.rejections.size() << ", matrix "
            << matrix.values.rows() << " x " << matrix.values.cols() << ", keys";
  for (TokenClass c : kTokenClasses) {
    std::cerr << ' ' << to_string(c) << ':' << schema.keys[static_cast<std::size_t>(c)].size();
  }
  std::cerr << ", nucleic width " << schema.nucleic_width() << '\n';
}

}  // namespace

void add_featurize(CLI::App& app) {
  auto opt = std::make_shared<FeaturizeOptions>();
  auto* sub = app.add_subcommand("featurize", "Build the design matrix of a dataset");
  sub->add_option("dataset", opt->dataset, "Dataset file (tab or comma separated, '-' for stdin)")->required();
  auto* grid = sub->add_option("--grid", opt->grid, "Filtration grid, 'lo..hi' or a list")->capture_default_str();
  auto* emb = sub->add_option("--embeddings", opt->embeddings, "Protein embedding file");
  sub->add_flag("--no-embeddings", opt->no_embeddings, "Nucleic-only matrix (the default without --embeddings)")
      ->excludes(emb);
  sub->add_option("--schema-in", opt->schema_in, "Apply a saved schema instead of building one");
  sub->add_option("--schema-out", opt->schema_out, "Write the finalized schema");
  sub->add_option("--matrix-out", opt->matrix_out, "Matrix output ('-' for stdout)")->capture_default_str();
  sub->add_option("--labels-out", opt->labels_out, "Write id,delta_g labels in kcal/mol");
  sub->add_option("--jobs", opt->jobs, "Worker threads (default: GBNL_JOBS or all cores)");
  sub->callback([opt, grid] { run_featurize(*opt, grid->count() > 0); });
}

}  // namespace gbnl::cli
