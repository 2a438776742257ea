#include <cctype>
#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "gbnl/error.hpp"
#include "gbnl/mutscan.hpp"
#include "gbnl/parallel.hpp"
#include "io.hpp"

namespace gbnl::cli {

namespace {

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

struct CurvesOptions {
  std::string sequence;
  std::string dataset;
  std::string id = "sequence";
  std::string grid = "0..9";
  std::string out = "-";
  std::optional<std::size_t> jobs;
};

void append_rows(std::string& text, const std::string& id, const std::vector<CurveSeries>& series) {
  for (const auto& s : series) {
    std::string prefix = id + "," + std::string(to_string(s.token)) + "," + std::string(to_string(s.kind)) + ",";
    prefix += s.key ? std::to_string(s.key->first) + "," + std::to_string(s.key->second) + "," : ",,";
    for (const auto& sample : s.samples) {
      text += prefix + std::to_string(sample.epsilon) + "," + to_string(sample.value) + "\n";
    }
  }
}

void run_curves(const CurvesOptions& opt) {
  RunManifest manifest;
  manifest.command = "curves";
  manifest.arguments = process_arguments();
  const EpsilonGrid grid = parse_grid(opt.grid);
  manifest.grid = grid;

  std::vector<std::pair<std::string, std::string>> inputs;
  if (!opt.sequence.empty()) {
    const auto seq = upper(opt.sequence);
    if (auto problem = check_nucleotide_sequence(seq, 1)) raise(ErrorCode::kArgument, "sequence: " + *problem);
    inputs.emplace_back(opt.id, seq);
  } else {
    const auto text = read_input(opt.dataset);
    manifest.add_input(opt.dataset, text);
    std::istringstream in(text);
    auto dataset = parse_dataset(in);
    for (const auto& r : dataset.rejections) {
      std::cerr << "rejected line " << r.line << " (" << r.id << "): " << r.reason << '\n';
    }
    for (auto& r : dataset.records) inputs.emplace_back(r.id, r.na_sequence);
  }

  std::vector<std::vector<CurveSeries>> series(inputs.size());
  parallel_for(inputs.size(), resolve_jobs(opt.jobs),
               [&](std::size_t k) { series[k] = sequence_series(inputs[k].second, grid); });
  std::string text = "id,token_class,series_kind,i,j,epsilon,value\n";
  for (std::size_t k = 0; k < inputs.size(); ++k) append_rows(text, inputs[k].first, series[k]);
  write_output(opt.out, text);
  manifest.add_output(opt.out, text);
  write_manifest(opt.out, manifest);
}

struct CompareOptions {
  std::string ref;
  std::string mut;
  std::string grid = "auto";
  std::string out = "-";
};

void run_compare(const CompareOptions& opt) {
  RunManifest manifest;
  manifest.command = "mutate-compare";
  manifest.arguments = process_arguments();
  const auto ref = upper(opt.ref);
  const auto mut = upper(opt.mut);
  const EpsilonGrid grid = opt.grid == "auto" ? default_mutation_grid(ref, mut) : parse_grid(opt.grid);
  manifest.grid = grid;
  std::ostringstream out;
  write_series(out, compare(ref, mut, grid));
  write_output(opt.out, out.str());
  manifest.add_output(opt.out, out.str());
  write_manifest(opt.out, manifest);
}

}  // namespace

void add_curves(CLI::App& app) {
  auto opt = std::make_shared<CurvesOptions>();
  auto* sub = app.add_subcommand("curves", "Persistent and graded Betti curves per nucleotide class");
  auto* seq = sub->add_option("--sequence", opt->sequence, "A single nucleotide sequence");
  auto* data = sub->add_option("--dataset", opt->dataset, "Dataset file ('-' for stdin)");
  seq->excludes(data);
  sub->add_option("--id", opt->id, "Row id for --sequence")->capture_default_str();
  sub->add_option("--grid", opt->grid, "Filtration grid")->capture_default_str();
  sub->add_option("--out", opt->out, "Output file ('-' for stdout)")->capture_default_str();
  sub->add_option("--jobs", opt->jobs, "Worker threads");
  sub->callback([opt, seq, data] {
    if (seq->count() == 0 && data->count() == 0) throw CLI::RequiredError("--sequence or --dataset");
    run_curves(*opt);
  });
}

void add_mutate_compare(CLI::App& app) {
  auto opt = std::make_shared<CompareOptions>();
  auto* sub = app.add_subcommand("mutate-compare", "Betti curves of a reference and a mutated sequence");
  sub->add_option("ref", opt->ref, "Reference sequence")->required();
  sub->add_option("mut", opt->mut, "Mutated sequence")->required();
  sub->add_option("--grid", opt->grid, "Filtration grid, or 'auto'")->capture_default_str();
  sub->add_option("--out", opt->out, "Output file ('-' for stdout)")->capture_default_str();
  sub->callback([opt] { run_compare(*opt); });
}

}  // namespace gbnl::cli
