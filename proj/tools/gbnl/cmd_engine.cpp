#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "gbnl/error.hpp"
#include "gbnl/fastbetti.hpp"
#include "gbnl/learn/rng.hpp"
#include "gbnl/oracle.hpp"
#include "gbnl/parallel.hpp"
#include "io.hpp"

namespace gbnl::cli {

namespace {

struct ValidateOptions {
  std::size_t max_n = 12;
  std::size_t trials = 200;
  std::uint64_t seed = 7;
  std::optional<Position> window;
  std::size_t exhaustive_max_n = 5;
  bool corrupt = false;
  std::optional<std::size_t> jobs;
};

struct Mismatch {
  PositionCloud cloud;
  Position threshold = 0;
  BettiTable fast;
  BettiTable oracle;
};

struct SweepResult {
  std::size_t clouds = 0;
  std::size_t comparisons = 0;
  std::vector<Mismatch> mismatches;
};

std::string format_cloud(const PositionCloud& cloud) {
  std::string s = "[";
  for (std::size_t k = 0; k < cloud.size(); ++k) s += (k ? "," : "") + std::to_string(cloud[k]);
  return s + "]";
}

SweepResult sweep(const std::vector<PositionCloud>& clouds, const ValidateOptions& opt) {
  OracleOptions oracle_opt;
  oracle_opt.max_vertices = std::max(oracle_opt.max_vertices, opt.max_n);
  std::vector<std::size_t> counts(clouds.size(), 0);
  std::vector<std::optional<Mismatch>> found(clouds.size());
  parallel_for(clouds.size(), resolve_jobs(opt.jobs), [&](std::size_t c) {
    const auto& cloud = clouds[c];
    for (Position k = 0; k <= cloud.span() + 1; ++k) {
      auto fast = graded_betti_fast(cloud, k);
      if (opt.corrupt) fast.add(1, 2, 1);
      auto oracle = graded_betti_bruteforce(GapGraph(cloud, k), oracle_opt);
      ++counts[c];
      if (!(fast == oracle)) {
        found[c] = Mismatch{cloud, k, std::move(fast), std::move(oracle)};
        return;
      }
    }
  });
  SweepResult r;
  r.clouds = clouds.size();
  for (std::size_t c = 0; c < clouds.size(); ++c) {
    r.comparisons += counts[c];
    if (found[c]) r.mismatches.push_back(std::move(*found[c]));
  }
  return r;
}

/// Every n-subset of 1..window, appended to `out`.
void all_subsets(std::size_t n, Position window, std::vector<PositionCloud>& out) {
  std::vector<Position> pick(n);
  for (std::size_t k = 0; k < n; ++k) pick[k] = static_cast<Position>(k + 1);
  while (true) {
    out.emplace_back(pick);
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == window - static_cast<Position>(n - k)) --k;
    if (k == 0) return;
    ++pick[k - 1];
    for (std::size_t m = k; m < n; ++m) pick[m] = pick[m - 1] + 1;
  }
}

void report(std::ostream& out, const std::string& name, const SweepResult& r) {
  out << name << ": clouds " << r.clouds << ", comparisons " << r.comparisons << ", mismatches "
      << r.mismatches.size() << '\n';
  if (!r.mismatches.empty()) {
    const auto& m = r.mismatches.front();
    out << "counterexample: cloud " << format_cloud(m.cloud) << " K " << m.threshold << "\n  fast   "
        << m.fast.to_string() << "\n  oracle " << m.oracle.to_string() << '\n';
  }
}

void run_validate(const ValidateOptions& opt) {
  if (opt.max_n > kOracleHardLimit) {
    raise(ErrorCode::kCapExceeded, "--max-n above the oracle limit of " + std::to_string(kOracleHardLimit));
  }
  const Position window = opt.window.value_or(static_cast<Position>(3 * opt.max_n + 3));
  if (window < static_cast<Position>(opt.max_n)) raise(ErrorCode::kUsage, "--window must be at least --max-n");

  learn::Rng rng(opt.seed);
  std::vector<PositionCloud> random;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.below(opt.max_n + 1));
    std::vector<Position> p;
    for (auto idx : rng.sample(static_cast<std::size_t>(window), n)) p.push_back(static_cast<Position>(idx + 1));
    random.emplace_back(std::move(p));
  }
  std::vector<PositionCloud> exhaustive;
  for (std::size_t n = 0; n <= opt.exhaustive_max_n; ++n) {
    all_subsets(n, static_cast<Position>(2 * n + 2), exhaustive);
  }

  const auto r1 = sweep(random, opt);
  const auto r2 = sweep(exhaustive, opt);
  report(std::cout, "random", r1);
  report(std::cout, "exhaustive", r2);
  const bool ok = r1.mismatches.empty() && r2.mismatches.empty();
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  if (!ok) raise(ErrorCode::kValidation, "fast engine disagrees with the oracle");
}

struct IdealOptions {
  std::string complex;
  std::optional<std::size_t> complete;
  std::string cloud;
  Position threshold = 1;
  bool betti = false;
  std::string out = "-";
};

std::vector<Position> parse_cloud(const std::string& text) {
  std::vector<Position> p;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      raise(ErrorCode::kUsage, "--cloud: bad position '" + item + "'");
    }
  }
  return p;
}

void run_ideal_stats(const IdealOptions& opt) {
  RunManifest manifest;
  manifest.command = "ideal-stats";
  manifest.arguments = process_arguments();

  std::vector<Face> generators;
  std::size_t vertices = 0;
  std::optional<BettiTable> table;
  if (!opt.complex.empty()) {
    const auto text = read_input(opt.complex);
    manifest.add_input(opt.complex, text);
    std::istringstream in(text);
    const auto c = read_complex(in);
    vertices = c.vertices().size();
    generators = minimal_nonfaces(c);
    if (opt.betti) table = graded_betti_bruteforce(c);
  } else {
    PositionCloud cloud;
    Position k = opt.threshold;
    if (opt.complete) {
      std::vector<Position> p(*opt.complete);
      for (std::size_t v = 0; v < p.size(); ++v) p[v] = static_cast<Position>(v + 1);
      cloud = PositionCloud(std::move(p));
      k = static_cast<Position>(*opt.complete);
    } else {
      cloud = PositionCloud(parse_cloud(opt.cloud));
    }
    vertices = cloud.size();
    generators = minimal_nonfaces(GapGraph(cloud, k));
    if (opt.betti) table = graded_betti_fast(cloud, k);
  }

  std::map<std::size_t, std::size_t> by_degree;
  for (const auto& g : generators) ++by_degree[g.size()];
  std::ostringstream out;
  out << "vertices " << vertices << '\n' << "minimal_nonfaces " << generators.size() << '\n';
  for (auto [degree, count] : by_degree) out << "degree " << degree << ' ' << count << '\n';
  if (table) out << "betti " << table->to_string() << '\n';
  write_output(opt.out, out.str());
  manifest.add_output(opt.out, out.str());
  write_manifest(opt.out, manifest);
}

}  // namespace

void add_validate_engine(CLI::App& app) {
  auto opt = std::make_shared<ValidateOptions>();
  auto* sub = app.add_subcommand("validate-engine", "Randomized and exhaustive fast-engine vs oracle sweep");
  sub->add_option("--max-n", opt->max_n, "Largest random cloud")->capture_default_str();
  sub->add_option("--trials", opt->trials, "Random clouds")->capture_default_str();
  sub->add_option("--seed", opt->seed, "Random seed")->capture_default_str();
  sub->add_option("--window", opt->window, "Positions are drawn from 1..window (default 3 max-n + 3)");
  sub->add_option("--exhaustive-max-n", opt->exhaustive_max_n,
                  "Check every n-subset of 1..2n+2 up to this n")
      ->capture_default_str();
  sub->add_flag("--corrupt", opt->corrupt, "Self-test: perturb the fast tables so the sweep must fail");
  sub->add_option("--jobs", opt->jobs, "Worker threads");
  sub->callback([opt] { run_validate(*opt); });
}

void add_ideal_stats(CLI::App& app) {
  auto opt = std::make_shared<IdealOptions>();
  auto* sub = app.add_subcommand("ideal-stats", "Minimal generators of a Stanley-Reisner ideal");
  auto* file = sub->add_option("--complex", opt->complex, "Complex file, one face per line");
  auto* complete = sub->add_option("--complete", opt->complete, "Complete graph on n vertices");
  auto* cloud = sub->add_option("--cloud", opt->cloud, "Comma-separated positions of a gap graph");
  file->excludes(complete)->excludes(cloud);
  complete->excludes(cloud);
  sub->add_option("--threshold", opt->threshold, "Gap threshold K for --cloud")->capture_default_str();
  sub->add_flag("--betti", opt->betti, "Also print the graded Betti table");
  sub->add_option("--out", opt->out, "Output file ('-' for stdout)")->capture_default_str();
  sub->callback([opt, file, complete, cloud] {
    if (file->count() + complete->count() + cloud->count() == 0) {
      throw CLI::RequiredError("--complex, --complete or --cloud");
    }
    run_ideal_stats(*opt);
  });
}

}  // namespace gbnl::cli
