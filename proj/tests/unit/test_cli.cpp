#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gbnl/featurize.hpp"
#include "gbnl/learn/gbdt.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(GBNL_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

/// Scratch directory with a small dataset and matching embeddings.
struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("gbnl_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::mt19937_64 rng(3);
    std::string data = "id\tna_sequence\tprotein_sequence\tlabel\tlabel_unit\n";
    std::string emb = "# synthetic\nid,dim=3\n";
    for (int r = 0; r < 16; ++r) {
      std::string seq;
      for (int k = 0; k < 18 + r % 7; ++k) seq += "ACGT"[rng() % 4];
      const std::string id = "c" + std::to_string(r);
      data += id + "\t" + seq + "\tMKTAYIAKQR\t" + std::to_string(5 + r % 6) + ".5\tpkd\n";
      emb += id + "," + std::to_string(r % 3) + ",0.25," + std::to_string(r) + "\n";
    }
    data += "bad\tACGNNTT\tMKT\t5\tpkd\n";
    spit(dir / "data.tsv", data);
    spit(dir / "emb.csv", emb);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string p(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("usage and io errors") {
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("--version").code == 0);
  CHECK(run("ideal-stats --complex /nonexistent/file").code == 6);
  CHECK(run("ideal-stats").code == 2);
  CHECK(run("mutate-compare ACGT ACGU --grid 0..3").code == 8);
}

TEST_CASE("ideal-stats census") {
  auto k35 = run("ideal-stats --complete 35");
  CHECK(k35.code == 0);
  CHECK(has_line(k35.out, "minimal_nonfaces 6545"));
  CHECK(has_line(k35.out, "degree 3 6545"));
  auto tet = run(std::string("ideal-stats --betti --complex ") + GBNL_TEST_DATA + "/tetrahedron_missing_face.complex");
  CHECK(has_line(tet.out, "degree 3 1"));
  CHECK(has_line(tet.out, "betti {(0,0):1, (1,3):1}"));
  auto bip = run(std::string("ideal-stats --complex ") + GBNL_TEST_DATA + "/square_bipyramid.complex");
  CHECK(has_line(bip.out, "minimal_nonfaces 3"));
  CHECK(has_line(bip.out, "degree 2 3"));
}

TEST_CASE("mutate-compare primer values") {
  auto r = run("mutate-compare GGGGAACTTCTCCTGCTAGAAT AGGGAACTTCTCCTGCTAGAAT --grid 0..20");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "REF,A,ph_b0,,,0,5"));
  CHECK(has_line(r.out, "MUT,A,ph_b0,,,0,6"));
  CHECK(has_line(r.out, "REF,A,graded,3,5,20,6"));
  CHECK(has_line(r.out, "MUT,A,graded,3,5,20,36"));
  auto c = run("mutate-compare ggggaacttctcctgctagaat AACGAATTTTTCTTGGTACAAT --grid 0..21");
  CHECK(has_line(c.out, "MUT,TU,graded,4,6,21,840"));
  CHECK(has_line(c.out, "REF,TU,ph_b1,,,15,10"));
}

TEST_CASE("curves command") {
  auto r = run("curves --sequence AAGA --grid 0..1");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "id,token_class,series_kind,i,j,epsilon,value"));
  CHECK(has_line(r.out, "sequence,A,ph_b0,,,0,3"));
  CHECK(has_line(r.out, "sequence,A,ph_b0,,,1,2"));
  CHECK(has_line(r.out, "sequence,A,graded,1,2,1,2"));
}

TEST_CASE("validate-engine passes and its self-test fails") {
  auto ok = run("validate-engine --max-n 8 --trials 25 --seed 7 --exhaustive-max-n 3 --jobs 1");
  CHECK(ok.code == 0);
  CHECK(has_line(ok.out, "PASS"));
  auto bad = run("validate-engine --max-n 6 --trials 5 --corrupt");
  CHECK(bad.code == 5);
  CHECK(bad.out.find("counterexample") != std::string::npos);
  CHECK(run("validate-engine --max-n 40").code == 7);
}

TEST_CASE("featurize, train, predict, evaluate") {
  Workspace ws;
  const std::string feat = "featurize " + ws.p("data.tsv") + " --embeddings " + ws.p("emb.csv") + " --grid 0..4";
  auto r = run(feat + " --matrix-out " + ws.p("m.csv") + " --schema-out " + ws.p("s.json") + " --labels-out " +
               ws.p("y.csv") + " --jobs 2");
  REQUIRE(r.code == 0);
  const auto matrix_text = slurp(ws.dir / "m.csv");
  const auto manifest_text = slurp(ws.dir / "m.csv.manifest.json");
  CHECK(manifest_text.find("fnv1a64") != std::string::npos);
  CHECK(has_line(slurp(ws.dir / "y.csv"), "c0,-7.49815"));

  // same inputs and flags reproduce every byte
  REQUIRE(run(feat + " --matrix-out " + ws.p("m.csv") + " --schema-out " + ws.p("s.json") + " --labels-out " +
              ws.p("y.csv") + " --jobs 1")
              .code == 0);
  CHECK(slurp(ws.dir / "m.csv") == matrix_text);

  // the saved schema reproduces the training matrix
  REQUIRE(run(feat + " --schema-in " + ws.p("s.json") + " --matrix-out " + ws.p("m2.csv")).code == 0);
  CHECK(slurp(ws.dir / "m2.csv") == matrix_text);

  // nucleic-only mode drops the embedding block
  auto nucleic = run("featurize " + ws.p("data.tsv") + " --no-embeddings --grid 0..4");
  CHECK(nucleic.code == 0);
  CHECK(nucleic.out.find("emb:") == std::string::npos);

  std::string emb = slurp(ws.dir / "emb.csv") + "stray,1,2,3\n";
  spit(ws.dir / "emb_extra.csv", emb);
  CHECK(run("featurize " + ws.p("data.tsv") + " --embeddings " + ws.p("emb_extra.csv")).code == 4);

  REQUIRE(run("train " + ws.p("m.csv") + " --labels " + ws.p("y.csv") + " --n-estimators 60 --model-out " +
              ws.p("model.json"))
              .code == 0);
  auto pred = run("predict " + ws.p("m.csv") + " --model " + ws.p("model.json"));
  REQUIRE(pred.code == 0);
  std::ifstream min(ws.dir / "m.csv");
  const auto m = gbnl::read_matrix(min);
  const auto pipeline = gbnl::learn::parse_pipeline(slurp(ws.dir / "model.json"));
  const auto expected = pipeline.predict(m.values);
  std::istringstream lines(pred.out);
  std::string line;
  std::getline(lines, line);
  for (std::size_t k = 0; k < expected.size(); ++k) {
    REQUIRE(std::getline(lines, line));
    const auto comma = line.find(',');
    CHECK(line.substr(0, comma) == m.ids[k]);
    CHECK(std::stod(line.substr(comma + 1)) == expected[k]);
  }

  auto eval = run("evaluate " + ws.p("m.csv") + " --labels " + ws.p("y.csv") +
                  " --n-estimators 30 --folds 4 --seeds 0..1 --jobs 2");
  CHECK(eval.code == 0);
  CHECK(eval.out.rfind("seed,pearson_r,rmse\n", 0) == 0);
  CHECK(eval.out.find("\nmean,") != std::string::npos);

  spit(ws.dir / "y_short.csv", "id,delta_g\nc0,1\n");
  CHECK(run("evaluate " + ws.p("m.csv") + " --labels " + ws.p("y_short.csv")).code == 4);
}
