#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "gbnl/error.hpp"
#include "gbnl/featurize.hpp"

using namespace gbnl;

namespace {

ClassCurves empty_curves(const EpsilonGrid& grid) {
  ClassCurves curves;
  for (auto& c : curves) {
    c.grid = grid;
    c.tables.assign(grid.size(), BettiTable::unit());
  }
  return curves;
}

/// Class A tables with plateaus 0..6, 7..8 and 9.
ClassCurves plateau_curves() {
  auto grid = grid_range(0, 9);
  auto curves = empty_curves(grid);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    const int eps = static_cast<int>(grid[t]);
    auto& table = curves[0].tables[t];
    table.add(1, 2, eps <= 6 ? 3 : eps <= 8 ? 2 : 1);
    if (eps <= 8) table.add(2, 3, eps <= 6 ? 2 : 1);
  }
  return curves;
}

std::vector<FeatureVector> vectors_for(const std::vector<std::string>& seqs, const FeatureSchema& schema,
                                       const std::vector<ClassCurves>& curves) {
  std::vector<FeatureVector> out;
  for (std::size_t r = 0; r < seqs.size(); ++r) out.push_back({"r" + std::to_string(r), vectorize(curves[r], schema)});
  return out;
}

}  // namespace

TEST_CASE("plateau values carry across the grid") {
  std::vector<ClassCurves> corpus{plateau_curves()};
  auto schema = build_schema(corpus, grid_range(0, 9), 0);
  REQUIRE(schema.keys[0] == std::vector<BettiKey>{{1, 2}, {2, 3}});
  CHECK(schema.keys[1].empty());
  CHECK(schema.nucleic_width() == 20);
  auto v = vectorize(corpus[0], schema);
  std::vector<double> first(v.begin(), v.begin() + 10);
  std::vector<double> second(v.begin() + 10, v.end());
  CHECK(first == std::vector<double>{3, 3, 3, 3, 3, 3, 3, 2, 2, 1});
  CHECK(second == std::vector<double>{2, 2, 2, 2, 2, 2, 2, 1, 1, 0});
}

TEST_CASE("schema excludes (0,0) and orders keys") {
  auto grid = grid_range(0, 3);
  std::vector<std::string> seqs{"ACGTAACCA", "GGTTAGA", "AAAA"};
  std::vector<ClassCurves> corpus;
  for (const auto& s : seqs) corpus.push_back(sequence_curves(s, grid));
  auto schema = build_schema(corpus, grid, 0);
  for (const auto& keys : schema.keys) {
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(std::find(keys.begin(), keys.end(), BettiKey{0, 0}) == keys.end());
  }
  CHECK(schema.column_names().size() == schema.nucleic_width());
  CHECK_THROWS_AS(build_schema(corpus, grid_range(0, 4), 0), Error);
}

TEST_CASE("absent class gives a zero block") {
  auto grid = grid_range(0, 9);
  std::vector<ClassCurves> corpus{sequence_curves("AAGAAC", grid), sequence_curves("TTTT", grid)};
  auto schema = build_schema(corpus, grid, 0);
  auto v = vectorize(corpus[1], schema);
  const std::size_t a_width = schema.keys[0].size() * grid.size();
  REQUIRE(a_width > 0);
  for (std::size_t k = 0; k < a_width; ++k) CHECK(v[k] == 0.0);
}

TEST_CASE("schema round-trip is byte-identical") {
  auto grid = grid_range(0, 9);
  std::vector<ClassCurves> corpus{sequence_curves("GGGGAACTTCTCCTGCTAGAAT", grid),
                                  sequence_curves("AACGAATTTTTCTTGGTACAAT", grid)};
  auto schema = build_schema(corpus, grid, 3);
  schema.kept_columns[1] = false;
  const auto text = schema.serialize();
  auto parsed = FeatureSchema::parse(text);
  CHECK(parsed == schema);
  CHECK(parsed.serialize() == text);
  CHECK_THROWS_AS(FeatureSchema::parse("{\"format\":\"other\"}"), Error);
  CHECK_THROWS_AS(FeatureSchema::parse("not json"), Error);
}

TEST_CASE("assembly prunes zero columns and joins embeddings") {
  auto grid = grid_range(0, 4);
  std::vector<std::string> seqs{"ACGTAACCAG", "GGTTAGAC", "ACGTAACCAG"};
  std::vector<ClassCurves> corpus;
  for (const auto& s : seqs) corpus.push_back(sequence_curves(s, grid));
  auto schema = build_schema(corpus, grid, 2);
  auto vectors = vectors_for(seqs, schema, corpus);

  EmbeddingTable emb(2);
  emb.add("r0", {0.5, 0.0});
  emb.add("r1", {-1.25, 0.0});
  emb.add("r2", {0.5, 0.0});
  auto assembled = assemble_design_matrix(vectors, schema, &emb);
  const auto& m = assembled.matrix;
  CHECK(m.ids == std::vector<std::string>{"r0", "r1", "r2"});
  CHECK(m.values.rows() == 3);
  CHECK(m.values.cols() == assembled.schema.kept_width());
  std::vector<std::string> kept_names;
  const auto all_names = assembled.schema.column_names();
  for (std::size_t c = 0; c < all_names.size(); ++c) {
    if (assembled.schema.kept_columns[c]) kept_names.push_back(all_names[c]);
  }
  CHECK(m.columns == kept_names);
  CHECK(m.columns.back() == "emb:0");
  // identical records give identical rows
  CHECK(std::vector<double>(m.values.row(0).begin(), m.values.row(0).end()) ==
        std::vector<double>(m.values.row(2).begin(), m.values.row(2).end()));

  // no kept column is all zero; every dropped column was all zero
  for (std::size_t c = 0; c < m.values.cols(); ++c) {
    bool nonzero = false;
    for (std::size_t r = 0; r < m.values.rows(); ++r) nonzero |= m.values(r, c) != 0.0;
    CHECK(nonzero);
  }
  auto full = apply_schema(vectors, [&] {
    auto s = assembled.schema;
    s.kept_columns.assign(s.full_width(), true);
    return s;
  }(), &emb);
  std::size_t kept = 0;
  for (std::size_t c = 0; c < full.values.cols(); ++c) {
    bool nonzero = false;
    for (std::size_t r = 0; r < full.values.rows(); ++r) nonzero |= full.values(r, c) != 0.0;
    if (assembled.schema.kept_columns[c]) {
      ++kept;
    } else {
      CHECK_FALSE(nonzero);
    }
  }
  CHECK(kept == m.values.cols());

  // applying the saved schema reproduces the matrix; pruning again is a no-op
  auto reapplied = apply_schema(vectors, FeatureSchema::parse(assembled.schema.serialize()), &emb);
  CHECK(reapplied.values == m.values);
  CHECK(reapplied.columns == m.columns);
  auto again = assemble_design_matrix(vectors, assembled.schema, &emb);
  CHECK(again.schema == assembled.schema);
  CHECK(again.matrix.values == m.values);
}

TEST_CASE("nucleic-only mode and join errors") {
  auto grid = grid_range(0, 2);
  std::vector<std::string> seqs{"ACGA", "GGTA"};
  std::vector<ClassCurves> corpus;
  for (const auto& s : seqs) corpus.push_back(sequence_curves(s, grid));
  auto nucleic_schema = build_schema(corpus, grid, 0);
  auto vectors = vectors_for(seqs, nucleic_schema, corpus);
  auto nucleic = assemble_design_matrix(vectors, nucleic_schema, nullptr);
  CHECK(nucleic.matrix.values.cols() <= nucleic_schema.nucleic_width());

  auto schema = build_schema(corpus, grid, 2);
  EmbeddingTable missing(2);
  missing.add("r0", {1, 2});
  try {
    assemble_design_matrix(vectors, schema, &missing);
    FAIL("expected join failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kJoinMismatch);
    CHECK(std::string(e.what()).find("r1") != std::string::npos);
  }
  EmbeddingTable extra(2);
  extra.add("r0", {1, 2});
  extra.add("r1", {1, 2});
  extra.add("r9", {1, 2});
  CHECK_THROWS_AS(assemble_design_matrix(vectors, schema, &extra), Error);
  EmbeddingTable narrow(1);
  narrow.add("r0", {1});
  narrow.add("r1", {1});
  try {
    assemble_design_matrix(vectors, schema, &narrow);
    FAIL("expected width failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
  }
}

TEST_CASE("matrix and embedding files round-trip") {
  DesignMatrix m;
  m.ids = {"x", "y"};
  m.columns = {"A:1:2:e0", "emb:0"};
  m.values = Matrix(2, 2);
  m.values(0, 0) = 0.1;
  m.values(0, 1) = -3.0e-17;
  m.values(1, 0) = 12345678.9;
  m.values(1, 1) = 1.0 / 3.0;
  std::stringstream buf;
  write_matrix(buf, m);
  auto back = read_matrix(buf);
  CHECK(back.ids == m.ids);
  CHECK(back.columns == m.columns);
  CHECK(back.values == m.values);

  EmbeddingTable t(3);
  t.add("p1", {0.1, 0.2, 1.0 / 7.0});
  t.add("p2", {-1e-300, 5.0, 2.5});
  std::stringstream ebuf;
  ebuf << "# pooling: mean\n";
  write_embeddings(ebuf, t);
  auto t2 = read_embeddings(ebuf);
  CHECK(t2.dim() == 3);
  CHECK(t2.ids() == t.ids());
  for (const auto& id : t.ids()) {
    auto a = *t.find(id);
    auto b = *t2.find(id);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
  std::stringstream bad("id,dim=2\np,1,nan\n");
  try {
    read_embeddings(bad);
    FAIL("expected numeric failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumeric);
  }
  std::stringstream dup("id,dim=1\np,1\np,2\n");
  CHECK_THROWS_AS(read_embeddings(dup), Error);
}
