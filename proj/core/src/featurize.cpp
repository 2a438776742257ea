#include "gbnl/featurize.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_set>

#include "json.hpp"

#include "gbnl/error.hpp"
#include "gbnl/text.hpp"

namespace gbnl {

namespace {

constexpr std::string_view kSchemaFormat = "gbnl-feature-schema";
constexpr int kSchemaVersion = 1;

std::size_t class_index(TokenClass c) { return static_cast<std::size_t>(c); }

std::vector<double> nucleic_block(const FeatureVector& fv, const FeatureSchema& schema) {
  if (fv.values.size() != schema.nucleic_width()) {
    raise(ErrorCode::kConfig, "record '" + fv.id + "' has " + std::to_string(fv.values.size()) +
                                  " nucleic features, schema expects " +
                                  std::to_string(schema.nucleic_width()));
  }
  return fv.values;
}

/// Full-width rows (nucleic then embedding) in input order.
Matrix concatenate(std::span<const FeatureVector> nucleic, const FeatureSchema& schema,
                   const EmbeddingTable* embeddings) {
  const std::size_t width = schema.full_width();
  if (embeddings != nullptr) {
    if (embeddings->dim() != schema.embedding_width) {
      raise(ErrorCode::kConfig, "embedding width " + std::to_string(embeddings->dim()) +
                                    " differs from schema width " +
                                    std::to_string(schema.embedding_width));
    }
    std::vector<std::string> missing;
    std::unordered_set<std::string> known;
    for (const auto& fv : nucleic) {
      known.insert(fv.id);
      if (!embeddings->find(fv.id)) missing.push_back(fv.id);
    }
    std::vector<std::string> unknown;
    for (const auto& id : embeddings->ids()) {
      if (!known.count(id)) unknown.push_back(id);
    }
    if (!missing.empty() || !unknown.empty()) {
      std::string msg = "embedding join mismatch;";
      auto list = [&](const char* label, const std::vector<std::string>& ids) {
        if (ids.empty()) return;
        msg += std::string(" ") + label + ":";
        for (const auto& id : ids) msg += " " + id;
      };
      list("records without embedding", missing);
      list("embeddings without record", unknown);
      raise(ErrorCode::kJoinMismatch, msg);
    }
  } else if (schema.embedding_width != 0) {
    raise(ErrorCode::kConfig, "schema expects embeddings but none were supplied");
  }

  Matrix full(nucleic.size(), width);
  for (std::size_t r = 0; r < nucleic.size(); ++r) {
    auto block = nucleic_block(nucleic[r], schema);
    auto out = full.row(r);
    std::copy(block.begin(), block.end(), out.begin());
    if (embeddings != nullptr) {
      auto emb = *embeddings->find(nucleic[r].id);
      std::copy(emb.begin(), emb.end(), out.begin() + static_cast<std::ptrdiff_t>(block.size()));
    }
  }
  return full;
}

DesignMatrix mask(std::span<const FeatureVector> nucleic, const Matrix& full, const FeatureSchema& schema) {
  if (schema.kept_columns.size() != schema.full_width()) {
    raise(ErrorCode::kConfig, "schema kept_columns has " + std::to_string(schema.kept_columns.size()) +
                                  " flags, expected " + std::to_string(schema.full_width()));
  }
  const auto names = schema.column_names();
  DesignMatrix out;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (schema.kept_columns[c]) {
      keep.push_back(c);
      out.columns.push_back(names[c]);
    }
  }
  out.values = Matrix(full.rows(), keep.size());
  for (std::size_t r = 0; r < full.rows(); ++r) {
    out.ids.push_back(nucleic[r].id);
    for (std::size_t k = 0; k < keep.size(); ++k) out.values(r, k) = full(r, keep[k]);
  }
  return out;
}

}  // namespace

ClassCurves sequence_curves(std::string_view sequence, const EpsilonGrid& grid) {
  ClassCurves curves;
  for (TokenClass c : kTokenClasses) {
    curves[class_index(c)] = betti_curve(extract_positions(sequence, c), grid);
  }
  return curves;
}

std::size_t FeatureSchema::nucleic_width() const {
  std::size_t keys_total = 0;
  for (const auto& k : keys) keys_total += k.size();
  return keys_total * grid.size();
}

std::size_t FeatureSchema::kept_width() const {
  return static_cast<std::size_t>(std::count(kept_columns.begin(), kept_columns.end(), true));
}

std::vector<std::string> FeatureSchema::column_names() const {
  std::vector<std::string> names;
  names.reserve(full_width());
  for (TokenClass c : kTokenClasses) {
    for (const auto& [i, j] : keys[class_index(c)]) {
      for (auto eps : grid) {
        names.push_back(std::string(to_string(c)) + ":" + std::to_string(i) + ":" + std::to_string(j) +
                        ":e" + std::to_string(eps));
      }
    }
  }
  for (std::size_t k = 0; k < embedding_width; ++k) names.push_back("emb:" + std::to_string(k));
  return names;
}

std::string FeatureSchema::serialize() const {
  nlohmann::ordered_json j;
  j["format"] = kSchemaFormat;
  j["version"] = kSchemaVersion;
  j["grid"] = grid;
  nlohmann::ordered_json key_json = nlohmann::ordered_json::object();
  for (TokenClass c : kTokenClasses) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [i, jj] : keys[class_index(c)]) arr.push_back({i, jj});
    key_json[std::string(to_string(c))] = arr;
  }
  j["keys"] = key_json;
  j["embedding_width"] = embedding_width;
  std::string flags;
  flags.reserve(kept_columns.size());
  for (bool b : kept_columns) flags.push_back(b ? '1' : '0');
  j["kept_columns"] = flags;
  return j.dump(1) + "\n";
}

FeatureSchema FeatureSchema::parse(std::string_view text) {
  FeatureSchema s;
  try {
    auto j = nlohmann::ordered_json::parse(text);
    if (j.at("format").get<std::string>() != kSchemaFormat || j.at("version").get<int>() != kSchemaVersion) {
      raise(ErrorCode::kConfig, "schema: unsupported format or version");
    }
    s.grid = j.at("grid").get<EpsilonGrid>();
    check_grid(s.grid);
    for (TokenClass c : kTokenClasses) {
      for (const auto& pair : j.at("keys").at(std::string(to_string(c)))) {
        s.keys[class_index(c)].emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
      }
      if (!std::is_sorted(s.keys[class_index(c)].begin(), s.keys[class_index(c)].end())) {
        raise(ErrorCode::kConfig, "schema: keys must be sorted");
      }
    }
    s.embedding_width = j.at("embedding_width").get<std::size_t>();
    for (char ch : j.at("kept_columns").get<std::string>()) {
      if (ch != '0' && ch != '1') raise(ErrorCode::kConfig, "schema: kept_columns must be 0/1 flags");
      s.kept_columns.push_back(ch == '1');
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::kConfig, std::string("schema: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kArgument) raise(ErrorCode::kConfig, std::string("schema: ") + e.what());
    throw;
  }
  if (!s.kept_columns.empty() && s.kept_columns.size() != s.full_width()) {
    raise(ErrorCode::kConfig, "schema: kept_columns length does not match the column count");
  }
  return s;
}

FeatureSchema build_schema(std::span<const ClassCurves> curves, const EpsilonGrid& grid,
                           std::size_t embedding_width) {
  check_grid(grid);
  std::array<std::set<BettiKey>, 4> seen;
  for (const auto& record : curves) {
    for (std::size_t c = 0; c < record.size(); ++c) {
      if (record[c].grid != grid) raise(ErrorCode::kConfig, "build_schema: curves use mixed grids");
      for (const auto& table : record[c].tables) {
        for (const auto& [key, value] : table.entries()) {
          if (key != BettiKey{0, 0}) seen[c].insert(key);
        }
      }
    }
  }
  FeatureSchema schema;
  schema.grid = grid;
  for (std::size_t c = 0; c < seen.size(); ++c) schema.keys[c].assign(seen[c].begin(), seen[c].end());
  schema.embedding_width = embedding_width;
  schema.kept_columns.assign(schema.full_width(), true);
  return schema;
}

std::vector<double> vectorize(const ClassCurves& curves, const FeatureSchema& schema) {
  std::vector<double> values;
  values.reserve(schema.nucleic_width());
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    if (curve.grid != schema.grid) raise(ErrorCode::kConfig, "vectorize: curve grid differs from schema");
    for (const auto& [i, j] : schema.keys[c]) {
      for (const auto& table : curve.tables) values.push_back(to_double(table.at(i, j)));
    }
  }
  return values;
}

AssembledMatrix assemble_design_matrix(std::span<const FeatureVector> nucleic, FeatureSchema schema,
                                       const EmbeddingTable* embeddings) {
  if (embeddings == nullptr) schema.embedding_width = 0;
  const Matrix full = concatenate(nucleic, schema, embeddings);
  schema.kept_columns.assign(schema.full_width(), false);
  for (std::size_t r = 0; r < full.rows(); ++r) {
    for (std::size_t c = 0; c < full.cols(); ++c) {
      if (full(r, c) != 0.0) schema.kept_columns[c] = true;
    }
  }
  DesignMatrix matrix = mask(nucleic, full, schema);
  return {std::move(matrix), std::move(schema)};
}

DesignMatrix apply_schema(std::span<const FeatureVector> nucleic, const FeatureSchema& schema,
                          const EmbeddingTable* embeddings) {
  return mask(nucleic, concatenate(nucleic, schema, embeddings), schema);
}

void write_matrix(std::ostream& out, const DesignMatrix& matrix) {
  out << "id";
  for (const auto& name : matrix.columns) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < matrix.values.rows(); ++r) {
    out << matrix.ids[r];
    for (double v : matrix.values.row(r)) out << ',' << text::format_exact(v);
    out << '\n';
  }
}

DesignMatrix read_matrix(std::istream& in) {
  DesignMatrix m;
  std::string line;
  bool have_header = false;
  std::vector<double> data;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto view = text::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = text::split(view, ',');
    if (!have_header) {
      if (fields.empty() || fields[0] != "id") raise(ErrorCode::kConfig, "matrix: header must start with 'id'");
      for (std::size_t k = 1; k < fields.size(); ++k) m.columns.emplace_back(fields[k]);
      have_header = true;
      continue;
    }
    if (fields.size() != m.columns.size() + 1) {
      raise(ErrorCode::kConfig, "matrix: row '" + std::string(fields[0]) + "' has the wrong field count");
    }
    m.ids.emplace_back(fields[0]);
    for (std::size_t k = 1; k < fields.size(); ++k) data.push_back(text::parse_double(fields[k], "matrix"));
  }
  if (!have_header) raise(ErrorCode::kConfig, "matrix: missing header");
  m.values = Matrix(m.ids.size(), m.columns.size());
  for (std::size_t r = 0; r < m.values.rows(); ++r) {
    for (std::size_t c = 0; c < m.values.cols(); ++c) m.values(r, c) = data[r * m.values.cols() + c];
  }
  return m;
}

}  // namespace gbnl
