#include "gbnl/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "gbnl/error.hpp"
#include "gbnl/text.hpp"

namespace gbnl {

void EmbeddingTable::add(std::string id, std::vector<double> values) {
  if (values.size() != dim_) {
    raise(ErrorCode::kConfig, "embeddings: '" + id + "' has " + std::to_string(values.size()) +
                                  " values, expected " + std::to_string(dim_));
  }
  if (!index_.emplace(id, ids_.size()).second) {
    raise(ErrorCode::kConfig, "embeddings: duplicate id '" + id + "'");
  }
  ids_.push_back(std::move(id));
  vectors_.push_back(std::move(values));
}

std::optional<std::span<const double>> EmbeddingTable::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(vectors_[it->second]);
}

EmbeddingTable read_embeddings(std::istream& in) {
  std::string line;
  std::optional<EmbeddingTable> table;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto view = text::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = text::split(view, ',');
    if (!table) {
      constexpr std::string_view kPrefix = "dim=";
      if (fields.size() != 2 || fields[0] != "id" || fields[1].substr(0, kPrefix.size()) != kPrefix) {
        raise(ErrorCode::kConfig, "embeddings: header must be 'id,dim=<D>'");
      }
      const double dim = text::parse_double(fields[1].substr(kPrefix.size()), "embeddings header");
      if (dim < 1 || dim != std::floor(dim)) raise(ErrorCode::kConfig, "embeddings: bad dimension");
      table.emplace(static_cast<std::size_t>(dim));
      continue;
    }
    if (fields.size() != table->dim() + 1) {
      raise(ErrorCode::kConfig, "embeddings: line " + std::to_string(line_no) + " has " +
                                    std::to_string(fields.size() - 1) + " values, expected " +
                                    std::to_string(table->dim()));
    }
    std::vector<double> values;
    values.reserve(table->dim());
    for (std::size_t k = 1; k < fields.size(); ++k) {
      values.push_back(text::parse_double(fields[k], "embeddings"));
      if (!std::isfinite(values.back())) raise(ErrorCode::kNumeric, "embeddings: non-finite value");
    }
    table->add(std::string(fields[0]), std::move(values));
  }
  if (!table) raise(ErrorCode::kConfig, "embeddings: missing header");
  return std::move(*table);
}

EmbeddingTable read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::kIo, "cannot open embeddings '" + path.string() + "'");
  return read_embeddings(in);
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << "id,dim=" << table.dim() << '\n';
  for (const auto& id : table.ids()) {
    out << id;
    const auto values = *table.find(id);
    for (double v : values) out << ',' << text::format_exact(v);
    out << '\n';
  }
}

}  // namespace gbnl
