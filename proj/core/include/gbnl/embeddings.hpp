#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gbnl {

inline constexpr std::size_t kDefaultEmbeddingWidth = 2560;

/// Per-protein embedding vectors keyed by record id.
///
/// File layout: a header line "id,dim=<D>", then one line per record with the
/// id followed by D comma-separated decimals. Lines starting with '#' are
/// comments (the generator records its pooling choice there).
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim = kDefaultEmbeddingWidth) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

  /// Throws kConfig on a duplicate id or a vector of the wrong length.
  void add(std::string id, std::vector<double> values);
  std::optional<std::span<const double>> find(const std::string& id) const;

 private:
  std::size_t dim_;
  std::vector<std::string> ids_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

EmbeddingTable read_embeddings(std::istream& in);
EmbeddingTable read_embeddings(const std::filesystem::path& path);
/// Values are written in shortest round-trip form.
void write_embeddings(std::ostream& out, const EmbeddingTable& table);

}  // namespace gbnl
