#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gbnl {

using Position = std::int64_t;

/// Nucleotide classes of the 1-mer alphabet. T and U share one class.
enum class TokenClass : std::uint8_t { A = 0, C = 1, G = 2, TU = 3 };

inline constexpr std::array<TokenClass, 4> kTokenClasses{TokenClass::A, TokenClass::C,
                                                         TokenClass::G, TokenClass::TU};

std::string_view to_string(TokenClass c);
std::optional<TokenClass> parse_token_class(std::string_view text);
/// Class of a single nucleotide letter (upper case); nullopt outside {A,C,G,T,U}.
std::optional<TokenClass> token_class_of(char base);

/// Strictly increasing 1-based positions of one token within a sequence.
class PositionCloud {
 public:
  PositionCloud() = default;
  /// Throws kArgument unless `positions` is strictly increasing and >= 1.
  explicit PositionCloud(std::vector<Position> positions);

  std::span<const Position> positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  Position operator[](std::size_t k) const { return positions_[k]; }
  /// last - first; zero for fewer than two points.
  Position span() const;

  friend bool operator==(const PositionCloud&, const PositionCloud&) = default;

 private:
  std::vector<Position> positions_;
};

/// 1-based start indices of `token` in `sequence`, matching T and U as one
/// class. Empty when k exceeds the sequence length.
PositionCloud extract_positions(std::string_view sequence, std::string_view token, std::size_t k);

PositionCloud extract_positions(std::string_view sequence, TokenClass token);

/// Why a nucleotide string fails curation, or nullopt if it passes.
std::optional<std::string> check_nucleotide_sequence(std::string_view sequence,
                                                     std::size_t min_length = 5);

/// True when the sequence contains T (DNA-like), false for U; nullopt if neither.
std::optional<bool> is_dna_like(std::string_view sequence);

enum class LabelUnit { kPkd, kDgKcalPerMol };

std::string_view to_string(LabelUnit unit);
std::optional<LabelUnit> parse_label_unit(std::string_view text);

struct ComplexRecord {
  std::string id;
  std::string na_sequence;
  std::string protein_sequence;
  double label_value = 0.0;
  LabelUnit label_unit = LabelUnit::kPkd;
};

/// Column names and delimiter for a dataset file.
struct DatasetFormat {
  std::optional<char> delimiter;  ///< auto-detected from the header when unset
  std::string id_column = "id";
  std::string na_column = "na_sequence";
  std::string protein_column = "protein_sequence";
  std::string label_column = "label";
  std::string unit_column = "label_unit";
  std::size_t min_na_length = 5;
};

struct RowRejection {
  std::size_t line = 0;  ///< 1-based line number in the file
  std::string id;
  std::string reason;
};

struct Dataset {
  std::vector<ComplexRecord> records;
  std::vector<RowRejection> rejections;
};

/// Parses delimiter-separated text. Rows breaking a curation rule are
/// collected in `rejections`; a missing column or a duplicate id throws
/// ErrorCode::kConfig.
Dataset parse_dataset(std::istream& in, const DatasetFormat& format = {});
Dataset parse_dataset(const std::filesystem::path& path, const DatasetFormat& format = {});

}  // namespace gbnl
