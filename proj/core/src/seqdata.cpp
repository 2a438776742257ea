#include "gbnl/seqdata.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "gbnl/error.hpp"
#include "gbnl/text.hpp"

namespace gbnl {

std::string_view to_string(TokenClass c) {
  switch (c) {
    case TokenClass::A: return "A";
    case TokenClass::C: return "C";
    case TokenClass::G: return "G";
    case TokenClass::TU: return "TU";
  }
  return "?";
}

std::optional<TokenClass> parse_token_class(std::string_view text) {
  if (text == "A") return TokenClass::A;
  if (text == "C") return TokenClass::C;
  if (text == "G") return TokenClass::G;
  if (text == "TU" || text == "T" || text == "U" || text == "T/U") return TokenClass::TU;
  return std::nullopt;
}

std::optional<TokenClass> token_class_of(char base) {
  switch (base) {
    case 'A': return TokenClass::A;
    case 'C': return TokenClass::C;
    case 'G': return TokenClass::G;
    case 'T':
    case 'U': return TokenClass::TU;
    default: return std::nullopt;
  }
}

PositionCloud::PositionCloud(std::vector<Position> positions) : positions_(std::move(positions)) {
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    if (positions_[k] < 1) raise(ErrorCode::kArgument, "PositionCloud: positions must be >= 1");
    if (k > 0 && positions_[k] <= positions_[k - 1]) {
      raise(ErrorCode::kArgument, "PositionCloud: positions must be strictly increasing");
    }
  }
}

Position PositionCloud::span() const {
  return positions_.size() < 2 ? 0 : positions_.back() - positions_.front();
}

namespace {

bool same_class(char a, char b) {
  if (a == b) return true;
  auto ca = token_class_of(a);
  return ca && ca == token_class_of(b) && *ca == TokenClass::TU;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

PositionCloud extract_positions(std::string_view sequence, std::string_view token, std::size_t k) {
  if (k == 0) raise(ErrorCode::kArgument, "extract_positions: k must be positive");
  if (token.size() != k) raise(ErrorCode::kArgument, "extract_positions: token length differs from k");
  std::vector<Position> out;
  if (k > sequence.size()) return PositionCloud{};
  for (std::size_t start = 0; start + k <= sequence.size(); ++start) {
    bool match = true;
    for (std::size_t t = 0; t < k && match; ++t) match = same_class(sequence[start + t], token[t]);
    if (match) out.push_back(static_cast<Position>(start + 1));
  }
  return PositionCloud(std::move(out));
}

PositionCloud extract_positions(std::string_view sequence, TokenClass token) {
  std::vector<Position> out;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    if (token_class_of(sequence[k]) == token) out.push_back(static_cast<Position>(k + 1));
  }
  return PositionCloud(std::move(out));
}

std::optional<std::string> check_nucleotide_sequence(std::string_view sequence,
                                                     std::size_t min_length) {
  bool has_t = false;
  bool has_u = false;
  for (char ch : sequence) {
    if (!token_class_of(ch)) return "non-alphabet character '" + std::string(1, ch) + "'";
    has_t |= ch == 'T';
    has_u |= ch == 'U';
  }
  if (has_t && has_u) return std::string("hybrid-bases (both T and U)");
  if (sequence.size() < min_length) {
    return "length " + std::to_string(sequence.size()) + " below minimum " +
           std::to_string(min_length);
  }
  return std::nullopt;
}

std::optional<bool> is_dna_like(std::string_view sequence) {
  if (sequence.find('T') != std::string_view::npos) return true;
  if (sequence.find('U') != std::string_view::npos) return false;
  return std::nullopt;
}

std::string_view to_string(LabelUnit unit) {
  return unit == LabelUnit::kPkd ? "pkd" : "dg_kcal_per_mol";
}

std::optional<LabelUnit> parse_label_unit(std::string_view text) {
  if (text == "pkd") return LabelUnit::kPkd;
  if (text == "dg_kcal_per_mol") return LabelUnit::kDgKcalPerMol;
  return std::nullopt;
}

Dataset parse_dataset(std::istream& in, const DatasetFormat& format) {
  Dataset out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::vector<std::string>> header;
  char delim = ',';
  std::size_t col_id = 0, col_na = 0, col_protein = 0, col_label = 0, col_unit = 0;
  std::unordered_set<std::string> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = text::trim(line);
    if (view.empty() || view.front() == '#') continue;

    if (!header) {
      delim = format.delimiter.value_or(view.find('\t') != std::string_view::npos ? '\t' : ',');
      header.emplace();
      for (auto f : text::split(view, delim)) header->emplace_back(f);
      auto locate = [&](const std::string& name) {
        auto it = std::find(header->begin(), header->end(), name);
        if (it == header->end()) raise(ErrorCode::kConfig, "dataset: missing column '" + name + "'");
        return static_cast<std::size_t>(it - header->begin());
      };
      col_id = locate(format.id_column);
      col_na = locate(format.na_column);
      col_protein = locate(format.protein_column);
      col_label = locate(format.label_column);
      col_unit = locate(format.unit_column);
      continue;
    }

    auto fields = text::split(view, delim);
    auto reject = [&](std::string id, std::string reason) {
      out.rejections.push_back({line_no, std::move(id), std::move(reason)});
    };
    if (fields.size() != header->size()) {
      reject(fields.empty() ? "" : std::string(fields[0]),
             "expected " + std::to_string(header->size()) + " fields, found " +
                 std::to_string(fields.size()));
      continue;
    }

    ComplexRecord rec;
    rec.id = std::string(fields[col_id]);
    if (rec.id.empty()) {
      reject("", "empty id");
      continue;
    }
    if (!seen.insert(rec.id).second) {
      raise(ErrorCode::kConfig, "dataset: duplicate id '" + rec.id + "' at line " +
                                    std::to_string(line_no));
    }
    rec.na_sequence = upper(fields[col_na]);
    rec.protein_sequence = upper(fields[col_protein]);

    std::string_view label = fields[col_label];
    if (label.find_first_of("~<>") != std::string_view::npos) {
      reject(rec.id, "ambiguous label '" + std::string(label) + "'");
      continue;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
    if (ec != std::errc{} || ptr != label.data() + label.size() || !std::isfinite(value)) {
      reject(rec.id, "malformed label '" + std::string(label) + "'");
      continue;
    }
    rec.label_value = value;

    auto unit = parse_label_unit(fields[col_unit]);
    if (!unit) {
      reject(rec.id, "unknown label unit '" + std::string(fields[col_unit]) + "'");
      continue;
    }
    rec.label_unit = *unit;

    if (auto why = check_nucleotide_sequence(rec.na_sequence, format.min_na_length)) {
      reject(rec.id, *why);
      continue;
    }
    if (rec.protein_sequence.empty() ||
        !std::all_of(rec.protein_sequence.begin(), rec.protein_sequence.end(),
                     [](char ch) { return ch >= 'A' && ch <= 'Z'; })) {
      reject(rec.id, "invalid protein sequence");
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  if (!header) raise(ErrorCode::kConfig, "dataset: no header line");
  return out;
}

Dataset parse_dataset(const std::filesystem::path& path, const DatasetFormat& format) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::kIo, "cannot open dataset '" + path.string() + "'");
  return parse_dataset(in, format);
}

}  // namespace gbnl
