#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbnl/embeddings.hpp"
#include "gbnl/fastbetti.hpp"
#include "gbnl/matrix.hpp"

namespace gbnl {

/// One Betti curve per token class, in kTokenClasses order.
using ClassCurves = std::array<BettiCurve, 4>;

ClassCurves sequence_curves(std::string_view sequence, const EpsilonGrid& grid);

/// Column layout shared by training and inference. Nucleic columns are
/// ordered class (A, C, G, TU), then key (i, j) ascending, then grid value;
/// embedding columns follow.
struct FeatureSchema {
  EpsilonGrid grid;
  std::array<std::vector<BettiKey>, 4> keys;
  std::size_t embedding_width = 0;
  /// One flag per unmasked column; false marks a column dropped as
  /// identically zero over the corpus.
  std::vector<bool> kept_columns;

  std::size_t nucleic_width() const;
  std::size_t full_width() const { return nucleic_width() + embedding_width; }
  std::size_t kept_width() const;
  /// Names of all columns before masking, e.g. "A:1:3:e0" or "emb:17".
  std::vector<std::string> column_names() const;

  /// Structured text; serialize(parse(s)) reproduces s byte for byte.
  std::string serialize() const;
  static FeatureSchema parse(std::string_view text);

  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

/// Union of nonzero keys (beta_{0,0} excluded) over every record and grid
/// point. Throws kConfig when the curves were evaluated on different grids.
FeatureSchema build_schema(std::span<const ClassCurves> curves, const EpsilonGrid& grid,
                           std::size_t embedding_width);

/// Nucleic feature block of one record (unmasked, nucleic_width() values).
/// Keys absent from a table read as zero.
std::vector<double> vectorize(const ClassCurves& curves, const FeatureSchema& schema);

struct FeatureVector {
  std::string id;
  std::vector<double> values;
};

struct DesignMatrix {
  std::vector<std::string> ids;
  std::vector<std::string> columns;
  Matrix values;
};

struct AssembledMatrix {
  DesignMatrix matrix;
  FeatureSchema schema;
};

/// Concatenates nucleic and embedding blocks (embeddings may be null for a
/// nucleic-only matrix), then drops columns that are zero in every row and
/// records them in the returned schema. A record without an embedding or an
/// embedding id without a record throws kJoinMismatch.
AssembledMatrix assemble_design_matrix(std::span<const FeatureVector> nucleic, FeatureSchema schema,
                                       const EmbeddingTable* embeddings);

/// Same layout using a finalized schema's kept_columns as-is.
DesignMatrix apply_schema(std::span<const FeatureVector> nucleic, const FeatureSchema& schema,
                          const EmbeddingTable* embeddings);

/// CSV with header "id,<column>..." and shortest round-trip values.
void write_matrix(std::ostream& out, const DesignMatrix& matrix);
DesignMatrix read_matrix(std::istream& in);

}  // namespace gbnl
