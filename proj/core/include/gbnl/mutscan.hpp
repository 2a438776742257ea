#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gbnl/betti_table.hpp"
#include "gbnl/grid.hpp"
#include "gbnl/seqdata.hpp"

namespace gbnl {

enum class SequenceTag { kRef, kMut };
enum class SeriesKind { kPhB0, kPhB1, kGraded };

std::string_view to_string(SequenceTag tag);
std::string_view to_string(SeriesKind kind);

struct CurveSample {
  std::int64_t epsilon = 0;
  BigInt value;

  friend bool operator==(const CurveSample&, const CurveSample&) = default;
};

/// One curve for one (sequence, token class). Graded series carry a key.
struct CurveSeries {
  SequenceTag tag = SequenceTag::kRef;
  TokenClass token = TokenClass::A;
  SeriesKind kind = SeriesKind::kPhB0;
  std::optional<BettiKey> key;
  std::vector<CurveSample> samples;

  /// Value at grid point epsilon; throws kArgument if it is not sampled.
  const BigInt& at(std::int64_t epsilon) const;

  friend bool operator==(const CurveSeries&, const CurveSeries&) = default;
};

/// Grid 0..(largest class span + 1), capped at the longer sequence length.
EpsilonGrid default_mutation_grid(std::string_view ref, std::string_view mut);

/// PH and graded Betti curves for both sequences and every token class.
/// Graded keys are aligned: each (class, key) nonzero anywhere on the grid for
/// either sequence appears for both. Order: class, then REF before MUT, then
/// ph_b0, ph_b1, graded keys ascending. Throws kArgument for invalid
/// sequences or a DNA/RNA mix.
std::vector<CurveSeries> compare(std::string_view ref, std::string_view mut, const EpsilonGrid& grid);

/// Series for a single sequence, all tagged REF.
std::vector<CurveSeries> sequence_series(std::string_view sequence, const EpsilonGrid& grid);

const CurveSeries* find_series(const std::vector<CurveSeries>& series, SequenceTag tag, TokenClass token,
                               SeriesKind kind, std::optional<BettiKey> key = std::nullopt);

/// Long format: sequence_tag,token_class,series_kind,i,j,epsilon,value.
void write_series(std::ostream& out, const std::vector<CurveSeries>& series);

}  // namespace gbnl
