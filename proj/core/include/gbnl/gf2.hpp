#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gbnl::gf2 {

/// Dense row vector over GF(2).
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  std::size_t width() const { return width_; }
  bool test(std::size_t k) const { return (words_[k / 64] >> (k % 64)) & 1u; }
  void set(std::size_t k) { words_[k / 64] |= std::uint64_t{1} << (k % 64); }
  void flip(std::size_t k) { words_[k / 64] ^= std::uint64_t{1} << (k % 64); }
  bool none() const;
  /// Index of the lowest set bit, or width() when the row is zero.
  std::size_t lowest() const;
  BitRow& operator^=(const BitRow& other);

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Rank of the span of `rows` (all of equal width).
std::size_t rank(std::vector<BitRow> rows);

/// Basis of the left null space: combinations of `rows` summing to zero,
/// expressed as indicator vectors over the row indices.
std::vector<BitRow> kernel_basis(const std::vector<BitRow>& rows);

}  // namespace gbnl::gf2
