#include "gbnl/gf2.hpp"

#include <bit>

namespace gbnl::gf2 {

bool BitRow::none() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t BitRow::lowest() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  return width_;
}

BitRow& BitRow::operator^=(const BitRow& other) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

std::size_t rank(std::vector<BitRow> rows) {
  // pivot[col] = index of the reduced row owning that lowest bit
  std::vector<std::size_t> pivot_row;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (auto& row : rows) {
    for (std::size_t p = 0; p < pivot_row.size(); ++p) {
      if (row.test(pivot_col[p])) row ^= rows[pivot_row[p]];
    }
    if (!row.none()) {
      pivot_row.push_back(static_cast<std::size_t>(&row - rows.data()));
      pivot_col.push_back(row.lowest());
      ++r;
    }
  }
  return r;
}

std::vector<BitRow> kernel_basis(const std::vector<BitRow>& rows) {
  const std::size_t n = rows.size();
  std::vector<BitRow> work = rows;
  std::vector<BitRow> combo;
  combo.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    combo.emplace_back(n);
    combo.back().set(k);
  }
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> pivot_col;
  std::vector<BitRow> kernel;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      if (work[k].test(pivot_col[p])) {
        work[k] ^= work[pivots[p]];
        combo[k] ^= combo[pivots[p]];
      }
    }
    if (work[k].none()) {
      kernel.push_back(combo[k]);
    } else {
      pivots.push_back(k);
      pivot_col.push_back(work[k].lowest());
    }
  }
  return kernel;
}

}  // namespace gbnl::gf2
