#include "gbnl/betti_table.hpp"

#include <sstream>

#include "gbnl/error.hpp"

namespace gbnl {

BinomialTable::BinomialTable(std::int64_t n) {
  if (n < 0) raise(ErrorCode::kArgument, "BinomialTable: negative size");
  rows_.resize(static_cast<std::size_t>(n) + 1);
  for (std::size_t m = 0; m < rows_.size(); ++m) {
    rows_[m].resize(m + 1);
    rows_[m][0] = 1;
    rows_[m][m] = 1;
    for (std::size_t k = 1; k < m; ++k) rows_[m][k] = rows_[m - 1][k - 1] + rows_[m - 1][k];
  }
}

const BigInt& BinomialTable::operator()(std::int64_t m, std::int64_t k) const {
  if (m < 0 || k < 0 || k > m) return zero_;
  if (m > max_n()) raise(ErrorCode::kArgument, "BinomialTable: row out of range");
  return rows_[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::int64_t t = 1; t <= k; ++t) {
    r *= n - k + t;
    r /= t;
  }
  return r;
}

bool is_structural_zero(int i, int j) {
  if (i < 0 || j < 0) return true;
  if (i == 0) return j != 0;
  return i >= j;
}

BettiTable BettiTable::unit() {
  BettiTable t;
  t.entries_[{0, 0}] = 1;
  return t;
}

void BettiTable::add(int i, int j, const BigInt& value) {
  if (value == 0) return;
  if (is_structural_zero(i, j)) {
    raise(ErrorCode::kInternal, "BettiTable: nonzero value at structural zero (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
  }
  auto& slot = entries_[{i, j}];
  slot += value;
  if (slot == 0) entries_.erase({i, j});
}

BigInt BettiTable::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? BigInt(0) : it->second;
}

std::string BettiTable::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [key, value] : entries_) {
    if (!first) out << ", ";
    first = false;
    out << '(' << key.first << ',' << key.second << "):" << value.str();
  }
  out << '}';
  return out.str();
}

}  // namespace gbnl
