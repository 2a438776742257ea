#pragma once

#include <map>
#include <string>
#include <utility>

#include "gbnl/bigint.hpp"

namespace gbnl {

/// (homological degree i, internal degree j)
using BettiKey = std::pair<int, int>;

/// Sparse graded Betti table beta_{i,j}. Zero entries are never stored, so
/// two tables compare equal exactly when they agree on every (i, j).
class BettiTable {
 public:
  BettiTable() = default;

  /// The table of a ring with trivial ideal: only beta_{0,0} = 1.
  static BettiTable unit();

  /// Adds `value` to entry (i, j). Adding a nonzero value to a structural
  /// zero ((0,j) for j >= 1, (i,i) for i >= 1, or i > j) is a logic error.
  void add(int i, int j, const BigInt& value);

  BigInt at(int i, int j) const;
  bool contains(int i, int j) const { return entries_.count({i, j}) != 0; }
  const std::map<BettiKey, BigInt>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// e.g. "{(0,0):1, (1,3):10}"
  std::string to_string() const;

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  std::map<BettiKey, BigInt> entries_;
};

bool is_structural_zero(int i, int j);

}  // namespace gbnl
