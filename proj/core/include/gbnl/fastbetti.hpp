#pragma once

#include <cstdint>
#include <vector>

#include "gbnl/betti_table.hpp"
#include "gbnl/grid.hpp"
#include "gbnl/seqdata.hpp"

namespace gbnl {

/// N[m][c]: number of m-element subsets of the cloud whose induced gap graph
/// has exactly c connected components.
class ComponentDistribution {
 public:
  explicit ComponentDistribution(std::size_t n);

  std::size_t n() const { return n_; }
  const BigInt& at(std::size_t m, std::size_t c) const { return counts_[m][c]; }
  BigInt& at(std::size_t m, std::size_t c) { return counts_[m][c]; }

 private:
  std::size_t n_;
  std::vector<std::vector<BigInt>> counts_;
};

/// Counts subsets by (size, components) with a left-to-right scan: choosing a
/// position opens a new component exactly when its gap to the previously
/// chosen position exceeds K. O(n^3) big-integer additions.
ComponentDistribution component_distribution(const PositionCloud& cloud, Position threshold);

/// Pairs of positions with gap at most K.
std::int64_t gap_edge_count(const PositionCloud& cloud, Position threshold);

/// Graded Betti table of the Stanley-Reisner ring of the VR(1) gap graph at
/// threshold K. Only beta_{0,0} and the two diagonals j - i = 1 (disconnection)
/// and j - i = 2 (independent cycles) can be nonzero:
///
///   beta_{i,i+1} = sum_c (c - 1) N[i+1][c]
///   beta_{i,i+2} = |E| C(n-2, i) - (i+2) C(n, i+2) + sum_c c N[i+2][c]
///
/// The second line sums |E(W)| - |W| + c(W) over all (i+2)-subsets W, using
/// that every edge lies in C(n-2, i) of them.
BettiTable graded_betti_fast(const PositionCloud& cloud, Position threshold);

/// Table at real scale epsilon; values are constant on [m, m + 1).
BettiTable graded_betti_at(const PositionCloud& cloud, double epsilon);

struct BettiCurve {
  EpsilonGrid grid;
  std::vector<BettiTable> tables;  ///< tables[t] is the table at K = grid[t]
};

BettiCurve betti_curve(const PositionCloud& cloud, const EpsilonGrid& grid);

/// Persistent-homology Betti numbers of the whole gap graph.
struct PhBetti {
  std::int64_t b0 = 0;  ///< components
  std::int64_t b1 = 0;  ///< independent cycles, |E| - n + b0

  friend bool operator==(const PhBetti&, const PhBetti&) = default;
};

PhBetti ph_betti(const PositionCloud& cloud, Position threshold);

}  // namespace gbnl
