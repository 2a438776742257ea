#include "gbnl/fastbetti.hpp"

#include <cmath>
#include <optional>

#include "gbnl/error.hpp"

namespace gbnl {

ComponentDistribution::ComponentDistribution(std::size_t n) : n_(n), counts_(n + 1) {
  for (std::size_t m = 0; m <= n; ++m) counts_[m].assign(m + 1, BigInt(0));
}

ComponentDistribution component_distribution(const PositionCloud& cloud, Position threshold) {
  if (threshold < 0) raise(ErrorCode::kArgument, "component_distribution: negative threshold");
  const std::size_t n = cloud.size();
  ComponentDistribution dist(n);
  dist.at(0, 0) = 1;
  if (n == 0) return dist;

  // near[l]: smallest index p with cloud[l] - cloud[p] <= K, so the indices
  // p in [near[l], l) are joined to l and p < near[l] are not.
  std::vector<std::size_t> near(n);
  for (std::size_t l = 0, p = 0; l < n; ++l) {
    while (cloud[l] - cloud[p] > threshold) ++p;
    near[l] = p;
  }

  // prefix[p + 1][c] = sum over last-chosen index q <= p of f(q, m - 1, c),
  // where f(q, m, c) counts m-subsets with maximum index q and c components.
  std::vector<std::vector<BigInt>> prefix(n + 1, std::vector<BigInt>(n + 1));
  std::vector<std::vector<BigInt>> layer(n, std::vector<BigInt>(n + 1));

  for (std::size_t l = 0; l < n; ++l) layer[l][1] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    if (m > 1) {
      std::vector<std::vector<BigInt>> next(n, std::vector<BigInt>(n + 1));
      for (std::size_t l = m - 1; l < n; ++l) {
        for (std::size_t c = 1; c <= m; ++c) {
          // previous element joined to l: same component count
          BigInt joined = prefix[l][c] - prefix[near[l]][c];
          // previous element beyond the threshold: one more component
          next[l][c] = joined + prefix[near[l]][c - 1];
        }
      }
      layer.swap(next);
    }
    for (std::size_t c = 0; c <= n; ++c) prefix[0][c] = 0;
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t c = 0; c <= n; ++c) prefix[l + 1][c] = prefix[l][c] + layer[l][c];
    }
    for (std::size_t c = 1; c <= m; ++c) dist.at(m, c) = prefix[n][c];
  }
  return dist;
}

std::int64_t gap_edge_count(const PositionCloud& cloud, Position threshold) {
  std::int64_t edges = 0;
  for (std::size_t hi = 0, lo = 0; hi < cloud.size(); ++hi) {
    while (cloud[hi] - cloud[lo] > threshold) ++lo;
    edges += static_cast<std::int64_t>(hi - lo);
  }
  return edges;
}

BettiTable graded_betti_fast(const PositionCloud& cloud, Position threshold) {
  if (threshold < 0) raise(ErrorCode::kArgument, "graded_betti_fast: negative threshold");
  const auto n = static_cast<std::int64_t>(cloud.size());
  BettiTable table = BettiTable::unit();
  if (n < 2) return table;

  const auto dist = component_distribution(cloud, threshold);
  const BinomialTable binom(n);
  const BigInt edges = gap_edge_count(cloud, threshold);

  for (std::int64_t i = 1; i + 1 <= n; ++i) {
    const auto m = static_cast<std::size_t>(i + 1);
    BigInt disconnection = 0;
    for (std::size_t c = 2; c <= m; ++c) disconnection += (c - 1) * dist.at(m, c);
    table.add(static_cast<int>(i), static_cast<int>(i + 1), disconnection);
  }
  for (std::int64_t i = 1; i + 2 <= n; ++i) {
    const auto m = static_cast<std::size_t>(i + 2);
    BigInt components = 0;
    for (std::size_t c = 1; c <= m; ++c) components += c * dist.at(m, c);
    BigInt cycles = edges * binom(n - 2, i) - (i + 2) * binom(n, i + 2) + components;
    table.add(static_cast<int>(i), static_cast<int>(i + 2), cycles);
  }
  return table;
}

BettiTable graded_betti_at(const PositionCloud& cloud, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    raise(ErrorCode::kArgument, "graded_betti_at: epsilon must be finite and non-negative");
  }
  return graded_betti_fast(cloud, static_cast<Position>(std::floor(epsilon)));
}

BettiCurve betti_curve(const PositionCloud& cloud, const EpsilonGrid& grid) {
  check_grid(grid);
  BettiCurve curve;
  curve.grid = grid;
  curve.tables.reserve(grid.size());
  // once K reaches the span the graph is complete and tables stop changing
  const Position saturation = cloud.span();
  std::optional<std::size_t> saturated;
  for (auto eps : grid) {
    if (saturated && eps >= saturation) {
      curve.tables.push_back(curve.tables[*saturated]);
      continue;
    }
    curve.tables.push_back(graded_betti_fast(cloud, eps));
    if (eps >= saturation) saturated = curve.tables.size() - 1;
  }
  return curve;
}

PhBetti ph_betti(const PositionCloud& cloud, Position threshold) {
  if (threshold < 0) raise(ErrorCode::kArgument, "ph_betti: negative threshold");
  PhBetti out;
  if (cloud.empty()) return out;
  out.b0 = 1;
  for (std::size_t k = 1; k < cloud.size(); ++k) {
    if (cloud[k] - cloud[k - 1] > threshold) ++out.b0;
  }
  out.b1 = gap_edge_count(cloud, threshold) - static_cast<std::int64_t>(cloud.size()) + out.b0;
  return out;
}

}  // namespace gbnl
