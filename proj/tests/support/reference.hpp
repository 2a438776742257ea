#pragma once

// Test-only reference computations. Nothing here calls into the fast engine
// or the Hochster oracle, so they can check both.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "gbnl/bigint.hpp"
#include "gbnl/seqdata.hpp"

namespace gbnl::testing {

/// Random strictly increasing positions: n distinct values in 1..window.
inline PositionCloud random_cloud(std::mt19937_64& rng, std::size_t n, Position window) {
  std::set<Position> chosen;
  std::uniform_int_distribution<Position> pick(1, window);
  while (chosen.size() < n) chosen.insert(pick(rng));
  return PositionCloud(std::vector<Position>(chosen.begin(), chosen.end()));
}

/// Connected components of an explicit graph on vertices 0..n-1 by BFS.
inline std::size_t bfs_components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  std::size_t components = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    std::vector<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      auto v = queue.back();
      queue.pop_back();
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return components;
}

/// Gap-graph component distribution by enumerating every subset and running
/// BFS on the explicitly built induced graph.
inline std::vector<std::vector<std::uint64_t>> enumerate_component_distribution(const PositionCloud& cloud,
                                                                                Position k) {
  const std::size_t n = cloud.size();
  std::vector<std::vector<std::uint64_t>> counts(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Position> pts;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask >> v & 1u) pts.push_back(cloud[v]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        if (pts[b] - pts[a] <= k) edges.emplace_back(a, b);
      }
    }
    counts[pts.size()][bfs_components(pts.size(), edges)] += 1;
  }
  return counts;
}

/// Classical persistent Betti numbers (unreduced, degrees 0 and 1) of the
/// VR(1) filtration on a cloud, from a standard column-reduction barcode:
/// the number of bars born at or before eps_lo and still alive at eps_hi.
struct PersistentBetti {
  std::int64_t b0 = 0;
  std::int64_t b1 = 0;
};

inline PersistentBetti barcode_persistent_betti(const PositionCloud& cloud, Position eps_lo, Position eps_hi) {
  const std::size_t n = cloud.size();
  struct Edge {
    Position length;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) edges.push_back({cloud[b] - cloud[a], a, b});
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.length < y.length; });

  // Column reduction of the edge boundary columns (vertex sets, GF(2)).
  std::vector<std::vector<std::size_t>> columns;
  std::vector<long> pivot_owner(n, -1);
  std::vector<Position> vertex_death(n, -1);  // -1: never dies
  std::vector<bool> edge_creates_cycle(edges.size(), false);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::vector<std::size_t> col{edges[e].a, edges[e].b};
    while (!col.empty()) {
      const std::size_t low = col.back();
      if (pivot_owner[low] < 0) break;
      const auto& other = columns[static_cast<std::size_t>(pivot_owner[low])];
      std::vector<std::size_t> sum;
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(sum));
      col = std::move(sum);
    }
    if (col.empty()) {
      edge_creates_cycle[e] = true;
    } else {
      pivot_owner[col.back()] = static_cast<long>(e);
      vertex_death[col.back()] = edges[e].length;
    }
    columns.push_back(std::move(col));
  }
  PersistentBetti out;
  for (std::size_t v = 0; v < n; ++v) {
    // all vertices are born at 0; a bar [0, d) is alive at eps_hi iff d > eps_hi
    if (vertex_death[v] < 0 || vertex_death[v] > eps_hi) ++out.b0;
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    // cycles never die in a 1-dimensional complex
    if (edge_creates_cycle[e] && edges[e].length <= eps_lo) ++out.b1;
  }
  return out;
}

}  // namespace gbnl::testing
