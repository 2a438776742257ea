#include "gbnl/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "gbnl/error.hpp"
#include "gbnl/gf2.hpp"

namespace gbnl {

namespace {

using Mask = std::uint64_t;

/// Complex over vertex indices 0..n-1 with faces stored as vertex bitmasks.
struct MaskComplex {
  std::size_t n = 0;
  std::vector<Mask> edges;
  std::vector<Mask> triangles;
};

MaskComplex to_masks(const SimplicialComplex& c, const std::vector<Vertex>& order) {
  std::map<Vertex, std::size_t> index;
  for (std::size_t k = 0; k < order.size(); ++k) index[order[k]] = k;
  auto mask_of = [&](const Face& f) {
    Mask m = 0;
    for (Vertex v : f) m |= Mask{1} << index.at(v);
    return m;
  };
  MaskComplex mc;
  mc.n = order.size();
  for (const auto& e : c.faces(1)) mc.edges.push_back(mask_of(e));
  for (const auto& t : c.faces(2)) mc.triangles.push_back(mask_of(t));
  return mc;
}

MaskComplex to_masks(const GapGraph& g) {
  MaskComplex mc;
  mc.n = g.vertex_count();
  for (std::size_t a = 0; a < mc.n; ++a) {
    for (std::size_t b = a + 1; b < mc.n; ++b) {
      if (g.adjacent(a, b)) mc.edges.push_back((Mask{1} << a) | (Mask{1} << b));
    }
  }
  return mc;
}

void check_cap(std::size_t n, const OracleOptions& options) {
  const std::size_t cap = std::min(options.max_vertices, kOracleHardLimit);
  if (n > cap) {
    raise(ErrorCode::kCapExceeded, "oracle: " + std::to_string(n) + " vertices exceeds cap of " +
                                       std::to_string(cap) + " (2^n subsets)");
  }
}

bool inside(Mask face, Mask subset) { return (face & ~subset) == 0; }

/// Rank of a set of vertex-mask rows (n <= 64).
std::size_t rank_masks(const std::vector<Mask>& rows) {
  std::array<Mask, 64> basis{};
  std::size_t r = 0;
  for (Mask x : rows) {
    while (x != 0) {
      const int top = 63 - std::countl_zero(x);
      if (basis[static_cast<std::size_t>(top)] == 0) {
        basis[static_cast<std::size_t>(top)] = x;
        ++r;
        break;
      }
      x ^= basis[static_cast<std::size_t>(top)];
    }
  }
  return r;
}

/// Faces of `list` lying inside `subset`.
std::vector<Mask> restrict_to(const std::vector<Mask>& list, Mask subset) {
  std::vector<Mask> out;
  for (Mask f : list) {
    if (inside(f, subset)) out.push_back(f);
  }
  return out;
}

/// Rows of the triangle boundary map over the index set `edges`.
std::vector<gf2::BitRow> triangle_boundaries(const std::vector<Mask>& triangles,
                                             const std::vector<Mask>& edges) {
  std::vector<gf2::BitRow> rows;
  for (Mask t : triangles) {
    gf2::BitRow row(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (inside(edges[k], t)) row.set(k);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Reduced homology ranks H~_0, H~_1, H~_2 of the subcomplex induced on a
/// nonempty vertex mask.
std::array<std::size_t, 3> reduced_ranks(const MaskComplex& mc, Mask subset) {
  const auto vertices = static_cast<std::size_t>(std::popcount(subset));
  const auto edges = restrict_to(mc.edges, subset);
  const auto tris = restrict_to(mc.triangles, subset);
  const std::size_t rank1 = rank_masks(edges);
  const std::size_t rank2 = tris.empty() ? 0 : gf2::rank(triangle_boundaries(tris, edges));
  return {vertices - 1 - rank1, edges.size() - rank1 - rank2, tris.size() - rank2};
}

BettiTable hochster_sum(const MaskComplex& mc) {
  // counts[j][r]: subsets of size j contributing rank H~_r
  std::vector<std::array<std::uint64_t, 3>> counts(mc.n + 1, {0, 0, 0});
  const Mask full = mc.n == 64 ? ~Mask{0} : (Mask{1} << mc.n) - 1;
  for (Mask subset = 1; subset != 0 && subset <= full; ++subset) {
    const auto size = static_cast<std::size_t>(std::popcount(subset));
    const auto ranks = reduced_ranks(mc, subset);
    for (std::size_t r = 0; r < 3; ++r) counts[size][r] += ranks[r];
    if (subset == full) break;
  }
  BettiTable table = BettiTable::unit();
  for (std::size_t size = 1; size <= mc.n; ++size) {
    for (std::size_t r = 0; r < 3; ++r) {
      if (counts[size][r] == 0) continue;
      const int i = static_cast<int>(size) - static_cast<int>(r) - 1;
      table.add(i, static_cast<int>(size), BigInt(counts[size][r]));
    }
  }
  return table;
}

/// Lift an indicator vector over `from` faces onto the index set `to`.
gf2::BitRow lift(const gf2::BitRow& combo, const std::vector<Mask>& from, const std::vector<Mask>& to) {
  gf2::BitRow row(to.size());
  for (std::size_t k = 0; k < from.size(); ++k) {
    if (!combo.test(k)) continue;
    auto it = std::find(to.begin(), to.end(), from[k]);
    row.flip(static_cast<std::size_t>(it - to.begin()));
  }
  return row;
}

/// rank(cycles of sub + boundaries of super) - rank(boundaries of super)
std::size_t map_rank_masked(const MaskComplex& sub, const MaskComplex& super, Mask subset, int degree) {
  if (degree == -1) return subset == 0 ? 1 : 0;
  if (subset == 0) return 0;
  switch (degree) {
    case 0: {
      std::vector<Mask> boundaries = restrict_to(super.edges, subset);
      const std::size_t base = rank_masks(boundaries);
      const int first = std::countr_zero(subset);
      for (Mask rest = subset & (subset - 1); rest != 0; rest &= rest - 1) {
        boundaries.push_back((Mask{1} << first) | (rest & -rest));
      }
      return rank_masks(boundaries) - base;
    }
    case 1: {
      const auto sub_edges = restrict_to(sub.edges, subset);
      const auto super_edges = restrict_to(super.edges, subset);
      std::vector<gf2::BitRow> d1;
      for (Mask e : sub_edges) {
        gf2::BitRow row(super.n);
        for (Mask bits = e; bits != 0; bits &= bits - 1) row.set(static_cast<std::size_t>(std::countr_zero(bits)));
        d1.push_back(std::move(row));
      }
      auto rows = triangle_boundaries(restrict_to(super.triangles, subset), super_edges);
      const std::size_t base = gf2::rank(rows);
      for (const auto& cycle : gf2::kernel_basis(d1)) rows.push_back(lift(cycle, sub_edges, super_edges));
      return gf2::rank(rows) - base;
    }
    case 2: {
      const auto sub_tris = restrict_to(sub.triangles, subset);
      const auto super_tris = restrict_to(super.triangles, subset);
      const auto d2 = triangle_boundaries(sub_tris, restrict_to(sub.edges, subset));
      std::vector<gf2::BitRow> rows;
      for (const auto& cycle : gf2::kernel_basis(d2)) rows.push_back(lift(cycle, sub_tris, super_tris));
      return gf2::rank(rows);
    }
    default:
      raise(ErrorCode::kArgument, "induced_map_rank: degree must lie in -1..2");
  }
}

bool is_subcomplex(const MaskComplex& sub, const MaskComplex& super) {
  auto covered = [](const std::vector<Mask>& a, const std::vector<Mask>& b) {
    return std::all_of(a.begin(), a.end(),
                       [&](Mask f) { return std::find(b.begin(), b.end(), f) != b.end(); });
  };
  return covered(sub.edges, super.edges) && covered(sub.triangles, super.triangles);
}

}  // namespace

BettiTable graded_betti_bruteforce(const SimplicialComplex& complex, const OracleOptions& options) {
  check_cap(complex.vertices().size(), options);
  return hochster_sum(to_masks(complex, complex.vertices()));
}

BettiTable graded_betti_bruteforce(const GapGraph& graph, const OracleOptions& options) {
  check_cap(graph.vertex_count(), options);
  return hochster_sum(to_masks(graph));
}

PersistencePair::PersistencePair(double eps_lo, double eps_hi) : lo_(eps_lo), hi_(eps_hi) {
  if (!std::isfinite(lo_) || !std::isfinite(hi_) || lo_ < 0.0 || lo_ > hi_) {
    raise(ErrorCode::kArgument, "PersistencePair: need 0 <= eps_lo <= eps_hi");
  }
}

BettiTable persistent_graded_betti_bruteforce(const PositionCloud& cloud, const PersistencePair& pair,
                                              const OracleOptions& options) {
  check_cap(cloud.size(), options);
  const MaskComplex sub = to_masks(build_vr1(cloud, pair.lo()));
  const MaskComplex super = to_masks(build_vr1(cloud, pair.hi()));
  const std::size_t n = cloud.size();

  std::vector<std::array<std::uint64_t, 3>> counts(n + 1, {0, 0, 0});
  const Mask full = (Mask{1} << n) - 1;
  for (Mask subset = 1; n > 0 && subset <= full; ++subset) {
    const auto size = static_cast<std::size_t>(std::popcount(subset));
    for (int degree = 0; degree <= 1; ++degree) {
      counts[size][static_cast<std::size_t>(degree)] += map_rank_masked(sub, super, subset, degree);
    }
  }
  BettiTable table = BettiTable::unit();
  for (std::size_t size = 1; size <= n; ++size) {
    for (std::size_t r = 0; r < 3; ++r) {
      if (counts[size][r] == 0) continue;
      table.add(static_cast<int>(size) - static_cast<int>(r) - 1, static_cast<int>(size),
                BigInt(counts[size][r]));
    }
  }
  return table;
}

std::size_t induced_map_rank(const SimplicialComplex& sub, const SimplicialComplex& super, int degree) {
  const auto& order = super.vertices();
  if (order.size() > 64) raise(ErrorCode::kArgument, "induced_map_rank: more than 64 vertices");
  if (sub.vertices() != order) {
    raise(ErrorCode::kArgument, "induced_map_rank: complexes must share the vertex set");
  }
  const MaskComplex a = to_masks(sub, order);
  const MaskComplex b = to_masks(super, order);
  if (!is_subcomplex(a, b)) raise(ErrorCode::kArgument, "induced_map_rank: not a subcomplex");
  const Mask full = order.size() == 64 ? ~Mask{0} : (Mask{1} << order.size()) - 1;
  return map_rank_masked(a, b, full, degree);
}

}  // namespace gbnl
