#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <vector>

#include "gbnl/seqdata.hpp"

namespace gbnl {

using Vertex = std::int64_t;
/// Sorted, duplicate-free vertex list.
using Face = std::vector<Vertex>;

/// Explicit simplicial complex of dimension at most 2, closed under taking
/// subsets. The complex with no vertices is the empty complex.
class SimplicialComplex {
 public:
  static constexpr int kMaxDimension = 2;

  SimplicialComplex() = default;

  /// Downward closure of `faces`. Throws kArgument on faces with more than
  /// three vertices.
  static SimplicialComplex from_faces(std::span<const Face> faces);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  /// Faces of dimension `dim` (0, 1 or 2) in lexicographic order.
  const std::vector<Face>& faces(int dim) const;
  std::size_t face_count(int dim) const { return faces(dim).size(); }
  /// Highest dimension present, -1 for the empty complex.
  int dimension() const;
  bool contains(const Face& face) const;
  bool empty() const { return vertices_.empty(); }

  /// Faces entirely inside `subset`. Throws kArgument if `subset` is not a
  /// subset of vertices().
  SimplicialComplex induced(std::span<const Vertex> subset) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.triangles_ == b.triangles_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Face> vertex_faces_;
  std::vector<Face> edges_;
  std::vector<Face> triangles_;
  std::set<Face> lookup_;
};

/// One face per line as whitespace-separated integer labels; '#' starts a
/// comment. The downward closure is taken on load.
SimplicialComplex read_complex(std::istream& in);
void write_complex(std::ostream& out, const SimplicialComplex& complex);

/// Vietoris-Rips complex of dimension one on a 1-D integer point cloud: an
/// edge joins two positions whose gap is at most the threshold K.
class GapGraph {
 public:
  GapGraph(PositionCloud cloud, Position threshold);

  const PositionCloud& cloud() const { return cloud_; }
  Position threshold() const { return threshold_; }
  std::size_t vertex_count() const { return cloud_.size(); }
  /// Adjacency by vertex index (position order).
  bool adjacent(std::size_t a, std::size_t b) const;
  std::int64_t edge_count() const;
  /// Connected components; zero for the empty graph.
  std::size_t component_count() const;
  /// Restriction to a subset of the cloud's positions. Throws kArgument if a
  /// position is not in the cloud.
  GapGraph induced(std::span<const Position> subset) const;
  SimplicialComplex to_complex() const;

 private:
  PositionCloud cloud_;
  Position threshold_;
};

/// VR(1) graph at scale epsilon, threshold floor(epsilon). Throws kArgument
/// for negative or non-finite epsilon.
GapGraph build_vr1(const PositionCloud& cloud, double epsilon);

/// Ranks of reduced homology over GF(2) for r = -1..max_dim; element k holds
/// r = k - 1. Only the empty complex has a nonzero rank in degree -1.
std::vector<std::size_t> reduced_homology_ranks(const SimplicialComplex& complex, int max_dim = 2);

/// Inclusion-minimal non-faces, sorted by size then lexicographically.
std::vector<Face> minimal_nonfaces(const SimplicialComplex& complex);
/// For a graph: non-adjacent pairs and triangles (no 2-faces are filled).
std::vector<Face> minimal_nonfaces(const GapGraph& graph);

}  // namespace gbnl
