#include "gbnl/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "gbnl/error.hpp"
#include "gbnl/gf2.hpp"

namespace gbnl {

namespace {

const std::vector<Face> kNoFaces;

bool by_size_then_lex(const Face& a, const Face& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_faces(std::span<const Face> faces) {
  SimplicialComplex c;
  for (Face f : faces) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.size() > 3) raise(ErrorCode::kArgument, "complex: faces are limited to dimension 2");
    if (f.empty()) continue;
    // all nonempty subsets of f
    const unsigned full = 1u << f.size();
    for (unsigned mask = 1; mask < full; ++mask) {
      Face sub;
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (mask & (1u << k)) sub.push_back(f[k]);
      }
      c.lookup_.insert(std::move(sub));
    }
  }
  for (const auto& f : c.lookup_) {
    switch (f.size()) {
      case 1: c.vertices_.push_back(f[0]); c.vertex_faces_.push_back(f); break;
      case 2: c.edges_.push_back(f); break;
      default: c.triangles_.push_back(f); break;
    }
  }
  return c;
}

const std::vector<Face>& SimplicialComplex::faces(int dim) const {
  switch (dim) {
    case 0: return vertex_faces_;
    case 1: return edges_;
    case 2: return triangles_;
    default: return kNoFaces;
  }
}

int SimplicialComplex::dimension() const {
  if (!triangles_.empty()) return 2;
  if (!edges_.empty()) return 1;
  return vertices_.empty() ? -1 : 0;
}

bool SimplicialComplex::contains(const Face& face) const {
  if (face.empty()) return true;
  Face sorted = face;
  std::sort(sorted.begin(), sorted.end());
  return lookup_.count(sorted) != 0;
}

SimplicialComplex SimplicialComplex::induced(std::span<const Vertex> subset) const {
  std::set<Vertex> keep(subset.begin(), subset.end());
  for (Vertex v : keep) {
    if (!std::binary_search(vertices_.begin(), vertices_.end(), v)) {
      raise(ErrorCode::kArgument, "induced: vertex " + std::to_string(v) + " not in complex");
    }
  }
  std::vector<Face> kept;
  for (const auto& f : lookup_) {
    if (std::all_of(f.begin(), f.end(), [&](Vertex v) { return keep.count(v) != 0; })) {
      kept.push_back(f);
    }
  }
  return from_faces(kept);
}

SimplicialComplex read_complex(std::istream& in) {
  std::vector<Face> faces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    Face face;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        face.push_back(std::stoll(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        raise(ErrorCode::kConfig, "complex: bad vertex label '" + token + "' on line " +
                                      std::to_string(line_no));
      }
    }
    if (!face.empty()) faces.push_back(std::move(face));
  }
  return SimplicialComplex::from_faces(faces);
}

void write_complex(std::ostream& out, const SimplicialComplex& complex) {
  for (int dim = 0; dim <= SimplicialComplex::kMaxDimension; ++dim) {
    for (const auto& f : complex.faces(dim)) {
      for (std::size_t k = 0; k < f.size(); ++k) out << (k ? " " : "") << f[k];
      out << '\n';
    }
  }
}

GapGraph::GapGraph(PositionCloud cloud, Position threshold)
    : cloud_(std::move(cloud)), threshold_(threshold) {
  if (threshold_ < 0) raise(ErrorCode::kArgument, "GapGraph: negative threshold");
}

bool GapGraph::adjacent(std::size_t a, std::size_t b) const {
  if (a == b) return false;
  return std::abs(cloud_[a] - cloud_[b]) <= threshold_;
}

std::int64_t GapGraph::edge_count() const {
  std::int64_t edges = 0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < cloud_.size(); ++hi) {
    while (cloud_[hi] - cloud_[lo] > threshold_) ++lo;
    edges += static_cast<std::int64_t>(hi - lo);
  }
  return edges;
}

std::size_t GapGraph::component_count() const {
  if (cloud_.empty()) return 0;
  std::size_t components = 1;
  for (std::size_t k = 1; k < cloud_.size(); ++k) {
    if (cloud_[k] - cloud_[k - 1] > threshold_) ++components;
  }
  return components;
}

GapGraph GapGraph::induced(std::span<const Position> subset) const {
  std::vector<Position> kept(subset.begin(), subset.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  auto all = cloud_.positions();
  for (Position p : kept) {
    if (!std::binary_search(all.begin(), all.end(), p)) {
      raise(ErrorCode::kArgument, "induced: position " + std::to_string(p) + " not in cloud");
    }
  }
  return GapGraph(PositionCloud(std::move(kept)), threshold_);
}

SimplicialComplex GapGraph::to_complex() const {
  std::vector<Face> faces;
  for (std::size_t a = 0; a < cloud_.size(); ++a) {
    faces.push_back({cloud_[a]});
    for (std::size_t b = a + 1; b < cloud_.size(); ++b) {
      if (adjacent(a, b)) faces.push_back({cloud_[a], cloud_[b]});
    }
  }
  return SimplicialComplex::from_faces(faces);
}

GapGraph build_vr1(const PositionCloud& cloud, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    raise(ErrorCode::kArgument, "build_vr1: epsilon must be finite and non-negative");
  }
  return GapGraph(cloud, static_cast<Position>(std::floor(epsilon)));
}

std::vector<std::size_t> reduced_homology_ranks(const SimplicialComplex& complex, int max_dim) {
  if (max_dim < -1 || max_dim > SimplicialComplex::kMaxDimension) {
    raise(ErrorCode::kArgument, "reduced_homology_ranks: max_dim must lie in -1..2");
  }
  const auto& verts = complex.vertices();
  const auto& edges = complex.faces(1);
  const auto& tris = complex.faces(2);

  std::map<Vertex, std::size_t> vertex_index;
  for (std::size_t k = 0; k < verts.size(); ++k) vertex_index[verts[k]] = k;
  std::map<Face, std::size_t> edge_index;
  for (std::size_t k = 0; k < edges.size(); ++k) edge_index[edges[k]] = k;

  std::vector<gf2::BitRow> d1;
  for (const auto& e : edges) {
    gf2::BitRow row(verts.size());
    row.set(vertex_index.at(e[0]));
    row.set(vertex_index.at(e[1]));
    d1.push_back(std::move(row));
  }
  std::vector<gf2::BitRow> d2;
  for (const auto& t : tris) {
    gf2::BitRow row(edges.size());
    row.set(edge_index.at({t[0], t[1]}));
    row.set(edge_index.at({t[0], t[2]}));
    row.set(edge_index.at({t[1], t[2]}));
    d2.push_back(std::move(row));
  }
  const std::size_t augmentation = verts.empty() ? 0 : 1;
  const std::size_t rank1 = gf2::rank(d1);
  const std::size_t rank2 = gf2::rank(d2);

  std::vector<std::size_t> ranks;
  ranks.push_back(1 - augmentation);
  if (max_dim >= 0) ranks.push_back(verts.size() - augmentation - rank1);
  if (max_dim >= 1) ranks.push_back(edges.size() - rank1 - rank2);
  if (max_dim >= 2) ranks.push_back(tris.size() - rank2);
  return ranks;
}

std::vector<Face> minimal_nonfaces(const SimplicialComplex& complex) {
  const auto& v = complex.vertices();
  const std::size_t n = v.size();
  std::vector<Face> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!complex.contains({v[a], v[b]})) {
        out.push_back({v[a], v[b]});
        continue;
      }
      for (std::size_t c = b + 1; c < n; ++c) {
        if (!complex.contains({v[a], v[c]}) || !complex.contains({v[b], v[c]})) continue;
        if (!complex.contains({v[a], v[b], v[c]})) {
          out.push_back({v[a], v[b], v[c]});
          continue;
        }
        // no 3-faces exist, so a 4-set is a minimal nonface iff its four
        // triangles are all present
        for (std::size_t d = c + 1; d < n; ++d) {
          if (complex.contains({v[a], v[b], v[d]}) && complex.contains({v[a], v[c], v[d]}) &&
              complex.contains({v[b], v[c], v[d]})) {
            out.push_back({v[a], v[b], v[c], v[d]});
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), by_size_then_lex);
  return out;
}

std::vector<Face> minimal_nonfaces(const GapGraph& graph) {
  const auto& cloud = graph.cloud();
  const std::size_t n = cloud.size();
  std::vector<Face> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!graph.adjacent(a, b)) {
        out.push_back({cloud[a], cloud[b]});
        continue;
      }
      for (std::size_t c = b + 1; c < n; ++c) {
        if (graph.adjacent(a, c) && graph.adjacent(b, c)) out.push_back({cloud[a], cloud[b], cloud[c]});
      }
    }
  }
  std::sort(out.begin(), out.end(), by_size_then_lex);
  return out;
}

}  // namespace gbnl
