#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "complexes.hpp"
#include "gbnl/error.hpp"
#include "gbnl/simplex.hpp"
#include "reference.hpp"

using namespace gbnl;
using gbnl::testing::square_bipyramid;
using gbnl::testing::tetrahedron_missing_face;

namespace {

std::size_t cycle_rank(const GapGraph& g) {
  return static_cast<std::size_t>(g.edge_count()) - g.vertex_count() + g.component_count();
}

}  // namespace

TEST_CASE("build_vr1 on the reference A cloud") {
  const PositionCloud a({5, 6, 18, 20, 21});
  auto g13 = build_vr1(a, 13);
  CHECK(g13.threshold() == 13);
  CHECK(g13.edge_count() == 6);
  CHECK(cycle_rank(g13) == 2);

  auto g20 = build_vr1(a, 20);
  CHECK(g20.edge_count() == 10);
  CHECK(cycle_rank(g20) == 6);

  auto single = build_vr1(PositionCloud({7}), 0);
  CHECK(single.edge_count() == 0);
  CHECK(single.component_count() == 1);

  CHECK(build_vr1(a, 13.9).threshold() == 13);
  CHECK_THROWS_AS(build_vr1(a, -0.5), Error);
}

TEST_CASE("induced subgraphs and subcomplexes") {
  const PositionCloud k5({1, 2, 3, 4, 5});
  auto complete = build_vr1(k5, 10);
  auto tri = complete.induced(std::vector<Position>{1, 3, 5});
  CHECK(tri.edge_count() == 3);

  auto path = build_vr1(PositionCloud({1, 2, 3}), 1);
  auto ends = path.induced(std::vector<Position>{1, 3});
  CHECK(ends.edge_count() == 0);
  CHECK(ends.component_count() == 2);
  CHECK_THROWS_AS(path.induced(std::vector<Position>{4}), Error);

  auto t = tetrahedron_missing_face();
  CHECK(t.induced(std::vector<Vertex>{}).empty());
  CHECK(t.induced(t.vertices()) == t);
  auto base = t.induced(std::vector<Vertex>{1, 2, 3});
  CHECK(base.face_count(1) == 3);
  CHECK(base.face_count(2) == 0);
  CHECK_THROWS_AS(t.induced(std::vector<Vertex>{9}), Error);
}

TEST_CASE("reduced homology of the fixture complexes") {
  CHECK(reduced_homology_ranks(tetrahedron_missing_face()) == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(reduced_homology_ranks(square_bipyramid()) == std::vector<std::size_t>{0, 0, 0, 1});
  std::vector<Face> point{{7}};
  CHECK(reduced_homology_ranks(SimplicialComplex::from_faces(point)) == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(reduced_homology_ranks(SimplicialComplex{}) == std::vector<std::size_t>{1, 0, 0, 0});
  // hollow triangle and two points
  std::vector<Face> circle{{0, 1}, {1, 2}, {0, 2}};
  CHECK(reduced_homology_ranks(SimplicialComplex::from_faces(circle)) == std::vector<std::size_t>{0, 0, 1, 0});
  std::vector<Face> two{{0}, {1}};
  CHECK(reduced_homology_ranks(SimplicialComplex::from_faces(two), 0) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("Euler relation on random complexes") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    auto c = testing::random_complex(rng, n, 0.5, 0.5);
    auto ranks = reduced_homology_ranks(c);
    const long euler = static_cast<long>(c.face_count(0)) - static_cast<long>(c.face_count(1)) +
                       static_cast<long>(c.face_count(2));
    const long homology = static_cast<long>(ranks[1]) - static_cast<long>(ranks[2]) + static_cast<long>(ranks[3]);
    CHECK(euler == 1 + homology);
    CHECK(c.induced(c.vertices()) == c);
  }
}

TEST_CASE("minimal nonfaces") {
  auto t = minimal_nonfaces(tetrahedron_missing_face());
  CHECK(t == std::vector<Face>{{1, 2, 3}});

  auto b = minimal_nonfaces(square_bipyramid());
  CHECK(b == std::vector<Face>{{0, 5}, {1, 3}, {2, 4}});

  std::vector<Position> run(35);
  for (std::size_t k = 0; k < run.size(); ++k) run[k] = static_cast<Position>(k + 1);
  auto k35 = minimal_nonfaces(build_vr1(PositionCloud(run), 34));
  CHECK(k35.size() == 6545);
  CHECK(std::all_of(k35.begin(), k35.end(), [](const Face& f) { return f.size() == 3; }));

  // hollow tetrahedron (all four triangles, no solid): the 4-set is minimal
  std::vector<Face> hollow{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  CHECK(minimal_nonfaces(SimplicialComplex::from_faces(hollow)) == std::vector<Face>{{0, 1, 2, 3}});
}

TEST_CASE("gap graph properties against BFS") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = 1 + rng() % 12;
    auto cloud = testing::random_cloud(rng, n, 40);
    const auto k = static_cast<Position>(rng() % 12);
    GapGraph g(cloud, k);

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (g.adjacent(a, b)) edges.emplace_back(a, b);
      }
    }
    CHECK(g.edge_count() == static_cast<std::int64_t>(edges.size()));
    CHECK(g.component_count() == testing::bfs_components(n, edges));

    auto nonfaces = minimal_nonfaces(g);
    for (const auto& f : nonfaces) CHECK((f.size() == 2 || f.size() == 3));
    // every non-edge pair appears exactly once
    const auto pairs = std::count_if(nonfaces.begin(), nonfaces.end(), [](const Face& f) { return f.size() == 2; });
    CHECK(static_cast<std::size_t>(pairs) == n * (n - 1) / 2 - edges.size());

    CHECK(g.to_complex().face_count(1) == edges.size());
  }
}

TEST_CASE("complex text format") {
  std::ifstream in(std::string(GBNL_TEST_DATA) + "/square_bipyramid.complex");
  REQUIRE(in);
  auto c = read_complex(in);
  CHECK(c == square_bipyramid());

  std::stringstream round;
  write_complex(round, c);
  CHECK(read_complex(round) == c);

  std::istringstream bad("0 1\n2 x\n");
  CHECK_THROWS_AS(read_complex(bad), Error);
  std::istringstream too_big("0 1 2 3\n");
  CHECK_THROWS_AS(read_complex(too_big), Error);
}
