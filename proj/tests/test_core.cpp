#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace hyclique;
using testing_support::load_fixture;

namespace {

bool double_loop_clique(const Hypergraph& h) {
  for (const auto& a : h.edges()) {
    for (const auto& b : h.edges()) {
      bool shared = false;
      for (Vertex x : a) {
        for (Vertex y : b) shared = shared || x == y;
      }
      if (!shared) return false;
    }
  }
  return true;
}

const char* const kCliqueFixtures[] = {"fano.hg", "triangle.hg", "star.hg", "four_edge.hg", "complete_4_of_7.hg",
                                       "duplicate.hg"};

}  // namespace

TEST(Parse, Triangle) {
  auto parsed = parse_hypergraph("uniform 2 vertices 3\n0 1\n0 2\n1 2\n");
  EXPECT_EQ(parsed.graph.uniformity(), 2u);
  EXPECT_EQ(parsed.graph.vertex_count(), 3u);
  EXPECT_EQ(parsed.graph.edge_count(), 3u);
  EXPECT_EQ(parsed.duplicate_warnings, 0u);
}

TEST(Parse, FanoFixture) {
  auto h = load_fixture("fano.hg");
  EXPECT_EQ(h.uniformity(), 3u);
  EXPECT_EQ(h.vertex_count(), 7u);
  EXPECT_EQ(h.edge_count(), 7u);
}

TEST(Parse, DuplicateEdgesAreMergedAndCounted) {
  auto parsed = parse_hypergraph("uniform 2 vertices 2\n0 1\n0 1\n");
  EXPECT_EQ(parsed.graph.edge_count(), 1u);
  EXPECT_EQ(parsed.duplicate_warnings, 1u);
  auto reordered = parse_hypergraph("uniform 2 vertices 3\n0 1\n1 0\n");
  EXPECT_EQ(reordered.duplicate_warnings, 1u);
}

TEST(Parse, CommentsBlankLinesAndCrlf) {
  auto parsed = parse_hypergraph("# a triangle\r\n\r\nuniform 2 vertices 3   # header\r\n0 1\r\n\n0 2\r\n1 2\r\n");
  EXPECT_EQ(parsed.graph, load_fixture("triangle.hg"));
}

TEST(Parse, Rejections) {
  EXPECT_THROW(parse_hypergraph("uniform 2 vertices 3\n0 1 2\n"), InputError);
  EXPECT_THROW(parse_hypergraph("uniform 2 vertices 3\n0 3\n"), InputError);
  EXPECT_THROW(parse_hypergraph("uniform 2 vertices 3\n1 1\n"), InputError);
  EXPECT_THROW(parse_hypergraph("0 1\n"), InputError);
  EXPECT_THROW(parse_hypergraph("uniform 2 vertices 3\n"), InputError);
  EXPECT_THROW(parse_hypergraph(""), InputError);
  EXPECT_THROW(parse_hypergraph("uniform 0 vertices 3\n"), InputError);
  EXPECT_THROW(parse_hypergraph("uniform 2 vertexes 3\n0 1\n"), InputError);
  EXPECT_THROW(parse_hypergraph("uniform 2 vertices 3 extra\n0 1\n"), InputError);
  EXPECT_THROW(parse_hypergraph("uniform 2 vertices 3\n0 -1\n"), InputError);
  EXPECT_THROW(parse_hypergraph("uniform 2 vertices 2000000\n0 1\n"), InputError);
  EXPECT_THROW(load_fixture("broken.hg"), InputError);
}

TEST(Parse, RenderRoundTripsOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 5;
    std::size_t v = n + rng() % 8;
    auto h = testing_support::random_hypergraph(rng, n, v, 1 + rng() % 12);
    EXPECT_EQ(parse_hypergraph(render(h)).graph, h);
  }
}

TEST(Hypergraph, DegreeSumIsUniformityTimesEdges) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto h = testing_support::random_hypergraph(rng, n, n + rng() % 10, 1 + rng() % 20);
    std::size_t sum = 0;
    for (auto d : h.degrees()) sum += d;
    EXPECT_EQ(sum, n * h.edge_count());
  }
}

TEST(Hypergraph, ConstructorValidation) {
  EXPECT_THROW(Hypergraph(2, 3, {{0, 1, 2}}), InputError);
  EXPECT_THROW(Hypergraph(2, 3, {{0, 5}}), InputError);
  EXPECT_THROW(Hypergraph(0, 3, {}), InputError);
  Hypergraph h(2, 3, {{1, 0}, {0, 1}});
  EXPECT_EQ(h.edge_count(), 1u);
  EXPECT_EQ(h.duplicates_removed(), 1u);
  EXPECT_EQ(h.edge(0), (Edge{0, 1}));
}

TEST(VertexSet, Basics) {
  VertexSet s(130, {0, 64, 129});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(64));
  EXPECT_FALSE(s.contains(63));
  s.erase(64);
  EXPECT_EQ(s.members(), (std::vector<Vertex>{0, 129}));
  EXPECT_THROW(s.insert(130), InputError);
  EXPECT_TRUE(VertexSet(10).empty());
}

TEST(Clique, Examples) {
  EXPECT_TRUE(is_clique(load_fixture("triangle.hg")).is_clique);
  EXPECT_TRUE(is_clique(load_fixture("fano.hg")).is_clique);
  auto verdict = is_clique(Hypergraph(2, 4, {{0, 1}, {2, 3}}));
  EXPECT_FALSE(verdict.is_clique);
  ASSERT_TRUE(verdict.witness.has_value());
  EXPECT_EQ(*verdict.witness, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Clique, FanoPairsShareExactlyOnePoint) {
  auto h = load_fixture("fano.hg");
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    for (std::size_t j = i + 1; j < h.edge_count(); ++j) EXPECT_EQ(intersection_size(h.edge(i), h.edge(j)), 1u);
  }
}

TEST(Clique, AgreesWithDoubleLoopOracle) {
  for (const char* name : kCliqueFixtures) {
    auto h = load_fixture(name);
    EXPECT_EQ(is_clique(h).is_clique, double_loop_clique(h)) << name;
  }
  EXPECT_FALSE(is_clique(load_fixture("disjoint.hg")).is_clique);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + rng() % 3;
    auto h = testing_support::random_hypergraph(rng, n, n + rng() % 6, 1 + rng() % 8);
    EXPECT_EQ(is_clique(h).is_clique, double_loop_clique(h));
  }
}

TEST(EdgeStats, FanoExamples) {
  auto h = load_fixture("fano.hg");
  auto one = edge_stats(h, VertexSet(7, {0}));
  EXPECT_EQ(one.containing.size(), 3u);
  EXPECT_EQ(one.meeting.size(), 3u);
  auto two = edge_stats(h, VertexSet(7, {0, 1}));
  EXPECT_EQ(two.containing.size(), 1u);
  EXPECT_EQ(two.meeting.size(), 5u);
  EXPECT_EQ(two.degree_map.at(0), 3u);
  EXPECT_EQ(count_containing(h, {0, 1}), 1u);
}

TEST(EdgeStats, EmptySetConventions) {
  auto h = load_fixture("four_edge.hg");
  auto stats = edge_stats(h, VertexSet(h.vertex_count()));
  EXPECT_EQ(stats.containing.size(), h.edge_count());
  EXPECT_TRUE(stats.meeting.empty());
  EXPECT_EQ(count_containing(h, {}), h.edge_count());
}

TEST(EdgeStats, ContainingIsSubsetOfMeeting) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + rng() % 3;
    std::size_t v = n + rng() % 6;
    auto h = testing_support::random_hypergraph(rng, n, v, 1 + rng() % 10);
    VertexSet w(v);
    w.insert(static_cast<Vertex>(rng() % v));
    for (std::size_t i = 0; i < v; ++i) {
      if (rng() % 3 == 0) w.insert(static_cast<Vertex>(i));
    }
    auto stats = edge_stats(h, w);
    for (auto i : stats.containing) {
      EXPECT_NE(std::find(stats.meeting.begin(), stats.meeting.end(), i), stats.meeting.end());
    }
    EXPECT_EQ(stats.containing.size(), count_containing(h, w.members()));
  }
}
