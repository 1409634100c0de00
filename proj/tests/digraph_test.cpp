#include <catch_amalgamated.hpp>

#include <set>

#include "antitree/digraph.hpp"
#include "antitree/extremal.hpp"

using namespace antitree;

namespace {

Digraph e1() { return Digraph(6, std::vector<Arc>{{0, 1}, {2, 1}, {2, 3}, {3, 4}, {5, 4}}); }

// plain adjacency matrix recount
struct Matrix {
  std::vector<std::vector<int>> a;
  explicit Matrix(const Digraph& d) : a(static_cast<std::size_t>(d.order()), std::vector<int>(static_cast<std::size_t>(d.order()), 0)) {
    for (const auto& [u, v] : d.arcs()) a[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
  }
  int out(int v) const {
    int c = 0;
    for (int x : a[static_cast<std::size_t>(v)]) c += x;
    return c;
  }
  int in(int v) const {
    int c = 0;
    for (const auto& row : a) c += row[static_cast<std::size_t>(v)];
    return c;
  }
};

}  // namespace

TEST_CASE("degree profile of small digraphs") {
  const Digraph digon(2, std::vector<Arc>{{0, 1}, {1, 0}});
  auto p = degree_profile(digon);
  CHECK(p.min_semidegree == 1);
  CHECK(p.max_degree == 1);

  p = degree_profile(Digraph(5));
  CHECK(p.min_semidegree == 0);
  CHECK(p.max_degree == 0);

  p = degree_profile(e1());
  CHECK(p.min_semidegree == 0);
  CHECK(p.max_out_degree == 2);
  CHECK(p.max_in_degree == 2);
  CHECK(p.max_degree == 2);
  CHECK(p.out_degree[2] == 2);
  CHECK(p.in_degree[1] == 2);
  CHECK(p.in_degree[4] == 2);
}

TEST_CASE("rejects loops and bad vertices, merges repeated arcs") {
  CHECK_THROWS_AS(Digraph(3, std::vector<Arc>{{1, 1}}), std::invalid_argument);
  CHECK(Digraph(3, std::vector<Arc>{{0, 1}, {0, 1}}).size() == 1);
  CHECK_THROWS_AS(Digraph(3, std::vector<Arc>{{0, 3}}), std::invalid_argument);
  CHECK_THROWS(Digraph(-1));
}

TEST_CASE("reverse") {
  const Digraph one(2, std::vector<Arc>{{0, 1}});
  CHECK(reverse(one).has_arc(1, 0));
  CHECK_FALSE(reverse(one).has_arc(0, 1));
  const Digraph digon(2, std::vector<Arc>{{0, 1}, {1, 0}});
  CHECK(reverse(digon) == digon);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Digraph d = random_digraph(1 + static_cast<int>(seed % 9), 0.4, seed);
    CHECK(reverse(reverse(d)) == d);
  }
}

TEST_CASE("underlying graph") {
  const Digraph digon(2, std::vector<Arc>{{0, 1}, {1, 0}});
  CHECK(underlying_graph(digon).size() == 1);
  CHECK(underlying_graph(e1()).size() == 5);
  CHECK(underlying_graph(Digraph(0)).size() == 0);
  CHECK(digon_digraph(underlying_graph(e1())).size() == 10);
}

TEST_CASE("induced subdigraph") {
  CHECK(induced_subdigraph(e1(), {}).graph.order() == 0);
  const auto all = induced_subdigraph(e1(), {0, 1, 2, 3, 4, 5});
  CHECK(all.graph == e1());
  const auto s = induced_subdigraph(e1(), {2, 3, 4});
  REQUIRE(s.graph.size() == 2);
  std::set<Arc> back;
  for (const auto& [u, v] : s.graph.arcs()) back.insert({s.original[static_cast<std::size_t>(u)], s.original[static_cast<std::size_t>(v)]});
  CHECK(back == std::set<Arc>{{2, 3}, {3, 4}});
  CHECK(s.local(3) == 1);
  CHECK(s.local(0) == -1);
}

TEST_CASE("degree sums and matrix recount on random digraphs") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int n = 1 + static_cast<int>(seed % 12);
    const Digraph d = random_digraph(n, 0.3, seed);
    const Matrix m(d);
    const auto p = degree_profile(d);
    long so = 0, si = 0;
    int delta = n > 0 ? n : 0;
    for (Vertex v = 0; v < n; ++v) {
      REQUIRE(p.out_degree[static_cast<std::size_t>(v)] == m.out(v));
      REQUIRE(p.in_degree[static_cast<std::size_t>(v)] == m.in(v));
      so += m.out(v);
      si += m.in(v);
      delta = std::min({delta, m.out(v), m.in(v)});
    }
    CHECK(so == static_cast<long>(d.size()));
    CHECK(si == static_cast<long>(d.size()));
    CHECK(p.min_semidegree == delta);
  }
}

TEST_CASE("complete digraph") {
  const Digraph k4 = complete_digraph(4);
  CHECK(k4.size() == 12);
  CHECK(min_semidegree(k4) == 3);
}

TEST_CASE("min semidegree generator meets its target") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 3 + static_cast<int>(seed % 10);
    const int delta = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(n - 1));
    const Digraph d = random_digraph_min_semidegree(n, delta, seed);
    CHECK(min_semidegree(d) >= delta);
    CHECK(random_digraph_min_semidegree(n, delta, seed) == d);
  }
  CHECK_THROWS_AS(random_digraph_min_semidegree(3, 3, 1), std::invalid_argument);
}
