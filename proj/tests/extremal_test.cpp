#include <catch_amalgamated.hpp>

#include "antitree/anticonnect.hpp"
#include "antitree/embed.hpp"
#include "antitree/extremal.hpp"

using namespace antitree;

TEST_CASE("spider construction") {
  const auto s3 = spider(3);
  CHECK(s3.order() == 4);
  for (Vertex v = 1; v < 4; ++v) CHECK(s3.parent(v) == 0);
  CHECK(s3.out_degree(0) == 3);

  const auto s6 = spider(6);
  CHECK(s6.order() == 7);
  CHECK(s6.degree(0) == 3);
  int leaves = 0;
  for (Vertex v = 0; v < 7; ++v) leaves += s6.degree(v) == 1;
  CHECK(leaves == 3);
  CHECK_THROWS_AS(spider(4), std::invalid_argument);
}

TEST_CASE("two cliques construction") {
  const Digraph d3 = two_cliques_construction(3);
  CHECK(d3.order() == 3);
  CHECK(d3.size() == 4);
  CHECK_FALSE(d3.has_arc(1, 2));

  const Digraph d6 = two_cliques_construction(6);
  CHECK(d6.order() == 7);
  CHECK(min_semidegree(d6) == 3);

  const Digraph d9 = two_cliques_construction(9);
  CHECK(d9.order() == 11);
  CHECK(min_semidegree(d9) == 5);
  CHECK_THROWS_AS(two_cliques_construction(5), std::invalid_argument);
}

TEST_CASE("digon chain antiwalk lengths") {
  for (int k = 1; k <= 3; ++k) {
    const Digraph d = digon_chain(k);
    const int n = 2 * k + 1;
    CHECK(d.order() == n);
    const auto w = shortest_antiwalk(d, 0, Role::In, n - 1, Role::Out);
    REQUIRE(w);
    CHECK(static_cast<int>(w->states.size()) == 2 * n);
    CHECK(is_valid_antiwalk(d, *w));
  }
}

TEST_CASE("random generators are deterministic") {
  CHECK(random_digraph(8, 0.3, 42) == random_digraph(8, 0.3, 42));
  CHECK(random_digraph(5, 1.0, 1).size() == 20);
  CHECK(random_digraph(5, 0.0, 1).size() == 0);
  CHECK_THROWS_AS(random_digraph(5, 1.5, 1), std::invalid_argument);
}

TEST_CASE("tightness of the two-clique host") {
  for (int k : {3, 6, 9}) {
    const auto t = spider(k);
    const Digraph host = two_cliques_construction(k);
    CHECK_FALSE(embed(t, host));
    CHECK_FALSE(embed(reverse(t), host));
    CHECK_FALSE(embed_undirected(t, host));
  }
}
