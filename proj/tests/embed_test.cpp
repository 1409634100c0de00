#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "antitree/embed.hpp"
#include "antitree/extremal.hpp"
#include "antitree/tree_gen.hpp"

using namespace antitree;

namespace {

Digraph e1() { return Digraph(6, {{0, 1}, {2, 1}, {2, 3}, {3, 4}, {5, 4}}); }

// tries every injection via permutations of host vertices
bool naive_contains(const RootedOrientedForest& g, const Digraph& d, const EmbedConstraints& c = {}) {
  const int n = d.order(), m = g.order();
  if (m > n) return false;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const auto arcs = g.arcs();
  do {
    Embedding phi{std::vector<Vertex>(perm.begin(), perm.begin() + m)};
    bool ok = true;
    for (const auto& [u, v] : arcs)
      if (!d.has_arc(phi.image[static_cast<std::size_t>(u)], phi.image[static_cast<std::size_t>(v)])) {
        ok = false;
        break;
      }
    for (Vertex u : c.forbidden)
      if (std::find(phi.image.begin(), phi.image.end(), u) != phi.image.end()) ok = false;
    if (ok && c.allowed_images)
      for (Vertex r : g.roots())
        if (std::find(c.allowed_images->begin(), c.allowed_images->end(), phi.image[static_cast<std::size_t>(r)]) ==
            c.allowed_images->end())
          ok = false;
    if (ok) return true;
    std::reverse(perm.begin() + m, perm.end());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("small embeddings") {
  const auto arc = tree_from_arcs(2, {{0, 1}}, 0);
  const Digraph digon(2, {{0, 1}, {1, 0}});
  const auto phi = embed(arc, digon);
  REQUIRE(phi);
  CHECK(verify_embedding(arc, digon, *phi));

  const auto path = antidirected_path(4);
  const auto e = embed(path, e1());
  REQUIRE(e);
  CHECK(verify_embedding(path, e1(), *e));
  const Embedding expected{{0, 1, 2, 3}};
  CHECK(verify_embedding(path, e1(), expected));
}

TEST_CASE("verify_embedding rejects bad maps") {
  const auto path = antidirected_path(4);
  CHECK_FALSE(verify_embedding(path, e1(), Embedding{{0, 1, 0, 3}}));
  // arc 0→1 of the guest onto host pair (1,0), which is not an arc
  CHECK_FALSE(verify_embedding(path, e1(), Embedding{{1, 0, 2, 3}}));
  CHECK_FALSE(verify_embedding(path, e1(), Embedding{{0, 1, 2}}));
  EmbedConstraints c;
  c.forbidden = {3};
  CHECK_FALSE(verify_embedding(path, e1(), Embedding{{0, 1, 2, 3}}, c));
}

TEST_CASE("constraints are honoured") {
  const Digraph k4 = complete_digraph(5);
  const auto path = antidirected_path(3);
  EmbedConstraints c;
  c.forbidden = {0, 1};
  c.allowed_images = std::vector<Vertex>{4};
  c.pinned = {{1, 2}};
  const auto phi = embed(path, k4, c);
  REQUIRE(phi);
  CHECK(phi->image[0] == 4);
  CHECK(phi->image[1] == 2);
  CHECK(verify_embedding(path, k4, *phi, c));
}

TEST_CASE("spider is not in the two-clique host") {
  CHECK_FALSE(embed(spider(6), two_cliques_construction(6)));
  CHECK_FALSE(embed(reverse(spider(6)), two_cliques_construction(6)));
  CHECK_FALSE(embed_undirected(spider(6), two_cliques_construction(6)));
  CHECK(embed(spider(6), complete_digraph(7)));
}

TEST_CASE("exact search agrees with the naive oracle") {
  int yes = 0, no = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int tn = 1 + static_cast<int>(seed % 6);
    const int dn = 2 + static_cast<int>(seed % 7);
    const auto t = random_oriented_tree(tn, seed);
    const Digraph d = random_digraph(dn, 0.35, seed * 7 + 1);
    EmbedConstraints c;
    if (seed % 3 == 0) c.forbidden = {0};
    if (seed % 4 == 1) c.allowed_images = std::vector<Vertex>{dn - 1, dn - 2};
    const auto phi = embed(t, d, c);
    const bool expect = naive_contains(t, d, c);
    REQUIRE(phi.has_value() == expect);
    if (phi) {
      CHECK(verify_embedding(t, d, *phi, c));
      ++yes;
    } else {
      ++no;
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("forest guests") {
  const RootedOrientedForest two_arcs({-1, 0, -1, 2}, {false, true, false, false});
  const Digraph d(4, {{0, 1}, {3, 2}});
  const auto phi = embed(two_arcs, d);
  REQUIRE(phi);
  CHECK(verify_embedding(two_arcs, d, *phi));
  CHECK_FALSE(embed(two_arcs, Digraph(4, {{0, 1}, {2, 1}})));
}

TEST_CASE("containment of every balanced antidirected tree") {
  const auto one = contains_all_balanced_antidirected(Digraph(3, {{0, 1}}), 1, 1);
  CHECK(one.contains_all);
  CHECK_FALSE(contains_all_balanced_antidirected(Digraph(3), 1, 1).contains_all);

  const auto k4 = contains_all_balanced_antidirected(complete_digraph(4), 3, 3);
  CHECK(k4.contains_all);
  CHECK(k4.trees_checked > 0);

  const auto v = contains_all_balanced_antidirected(two_cliques_construction(6), 5, 3);
  if (!v.contains_all) {
    REQUIRE(v.counterexample);
    CHECK(is_balanced_antidirected(*v.counterexample));
    CHECK_FALSE(embed(*v.counterexample, two_cliques_construction(6)));
  }
  CHECK_THROWS_AS(contains_all_balanced_antidirected(complete_digraph(4), 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(contains_all_balanced_antidirected(complete_digraph(4), 13, 3), std::length_error);
}
