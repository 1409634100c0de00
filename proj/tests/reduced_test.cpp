#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "antitree/antitree.hpp"

using namespace antitree;

namespace {

ReducedDigraph two_triangles(int s) {
  std::vector<Arc> arcs;
  for (int b : {0, 3})
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) arcs.push_back({b + i, b + j});
  auto rd = make_reduced(Digraph(6, arcs), s);
  rd.apex_out.assign(6, s);
  rd.apex_in.assign(6, s);
  return rd;
}

bool known_failure(const std::string& name) {
  const auto& names = reduced_failure_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

TEST_CASE("blow-up sizes") {
  auto one = blow_up(make_reduced(Digraph(2, {{0, 1}}), 2));
  CHECK(one.order() == 4);
  CHECK(one.size() == 4);

  const Digraph digon(2, {{0, 1}, {1, 0}});
  CHECK(blow_up(make_reduced(digon, 1)) == digon);

  const Digraph e1(6, {{0, 1}, {2, 1}, {2, 3}, {3, 4}, {5, 4}});
  const auto rd = make_reduced(e1, 3);
  const Digraph b = blow_up(rd);
  CHECK(b.order() == 18);
  CHECK(b.size() == 45);
  for (Vertex x = 0; x < 18; ++x)
    for (Vertex y = 0; y < 18; ++y) CHECK(b.has_arc(x, y) == e1.has_arc(x / 3, y / 3));

  CHECK_THROWS_AS(blow_up(make_reduced(Digraph(100), 50)), std::length_error);
}

TEST_CASE("apex arcs go to the lowest ids") {
  auto rd = make_reduced(Digraph(2, {{0, 1}}), 4);
  rd.apex_out = {2, 0};
  rd.apex_in = {0, 3};
  const Digraph d = blow_up_with_apex(rd);
  CHECK(d.order() == 9);
  CHECK(d.out_degree(8) == 2);
  CHECK(d.has_arc(8, 0));
  CHECK(d.has_arc(8, 1));
  CHECK(d.in_degree(8) == 3);
  CHECK(d.has_arc(6, 8));
  CHECK_FALSE(d.has_arc(7, 8));
  CHECK(apex_out_neighbors(rd, 0) == std::vector<Vertex>{0, 1});

  const auto r = reverse(rd);
  CHECK(r.apex_out == rd.apex_in);
  CHECK(r.clusters.has_arc(1, 0));
}

TEST_CASE("ledger slices, spills and reserve") {
  ClusterLedger ledger(2, 10, 0.2, 1);
  CHECK(ledger.slice_size(Slice::S) == 2);
  CHECK(ledger.slice_size(Slice::P) == 8);
  CHECK(ledger.slice_of(9) == Slice::S);
  CHECK(ledger.slice_of(7) == Slice::P);

  CHECK(ledger.take(0, Slice::S) == 9);
  CHECK(ledger.take(0, Slice::S) == 8);
  CHECK(ledger.take(0, Slice::S, false) == std::nullopt);
  CHECK(ledger.take(0, Slice::S) == 7);
  CHECK(ledger.spills() == 1);
  CHECK(ledger.allocations().back().spilled);

  ledger.forbid(6);
  CHECK(ledger.is_forbidden(6));
  CHECK(ledger.take(0, Slice::P) == 5);
  CHECK_FALSE(ledger.take_vertex(6));
  int got = 0;
  while (ledger.take(0, Slice::P)) ++got;
  CHECK(got == 4);
  CHECK(ledger.free_count(0) == 1);
  CHECK(ledger.used_count(0) == 8);
  CHECK(ledger.available(0) == 0);
  CHECK(ledger.available(1) == 9);
  CHECK(ledger.take_vertex(10));
}

TEST_CASE("connect_embed along antiwalks") {
  const auto rd = make_reduced(complete_digraph(4), 6);
  {
    ClusterLedger ledger(4, 6, 0.5);
    const auto single = tree_from_arcs(1, {}, 0);
    const auto r = connect_embed(rd, Antiwalk{{{2, Role::Out}}}, single, ledger);
    REQUIRE(r);
    CHECK(rd.cluster_of((*r)[0]) == 2);
  }
  {
    ClusterLedger ledger(4, 6, 0.5);
    const auto path = antidirected_path(4);
    const Antiwalk w{{{0, Role::Out}, {1, Role::In}, {2, Role::Out}, {3, Role::In}}};
    const auto r = connect_embed(rd, w, path, ledger);
    REQUIRE(r);
    for (int v = 0; v < 4; ++v) CHECK(rd.cluster_of((*r)[static_cast<std::size_t>(v)]) == v);
    CHECK(verify_embedding(path, blow_up(rd), Embedding{*r}));
  }
  {
    // levels past the walk bounce between its last two clusters
    ClusterLedger ledger(4, 6, 0.5);
    const auto path = antidirected_path(7);
    const Antiwalk w{{{0, Role::Out}, {1, Role::In}, {2, Role::Out}}};
    const auto r = connect_embed(rd, w, path, ledger);
    REQUIRE(r);
    const std::vector<int> expect{0, 1, 2, 1, 2, 1, 2};
    for (int v = 0; v < 7; ++v) CHECK(rd.cluster_of((*r)[static_cast<std::size_t>(v)]) == expect[static_cast<std::size_t>(v)]);
    CHECK(verify_embedding(path, blow_up(rd), Embedding{*r}));
    int s_slice = 0;
    for (const auto& a : ledger.allocations()) s_slice += a.slice == Slice::S;
    CHECK(s_slice == 1);
    CHECK(ledger.spills() == 0);
  }
  {
    ClusterLedger ledger(4, 6, 0.5);
    const Antiwalk w{{{0, Role::In}, {1, Role::Out}}};
    const auto r = connect_embed(rd, w, antidirected_path(2), ledger);
    REQUIRE_FALSE(r);
    CHECK(r.error().reason == "inconsistent_root");
  }
  {
    ClusterLedger ledger(4, 2, 0.5);
    const auto small = make_reduced(complete_digraph(4), 2);
    const Antiwalk w{{{0, Role::Out}, {1, Role::In}}};
    const auto r = connect_embed(small, w, antidirected_path(7), ledger);
    REQUIRE_FALSE(r);
    CHECK(r.error().reason == "capacity_exhausted");
  }
}

TEST_CASE("component embedding (a)") {
  const auto rd = make_reduced(complete_digraph(4), 6);
  const auto comps = anticomponents(rd.clusters);
  REQUIRE(comps.size() == 1);
  ReducedParams p;
  p.gamma = 0.2;
  const auto path = antidirected_path(8);
  const auto r = embed_in_component_a(rd, comps[0], path, p);
  REQUIRE(r.success);
  CHECK(verify_embedding(path, blow_up(rd), r.embedding));

  const auto arc = antidirected_path(2);
  const auto one = embed_in_component_a(rd, comps[0], arc, p);
  REQUIRE(one.success);
  CHECK(verify_embedding(arc, blow_up(rd), one.embedding));

  // k_R = 23 * 4 / 24 is larger than |C| = 4
  const auto big = random_balanced_antidirected_tree(23, 3, 1);
  const auto fail = embed_in_component_a(rd, comps[0], big, p);
  CHECK_FALSE(fail.success);
  CHECK(fail.failure == "component_size");
  REQUIRE(fail.check("component_size"));
  CHECK_FALSE(fail.check("component_size")->holds);
}

TEST_CASE("component embedding (a) on random balanced trees") {
  const auto rd = make_reduced(complete_digraph(5), 8);
  const auto comps = anticomponents(rd.clusters);
  ReducedParams p;
  p.gamma = 0.1;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int k = 1 + 2 * static_cast<int>(seed % 12);
    const auto t = random_balanced_antidirected_tree(k, 2 + static_cast<int>(seed % 3), seed);
    const auto r = embed_in_component_a(rd, comps[0], t, p);
    if (r.success) {
      ++ok;
      CHECK(verify_embedding(t, blow_up(rd), r.embedding));
    } else {
      CHECK(known_failure(r.failure));
    }
  }
  CHECK(ok > 20);
}

TEST_CASE("component embedding (b)") {
  const auto rd = make_reduced(complete_digraph(4), 8);
  const auto c = anticomponents(rd.clusters)[0];
  ReducedParams p;
  p.gamma = 0.1;

  const RootedOrientedForest sink_root({-1}, {false});
  const auto r = embed_in_component_b(rd, c, ForestTask{sink_root, {}, {5}}, p);
  REQUIRE(r.success);
  CHECK(r.embedding.image == std::vector<Vertex>{5});

  const auto none = embed_in_component_b(rd, c, ForestTask{sink_root, {}, {}}, p);
  CHECK_FALSE(none.success);
  CHECK(none.failure == "allowed_roots_nonempty");

  // roots must be sinks
  const auto source_root = embed_in_component_b(rd, c, ForestTask{antidirected_path(2), {}, {5}}, p);
  CHECK(source_root.failure == "sink_roots");

  // |J| at the gate: max(3*8, 3*8) - γk/100
  const auto gate_tree = reverse(antidirected_path(23));
  std::vector<Vertex> n;
  for (Vertex h = 0; h < rd.host_order(); ++h) n.push_back(h);
  const auto g = embed_in_component_b(rd, c, ForestTask{gate_tree, {}, n}, p);
  REQUIRE(g.check("size_gate"));
  CHECK(g.check("size_gate")->holds);
  REQUIRE(g.success);
  CHECK(verify_embedding(gate_tree, blow_up(rd), g.embedding));
  CHECK(g.b_used >= std::min(23.0, g.b_budget) - g.forced_roots_outside_b);

  const auto over = embed_in_component_b(rd, c, ForestTask{reverse(antidirected_path(25)), {}, n}, p);
  CHECK(over.failure == "size_gate");

  // forbidden vertices are avoided
  const std::vector<Vertex> u{0, 1, 2, 8, 9};
  std::vector<Vertex> n2;
  for (Vertex h = 16; h < 32; ++h) n2.push_back(h);
  const auto f = reverse(antidirected_path(9));
  const auto avoid = embed_in_component_b(rd, c, ForestTask{f, u, n2}, p);
  REQUIRE(avoid.success);
  EmbedConstraints ec;
  ec.forbidden = u;
  ec.allowed_images = n2;
  CHECK(verify_embedding(f, blow_up(rd), avoid.embedding, ec));
}

TEST_CASE("pipeline on two disjoint triangles") {
  const auto rd = two_triangles(6);
  ReducedParams p;
  p.gamma = 0.1;
  p.ell = 2;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t = random_balanced_antidirected_tree(19, 3, seed);
    const auto r = theorem_pipeline(rd, t, p);
    REQUIRE(r.success);
    CHECK_FALSE(r.fast_path);
    CHECK(verify_embedding(t, blow_up_with_apex(rd), r.embedding));
  }
}

TEST_CASE("pipeline fast path and empty apex profile") {
  auto big = make_reduced(complete_digraph(6), 6);
  big.apex_out.assign(6, 6);
  ReducedParams p;
  p.gamma = 0.1;
  const auto t = random_balanced_antidirected_tree(19, 3, 1);
  const auto r = theorem_pipeline(big, t, p);
  REQUIRE(r.success);
  CHECK(r.fast_path);
  CHECK(verify_embedding(t, blow_up_with_apex(big), r.embedding));

  auto zero = two_triangles(6);
  zero.apex_out.assign(6, 0);
  zero.apex_in.assign(6, 0);
  const auto z = theorem_pipeline(zero, t, p);
  CHECK_FALSE(z.success);
  CHECK(z.failure == "eligible_components_at_least_ell");
}

TEST_CASE("pipeline failures are named") {
  const auto rd = two_triangles(4);
  ReducedParams p;
  p.gamma = 0.1;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 5 + 2 * static_cast<int>(seed % 8);
    const auto t = random_balanced_antidirected_tree(k, 3, seed);
    const auto r = theorem_pipeline(rd, t, p);
    if (r.success) {
      CHECK(verify_embedding(t, blow_up_with_apex(rd), r.embedding));
    } else {
      CHECK(known_failure(r.failure));
      CHECK_FALSE(r.detail.empty());
    }
  }
  CHECK(theorem_pipeline(rd, antidirected_path(3), p).failure == "balanced_antidirected");
}
