#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <random>

#include "antitree/extremal.hpp"
#include "antitree/tree_cut.hpp"
#include "antitree/tree_gen.hpp"

using namespace antitree;

namespace {

std::vector<std::vector<int>> adjacency(const RootedOrientedTree& t) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.order()));
  for (const auto& [u, v] : t.arcs()) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

// component sizes of T - z by flood fill, largest first
std::vector<int> sizes_without(const RootedOrientedTree& t, int z) {
  const auto adj = adjacency(t);
  std::vector<int> seen(static_cast<std::size_t>(t.order()), 0), out;
  seen[static_cast<std::size_t>(z)] = 1;
  for (int s = 0; s < t.order(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    int count = 0;
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      ++count;
      for (int y : adj[static_cast<std::size_t>(x)])
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          stack.push_back(y);
        }
    }
    out.push_back(count);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool literal_ok(const std::vector<int>& sizes, double h, int k) {
  int big = 0;
  for (int x : sizes) {
    if (x <= h * k + 1e-9) continue;
    if (x > (1 - h) * k + 1e-9) return false;
    ++big;
  }
  return big <= 1;
}

// every assignment of items to classes, caps[0] for the first class
bool brute_pack(const std::vector<int>& items, const std::vector<int>& caps) {
  std::vector<int> load(caps.size(), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == items.size()) return true;
    for (std::size_t c = 0; c < caps.size(); ++c) {
      if (load[c] + items[i] > caps[c]) continue;
      load[c] += items[i];
      if (go(i + 1)) return true;
      load[c] -= items[i];
    }
    return false;
  };
  return go(0);
}

bool brute_pairs(const std::vector<PiecePair>& pairs, int t, double cap) {
  std::vector<long> p(static_cast<std::size_t>(t), 0), q(static_cast<std::size_t>(t), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == pairs.size()) return true;
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (p[c] + pairs[i].sources > cap + 1e-9 || q[c] + pairs[i].sinks > cap + 1e-9) continue;
      p[c] += pairs[i].sources;
      q[c] += pairs[i].sinks;
      if (go(i + 1)) return true;
      p[c] -= pairs[i].sources;
      q[c] -= pairs[i].sinks;
    }
    return false;
  };
  return go(0);
}

RootedOrientedTree star(int k) {
  std::vector<Arc> arcs;
  for (int v = 1; v <= k; ++v) arcs.push_back({0, v});
  return tree_from_arcs(k + 1, arcs, 0);
}

RootedOrientedTree directed_path(int k) {
  std::vector<Arc> arcs;
  for (int v = 1; v <= k; ++v) arcs.push_back({v - 1, v});
  return tree_from_arcs(k + 1, arcs, 0);
}

}  // namespace

TEST_CASE("cut vertex examples") {
  for (double h : {0.2, 1.0 / 3, 0.5}) CHECK(cut_vertex(star(7), h) == 0);
  const auto p = directed_path(6);
  const Vertex z = cut_vertex(p, 0.5);
  CHECK(z == 3);
  CHECK(sizes_without(p, z) == std::vector<int>{3, 3});
  CHECK(cut_vertex(spider(6), 0.4) == 0);
  CHECK_THROWS_AS(cut_vertex(p, 1.5), std::invalid_argument);
}

TEST_CASE("cut vertex against an exhaustive scan") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const int n = 2 + static_cast<int>(seed % 40);
    const auto t = random_oriented_tree(n, seed);
    for (double h : {1.0 / 3, 0.4, 0.5}) {
      bool any = false;
      for (int v = 0; v < n && !any; ++v) any = literal_ok(sizes_without(t, v), h, t.k());
      const Vertex z = cut_vertex(t, h);
      CHECK(sizes_without(t, z) == component_sizes_without(t, z));
      if (any) {
        CHECK(literal_ok(sizes_without(t, z), h, t.k()));
      } else {
        CHECK(cut_bound_holds(t, z, h, CutBound::Rounded));
      }
    }
  }
}

TEST_CASE("partition examples") {
  const auto cut = partition_components(spider(6), 0, 0.4, 3);
  REQUIRE(cut);
  REQUIRE(cut->classes.size() == 3);
  for (const auto& c : cut->classes) CHECK(c.size == 2);
  CHECK(tree_cut_bounds_hold(*cut));

  const auto s = partition_components(star(9), 0, 1.0 / 3, 2);
  REQUIRE(s);
  CHECK(s->classes[0].size == 6);
  CHECK(s->classes[1].size == 3);
  CHECK(tree_cut_bounds_hold(*s));

  // 8 leaves against caps 5 and 2: only the rounded caps 6 and 3 fit
  CHECK_FALSE(partition_components(star(8), 0, 1.0 / 3, 2));
  const auto r = partition_components(star(8), 0, 1.0 / 3, 2, CutBound::Rounded);
  REQUIRE(r);
  CHECK(tree_cut_bounds_hold(*r));

  // one big component lands alone in the first class
  std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}};
  const auto t = tree_from_arcs(6, arcs, 0);
  const auto big = partition_components(t, 0, 0.2, 2, CutBound::Rounded);
  REQUIRE(big);
  CHECK(big->classes[0].size == 4);
  CHECK(big->classes[1].size == 1);
}

TEST_CASE("partition agrees with brute-force packing") {
  int feasible = 0, infeasible = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 3 + static_cast<int>(seed % 25);
    const auto t = random_oriented_tree(n, seed + 1000);
    for (int ell : {2, 3, 4}) {
      const double h = (ell - 1.0) / (2.0 * ell - 1.0);
      for (auto bound : {CutBound::Literal, CutBound::Rounded}) {
        const Vertex z = cut_vertex(t, h);
        const auto items = sizes_without(t, z);
        const double first = std::max(1 - h, h) * t.k(), other = h * t.k();
        const int cf = bound == CutBound::Rounded ? static_cast<int>(std::ceil(first - 1e-9)) : static_cast<int>(std::floor(first + 1e-9));
        const int co = bound == CutBound::Rounded ? static_cast<int>(std::ceil(other - 1e-9)) : static_cast<int>(std::floor(other + 1e-9));
        std::vector<int> caps(static_cast<std::size_t>(ell), co);
        caps[0] = std::max(cf, co);
        const bool expect = brute_pack(items, caps);
        const auto cut = partition_components(t, z, h, ell, bound);
        REQUIRE(static_cast<bool>(cut) == expect);
        if (!cut) {
          ++infeasible;
          continue;
        }
        ++feasible;
        CHECK(tree_cut_bounds_hold(*cut));
        int total = 0;
        for (const auto& c : cut->classes) total += c.size;
        CHECK(total == t.k());
      }
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("seed decomposition examples") {
  const auto p = directed_path(100);
  const auto d = seed_decomposition(p, 0.1);
  CHECK(d.seeds.size() <= 22);
  for (const auto& part : d.parts) CHECK(part.vertices.size() <= 10);

  const auto s = seed_decomposition(star(9), 0.3);
  CHECK(s.seeds == std::vector<Vertex>{0});
  CHECK(s.parts.size() == 9);
  for (const auto& part : s.parts) CHECK(part.vertices.size() == 1);

  const auto small = seed_decomposition(directed_path(3), 1.0);
  CHECK(small.seeds == std::vector<Vertex>{0});
  REQUIRE(small.parts.size() == 1);
  CHECK(small.parts[0].vertices.size() == 3);
}

TEST_CASE("seed decomposition bounds on random trees") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 60);
    const auto t = random_oriented_tree(n, seed);
    for (double beta : {0.05, 0.1, 0.2, 0.5}) {
      const auto d = seed_decomposition(t, beta, 2);
      CHECK(std::binary_search(d.seeds.begin(), d.seeds.end(), t.root()));
      CHECK(d.seeds.size() <= 2.0 / beta + 2 + 1e-9);
      std::vector<int> hit(static_cast<std::size_t>(n), 0);
      for (Vertex v : d.seeds) ++hit[static_cast<std::size_t>(v)];
      for (const auto& part : d.parts) {
        CHECK(part.vertices.size() <= beta * t.k() + 1e-9);
        CHECK(std::binary_search(d.seeds.begin(), d.seeds.end(), part.parent_seed));
        CHECK(t.parent(part.root) == part.parent_seed);
        std::size_t split = part.link.size();
        for (const auto& piece : part.pieces) split += piece.size();
        CHECK(split == part.vertices.size());
        for (Vertex v : part.vertices) ++hit[static_cast<std::size_t>(v)];
      }
      CHECK(std::all_of(hit.begin(), hit.end(), [](int x) { return x == 1; }));
    }
  }
}

TEST_CASE("assign pieces examples") {
  const double mu = 0.05;
  const int s = 200, t = 3;
  const int per = static_cast<int>((1 - 10 * mu) * s / 2);
  std::vector<PiecePair> ones(static_cast<std::size_t>(t * per), PiecePair{1, 1});
  const auto a = assign_pieces(ones, mu, s, t);
  REQUIRE(a);
  for (int c = 0; c < t; ++c) {
    CHECK(a->source_sums[static_cast<std::size_t>(c)] <= (1 - 7 * mu) * s);
    CHECK(a->sink_sums[static_cast<std::size_t>(c)] <= (1 - 7 * mu) * s);
  }

  const int m = static_cast<int>(mu * s) / 2;
  const auto single = assign_pieces({PiecePair{m, m}}, mu, s, 1);
  REQUIRE(single);
  CHECK(single->classes.size() == 1);

  std::mt19937_64 rng(5);
  std::vector<PiecePair> pairs;
  for (int i = 0; i < 30; ++i) {
    const int p = std::uniform_int_distribution<int>(0, 5)(rng);
    pairs.push_back({p, p});
  }
  const auto r = assign_pieces(pairs, mu, s, 4);
  REQUIRE(r);
  CHECK(brute_pairs(std::vector<PiecePair>(pairs.begin(), pairs.begin() + 10), 4, (1 - 7 * mu) * s));
}

TEST_CASE("assign pieces reports violated hypotheses") {
  const auto unbalanced = assign_pieces({PiecePair{5, 0}}, 0.05, 200, 2);
  REQUIRE_FALSE(unbalanced);
  CHECK(unbalanced.error().violated == std::vector<std::string>{"balance"});

  const auto big = assign_pieces({PiecePair{6, 6}}, 0.05, 200, 2);
  REQUIRE_FALSE(big);
  CHECK(big.error().violated == std::vector<std::string>{"pair_size"});

  std::vector<PiecePair> many(60, PiecePair{1, 1});
  const auto full = assign_pieces(many, 0.05, 100, 1);
  REQUIRE_FALSE(full);
  CHECK(full.error().violated == std::vector<std::string>{"total_size"});
}

TEST_CASE("pack_pairs with tight caps matches brute force") {
  std::mt19937_64 rng(17);
  int found = 0, refused = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int count = std::uniform_int_distribution<int>(1, 9)(rng);
    const int t = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<PiecePair> pairs;
    long total = 0;
    for (int i = 0; i < count; ++i) {
      pairs.push_back({std::uniform_int_distribution<int>(0, 6)(rng), std::uniform_int_distribution<int>(0, 6)(rng)});
      total += std::max(pairs.back().sources, pairs.back().sinks);
    }
    const double cap = std::ceil(static_cast<double>(total) / t) + std::uniform_int_distribution<int>(0, 3)(rng);
    const std::vector<double> caps(static_cast<std::size_t>(t), cap);
    const auto got = pack_pairs(pairs, caps, caps);
    const bool expect = brute_pairs(pairs, t, cap);
    REQUIRE(static_cast<bool>(got) == expect);
    if (!got) {
      ++refused;
      continue;
    }
    ++found;
    std::vector<long> p(static_cast<std::size_t>(t), 0), q(static_cast<std::size_t>(t), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      p[static_cast<std::size_t>((*got)[i])] += pairs[i].sources;
      q[static_cast<std::size_t>((*got)[i])] += pairs[i].sinks;
    }
    for (int c = 0; c < t; ++c) {
      CHECK(p[static_cast<std::size_t>(c)] <= cap);
      CHECK(q[static_cast<std::size_t>(c)] <= cap);
    }
  }
  CHECK(found > 0);
  CHECK(refused > 0);
}
