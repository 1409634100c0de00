#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitree/digraph.hpp"
#include "antitree/tree.hpp"

namespace antitree {

/// Center with three antidirected legs of k/3 arcs each, rooted at the
/// center, which is a source. Removing the center leaves three equal parts.
inline RootedOrientedTree spider(int k) {
  if (k < 3 || k % 3 != 0) throw std::invalid_argument("spider needs k divisible by 3");
  const int leg = k / 3;
  std::vector<Arc> arcs;
  Vertex next = 1;
  for (int l = 0; l < 3; ++l) {
    Vertex prev = 0;
    for (int step = 1; step <= leg; ++step, ++next) {
      // Odd distance from the center: sink; even: source.
      arcs.push_back(step % 2 == 1 ? Arc{prev, next} : Arc{next, prev});
      prev = next;
    }
  }
  return tree_from_arcs(k + 1, arcs, 0);
}

/// Two disjoint cliques of size 2k/3 - 1 plus an apex joined to all of them,
/// every edge doubled into a digon. The apex is vertex 0.
inline Digraph two_cliques_construction(int k) {
  if (k < 3 || k % 3 != 0) throw std::invalid_argument("two_cliques_construction needs k divisible by 3, k >= 3");
  const int m = 2 * k / 3 - 1;
  std::vector<Arc> arcs;
  for (int side = 0; side < 2; ++side) {
    const Vertex first = 1 + side * m;
    for (Vertex a = first; a < first + m; ++a) {
      arcs.emplace_back(0, a);
      arcs.emplace_back(a, 0);
      for (Vertex b = first; b < first + m; ++b)
        if (a != b) arcs.emplace_back(a, b);
    }
  }
  return Digraph(2 * m + 1, arcs);
}

/// Vertices v_1..v_{2k+1} (ids 0..2k), digons between consecutive vertices,
/// plus the arc v_1 → v_{2k+1}.
inline Digraph digon_chain(int k) {
  if (k < 1) throw std::invalid_argument("digon_chain needs k >= 1");
  const int n = 2 * k + 1;
  std::vector<Arc> arcs;
  for (Vertex v = 0; v + 1 < n; ++v) {
    arcs.emplace_back(v, v + 1);
    arcs.emplace_back(v + 1, v);
  }
  arcs.emplace_back(0, n - 1);
  return Digraph(n, arcs);
}

/// Each ordered pair independently with probability p.
inline Digraph random_digraph(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("negative order");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("arc probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && coin(rng)) arcs.emplace_back(u, v);
  return Digraph(n, arcs);
}

/// Random digraph with minimum semidegree at least `delta`: arcs are added
/// greedily to deficient vertices, then vertex labels are shuffled.
inline Digraph random_digraph_min_semidegree(int n, int delta, std::uint64_t seed) {
  if (n < 1 || delta < 0 || delta >= n)
    throw std::invalid_argument("minimum semidegree " + std::to_string(delta) + " infeasible on " +
                                std::to_string(n) + " vertices");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<char>> has(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<int> out(static_cast<std::size_t>(n), 0), in(static_cast<std::size_t>(n), 0);
  auto add = [&](Vertex u, Vertex v) {
    has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    ++out[static_cast<std::size_t>(u)];
    ++in[static_cast<std::size_t>(v)];
  };
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (Vertex u : order) {
    while (out[static_cast<std::size_t>(u)] < delta) {
      // Prefer heads that still lack in-arcs.
      std::vector<Vertex> needy, any;
      for (Vertex v = 0; v < n; ++v) {
        if (v == u || has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
        any.push_back(v);
        if (in[static_cast<std::size_t>(v)] < delta) needy.push_back(v);
      }
      const auto& pool = needy.empty() ? any : needy;
      add(u, pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    }
  }
  for (Vertex v : order) {
    while (in[static_cast<std::size_t>(v)] < delta) {
      std::vector<Vertex> any;
      for (Vertex u = 0; u < n; ++u)
        if (u != v && !has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) any.push_back(u);
      add(any[std::uniform_int_distribution<std::size_t>(0, any.size() - 1)(rng)], v);
    }
  }
  std::vector<Vertex> relabel(static_cast<std::size_t>(n));
  std::iota(relabel.begin(), relabel.end(), 0);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
        arcs.emplace_back(relabel[static_cast<std::size_t>(u)], relabel[static_cast<std::size_t>(v)]);
  return Digraph(n, arcs);
}

}  // namespace antitree
