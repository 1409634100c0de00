#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitree/tree.hpp"

namespace antitree {

/// Random tree with k arcs whose bipartition classes have equal size and
/// whose maximum degree is at most `max_degree`; one class is all sources,
/// the other all sinks. Deterministic per seed.
inline RootedOrientedTree random_balanced_antidirected_tree(int k, int max_degree, std::uint64_t seed) {
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("balanced antidirected trees need an odd number of arcs");
  if (max_degree < 1 || (k > 1 && max_degree < 2))
    throw std::invalid_argument("maximum degree too small for a balanced tree with " + std::to_string(k) + " arcs");
  std::mt19937_64 rng(seed);
  const int n = k + 1;
  const int half = n / 2;  // vertices [0, half) form class A, [half, n) class B
  auto other_class = [&](Vertex v) { return v < half; };

  std::vector<std::pair<Vertex, Vertex>> edges;
  auto build_path = [&] {
    std::vector<Vertex> a(static_cast<std::size_t>(half)), b(static_cast<std::size_t>(half));
    for (int i = 0; i < half; ++i) {
      a[static_cast<std::size_t>(i)] = i;
      b[static_cast<std::size_t>(i)] = half + i;
    }
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    std::vector<Vertex> path;
    for (int i = 0; i < half; ++i) {
      path.push_back(a[static_cast<std::size_t>(i)]);
      path.push_back(b[static_cast<std::size_t>(i)]);
    }
    edges.clear();
    for (std::size_t i = 1; i < path.size(); ++i) edges.emplace_back(path[i - 1], path[i]);
  };

  bool built = false;
  if (max_degree >= 3) {
    for (int attempt = 0; attempt < 1000 && !built; ++attempt) {
      edges.clear();
      std::vector<int> degree(static_cast<std::size_t>(n), 0);
      std::vector<Vertex> placed_a{0}, placed_b{half};
      edges.emplace_back(0, half);
      degree[0] = degree[static_cast<std::size_t>(half)] = 1;
      std::vector<Vertex> rest;
      for (Vertex v = 1; v < half; ++v) rest.push_back(v);
      for (Vertex v = half + 1; v < n; ++v) rest.push_back(v);
      std::shuffle(rest.begin(), rest.end(), rng);
      built = true;
      for (Vertex v : rest) {
        const auto& pool = other_class(v) ? placed_b : placed_a;
        std::vector<Vertex> open;
        for (Vertex w : pool)
          if (degree[static_cast<std::size_t>(w)] < max_degree) open.push_back(w);
        if (open.empty()) {
          built = false;
          break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        const Vertex w = open[pick(rng)];
        edges.emplace_back(v, w);
        ++degree[static_cast<std::size_t>(v)];
        ++degree[static_cast<std::size_t>(w)];
        (other_class(v) ? placed_a : placed_b).push_back(v);
      }
    }
  }
  if (!built) build_path();

  const bool a_are_sources = std::bernoulli_distribution(0.5)(rng);
  std::vector<Arc> arcs;
  for (const auto& [x, y] : edges) {
    const bool x_source = (x < half) == a_are_sources;
    arcs.push_back(x_source ? Arc{x, y} : Arc{y, x});
  }
  const Vertex root = std::uniform_int_distribution<Vertex>(0, n - 1)(rng);
  return tree_from_arcs(n, arcs, root);
}

/// Random oriented tree on `vertex_count` vertices: random recursive shape,
/// shuffled labels, independent arc directions and a random root.
inline RootedOrientedTree random_oriented_tree(int vertex_count, std::uint64_t seed) {
  if (vertex_count < 1) throw std::invalid_argument("a tree needs at least one vertex");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> label(static_cast<std::size_t>(vertex_count));
  for (Vertex v = 0; v < vertex_count; ++v) label[static_cast<std::size_t>(v)] = v;
  std::shuffle(label.begin(), label.end(), rng);
  std::bernoulli_distribution coin(0.5);
  std::vector<Arc> arcs;
  for (Vertex v = 1; v < vertex_count; ++v) {
    const Vertex p = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    const Vertex a = label[static_cast<std::size_t>(p)];
    const Vertex b = label[static_cast<std::size_t>(v)];
    arcs.push_back(coin(rng) ? Arc{a, b} : Arc{b, a});
  }
  const Vertex root = std::uniform_int_distribution<Vertex>(0, vertex_count - 1)(rng);
  return tree_from_arcs(vertex_count, arcs, root);
}

/// Antidirected path on `vertex_count` vertices starting with a source: 0→1←2→3...
inline RootedOrientedTree antidirected_path(int vertex_count) {
  std::vector<Arc> arcs;
  for (Vertex v = 1; v < vertex_count; ++v) arcs.push_back(v % 2 == 1 ? Arc{v - 1, v} : Arc{v, v - 1});
  return tree_from_arcs(vertex_count, arcs, 0);
}

// ---------------------------------------------------------------------------
// Free trees up to isomorphism

namespace detail {

inline std::string ahu_code(const std::vector<std::vector<Vertex>>& adj, Vertex v, Vertex from) {
  std::vector<std::string> codes;
  for (Vertex w : adj[static_cast<std::size_t>(v)])
    if (w != from) codes.push_back(ahu_code(adj, w, v));
  std::sort(codes.begin(), codes.end());
  std::string result = "(";
  for (const auto& c : codes) result += c;
  return result + ")";
}

inline std::vector<Vertex> tree_centers(const std::vector<std::vector<Vertex>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n <= 2) {
    std::vector<Vertex> all;
    for (Vertex v = 0; v < n; ++v) all.push_back(v);
    return all;
  }
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v) {
    degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    if (degree[static_cast<std::size_t>(v)] <= 1) leaves.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(leaves.size());
    std::vector<Vertex> next;
    for (Vertex leaf : leaves) {
      for (Vertex w : adj[static_cast<std::size_t>(leaf)])
        if (--degree[static_cast<std::size_t>(w)] == 1) next.push_back(w);
    }
    leaves = std::move(next);
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

}  // namespace detail

/// Canonical string of an unrooted tree given by a parent array (-1 at the root).
inline std::string free_tree_canonical_form(const std::vector<Vertex>& parent) {
  std::vector<std::vector<Vertex>> adj(parent.size());
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] < 0) continue;
    adj[v].push_back(parent[v]);
    adj[static_cast<std::size_t>(parent[v])].push_back(static_cast<Vertex>(v));
  }
  std::string best;
  for (Vertex c : detail::tree_centers(adj)) {
    std::string code = detail::ahu_code(adj, c, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

/// All free trees on n vertices up to isomorphism, as parent arrays rooted at 0.
/// Rooted trees are generated as canonical level sequences and reduced by the
/// center-rooted canonical form.
inline std::vector<std::vector<Vertex>> free_trees(int n) {
  if (n < 1) throw std::invalid_argument("free_trees needs n >= 1");
  std::vector<std::vector<Vertex>> result;
  std::set<std::string> seen;
  std::vector<int> level(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) level[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> last_at(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
      const int l = level[static_cast<std::size_t>(i)];
      if (l > 0) parent[static_cast<std::size_t>(i)] = last_at[static_cast<std::size_t>(l - 1)];
      last_at[static_cast<std::size_t>(l)] = i;
    }
    if (seen.insert(free_tree_canonical_form(parent)).second) result.push_back(std::move(parent));

    // Successor of the level sequence.
    int p = n - 1;
    while (p > 0 && level[static_cast<std::size_t>(p)] <= 1) --p;
    if (p == 0) break;
    int q = p - 1;
    while (level[static_cast<std::size_t>(q)] != level[static_cast<std::size_t>(p)] - 1) --q;
    for (int i = p; i < n; ++i) level[static_cast<std::size_t>(i)] = level[static_cast<std::size_t>(i - (p - q))];
  }
  return result;
}

/// Antidirected orientations of a free tree whose bipartition classes have
/// equal size and whose degrees are at most `max_degree`: one tree per choice
/// of source class. Empty when the shape does not qualify.
inline std::vector<RootedOrientedTree> balanced_antidirected_orientations(const std::vector<Vertex>& parent,
                                                                          int max_degree) {
  const int n = static_cast<int>(parent.size());
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  // Parent arrays from free_trees list parents before children.
  for (Vertex v = 0; v < n; ++v) {
    const Vertex p = parent[static_cast<std::size_t>(v)];
    if (p < 0) continue;
    depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(p)] + 1;
    ++degree[static_cast<std::size_t>(v)];
    ++degree[static_cast<std::size_t>(p)];
  }
  int even = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] > max_degree) return {};
    even += depth[static_cast<std::size_t>(v)] % 2 == 0 ? 1 : 0;
  }
  if (2 * even != n) return {};
  std::vector<RootedOrientedTree> result;
  for (int even_sources = 1; even_sources >= 0; --even_sources) {
    std::vector<bool> down(static_cast<std::size_t>(n), false);
    for (Vertex v = 0; v < n; ++v) {
      const Vertex p = parent[static_cast<std::size_t>(v)];
      if (p < 0) continue;
      const bool parent_even = depth[static_cast<std::size_t>(p)] % 2 == 0;
      down[static_cast<std::size_t>(v)] = parent_even == static_cast<bool>(even_sources);
    }
    result.emplace_back(parent, std::move(down));
  }
  return result;
}

}  // namespace antitree
