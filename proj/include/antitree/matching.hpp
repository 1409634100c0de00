#pragma once

#include <algorithm>
#include <queue>
#include <utility>
#include <vector>

#include "antitree/digraph.hpp"

namespace antitree {

/// Maximum cardinality matching in a general graph (Edmonds' blossom
/// algorithm, O(V^3)). Returns mate[v] or -1. Vertices are scanned in
/// increasing order so the result is deterministic.
inline std::vector<Vertex> maximum_matching(const SimpleGraph& g) {
  const int n = g.order();
  std::vector<Vertex> mate(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  std::vector<Vertex> base(static_cast<std::size_t>(n));
  std::vector<char> used(static_cast<std::size_t>(n));
  std::vector<char> blossom(static_cast<std::size_t>(n));
  auto at = [](auto& vec, Vertex v) -> auto& { return vec[static_cast<std::size_t>(v)]; };

  auto lca = [&](Vertex a, Vertex b) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (;;) {
      a = at(base, a);
      at(seen, a) = 1;
      if (at(mate, a) == -1) break;
      a = at(parent, at(mate, a));
    }
    for (;;) {
      b = at(base, b);
      if (at(seen, b)) return b;
      b = at(parent, at(mate, b));
    }
  };

  auto mark_path = [&](Vertex v, Vertex b, Vertex child) {
    while (at(base, v) != b) {
      at(blossom, at(base, v)) = 1;
      at(blossom, at(base, at(mate, v))) = 1;
      at(parent, v) = child;
      child = at(mate, v);
      v = at(parent, at(mate, v));
    }
  };

  auto find_path = [&](Vertex root) -> Vertex {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    for (Vertex v = 0; v < n; ++v) at(base, v) = v;
    at(used, root) = 1;
    std::queue<Vertex> queue;
    queue.push(root);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      for (Vertex to : g.neighbors(v)) {
        if (at(base, v) == at(base, to) || at(mate, v) == to) continue;
        if (to == root || (at(mate, to) != -1 && at(parent, at(mate, to)) != -1)) {
          const Vertex current = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, current, to);
          mark_path(to, current, v);
          for (Vertex i = 0; i < n; ++i) {
            if (at(blossom, at(base, i))) {
              at(base, i) = current;
              if (!at(used, i)) {
                at(used, i) = 1;
                queue.push(i);
              }
            }
          }
        } else if (at(parent, to) == -1) {
          at(parent, to) = v;
          if (at(mate, to) == -1) return to;
          at(used, at(mate, to)) = 1;
          queue.push(at(mate, to));
        }
      }
    }
    return -1;
  };

  for (Vertex root = 0; root < n; ++root) {
    if (at(mate, root) != -1) continue;
    Vertex v = find_path(root);
    while (v != -1) {
      const Vertex pv = at(parent, v);
      const Vertex next = at(mate, pv);
      at(mate, v) = pv;
      at(mate, pv) = v;
      v = next;
    }
  }
  return mate;
}

inline std::vector<std::pair<Vertex, Vertex>> matching_edges(const std::vector<Vertex>& mate) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < static_cast<Vertex>(mate.size()); ++v)
    if (mate[static_cast<std::size_t>(v)] > v) edges.emplace_back(v, mate[static_cast<std::size_t>(v)]);
  return edges;
}

}  // namespace antitree
