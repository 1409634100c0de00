#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "antitree/digraph.hpp"
#include "antitree/tree.hpp"
#include "antitree/tree_gen.hpp"

namespace antitree {

/// Injective map from guest vertices to host vertices; image[v] is φ(v).
struct Embedding {
  std::vector<Vertex> image;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Restrictions on an embedding: forbidden host vertices U, an allowed image
/// set N for designated guest vertices, and pinned guest→host assignments.
/// When `allowed_images` is set and `designated` is empty, the forest roots
/// are the designated vertices.
struct EmbedConstraints {
  std::vector<Vertex> forbidden;
  std::optional<std::vector<Vertex>> allowed_images;
  std::vector<Vertex> designated;
  std::vector<std::pair<Vertex, Vertex>> pinned;
};

namespace detail {

inline std::vector<Vertex> designated_vertices(const RootedOrientedForest& guest, const EmbedConstraints& c) {
  if (!c.allowed_images) return {};
  return c.designated.empty() ? guest.roots() : c.designated;
}

}  // namespace detail

inline bool verify_embedding(const RootedOrientedForest& guest, const Digraph& host, const Embedding& phi,
                             const EmbedConstraints& constraints = {}) {
  if (static_cast<int>(phi.image.size()) != guest.order()) return false;
  std::vector<char> used(static_cast<std::size_t>(host.order()), 0);
  for (Vertex h : phi.image) {
    if (!host.has_vertex(h) || used[static_cast<std::size_t>(h)]) return false;
    used[static_cast<std::size_t>(h)] = 1;
  }
  for (const auto& [tail, head] : guest.arcs())
    if (!host.has_arc(phi.image[static_cast<std::size_t>(tail)], phi.image[static_cast<std::size_t>(head)]))
      return false;
  for (Vertex u : constraints.forbidden)
    if (host.has_vertex(u) && used[static_cast<std::size_t>(u)]) return false;
  if (constraints.allowed_images) {
    const auto& n = *constraints.allowed_images;
    for (Vertex g : detail::designated_vertices(guest, constraints))
      if (std::find(n.begin(), n.end(), phi.image[static_cast<std::size_t>(g)]) == n.end()) return false;
  }
  for (const auto& [g, h] : constraints.pinned)
    if (g < 0 || g >= guest.order() || phi.image[static_cast<std::size_t>(g)] != h) return false;
  return true;
}

namespace detail {

class BacktrackingEmbedder {
 public:
  BacktrackingEmbedder(const RootedOrientedForest& guest, const Digraph& host, const EmbedConstraints& c)
      : guest_(guest), host_(host) {
    const auto nh = static_cast<std::size_t>(host.order());
    const auto ng = static_cast<std::size_t>(guest.order());
    adjacency_.assign(nh * nh, 0);
    for (const auto& [u, v] : host.arcs()) adjacency_[static_cast<std::size_t>(u) * nh + static_cast<std::size_t>(v)] = 1;
    blocked_.assign(nh, 0);
    for (Vertex u : c.forbidden)
      if (host.has_vertex(u)) blocked_[static_cast<std::size_t>(u)] = 1;
    allowed_.assign(ng, {});
    restricted_.assign(ng, 0);
    if (c.allowed_images) {
      std::vector<char> in_n(nh, 0);
      for (Vertex h : *c.allowed_images)
        if (host.has_vertex(h)) in_n[static_cast<std::size_t>(h)] = 1;
      for (Vertex g : designated_vertices(guest, c)) {
        restrict(g, in_n);
      }
    }
    for (const auto& [g, h] : c.pinned) {
      if (g < 0 || g >= guest.order()) throw std::invalid_argument("pinned guest vertex out of range");
      std::vector<char> only(nh, 0);
      if (host.has_vertex(h)) only[static_cast<std::size_t>(h)] = 1;
      restrict(g, only);
    }
    image_.assign(ng, -1);
    used_.assign(nh, 0);
    out_needed_.resize(ng);
    in_needed_.resize(ng);
    for (Vertex g = 0; g < guest.order(); ++g) {
      out_needed_[static_cast<std::size_t>(g)] = guest.out_degree(g);
      in_needed_[static_cast<std::size_t>(g)] = guest.in_degree(g);
    }
    // Components largest first; their roots open the search.
    std::vector<int> size(ng, 0);
    for (Vertex g = 0; g < guest.order(); ++g) ++size[static_cast<std::size_t>(guest.component_root(g))];
    roots_ = guest.roots();
    std::stable_sort(roots_.begin(), roots_.end(), [&](Vertex a, Vertex b) {
      return size[static_cast<std::size_t>(a)] > size[static_cast<std::size_t>(b)];
    });
  }

  std::optional<Embedding> run() {
    int free_hosts = 0;
    for (Vertex h = 0; h < host_.order(); ++h) free_hosts += blocked_[static_cast<std::size_t>(h)] ? 0 : 1;
    if (guest_.order() > free_hosts) return std::nullopt;
    if (!search(0)) return std::nullopt;
    return Embedding{image_};
  }

 private:
  void restrict(Vertex g, const std::vector<char>& mask) {
    auto& a = allowed_[static_cast<std::size_t>(g)];
    if (!restricted_[static_cast<std::size_t>(g)]) {
      a = mask;
      restricted_[static_cast<std::size_t>(g)] = 1;
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && mask[i];
    }
  }

  bool arc(Vertex u, Vertex v) const {
    return adjacency_[static_cast<std::size_t>(u) * static_cast<std::size_t>(host_.order()) + static_cast<std::size_t>(v)];
  }

  bool admissible(Vertex g, Vertex h) const {
    const auto gi = static_cast<std::size_t>(g);
    const auto hi = static_cast<std::size_t>(h);
    if (used_[hi] || blocked_[hi]) return false;
    if (restricted_[gi] && !allowed_[gi][hi]) return false;
    if (host_.out_degree(h) < out_needed_[gi] || host_.in_degree(h) < in_needed_[gi]) return false;
    const Vertex p = guest_.parent(g);
    if (p != -1) {
      const Vertex hp = image_[static_cast<std::size_t>(p)];
      if (guest_.arc_toward_child(g) ? !arc(hp, h) : !arc(h, hp)) return false;
    }
    return true;
  }

  std::vector<Vertex> candidates(Vertex g) const {
    std::vector<Vertex> result;
    const Vertex p = guest_.parent(g);
    if (p != -1) {
      const Vertex hp = image_[static_cast<std::size_t>(p)];
      auto pool = guest_.arc_toward_child(g) ? host_.out_neighbors(hp) : host_.in_neighbors(hp);
      for (Vertex h : pool)
        if (admissible(g, h)) result.push_back(h);
    } else {
      for (Vertex h = 0; h < host_.order(); ++h)
        if (admissible(g, h)) result.push_back(h);
    }
    return result;
  }

  bool search(int placed) {
    if (placed == guest_.order()) return true;
    // Fail-first over the frontier: unplaced vertices whose parent is placed.
    Vertex best = -1;
    std::vector<Vertex> best_candidates;
    for (Vertex g = 0; g < guest_.order(); ++g) {
      const Vertex p = guest_.parent(g);
      if (image_[static_cast<std::size_t>(g)] != -1 || p == -1 || image_[static_cast<std::size_t>(p)] == -1) continue;
      auto cand = candidates(g);
      if (best == -1 || cand.size() < best_candidates.size()) {
        best = g;
        best_candidates = std::move(cand);
        if (best_candidates.empty()) return false;
      }
    }
    if (best == -1) {
      for (Vertex r : roots_) {
        if (image_[static_cast<std::size_t>(r)] == -1) {
          best = r;
          best_candidates = candidates(r);
          break;
        }
      }
    }
    for (Vertex h : best_candidates) {
      image_[static_cast<std::size_t>(best)] = h;
      used_[static_cast<std::size_t>(h)] = 1;
      if (search(placed + 1)) return true;
      used_[static_cast<std::size_t>(h)] = 0;
      image_[static_cast<std::size_t>(best)] = -1;
    }
    return false;
  }

  const RootedOrientedForest& guest_;
  const Digraph& host_;
  std::vector<char> adjacency_;
  std::vector<char> blocked_;
  std::vector<std::vector<char>> allowed_;
  std::vector<char> restricted_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
  std::vector<int> out_needed_;
  std::vector<int> in_needed_;
  std::vector<Vertex> roots_;
};

}  // namespace detail

/// Exact embedding search by backtracking; returns none only when no
/// embedding satisfying the constraints exists.
inline std::optional<Embedding> embed(const RootedOrientedForest& guest, const Digraph& host,
                                      const EmbedConstraints& constraints = {}) {
  return detail::BacktrackingEmbedder(guest, host, constraints).run();
}

/// Whether the underlying tree of `guest` is a subgraph of the underlying
/// graph of `host` (orientation ignored on both sides).
inline std::optional<Embedding> embed_undirected(const RootedOrientedForest& guest, const Digraph& host) {
  return embed(guest, digon_digraph(underlying_graph(host)));
}

struct ContainmentVerdict {
  bool contains_all = true;
  int trees_checked = 0;
  std::optional<RootedOrientedTree> counterexample;
};

constexpr int kMaxEnumeratedArcs = 11;

/// Checks every balanced antidirected tree with k arcs and maximum degree at
/// most `max_degree` (both choices of source class) against `host`.
inline ContainmentVerdict contains_all_balanced_antidirected(const Digraph& host, int k, int max_degree) {
  if (k > kMaxEnumeratedArcs) throw std::length_error("tree enumeration budget exceeded: k <= 11");
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("balanced antidirected trees need an odd number of arcs");
  ContainmentVerdict verdict;
  for (const auto& shape : free_trees(k + 1)) {
    for (const auto& tree : balanced_antidirected_orientations(shape, max_degree)) {
      ++verdict.trees_checked;
      if (!embed(tree, host)) {
        verdict.contains_all = false;
        verdict.counterexample = tree;
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace antitree
