#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitree/digraph.hpp"

namespace antitree {

/// Oriented forest stored as a parent array. parent(v) == -1 marks a root;
/// arc_toward_child(v) tells whether the edge to the parent is parent→v.
class RootedOrientedForest {
 public:
  RootedOrientedForest() = default;

  RootedOrientedForest(std::vector<Vertex> parent, std::vector<bool> toward_child)
      : parent_(std::move(parent)), toward_child_(std::move(toward_child)) {
    const int n = order();
    if (toward_child_.size() != parent_.size()) throw std::invalid_argument("orientation array size mismatch");
    children_.assign(static_cast<std::size_t>(n), {});
    for (Vertex v = 0; v < n; ++v) {
      const Vertex p = parent_[static_cast<std::size_t>(v)];
      if (p == -1) {
        roots_.push_back(v);
        continue;
      }
      if (p < 0 || p >= n || p == v) throw std::invalid_argument("invalid parent of vertex " + std::to_string(v));
      children_[static_cast<std::size_t>(p)].push_back(v);
    }
    // Every vertex must reach a root: count vertices reachable from roots.
    level_.assign(static_cast<std::size_t>(n), -1);
    std::queue<Vertex> queue;
    for (Vertex r : roots_) {
      level_[static_cast<std::size_t>(r)] = 0;
      queue.push(r);
    }
    int seen = 0;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      ++seen;
      for (Vertex c : children_[static_cast<std::size_t>(v)]) {
        level_[static_cast<std::size_t>(c)] = level_[static_cast<std::size_t>(v)] + 1;
        queue.push(c);
      }
    }
    if (seen != n) throw std::invalid_argument("parent array contains a cycle");
  }

  int order() const { return static_cast<int>(parent_.size()); }
  int arc_count() const { return order() - static_cast<int>(roots_.size()); }

  Vertex parent(Vertex v) const { return parent_.at(static_cast<std::size_t>(v)); }
  bool arc_toward_child(Vertex v) const { return toward_child_.at(static_cast<std::size_t>(v)); }
  std::span<const Vertex> children(Vertex v) const { return children_.at(static_cast<std::size_t>(v)); }
  const std::vector<Vertex>& roots() const { return roots_; }
  const std::vector<Vertex>& parents() const { return parent_; }
  const std::vector<bool>& orientation() const { return toward_child_; }
  int level(Vertex v) const { return level_.at(static_cast<std::size_t>(v)); }
  bool is_tree() const { return roots_.size() == 1; }

  /// Tail and head of the edge between v and its parent.
  Arc parent_arc(Vertex v) const {
    const Vertex p = parent(v);
    return arc_toward_child(v) ? Arc{p, v} : Arc{v, p};
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> result;
    for (Vertex v = 0; v < order(); ++v)
      if (parent(v) != -1) result.push_back(parent_arc(v));
    return result;
  }

  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> result(children(v).begin(), children(v).end());
    if (parent(v) != -1) result.push_back(parent(v));
    std::sort(result.begin(), result.end());
    return result;
  }
  int degree(Vertex v) const { return static_cast<int>(children(v).size()) + (parent(v) != -1 ? 1 : 0); }

  int out_degree(Vertex v) const {
    int d = (parent(v) != -1 && !arc_toward_child(v)) ? 1 : 0;
    for (Vertex c : children(v)) d += arc_toward_child(c) ? 1 : 0;
    return d;
  }
  int in_degree(Vertex v) const { return degree(v) - out_degree(v); }
  int max_degree() const {
    int m = 0;
    for (Vertex v = 0; v < order(); ++v) m = std::max(m, degree(v));
    return m;
  }

  /// Depth-first preorder: roots in order, children ascending.
  std::vector<Vertex> preorder() const {
    std::vector<Vertex> result;
    std::vector<Vertex> stack;
    for (auto it = roots_.rbegin(); it != roots_.rend(); ++it) stack.push_back(*it);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      result.push_back(v);
      auto kids = children(v);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return result;
  }

  /// Root of the component containing v.
  Vertex component_root(Vertex v) const {
    while (parent(v) != -1) v = parent(v);
    return v;
  }

  friend bool operator==(const RootedOrientedForest& a, const RootedOrientedForest& b) {
    return a.parent_ == b.parent_ && a.toward_child_ == b.toward_child_;
  }

 private:
  std::vector<Vertex> parent_;
  std::vector<bool> toward_child_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> roots_;
  std::vector<int> level_;
};

class RootedOrientedTree : public RootedOrientedForest {
 public:
  RootedOrientedTree() : RootedOrientedTree(std::vector<Vertex>{-1}, std::vector<bool>{false}) {}
  RootedOrientedTree(std::vector<Vertex> parent, std::vector<bool> toward_child)
      : RootedOrientedForest(std::move(parent), std::move(toward_child)) {
    if (!is_tree()) throw std::invalid_argument("a rooted tree needs exactly one root");
  }
  explicit RootedOrientedTree(RootedOrientedForest forest) : RootedOrientedForest(std::move(forest)) {
    if (!is_tree()) throw std::invalid_argument("a rooted tree needs exactly one root");
  }

  Vertex root() const { return roots().front(); }
  /// Number of arcs, k.
  int k() const { return order() - 1; }
};

/// Builds a rooted tree from an arc list on vertices 0..n-1.
inline RootedOrientedTree tree_from_arcs(int n, const std::vector<Arc>& arcs, Vertex root) {
  if (n < 1) throw std::invalid_argument("a tree needs at least one vertex");
  if (static_cast<int>(arcs.size()) != n - 1) throw std::invalid_argument("a tree on n vertices has n-1 arcs");
  if (root < 0 || root >= n) throw std::invalid_argument("root out of range");
  std::vector<std::vector<std::pair<Vertex, bool>>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : arcs) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw std::invalid_argument("bad tree arc");
    adj[static_cast<std::size_t>(u)].emplace_back(v, true);   // u→v seen from u: toward v
    adj[static_cast<std::size_t>(v)].emplace_back(u, false);  // seen from v: arc points at v
  }
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
  std::vector<bool> down(static_cast<std::size_t>(n), false);
  parent[static_cast<std::size_t>(root)] = -1;
  std::queue<Vertex> queue;
  queue.push(root);
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop();
    for (const auto& [w, toward_w] : adj[static_cast<std::size_t>(v)]) {
      if (parent[static_cast<std::size_t>(w)] != -2) continue;
      parent[static_cast<std::size_t>(w)] = v;
      down[static_cast<std::size_t>(w)] = toward_w;
      queue.push(w);
    }
  }
  for (Vertex v : parent)
    if (v == -2) throw std::invalid_argument("arcs do not form a connected tree");
  return RootedOrientedTree(std::move(parent), std::move(down));
}

/// Same shape with every arc reversed.
inline RootedOrientedForest reverse(const RootedOrientedForest& f) {
  std::vector<bool> flipped(f.orientation().size());
  for (std::size_t i = 0; i < flipped.size(); ++i) flipped[i] = !f.orientation()[i];
  return RootedOrientedForest(f.parents(), std::move(flipped));
}
inline RootedOrientedTree reverse(const RootedOrientedTree& t) {
  return RootedOrientedTree(reverse(static_cast<const RootedOrientedForest&>(t)));
}

/// Forest induced on a vertex subset; each component is rooted at its vertex
/// closest to the original root. `original[i]` is the source vertex of i.
struct SubForest {
  RootedOrientedForest forest;
  std::vector<Vertex> original;
};

inline SubForest induced_subforest(const RootedOrientedForest& f, std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<Vertex> local(static_cast<std::size_t>(f.order()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[static_cast<std::size_t>(vertices.at(i))] = static_cast<Vertex>(i);
  std::vector<Vertex> parent(vertices.size(), -1);
  std::vector<bool> down(vertices.size(), false);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vertex v = vertices[i];
    const Vertex p = f.parent(v);
    if (p != -1 && local[static_cast<std::size_t>(p)] != -1) {
      parent[i] = local[static_cast<std::size_t>(p)];
      down[i] = f.arc_toward_child(v);
    }
  }
  return {RootedOrientedForest(std::move(parent), std::move(down)), std::move(vertices)};
}

/// Source/sink classification of an antidirected forest. A vertex with no
/// arcs has in-degree zero and counts as a source.
struct AntidirectedMarking {
  std::vector<bool> is_source;
  int sources = 0;
  int sinks = 0;
  bool balanced = false;
};

inline std::optional<AntidirectedMarking> classify_antidirected(const RootedOrientedForest& f) {
  AntidirectedMarking m;
  m.is_source.resize(static_cast<std::size_t>(f.order()));
  for (Vertex v = 0; v < f.order(); ++v) {
    const int out = f.out_degree(v);
    const int in = f.in_degree(v);
    if (out > 0 && in > 0) return std::nullopt;
    const bool source = in == 0;
    m.is_source[static_cast<std::size_t>(v)] = source;
    ++(source ? m.sources : m.sinks);
  }
  m.balanced = m.sources == m.sinks;
  return m;
}

inline bool is_balanced_antidirected(const RootedOrientedForest& f) {
  auto m = classify_antidirected(f);
  return m && m->balanced;
}

}  // namespace antitree
