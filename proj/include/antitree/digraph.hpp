#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace antitree {

using Vertex = int;
using Arc = std::pair<Vertex, Vertex>;

/// Finite digraph on the dense vertex set 0..n-1 with an arc *set*.
///
/// Values are immutable once constructed. Duplicate arcs in the input are
/// collapsed; self-loops and out-of-range endpoints are rejected.
class Digraph {
 public:
  Digraph() = default;

  explicit Digraph(int n) : n_(n), out_(static_cast<std::size_t>(n)), in_(static_cast<std::size_t>(n)) {
    if (n < 0) throw std::invalid_argument("digraph order must be non-negative");
  }

  Digraph(int n, std::span<const Arc> arcs) : Digraph(n) {
    arcs_.assign(arcs.begin(), arcs.end());
    for (const auto& [u, v] : arcs_) {
      if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("arc (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") has an endpoint outside 0.." + std::to_string(n_ - 1));
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
    for (const auto& [u, v] : arcs_) {
      out_[static_cast<std::size_t>(u)].push_back(v);
      in_[static_cast<std::size_t>(v)].push_back(u);
    }
    // arcs_ is sorted by (u, v), so out-lists are sorted; in-lists need it.
    for (auto& list : in_) std::sort(list.begin(), list.end());
  }

  Digraph(int n, std::initializer_list<Arc> arcs)
      : Digraph(n, std::span<const Arc>(arcs.begin(), arcs.size())) {}

  int order() const { return n_; }
  std::size_t size() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const Vertex> out_neighbors(Vertex v) const { return out_[index(v)]; }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_[index(v)]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_[index(v)].size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_[index(v)].size()); }

  bool has_vertex(Vertex v) const { return v >= 0 && v < n_; }
  bool has_arc(Vertex u, Vertex v) const {
    if (!has_vertex(u) || !has_vertex(v)) return false;
    const auto& list = out_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  std::size_t index(Vertex v) const {
    if (!has_vertex(v)) throw std::out_of_range("vertex " + std::to_string(v) + " not in digraph");
    return static_cast<std::size_t>(v);
  }

  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/// Simple undirected graph; edges stored once as (min, max).
class SimpleGraph {
 public:
  SimpleGraph() = default;
  SimpleGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges)
      : n_(n), adjacency_(static_cast<std::size_t>(n)) {
    for (auto& [a, b] : edges) {
      if (a > b) std::swap(a, b);
      if (a == b || a < 0 || b >= n) throw std::invalid_argument("bad undirected edge");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const auto& [a, b] : edges_) {
      adjacency_[static_cast<std::size_t>(a)].push_back(b);
      adjacency_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  }

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(Vertex a, Vertex b) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) return false;
    auto list = neighbors(a);
    return std::binary_search(list.begin(), list.end(), b);
  }

 private:
  int n_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

struct DegreeProfile {
  std::vector<int> out_degree;
  std::vector<int> in_degree;
  int min_semidegree = 0;  // δ⁰
  int max_out_degree = 0;  // Δ⁺
  int max_in_degree = 0;   // Δ⁻
  int max_degree = 0;      // Δ = min(Δ⁺, Δ⁻)
};

inline DegreeProfile degree_profile(const Digraph& d) {
  DegreeProfile p;
  const int n = d.order();
  p.out_degree.resize(static_cast<std::size_t>(n));
  p.in_degree.resize(static_cast<std::size_t>(n));
  p.min_semidegree = n == 0 ? 0 : std::numeric_limits<int>::max();
  for (Vertex v = 0; v < n; ++v) {
    const int out = d.out_degree(v);
    const int in = d.in_degree(v);
    p.out_degree[static_cast<std::size_t>(v)] = out;
    p.in_degree[static_cast<std::size_t>(v)] = in;
    p.min_semidegree = std::min(p.min_semidegree, std::min(out, in));
    p.max_out_degree = std::max(p.max_out_degree, out);
    p.max_in_degree = std::max(p.max_in_degree, in);
  }
  p.max_degree = std::min(p.max_out_degree, p.max_in_degree);
  return p;
}

inline int min_semidegree(const Digraph& d) { return degree_profile(d).min_semidegree; }

/// Minimum out-degree; 0 for the empty digraph.
inline int min_out_degree(const Digraph& d) {
  if (d.order() == 0) return 0;
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < d.order(); ++v) best = std::min(best, d.out_degree(v));
  return best;
}

inline Digraph reverse(const Digraph& d) {
  std::vector<Arc> arcs;
  arcs.reserve(d.size());
  for (const auto& [u, v] : d.arcs()) arcs.emplace_back(v, u);
  return Digraph(d.order(), arcs);
}

inline SimpleGraph underlying_graph(const Digraph& d) {
  std::vector<std::pair<Vertex, Vertex>> edges(d.arcs().begin(), d.arcs().end());
  return SimpleGraph(d.order(), std::move(edges));
}

/// Bidirects every edge: each undirected edge becomes a digon.
inline Digraph digon_digraph(const SimpleGraph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * g.size());
  for (const auto& [a, b] : g.edges()) {
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  return Digraph(g.order(), arcs);
}

inline Digraph complete_digraph(int n) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) arcs.emplace_back(u, v);
  return Digraph(n, arcs);
}

/// Result of restricting a digraph to a vertex subset; `original[i]` is the
/// vertex of the parent digraph that became vertex i.
struct InducedSubdigraph {
  Digraph graph;
  std::vector<Vertex> original;

  Vertex local(Vertex parent_vertex) const {
    auto it = std::lower_bound(original.begin(), original.end(), parent_vertex);
    if (it == original.end() || *it != parent_vertex) return -1;
    return static_cast<Vertex>(it - original.begin());
  }
};

inline InducedSubdigraph induced_subdigraph(const Digraph& d, std::vector<Vertex> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (Vertex v : subset)
    if (!d.has_vertex(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " not in digraph");
  std::vector<Vertex> local(static_cast<std::size_t>(d.order()), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) local[static_cast<std::size_t>(subset[i])] = static_cast<Vertex>(i);
  std::vector<Arc> arcs;
  for (const auto& [u, v] : d.arcs()) {
    const Vertex lu = local[static_cast<std::size_t>(u)];
    const Vertex lv = local[static_cast<std::size_t>(v)];
    if (lu >= 0 && lv >= 0) arcs.emplace_back(lu, lv);
  }
  return {Digraph(static_cast<int>(subset.size()), arcs), std::move(subset)};
}

}  // namespace antitree
