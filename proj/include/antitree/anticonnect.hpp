#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitree/digraph.hpp"
#include "antitree/matching.hpp"

namespace antitree {

enum class Role { Out, In };

inline Role opposite(Role r) { return r == Role::Out ? Role::In : Role::Out; }
inline const char* to_string(Role r) { return r == Role::Out ? "out" : "in"; }

/// A vertex together with the role it plays at one position of an antiwalk.
struct State {
  Vertex vertex = 0;
  Role role = Role::Out;

  int index() const { return 2 * vertex + (role == Role::In ? 1 : 0); }
  static State from_index(int i) { return {i / 2, (i % 2) ? Role::In : Role::Out}; }
  friend bool operator==(const State&, const State&) = default;
};

/// Walk alternating forward and backward arcs, stored as its state sequence.
/// Consecutive states alternate roles and (out-state, in-state) is an arc.
struct Antiwalk {
  std::vector<State> states;

  int length() const { return states.empty() ? 0 : static_cast<int>(states.size()) - 1; }
  const State& front() const { return states.front(); }
  const State& back() const { return states.back(); }
};

inline bool is_valid_antiwalk(const Digraph& d, const Antiwalk& w) {
  if (w.states.empty()) return false;
  for (const auto& s : w.states)
    if (!d.has_vertex(s.vertex)) return false;
  for (std::size_t i = 1; i < w.states.size(); ++i) {
    const State& a = w.states[i - 1];
    const State& b = w.states[i];
    if (a.role == b.role) return false;
    const State& tail = a.role == Role::Out ? a : b;
    const State& head = a.role == Role::Out ? b : a;
    if (!d.has_arc(tail.vertex, head.vertex)) return false;
  }
  return true;
}

/// Undirected graph on the 2n states: one edge {(u,out),(v,in)} per arc (u,v).
/// Antiwalks of D are exactly the walks of this graph.
inline SimpleGraph state_graph(const Digraph& d) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(d.size());
  for (const auto& [u, v] : d.arcs()) edges.emplace_back(State{u, Role::Out}.index(), State{v, Role::In}.index());
  return SimpleGraph(2 * d.order(), std::move(edges));
}

struct Anticomponent {
  std::vector<Arc> arcs;         // sorted
  std::vector<Vertex> out;       // Out(C), sorted
  std::vector<Vertex> in;        // In(C), sorted
  std::vector<Vertex> both;      // In(C) ∩ Out(C), sorted

  bool has_out(Vertex v) const { return std::binary_search(out.begin(), out.end(), v); }
  bool has_in(Vertex v) const { return std::binary_search(in.begin(), in.end(), v); }
  bool has_both(Vertex v) const { return std::binary_search(both.begin(), both.end(), v); }
  bool contains(const State& s) const { return s.role == Role::Out ? has_out(s.vertex) : has_in(s.vertex); }

  /// V(C) = In(C) ∪ Out(C).
  std::vector<Vertex> vertices() const {
    std::vector<Vertex> all;
    std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(all));
    return all;
  }
  int vertex_count() const { return static_cast<int>(out.size() + in.size() - both.size()); }

  friend bool operator==(const Anticomponent&, const Anticomponent&) = default;
};

namespace detail {

inline std::vector<int> state_component_labels(const SimpleGraph& states) {
  std::vector<int> label(static_cast<std::size_t>(states.order()), -1);
  int next = 0;
  for (int s = 0; s < states.order(); ++s) {
    if (label[static_cast<std::size_t>(s)] != -1 || states.degree(s) == 0) continue;
    std::queue<int> queue;
    queue.push(s);
    label[static_cast<std::size_t>(s)] = next;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop();
      for (int y : states.neighbors(x)) {
        if (label[static_cast<std::size_t>(y)] == -1) {
          label[static_cast<std::size_t>(y)] = next;
          queue.push(y);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace detail

/// Anticonnected components: the edge-carrying connected components of the
/// state graph, ordered by their smallest state.
inline std::vector<Anticomponent> anticomponents(const Digraph& d) {
  const SimpleGraph states = state_graph(d);
  const std::vector<int> label = detail::state_component_labels(states);
  const int count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<Anticomponent> result(static_cast<std::size_t>(std::max(count, 0)));
  for (int s = 0; s < states.order(); ++s) {
    const int c = label[static_cast<std::size_t>(s)];
    if (c < 0) continue;
    const State st = State::from_index(s);
    auto& comp = result[static_cast<std::size_t>(c)];
    (st.role == Role::Out ? comp.out : comp.in).push_back(st.vertex);
  }
  for (const auto& arc : d.arcs()) {
    const int c = label[static_cast<std::size_t>(State{arc.first, Role::Out}.index())];
    result[static_cast<std::size_t>(c)].arcs.push_back(arc);
  }
  for (auto& comp : result) {
    std::set_intersection(comp.out.begin(), comp.out.end(), comp.in.begin(), comp.in.end(),
                          std::back_inserter(comp.both));
  }
  return result;
}

/// States of degree zero in the state graph: roles a vertex never plays.
inline std::vector<State> isolated_states(const Digraph& d) {
  std::vector<State> result;
  for (Vertex v = 0; v < d.order(); ++v) {
    if (d.out_degree(v) == 0) result.push_back({v, Role::Out});
    if (d.in_degree(v) == 0) result.push_back({v, Role::In});
  }
  return result;
}

/// Breadth-first search over states starting from `source`, visiting only
/// states accepted by `allowed` (the source is always visited). Returns the
/// predecessor index of each reached state (-1 for the source, -2 if unreached).
inline std::vector<int> antiwalk_search(const Digraph& d, State source,
                                        const std::function<bool(State)>& allowed = {}) {
  std::vector<int> pred(static_cast<std::size_t>(2 * d.order()), -2);
  if (!d.has_vertex(source.vertex)) return pred;
  std::queue<int> queue;
  pred[static_cast<std::size_t>(source.index())] = -1;
  queue.push(source.index());
  while (!queue.empty()) {
    const State s = State::from_index(queue.front());
    queue.pop();
    // Neighbour states in increasing vertex order: lowest identifier wins ties.
    auto neighbours = s.role == Role::Out ? d.out_neighbors(s.vertex) : d.in_neighbors(s.vertex);
    for (Vertex w : neighbours) {
      const State next{w, opposite(s.role)};
      auto& slot = pred[static_cast<std::size_t>(next.index())];
      if (slot != -2) continue;
      if (allowed && !allowed(next)) continue;
      slot = s.index();
      queue.push(next.index());
    }
  }
  return pred;
}

inline Antiwalk antiwalk_from_search(const std::vector<int>& pred, State target) {
  Antiwalk w;
  for (int s = target.index(); s != -1; s = pred[static_cast<std::size_t>(s)]) w.states.push_back(State::from_index(s));
  std::reverse(w.states.begin(), w.states.end());
  return w;
}

/// A minimum-length antiwalk from (u, ru) to (v, rv), or none when the two
/// states lie in different state-graph components.
inline std::optional<Antiwalk> shortest_antiwalk(const Digraph& d, Vertex u, Role ru, Vertex v, Role rv) {
  if (!d.has_vertex(u) || !d.has_vertex(v)) throw std::invalid_argument("antiwalk endpoint not in digraph");
  const State target{v, rv};
  const auto pred = antiwalk_search(d, State{u, ru});
  if (pred[static_cast<std::size_t>(target.index())] == -2) return std::nullopt;
  return antiwalk_from_search(pred, target);
}

struct ComponentStats {
  int out_size = 0;
  int in_size = 0;
  int vertex_count = 0;
  InducedSubdigraph b_part;  // subdigraph of D induced by In(C) ∩ Out(C)
  int b_min_out_degree = 0;  // δ⁺(B), 0 when B is empty
};

/// Index of `c` among anticomponents(d), or -1.
inline int find_component(const Digraph& d, const Anticomponent& c) {
  const auto all = anticomponents(d);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == c) return static_cast<int>(i);
  return -1;
}

inline ComponentStats component_stats(const Digraph& d, const Anticomponent& c) {
  if (find_component(d, c) < 0) throw std::invalid_argument("component is not an anticomponent of this digraph");
  ComponentStats stats;
  stats.out_size = static_cast<int>(c.out.size());
  stats.in_size = static_cast<int>(c.in.size());
  stats.vertex_count = c.vertex_count();
  stats.b_part = induced_subdigraph(d, c.both);
  stats.b_min_out_degree = min_out_degree(stats.b_part.graph);
  return stats;
}

/// Pairwise vertex-disjoint arcs of one anticomponent.
struct Antimatching {
  std::vector<Arc> arcs;

  int size() const { return static_cast<int>(arcs.size()); }
  std::vector<Vertex> tails() const {
    std::vector<Vertex> r;
    for (const auto& a : arcs) r.push_back(a.first);
    return r;
  }
  std::vector<Vertex> heads() const {
    std::vector<Vertex> r;
    for (const auto& a : arcs) r.push_back(a.second);
    return r;
  }
};

inline bool is_valid_antimatching(const Anticomponent& c, const Antimatching& m) {
  std::vector<Vertex> ends;
  for (const auto& a : m.arcs) {
    if (!std::binary_search(c.arcs.begin(), c.arcs.end(), a)) return false;
    ends.push_back(a.first);
    ends.push_back(a.second);
  }
  std::sort(ends.begin(), ends.end());
  return std::adjacent_find(ends.begin(), ends.end()) == ends.end();
}

/// Largest antimatching of `c`: an exact maximum matching of the underlying
/// graph of its arcs, each matched edge read back as an arc of `c`.
inline Antimatching maximum_antimatching(const Digraph& d, const Anticomponent& c) {
  std::vector<std::pair<Vertex, Vertex>> edges(c.arcs.begin(), c.arcs.end());
  const SimpleGraph g(d.order(), std::move(edges));
  Antimatching m;
  for (const auto& [a, b] : matching_edges(maximum_matching(g))) {
    // a < b; prefer the arc (a, b) when both directions exist.
    if (std::binary_search(c.arcs.begin(), c.arcs.end(), Arc{a, b}))
      m.arcs.emplace_back(a, b);
    else
      m.arcs.emplace_back(b, a);
  }
  std::sort(m.arcs.begin(), m.arcs.end());
  return m;
}

/// An antimatching of exactly `t` arcs, or none if `c` has no matching that large.
inline std::optional<Antimatching> antimatching(const Digraph& d, const Anticomponent& c, int t) {
  if (t < 1) throw std::invalid_argument("antimatching size must be at least 1");
  Antimatching m = maximum_antimatching(d, c);
  if (m.size() < t) return std::nullopt;
  m.arcs.resize(static_cast<std::size_t>(t));
  return m;
}

/// Whether `c` meets the degree hypothesis guaranteeing an antimatching of size t:
/// at least 2t vertices, out-degree >= t on Out(C), in-degree >= t on In(C).
inline bool antimatching_hypothesis(const Digraph& d, const Anticomponent& c, int t) {
  if (c.vertex_count() < 2 * t) return false;
  for (Vertex v : c.out)
    if (d.out_degree(v) < t) return false;
  for (Vertex v : c.in)
    if (d.in_degree(v) < t) return false;
  return true;
}

}  // namespace antitree
