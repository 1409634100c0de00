#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitree/result.hpp"
#include "antitree/tree.hpp"

namespace antitree {

namespace detail {

constexpr double kSlack = 1e-9;

inline bool at_most(double value, double bound) { return value <= bound + kSlack; }
inline int floor_of(double x) { return static_cast<int>(std::floor(x + kSlack)); }
inline int ceil_of(double x) { return static_cast<int>(std::ceil(x - kSlack)); }

inline std::vector<int> subtree_sizes(const RootedOrientedForest& f) {
  std::vector<int> size(static_cast<std::size_t>(f.order()), 1);
  auto order = f.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (f.parent(*it) != -1) size[static_cast<std::size_t>(f.parent(*it))] += size[static_cast<std::size_t>(*it)];
  return size;
}

}  // namespace detail

/// Components of T - z as sorted vertex lists, ordered by their smallest vertex.
inline std::vector<std::vector<Vertex>> components_without(const RootedOrientedTree& t, Vertex z) {
  std::vector<int> label(static_cast<std::size_t>(t.order()), -1);
  label[static_cast<std::size_t>(z)] = -2;
  std::vector<std::vector<Vertex>> comps;
  for (Vertex start = 0; start < t.order(); ++start) {
    if (label[static_cast<std::size_t>(start)] != -1) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<Vertex> stack{start};
    label[static_cast<std::size_t>(start)] = id;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      comps.back().push_back(v);
      for (Vertex w : t.neighbors(v)) {
        if (label[static_cast<std::size_t>(w)] != -1) continue;
        label[static_cast<std::size_t>(w)] = id;
        stack.push_back(w);
      }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

/// Sizes of the components of T - z, largest first.
inline std::vector<int> component_sizes_without(const RootedOrientedTree& t, Vertex z) {
  const auto sizes = detail::subtree_sizes(t);
  std::vector<int> result;
  for (Vertex c : t.children(z)) result.push_back(sizes[static_cast<std::size_t>(c)]);
  if (t.parent(z) != -1) result.push_back(t.order() - sizes[static_cast<std::size_t>(z)]);
  std::sort(result.rbegin(), result.rend());
  return result;
}

enum class CutBound {
  Literal,  // components <= hk except one <= (1-h)k, compared over the reals
  Rounded,  // same with hk and (1-h)k rounded up to integers
};

inline bool cut_bound_holds(const std::vector<int>& sizes_desc, double h, int k, CutBound bound) {
  double small = h * k;
  double large = (1.0 - h) * k;
  if (bound == CutBound::Rounded) {
    small = detail::ceil_of(small);
    large = detail::ceil_of(large);
  }
  int exceptional = 0;
  for (int size : sizes_desc) {
    if (detail::at_most(size, small)) continue;
    if (++exceptional > 1 || !detail::at_most(size, large)) return false;
  }
  return true;
}

inline bool cut_bound_holds(const RootedOrientedTree& t, Vertex z, double h, CutBound bound) {
  return cut_bound_holds(component_sizes_without(t, z), h, t.k(), bound);
}

/// A vertex z such that every component of T - z has at most hk vertices
/// except at most one with at most (1-h)k. The literal bound is returned
/// whenever some vertex achieves it; for small k rounding can make it
/// unattainable, and then the integer-rounded bound is guaranteed.
inline Vertex cut_vertex(const RootedOrientedTree& t, double h) {
  if (h < 0.0 || h > 1.0) throw std::invalid_argument("h must lie in [0, 1]");
  const int k = t.k();
  const auto sizes = detail::subtree_sizes(t);

  // Walk from the root into the unique oversized component while that shrinks it.
  Vertex z = t.root();
  for (;;) {
    if (cut_bound_holds(t, z, h, CutBound::Literal)) return z;
    Vertex next = -1;
    int biggest = 0;
    for (Vertex c : t.children(z)) {
      if (sizes[static_cast<std::size_t>(c)] > biggest) {
        biggest = sizes[static_cast<std::size_t>(c)];
        next = c;
      }
    }
    if (t.parent(z) != -1 && t.order() - sizes[static_cast<std::size_t>(z)] > biggest) {
      biggest = t.order() - sizes[static_cast<std::size_t>(z)];
      next = t.parent(z);
    }
    // Moving into a component of size m leaves one of size k + 1 - m behind.
    if (next == -1 || detail::at_most(biggest, h * k) || t.order() - biggest >= biggest) break;
    z = next;
  }

  for (Vertex v = 0; v < t.order(); ++v)
    if (cut_bound_holds(t, v, h, CutBound::Literal)) return v;
  if (cut_bound_holds(t, z, h, CutBound::Rounded)) return z;
  for (Vertex v = 0; v < t.order(); ++v)
    if (cut_bound_holds(t, v, h, CutBound::Rounded)) return v;
  return z;
}

struct TreeCutClass {
  std::vector<int> components;  // indices into TreeCut::components
  std::vector<Vertex> vertices;  // sorted
  int size = 0;
};

/// Partition of the components of T - z into ℓ classes J_1..J_ℓ, sizes descending.
struct TreeCut {
  Vertex z = 0;
  double h = 0.0;
  int k = 0;
  CutBound bound = CutBound::Literal;
  std::vector<std::vector<Vertex>> components;
  std::vector<TreeCutClass> classes;
};

struct PartitionFailure {
  std::string reason;
  std::vector<int> component_sizes;
  int first_capacity = 0;
  int other_capacity = 0;
};

namespace detail {

// Exact bin packing of component sizes into one bin of capacity `first`
// and (bins - 1) bins of capacity `other`. Items must be sorted descending.
inline bool pack_components(const std::vector<int>& items, std::size_t index, std::vector<int>& load,
                            const std::vector<int>& capacity, std::vector<int>& assignment, int remaining,
                            int free_total) {
  if (index == items.size()) return true;
  if (remaining > free_total) return false;
  const int item = items[index];
  // Identical consecutive items go to non-decreasing bins.
  const int start = (index > 0 && items[index - 1] == item) ? assignment[index - 1] : 0;
  for (int b = start; b < static_cast<int>(load.size()); ++b) {
    const auto bi = static_cast<std::size_t>(b);
    if (load[bi] + item > capacity[bi]) continue;
    // Bins with identical capacity and load are interchangeable.
    bool duplicate = false;
    for (int e = start; e < b; ++e) {
      const auto ei = static_cast<std::size_t>(e);
      if (capacity[ei] == capacity[bi] && load[ei] == load[bi]) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    load[bi] += item;
    assignment[index] = b;
    if (pack_components(items, index + 1, load, capacity, assignment, remaining - item, free_total - item))
      return true;
    load[bi] -= item;
  }
  return false;
}

}  // namespace detail

/// Groups the components of T - z into ℓ classes with j_1 <= (1-h)k and
/// j_i <= hk for i >= 2 (exact search; classes may be empty). With
/// CutBound::Rounded both bounds are rounded up to integers.
inline Result<TreeCut, PartitionFailure> partition_components(const RootedOrientedTree& t, Vertex z, double h,
                                                              int ell, CutBound bound = CutBound::Literal) {
  if (ell < 1) throw std::invalid_argument("need at least one class");
  if (z < 0 || z >= t.order()) throw std::invalid_argument("cut vertex out of range");
  TreeCut cut;
  cut.z = z;
  cut.h = h;
  cut.k = t.k();
  cut.bound = bound;
  cut.components = components_without(t, z);

  std::vector<int> order(cut.components.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cut.components[static_cast<std::size_t>(a)].size() > cut.components[static_cast<std::size_t>(b)].size();
  });
  std::vector<int> items;
  int total = 0;
  for (int i : order) {
    items.push_back(static_cast<int>(cut.components[static_cast<std::size_t>(i)].size()));
    total += items.back();
  }
  const bool up = bound == CutBound::Rounded;
  const int first_cap = up ? detail::ceil_of((1.0 - h) * cut.k) : detail::floor_of((1.0 - h) * cut.k);
  const int other_cap = up ? detail::ceil_of(h * cut.k) : detail::floor_of(h * cut.k);
  std::vector<int> capacity(static_cast<std::size_t>(ell), other_cap);
  capacity[0] = std::max(first_cap, other_cap);
  std::vector<int> load(capacity.size(), 0);
  std::vector<int> assignment(items.size(), 0);
  const int free_total = std::accumulate(capacity.begin(), capacity.end(), 0);
  if (!detail::pack_components(items, 0, load, capacity, assignment, total, free_total))
    return PartitionFailure{"no partition of the components of T - z meets the class bounds", items,
                            capacity[0], other_cap};

  cut.classes.assign(capacity.size(), {});
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& cls = cut.classes[static_cast<std::size_t>(assignment[i])];
    const int comp = order[i];
    cls.components.push_back(comp);
    const auto& vs = cut.components[static_cast<std::size_t>(comp)];
    cls.vertices.insert(cls.vertices.end(), vs.begin(), vs.end());
    cls.size += static_cast<int>(vs.size());
  }
  for (auto& cls : cut.classes) {
    std::sort(cls.components.begin(), cls.components.end());
    std::sort(cls.vertices.begin(), cls.vertices.end());
  }
  std::stable_sort(cut.classes.begin(), cut.classes.end(),
                   [](const TreeCutClass& a, const TreeCutClass& b) { return a.size > b.size; });
  return cut;
}

inline bool tree_cut_bounds_hold(const TreeCut& cut) {
  for (std::size_t i = 0; i < cut.classes.size(); ++i) {
    double limit = i == 0 ? std::max(1.0 - cut.h, cut.h) * cut.k : cut.h * cut.k;
    if (cut.bound == CutBound::Rounded) limit = detail::ceil_of(limit);
    if (!detail::at_most(cut.classes[i].size, limit)) return false;
    if (i > 0 && cut.classes[i].size > cut.classes[i - 1].size) return false;
  }
  return true;
}

/// Cut vertex plus class partition: tries cut_vertex(T, h) first, then every
/// other vertex in order, and returns the first feasible partition.
inline Result<TreeCut, PartitionFailure> find_tree_cut(const RootedOrientedTree& t, double h, int ell,
                                                       CutBound bound = CutBound::Literal) {
  const Vertex preferred = cut_vertex(t, h);
  auto first = partition_components(t, preferred, h, ell, bound);
  if (first) return first;
  for (Vertex z = 0; z < t.order(); ++z) {
    if (z == preferred) continue;
    auto attempt = partition_components(t, z, h, ell, bound);
    if (attempt) return attempt;
  }
  return first;
}

/// One component X of T - S: its root, the seed it hangs from, and the
/// split into link (first levels) and pieces (the rest).
struct TreePart {
  Vertex root = 0;
  Vertex parent_seed = -1;
  std::vector<Vertex> vertices;             // sorted
  std::vector<Vertex> link;                 // vertices at relative level < link depth
  std::vector<std::vector<Vertex>> pieces;  // components of X - link
};

struct SeedDecomposition {
  double beta = 0.0;
  int link_depth = 0;
  std::vector<Vertex> seeds;  // sorted; contains every root
  std::vector<TreePart> parts;  // ordered by the preorder position of their roots
};

/// Splits a part into its first `depth` levels and the remaining components.
inline void split_part(const RootedOrientedForest& f, TreePart& part, int depth) {
  part.link.clear();
  part.pieces.clear();
  const int base = f.level(part.root);
  std::vector<Vertex> rest;
  for (Vertex v : part.vertices) (f.level(v) - base < depth ? part.link : rest).push_back(v);
  // Each piece is rooted at a vertex of relative level == depth.
  std::vector<char> in_rest(static_cast<std::size_t>(f.order()), 0);
  for (Vertex v : rest) in_rest[static_cast<std::size_t>(v)] = 1;
  for (Vertex v : rest) {
    if (f.level(v) - base != depth) continue;
    std::vector<Vertex> piece;
    std::vector<Vertex> stack{v};
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      piece.push_back(x);
      for (Vertex c : f.children(x))
        if (in_rest[static_cast<std::size_t>(c)]) stack.push_back(c);
    }
    std::sort(piece.begin(), piece.end());
    part.pieces.push_back(std::move(piece));
  }
}

/// Seeds S containing every root, such that each component of T - S has at
/// most βk vertices (k = arcs of the forest) and |S| <= 2/β + 2 per tree.
inline SeedDecomposition seed_decomposition(const RootedOrientedForest& f, double beta, int link_depth = 0) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0, 1]");
  if (link_depth < 0) throw std::invalid_argument("link depth must be non-negative");
  SeedDecomposition result;
  result.beta = beta;
  result.link_depth = link_depth;
  const double limit = beta * std::max(1, f.arc_count());
  const auto order = f.preorder();

  std::vector<int> pending(static_cast<std::size_t>(f.order()), 0);
  std::vector<char> seed(static_cast<std::size_t>(f.order()), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    int mass = 1;
    for (Vertex c : f.children(v)) mass += pending[static_cast<std::size_t>(c)];
    if (f.parent(v) == -1 || !detail::at_most(mass, limit)) {
      seed[static_cast<std::size_t>(v)] = 1;
      pending[static_cast<std::size_t>(v)] = 0;
    } else {
      pending[static_cast<std::size_t>(v)] = mass;
    }
  }
  for (Vertex v = 0; v < f.order(); ++v)
    if (seed[static_cast<std::size_t>(v)]) result.seeds.push_back(v);

  for (Vertex v : order) {
    if (seed[static_cast<std::size_t>(v)] || !seed[static_cast<std::size_t>(f.parent(v))]) continue;
    TreePart part;
    part.root = v;
    part.parent_seed = f.parent(v);
    std::vector<Vertex> stack{v};
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      part.vertices.push_back(x);
      for (Vertex c : f.children(x))
        if (!seed[static_cast<std::size_t>(c)]) stack.push_back(c);
    }
    std::sort(part.vertices.begin(), part.vertices.end());
    split_part(f, part, link_depth);
    result.parts.push_back(std::move(part));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Piece assignment

struct PiecePair {
  int sources = 0;
  int sinks = 0;
};

struct PieceAssignment {
  double mu = 0.0;
  int s = 0;
  int t = 0;
  double class_bound = 0.0;              // (1 - 7μ)s
  std::vector<int> class_of;             // per input index
  std::vector<std::vector<int>> classes; // input indices per class
  std::vector<long> source_sums;
  std::vector<long> sink_sums;
  bool used_exhaustive_search = false;
};

struct AssignFailure {
  std::vector<std::string> violated;  // subset of {"balance", "pair_size", "total_size", "no_partition"}
  bool exhaustive = false;            // true when "no_partition" was established by exhaustive search
};

namespace detail {

inline bool fits(long load_p, long load_q, const PiecePair& x, double cap_p, double cap_q) {
  return at_most(static_cast<double>(load_p + x.sources), cap_p) &&
         at_most(static_cast<double>(load_q + x.sinks), cap_q);
}

inline bool exhaustive_pack(const std::vector<PiecePair>& pairs, const std::vector<int>& order, std::size_t index,
                            std::vector<long>& lp, std::vector<long>& lq, const std::vector<double>& cap_p,
                            const std::vector<double>& cap_q, std::vector<int>& class_of) {
  if (index == order.size()) return true;
  const auto& x = pairs[static_cast<std::size_t>(order[index])];
  for (std::size_t c = 0; c < lp.size(); ++c) {
    bool duplicate = false;
    for (std::size_t e = 0; e < c; ++e)
      if (lp[e] == lp[c] && lq[e] == lq[c] && cap_p[e] == cap_p[c] && cap_q[e] == cap_q[c]) duplicate = true;
    if (duplicate || !fits(lp[c], lq[c], x, cap_p[c], cap_q[c])) continue;
    lp[c] += x.sources;
    lq[c] += x.sinks;
    class_of[static_cast<std::size_t>(order[index])] = static_cast<int>(c);
    if (exhaustive_pack(pairs, order, index + 1, lp, lq, cap_p, cap_q, class_of)) return true;
    lp[c] -= x.sources;
    lq[c] -= x.sinks;
  }
  return false;
}

}  // namespace detail

/// Packs (sources, sinks) pairs into classes with per-class caps. Greedy:
/// largest pair first into the class whose worse relative load stays lowest;
/// exhaustive search backs it up for at most `exhaustive_limit` pairs.
/// Returns the class of each pair, or none.
inline std::optional<std::vector<int>> pack_pairs(const std::vector<PiecePair>& pairs,
                                                  const std::vector<double>& cap_sources,
                                                  const std::vector<double>& cap_sinks, bool* used_exhaustive = nullptr,
                                                  std::size_t exhaustive_limit = 12) {
  const std::size_t classes = cap_sources.size();
  if (classes == 0 || cap_sinks.size() != classes) throw std::invalid_argument("class caps mismatch");
  std::vector<int> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& x = pairs[static_cast<std::size_t>(a)];
    const auto& y = pairs[static_cast<std::size_t>(b)];
    return x.sources + x.sinks > y.sources + y.sinks;
  });
  std::vector<long> lp(classes, 0), lq(classes, 0);
  std::vector<int> class_of(pairs.size(), -1);
  bool ok = true;
  for (int i : order) {
    const auto& x = pairs[static_cast<std::size_t>(i)];
    std::size_t best = 0;
    double best_load = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
      const double rp = cap_sources[c] > 0 ? (lp[c] + x.sources) / cap_sources[c] : (lp[c] + x.sources > 0 ? 1e18 : 0);
      const double rq = cap_sinks[c] > 0 ? (lq[c] + x.sinks) / cap_sinks[c] : (lq[c] + x.sinks > 0 ? 1e18 : 0);
      const double load = std::max(rp, rq);
      if (c == 0 || load < best_load - detail::kSlack) {
        best = c;
        best_load = load;
      }
    }
    if (!detail::fits(lp[best], lq[best], x, cap_sources[best], cap_sinks[best])) ok = false;
    lp[best] += x.sources;
    lq[best] += x.sinks;
    class_of[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  if (ok) return class_of;
  if (pairs.size() > exhaustive_limit) return std::nullopt;
  if (used_exhaustive) *used_exhaustive = true;
  std::fill(lp.begin(), lp.end(), 0);
  std::fill(lq.begin(), lq.end(), 0);
  if (detail::exhaustive_pack(pairs, order, 0, lp, lq, cap_sources, cap_sinks, class_of)) return class_of;
  return std::nullopt;
}

/// Partition of the index set into t classes, each holding at most (1-7μ)s
/// sources and at most (1-7μ)s sinks, under the three hypotheses:
/// balanced totals, small pairs, and totals below (1-10μ)st.
inline Result<PieceAssignment, AssignFailure> assign_pieces(const std::vector<PiecePair>& pairs, double mu, int s,
                                                            int t) {
  if (t < 1) throw std::invalid_argument("need at least one class");
  long sum_p = 0, sum_q = 0;
  bool small_pairs = true;
  for (const auto& x : pairs) {
    sum_p += x.sources;
    sum_q += x.sinks;
    if (!detail::at_most(x.sources + x.sinks, mu * s)) small_pairs = false;
  }
  AssignFailure failure;
  if (!(detail::at_most((1.0 - mu) * sum_p, static_cast<double>(sum_q)) &&
        detail::at_most(static_cast<double>(sum_q), (1.0 + mu) * sum_p)))
    failure.violated.push_back("balance");
  if (!small_pairs) failure.violated.push_back("pair_size");
  if (!(static_cast<double>(std::max(sum_p, sum_q)) < (1.0 - 10.0 * mu) * s * t - detail::kSlack))
    failure.violated.push_back("total_size");
  if (!failure.violated.empty()) return failure;

  PieceAssignment a;
  a.mu = mu;
  a.s = s;
  a.t = t;
  a.class_bound = (1.0 - 7.0 * mu) * s;
  const std::vector<double> caps(static_cast<std::size_t>(t), a.class_bound);
  auto packed = pack_pairs(pairs, caps, caps, &a.used_exhaustive_search);
  if (!packed) {
    failure.violated.push_back("no_partition");
    failure.exhaustive = pairs.size() <= 12;
    return failure;
  }
  a.class_of = *packed;
  a.classes.assign(static_cast<std::size_t>(t), {});
  a.source_sums.assign(static_cast<std::size_t>(t), 0);
  a.sink_sums.assign(static_cast<std::size_t>(t), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto c = static_cast<std::size_t>(a.class_of[i]);
    a.classes[c].push_back(static_cast<int>(i));
    a.source_sums[c] += pairs[i].sources;
    a.sink_sums[c] += pairs[i].sinks;
  }
  return a;
}

}  // namespace antitree
