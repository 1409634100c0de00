#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "antitree/anticonnect.hpp"
#include "antitree/digraph.hpp"
#include "antitree/embed.hpp"
#include "antitree/result.hpp"
#include "antitree/tree.hpp"
#include "antitree/tree_cut.hpp"

namespace antitree {

/// Cluster digraph with uniform cluster size s, plus the arc pattern of one
/// extra apex vertex: apex_out[i] arcs from the apex into cluster i and
/// apex_in[i] arcs from cluster i into the apex.
struct ReducedDigraph {
  Digraph clusters;
  int cluster_size = 1;
  std::vector<int> apex_out;
  std::vector<int> apex_in;

  int order() const { return clusters.order(); }
  int host_order() const { return clusters.order() * cluster_size; }
  /// Host id of the apex in blow_up_with_apex.
  Vertex apex() const { return host_order(); }
  Vertex first_vertex(int cluster) const { return cluster * cluster_size; }
  int cluster_of(Vertex host) const { return host / cluster_size; }
  /// k_R = (k / n) |R| for a guest with k arcs and a host of n vertices.
  double scaled_size(int k, int host_vertices) const {
    return host_vertices == 0 ? 0.0 : static_cast<double>(k) * order() / host_vertices;
  }

  friend bool operator==(const ReducedDigraph&, const ReducedDigraph&) = default;
};

inline ReducedDigraph make_reduced(Digraph clusters, int s) {
  if (s < 1) throw std::invalid_argument("cluster size must be at least 1");
  const auto r = static_cast<std::size_t>(clusters.order());
  return ReducedDigraph{std::move(clusters), s, std::vector<int>(r, 0), std::vector<int>(r, 0)};
}

/// Reverses every cluster arc and swaps the apex's in- and out-profiles.
inline ReducedDigraph reverse(const ReducedDigraph& rd) {
  return ReducedDigraph{reverse(rd.clusters), rd.cluster_size, rd.apex_in, rd.apex_out};
}

constexpr int kMaxBlowUpOrder = 4096;

namespace detail {

inline std::vector<Arc> blow_up_arcs(const ReducedDigraph& rd) {
  if (rd.cluster_size < 1) throw std::invalid_argument("cluster size must be at least 1");
  if (static_cast<long>(rd.order()) * rd.cluster_size + 1 > kMaxBlowUpOrder)
    throw std::length_error("blow-up exceeds " + std::to_string(kMaxBlowUpOrder) + " vertices");
  const int s = rd.cluster_size;
  std::vector<Arc> arcs;
  arcs.reserve(rd.clusters.size() * static_cast<std::size_t>(s * s));
  for (const auto& [i, j] : rd.clusters.arcs())
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) arcs.emplace_back(i * s + a, j * s + b);
  return arcs;
}

}  // namespace detail

/// Each cluster becomes s vertices (cluster i is i*s .. i*s+s-1) and each
/// cluster arc the complete bipartite arc set in its direction.
inline Digraph blow_up(const ReducedDigraph& rd) { return Digraph(rd.host_order(), detail::blow_up_arcs(rd)); }

/// blow_up plus the apex (vertex r*s), joined to the lowest-id vertices of
/// each cluster according to apex_out / apex_in.
inline Digraph blow_up_with_apex(const ReducedDigraph& rd) {
  auto arcs = detail::blow_up_arcs(rd);
  const Vertex u = rd.apex();
  for (int i = 0; i < rd.order(); ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const int out = ii < rd.apex_out.size() ? std::clamp(rd.apex_out[ii], 0, rd.cluster_size) : 0;
    const int in = ii < rd.apex_in.size() ? std::clamp(rd.apex_in[ii], 0, rd.cluster_size) : 0;
    for (int a = 0; a < out; ++a) arcs.emplace_back(u, rd.first_vertex(i) + a);
    for (int a = 0; a < in; ++a) arcs.emplace_back(rd.first_vertex(i) + a, u);
  }
  return Digraph(rd.host_order() + 1, arcs);
}

/// Out-neighbours of the apex inside cluster i.
inline std::vector<Vertex> apex_out_neighbors(const ReducedDigraph& rd, int cluster) {
  std::vector<Vertex> r;
  const int count = std::clamp(rd.apex_out.at(static_cast<std::size_t>(cluster)), 0, rd.cluster_size);
  for (int a = 0; a < count; ++a) r.push_back(rd.first_vertex(cluster) + a);
  return r;
}

// ---------------------------------------------------------------------------
// Cluster ledger

enum class Slice { S, P };

inline const char* to_string(Slice s) { return s == Slice::S ? "S" : "P"; }

struct Allocation {
  Vertex host = 0;
  int cluster = 0;
  Slice slice = Slice::S;
  bool spilled = false;
};

/// Per-cluster bookkeeping of host vertices. The top ceil(σs) positions of
/// each cluster form its S-slice, the rest its P-slice. Vertices are handed
/// out highest id first, so the low ids (the apex's neighbours) go last.
/// `reserve` free vertices per cluster are never handed out.
class ClusterLedger {
 public:
  ClusterLedger(int clusters, int s, double sigma = 0.1, int reserve = 0)
      : clusters_(clusters), s_(s), reserve_(reserve) {
    if (clusters < 0 || s < 1) throw std::invalid_argument("invalid ledger shape");
    if (!(sigma >= 0.0 && sigma <= 1.0)) throw std::invalid_argument("slice fraction must lie in [0, 1]");
    if (reserve < 0) throw std::invalid_argument("negative reserve");
    s_slice_ = std::min(s, detail::ceil_of(sigma * s));
    state_.assign(static_cast<std::size_t>(clusters) * static_cast<std::size_t>(s), kFree);
  }

  int clusters() const { return clusters_; }
  int capacity() const { return s_; }
  int reserve() const { return reserve_; }
  int slice_size(Slice slice) const { return slice == Slice::S ? s_slice_ : s_ - s_slice_; }
  int cluster_of(Vertex h) const { return h / s_; }
  Slice slice_of(Vertex h) const { return h % s_ >= s_ - s_slice_ ? Slice::S : Slice::P; }
  bool owns(Vertex h) const { return h >= 0 && h < clusters_ * s_; }

  void forbid(Vertex h) {
    if (owns(h) && state_[static_cast<std::size_t>(h)] == kFree) state_[static_cast<std::size_t>(h)] = kForbidden;
  }
  bool is_used(Vertex h) const { return owns(h) && state_[static_cast<std::size_t>(h)] == kUsed; }
  bool is_forbidden(Vertex h) const { return owns(h) && state_[static_cast<std::size_t>(h)] == kForbidden; }
  bool is_free(Vertex h) const { return owns(h) && state_[static_cast<std::size_t>(h)] == kFree; }

  int count(int cluster, char what, std::optional<Slice> slice = std::nullopt) const {
    int c = 0;
    for (Vertex h = cluster * s_; h < (cluster + 1) * s_; ++h)
      if (state_[static_cast<std::size_t>(h)] == what && (!slice || slice_of(h) == *slice)) ++c;
    return c;
  }
  int used_count(int cluster) const { return count(cluster, kUsed); }
  int used_count(int cluster, Slice slice) const { return count(cluster, kUsed, slice); }
  int forbidden_count(int cluster) const { return count(cluster, kForbidden); }
  int free_count(int cluster) const { return count(cluster, kFree); }
  int free_count(int cluster, Slice slice) const { return count(cluster, kFree, slice); }

  /// Vertices of the cluster that may still be handed out.
  int available(int cluster) const { return std::max(0, free_count(cluster) - reserve_); }
  int available(int cluster, Slice slice) const { return std::min(free_count(cluster, slice), available(cluster)); }

  /// Takes the highest free vertex of the preferred slice, spilling into the
  /// other slice of the same cluster when it is full.
  std::optional<Vertex> take(int cluster, Slice preferred, bool allow_spill = true) {
    if (cluster < 0 || cluster >= clusters_ || available(cluster) == 0) return std::nullopt;
    for (int pass = 0; pass < (allow_spill ? 2 : 1); ++pass) {
      const Slice slice = pass == 0 ? preferred : (preferred == Slice::S ? Slice::P : Slice::S);
      for (Vertex h = (cluster + 1) * s_ - 1; h >= cluster * s_; --h) {
        if (state_[static_cast<std::size_t>(h)] != kFree || slice_of(h) != slice) continue;
        mark(h, pass == 1);
        return h;
      }
    }
    return std::nullopt;
  }

  /// Takes one specific vertex, if it is free and the reserve allows.
  bool take_vertex(Vertex h) {
    if (!is_free(h) || available(cluster_of(h)) == 0) return false;
    mark(h, false);
    return true;
  }

  const std::vector<Allocation>& allocations() const { return allocations_; }
  int spills() const {
    return static_cast<int>(std::count_if(allocations_.begin(), allocations_.end(), [](const Allocation& a) { return a.spilled; }));
  }

  static constexpr char kFree = 0;
  static constexpr char kUsed = 1;
  static constexpr char kForbidden = 2;

 private:
  void mark(Vertex h, bool spilled) {
    state_[static_cast<std::size_t>(h)] = kUsed;
    allocations_.push_back({h, cluster_of(h), slice_of(h), spilled});
  }

  int clusters_;
  int s_;
  int reserve_;
  int s_slice_ = 0;
  std::vector<char> state_;
  std::vector<Allocation> allocations_;
};

// ---------------------------------------------------------------------------
// Reports

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ReducedParams {
  double gamma = 0.2;
  int ell = 2;
  double sigma = 0.1;    // S-slice fraction
  double rho = 0.05;     // per-cluster reserve fraction in component embedding (b)
  double beta = 0.5;     // seed decomposition granularity
  int connection_bound = 0;  // longest connecting antiwalk; 0 means 2|R|
  int budget_k = 0;      // k used in the γk/100 budget terms; 0 means the guest's own
  bool strict = true;    // stop at the first violated hypothesis
};

/// Outcome of a reduced-model embedding: either a host embedding or the name
/// of the first step or inequality that failed, plus every check evaluated.
struct EmbedReport {
  bool success = false;
  std::string failure;
  std::string detail;
  std::vector<InequalityCheck> checks;
  std::vector<std::string> notes;
  Embedding embedding;
  bool fast_path = false;
  int spills = 0;
  // Usage of B = In(C) ∩ Out(C) clusters by component embedding (b).
  int b_used = 0;
  double b_budget = 0.0;
  int forced_roots_outside_b = 0;

  explicit operator bool() const { return success; }

  const InequalityCheck* check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Every failure name the reduced-model operations can report.
inline const std::vector<std::string>& reduced_failure_names() {
  static const std::vector<std::string> names{
      "balanced_antidirected", "min_semidegree",   "component_size",       "antimatching_size",
      "piece_assignment",      "cluster_capacity", "connecting_antiwalk",  "sink_roots",
      "allowed_roots_nonempty", "allowed_roots_in_component", "allowed_roots_density", "size_gate",
      "reserve",               "allowed_roots_capacity", "b_usage_guarantee", "tree_cut",
      "eligible_components_at_least_ell", "verification"};
  return names;
}

struct ConnectFailure {
  std::string reason;  // capacity_exhausted, inconsistent_root, walk_too_short, not_antidirected
  Vertex vertex = -1;
  int cluster = -1;
};

namespace detail {

inline bool is_source_vertex(const RootedOrientedForest& f, Vertex v) { return f.in_degree(v) == 0; }

inline std::string format_double(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

inline bool record(EmbedReport& report, const std::string& name, double lhs, double rhs, bool holds) {
  report.checks.push_back({name, lhs, rhs, holds});
  return holds;
}

inline EmbedReport& fail(EmbedReport& report, const std::string& name, const std::string& detail) {
  report.success = false;
  report.failure = name;
  report.detail = detail;
  return report;
}

/// Cluster (index into W) of a vertex at relative level `rel` along a walk
/// of length m: levels up to m follow W, deeper ones alternate between the
/// last two clusters.
inline int walk_position(int rel, int m) {
  if (rel <= m) return rel;
  return m - 1 + (rel - (m - 1)) % 2;
}

/// Places the subtree of `f` spanned by `vertices` (rooted at `root`) along
/// W: relative level i <= m-2 into the S-slice of Z_i, deeper levels into the
/// P-slices of the last two clusters.
inline std::optional<ConnectFailure> place_along_walk(const RootedOrientedForest& f, const std::vector<Vertex>& vertices,
                                                      Vertex root, const Antiwalk& w, ClusterLedger& ledger,
                                                      std::vector<Vertex>& image,
                                                      const std::function<void(Vertex, Vertex)>& on_place = {}) {
  if (w.states.empty()) return ConnectFailure{"walk_too_short", root, -1};
  const int m = w.length();
  const int base = f.level(root);
  // Root role must match the first state when the root has arcs.
  if (f.degree(root) > 0) {
    const bool source = is_source_vertex(f, root);
    if (source != (w.front().role == Role::Out)) return ConnectFailure{"inconsistent_root", root, w.front().vertex};
  }
  std::vector<Vertex> order = vertices;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f.level(a) < f.level(b); });
  for (Vertex v : order) {
    const int rel = f.level(v) - base;
    if (rel > 0 && m == 0) return ConnectFailure{"walk_too_short", v, w.front().vertex};
    const State& st = w.states[static_cast<std::size_t>(walk_position(rel, m))];
    const Slice slice = rel <= m - 2 ? Slice::S : Slice::P;
    const auto h = ledger.take(st.vertex, slice);
    if (!h) return ConnectFailure{"capacity_exhausted", v, st.vertex};
    image[static_cast<std::size_t>(v)] = *h;
    if (on_place) on_place(v, *h);
  }
  return std::nullopt;
}

/// Shortest antiwalk from `start` whose last step traverses the arc (a, b);
/// the start state is dropped, so the result begins at the state adjacent to
/// it. A walk that would be trivial is extended by stepping back across the arc.
inline std::optional<Antiwalk> walk_to_arc(const Digraph& r, State start, Arc target,
                                           const std::function<bool(State)>& allowed = {}) {
  const auto pred = antiwalk_search(r, start, allowed);
  const State tail{target.first, Role::Out};
  const State head{target.second, Role::In};
  std::optional<Antiwalk> best;
  for (int option = 0; option < 2; ++option) {
    const State reach = option == 0 ? tail : head;
    const State last = option == 0 ? head : tail;
    if (pred[static_cast<std::size_t>(reach.index())] == -2) continue;
    Antiwalk w = antiwalk_from_search(pred, reach);
    w.states.push_back(last);
    if (!best || w.length() < best->length()) best = std::move(w);
  }
  if (!best) return std::nullopt;
  best->states.erase(best->states.begin());
  if (best->length() == 0) {
    const State& only = best->states.front();
    best->states.push_back(only.role == Role::In ? tail : head);
  }
  return best;
}

/// Shared placement engine of the component embeddings: seeds go into the
/// S-slice of a suitable neighbouring cluster, each part follows a connecting
/// antiwalk towards its target arc.
class ComponentPlacer {
 public:
  ComponentPlacer(const ReducedDigraph& rd, const RootedOrientedForest& f, ClusterLedger& ledger, int connection_bound)
      : rd_(rd), f_(f), ledger_(ledger), bound_(connection_bound) {
    image_.assign(static_cast<std::size_t>(f.order()), -1);
    preferred_.assign(static_cast<std::size_t>(rd.order()), 0);
  }

  std::vector<Vertex>& image() { return image_; }
  void set_preferred(std::vector<char> preferred) { preferred_ = std::move(preferred); }
  void set_prefer_active(std::function<bool()> active) { prefer_active_ = std::move(active); }
  void set_on_place(std::function<void(Vertex, Vertex)> cb) { on_place_ = std::move(cb); }
  int longest_walk() const { return longest_walk_; }

  bool prefer() const { return prefer_active_ && prefer_active_(); }

  /// Seed whose parent is already placed.
  std::optional<std::string> place_seed(Vertex v) {
    const Vertex p = f_.parent(v);
    const int x = rd_.cluster_of(image_[static_cast<std::size_t>(p)]);
    auto pool = f_.arc_toward_child(v) ? rd_.clusters.out_neighbors(x) : rd_.clusters.in_neighbors(x);
    int best = -1;
    auto key = [&](int y) {
      return std::make_tuple(prefer() ? preferred_[static_cast<std::size_t>(y)] : 0,
                             ledger_.available(y, Slice::S) > 0 ? 1 : 0, ledger_.available(y));
    };
    for (int y : pool) {
      if (ledger_.available(y) == 0) continue;
      if (best == -1 || key(y) > key(best)) best = y;
    }
    if (best == -1) return "cluster_capacity";
    return put(v, best, Slice::S);
  }

  std::optional<std::string> put(Vertex v, int cluster, Slice slice) {
    const auto h = ledger_.take(cluster, slice);
    if (!h) return "cluster_capacity";
    image_[static_cast<std::size_t>(v)] = *h;
    if (on_place_) on_place_(v, *h);
    return std::nullopt;
  }

  /// Places a part hanging from an already placed seed, heading for `target`.
  std::optional<std::string> place_part(const TreePart& part, Arc target, std::string& detail) {
    const Vertex seed = part.parent_seed;
    const State start{rd_.cluster_of(image_[static_cast<std::size_t>(seed)]),
                      f_.arc_toward_child(part.root) ? Role::Out : Role::In};
    std::optional<Antiwalk> w;
    if (prefer()) {
      w = walk_to_arc(rd_.clusters, start, target,
                      [&](State s) { return preferred_[static_cast<std::size_t>(s.vertex)] != 0; });
    }
    if (!w) w = walk_to_arc(rd_.clusters, start, target);
    if (!w) {
      detail = "no antiwalk from cluster " + std::to_string(start.vertex) + " to arc (" +
               std::to_string(target.first) + "," + std::to_string(target.second) + ")";
      return "connecting_antiwalk";
    }
    longest_walk_ = std::max(longest_walk_, w->length());
    if (w->length() > bound_) {
      detail = "connecting antiwalk of length " + std::to_string(w->length()) + " exceeds " + std::to_string(bound_);
      return "connecting_antiwalk";
    }
    if (auto err = place_along_walk(f_, part.vertices, part.root, *w, ledger_, image_, on_place_)) {
      detail = err->reason + " at tree vertex " + std::to_string(err->vertex) + " in cluster " + std::to_string(err->cluster);
      return err->reason == "capacity_exhausted" ? "cluster_capacity" : "connecting_antiwalk";
    }
    return std::nullopt;
  }

 private:
  const ReducedDigraph& rd_;
  const RootedOrientedForest& f_;
  ClusterLedger& ledger_;
  int bound_;
  std::vector<Vertex> image_;
  std::vector<char> preferred_;
  std::function<bool()> prefer_active_;
  std::function<void(Vertex, Vertex)> on_place_;
  int longest_walk_ = 0;
};

inline std::pair<int, int> count_roles(const RootedOrientedForest& f, const std::vector<Vertex>& vertices) {
  int sources = 0, sinks = 0;
  for (Vertex v : vertices) ++(is_source_vertex(f, v) ? sources : sinks);
  return {sources, sinks};
}

inline int connection_bound(const ReducedDigraph& rd, const ReducedParams& p) {
  return p.connection_bound > 0 ? p.connection_bound : std::max(2, 2 * rd.order());
}

inline std::vector<int> part_of_root(const RootedOrientedForest& f, const SeedDecomposition& dec) {
  std::vector<int> r(static_cast<std::size_t>(f.order()), -1);
  for (std::size_t i = 0; i < dec.parts.size(); ++i) r[static_cast<std::size_t>(dec.parts[i].root)] = static_cast<int>(i);
  return r;
}

}  // namespace detail

/// Embeds a small antidirected tree along the antiwalk W = Z_0..Z_m of R:
/// level i <= m-2 goes to the S-slice of Z_i, deeper levels alternate between
/// the P-slices of Z_{m-1} and Z_m. Returns the host image of every tree vertex.
inline Result<std::vector<Vertex>, ConnectFailure> connect_embed(const ReducedDigraph& rd, const Antiwalk& w,
                                                                 const RootedOrientedTree& t, ClusterLedger& ledger) {
  if (!classify_antidirected(t)) return ConnectFailure{"not_antidirected", -1, -1};
  if (!is_valid_antiwalk(rd.clusters, w)) throw std::invalid_argument("walk is not an antiwalk of R");
  std::vector<Vertex> all(static_cast<std::size_t>(t.order()));
  std::iota(all.begin(), all.end(), 0);
  std::vector<Vertex> image(static_cast<std::size_t>(t.order()), -1);
  if (auto err = detail::place_along_walk(t, all, t.root(), w, ledger, image)) return *err;
  return image;
}

/// Component embedding (a): seeds and links in S-slices, each part routed to
/// one arc of an antimatching of size t = ceil((1/2+γ)k_R) and its remainder
/// placed in the P-slices of that arc's clusters. The result is an embedding
/// into blow_up(rd).
inline EmbedReport embed_in_component_a(const ReducedDigraph& rd, const Anticomponent& c, const RootedOrientedTree& t,
                                        const ReducedParams& params = {}, int host_vertices = 0) {
  EmbedReport report;
  const double gamma = params.gamma;
  if (!is_balanced_antidirected(t)) return detail::fail(report, "balanced_antidirected", "guest is not a balanced antidirected tree");
  const int n = host_vertices > 0 ? host_vertices : rd.host_order();
  const int k = t.k();
  const double k_r = rd.scaled_size(k, n);
  const int delta = min_semidegree(rd.clusters);
  const bool semidegree_ok = detail::record(report, "min_semidegree", delta, (0.5 + gamma) * k_r,
                                            detail::at_most((0.5 + gamma) * k_r, delta));
  if (!semidegree_ok && params.strict) return detail::fail(report, "min_semidegree", "δ⁰(R) < (1/2+γ)k_R");
  const bool size_ok = detail::record(report, "component_size", c.vertex_count(), (1.0 + gamma) * k_r,
                                      detail::at_most((1.0 + gamma) * k_r, c.vertex_count()));
  if (!size_ok && params.strict) return detail::fail(report, "component_size", "|C| < (1+γ)k_R");

  const int t_size = std::max(1, detail::ceil_of((0.5 + gamma) * k_r));
  Antimatching m = maximum_antimatching(rd.clusters, c);
  const bool matching_ok = detail::record(report, "antimatching_size", m.size(), t_size, m.size() >= t_size);
  if (m.size() == 0 || (!matching_ok && params.strict))
    return detail::fail(report, "antimatching_size", "maximum antimatching has " + std::to_string(m.size()) + " arcs, need " + std::to_string(t_size));
  if (m.size() > t_size) m.arcs.resize(static_cast<std::size_t>(t_size));

  ClusterLedger ledger(rd.order(), rd.cluster_size, params.sigma, 0);
  const int bound = detail::connection_bound(rd, params);
  const auto dec = seed_decomposition(t, params.beta, bound);

  std::vector<PiecePair> pairs;
  for (const auto& part : dec.parts) {
    const auto [src, snk] = detail::count_roles(t, part.vertices);
    pairs.push_back({src, snk});
  }
  std::vector<double> cap_p, cap_q;
  for (const auto& [a, b] : m.arcs) {
    cap_p.push_back(ledger.available(a, Slice::P));
    cap_q.push_back(ledger.available(b, Slice::P));
  }
  std::vector<int> target(pairs.size(), 0);
  if (!pairs.empty()) {
    auto packed = pack_pairs(pairs, cap_p, cap_q);
    if (!packed) return detail::fail(report, "piece_assignment", "parts do not fit the P-slices of the antimatching clusters");
    target = *packed;
  }

  detail::ComponentPlacer placer(rd, t, ledger, bound);
  const auto part_index = detail::part_of_root(t, dec);
  std::vector<char> is_seed(static_cast<std::size_t>(t.order()), 0);
  for (Vertex s : dec.seeds) is_seed[static_cast<std::size_t>(s)] = 1;
  for (Vertex v : t.preorder()) {
    std::optional<std::string> err;
    std::string detail;
    if (v == t.root()) {
      const auto& pool = detail::is_source_vertex(t, v) ? c.out : c.in;
      int best = -1;
      for (int x : pool) {
        if (ledger.available(x) == 0) continue;
        if (best == -1 || std::make_pair(ledger.available(x, Slice::S), ledger.available(x)) >
                              std::make_pair(ledger.available(best, Slice::S), ledger.available(best)))
          best = x;
      }
      err = best == -1 ? std::optional<std::string>("cluster_capacity") : placer.put(v, best, Slice::S);
    } else if (is_seed[static_cast<std::size_t>(v)]) {
      err = placer.place_seed(v);
    } else if (const int pi = part_index[static_cast<std::size_t>(v)]; pi >= 0) {
      err = placer.place_part(dec.parts[static_cast<std::size_t>(pi)],
                              m.arcs[static_cast<std::size_t>(target[static_cast<std::size_t>(pi)])], detail);
    }
    if (err) return detail::fail(report, *err, detail.empty() ? "while placing tree vertex " + std::to_string(v) : detail);
  }
  report.embedding.image = placer.image();
  report.spills = ledger.spills();
  report.notes.push_back("antimatching arcs used: " + std::to_string(m.size()));
  report.notes.push_back("seeds: " + std::to_string(dec.seeds.size()) + ", parts: " + std::to_string(dec.parts.size()));
  report.notes.push_back("longest connecting antiwalk: " + std::to_string(placer.longest_walk()));
  if (report.spills > 0) report.notes.push_back("slice spills: " + std::to_string(report.spills));
  report.success = true;
  return report;
}

/// Inputs of component embedding (b) beyond the component itself.
struct ForestTask {
  RootedOrientedForest forest;
  std::vector<Vertex> forbidden;  // host vertices U
  std::vector<Vertex> allowed_roots;  // host vertices N
};

/// Component embedding (b): embeds a forest with sink roots into the clusters
/// of C avoiding U, roots into N, using clusters of B = In(C) ∩ Out(C) first
/// until b = δ⁺(B)s - γk/100 of them are used.
inline EmbedReport embed_in_component_b(const ReducedDigraph& rd, const Anticomponent& c, const ForestTask& task,
                                        const ReducedParams& params = {}) {
  EmbedReport report;
  const auto& f = task.forest;
  const double gamma = params.gamma;
  const int s = rd.cluster_size;
  const int k = params.budget_k > 0 ? params.budget_k : f.order();
  auto hypothesis = [&](const std::string& name, double lhs, double rhs, bool holds, const std::string& what) {
    detail::record(report, name, lhs, rhs, holds);
    if (!holds) {
      if (params.strict) {
        detail::fail(report, name, what);
        return false;
      }
      report.notes.push_back("guarantee void: " + what);
    }
    return true;
  };

  const auto marking = classify_antidirected(f);
  if (!marking) return detail::fail(report, "balanced_antidirected", "forest is not antidirected");
  int source_roots = 0;
  for (Vertex r : f.roots())
    if (f.degree(r) > 0 && detail::is_source_vertex(f, r)) ++source_roots;
  if (!hypothesis("sink_roots", source_roots, 0, source_roots == 0, "a root of J is a source")) return report;

  std::vector<char> in_component(static_cast<std::size_t>(rd.order()), 0), in_b(static_cast<std::size_t>(rd.order()), 0),
      in_set(static_cast<std::size_t>(rd.order()), 0);
  for (Vertex x : c.vertices()) in_component[static_cast<std::size_t>(x)] = 1;
  for (Vertex x : c.both) in_b[static_cast<std::size_t>(x)] = 1;
  for (Vertex x : c.in) in_set[static_cast<std::size_t>(x)] = 1;

  std::vector<char> forbidden(static_cast<std::size_t>(rd.host_order()), 0);
  int u_in_component = 0;
  for (Vertex h : task.forbidden) {
    if (h < 0 || h >= rd.host_order() || forbidden[static_cast<std::size_t>(h)]) continue;
    forbidden[static_cast<std::size_t>(h)] = 1;
    if (in_component[static_cast<std::size_t>(rd.cluster_of(h))]) ++u_in_component;
  }

  std::vector<Vertex> allowed = task.allowed_roots;
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (!hypothesis("allowed_roots_nonempty", static_cast<double>(allowed.size()), 1, !allowed.empty(), "N is empty")) return report;
  int outside = 0;
  for (Vertex h : allowed)
    if (h < 0 || h >= rd.host_order() || !in_set[static_cast<std::size_t>(rd.cluster_of(h))] || forbidden[static_cast<std::size_t>(h)])
      ++outside;
  if (!hypothesis("allowed_roots_in_component", outside, 0, outside == 0, "N is not inside In(C) \\ U")) return report;
  const double density = gamma / 100.0 * static_cast<double>(c.in.size()) * s;
  if (!hypothesis("allowed_roots_density", static_cast<double>(allowed.size()), density,
                  detail::at_most(density, static_cast<double>(allowed.size())), "|N| < (γ/100)|In(C)|s"))
    return report;

  const auto stats = component_stats(rd.clusters, c);
  const int delta = min_semidegree(rd.clusters);
  const double gate = std::max(static_cast<double>(delta) * s - u_in_component,
                               static_cast<double>(stats.b_min_out_degree) * s) - gamma * k / 100.0;
  if (!hypothesis("size_gate", f.order(), gate, detail::at_most(f.order(), gate),
                  "|J| > max(δ⁰(R)s - |U|, δ⁺(B)s) - γk/100"))
    return report;

  const int reserve = detail::ceil_of(params.rho * s);
  int worst = s;
  for (Vertex x : c.vertices()) {
    int free = 0;
    for (Vertex h = rd.first_vertex(x); h < rd.first_vertex(x) + s; ++h) free += forbidden[static_cast<std::size_t>(h)] ? 0 : 1;
    worst = std::min(worst, free);
  }
  if (!hypothesis("reserve", worst, reserve, worst >= reserve, "some cluster of C has fewer than ρs vertices outside U"))
    return report;

  ClusterLedger ledger(rd.order(), s, params.sigma, reserve);
  for (Vertex h = 0; h < rd.host_order(); ++h) {
    // Clusters outside C are closed to this embedding.
    if (forbidden[static_cast<std::size_t>(h)] || !in_component[static_cast<std::size_t>(rd.cluster_of(h))]) ledger.forbid(h);
  }

  report.b_budget = static_cast<double>(stats.b_min_out_degree) * s - gamma * k / 100.0;
  const double b_budget = report.b_budget;
  int b_used = 0;
  auto b_exhausted = [&] {
    for (Vertex x : c.both)
      if (ledger.available(x) > 0) return false;
    return true;
  };

  const int bound = detail::connection_bound(rd, params);
  const auto dec = seed_decomposition(f, params.beta, bound);
  detail::ComponentPlacer placer(rd, f, ledger, bound);
  placer.set_preferred(in_b);
  placer.set_prefer_active([&] { return b_used < b_budget; });
  placer.set_on_place([&](Vertex, Vertex h) {
    if (in_b[static_cast<std::size_t>(rd.cluster_of(h))]) ++b_used;
  });

  const auto part_index = detail::part_of_root(f, dec);
  std::vector<char> is_seed(static_cast<std::size_t>(f.order()), 0);
  for (Vertex v : dec.seeds) is_seed[static_cast<std::size_t>(v)] = 1;
  std::vector<char> root_taken(allowed.size(), 0);

  auto choose_target = [&](const TreePart& part) {
    const auto [src, snk] = detail::count_roles(f, part.vertices);
    const bool want_b = b_used < b_budget;
    std::optional<Arc> best;
    std::tuple<int, int, int> best_key{};
    for (const auto& arc : c.arcs) {
      const int pa = ledger.available(arc.first, Slice::P) + ledger.available(arc.first, Slice::S);
      const int pb = ledger.available(arc.second, Slice::P) + ledger.available(arc.second, Slice::S);
      const int fits = pa >= src && pb >= snk ? 1 : 0;
      const int b_arc = want_b && in_b[static_cast<std::size_t>(arc.first)] && in_b[static_cast<std::size_t>(arc.second)] ? 1 : 0;
      const std::tuple<int, int, int> key{fits, b_arc, std::min(pa - src, pb - snk)};
      if (!best || key > best_key) {
        best = arc;
        best_key = key;
      }
    }
    return best;
  };

  for (Vertex v : f.preorder()) {
    std::optional<std::string> err;
    std::string detail;
    if (f.parent(v) == -1) {
      // Root: a free vertex of N, B clusters first, then the roomiest cluster.
      int pick = -1;
      auto key = [&](std::size_t i) {
        const int x = rd.cluster_of(allowed[i]);
        return std::make_pair(b_used < b_budget ? in_b[static_cast<std::size_t>(x)] : 0, ledger.available(x));
      };
      for (std::size_t i = 0; i < allowed.size(); ++i) {
        if (root_taken[i] || !ledger.is_free(allowed[i]) || ledger.available(rd.cluster_of(allowed[i])) == 0) continue;
        if (pick == -1 || key(i) > key(static_cast<std::size_t>(pick))) pick = static_cast<int>(i);
      }
      if (pick == -1) {
        err = "allowed_roots_capacity";
        detail = "no free vertex of N left for root " + std::to_string(v);
      } else {
        const Vertex h = allowed[static_cast<std::size_t>(pick)];
        root_taken[static_cast<std::size_t>(pick)] = 1;
        ledger.take_vertex(h);
        placer.image()[static_cast<std::size_t>(v)] = h;
        if (in_b[static_cast<std::size_t>(rd.cluster_of(h))]) {
          ++b_used;
        } else {
          bool any_b = false;
          for (Vertex x : allowed)
            if (in_b[static_cast<std::size_t>(rd.cluster_of(x))] && ledger.is_free(x)) any_b = true;
          if (!any_b) ++report.forced_roots_outside_b;
        }
      }
    } else if (is_seed[static_cast<std::size_t>(v)]) {
      err = placer.place_seed(v);
    } else if (const int pi = part_index[static_cast<std::size_t>(v)]; pi >= 0) {
      const auto& part = dec.parts[static_cast<std::size_t>(pi)];
      const auto arc = choose_target(part);
      if (!arc) {
        err = "connecting_antiwalk";
        detail = "component has no arcs";
      } else {
        err = placer.place_part(part, *arc, detail);
      }
    }
    if (err) return detail::fail(report, *err, detail.empty() ? "while placing forest vertex " + std::to_string(v) : detail);
  }

  report.b_used = b_used;
  report.spills = ledger.spills();
  const double demand = std::min(static_cast<double>(f.order() - report.forced_roots_outside_b), b_budget);
  const bool exhausted = b_exhausted();
  detail::record(report, "b_usage_guarantee", b_used, demand, b_used + 1e-9 >= demand || exhausted);
  if (!(b_used + 1e-9 >= demand || exhausted))
    return detail::fail(report, "b_usage_guarantee",
                        "used " + std::to_string(b_used) + " B vertices, guarantee asks for " + detail::format_double(demand));
  report.embedding.image = placer.image();
  report.success = true;
  return report;
}

/// Whole-tree embedding into blow_up_with_apex(rd): cut T at z, map z to
/// the apex and embed the forests J_1..J_ℓ into distinct eligible
/// components, or finish through component embedding (a) when one component
/// is large enough.
inline EmbedReport theorem_pipeline(const ReducedDigraph& rd_in, const RootedOrientedTree& t_in, const ReducedParams& params = {}) {
  EmbedReport report;
  const double gamma = params.gamma;
  const int ell = params.ell;
  if (ell < 2) throw std::invalid_argument("ell must be at least 2");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!is_balanced_antidirected(t_in)) return detail::fail(report, "balanced_antidirected", "guest is not a balanced antidirected tree");

  const int k = t_in.k();
  const int s = rd_in.cluster_size;
  const int n = rd_in.host_order() + 1;
  const Digraph host_in = blow_up_with_apex(rd_in);
  detail::record(report, "theorem_min_semidegree", min_semidegree(host_in), (static_cast<double>(ell) / (2 * ell - 1) + gamma) * k,
                 detail::at_most((static_cast<double>(ell) / (2 * ell - 1) + gamma) * k, min_semidegree(host_in)));
  const int apex_degree = std::accumulate(rd_in.apex_out.begin(), rd_in.apex_out.end(), 0);
  detail::record(report, "apex_out_degree", apex_degree, (1.0 + gamma) * (ell - 1) * k,
                 detail::at_most((1.0 + gamma) * (ell - 1) * k, apex_degree));

  const double h = static_cast<double>(ell - 1) / (2 * ell - 1);
  auto cut = find_tree_cut(t_in, h, ell);
  detail::record(report, "tree_cut", cut ? 1 : 0, 1, static_cast<bool>(cut));
  if (!cut) {
    // The class bounds sum to exactly k when ℓ = 2; integer sizes can miss them.
    report.notes.push_back("guarantee void: no cut meets the class bounds, retrying with rounded bounds");
    cut = find_tree_cut(t_in, h, ell, CutBound::Rounded);
  }
  if (!cut) return detail::fail(report, "tree_cut", cut.error().reason);
  const Vertex z = cut->z;

  // Make z a source by reversing guest and host together.
  const bool reversed = !detail::is_source_vertex(t_in, z);
  const RootedOrientedTree t_work = reversed ? reverse(t_in) : t_in;
  const ReducedDigraph rd = reversed ? reverse(rd_in) : rd_in;
  if (reversed) report.notes.push_back("cut vertex is a sink: orientations reversed");
  const double k_r = rd.scaled_size(k, n);
  const auto comps = anticomponents(rd.clusters);

  auto finish = [&](EmbedReport& r) -> EmbedReport& {
    if (!verify_embedding(t_in, host_in, r.embedding)) return detail::fail(r, "verification", "embedding failed verification");
    r.success = true;
    return r;
  };

  // Fast path: one component of size at least (1 + γ/(100ℓ)) k_R.
  const double small_gamma = gamma / (100.0 * ell);
  int giant = -1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!detail::at_most((1.0 + small_gamma) * k_r, comps[i].vertex_count())) continue;
    if (giant == -1 || comps[i].vertex_count() > comps[static_cast<std::size_t>(giant)].vertex_count()) giant = static_cast<int>(i);
  }
  if (giant >= 0) {
    ReducedParams sub = params;
    sub.gamma = small_gamma;
    auto a = embed_in_component_a(rd, comps[static_cast<std::size_t>(giant)], t_work, sub, n);
    for (auto& ch : a.checks) report.checks.push_back({"component_a." + ch.name, ch.lhs, ch.rhs, ch.holds});
    if (a.success) {
      report.embedding = std::move(a.embedding);
      report.fast_path = true;
      report.spills = a.spills;
      report.notes.push_back("large component " + std::to_string(giant) + " embeds the whole tree");
      return finish(report);
    }
    report.notes.push_back("large-component embedding failed at " + a.failure + ": " + a.detail);
  }

  // Eligible components: the apex sends at least (γ/100)|C|s arcs into In(C).
  std::vector<int> eligible;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    int arcs = 0;
    for (Vertex x : comps[i].in) arcs += std::clamp(rd.apex_out[static_cast<std::size_t>(x)], 0, s);
    if (arcs > 0 && detail::at_most(gamma / 100.0 * comps[i].vertex_count() * s, arcs)) eligible.push_back(static_cast<int>(i));
  }
  detail::record(report, "eligible_components_at_least_ell", static_cast<double>(eligible.size()), ell,
                 static_cast<int>(eligible.size()) >= ell);
  if (static_cast<int>(eligible.size()) < ell)
    return detail::fail(report, "eligible_components_at_least_ell",
                        "only " + std::to_string(eligible.size()) + " components receive enough apex arcs");

  // Bgood: B-parts of eligible components avoid every other eligible component.
  bool disjoint = true;
  for (int a : eligible)
    for (int b : eligible)
      if (a != b)
        for (Vertex x : comps[static_cast<std::size_t>(a)].both) {
          const auto& other = comps[static_cast<std::size_t>(b)];
          if (other.has_in(x) || other.has_out(x)) disjoint = false;
        }
  detail::record(report, "b_parts_disjoint", disjoint ? 1 : 0, 1, disjoint);

  // Re-root at z so the forests J_i hang from z's neighbours.
  const RootedOrientedTree rooted = tree_from_arcs(t_work.order(), t_work.arcs(), z);
  std::vector<Vertex> image(static_cast<std::size_t>(rooted.order()), -1);
  image[static_cast<std::size_t>(z)] = rd.apex();
  std::vector<Vertex> used_all;
  std::vector<char> outside_b_used(static_cast<std::size_t>(rd.host_order()), 0);  // U_{i-1}
  std::vector<char> taken(comps.size(), 0);
  const int delta = min_semidegree(rd.clusters);

  for (std::size_t ci = 0; ci < cut->classes.size(); ++ci) {
    const auto& cls = cut->classes[ci];
    if (cls.vertices.empty()) continue;
    // Component with the least overlap with U_{i-1}, lowest index on ties.
    int choice = -1, best_overlap = 0;
    for (int e : eligible) {
      if (taken[static_cast<std::size_t>(e)]) continue;
      int overlap = 0;
      for (Vertex x : comps[static_cast<std::size_t>(e)].vertices())
        for (Vertex hv = rd.first_vertex(x); hv < rd.first_vertex(x) + s; ++hv) overlap += outside_b_used[static_cast<std::size_t>(hv)];
      if (choice == -1 || overlap < best_overlap) {
        choice = e;
        best_overlap = overlap;
      }
    }
    if (choice == -1)
      return detail::fail(report, "eligible_components_at_least_ell", "ran out of eligible components");
    taken[static_cast<std::size_t>(choice)] = 1;
    const auto& comp = comps[static_cast<std::size_t>(choice)];
    const std::string tag = "J" + std::to_string(ci + 1);
    const int j = static_cast<int>(cls.vertices.size());
    if (ci == 0) {
      detail::record(report, tag + ".first_budget", j, static_cast<double>(delta) * s - gamma / 2.0 * k,
                     detail::at_most(j, static_cast<double>(delta) * s - gamma / 2.0 * k));
    } else {
      const double rhs = static_cast<double>(delta) * s - gamma / (100.0 * ell) * k;
      detail::record(report, tag + ".budget", best_overlap + j, rhs, detail::at_most(best_overlap + j, rhs));
    }

    const auto sub = induced_subforest(rooted, cls.vertices);
    ForestTask task{sub.forest, used_all, {}};
    for (Vertex x : comp.in)
      for (Vertex hv : apex_out_neighbors(rd, x))
        if (std::find(used_all.begin(), used_all.end(), hv) == used_all.end()) task.allowed_roots.push_back(hv);
    ReducedParams bp = params;
    bp.strict = false;
    bp.budget_k = k;
    auto b = embed_in_component_b(rd, comp, task, bp);
    for (auto& ch : b.checks) report.checks.push_back({tag + "." + ch.name, ch.lhs, ch.rhs, ch.holds});
    for (auto& note : b.notes) report.notes.push_back(tag + ": " + note);
    report.spills += b.spills;
    report.b_used += b.b_used;
    if (!b.success) return detail::fail(report, b.failure, tag + " in component " + std::to_string(choice) + ": " + b.detail);
    report.notes.push_back(tag + " (" + std::to_string(j) + " vertices) -> component " + std::to_string(choice));
    for (std::size_t i = 0; i < sub.original.size(); ++i) {
      const Vertex hv = b.embedding.image[i];
      image[static_cast<std::size_t>(sub.original[i])] = hv;
      used_all.push_back(hv);
      if (!comp.has_both(rd.cluster_of(hv))) outside_b_used[static_cast<std::size_t>(hv)] = 1;
    }
  }
  report.embedding.image = std::move(image);
  return finish(report);
}

}  // namespace antitree
