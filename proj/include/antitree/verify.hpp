#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "antitree/anticonnect.hpp"
#include "antitree/digraph.hpp"
#include "antitree/embed.hpp"
#include "antitree/extremal.hpp"
#include "antitree/io.hpp"
#include "antitree/reduced.hpp"
#include "antitree/tree.hpp"
#include "antitree/tree_cut.hpp"
#include "antitree/tree_gen.hpp"

namespace antitree {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON views of the core values

inline json to_json(const Digraph& d) {
  json arcs = json::array();
  for (const auto& [u, v] : d.arcs()) arcs.push_back({u, v});
  return {{"n", d.order()}, {"arcs", arcs}};
}

inline json to_json(const RootedOrientedForest& f) {
  json edges = json::array();
  for (Vertex v = 0; v < f.order(); ++v)
    if (f.parent(v) != -1) edges.push_back({f.parent(v), v, f.arc_toward_child(v) ? "+" : "-"});
  return {{"n", f.order()}, {"roots", f.roots()}, {"edges", edges}};
}

inline json to_json(const Antiwalk& w) {
  json states = json::array();
  for (const auto& s : w.states) states.push_back({s.vertex, to_string(s.role)});
  return {{"length", w.length()}, {"states", states}};
}

inline json vertex_map(const Embedding& e) {
  json pairs = json::array();
  for (std::size_t g = 0; g < e.image.size(); ++g) pairs.push_back({static_cast<int>(g), e.image[g]});
  return pairs;
}

inline json to_json(const EmbedReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  json out = {{"success", r.success}};
  if (!r.success) {
    out["failure"] = r.failure;
    out["detail"] = r.detail;
  } else {
    out["map"] = vertex_map(r.embedding);
  }
  out["fast_path"] = r.fast_path;
  out["checks"] = checks;
  out["notes"] = r.notes;
  return out;
}

// ---------------------------------------------------------------------------
// Harness

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(trial));
}

struct SuiteOptions {
  int n = 0;       // suite-specific size bound; 0 means the suite default
  int k = 0;       // suite-specific tree/guest bound; 0 means the suite default
  int trials = -1;  // -1 means the suite default
  std::uint64_t seed = 1;
  int workers = 0;  // 0 means hardware concurrency
};

/// Tally of one trial or of a whole suite.
class Tally {
 public:
  struct Invariant {
    long checked = 0;
    long passed = 0;
    json first_failure;
  };

  bool check(const std::string& name, bool ok, const std::function<json()>& witness = {}) {
    auto& inv = slot(name);
    ++inv.checked;
    if (ok) {
      ++inv.passed;
    } else if (inv.first_failure.is_null()) {
      inv.first_failure = witness ? witness() : json::object();
    }
    return ok;
  }
  void declare(const std::string& name) { slot(name); }
  void count(const std::string& stat, long by = 1) {
    auto it = std::find_if(stats_.begin(), stats_.end(), [&](const auto& p) { return p.first == stat; });
    if (it == stats_.end())
      stats_.emplace_back(stat, by);
    else
      it->second += by;
  }

  void merge(const Tally& other, int trial) {
    for (const auto& [name, inv] : other.invariants_) {
      auto& mine = slot(name);
      mine.checked += inv.checked;
      mine.passed += inv.passed;
      if (mine.first_failure.is_null() && !inv.first_failure.is_null()) {
        mine.first_failure = inv.first_failure;
        mine.first_failure["trial"] = trial;
      }
    }
    for (const auto& [stat, value] : other.stats_) count(stat, value);
  }

  bool all_passed() const {
    return std::all_of(invariants_.begin(), invariants_.end(),
                       [](const auto& p) { return p.second.passed == p.second.checked; });
  }
  const std::vector<std::pair<std::string, Invariant>>& invariants() const { return invariants_; }
  const std::vector<std::pair<std::string, long>>& stats() const { return stats_; }

 private:
  Invariant& slot(const std::string& name) {
    for (auto& p : invariants_)
      if (p.first == name) return p.second;
    invariants_.emplace_back(name, Invariant{});
    return invariants_.back().second;
  }

  std::vector<std::pair<std::string, Invariant>> invariants_;
  std::vector<std::pair<std::string, long>> stats_;
};

struct SuiteResult {
  std::string suite;
  SuiteOptions options;
  Tally tally;
  bool vacuous = false;

  bool passed() const { return tally.all_passed(); }

  json to_json() const {
    json invariants = json::array();
    for (const auto& [name, inv] : tally.invariants()) {
      json entry = {{"name", name}, {"checked", inv.checked}, {"passed", inv.passed}};
      if (!inv.first_failure.is_null()) entry["first_failure"] = inv.first_failure;
      invariants.push_back(entry);
    }
    json stats = json::object();
    for (const auto& [stat, value] : tally.stats()) stats[stat] = value;
    return {{"command", "verify"},
            {"suite", suite},
            {"seed", options.seed},
            {"trials", options.trials},
            {"n", options.n},
            {"k", options.k},
            {"vacuous", vacuous},
            {"passed", passed()},
            {"invariants", invariants},
            {"stats", stats}};
  }
};

using TrialFn = std::function<void(const SuiteOptions&, int trial, std::uint64_t seed, Tally&)>;

/// Runs trials on a worker pool; per-trial tallies are merged in trial order,
/// so the result does not depend on scheduling.
inline Tally run_trials(const SuiteOptions& opt, const TrialFn& fn) {
  const int trials = std::max(0, opt.trials);
  std::vector<Tally> results(static_cast<std::size_t>(trials));
  int workers = opt.workers > 0 ? opt.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, trials));
  auto work = [&](int w) {
    for (int i = w; i < trials; i += workers) fn(opt, i, trial_seed(opt.seed, i), results[static_cast<std::size_t>(i)]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  Tally total;
  for (int i = 0; i < trials; ++i) total.merge(results[static_cast<std::size_t>(i)], i);
  return total;
}

namespace suites {

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Digraph random_small_digraph(std::mt19937_64& rng, int max_n) {
  const int n = uniform(rng, 1, std::max(1, max_n));
  const double p = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
  return random_digraph(n, p, rng());
}

// All-pairs state distances by breadth-first search from every state.
inline std::vector<std::vector<int>> state_distances(const Digraph& d) {
  const SimpleGraph g = state_graph(d);
  const int states = g.order();
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(states), std::vector<int>(static_cast<std::size_t>(states), -1));
  for (int s = 0; s < states; ++s) {
    auto& row = dist[static_cast<std::size_t>(s)];
    std::vector<int> queue{s};
    row[static_cast<std::size_t>(s)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      for (Vertex y : g.neighbors(x)) {
        if (row[static_cast<std::size_t>(y)] != -1) continue;
        row[static_cast<std::size_t>(y)] = row[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

inline void anticomponents_trial(const SuiteOptions& opt, int, std::uint64_t seed, Tally& tally) {
  std::mt19937_64 rng(seed);
  const Digraph d = random_small_digraph(rng, opt.n);
  const auto comps = anticomponents(d);
  auto witness = [&] { return json{{"digraph", to_json(d)}}; };

  std::vector<Arc> all;
  for (const auto& c : comps) all.insert(all.end(), c.arcs.begin(), c.arcs.end());
  std::sort(all.begin(), all.end());
  tally.check("arcs_partitioned", all == std::vector<Arc>(d.arcs().begin(), d.arcs().end()), witness);

  std::vector<int> out_owner(static_cast<std::size_t>(d.order()), 0), in_owner(static_cast<std::size_t>(d.order()), 0);
  for (const auto& c : comps) {
    for (Vertex v : c.out) ++out_owner[static_cast<std::size_t>(v)];
    for (Vertex v : c.in) ++in_owner[static_cast<std::size_t>(v)];
  }
  tally.check("out_sets_disjoint", std::all_of(out_owner.begin(), out_owner.end(), [](int x) { return x <= 1; }), witness);
  tally.check("in_sets_disjoint", std::all_of(in_owner.begin(), in_owner.end(), [](int x) { return x <= 1; }), witness);

  bool witnesses = true;
  json bad;
  for (const auto& c : comps) {
    for (Vertex u : c.out) {
      for (Vertex v : c.in) {
        const auto w = shortest_antiwalk(d, u, Role::Out, v, Role::In);
        bool ok = w && is_valid_antiwalk(d, *w) && w->front() == State{u, Role::Out} && w->back() == State{v, Role::In};
        if (ok)
          for (const auto& st : w->states) ok = ok && c.contains(st);
        if (!ok && witnesses) {
          witnesses = false;
          bad = {{"digraph", to_json(d)}, {"from", u}, {"to", v}};
        }
      }
    }
  }
  tally.check("out_in_antiwalk_exists", witnesses, [&] { return bad; });
  tally.count("components", static_cast<long>(comps.size()));
}

inline void adiam_trial(const SuiteOptions& opt, int trial, std::uint64_t seed, Tally& tally) {
  if (trial < 3) {
    // Digon chains: the in-out antiwalk from v_1 to v_{2k+1} visits 2(2k+1) vertices.
    const int k = trial + 1;
    const Digraph d = digon_chain(k);
    const auto w = shortest_antiwalk(d, 0, Role::In, 2 * k, Role::Out);
    const int occurrences = w ? w->length() + 1 : -1;
    tally.check("digon_chain_occurrences", occurrences == 2 * (2 * k + 1), [&] {
      return json{{"k", k}, {"occurrences", occurrences}, {"expected", 2 * (2 * k + 1)}};
    });
  }
  std::mt19937_64 rng(seed);
  const Digraph d = random_small_digraph(rng, opt.n);
  const auto dist = state_distances(d);
  int worst = 0;
  bool ok = true;
  json bad;
  for (int a = 0; a < 2 * d.order(); ++a) {
    for (int b = 0; b < 2 * d.order(); ++b) {
      const int x = dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (x < 0) continue;
      worst = std::max(worst, x);
      if (x > 2 * d.order() && ok) {
        ok = false;
        bad = {{"digraph", to_json(d)}, {"from", a}, {"to", b}, {"length", x}};
      }
    }
  }
  tally.check("antiwalk_length_at_most_2n", ok, [&] { return bad; });
  // The library search agrees with the independent distance table on one query.
  if (d.order() > 0) {
    const State from{uniform(rng, 0, d.order() - 1), Role::Out};
    const State to{uniform(rng, 0, d.order() - 1), Role::In};
    const auto w = shortest_antiwalk(d, from.vertex, from.role, to.vertex, to.role);
    const int expect = dist[static_cast<std::size_t>(from.index())][static_cast<std::size_t>(to.index())];
    tally.check("shortest_antiwalk_matches_bfs", (w ? w->length() : -1) == expect, [&] {
      return json{{"digraph", to_json(d)}, {"from", from.index()}, {"to", to.index()}};
    });
  }
  tally.count("sum_of_max_lengths", worst);
}

inline void sizes_trial(const SuiteOptions& opt, int, std::uint64_t seed, Tally& tally) {
  std::mt19937_64 rng(seed);
  const int n = uniform(rng, 2, std::max(2, opt.n));
  const int delta = uniform(rng, 1, n - 1);
  const Digraph d = random_digraph_min_semidegree(n, delta, rng());
  const int d0 = min_semidegree(d);
  tally.check("generator_min_semidegree", d0 >= delta, [&] { return json{{"n", n}, {"delta", delta}, {"digraph", to_json(d)}}; });
  for (const auto& c : anticomponents(d)) {
    const auto stats = component_stats(d, c);
    tally.check("out_in_at_least_min_semidegree", std::min(stats.out_size, stats.in_size) >= d0,
                [&] { return json{{"digraph", to_json(d)}, {"out", c.out}, {"in", c.in}}; });
    tally.check("b_min_out_degree_bound", stats.b_min_out_degree >= 2 * d0 - stats.vertex_count,
                [&] { return json{{"digraph", to_json(d)}, {"out", c.out}, {"in", c.in}, {"b_min_out_degree", stats.b_min_out_degree}}; });
  }
}

inline void antimatching_trial(const SuiteOptions& opt, int, std::uint64_t seed, Tally& tally) {
  std::mt19937_64 rng(seed);
  const int max_t = std::max(1, opt.k);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int t = uniform(rng, 1, max_t);
    const int n = uniform(rng, 2 * t, std::max(2 * t, opt.n));
    if (t >= n) continue;
    const Digraph d = random_digraph_min_semidegree(n, uniform(rng, t, n - 1), rng());
    for (const auto& c : anticomponents(d)) {
      if (!antimatching_hypothesis(d, c, t)) continue;
      const auto m = antimatching(d, c, t);
      tally.check("antimatching_found", m.has_value(), [&] { return json{{"digraph", to_json(d)}, {"t", t}}; });
      if (m) {
        tally.check("certificate_valid", m->size() == t && is_valid_antimatching(c, *m),
                    [&] { return json{{"digraph", to_json(d)}, {"t", t}}; });
      }
      tally.count("instances");
      return;
    }
  }
  tally.count("generator_exhausted");
}

// Independent exhaustive packing of item sizes into classes with capacities.
inline bool brute_force_pack(const std::vector<int>& items, const std::vector<int>& caps) {
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

inline void treecut_trial(const SuiteOptions& opt, int, std::uint64_t seed, Tally& tally) {
  std::mt19937_64 rng(seed);
  const int k = uniform(rng, 1, std::max(1, opt.k));
  const RootedOrientedTree t = random_oriented_tree(k + 1, rng());
  for (double h : {1.0 / 3.0, 2.0 / 5.0, 1.0 / 2.0}) {
    const Vertex z = cut_vertex(t, h);
    bool literal_exists = false;
    for (Vertex v = 0; v < t.order(); ++v) literal_exists = literal_exists || cut_bound_holds(t, v, h, CutBound::Literal);
    const CutBound expected = literal_exists ? CutBound::Literal : CutBound::Rounded;
    tally.check("cut_vertex_bound", cut_bound_holds(t, z, h, expected),
                [&] { return json{{"tree", to_json(t)}, {"h", h}, {"z", z}}; });
    if (!literal_exists) tally.count("literal_cut_unattainable");
  }
  for (int ell : {2, 3, 4}) {
    const double h = static_cast<double>(ell - 1) / (2 * ell - 1);
    const Vertex z = cut_vertex(t, h);
    const auto cut = partition_components(t, z, h, ell);
    if (cut) {
      int covered = 0;
      for (const auto& cls : cut->classes) covered += cls.size;
      tally.check("partition_class_bounds", tree_cut_bounds_hold(*cut) && covered == k,
                  [&] { return json{{"tree", to_json(t)}, {"ell", ell}, {"z", z}}; });
    } else {
      std::vector<int> caps(static_cast<std::size_t>(ell), detail::floor_of(h * k));
      caps[0] = std::max(caps[0], detail::floor_of((1.0 - h) * k));
      const auto sizes = component_sizes_without(t, z);
      if (sizes.size() <= 12) {
        tally.check("partition_infeasible_confirmed", !brute_force_pack(sizes, caps),
                    [&] { return json{{"tree", to_json(t)}, {"ell", ell}, {"z", z}}; });
      } else {
        tally.count("partition_infeasible_unconfirmed");
      }
      const std::string tag = ".ell" + std::to_string(ell);
      tally.count("partition_infeasible");
      tally.count("partition_infeasible" + tag);
      if (!find_tree_cut(t, h, ell)) tally.count("no_vertex_admits_partition" + tag);
      if (!find_tree_cut(t, h, ell, CutBound::Rounded)) tally.count("no_vertex_admits_rounded_partition" + tag);
    }
  }
}

inline void seeds_trial(const SuiteOptions& opt, int, std::uint64_t seed, Tally& tally) {
  std::mt19937_64 rng(seed);
  const int k = uniform(rng, 1, std::max(1, opt.k));
  const RootedOrientedTree t = random_oriented_tree(k + 1, rng());
  for (double beta : {0.05, 0.1, 0.2}) {
    const auto dec = seed_decomposition(t, beta);
    auto witness = [&] { return json{{"tree", to_json(t)}, {"beta", beta}}; };
    tally.check("root_is_seed", std::binary_search(dec.seeds.begin(), dec.seeds.end(), t.root()), witness);
    tally.check("seed_count_bound", detail::at_most(static_cast<double>(dec.seeds.size()), 2.0 / beta + 2.0), witness);
    bool small = true;
    std::vector<int> owner(static_cast<std::size_t>(t.order()), 0);
    for (Vertex s : dec.seeds) ++owner[static_cast<std::size_t>(s)];
    for (const auto& part : dec.parts) {
      small = small && detail::at_most(static_cast<double>(part.vertices.size()), beta * k);
      for (Vertex v : part.vertices) ++owner[static_cast<std::size_t>(v)];
    }
    tally.check("part_size_bound", small, witness);
    tally.check("seeds_and_parts_cover", std::all_of(owner.begin(), owner.end(), [](int x) { return x == 1; }), witness);
  }
}

// Exhaustive search over all t^|I| assignments.
inline bool brute_force_assign(const std::vector<PiecePair>& pairs, int t, double cap) {
  std::vector<long> lp(static_cast<std::size_t>(t), 0), lq(static_cast<std::size_t>(t), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == pairs.size()) return true;
    for (std::size_t c = 0; c < lp.size(); ++c) {
      if (lp[c] + pairs[i].sources > cap + 1e-9 || lq[c] + pairs[i].sinks > cap + 1e-9) continue;
      lp[c] += pairs[i].sources;
      lq[c] += pairs[i].sinks;
      if (go(i + 1)) return true;
      lp[c] -= pairs[i].sources;
      lq[c] -= pairs[i].sinks;
    }
    return false;
  };
  return go(0);
}

inline void assign_trial(const SuiteOptions& opt, int, std::uint64_t seed, Tally& tally) {
  std::mt19937_64 rng(seed);
  const double mu = std::vector<double>{0.02, 0.05, 0.08}[static_cast<std::size_t>(uniform(rng, 0, 2))];
  const int s = uniform(rng, 20, 200);
  const int t = uniform(rng, 1, 4);
  const int count = uniform(rng, 1, std::max(1, opt.n));
  const int pair_cap = std::max(1, static_cast<int>(mu * s));
  const double fill = std::uniform_real_distribution<double>(0.2, 1.0)(rng) * (1.0 - 10.0 * mu) * s * t;
  std::vector<PiecePair> pairs;
  long sp = 0, sq = 0;
  for (int i = 0; i < count; ++i) {
    const int total = uniform(rng, 1, pair_cap);
    // round toward whichever side is behind so the totals stay balanced
    const int p = sp > sq ? total / 2 : (total + 1) / 2;
    PiecePair x{p, total - p};
    if (sp + x.sources > fill || sq + x.sinks > fill) break;
    pairs.push_back(x);
    sp += x.sources;
    sq += x.sinks;
  }
  if (pairs.empty()) pairs.push_back({0, 0});
  auto result = assign_pieces(pairs, mu, s, t);
  json w = json::array();
  for (const auto& x : pairs) w.push_back({x.sources, x.sinks});
  auto witness = [&] { return json{{"pairs", w}, {"mu", mu}, {"s", s}, {"t", t}}; };
  if (!result) {
    const auto& v = result.error().violated;
    if (std::find(v.begin(), v.end(), std::string("no_partition")) == v.end()) {
      tally.count("hypotheses_violated");
      return;
    }
    tally.count("reported_infeasible");
    if (pairs.size() <= 12)
      tally.check("infeasible_confirmed_by_brute_force", !brute_force_assign(pairs, t, (1.0 - 7.0 * mu) * s), witness);
    return;
  }
  const auto& a = *result;
  bool ok = static_cast<int>(a.class_of.size()) == static_cast<int>(pairs.size());
  std::vector<long> lp(static_cast<std::size_t>(t), 0), lq(static_cast<std::size_t>(t), 0);
  for (std::size_t i = 0; ok && i < pairs.size(); ++i) {
    const int c = a.class_of[i];
    ok = c >= 0 && c < t;
    if (!ok) break;
    lp[static_cast<std::size_t>(c)] += pairs[i].sources;
    lq[static_cast<std::size_t>(c)] += pairs[i].sinks;
  }
  for (int c = 0; ok && c < t; ++c)
    ok = detail::at_most(lp[static_cast<std::size_t>(c)], (1.0 - 7.0 * mu) * s) &&
         detail::at_most(lq[static_cast<std::size_t>(c)], (1.0 - 7.0 * mu) * s);
  tally.check("class_bounds", ok, witness);
  if (pairs.size() <= 12)
    tally.check("brute_force_agrees", brute_force_assign(pairs, t, (1.0 - 7.0 * mu) * s), witness);
  tally.count("assigned");
}

inline void extremal_trial(const SuiteOptions&, int trial, std::uint64_t, Tally& tally) {
  const int k = 3 * (trial + 1);
  const RootedOrientedTree t = spider(k);
  const Digraph host = two_cliques_construction(k);
  const int m = 2 * k / 3 - 1;
  tally.check("host_shape", host.order() == 2 * m + 1 && min_semidegree(host) == m,
              [&] { return json{{"k", k}, {"order", host.order()}, {"min_semidegree", min_semidegree(host)}}; });
  const auto legs = component_sizes_without(t, 0);
  tally.check("spider_three_equal_legs", legs == std::vector<int>(3, k / 3), [&] { return json{{"k", k}}; });
  for (const auto& oriented : {t, reverse(t)}) {
    const auto phi = embed(oriented, host);
    tally.check("oriented_spider_not_contained", !phi, [&] { return json{{"k", k}, {"map", vertex_map(*phi)}}; });
  }
  const auto und = embed_undirected(t, host);
  tally.check("undirected_spider_not_contained", !und, [&] { return json{{"k", k}, {"map", vertex_map(*und)}}; });
  tally.count("k_values");
}

// Every injection of guest vertices, arcs checked only once all are placed.
inline bool naive_embeds(const RootedOrientedForest& guest, const Digraph& host) {
  const int n = guest.order();
  if (n > host.order()) return false;
  const auto arcs = guest.arcs();
  std::vector<Vertex> image(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(host.order()), 0);
  std::function<bool(int)> go = [&](int i) {
    if (i == n) {
      for (const auto& [a, b] : arcs)
        if (!host.has_arc(image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(b)])) return false;
      return true;
    }
    for (Vertex h = 0; h < host.order(); ++h) {
      if (used[static_cast<std::size_t>(h)]) continue;
      used[static_cast<std::size_t>(h)] = 1;
      image[static_cast<std::size_t>(i)] = h;
      if (go(i + 1)) return true;
      used[static_cast<std::size_t>(h)] = 0;
    }
    return false;
  };
  return go(0);
}

inline void oracle_trial(const SuiteOptions& opt, int, std::uint64_t seed, Tally& tally) {
  std::mt19937_64 rng(seed);
  const RootedOrientedTree t = random_oriented_tree(uniform(rng, 1, std::max(1, opt.k) + 1), rng());
  const int n = uniform(rng, 1, std::max(1, opt.n));
  const Digraph host = random_digraph(n, std::uniform_real_distribution<double>(0.1, 0.8)(rng), rng());
  const auto phi = embed(t, host);
  const bool naive = naive_embeds(t, host);
  auto witness = [&] { return json{{"tree", to_json(t)}, {"digraph", to_json(host)}, {"naive", naive}}; };
  tally.check("agrees_with_naive_oracle", phi.has_value() == naive, witness);
  if (phi) tally.check("witness_verifies", verify_embedding(t, host, *phi), witness);
  tally.count(naive ? "contained" : "not_contained");
}

// Synthetic reduced instance: either one dense component or ℓ..ℓ+1 disjoint
// complete components, with apex arcs into every cluster.
struct PipelineInstance {
  ReducedDigraph rd;
  RootedOrientedTree tree;
  ReducedParams params;
};

inline PipelineInstance make_pipeline_instance(std::mt19937_64& rng, int max_clusters, int max_k) {
  PipelineInstance inst;
  inst.params.gamma = 0.1;
  inst.params.ell = uniform(rng, 2, 3);
  const int s = uniform(rng, 4, 8);
  std::vector<Arc> arcs;
  int r = 0;
  if (uniform(rng, 0, 2) == 0) {
    r = uniform(rng, 3, std::max(3, max_clusters));
    const Digraph dense = random_digraph_min_semidegree(r, uniform(rng, 1, r - 1), rng());
    arcs.assign(dense.arcs().begin(), dense.arcs().end());
  } else {
    const int ell = inst.params.ell;
    const int size = std::max(2, std::min(3, max_clusters / ell));
    const int comps = std::min(max_clusters / size, ell + uniform(rng, 0, 1));
    for (int c = 0; c < comps; ++c, r += size)
      for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b)
          if (a != b && (size == 2 || uniform(rng, 0, 5) > 0)) arcs.emplace_back(r + a, r + b);
  }
  inst.rd = make_reduced(Digraph(r, arcs), s);
  for (int i = 0; i < r; ++i) {
    inst.rd.apex_out[static_cast<std::size_t>(i)] = uniform(rng, 1, s);
    inst.rd.apex_in[static_cast<std::size_t>(i)] = uniform(rng, 0, s);
  }
  // Budget: k at most δ⁰(R)s / (ℓ/(2ℓ-1) + γ), odd, at most max_k.
  const int delta = min_semidegree(inst.rd.clusters);
  const double factor = static_cast<double>(inst.params.ell) / (2 * inst.params.ell - 1) + inst.params.gamma;
  int k = std::min(max_k, static_cast<int>(delta * s / factor));
  if (k % 2 == 0) --k;
  k = std::max(1, k);
  k = 2 * uniform(rng, 0, (k - 1) / 2) + 1;
  inst.tree = random_balanced_antidirected_tree(k, uniform(rng, 2, 4), rng());
  return inst;
}

inline bool known_failure(const std::string& name) {
  const auto& names = reduced_failure_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

inline void pipeline_trial(const SuiteOptions& opt, int, std::uint64_t seed, Tally& tally) {
  std::mt19937_64 rng(seed);
  const auto inst = make_pipeline_instance(rng, std::max(3, opt.n), std::max(1, opt.k));
  const auto& rd = inst.rd;
  auto base_witness = [&] {
    std::ostringstream text;
    write_reduced(text, rd);
    return json{{"reduced", text.str()}, {"tree", to_json(inst.tree)}, {"ell", inst.params.ell}};
  };

  const auto pipe = theorem_pipeline(rd, inst.tree, inst.params);
  if (pipe.success) {
    tally.check("pipeline_success_verified", verify_embedding(inst.tree, blow_up_with_apex(rd), pipe.embedding), base_witness);
    tally.count(pipe.fast_path ? "pipeline_fast_path" : "pipeline_components");
  } else {
    tally.check("pipeline_failure_named", known_failure(pipe.failure), [&] {
      auto w = base_witness();
      w["failure"] = pipe.failure;
      return w;
    });
    tally.count("pipeline_failure." + pipe.failure);
  }

  const auto comps = anticomponents(rd.clusters);
  if (comps.empty()) return;
  std::size_t largest = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].vertex_count() > comps[largest].vertex_count()) largest = i;
  const auto a = embed_in_component_a(rd, comps[largest], inst.tree, inst.params);
  if (a.success) {
    tally.check("component_a_success_verified", verify_embedding(inst.tree, blow_up(rd), a.embedding), base_witness);
    tally.count("component_a_success");
  } else {
    tally.check("component_a_failure_named", known_failure(a.failure), base_witness);
    tally.count("component_a_failure." + a.failure);
  }

  // Component embedding (b): the forest hanging from a source root.
  const RootedOrientedTree t = detail::is_source_vertex(inst.tree, inst.tree.root()) ? inst.tree : reverse(inst.tree);
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < t.order(); ++v)
    if (v != t.root()) rest.push_back(v);
  if (rest.empty()) return;
  const auto sub = induced_subforest(t, rest);
  const auto& c = comps[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(comps.size()) - 1))];
  ForestTask task{sub.forest, {}, {}};
  for (Vertex h = 0; h < rd.host_order(); ++h)
    if (uniform(rng, 0, 9) == 0) task.forbidden.push_back(h);
  for (Vertex x : c.in)
    for (Vertex h : apex_out_neighbors(rd, x))
      if (std::find(task.forbidden.begin(), task.forbidden.end(), h) == task.forbidden.end()) task.allowed_roots.push_back(h);
  ReducedParams bp = inst.params;
  bp.budget_k = t.k();
  const auto b = embed_in_component_b(rd, c, task, bp);
  if (b.success) {
    EmbedConstraints constraints;
    constraints.forbidden = task.forbidden;
    constraints.allowed_images = task.allowed_roots;
    tally.check("component_b_success_verified", verify_embedding(sub.forest, blow_up(rd), b.embedding, constraints), base_witness);
    // Independent recount of B usage from the embedding itself.
    int in_b = 0;
    for (Vertex h : b.embedding.image) in_b += c.has_both(rd.cluster_of(h)) ? 1 : 0;
    const double demand = std::min(static_cast<double>(sub.forest.order() - b.forced_roots_outside_b), b.b_budget);
    int b_free = 0;
    const int reserve = detail::ceil_of(bp.rho * rd.cluster_size);
    for (Vertex x : c.both) {
      int free = 0;
      for (Vertex h = rd.first_vertex(x); h < rd.first_vertex(x) + rd.cluster_size; ++h) {
        const bool used = std::find(b.embedding.image.begin(), b.embedding.image.end(), h) != b.embedding.image.end();
        const bool banned = std::find(task.forbidden.begin(), task.forbidden.end(), h) != task.forbidden.end();
        free += used || banned ? 0 : 1;
      }
      b_free += std::max(0, free - reserve);
    }
    tally.check("b_first_audit", in_b == b.b_used && (in_b + 1e-9 >= demand || b_free == 0), base_witness);
    tally.count("component_b_success");
  } else {
    tally.check("component_b_failure_named", known_failure(b.failure), base_witness);
    tally.count("component_b_failure." + b.failure);
  }
}

}  // namespace suites

struct SuiteSpec {
  std::string name;
  int default_n;
  int default_k;
  int default_trials;
  TrialFn trial;
};

inline const std::vector<SuiteSpec>& suite_catalog() {
  static const std::vector<SuiteSpec> catalog{
      {"anticomponents", 12, 0, 1000, suites::anticomponents_trial},
      {"adiam", 12, 0, 1000, suites::adiam_trial},
      {"sizes", 12, 0, 1000, suites::sizes_trial},
      {"antimatching", 12, 4, 200, suites::antimatching_trial},
      {"treecut", 0, 40, 500, suites::treecut_trial},
      {"seeds", 0, 40, 500, suites::seeds_trial},
      {"assign", 30, 0, 500, suites::assign_trial},
      {"extremal", 0, 0, 3, suites::extremal_trial},
      {"pipeline", 6, 20, 100, suites::pipeline_trial},
      {"oracle", 9, 6, 500, suites::oracle_trial},
  };
  return catalog;
}

inline const SuiteSpec* find_suite(const std::string& name) {
  for (const auto& s : suite_catalog())
    if (s.name == name) return &s;
  return nullptr;
}

/// Runs a named suite; unknown names throw std::invalid_argument.
inline SuiteResult run_suite(const std::string& name, SuiteOptions options) {
  const SuiteSpec* spec = find_suite(name);
  if (!spec) throw std::invalid_argument("unknown suite '" + name + "'");
  if (options.n <= 0) options.n = spec->default_n;
  if (options.k <= 0) options.k = spec->default_k;
  if (options.trials < 0) options.trials = spec->default_trials;
  SuiteResult result;
  result.suite = name;
  result.options = options;
  result.tally = run_trials(options, spec->trial);
  result.vacuous = options.trials == 0;
  return result;
}

}  // namespace antitree
