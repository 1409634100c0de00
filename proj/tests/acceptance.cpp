// One line per acceptance criterion; exit status is non-zero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "antitree/verify.hpp"

using namespace antitree;

namespace {

struct Run {
  SuiteResult result;
  double seconds = 0.0;
};

Run run(const std::string& suite, int workers = 0) {
  SuiteOptions o;
  o.seed = 1;
  o.workers = workers;
  const auto start = std::chrono::steady_clock::now();
  Run r{run_suite(suite, o)};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

long checked(const Run& r, const std::string& name) {
  for (const auto& [n, inv] : r.result.tally.invariants())
    if (n == name) return inv.checked;
  return 0;
}

long stat(const Run& r, const std::string& name) {
  for (const auto& [n, v] : r.result.tally.stats())
    if (n == name) return v;
  return 0;
}

std::string failures(const Run& r) {
  std::string out;
  for (const auto& [n, inv] : r.result.tally.invariants())
    if (inv.passed != inv.checked) out += " " + r.result.suite + "." + n + " " + inv.first_failure.dump();
  return out;
}

int failed = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] AC%d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failed;
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

}  // namespace

int main() {
  {
    const auto r = run("anticomponents");
    const bool ok = r.result.passed() && checked(r, "arcs_partitioned") == 1000 && checked(r, "out_sets_disjoint") == 1000 &&
                    checked(r, "in_sets_disjoint") == 1000 && checked(r, "out_in_antiwalk_exists") == 1000 && r.seconds < 60;
    report(1, ok, "anticomponent structure",
           "1000 digraphs n<=12, " + std::to_string(stat(r, "components")) + " components, " + secs(r.seconds) + failures(r));
  }
  {
    const auto r = run("adiam");
    const bool ok = r.result.passed() && checked(r, "antiwalk_length_at_most_2n") == 1000 &&
                    checked(r, "digon_chain_occurrences") == 3;
    report(2, ok, "antiwalk length bound", "1000 digraphs, digon chains k=1..3, " + secs(r.seconds) + failures(r));
  }
  {
    const auto r = run("sizes");
    const bool ok = r.result.passed() && checked(r, "generator_min_semidegree") == 1000 &&
                    checked(r, "b_min_out_degree_bound") > 0;
    report(3, ok, "component size bounds",
           "1000 digraphs, " + std::to_string(checked(r, "b_min_out_degree_bound")) + " components, " + secs(r.seconds) + failures(r));
  }
  {
    const auto r = run("antimatching");
    const bool ok = r.result.passed() && checked(r, "antimatching_found") == 200 && checked(r, "certificate_valid") == 200;
    report(4, ok, "antimatchings", "200 components with t<=4, " + secs(r.seconds) + failures(r));
  }
  {
    const auto cut = run("treecut");
    const auto seeds = run("seeds");
    const auto assign = run("assign");
    const double total = cut.seconds + seeds.seconds + assign.seconds;
    const bool ok = cut.result.passed() && seeds.result.passed() && assign.result.passed() &&
                    checked(cut, "cut_vertex_bound") == 1500 && checked(cut, "partition_class_bounds") > 0 &&
                    stat(cut, "partition_infeasible_unconfirmed") == 0 &&
                    checked(seeds, "seed_count_bound") == 1500 && checked(seeds, "part_size_bound") == 1500 &&
                    checked(assign, "class_bounds") > 0 && checked(assign, "brute_force_agrees") > 0 && total < 120;
    report(5, ok, "tree surgery",
           std::to_string(checked(cut, "partition_class_bounds")) + " partitions checked, " +
               std::to_string(stat(cut, "partition_infeasible")) + " infeasible at the cut vertex (confirmed exhaustively; " +
               std::to_string(stat(cut, "no_vertex_admits_rounded_partition.ell2")) +
               " trees admit no l=2 partition at any vertex even with rounded caps), " +
               std::to_string(checked(assign, "class_bounds")) + " assignments, " + secs(total) + failures(cut) +
               failures(seeds) + failures(assign));
  }
  {
    const auto r = run("extremal");
    const bool ok = r.result.passed() && checked(r, "host_shape") == 3 && checked(r, "oriented_spider_not_contained") == 6 &&
                    checked(r, "undirected_spider_not_contained") == 3 && r.seconds < 60;
    report(6, ok, "extremal example", "k=3,6,9 no containment, " + secs(r.seconds) + failures(r));
  }
  {
    const auto r = run("oracle");
    const bool ok = r.result.passed() && checked(r, "agrees_with_naive_oracle") == 500;
    report(7, ok, "exact oracle",
           "500 pairs, " + std::to_string(stat(r, "contained")) + " contained, " + secs(r.seconds) + failures(r));
  }
  {
    const auto r = run("pipeline");
    const long successes = checked(r, "pipeline_success_verified");
    const long named = checked(r, "pipeline_failure_named");
    const bool ok = r.result.passed() && successes + named == 100 && checked(r, "b_first_audit") > 0 && r.seconds < 180;
    report(8, ok, "reduced pipeline",
           std::to_string(successes) + " verified successes, " + std::to_string(named) + " named failures, " +
               std::to_string(checked(r, "b_first_audit")) + " B-first audits, " + secs(r.seconds) + failures(r));
  }
  {
    bool same = true;
    std::string diff;
    for (const auto& spec : suite_catalog()) {
      const auto a = run(spec.name).result.to_json().dump();
      const auto b = run(spec.name, 1).result.to_json().dump();
      if (a != b) {
        same = false;
        diff += " " + spec.name;
      }
    }
    report(9, same, "determinism", same ? "all suites byte-identical across runs" : "differs:" + diff);
  }
  return failed == 0 ? 0 : 1;
}
