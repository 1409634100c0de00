#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antitree/antitree.hpp"
#include "antitree/verify.hpp"

using namespace antitree;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

template <typename Parser>
auto parse_text(const std::string& text, Parser parser) {
  std::istringstream in(text);
  return parser(in);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ANTITREE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("ANTITREE_SEED must be a non-negative integer");
    }
  }
  return 1;
}

Role parse_role(const std::string& s) {
  if (s == "out") return Role::Out;
  if (s == "in") return Role::In;
  throw std::invalid_argument("role must be 'out' or 'in', got '" + s + "'");
}

void emit(const json& report, std::chrono::steady_clock::time_point start, bool timing) {
  json out = report;
  if (timing)
    out["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << out.dump(2) << '\n';
}

json component_json(const Digraph& d, const Anticomponent& c, int index) {
  const auto stats = component_stats(d, c);
  json arcs = json::array();
  for (const auto& [u, v] : c.arcs) arcs.push_back({u, v});
  return {{"index", index},
          {"out", c.out},
          {"in", c.in},
          {"b", c.both},
          {"arcs", arcs},
          {"out_size", stats.out_size},
          {"in_size", stats.in_size},
          {"vertex_count", stats.vertex_count},
          {"b_min_out_degree", stats.b_min_out_degree}};
}

const Anticomponent& pick_component(const std::vector<Anticomponent>& comps, int index) {
  if (index < 0 || index >= static_cast<int>(comps.size()))
    throw std::invalid_argument("component index " + std::to_string(index) + " out of range (" +
                                std::to_string(comps.size()) + " components)");
  return comps[static_cast<std::size_t>(index)];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anticonnectivity and antidirected tree embedding toolkit"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Include wall-clock time in reports");

  std::string digraph_path, tree_path, host_path;

  auto* components = app.add_subcommand("components", "Anticonnected components and their statistics");
  components->add_option("digraph", digraph_path, "Digraph file")->required();

  auto* antiwalk = app.add_subcommand("antiwalk", "Shortest antiwalk between two vertex states");
  int from = 0, to = 0;
  std::string from_role = "out", to_role = "in";
  antiwalk->add_option("digraph", digraph_path, "Digraph file")->required();
  antiwalk->add_option("--from", from, "Start vertex")->required();
  antiwalk->add_option("--from-role", from_role, "Role of the start vertex (out|in)");
  antiwalk->add_option("--to", to, "End vertex")->required();
  antiwalk->add_option("--to-role", to_role, "Role of the end vertex (out|in)");

  auto* antimatch = app.add_subcommand("antimatching", "Antimatching inside one component");
  int component_index = 0, t_size = 0;
  antimatch->add_option("digraph", digraph_path, "Digraph file")->required();
  antimatch->add_option("--component", component_index, "Component index as listed by 'components'");
  antimatch->add_option("--t", t_size, "Requested size; omitted for a maximum antimatching");

  auto* cut = app.add_subcommand("cut-tree", "Cut vertex, class partition and seed decomposition of a tree");
  double h = 1.0 / 3.0, beta = 0.1;
  int ell = 2;
  cut->set_help_flag("--help", "Print this help message and exit");
  cut->add_option("tree", tree_path, "Tree file")->required();
  auto* h_opt = cut->add_option("--h", h, "Cut fraction h in [0, 1]");
  cut->add_option("--ell", ell, "Number of classes; sets h = (ell-1)/(2ell-1) unless --h is given");
  cut->add_option("--beta", beta, "Seed decomposition granularity");

  auto* embed_cmd = app.add_subcommand("embed", "Embed a tree into a digraph or a reduced instance");
  bool exact = false, pipeline = false;
  std::vector<int> forbid, roots_in;
  ReducedParams params;
  embed_cmd->add_option("tree", tree_path, "Tree file")->required();
  embed_cmd->add_option("host", host_path, "Digraph file, or reduced-instance file with --pipeline")->required();
  auto* exact_flag = embed_cmd->add_flag("--exact", exact, "Exact backtracking search (default)");
  embed_cmd->add_flag("--pipeline", pipeline, "Cut-vertex pipeline on a reduced instance")->excludes(exact_flag);
  embed_cmd->add_option("--forbid", forbid, "Host vertices that must stay unused")->delimiter(',');
  embed_cmd->add_option("--roots-in", roots_in, "Allowed images of the tree root")->delimiter(',');
  embed_cmd->add_option("--gamma", params.gamma, "Slack gamma for --pipeline");
  embed_cmd->add_option("--ell", params.ell, "Number of forests for --pipeline");
  embed_cmd->add_option("--sigma", params.sigma, "S-slice fraction for --pipeline");
  embed_cmd->add_option("--rho", params.rho, "Per-cluster reserve fraction for --pipeline");

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string suite;
  SuiteOptions options;
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--n", options.n, "Size bound (suite specific)");
  verify->add_option("--k", options.k, "Tree size bound (suite specific)");
  verify->add_option("--trials", options.trials, "Number of trials");
  auto* seed_opt = verify->add_option("--seed", options.seed, "Seed (default: ANTITREE_SEED or 1)");
  verify->add_option("--workers", options.workers, "Worker threads (0 = all cores)");

  auto* gen = app.add_subcommand("gen", "Write a generated digraph or tree");
  std::string construction, out_path;
  int gen_k = 6, gen_n = 10, gen_delta = 3, gen_max_degree = 3;
  double gen_p = 0.3;
  std::uint64_t gen_seed = 0;
  gen->add_option("construction", construction,
                  "spider | two-cliques | digon-chain | random | random-semidegree | random-tree | antidirected-path")
      ->required();
  gen->add_option("--k", gen_k, "Size parameter k");
  gen->add_option("--n", gen_n, "Vertex count for random digraphs");
  gen->add_option("--p", gen_p, "Arc probability for 'random'");
  gen->add_option("--delta", gen_delta, "Minimum semidegree for 'random-semidegree'");
  gen->add_option("--max-degree", gen_max_degree, "Maximum degree for 'random-tree'");
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "Seed (default: ANTITREE_SEED or 1)");
  gen->add_option("--out", out_path, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (components->parsed()) {
      const std::string text = slurp(digraph_path);
      const Digraph d = parse_text(text, parse_digraph);
      const auto comps = anticomponents(d);
      json list = json::array();
      for (std::size_t i = 0; i < comps.size(); ++i) list.push_back(component_json(d, comps[i], static_cast<int>(i)));
      emit({{"command", "components"},
            {"input_digest", fnv1a_hex(text)},
            {"n", d.order()},
            {"arc_count", d.size()},
            {"components", list},
            {"isolated_states", isolated_states(d).size()}},
           start, timing);
      return kOk;
    }

    if (antiwalk->parsed()) {
      const std::string text = slurp(digraph_path);
      const Digraph d = parse_text(text, parse_digraph);
      if (!d.has_vertex(from) || !d.has_vertex(to)) throw std::invalid_argument("query vertex out of range");
      const auto w = shortest_antiwalk(d, from, parse_role(from_role), to, parse_role(to_role));
      json report = {{"command", "antiwalk"}, {"input_digest", fnv1a_hex(text)}, {"connected", w.has_value()}};
      if (w) {
        report["walk"] = to_json(*w);
        report["vertex_occurrences"] = w->length() + 1;
        report["bound_2n"] = 2 * d.order();
      }
      emit(report, start, timing);
      return kOk;
    }

    if (antimatch->parsed()) {
      const std::string text = slurp(digraph_path);
      const Digraph d = parse_text(text, parse_digraph);
      const auto comps = anticomponents(d);
      const auto& c = pick_component(comps, component_index);
      json report = {{"command", "antimatching"}, {"input_digest", fnv1a_hex(text)}, {"component", component_index}};
      std::optional<Antimatching> m;
      if (antimatch->count("--t") > 0) {
        report["t"] = t_size;
        report["hypothesis_holds"] = antimatching_hypothesis(d, c, t_size);
        m = antimatching(d, c, t_size);
      } else {
        m = maximum_antimatching(d, c);
      }
      report["found"] = m.has_value();
      if (m) {
        json arcs = json::array();
        for (const auto& [a, b] : m->arcs) arcs.push_back({a, b});
        report["arcs"] = arcs;
        report["size"] = m->size();
        report["certificate_valid"] = is_valid_antimatching(c, *m);
      }
      emit(report, start, timing);
      return kOk;
    }

    if (cut->parsed()) {
      const std::string text = slurp(tree_path);
      const RootedOrientedTree t = parse_text(text, parse_tree);
      if (h_opt->count() == 0) h = static_cast<double>(ell - 1) / (2 * ell - 1);
      const Vertex z = cut_vertex(t, h);
      json report = {{"command", "cut-tree"},
                     {"input_digest", fnv1a_hex(text)},
                     {"k", t.k()},
                     {"h", h},
                     {"cut_vertex", z},
                     {"component_sizes", component_sizes_without(t, z)},
                     {"literal_bound_holds", cut_bound_holds(t, z, h, CutBound::Literal)}};
      const auto partition = find_tree_cut(t, h, ell);
      if (partition) {
        json classes = json::array();
        for (const auto& cls : partition->classes) classes.push_back({{"size", cls.size}, {"vertices", cls.vertices}});
        report["partition"] = {{"z", partition->z}, {"ell", ell}, {"classes", classes}};
      } else {
        report["partition"] = {{"feasible", false}, {"reason", partition.error().reason}};
      }
      const auto dec = seed_decomposition(t, beta);
      json parts = json::array();
      for (const auto& p : dec.parts) parts.push_back({{"root", p.root}, {"seed", p.parent_seed}, {"vertices", p.vertices}});
      report["seeds"] = {{"beta", beta}, {"seeds", dec.seeds}, {"parts", parts}};
      emit(report, start, timing);
      return kOk;
    }

    if (embed_cmd->parsed()) {
      const std::string tree_text = slurp(tree_path);
      const std::string host_text = slurp(host_path);
      const RootedOrientedTree t = parse_text(tree_text, parse_tree);
      json report = {{"command", "embed"}, {"input_digest", fnv1a_hex(tree_text + host_text)}};
      if (pipeline) {
        const ReducedDigraph rd = parse_text(host_text, parse_reduced);
        const auto result = theorem_pipeline(rd, t, params);
        report["mode"] = "pipeline";
        report["contained"] = result.success;
        report["result"] = to_json(result);
        if (result.success && !verify_embedding(t, blow_up_with_apex(rd), result.embedding)) {
          report["verified"] = false;
          emit(report, start, timing);
          return kCheckFailed;
        }
        emit(report, start, timing);
        return kOk;
      }
      const Digraph d = parse_text(host_text, parse_digraph);
      EmbedConstraints constraints;
      constraints.forbidden.assign(forbid.begin(), forbid.end());
      if (!roots_in.empty()) constraints.allowed_images = std::vector<Vertex>(roots_in.begin(), roots_in.end());
      const auto phi = embed(t, d, constraints);
      report["mode"] = "exact";
      report["contained"] = phi.has_value();
      if (phi) {
        report["map"] = vertex_map(*phi);
        const bool ok = verify_embedding(t, d, *phi, constraints);
        report["verified"] = ok;
        emit(report, start, timing);
        return ok ? kOk : kCheckFailed;
      }
      emit(report, start, timing);
      return kOk;
    }

    if (verify->parsed()) {
      if (seed_opt->count() == 0) options.seed = default_seed();
      if (!find_suite(suite)) {
        std::string names;
        for (const auto& s : suite_catalog()) names += (names.empty() ? "" : ", ") + s.name;
        std::cerr << "error: unknown suite '" << suite << "' (known: " << names << ")\n";
        return kUsage;
      }
      const auto result = run_suite(suite, options);
      emit(result.to_json(), start, timing);
      return result.passed() ? kOk : kCheckFailed;
    }

    if (gen->parsed()) {
      if (gen_seed_opt->count() == 0) gen_seed = default_seed();
      std::ostringstream text;
      json params_json;
      std::string kind = "digraph";
      std::string note;
      if (construction == "spider") {
        write_tree(text, spider(gen_k));
        kind = "tree";
        params_json = {{"k", gen_k}};
        note = "center with three antidirected legs of k/3 arcs";
      } else if (construction == "two-cliques") {
        write_digraph(text, two_cliques_construction(gen_k));
        params_json = {{"k", gen_k}};
        note = "two digon cliques of size 2k/3-1 joined through an apex; excludes the spider";
      } else if (construction == "digon-chain") {
        write_digraph(text, digon_chain(gen_k));
        params_json = {{"k", gen_k}};
        note = "digon path on 2k+1 vertices plus the arc from the first to the last vertex";
      } else if (construction == "random") {
        write_digraph(text, random_digraph(gen_n, gen_p, gen_seed));
        params_json = {{"n", gen_n}, {"p", gen_p}, {"seed", gen_seed}};
        note = "independent arcs";
      } else if (construction == "random-semidegree") {
        write_digraph(text, random_digraph_min_semidegree(gen_n, gen_delta, gen_seed));
        params_json = {{"n", gen_n}, {"delta", gen_delta}, {"seed", gen_seed}};
        note = "random digraph with minimum semidegree at least delta";
      } else if (construction == "random-tree") {
        write_tree(text, random_balanced_antidirected_tree(gen_k, gen_max_degree, gen_seed));
        kind = "tree";
        params_json = {{"k", gen_k}, {"max_degree", gen_max_degree}, {"seed", gen_seed}};
        note = "random balanced antidirected tree";
      } else if (construction == "antidirected-path") {
        write_tree(text, antidirected_path(gen_k + 1));
        kind = "tree";
        params_json = {{"k", gen_k}};
        note = "antidirected path with k arcs";
      } else {
        std::cerr << "error: unknown construction '" << construction << "'\n";
        return kUsage;
      }
      if (out_path.empty()) {
        std::cout << text.str();
        return kOk;
      }
      std::ofstream out(out_path);
      if (!out) throw std::ios_base::failure("cannot write '" + out_path + "'");
      out << text.str();
      emit({{"command", "gen"}, {"name", construction}, {"kind", kind}, {"params", params_json}, {"note", note},
            {"out", out_path}, {"output_digest", fnv1a_hex(text.str())}},
           start, timing);
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
