// facetrank: build tagged graphs, index them, answer facet queries, run
// similarity experiments, compute statistics and generate synthetic data.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "facetrank/analysis.hpp"
#include "facetrank/centrality.hpp"
#include "facetrank/errors.hpp"
#include "facetrank/eval_harness.hpp"
#include "facetrank/facet_algorithms.hpp"
#include "facetrank/graph_build.hpp"
#include "facetrank/graph_io.hpp"
#include "facetrank/rank_index.hpp"
#include "facetrank/synth.hpp"
#include "facetrank/tag_index.hpp"
#include "facetrank/text.hpp"

namespace ft = facetrank;

namespace {

enum Exit : int {
  kOk = 0,
  kUnexpected = 1,
  kUsage = 2,
  kEmptyInput = 3,
  kIncompatible = 4,
};

/// Raised by commands to exit with a specific status after a message.
struct ExitRequest {
  int code;
  std::string message;
};

unsigned default_threads() {
  if (const char* env = std::getenv("FACETRANK_THREADS")) {
    if (auto n = ft::text::parse_size(env); n && *n > 0) return static_cast<unsigned>(*n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto part : ft::text::split(s, ',')) {
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

void add_pagerank_flags(CLI::App* cmd, ft::PageRankParams& p) {
  cmd->add_option("--damping", p.damping, "PageRank damping factor")->capture_default_str();
  cmd->add_option("--epsilon", p.epsilon, "Convergence threshold (max-norm)")
      ->capture_default_str();
  cmd->add_option("--max-iterations", p.max_iterations, "Power-iteration cap")
      ->capture_default_str();
}

// --- build -----------------------------------------------------------------

struct BuildArgs {
  std::string contents;
  std::string recs;
  std::string out;
  std::string stop_tags;
};

int cmd_build(const BuildArgs& a) {
  const auto contents = ft::load_contents(a.contents);
  const auto recs = ft::load_recommendations(a.recs);
  if (contents.records.empty()) throw ExitRequest{kEmptyInput, "no valid content records in " + a.contents};
  if (recs.records.empty()) throw ExitRequest{kEmptyInput, "no valid recommendations in " + a.recs};

  ft::BuildOptions options;
  options.stop_tags = split_list(a.stop_tags);
  auto built = ft::build_graph(contents.records, recs.records, options);
  built.report.malformed_contents += contents.malformed_lines;
  built.report.malformed_recommendations += recs.malformed_lines;

  if (a.out.empty() || a.out == "-") {
    ft::write_graph(std::cout, built.graph);
  } else {
    ft::save_graph(a.out, built.graph);
  }
  const auto& r = built.report;
  std::cerr << "nodes=" << built.graph.node_count() << " edges=" << built.graph.edge_count()
            << " labels=" << built.graph.label_count() << '\n'
            << "contents_read=" << r.contents_read << " contents_used=" << r.contents_used
            << " malformed=" << r.malformed_contents << " duplicates=" << r.duplicate_contents
            << " stop_tags_removed=" << r.stop_tags_removed << '\n'
            << "recommendations_read=" << r.recommendations_read
            << " used=" << r.recommendations_used << " malformed=" << r.malformed_recommendations
            << " unknown_content=" << r.unknown_content
            << " untagged_content=" << r.untagged_content << '\n';
  return kOk;
}

// --- index -----------------------------------------------------------------

struct IndexArgs {
  std::string graph;
  std::string out;
  std::string depth = "all";
  bool prune = false;
  bool no_global = false;
  ft::PageRankParams params;
  unsigned threads = 1;
};

int cmd_index(const IndexArgs& a) {
  auto g = ft::load_graph(a.graph);
  if (a.prune) g = ft::prune_dangling(g);
  if (g.edge_count() == 0) throw ExitRequest{kEmptyInput, "graph has no edges"};

  ft::StoreBuildOptions options;
  options.params = a.params;
  options.pruned = a.prune;
  options.include_global = !a.no_global;
  options.threads = a.threads;
  if (a.depth != "all") {
    auto d = ft::text::parse_size(a.depth);
    if (!d || *d == 0) throw ExitRequest{kUsage, "--depth must be a positive integer or 'all'"};
    options.depth = *d;
  }
  const ft::TagIndex index(g);
  const auto built = ft::build_store(g, index, options);
  ft::save_store(a.out, built.store);
  const auto& r = built.report;
  std::cerr << "tags=" << r.tags_processed << " edges=" << r.edges_indexed
            << " tag_edge_total=" << r.tag_edge_total << " label_total=" << r.label_total
            << " non_converged=" << r.non_converged << '\n';
  return kOk;
}

// Loads the graph the way the store saw it and checks the two belong together.
struct LoadedPair {
  ft::TaggedGraph graph;
  ft::RankStore store;
};

LoadedPair load_for_store(const std::string& graph_path, const std::string& store_path) {
  const auto meta = ft::read_store_metadata(store_path);
  auto g = ft::load_graph(graph_path);
  if (meta.pruned) g = ft::prune_dangling(g);
  const auto actual = ft::graph_fingerprint(g);
  if (actual != meta.graph_fingerprint) {
    throw ft::FingerprintMismatchError("store " + store_path + " was built from graph " +
                                       meta.graph_fingerprint + ", not " + actual);
  }
  auto store = ft::load_store(store_path, g.shared_universe());
  return {std::move(g), std::move(store)};
}

// --- query -----------------------------------------------------------------

struct QueryArgs {
  std::string graph;
  std::string store;
  std::string tags;
  std::string algorithm = "r-sum";
  std::optional<std::size_t> top;
  std::size_t w = ft::kDefaultTopW;
};

int cmd_query(const QueryArgs& a) {
  const auto algorithm = ft::parse_algorithm(a.algorithm);
  if (!algorithm) throw ExitRequest{kUsage, "unknown algorithm: " + a.algorithm};
  if (a.w == 0) throw ExitRequest{kUsage, "--w must be positive"};
  const auto facet = ft::Facet::parse(a.tags);

  const auto loaded = load_for_store(a.graph, a.store);
  const ft::TagIndex index(loaded.graph);
  const ft::FacetRanker ranker(loaded.graph, index, loaded.store, loaded.store.metadata().params);
  const auto result = ranker.rank({facet, *algorithm, a.top, a.w});

  std::cerr << "# " << result.provenance << " candidates=" << result.candidate_set_size << '\n';
  if (result.ranking.empty()) {
    std::cerr << "no results for facet " << a.tags << '\n';
    return kOk;
  }
  for (const auto& e : result.ranking.entries) {
    std::cout << e.rank << '\t' << loaded.graph.user_name(e.node) << '\t'
              << ft::text::format_double(e.score) << '\n';
  }
  return kOk;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string graph;
  std::string store;
  std::string out;
  std::size_t k = 99;
  std::string stop_tags;
  std::string windows = "8,16,32";
  std::string candidates;
  std::size_t w = ft::kDefaultTopW;
  bool no_prune = false;
  ft::PageRankParams params;
  unsigned threads = 1;
};

std::vector<ft::Algorithm> parse_algorithms(const std::string& list) {
  std::vector<ft::Algorithm> out;
  for (const auto& name : split_list(list)) {
    auto a = ft::parse_algorithm(name);
    if (!a) throw ExitRequest{kUsage, "unknown algorithm: " + name};
    out.push_back(*a);
  }
  return out;
}

int cmd_eval(const EvalArgs& a) {
  ft::ExperimentConfig config;
  config.top_tag_count = a.k;
  config.stop_tags = split_list(a.stop_tags);
  config.windows.clear();
  for (const auto& n : split_list(a.windows)) {
    auto v = ft::text::parse_size(n);
    if (!v) throw ExitRequest{kUsage, "bad window: " + n};
    config.windows.push_back(*v);
  }
  config.w = a.w;
  config.params = a.params;
  config.prune_dangling = !a.no_prune;
  config.threads = a.threads;
  if (!a.candidates.empty()) config.candidates = parse_algorithms(a.candidates);
  config.validate();

  ft::ExperimentResult result;
  if (a.store.empty()) {
    const auto prepared = ft::prepare_experiment(ft::load_graph(a.graph), config);
    result = ft::run_experiment(prepared.graph, prepared.index, prepared.store, config);
  } else {
    const auto loaded = load_for_store(a.graph, a.store);
    config.prune_dangling = loaded.store.metadata().pruned;
    config.params = loaded.store.metadata().params;
    result = ft::run_experiment(loaded.graph, loaded.store, config);
  }

  ft::write_table(std::cout, result.table);
  if (!a.out.empty()) ft::emit_results(a.out, result, config);
  std::cerr << "pairs=" << result.table.pair_count;
  for (const auto& [ref, n] : result.skipped) std::cerr << " skipped." << ref << '=' << n;
  std::cerr << " failures=" << result.failures.size() << '\n';
  return kOk;
}

// --- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string graph;
  bool indegree = false;
  bool outdegree = false;
  bool correlation = false;
  bool pagerank = false;
  bool tags_per_edge = false;
  bool fit = false;
  std::size_t min_count = ft::kDefaultMinBinCount;
  std::size_t bins = ft::kDefaultBinsPerDecade;
  ft::PageRankParams params;
};

void print_binned(const ft::BinnedDistribution& d, bool fit, std::size_t min_count) {
  std::cout << "#zero_count\t" << d.zero_count << '\n';
  ft::write_distribution(std::cout, d);
  if (fit) {
    const auto f = ft::fit_power_law(d, min_count);
    std::cout << "#exponent\t" << ft::text::format_double(f.exponent) << '\n'
              << "#r_squared\t" << ft::text::format_double(f.r_squared) << '\n';
  }
}

int cmd_stats(const StatsArgs& a) {
  const auto g = ft::load_graph(a.graph);
  const int selected = a.indegree + a.outdegree + a.correlation + a.pagerank + a.tags_per_edge;
  if (selected > 1) throw ExitRequest{kUsage, "choose at most one statistic"};
  if (selected == 0) {
    const auto t = ft::tags_per_edge_histogram(g);
    std::cout << "nodes\t" << g.node_count() << '\n'
              << "edges\t" << g.edge_count() << '\n'
              << "labels\t" << g.label_count() << '\n'
              << "tags\t" << g.vocabulary().size() << '\n';
    if (t.mean) std::cout << "tags_per_edge_mean\t" << ft::text::format_double(*t.mean) << '\n';
    return kOk;
  }
  if (a.tags_per_edge) {
    const auto t = ft::tags_per_edge_histogram(g);
    ft::write_histogram(std::cout, t.histogram);
    if (t.mean) std::cout << "#mean\t" << ft::text::format_double(*t.mean) << '\n';
    return kOk;
  }
  if (g.empty()) throw ExitRequest{kEmptyInput, "graph has no nodes"};
  if (a.indegree) print_binned(ft::degree_distribution(g, ft::DegreeDirection::in, a.bins), a.fit, a.min_count);
  if (a.outdegree) print_binned(ft::degree_distribution(g, ft::DegreeDirection::out, a.bins), a.fit, a.min_count);
  if (a.correlation) print_binned(ft::neighbor_indegree_correlation(g, a.bins), a.fit, a.min_count);
  if (a.pagerank) print_binned(ft::pagerank_distribution(g, a.params, a.bins), a.fit, a.min_count);
  return kOk;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  ft::GenParams params;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  const auto g = ft::generate(a.params);
  if (a.out.empty() || a.out == "-") {
    for (const auto& line : ft::describe(a.params)) std::cout << "# " << line << '\n';
    ft::write_graph(std::cout, g);
  } else {
    ft::save_graph(a.out, g, ft::describe(a.params));
  }
  std::cerr << "nodes=" << g.node_count() << " edges=" << g.edge_count()
            << " labels=" << g.label_count() << '\n';
  return kOk;
}

int exit_code_for(const ft::Error& e) {
  if (dynamic_cast<const ft::FingerprintMismatchError*>(&e) ||
      dynamic_cast<const ft::StoreVersionError*>(&e)) {
    return kIncompatible;
  }
  if (dynamic_cast<const ft::EmptyGraphError*>(&e)) return kEmptyInput;
  if (dynamic_cast<const ft::ParameterError*>(&e) || dynamic_cast<const ft::ParseError*>(&e) ||
      dynamic_cast<const ft::IoError*>(&e) || dynamic_cast<const ft::MissingTagError*>(&e) ||
      dynamic_cast<const ft::StoreCorruptError*>(&e) ||
      dynamic_cast<const ft::InsufficientVocabularyError*>(&e) ||
      dynamic_cast<const ft::TooFewBinsError*>(&e) || dynamic_cast<const ft::DomainError*>(&e)) {
    return kUsage;
  }
  return kUnexpected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Facet-aware user rankings over tagged recommendation graphs"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(36);
  const unsigned threads = default_threads();

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a tagged graph from content and favorite records");
  b->add_option("--contents", build.contents, "user<TAB>content<TAB>tags file")->required();
  b->add_option("--recs", build.recs, "recommender<TAB>content file")->required();
  b->add_option("-o,--out", build.out, "Output graph export (default stdout)");
  b->add_option("--stop-tags", build.stop_tags, "Comma-separated tags to drop");

  IndexArgs index;
  index.threads = threads;
  auto* ix = app.add_subcommand("index", "Rank every tag subgraph and write a rank store");
  ix->add_option("--graph", index.graph, "Graph export")->required();
  ix->add_option("-o,--out", index.out, "Output store")->required();
  ix->add_option("--depth", index.depth, "Ranked users kept per tag, or 'all'")
      ->capture_default_str();
  ix->add_flag("--prune", index.prune, "Remove dangling leaves before indexing");
  ix->add_flag("--no-global", index.no_global, "Skip the complete-graph ranking");
  ix->add_option("--threads", index.threads, "Worker threads")->capture_default_str();
  add_pagerank_flags(ix, index.params);

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Rank users for a facet");
  q->add_option("--graph", query.graph, "Graph export")->required();
  q->add_option("--store", query.store, "Rank store built from the graph")->required();
  q->add_option("--tags", query.tags, "Comma-separated facet tags")->required();
  q->add_option("--alg", query.algorithm,
                "e-intersection, e-union-n-intersection, single, pr-product, r-sum, "
                "tau-n-intersection")
      ->capture_default_str();
  q->add_option("--top", query.top, "Print at most this many users");
  q->add_option("--w", query.w, "Per-tag depth for tau-n-intersection")->capture_default_str();

  EvalArgs eval;
  eval.threads = threads;
  auto* ev = app.add_subcommand("eval", "Compare algorithms over all pairs of top tags");
  ev->add_option("--graph", eval.graph, "Graph export")->required();
  ev->add_option("--store", eval.store, "Existing store (default: build one)");
  ev->add_option("-o,--out", eval.out, "Output stem for tables, grids and manifest");
  ev->add_option("--k", eval.k, "Number of top tags")->capture_default_str();
  ev->add_option("--stop-tags", eval.stop_tags, "Comma-separated tags to exclude");
  ev->add_option("--windows", eval.windows, "Comma-separated top-n windows")
      ->capture_default_str();
  ev->add_option("--candidates", eval.candidates, "Comma-separated algorithms to evaluate");
  ev->add_option("--w", eval.w, "Per-tag depth for tau-n-intersection")->capture_default_str();
  ev->add_flag("--no-prune", eval.no_prune, "Keep dangling leaves");
  ev->add_option("--threads", eval.threads, "Worker threads")->capture_default_str();
  add_pagerank_flags(ev, eval.params);

  StatsArgs stats;
  auto* st = app.add_subcommand("stats", "Network statistics");
  st->add_option("--graph", stats.graph, "Graph export")->required();
  st->add_flag("--indegree", stats.indegree, "Log-binned indegree distribution");
  st->add_flag("--outdegree", stats.outdegree, "Log-binned outdegree distribution");
  st->add_flag("--correlation", stats.correlation, "In-neighbor indegree vs indegree");
  st->add_flag("--pagerank", stats.pagerank, "Log-binned PageRank distribution");
  st->add_flag("--tags-per-edge", stats.tags_per_edge, "Histogram of tags per edge");
  st->add_flag("--fit", stats.fit, "Append a power-law fit");
  st->add_option("--min-count", stats.min_count, "Smallest bin count used by --fit")
      ->capture_default_str();
  st->add_option("--bins", stats.bins, "Bins per decade")->capture_default_str();
  add_pagerank_flags(st, stats.params);

  GenArgs gen;
  auto* gn = app.add_subcommand("gen", "Generate a synthetic tagged graph");
  gn->add_option("--nodes", gen.params.node_count, "Node count")->capture_default_str();
  gn->add_option("--mean-outdegree", gen.params.mean_outdegree, "Mean outdegree")
      ->capture_default_str();
  gn->add_option("--gamma", gen.params.indegree_exponent, "Indegree exponent in (2,3)")
      ->capture_default_str();
  gn->add_option("--vocabulary", gen.params.tag_vocabulary_size, "Tag vocabulary size")
      ->capture_default_str();
  gn->add_option("--tags-per-edge", gen.params.tags_per_edge_mean, "Mean tags per edge")
      ->capture_default_str();
  gn->add_option("--zipf", gen.params.tag_popularity_exponent, "Tag popularity exponent")
      ->capture_default_str();
  gn->add_option("--assortativity", gen.params.assortativity_bias, "Bias in [-1,1]")
      ->capture_default_str();
  gn->add_option("--seed", gen.params.seed, "Random seed")->capture_default_str();
  gn->add_option("-o,--out", gen.out, "Output graph export (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*b) return cmd_build(build);
    if (*ix) return cmd_index(index);
    if (*q) return cmd_query(query);
    if (*ev) return cmd_eval(eval);
    if (*st) return cmd_stats(stats);
    if (*gn) return cmd_gen(gen);
  } catch (const ExitRequest& r) {
    std::cerr << "facetrank: " << r.message << '\n';
    return r.code;
  } catch (const ft::Error& e) {
    std::cerr << "facetrank: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "facetrank: unexpected error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kUsage;
}
