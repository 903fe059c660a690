// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also fails when it exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
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
#include "facetrank/similarity.hpp"
#include "facetrank/synth.hpp"
#include "facetrank/tag_index.hpp"
#include "facetrank/text.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace ft = facetrank;

namespace {

// Pinned tolerances.
constexpr double kOracleTolerance = 1e-8;
constexpr double kSumTolerance = 1e-9;
constexpr std::size_t kMaxIterations = 130;
constexpr double kKsimTolerance = 1e-12;
constexpr double kExponentTarget = 2.5;
constexpr double kExponentTolerance = 0.3;
constexpr double kTagsPerEdgeRelTolerance = 0.05;
constexpr double kOutdegreeRelTolerance = 0.10;
constexpr double kStoreRelTolerance = 1e-11;

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (failures_ <= 3) notes_.push_back(what);
    }
  }
  void note(const std::string& what) { notes_.push_back(what); }
  Outcome outcome() const {
    Outcome o;
    o.pass = failures_ == 0;
    if (failures_ > 3) o.detail = std::to_string(failures_) + " failed checks; first: ";
    for (std::size_t i = 0; i < notes_.size(); ++i) o.detail += (i ? "; " : "") + notes_[i];
    return o;
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

std::string num(double v, int digits = 6) { return ft::text::format_double(v, digits); }

std::vector<std::string> edge_names(const ft::TaggedGraph& g) { return fixtures::edge_names(g); }

std::set<std::string> labels(const ft::TaggedGraph& g, std::string_view src, std::string_view dst) {
  const auto& u = g.universe();
  std::set<std::string> out;
  for (auto t : g.tags_of({*u.users.find(src), *u.users.find(dst)})) out.insert(g.tag_name(t));
  return out;
}

using Names = std::vector<std::string>;
using Labels = std::set<std::string>;

// 1 ---------------------------------------------------------------------------

Outcome four_user_construction() {
  Check c;
  const auto contents = ft::load_contents(fixtures::data_path("four_users_contents.tsv"));
  const auto recs = ft::load_recommendations(fixtures::data_path("four_users_recs.tsv"));
  const auto g = ft::build_graph(contents.records, recs.records).graph;
  c.require(g.node_count() == 4, "node count " + std::to_string(g.node_count()));
  c.require(g.edge_count() == 5, "edge count " + std::to_string(g.edge_count()));
  c.require(edge_names(g) == Names{"A>B", "A>C", "B>C", "B>D", "C>D"}, "edge set");
  if (g.edge_count() == 5) {
    c.require(labels(g, "A", "B") == Labels{"blues", "jazz"}, "T(A>B)");
    c.require(labels(g, "A", "C") == Labels{"blues", "jazz"}, "T(A>C)");
    c.require(labels(g, "B", "C") == Labels{"jazz"}, "T(B>C)");
    c.require(labels(g, "B", "D") == Labels{"blues"}, "T(B>D)");
    c.require(labels(g, "C", "D") == Labels{"rock"}, "T(C>D)");
  }
  const std::string expected =
      "A\tB\tblues,jazz\nA\tC\tblues,jazz\nB\tC\tjazz\nB\tD\tblues\nC\tD\trock\n";
  const auto text = ft::export_graph(g);
  c.require(text == expected, "export text");
  std::istringstream in(text);
  c.require(ft::export_graph(ft::read_graph(in)) == text, "export not byte-stable");
  auto reversed = recs.records;
  std::reverse(reversed.begin(), reversed.end());
  c.require(ft::export_graph(ft::build_graph(contents.records, reversed).graph) == text,
            "export depends on record order");
  return c.outcome();
}

// 2 ---------------------------------------------------------------------------

Outcome subgraph_algebra() {
  Check c;
  const auto g = fixtures::four_users();
  const auto blues = ft::tag_subgraph(g, "blues");
  const auto jazz = ft::tag_subgraph(g, "jazz");
  const auto both = ft::conjunction(g, ft::Facet({"blues", "jazz"}));
  const auto either = ft::disjunction(g, ft::Facet({"blues", "jazz"}));
  c.require(edge_names(blues) == Names{"A>B", "A>C", "B>D"}, "G(blues)");
  c.require(edge_names(jazz) == Names{"A>B", "A>C", "B>C"}, "G(jazz)");
  c.require(edge_names(both) == Names{"A>B", "A>C"}, "G(blues and jazz)");
  c.require(edge_names(either) == Names{"A>B", "A>C", "B>C", "B>D"}, "G(blues or jazz)");
  c.require(blues.node_count() == 4 && jazz.node_count() == 3 && both.node_count() == 3 &&
                either.node_count() == 4,
            "node sets");
  for (const auto* h : {&blues, &jazz, &both, &either}) {
    for (const auto& e : h->edges()) {
      const auto expected = labels(g, g.user_name(e.src), g.user_name(e.dst));
      c.require(labels(*h, h->user_name(e.src), h->user_name(e.dst)) == expected, "labels");
    }
  }
  const ft::TagIndex index(g);
  const std::vector<ft::TagId> ids{*index.find("blues"), *index.find("jazz")};
  c.require(ft::conjunction(g, index, ids) == both, "indexed conjunction");
  c.require(ft::disjunction(g, index, ids) == either, "indexed disjunction");
  return c.outcome();
}

// 3 ---------------------------------------------------------------------------

ft::TaggedGraph graph_from_edges(std::size_t n, const oracle::EdgeList& edges) {
  ft::GraphBuilder b;
  auto name = [](std::size_t i) {
    std::string s = std::to_string(i);
    return std::string(2 - std::min<std::size_t>(2, s.size()), '0') + s;
  };
  for (std::size_t i = 0; i < n; ++i) b.add_node("n" + name(i));
  for (const auto& [s, d] : edges) b.add_edge("n" + name(s), "n" + name(d), {"x"});
  return b.build();
}

Outcome pagerank_oracle() {
  Check c;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::uniform_real_distribution<double> density(0.0, 0.3);
  double worst = 0.0;
  std::size_t max_iter = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = size(rng);
    const auto edges = oracle::random_edges(rng, n, density(rng));
    const auto g = graph_from_edges(n, edges);
    const auto sparse = ft::pagerank(g);
    const auto dense = oracle::dense_pagerank(n, edges, 0.85, 1e-6, 200);
    c.require(sparse.converged && dense.converged, "not converged, trial " + std::to_string(trial));
    c.require(sparse.iterations == dense.iterations, "iteration count differs");
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(sparse.values[i] - dense.values[i]));
    }
    c.require(std::abs(sparse.sum() - 1.0) <= kSumTolerance, "sum off by " + num(sparse.sum() - 1.0));
    max_iter = std::max(max_iter, sparse.iterations);
  }
  c.require(worst <= kOracleTolerance, "max deviation " + num(worst));
  c.require(max_iter <= kMaxIterations, "iterations " + std::to_string(max_iter));
  c.note("200 graphs, max deviation " + num(worst, 3) + ", max iterations " +
         std::to_string(max_iter));
  return c.outcome();
}

// 4 ---------------------------------------------------------------------------

double score_of(const ft::Ranking& r, std::string_view user) {
  for (const auto& e : r.entries) {
    if (r.universe->users.name(e.node) == user) return e.score;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool within_ulps(double x, double target, int ulps) {
  return std::abs(x - target) <= ulps * std::numeric_limits<double>::epsilon() * std::abs(target);
}

Outcome worked_merge_example() {
  Check c;
  auto u = std::make_shared<ft::Universe>();
  const auto a = u->users.intern("a");
  const auto b = u->users.intern("b");
  const auto cc = u->users.intern("c");
  ft::RankStore store(u, {});
  store.insert("blues", ft::TagRanking({a, b, cc}, {0.75, 0.1, 0.01}, {a, b, cc}, 2, true));
  store.insert("jazz", ft::TagRanking({b, cc, a}, {0.1, 0.05, 0.04}, {a, b, cc}, 2, true));
  const ft::Facet facet({"blues", "jazz"});

  const auto product = ft::pr_product_rank(store, facet);
  c.require(within_ulps(score_of(product, "a"), 0.03, 1), "PR-product(a) " + num(score_of(product, "a"), 17));
  c.require(within_ulps(score_of(product, "b"), 0.01, 1), "PR-product(b) " + num(score_of(product, "b"), 17));
  c.require(within_ulps(score_of(product, "c"), 0.0005, 1), "PR-product(c) " + num(score_of(product, "c"), 17));
  c.require(product.names() == Names{"a", "b", "c"}, "PR-product order");

  const auto rsum = ft::r_sum_rank(store, facet);
  c.require(rsum.names() == Names{"b", "a", "c"}, "R-sum order");
  c.require(score_of(rsum, "a") == 4.0 && score_of(rsum, "b") == 3.0 && score_of(rsum, "c") == 5.0,
            "R-sum values");
  return c.outcome();
}

// 5 ---------------------------------------------------------------------------

ft::GenParams small_params(std::uint64_t seed) {
  ft::GenParams p;
  p.node_count = 300;
  p.mean_outdegree = 5.0;
  p.tag_vocabulary_size = 20;
  p.tags_per_edge_mean = 2.5;
  p.seed = seed;
  return p;
}

bool same_ranking(const ft::Ranking& x, const ft::Ranking& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.entries[i].node != y.entries[i].node || x.entries[i].score != y.entries[i].score) {
      return false;
    }
  }
  return true;
}

Outcome collapse_identities() {
  Check c;
  std::map<ft::Algorithm, std::size_t> collapse_misses;
  std::size_t single_tag_cases = 0;
  std::size_t tau_cases = 0;
  std::size_t perm_cases = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto g = ft::generate(small_params(seed));
    const ft::TagIndex index(g);
    ft::StoreBuildOptions options;
    options.threads = worker_threads();
    const auto store = ft::build_store(g, index, options).store;
    const ft::FacetRanker ranker(g, index, store);
    const auto tags = ft::top_tags(g, 4);
    const std::size_t w = g.node_count();

    for (const auto& t : tags) {
      ++single_tag_cases;
      const auto expected = ft::rank_of(ft::pagerank(ft::tag_subgraph(g, t)));
      for (auto a : ft::kAllAlgorithms) {
        const auto got = ranker.rank({ft::Facet({t}), a, std::nullopt, w}).ranking;
        if (got.nodes() != expected.nodes()) ++collapse_misses[a];
      }
    }
    for (std::size_t i = 0; i < tags.size(); ++i) {
      for (std::size_t j = i + 1; j < tags.size(); ++j) {
        ++tau_cases;
        const ft::Facet facet({tags[i], tags[j]});
        c.require(same_ranking(ft::tau_n_intersection_rank(g, index, store, facet, w),
                               ft::e_intersection_rank(g, index, facet)),
                  "tau(w=inf) != E-intersection, seed " + std::to_string(seed));
      }
    }
    Names three(tags.begin(), tags.begin() + 3);
    for (auto a : ft::kAllAlgorithms) {
      const auto base = ranker.rank({ft::Facet(three), a, std::nullopt, w}).ranking;
      auto perm = three;
      while (std::next_permutation(perm.begin(), perm.end())) {
        ++perm_cases;
        c.require(same_ranking(ranker.rank({ft::Facet(perm), a, std::nullopt, w}).ranking, base),
                  std::string("permutation changes ") + std::string(ft::algorithm_name(a)));
      }
    }
  }
  for (auto a : ft::kAllAlgorithms) {
    const auto misses = collapse_misses[a];
    c.require(misses == 0, std::string("(a) ") + std::string(ft::algorithm_name(a)) +
                               " differs from the single-tag ranking in " +
                               std::to_string(misses) + "/" + std::to_string(single_tag_cases) +
                               " cases");
  }
  c.note("(a) " + std::to_string(single_tag_cases) + " single-tag facets x 6 algorithms, (b) " +
         std::to_string(tau_cases) + " pairs, (c) " + std::to_string(perm_cases) + " permutations");
  return c.outcome();
}

// 6 ---------------------------------------------------------------------------

Outcome tag_edge_identity() {
  Check c;
  std::vector<ft::TaggedGraph> graphs;
  graphs.push_back(fixtures::four_users());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    graphs.push_back(fixtures::random_graph(seed, 40, 0.1, 10, 5));
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) graphs.push_back(ft::generate(small_params(seed)));
  ft::GenParams big;
  big.node_count = 10000;
  graphs.push_back(ft::generate(big));

  for (const auto& g : graphs) {
    std::size_t labels_total = 0;
    for (std::size_t i = 0; i < g.edge_count(); ++i) labels_total += g.edge_tags(i).size();
    const ft::TagIndex index(g);
    std::size_t subgraph_edges = 0;
    for (auto t : index.vocabulary()) subgraph_edges += ft::tag_subgraph(g, index, t).edge_count();
    c.require(subgraph_edges == labels_total,
              std::to_string(subgraph_edges) + " != " + std::to_string(labels_total));
    c.require(index.total_postings() == labels_total, "index postings");
    if (g.node_count() < 1000) {
      std::size_t scanned = 0;
      for (auto t : g.vocabulary()) scanned += ft::tag_subgraph(g, t).edge_count();
      c.require(scanned == labels_total, "unindexed subgraphs");
    }
  }
  c.note(std::to_string(graphs.size()) + " graphs, largest " +
         std::to_string(graphs.back().label_count()) + " labels");
  return c.outcome();
}

// 7 ---------------------------------------------------------------------------

ft::TopList ids(const oracle::IdList& xs) { return ft::TopList(xs.begin(), xs.end()); }

Names id_names(const oracle::IdList& xs) {
  Names out;
  for (auto x : xs) out.push_back("u" + std::to_string(x));
  return out;
}

Outcome similarity_metrics() {
  Check c;
  std::size_t exhaustive = 0;
  oracle::for_each_list_pair(5, [&](const oracle::IdList& x, const oracle::IdList& y) {
    ++exhaustive;
    const double k = ft::ksim(ids(x), ids(y));
    c.require(std::abs(k - oracle::brute_ksim(id_names(x), id_names(y))) <= kKsimTolerance,
              "ksim vs brute force");
  });
  std::mt19937_64 rng(99);
  std::size_t randomized = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const auto [xs, ys] = oracle::random_list_pair(rng, 12);
    const auto x = ids(xs);
    const auto y = ids(ys);
    const double k = ft::ksim(x, y);
    if (std::max(xs.size(), ys.size()) > 5) {
      ++randomized;
      c.require(std::abs(k - oracle::brute_ksim(id_names(xs), id_names(ys))) <= kKsimTolerance,
                "ksim vs brute force");
    }
    c.require(k >= 0.0 && k <= 1.0, "ksim range");
    c.require(k == ft::ksim(y, x), "ksim symmetry");
    c.require(ft::ksim(x, x) == 1.0, "ksim self");
    for (std::size_t n = 1; n <= 12; ++n) {
      const double o = ft::osim(x, y, n);
      c.require(o >= 0.0 && o <= 1.0, "osim range");
      c.require(o == ft::osim(y, x, n), "osim symmetry");
      if (n <= x.size()) c.require(ft::osim(x, x, n) == 1.0, "osim self");
    }
    ft::TopList reversed(x.rbegin(), x.rend());
    if (x.size() >= 2) c.require(ft::ksim(x, reversed) == 0.0, "reversal");
    ft::TopList disjoint;
    for (auto v : x) disjoint.push_back(v + 1000);
    c.require(ft::osim(x, disjoint, x.size()) == 0.0, "disjoint osim");
  }
  c.note(std::to_string(exhaustive) + " exhaustive pairs up to length 5, " +
         std::to_string(randomized) + " random pairs up to length 12");
  return c.outcome();
}

// 8 ---------------------------------------------------------------------------

Outcome generator_statistics() {
  Check c;
  ft::GenParams p;
  p.node_count = 10000;
  p.indegree_exponent = 2.5;
  p.tags_per_edge_mean = 9.26;
  const auto g = ft::generate(p);
  const auto fit = ft::fit_power_law(ft::degree_distribution(g, ft::DegreeDirection::in));
  const auto tpe = ft::tags_per_edge_histogram(g);
  const double mean_out = static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
  c.require(std::abs(fit.exponent - kExponentTarget) <= kExponentTolerance,
            "indegree exponent " + num(fit.exponent, 4));
  c.require(tpe.mean && std::abs(*tpe.mean - p.tags_per_edge_mean) <=
                            kTagsPerEdgeRelTolerance * p.tags_per_edge_mean,
            "tags per edge " + num(tpe.mean.value_or(0.0), 4));
  c.require(std::abs(mean_out - p.mean_outdegree) <= kOutdegreeRelTolerance * p.mean_outdegree,
            "mean outdegree " + num(mean_out, 4));
  c.note("exponent " + num(fit.exponent, 4) + " (r2 " + num(fit.r_squared, 3) +
         "), tags per edge " + num(tpe.mean.value_or(0.0), 4) + ", mean outdegree " +
         num(mean_out, 4));
  return c.outcome();
}

// 9 ---------------------------------------------------------------------------

std::string all_outputs(const ft::ExperimentResult& r, const ft::ExperimentConfig& config) {
  std::ostringstream out;
  ft::write_table(out, r.table);
  ft::write_table(out, r.table, -1);
  ft::write_grids(out, r.grids);
  ft::write_manifest(out, r, config);
  return out.str();
}

Outcome experiment_pipeline() {
  Check c;
  ft::GenParams p;
  p.node_count = 10000;
  p.seed = 17;
  const auto g = ft::generate(p);

  ft::ExperimentConfig config;
  config.top_tag_count = 20;
  config.threads = worker_threads();
  config.candidates.push_back(ft::Algorithm::e_intersection);
  config.candidates.push_back(ft::Algorithm::e_union_n_intersection);
  const auto prep = ft::prepare_experiment(g, config);
  const auto first = ft::run_experiment(prep.graph, prep.index, prep.store, config);
  c.require(first.table.pair_count == 190, "pairs " + std::to_string(first.table.pair_count));
  c.require(first.failures.empty(), std::to_string(first.failures.size()) + " pair failures");

  std::ostringstream table;
  ft::write_table(table, first.table);
  std::istringstream lines(table.str());
  std::string header;
  std::getline(lines, header);
  c.require(header == "reference\talgorithm\ttop8\ttop16\ttop32", "header " + header);
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  c.require(rows == 12, "table rows " + std::to_string(rows));

  std::size_t cells = 0;
  for (const auto& row : first.table.rows) {
    for (const auto& cell : row.cells) {
      if (!cell) continue;
      ++cells;
      c.require(cell->osim >= 0.0 && cell->osim <= 1.0 && cell->ksim >= 0.0 && cell->ksim <= 1.0,
                "mean outside [0,1]");
      if (row.reference == row.candidate) {
        c.require(cell->osim == 1.0 && cell->ksim == 1.0,
                  "self-comparison " + num(cell->osim) + "|" + num(cell->ksim));
      }
    }
  }
  for (const auto& grid : first.grids) {
    for (const auto& [key, cell] : grid.cells) {
      c.require(cell.mean >= 0.0 && cell.mean <= 1.0, "grid mean outside [0,1]");
    }
  }
  c.require(cells > 0, "no populated cells");

  const auto once = all_outputs(first, config);
  const auto again = ft::run_experiment(prep.graph, prep.index, prep.store, config);
  c.require(all_outputs(again, config) == once, "repeated run differs");
  auto rebuilt_config = config;
  rebuilt_config.threads = 1;
  const auto rebuilt = ft::prepare_experiment(g, rebuilt_config);
  const auto third = ft::run_experiment(rebuilt.graph, rebuilt.index, rebuilt.store, rebuilt_config);
  c.require(all_outputs(third, rebuilt_config).substr(0, once.find("threads=")) ==
                once.substr(0, once.find("threads=")),
            "rebuilt run differs");

  const auto* r_sum = first.table.find(ft::Algorithm::e_intersection, ft::Algorithm::r_sum);
  std::string sample = "-";
  if (r_sum && r_sum->cells[0]) {
    sample = num(r_sum->cells[0]->osim, 3) + "|" + num(r_sum->cells[0]->ksim, 3);
  }
  c.note("190 pairs, " + std::to_string(cells) + " cells, skipped " +
         std::to_string(first.skipped.size() ? first.skipped.begin()->second : 0) +
         ", E-intersection vs R-sum top8 " + sample);
  return c.outcome();
}

// 10 --------------------------------------------------------------------------

Outcome store_round_trip() {
  Check c;
  fixtures::TempDir dir;
  std::vector<ft::TaggedGraph> graphs;
  graphs.push_back(fixtures::four_users());
  graphs.push_back(fixtures::random_graph(3, 50, 0.1, 8, 4));
  graphs.push_back(ft::generate(small_params(7)));
  ft::GenParams big;
  big.node_count = 10000;
  big.seed = 23;
  graphs.push_back(ft::generate(big));

  int k = 0;
  for (const auto& g : graphs) {
    for (std::optional<std::size_t> depth : {std::optional<std::size_t>{}, std::optional<std::size_t>{50}}) {
      ft::StoreBuildOptions options;
      options.depth = depth;
      options.threads = worker_threads();
      const auto store = ft::build_store(g, ft::TagIndex(g), options).store;
      const auto path = dir / ("s" + std::to_string(k++) + ".store");
      ft::save_store(path, store);
      const auto text = fixtures::read_file(path);
      const auto fresh = ft::load_store(path);
      const auto shared = ft::load_store(path, g.shared_universe());
      c.require(ft::equivalent(store, fresh, kStoreRelTolerance), "fresh-universe load differs");
      c.require(ft::equivalent(store, shared, kStoreRelTolerance), "graph-universe load differs");
      std::ostringstream again;
      ft::write_store(again, shared);
      c.require(again.str() == text, "save(load(save)) not byte-identical");
      try {
        ft::check_compatible(shared, g);
      } catch (const ft::Error& e) {
        c.require(false, e.what());
      }
    }
  }
  const auto& a = graphs[1];
  const auto& b = graphs[2];
  const auto store = ft::build_store(a, ft::TagIndex(a)).store;
  bool detected = false;
  try {
    ft::check_compatible(store, b);
  } catch (const ft::FingerprintMismatchError&) {
    detected = true;
  }
  c.require(detected, "fingerprint mismatch not detected");
  detected = false;
  ft::save_store(dir / "a.store", store);
  try {
    ft::load_store(dir / "a.store", b.shared_universe());
  } catch (const ft::FingerprintMismatchError&) {
    detected = true;
  }
  c.require(detected, "foreign universe not detected");
  c.note(std::to_string(k) + " stores, largest graph " + std::to_string(graphs.back().node_count()) +
         " nodes");
  return c.outcome();
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "four-user graph construction", 1.0, four_user_construction},
      {2, "subgraph algebra", 1.0, subgraph_algebra},
      {3, "pagerank vs dense oracle", 30.0, pagerank_oracle},
      {4, "worked merge example", 1.0, worked_merge_example},
      {5, "collapse identities", 120.0, collapse_identities},
      {6, "tag-edge identity", 10.0, tag_edge_identity},
      {7, "similarity metrics", 60.0, similarity_metrics},
      {8, "generator statistics", 60.0, generator_statistics},
      {9, "experiment pipeline", 300.0, experiment_pipeline},
      {10, "store round trip", 30.0, store_round_trip},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = crit.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > crit.budget_seconds) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget of ") +
                  num(crit.budget_seconds, 4) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %-30s %9.3f s  %s\n", o.pass ? "PASS" : "FAIL", crit.id, crit.name,
                seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
