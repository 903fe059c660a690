#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "facetrank/centrality.hpp"
#include "facetrank/facet_algorithms.hpp"
#include "facetrank/rank_index.hpp"
#include "facetrank/tag_index.hpp"
#include "facetrank/tagged_graph.hpp"

namespace facetrank {

struct ExperimentConfig {
  /// K: facets are all unordered pairs of the K most used tags.
  std::size_t top_tag_count = 99;
  std::vector<std::string> stop_tags;
  /// Top-n windows of the similarity tables.
  std::vector<std::size_t> windows{8, 16, 32};
  std::size_t w = kDefaultTopW;
  PageRankParams params;
  /// Remove dangling leaves once before indexing (used by prepare_experiment).
  bool prune_dangling = true;
  std::vector<Algorithm> references{Algorithm::e_intersection,
                                    Algorithm::e_union_n_intersection};
  std::vector<Algorithm> candidates{Algorithm::single, Algorithm::pr_product, Algorithm::r_sum,
                                    Algorithm::tau_n_intersection};
  /// Windows 1, 2, 4, ... up to this bound form the y axis of the grids.
  std::size_t grid_max_window = 1024;
  unsigned threads = 1;

  /// Throws ParameterError.
  void validate() const;
};

/// The K tags carried by the most edges, ties by name, stop tags excluded.
/// Throws InsufficientVocabularyError when fewer than K tags remain.
std::vector<std::string> top_tags(const TaggedGraph& g, std::size_t k,
                                  const std::vector<std::string>& stop_tags = {});

struct SimilarityCell {
  double osim = 0.0;
  double ksim = 0.0;
  /// Pairs averaged; a pair counts when the reference holds at least n users.
  std::size_t samples = 0;
};

struct SimilarityRow {
  Algorithm reference = Algorithm::e_intersection;
  Algorithm candidate = Algorithm::single;
  std::vector<std::optional<SimilarityCell>> cells;  // aligned with windows
};

struct SimilarityTable {
  std::vector<std::size_t> windows;
  std::vector<SimilarityRow> rows;
  std::size_t pair_count = 0;

  const SimilarityRow* find(Algorithm reference, Algorithm candidate) const;
};

enum class SimilarityMetric { osim, ksim };

/// Mean similarity binned by log2 of the reference ranking size (x) and
/// log2 of the window (y). Only cells with data are present.
struct SimilarityGrid {
  Algorithm reference = Algorithm::e_intersection;
  Algorithm candidate = Algorithm::single;
  SimilarityMetric metric = SimilarityMetric::osim;
  struct Cell {
    double mean = 0.0;
    std::size_t count = 0;
  };
  std::map<std::pair<int, int>, Cell> cells;  // (size bin, window bin)
};

struct PairFailure {
  std::string first;
  std::string second;
  std::string algorithm;
  std::string message;
};

struct ExperimentResult {
  std::vector<std::string> tags;
  SimilarityTable table;
  std::vector<SimilarityGrid> grids;
  /// Pairs whose reference ranking was empty, per reference name.
  std::map<std::string, std::size_t> skipped;
  std::vector<PairFailure> failures;
  std::string graph_fingerprint;
};

/// The graph, index and unlimited-depth store an experiment runs on.
struct PreparedExperiment {
  TaggedGraph graph;
  TagIndex index;
  RankStore store;
};

/// Prunes dangling leaves when configured, then indexes and builds the store.
PreparedExperiment prepare_experiment(const TaggedGraph& g, const ExperimentConfig& config);

/// Every unordered pair of top tags, every reference against every
/// candidate. Failures of single pairs are recorded, not thrown. Output does
/// not depend on config.threads.
ExperimentResult run_experiment(const TaggedGraph& g, const RankStore& store,
                                const ExperimentConfig& config);
ExperimentResult run_experiment(const TaggedGraph& g, const TagIndex& index,
                                const RankStore& store, const ExperimentConfig& config);

/// `reference \t algorithm \t top8 \t ...`, cells "osim|ksim" or "-".
/// `digits` < 0 writes full precision, otherwise fixed decimals.
void write_table(std::ostream& out, const SimilarityTable& table, int digits = 2);
/// Reads back write_table output; sample counts are not recorded and come
/// back as 0 for present cells. Throws ParseError.
SimilarityTable read_table(std::istream& in);

/// `reference \t algorithm \t metric \t size_lo \t size_hi \t window \t mean \t count`.
void write_grids(std::ostream& out, const std::vector<SimilarityGrid>& grids);

/// `key=value` lines: configuration, fingerprint, tags, counts.
void write_manifest(std::ostream& out, const ExperimentResult& result,
                    const ExperimentConfig& config);

/// Writes `<stem>.tsv` (2 decimals), `<stem>.full.tsv`, `<stem>.grids.tsv`
/// and `<stem>.manifest` next to each other. Throws IoError.
void emit_results(const std::filesystem::path& stem, const ExperimentResult& result,
                  const ExperimentConfig& config);

}  // namespace facetrank
