#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "facetrank/tagged_graph.hpp"

namespace facetrank {

struct PageRankParams {
  double damping = 0.85;
  /// Stop once no component changes by more than this between iterations.
  double epsilon = 1e-6;
  std::size_t max_iterations = 200;

  /// Throws ParameterError.
  void validate() const;
};

/// PageRank probabilities of one (sub)graph's nodes.
struct CentralityVector {
  std::shared_ptr<const Universe> universe;
  std::vector<NodeId> nodes;   // ascending
  std::vector<double> values;  // aligned with `nodes`
  bool converged = true;
  std::size_t iterations = 0;

  std::size_t size() const noexcept { return nodes.size(); }
  std::optional<double> value_of(NodeId node) const;
  double sum() const;
};

struct RankEntry {
  NodeId node = 0;
  std::uint32_t rank = 0;  // 1 = best
  double score = 0.0;
};

/// Total order of users, ranks 1..n with no gaps.
struct Ranking {
  std::shared_ptr<const Universe> universe;
  std::vector<RankEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  std::vector<NodeId> nodes() const;
  std::vector<std::string> names() const;
  /// Keeps the first n entries.
  void truncate(std::size_t n);
};

/// Damped random-surfer stationary vector by power iteration. Dangling nodes
/// spread their mass uniformly; teleport is uniform. Throws EmptyGraphError.
/// A run that hits max_iterations is returned with converged == false.
CentralityVector pagerank(const TaggedGraph& g, const PageRankParams& params = {});

/// One pass removing every node with indegree 1 and outdegree 0 together
/// with its single incoming edge. Not iterated to a fixpoint.
TaggedGraph prune_dangling(const TaggedGraph& g);

/// Descending centrality; ties by ascending user id.
Ranking rank_of(const CentralityVector& c);

enum class ScoreOrder { descending, ascending };

/// Ranks arbitrary scores; ties by ascending user id.
Ranking rank_scores(std::shared_ptr<const Universe> universe,
                    std::vector<std::pair<NodeId, double>> scores, ScoreOrder order);

/// `user \t rank \t score` lines in rank order, scores to 12 significant digits.
void write_ranking(std::ostream& out, const Ranking& ranking);

}  // namespace facetrank
