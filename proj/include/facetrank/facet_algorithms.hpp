#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "facetrank/centrality.hpp"
#include "facetrank/rank_index.hpp"
#include "facetrank/tag_index.hpp"
#include "facetrank/tagged_graph.hpp"

namespace facetrank {

enum class Algorithm {
  e_intersection,
  e_union_n_intersection,
  single,
  pr_product,
  r_sum,
  tau_n_intersection,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::e_intersection, Algorithm::e_union_n_intersection, Algorithm::single,
    Algorithm::pr_product,     Algorithm::r_sum,                  Algorithm::tau_n_intersection,
};

/// "e-intersection", "e-union-n-intersection", "single", "pr-product",
/// "r-sum", "tau-n-intersection".
std::string_view algorithm_name(Algorithm a);
/// Accepts the canonical names, with '_' in place of '-' as well.
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Number of top nodes per tag kept by τ-N-intersection.
inline constexpr std::size_t kDefaultTopW = 500;

// Reference rankings. Both rebuild a facet subgraph and run PageRank, so
// they are offline-grade. Unknown tags give an empty ranking.

/// PageRank ranking of the conjunction graph G(t1 ∧ … ∧ tk).
Ranking e_intersection_rank(const TaggedGraph& g, const Facet& facet,
                            const PageRankParams& params = {});
Ranking e_intersection_rank(const TaggedGraph& g, const TagIndex& index, const Facet& facet,
                            const PageRankParams& params = {});

/// PageRank of the disjunction graph, restricted to ⋂ N(G(t_i)).
Ranking e_union_n_intersection_rank(const TaggedGraph& g, const Facet& facet,
                                    const PageRankParams& params = {});
Ranking e_union_n_intersection_rank(const TaggedGraph& g, const TagIndex& index,
                                    const Facet& facet, const PageRankParams& params = {});

// Online merges.

/// ⋂ N(G(t_i)) ordered by the complete graph's centrality `global`.
/// Unknown tag gives an empty ranking.
Ranking single_rank(const CentralityVector& global, const TagIndex& index, const Facet& facet);
/// Same, from the store's global section and member sets. Throws
/// MissingTagError; ParameterError if the store has no global section.
Ranking single_rank(const RankStore& store, const Facet& facet);

/// Product of per-tag centralities over ⋂ N(G(t_i)). Candidates lacking a
/// stored centrality for some tag (truncated store) are dropped.
/// Throws MissingTagError.
Ranking pr_product_rank(const RankStore& store, const Facet& facet);

/// Sum of per-tag rank positions over ⋂ N(G(t_i)), smaller is better.
/// Candidates beyond some tag's stored depth are dropped. Throws MissingTagError.
Ranking r_sum_rank(const RankStore& store, const Facet& facet);

/// PageRank ranking of ⋂_i G(top_w(t_i))(t_i): each tag's subgraph induced
/// on its w best nodes, edge-intersected across tags. Throws
/// MissingTagError, or ParameterError when a tag's stored ranking is
/// truncated above w.
Ranking tau_n_intersection_rank(const TaggedGraph& g, const RankStore& store, const Facet& facet,
                                std::size_t w = kDefaultTopW, const PageRankParams& params = {});
Ranking tau_n_intersection_rank(const TaggedGraph& g, const TagIndex& index,
                                const RankStore& store, const Facet& facet,
                                std::size_t w = kDefaultTopW, const PageRankParams& params = {});

struct FacetRankRequest {
  Facet facet;
  Algorithm algorithm = Algorithm::r_sum;
  std::optional<std::size_t> top_n;
  std::size_t w = kDefaultTopW;
};

struct FacetRankResult {
  Ranking ranking;
  std::size_t candidate_set_size = 0;
  std::string provenance;
};

/// Answers requests over one graph, its index and its store. Facets naming a
/// tag without edges yield an empty result for every algorithm.
class FacetRanker {
 public:
  FacetRanker(const TaggedGraph& g, const TagIndex& index, const RankStore& store,
              PageRankParams params = {});

  FacetRankResult rank(const FacetRankRequest& request) const;

 private:
  const TaggedGraph& graph_;
  const TagIndex& index_;
  const RankStore& store_;
  PageRankParams params_;
};

}  // namespace facetrank
