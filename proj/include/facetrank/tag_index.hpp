#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "facetrank/tagged_graph.hpp"

namespace facetrank {

/// Inverted index from tag to the edges carrying it and their endpoints.
class TagIndex {
 public:
  struct Postings {
    std::vector<EdgeKey> edges;  // sorted
    std::vector<NodeId> nodes;   // sorted, endpoints of `edges`
  };

  TagIndex() = default;
  explicit TagIndex(const TaggedGraph& g);

  /// Tags with at least one edge, ascending id.
  const std::vector<TagId>& vocabulary() const noexcept { return vocabulary_; }

  std::optional<TagId> find(std::string_view tag) const;
  /// Empty spans for tags without edges.
  std::span<const EdgeKey> edges(TagId tag) const;
  std::span<const NodeId> nodes(TagId tag) const;

  /// Σ_t |E(G(t))|.
  std::size_t total_postings() const noexcept { return total_postings_; }

  const std::shared_ptr<const Universe>& shared_universe() const noexcept { return universe_; }

 private:
  std::shared_ptr<const Universe> universe_;
  std::vector<Postings> postings_;  // indexed by TagId
  std::vector<TagId> vocabulary_;
  std::size_t total_postings_ = 0;
};

TagIndex build_index(const TaggedGraph& g);

/// Resolves every facet tag; nullopt when any tag has no edges in the index.
std::optional<std::vector<TagId>> resolve_facet(const TagIndex& index, const Facet& facet);

/// Indexed equivalents of the graph algebra: cost proportional to the
/// postings involved instead of |E(G)|.
TaggedGraph tag_subgraph(const TaggedGraph& g, const TagIndex& index, TagId tag);
TaggedGraph conjunction(const TaggedGraph& g, const TagIndex& index, std::span<const TagId> tags);
TaggedGraph disjunction(const TaggedGraph& g, const TagIndex& index, std::span<const TagId> tags);

/// ⋂_i N(G(t_i)).
std::vector<NodeId> node_intersection(const TagIndex& index, std::span<const TagId> tags);

}  // namespace facetrank
