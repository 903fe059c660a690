#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "facetrank/tagged_graph.hpp"

namespace facetrank {

/// A content item uploaded by `uploader`, with the tags it was given.
struct TaggedContent {
  std::string uploader;
  std::string content;
  std::vector<std::string> tags;
};

/// `recommender` marked `content` as a favorite.
struct Recommendation {
  std::string recommender;
  std::string content;
};

struct BuildOptions {
  /// Tags dropped after normalization (e.g. mandatory category tags).
  std::vector<std::string> stop_tags;
};

struct GraphBuildReport {
  std::size_t contents_read = 0;
  std::size_t contents_used = 0;
  std::size_t malformed_contents = 0;
  std::size_t duplicate_contents = 0;
  std::size_t stop_tags_removed = 0;
  std::size_t recommendations_read = 0;
  std::size_t recommendations_used = 0;
  std::size_t malformed_recommendations = 0;
  std::size_t unknown_content = 0;
  /// Recommendations of content whose tag set is empty; they add no edge.
  std::size_t untagged_content = 0;
};

struct GraphBuild {
  TaggedGraph graph;
  GraphBuildReport report;
};

/// N = uploaders ∪ recommenders; an edge c'→u for every recommendation by c'
/// of content uploaded by u, labeled with the union of those contents' tags.
/// Users and tags are interned in lexicographic order, so the result does not
/// depend on record order.
GraphBuild build_graph(std::span<const TaggedContent> contents,
                       std::span<const Recommendation> recs,
                       const BuildOptions& options = {});

}  // namespace facetrank
