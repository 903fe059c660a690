#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "facetrank/tagged_graph.hpp"

namespace facetrank {

struct GenParams {
  std::size_t node_count = 10000;
  double mean_outdegree = 25.0;
  /// Power-law exponent of the indegree distribution, in (2,3).
  double indegree_exponent = 2.5;
  std::size_t tag_vocabulary_size = 1000;
  double tags_per_edge_mean = 9.26;
  /// Zipf exponent of tag popularity.
  double tag_popularity_exponent = 1.0;
  /// In [-1,1]; > 0 links high-indegree sources to high-indegree targets.
  double assortativity_bias = 0.0;
  std::uint64_t seed = 1;

  /// Throws ParameterError.
  void validate() const;
};

/// Seeded synthetic tagged graph: power-law indegrees, Poisson outdegrees,
/// Poisson(≥1) tags per edge drawn from a Zipf vocabulary. Users are named
/// u00000.., tags t0000.. (zero-padded, so name order is id order).
TaggedGraph generate(const GenParams& params);

/// "key=value" lines describing the parameters, for export headers.
std::vector<std::string> describe(const GenParams& params);

}  // namespace facetrank
