#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "facetrank/centrality.hpp"
#include "facetrank/tagged_graph.hpp"

namespace facetrank {

inline constexpr std::size_t kDefaultBinsPerDecade = 10;

/// One logarithmic bin [lower, upper).
struct Bin {
  double lower = 0.0;
  double upper = 0.0;
  /// Mean of the samples that fell into the bin.
  double center = 0.0;
  /// Probability density for distributions; mean in-neighbor indegree for
  /// the correlation curve.
  double value = 0.0;
  std::size_t count = 0;
};

/// Occupied bins only, centers strictly increasing.
struct BinnedDistribution {
  std::vector<Bin> bins;
  std::size_t bins_per_decade = kDefaultBinsPerDecade;
  /// Samples equal to zero, which have no log bin.
  std::size_t zero_count = 0;
  /// All samples, zeros included; density × width × total = count.
  std::size_t total = 0;
};

/// Log-binned density of positive samples. With `integer_valued`, a bin's
/// width is the number of integers it spans, so densities are per degree
/// value. Throws ParameterError for negative samples or zero bins_per_decade.
BinnedDistribution log_binned(std::span<const double> samples, bool integer_valued,
                              std::size_t bins_per_decade = kDefaultBinsPerDecade);

enum class DegreeDirection { in, out };

/// Degree of every node of g, in node order.
std::vector<std::size_t> degrees(const TaggedGraph& g, DegreeDirection direction);

/// Exact degree histogram, zero degrees included.
std::map<std::size_t, std::size_t> degree_histogram(const TaggedGraph& g,
                                                    DegreeDirection direction);

/// Throws EmptyGraphError.
BinnedDistribution degree_distribution(const TaggedGraph& g, DegreeDirection direction,
                                       std::size_t bins_per_decade = kDefaultBinsPerDecade);

/// Nodes binned by indegree; each bin's value is the mean, over its nodes,
/// of the average indegree of their in-neighbors. Nodes with indegree 0 are
/// counted in zero_count. Throws EmptyGraphError.
BinnedDistribution neighbor_indegree_correlation(
    const TaggedGraph& g, std::size_t bins_per_decade = kDefaultBinsPerDecade);

struct TagsPerEdge {
  std::map<std::size_t, std::size_t> histogram;  // |T(e)| -> edges
  /// Absent for a graph without edges.
  std::optional<double> mean;
  std::size_t edge_count = 0;
  std::size_t label_total = 0;
};

TagsPerEdge tags_per_edge_histogram(const TaggedGraph& g);

/// Log-binned PageRank values. Throws EmptyGraphError.
BinnedDistribution pagerank_distribution(const TaggedGraph& g, const PageRankParams& params = {},
                                         std::size_t bins_per_decade = kDefaultBinsPerDecade);

struct PowerLawFit {
  double exponent = 0.0;  // -slope
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Bins holding fewer than this many samples are left out of power-law fits:
/// in a sparse tail only the lucky bins are occupied, which flattens the slope.
inline constexpr std::size_t kDefaultMinBinCount = 3;

/// Least squares on (log10 center, log10 value) over bins with positive
/// center and value and at least `min_count` samples. Throws TooFewBinsError
/// with fewer than 3 such bins.
PowerLawFit fit_power_law(const BinnedDistribution& d, std::size_t min_count = kDefaultMinBinCount);

/// `bin_center \t value` lines.
void write_distribution(std::ostream& out, const BinnedDistribution& d);
/// `k \t count` lines.
void write_histogram(std::ostream& out, const std::map<std::size_t, std::size_t>& histogram);

}  // namespace facetrank
