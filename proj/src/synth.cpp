#include "facetrank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "facetrank/errors.hpp"
#include "facetrank/text.hpp"

namespace facetrank {

void GenParams::validate() const {
  if (node_count < 2) throw ParameterError("node_count must be at least 2");
  if (!(mean_outdegree > 0.0) || mean_outdegree > static_cast<double>(node_count - 1) / 2.0) {
    throw ParameterError("mean_outdegree must lie in (0, (node_count-1)/2]");
  }
  if (!(indegree_exponent > 2.0 && indegree_exponent < 3.0)) {
    throw ParameterError("indegree_exponent must lie in (2,3)");
  }
  if (tag_vocabulary_size == 0) throw ParameterError("tag vocabulary must be non-empty");
  if (!(tags_per_edge_mean >= 1.0)) throw ParameterError("tags_per_edge_mean must be at least 1");
  if (tags_per_edge_mean > static_cast<double>(tag_vocabulary_size)) {
    throw ParameterError("tags_per_edge_mean exceeds the vocabulary size");
  }
  if (!(tag_popularity_exponent >= 0.0)) {
    throw ParameterError("tag_popularity_exponent must be non-negative");
  }
  if (!(assortativity_bias >= -1.0 && assortativity_bias <= 1.0)) {
    throw ParameterError("assortativity_bias must lie in [-1,1]");
  }
}

namespace {

std::string padded(char prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

std::size_t digits_for(std::size_t count) {
  return std::max<std::size_t>(1, std::to_string(count - 1).size());
}

// E[min(X, cap)] for X ~ Pareto(x_min, gamma - 1).
double capped_pareto_mean(double x_min, double gamma, double cap) {
  if (x_min >= cap) return cap;
  return ((gamma - 1.0) * x_min - std::pow(x_min, gamma - 1.0) * std::pow(cap, 2.0 - gamma)) /
         (gamma - 2.0);
}

// Scale at which the capped mean equals `mean`; the mean is increasing in x_min.
double pareto_scale(double mean, double gamma, double cap) {
  double lo = 0.0;
  double hi = mean;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (capped_pareto_mean(mid, gamma, cap) < mean ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Continuous Pareto draws capped at n-1 and stochastically rounded, so the
// expected degree equals the requested mean.
std::vector<std::uint32_t> planted_indegrees(const GenParams& p, std::mt19937_64& rng) {
  const double gamma = p.indegree_exponent;
  const double cap = static_cast<double>(p.node_count - 1);
  const double x_min = pareto_scale(p.mean_outdegree, gamma, cap);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::uint32_t> degrees(p.node_count);
  for (auto& k : degrees) {
    const double u = 1.0 - uniform(rng);  // (0,1]
    const double x = x_min * std::pow(u, -1.0 / (gamma - 1.0));
    const double rounded = std::floor(x + uniform(rng));
    k = static_cast<std::uint32_t>(std::min(rounded, cap));
  }
  return degrees;
}

std::vector<std::uint32_t> matched_outdegrees(const GenParams& p, std::uint64_t total,
                                              std::mt19937_64& rng) {
  const auto cap = static_cast<std::uint32_t>(p.node_count - 1);
  std::poisson_distribution<std::uint32_t> poisson(p.mean_outdegree);
  std::vector<std::uint32_t> degrees(p.node_count);
  std::uint64_t sum = 0;
  for (auto& k : degrees) {
    k = std::min(poisson(rng), cap);
    sum += k;
  }
  std::uniform_int_distribution<std::size_t> pick(0, p.node_count - 1);
  while (sum < total) {
    auto& k = degrees[pick(rng)];
    if (k < cap) {
      ++k;
      ++sum;
    }
  }
  while (sum > total) {
    auto& k = degrees[pick(rng)];
    if (k > 0) {
      --k;
      --sum;
    }
  }
  return degrees;
}

// Stubs sorted by a key mixing noise with the owner's indegree rank; bias 0
// is a uniformly random matching.
std::vector<NodeId> ordered_stubs(const std::vector<std::uint32_t>& multiplicity,
                                  const std::vector<double>& degree_rank, double weight,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::pair<double, NodeId>> keyed;
  for (NodeId v = 0; v < multiplicity.size(); ++v) {
    for (std::uint32_t i = 0; i < multiplicity[v]; ++i) {
      keyed.emplace_back((1.0 - std::abs(weight)) * uniform(rng) + weight * degree_rank[v], v);
    }
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<NodeId> stubs;
  stubs.reserve(keyed.size());
  for (const auto& [key, v] : keyed) stubs.push_back(v);
  return stubs;
}

std::uint64_t edge_code(NodeId s, NodeId t) { return (std::uint64_t{s} << 32) | t; }

std::vector<EdgeKey> match_stubs(const std::vector<NodeId>& sources,
                                 const std::vector<NodeId>& targets, std::mt19937_64& rng) {
  std::vector<EdgeKey> accepted;
  accepted.reserve(sources.size());
  std::unordered_set<std::uint64_t> present;
  present.reserve(sources.size() * 2);
  constexpr int kSwapAttempts = 32;

  for (std::size_t i = 0; i < sources.size(); ++i) {
    const NodeId s = sources[i];
    const NodeId t = targets[i];
    if (s != t && !present.contains(edge_code(s, t))) {
      present.insert(edge_code(s, t));
      accepted.push_back({s, t});
      continue;
    }
    // Degree-preserving repair: exchange targets with an accepted edge.
    for (int attempt = 0; attempt < kSwapAttempts && !accepted.empty(); ++attempt) {
      std::uniform_int_distribution<std::size_t> pick(0, accepted.size() - 1);
      EdgeKey& other = accepted[pick(rng)];
      if (s == other.dst || other.src == t) continue;
      if (present.contains(edge_code(s, other.dst)) || present.contains(edge_code(other.src, t))) {
        continue;
      }
      present.erase(edge_code(other.src, other.dst));
      present.insert(edge_code(s, other.dst));
      present.insert(edge_code(other.src, t));
      const NodeId moved = other.dst;
      other.dst = t;
      accepted.push_back({s, moved});
      break;
    }
  }
  return accepted;
}

class ZipfSampler {
 public:
  ZipfSampler(std::size_t size, double exponent) : cdf_(size) {
    double sum = 0.0;
    for (std::size_t r = 0; r < size; ++r) {
      sum += std::pow(static_cast<double>(r + 1), -exponent);
      cdf_[r] = sum;
    }
    for (auto& c : cdf_) c /= sum;
    cdf_.back() = 1.0;
  }

  std::size_t operator()(std::mt19937_64& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  }

  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

// `count` distinct Zipf-distributed tag ranks, sorted.
void draw_tags(const ZipfSampler& zipf, std::size_t count, std::mt19937_64& rng,
               std::vector<TagId>& out) {
  out.clear();
  const std::size_t max_draws = 64 * count + 64;
  for (std::size_t draws = 0; out.size() < count && draws < max_draws; ++draws) {
    const auto t = static_cast<TagId>(std::min(zipf(rng), zipf.size() - 1));
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  // Rejection stalls only for counts close to the vocabulary size.
  for (TagId t = 0; out.size() < count; ++t) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

TaggedGraph generate(const GenParams& p) {
  p.validate();
  std::mt19937_64 rng(p.seed);

  const auto indegree = planted_indegrees(p, rng);
  const std::uint64_t total = std::accumulate(indegree.begin(), indegree.end(), std::uint64_t{0});
  const auto outdegree = matched_outdegrees(p, total, rng);

  // Normalized indegree rank of each node, for the assortativity key.
  std::vector<NodeId> order(p.node_count);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return indegree[a] < indegree[b]; });
  std::vector<double> rank(p.node_count);
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = static_cast<double>(i) / static_cast<double>(p.node_count - 1);
  }
  const double bias = p.assortativity_bias;
  std::vector<double> source_rank = rank;
  if (bias < 0) {
    for (auto& r : source_rank) r = 1.0 - r;
  }
  const auto sources = ordered_stubs(outdegree, source_rank, std::abs(bias), rng);
  const auto targets = ordered_stubs(indegree, rank, std::abs(bias), rng);

  auto edges = match_stubs(sources, targets, rng);
  std::sort(edges.begin(), edges.end());

  auto universe = std::make_shared<Universe>();
  const auto user_width = digits_for(p.node_count);
  for (std::size_t v = 0; v < p.node_count; ++v) universe->users.intern(padded('u', v, user_width));
  const auto tag_width = digits_for(p.tag_vocabulary_size);
  for (std::size_t t = 0; t < p.tag_vocabulary_size; ++t) {
    universe->tags.intern(padded('t', t, tag_width));
  }

  GraphParts parts;
  parts.nodes.resize(p.node_count);
  std::iota(parts.nodes.begin(), parts.nodes.end(), NodeId{0});
  parts.edges = std::move(edges);
  parts.tag_offsets.reserve(parts.edges.size() + 1);
  parts.tags.reserve(static_cast<std::size_t>(static_cast<double>(parts.edges.size()) *
                                              (p.tags_per_edge_mean + 1.0)));

  const ZipfSampler zipf(p.tag_vocabulary_size, p.tag_popularity_exponent);
  std::poisson_distribution<std::size_t> tag_count(p.tags_per_edge_mean);
  std::vector<TagId> tags;
  for (std::size_t i = 0; i < parts.edges.size(); ++i) {
    const auto count = std::clamp<std::size_t>(tag_count(rng), 1, p.tag_vocabulary_size);
    draw_tags(zipf, count, rng, tags);
    parts.tags.insert(parts.tags.end(), tags.begin(), tags.end());
    parts.tag_offsets.push_back(static_cast<std::uint32_t>(parts.tags.size()));
  }
  return TaggedGraph(std::move(universe), std::move(parts));
}

std::vector<std::string> describe(const GenParams& p) {
  return {
      "generator=facetrank-synth",
      "node_count=" + std::to_string(p.node_count),
      "mean_outdegree=" + text::format_double(p.mean_outdegree),
      "indegree_exponent=" + text::format_double(p.indegree_exponent),
      "tag_vocabulary_size=" + std::to_string(p.tag_vocabulary_size),
      "tags_per_edge_mean=" + text::format_double(p.tags_per_edge_mean),
      "tag_popularity_exponent=" + text::format_double(p.tag_popularity_exponent),
      "assortativity_bias=" + text::format_double(p.assortativity_bias),
      "seed=" + std::to_string(p.seed),
  };
}

}  // namespace facetrank
