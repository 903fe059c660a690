#include "facetrank/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "facetrank/errors.hpp"
#include "facetrank/text.hpp"

namespace facetrank {

void PageRankParams::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) throw ParameterError("damping must lie in (0,1)");
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (max_iterations == 0) throw ParameterError("max_iterations must be positive");
}

std::optional<double> CentralityVector::value_of(NodeId node) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
  if (it == nodes.end() || *it != node) return std::nullopt;
  return values[static_cast<std::size_t>(it - nodes.begin())];
}

double CentralityVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

std::vector<NodeId> Ranking::nodes() const {
  std::vector<NodeId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.node);
  return out;
}

std::vector<std::string> Ranking::names() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(universe->users.name(e.node));
  return out;
}

void Ranking::truncate(std::size_t n) {
  if (entries.size() > n) entries.resize(n);
}

CentralityVector pagerank(const TaggedGraph& g, const PageRankParams& params) {
  params.validate();
  if (g.empty()) throw EmptyGraphError();

  const auto nodes = g.nodes();
  const std::size_t n = nodes.size();
  auto local = [&](NodeId id) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };

  // Pull-based CSR over in-edges. Edges arrive sorted by source, so every
  // in-list is sorted by source and the summation order is fixed.
  std::vector<std::uint32_t> out_degree(n, 0);
  std::vector<std::size_t> in_offsets(n + 1, 0);
  std::vector<std::pair<std::size_t, std::size_t>> local_edges;
  local_edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto s = local(e.src);
    const auto d = local(e.dst);
    local_edges.emplace_back(s, d);
    ++out_degree[s];
    ++in_offsets[d + 1];
  }
  std::partial_sum(in_offsets.begin(), in_offsets.end(), in_offsets.begin());
  std::vector<std::uint32_t> in_sources(local_edges.size());
  {
    auto fill = in_offsets;
    for (const auto& [s, d] : local_edges) in_sources[fill[d]++] = static_cast<std::uint32_t>(s);
  }

  const double d = params.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n, 0.0);
  std::vector<double> contrib(n, 0.0);

  CentralityVector result;
  result.universe = g.shared_universe();
  result.nodes.assign(nodes.begin(), nodes.end());
  result.converged = false;

  for (std::size_t iter = 1; iter <= params.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out_degree[j] == 0) {
        dangling += rank[j];
        contrib[j] = 0.0;
      } else {
        contrib[j] = rank[j] / out_degree[j];
      }
    }
    const double base = (d * dangling + (1.0 - d)) * inv_n;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double incoming = 0.0;
      for (auto k = in_offsets[i]; k < in_offsets[i + 1]; ++k) incoming += contrib[in_sources[k]];
      next[i] = base + d * incoming;
      delta = std::max(delta, std::abs(next[i] - rank[i]));
    }
    rank.swap(next);
    result.iterations = iter;
    if (delta <= params.epsilon) {
      result.converged = true;
      break;
    }
  }
  result.values = std::move(rank);
  return result;
}

TaggedGraph prune_dangling(const TaggedGraph& g) {
  const auto nodes = g.nodes();
  auto local = [&](NodeId id) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  std::vector<std::uint32_t> in(nodes.size(), 0);
  std::vector<std::uint32_t> out(nodes.size(), 0);
  for (const auto& e : g.edges()) {
    ++out[local(e.src)];
    ++in[local(e.dst)];
  }
  std::vector<bool> drop(nodes.size(), false);
  for (std::size_t i = 0; i < nodes.size(); ++i) drop[i] = in[i] == 1 && out[i] == 0;

  GraphParts parts;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!drop[i]) parts.nodes.push_back(nodes[i]);
  }
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    // Only the dropped node's single in-edge can touch it (its outdegree is 0).
    if (drop[local(e.dst)]) continue;
    parts.edges.push_back(e);
    auto tags = g.edge_tags(i);
    parts.tags.insert(parts.tags.end(), tags.begin(), tags.end());
    parts.tag_offsets.push_back(static_cast<std::uint32_t>(parts.tags.size()));
  }
  return TaggedGraph(g.shared_universe(), std::move(parts));
}

Ranking rank_scores(std::shared_ptr<const Universe> universe,
                    std::vector<std::pair<NodeId, double>> scores, ScoreOrder order) {
  const Universe* u = universe.get();
  auto by_id = [u](NodeId a, NodeId b) {
    return u ? u->users.name(a) < u->users.name(b) : a < b;
  };
  std::sort(scores.begin(), scores.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) {
      return order == ScoreOrder::descending ? a.second > b.second : a.second < b.second;
    }
    return by_id(a.first, b.first);
  });
  Ranking ranking;
  ranking.universe = std::move(universe);
  ranking.entries.reserve(scores.size());
  std::uint32_t rank = 0;
  for (const auto& [node, score] : scores) ranking.entries.push_back({node, ++rank, score});
  return ranking;
}

Ranking rank_of(const CentralityVector& c) {
  std::vector<std::pair<NodeId, double>> scores;
  scores.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) scores.emplace_back(c.nodes[i], c.values[i]);
  return rank_scores(c.universe, std::move(scores), ScoreOrder::descending);
}

void write_ranking(std::ostream& out, const Ranking& ranking) {
  for (const auto& e : ranking.entries) {
    out << ranking.universe->users.name(e.node) << '\t' << e.rank << '\t'
        << text::format_double(e.score) << '\n';
  }
}

}  // namespace facetrank
