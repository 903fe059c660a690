#include "facetrank/facet_algorithms.hpp"

#include <algorithm>
#include <iterator>
#include <vector>

#include "facetrank/errors.hpp"
#include "facetrank/text.hpp"

namespace facetrank {

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::e_intersection: return "e-intersection";
    case Algorithm::e_union_n_intersection: return "e-union-n-intersection";
    case Algorithm::single: return "single";
    case Algorithm::pr_product: return "pr-product";
    case Algorithm::r_sum: return "r-sum";
    case Algorithm::tau_n_intersection: return "tau-n-intersection";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string canonical(name);
  std::replace(canonical.begin(), canonical.end(), '_', '-');
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_name(a) == canonical) return a;
  }
  return std::nullopt;
}

namespace {

Ranking empty_ranking(std::shared_ptr<const Universe> universe) {
  Ranking r;
  r.universe = std::move(universe);
  return r;
}

Ranking rank_graph(const TaggedGraph& g, const PageRankParams& params) {
  if (g.empty()) return empty_ranking(g.shared_universe());
  return rank_of(pagerank(g, params));
}

std::vector<NodeId> intersect_sorted(std::vector<NodeId> acc, std::span<const NodeId> other) {
  std::vector<NodeId> next;
  std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                        std::back_inserter(next));
  return next;
}

Ranking restrict_ranking(const CentralityVector& c, std::span<const NodeId> keep) {
  std::vector<std::pair<NodeId, double>> scores;
  scores.reserve(keep.size());
  for (NodeId n : keep) {
    if (auto v = c.value_of(n)) scores.emplace_back(n, *v);
  }
  return rank_scores(c.universe, std::move(scores), ScoreOrder::descending);
}

// Store entries in canonical (name) order so floating-point products do not
// depend on the order tags were given in.
std::vector<const TagRanking*> store_entries(const RankStore& store, const Facet& facet) {
  std::vector<std::string> names = facet.tags();
  std::sort(names.begin(), names.end());
  std::vector<const TagRanking*> entries;
  entries.reserve(names.size());
  for (const auto& name : names) entries.push_back(&store.at(name));
  return entries;
}

std::vector<NodeId> member_intersection(const std::vector<const TagRanking*>& entries) {
  auto first = entries.front()->members();
  std::vector<NodeId> acc(first.begin(), first.end());
  for (std::size_t i = 1; i < entries.size() && !acc.empty(); ++i) {
    acc = intersect_sorted(std::move(acc), entries[i]->members());
  }
  return acc;
}

// Nodes among the top w of an entry; all of them when w covers the tag.
std::vector<NodeId> top_nodes(const TagRanking& entry, std::size_t w, std::string_view tag) {
  if (entry.truncated() && entry.ranked().size() < w) {
    throw ParameterError("stored ranking for '" + std::string(tag) + "' holds " +
                         std::to_string(entry.ranked().size()) + " nodes, fewer than w=" +
                         std::to_string(w));
  }
  const auto n = std::min(w, entry.ranked().size());
  std::vector<NodeId> out(entry.ranked().begin(), entry.ranked().begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// --- references -------------------------------------------------------------

Ranking e_intersection_rank(const TaggedGraph& g, const Facet& facet,
                            const PageRankParams& params) {
  return rank_graph(conjunction(g, facet), params);
}

Ranking e_intersection_rank(const TaggedGraph& g, const TagIndex& index, const Facet& facet,
                            const PageRankParams& params) {
  auto tags = resolve_facet(index, facet);
  if (!tags) return empty_ranking(g.shared_universe());
  return rank_graph(conjunction(g, index, *tags), params);
}

Ranking e_union_n_intersection_rank(const TaggedGraph& g, const Facet& facet,
                                    const PageRankParams& params) {
  std::vector<NodeId> keep;
  for (std::size_t i = 0; i < facet.size(); ++i) {
    const auto sub = tag_subgraph(g, facet.tags()[i]);
    const auto nodes = sub.nodes();
    keep = i == 0 ? std::vector<NodeId>(nodes.begin(), nodes.end())
                  : intersect_sorted(std::move(keep), nodes);
  }
  if (keep.empty()) return empty_ranking(g.shared_universe());
  return restrict_ranking(pagerank(disjunction(g, facet), params), keep);
}

Ranking e_union_n_intersection_rank(const TaggedGraph& g, const TagIndex& index,
                                    const Facet& facet, const PageRankParams& params) {
  auto tags = resolve_facet(index, facet);
  if (!tags) return empty_ranking(g.shared_universe());
  const auto keep = node_intersection(index, *tags);
  if (keep.empty()) return empty_ranking(g.shared_universe());
  return restrict_ranking(pagerank(disjunction(g, index, *tags), params), keep);
}

// --- online merges ----------------------------------------------------------

Ranking single_rank(const CentralityVector& global, const TagIndex& index, const Facet& facet) {
  auto tags = resolve_facet(index, facet);
  if (!tags) return empty_ranking(global.universe);
  return restrict_ranking(global, node_intersection(index, *tags));
}

Ranking single_rank(const RankStore& store, const Facet& facet) {
  if (!store.global()) throw ParameterError("store has no global ranking");
  const auto entries = store_entries(store, facet);
  const auto& global = *store.global();
  std::vector<std::pair<NodeId, double>> scores;
  for (NodeId n : member_intersection(entries)) {
    if (auto c = global.centrality_of(n)) scores.emplace_back(n, *c);
  }
  return rank_scores(store.shared_universe(), std::move(scores), ScoreOrder::descending);
}

Ranking pr_product_rank(const RankStore& store, const Facet& facet) {
  const auto entries = store_entries(store, facet);
  std::vector<std::pair<NodeId, double>> scores;
  for (NodeId n : member_intersection(entries)) {
    double product = 1.0;
    bool complete = true;
    for (const auto* entry : entries) {
      auto c = entry->centrality_of(n);
      if (!c) {
        complete = false;
        break;
      }
      product *= *c;
    }
    if (complete) scores.emplace_back(n, product);
  }
  return rank_scores(store.shared_universe(), std::move(scores), ScoreOrder::descending);
}

Ranking r_sum_rank(const RankStore& store, const Facet& facet) {
  const auto entries = store_entries(store, facet);
  std::vector<std::pair<NodeId, double>> scores;
  for (NodeId n : member_intersection(entries)) {
    std::uint64_t sum = 0;
    bool complete = true;
    for (const auto* entry : entries) {
      auto r = entry->rank_of(n);
      if (!r) {
        complete = false;
        break;
      }
      sum += *r;
    }
    if (complete) scores.emplace_back(n, static_cast<double>(sum));
  }
  return rank_scores(store.shared_universe(), std::move(scores), ScoreOrder::ascending);
}

Ranking tau_n_intersection_rank(const TaggedGraph& g, const RankStore& store, const Facet& facet,
                                std::size_t w, const PageRankParams& params) {
  if (w == 0) throw ParameterError("w must be positive");
  TaggedGraph acc(g.shared_universe());
  for (std::size_t i = 0; i < facet.size(); ++i) {
    const auto& tag = facet.tags()[i];
    const auto winners = top_nodes(store.at(tag), w, tag);
    // Names, so a store loaded into another universe still resolves.
    std::vector<std::string> names;
    names.reserve(winners.size());
    for (NodeId n : winners) names.push_back(store.universe().users.name(n));
    TaggedGraph h = tag_subgraph(induced_subgraph(g, names), tag);
    acc = i == 0 ? std::move(h) : edge_intersection(acc, h);
  }
  return rank_graph(acc, params);
}

Ranking tau_n_intersection_rank(const TaggedGraph& g, const TagIndex& index,
                                const RankStore& store, const Facet& facet, std::size_t w,
                                const PageRankParams& params) {
  if (w == 0) throw ParameterError("w must be positive");
  if (store.shared_universe() != g.shared_universe()) {
    return tau_n_intersection_rank(g, store, facet, w, params);
  }
  std::vector<EdgeKey> acc;
  for (std::size_t i = 0; i < facet.size(); ++i) {
    const auto& tag = facet.tags()[i];
    const auto winners = top_nodes(store.at(tag), w, tag);
    auto member = [&](NodeId n) { return std::binary_search(winners.begin(), winners.end(), n); };
    std::vector<EdgeKey> h;
    if (auto id = index.find(tag)) {
      for (const auto& e : index.edges(*id)) {
        if (member(e.src) && member(e.dst)) h.push_back(e);
      }
    }
    if (i == 0) {
      acc = std::move(h);
    } else {
      std::vector<EdgeKey> next;
      std::set_intersection(acc.begin(), acc.end(), h.begin(), h.end(), std::back_inserter(next));
      acc = std::move(next);
    }
    if (acc.empty()) break;
  }
  return rank_graph(g.with_edges(acc), params);
}

// --- request dispatch --------------------------------------------------------

FacetRanker::FacetRanker(const TaggedGraph& g, const TagIndex& index, const RankStore& store,
                         PageRankParams params)
    : graph_(g), index_(index), store_(store), params_(params) {}

FacetRankResult FacetRanker::rank(const FacetRankRequest& request) const {
  FacetRankResult result;
  result.ranking.universe = graph_.shared_universe();
  result.provenance = std::string(algorithm_name(request.algorithm));
  if (request.algorithm == Algorithm::tau_n_intersection) {
    result.provenance += " w=" + std::to_string(request.w);
  }
  if (request.algorithm == Algorithm::e_intersection ||
      request.algorithm == Algorithm::e_union_n_intersection ||
      request.algorithm == Algorithm::tau_n_intersection) {
    result.provenance += " damping=" + text::format_double(params_.damping) +
                         " epsilon=" + text::format_double(params_.epsilon);
  }

  auto tags = resolve_facet(index_, request.facet);
  if (!tags) return result;

  const auto& facet = request.facet;
  switch (request.algorithm) {
    case Algorithm::e_intersection: {
      const auto sub = conjunction(graph_, index_, *tags);
      result.candidate_set_size = sub.node_count();
      result.ranking = rank_graph(sub, params_);
      break;
    }
    case Algorithm::e_union_n_intersection:
      result.candidate_set_size = node_intersection(index_, *tags).size();
      result.ranking = e_union_n_intersection_rank(graph_, index_, facet, params_);
      break;
    case Algorithm::single:
      result.candidate_set_size = node_intersection(index_, *tags).size();
      result.ranking = single_rank(store_, facet);
      break;
    case Algorithm::pr_product:
      result.candidate_set_size = node_intersection(index_, *tags).size();
      result.ranking = pr_product_rank(store_, facet);
      break;
    case Algorithm::r_sum:
      result.candidate_set_size = node_intersection(index_, *tags).size();
      result.ranking = r_sum_rank(store_, facet);
      break;
    case Algorithm::tau_n_intersection:
      result.ranking = tau_n_intersection_rank(graph_, index_, store_, facet, request.w, params_);
      result.candidate_set_size = result.ranking.size();
      break;
  }
  if (request.top_n) result.ranking.truncate(*request.top_n);
  return result;
}

}  // namespace facetrank
