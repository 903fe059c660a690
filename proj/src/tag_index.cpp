#include "facetrank/tag_index.hpp"

#include <algorithm>
#include <iterator>

namespace facetrank {

TagIndex::TagIndex(const TaggedGraph& g) : universe_(g.shared_universe()) {
  postings_.resize(g.universe().tags.size());
  // Edges are visited in ascending key order, so every edge list comes out sorted.
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    for (TagId t : g.edge_tags(i)) postings_[t].edges.push_back(g.edges()[i]);
  }
  for (TagId t = 0; t < postings_.size(); ++t) {
    auto& p = postings_[t];
    if (p.edges.empty()) continue;
    vocabulary_.push_back(t);
    total_postings_ += p.edges.size();
    p.nodes.reserve(p.edges.size() * 2);
    for (const auto& e : p.edges) {
      p.nodes.push_back(e.src);
      p.nodes.push_back(e.dst);
    }
    std::sort(p.nodes.begin(), p.nodes.end());
    p.nodes.erase(std::unique(p.nodes.begin(), p.nodes.end()), p.nodes.end());
    p.nodes.shrink_to_fit();
  }
}

std::optional<TagId> TagIndex::find(std::string_view tag) const {
  if (!universe_) return std::nullopt;
  auto id = universe_->tags.find(normalize_tag(tag));
  if (!id || *id >= postings_.size() || postings_[*id].edges.empty()) return std::nullopt;
  return id;
}

std::span<const EdgeKey> TagIndex::edges(TagId tag) const {
  if (tag >= postings_.size()) return {};
  return postings_[tag].edges;
}

std::span<const NodeId> TagIndex::nodes(TagId tag) const {
  if (tag >= postings_.size()) return {};
  return postings_[tag].nodes;
}

TagIndex build_index(const TaggedGraph& g) { return TagIndex(g); }

std::optional<std::vector<TagId>> resolve_facet(const TagIndex& index, const Facet& facet) {
  std::vector<TagId> ids;
  ids.reserve(facet.size());
  for (const auto& tag : facet.tags()) {
    auto id = index.find(tag);
    if (!id) return std::nullopt;
    ids.push_back(*id);
  }
  return ids;
}

TaggedGraph tag_subgraph(const TaggedGraph& g, const TagIndex& index, TagId tag) {
  return g.with_edges(index.edges(tag));
}

namespace {

// Smallest list first keeps the running intersection short.
std::vector<TagId> by_postings_size(const TagIndex& index, std::span<const TagId> tags) {
  std::vector<TagId> order(tags.begin(), tags.end());
  std::stable_sort(order.begin(), order.end(), [&](TagId a, TagId b) {
    return index.edges(a).size() < index.edges(b).size();
  });
  return order;
}

}  // namespace

TaggedGraph conjunction(const TaggedGraph& g, const TagIndex& index, std::span<const TagId> tags) {
  if (tags.empty()) return TaggedGraph(g.shared_universe());
  auto order = by_postings_size(index, tags);
  auto first = index.edges(order.front());
  std::vector<EdgeKey> acc(first.begin(), first.end());
  std::vector<EdgeKey> next;
  for (std::size_t i = 1; i < order.size() && !acc.empty(); ++i) {
    auto other = index.edges(order[i]);
    next.clear();
    std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                          std::back_inserter(next));
    acc.swap(next);
  }
  return g.with_edges(acc);
}

TaggedGraph disjunction(const TaggedGraph& g, const TagIndex& index, std::span<const TagId> tags) {
  std::vector<EdgeKey> acc;
  std::vector<EdgeKey> next;
  for (TagId t : tags) {
    auto other = index.edges(t);
    next.clear();
    std::set_union(acc.begin(), acc.end(), other.begin(), other.end(), std::back_inserter(next));
    acc.swap(next);
  }
  return g.with_edges(acc);
}

std::vector<NodeId> node_intersection(const TagIndex& index, std::span<const TagId> tags) {
  if (tags.empty()) return {};
  std::vector<TagId> order(tags.begin(), tags.end());
  std::stable_sort(order.begin(), order.end(), [&](TagId a, TagId b) {
    return index.nodes(a).size() < index.nodes(b).size();
  });
  auto first = index.nodes(order.front());
  std::vector<NodeId> acc(first.begin(), first.end());
  std::vector<NodeId> next;
  for (std::size_t i = 1; i < order.size() && !acc.empty(); ++i) {
    auto other = index.nodes(order[i]);
    next.clear();
    std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                          std::back_inserter(next));
    acc.swap(next);
  }
  return acc;
}

}  // namespace facetrank
