#include "facetrank/tagged_graph.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <iterator>

#include "facetrank/errors.hpp"

namespace facetrank {

std::uint32_t SymbolTable::intern(std::string_view name) {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> SymbolTable::find(std::string_view name) const {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  return std::nullopt;
}

std::string normalize_tag(std::string_view raw) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!raw.empty() && is_space(raw.front())) raw.remove_prefix(1);
  while (!raw.empty() && is_space(raw.back())) raw.remove_suffix(1);
  std::string out(raw);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Facet::Facet(std::vector<std::string> tags) {
  if (tags.empty()) throw ParameterError("facet must contain at least one tag");
  tags_.reserve(tags.size());
  for (auto& raw : tags) {
    auto tag = normalize_tag(raw);
    if (tag.empty()) throw ParameterError("facet contains an empty tag");
    if (std::find(tags_.begin(), tags_.end(), tag) != tags_.end()) {
      throw ParameterError("facet repeats tag '" + tag + "'");
    }
    tags_.push_back(std::move(tag));
  }
}

Facet Facet::parse(std::string_view comma_list) {
  std::vector<std::string> tags;
  std::size_t start = 0;
  while (start <= comma_list.size()) {
    auto end = comma_list.find(',', start);
    if (end == std::string_view::npos) end = comma_list.size();
    tags.emplace_back(comma_list.substr(start, end - start));
    start = end + 1;
  }
  return Facet(std::move(tags));
}

// ---------------------------------------------------------------------------

TaggedGraph::TaggedGraph() : TaggedGraph(std::make_shared<const Universe>()) {}

TaggedGraph::TaggedGraph(std::shared_ptr<const Universe> universe)
    : universe_(std::move(universe)) {}

TaggedGraph::TaggedGraph(std::shared_ptr<const Universe> universe, GraphParts parts)
    : universe_(std::move(universe)), parts_(std::move(parts)) {
  assert(parts_.tag_offsets.size() == parts_.edges.size() + 1);
  assert(std::is_sorted(parts_.nodes.begin(), parts_.nodes.end()));
  assert(std::is_sorted(parts_.edges.begin(), parts_.edges.end()));
}

std::span<const TagId> TaggedGraph::edge_tags(std::size_t edge_pos) const {
  const auto begin = parts_.tag_offsets[edge_pos];
  const auto end = parts_.tag_offsets[edge_pos + 1];
  return std::span<const TagId>(parts_.tags).subspan(begin, end - begin);
}

bool TaggedGraph::has_node(NodeId node) const {
  return std::binary_search(parts_.nodes.begin(), parts_.nodes.end(), node);
}

std::optional<std::size_t> TaggedGraph::find_edge(EdgeKey key) const {
  auto it = std::lower_bound(parts_.edges.begin(), parts_.edges.end(), key);
  if (it == parts_.edges.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - parts_.edges.begin());
}

std::span<const TagId> TaggedGraph::tags_of(EdgeKey key) const {
  if (auto pos = find_edge(key)) return edge_tags(*pos);
  return {};
}

std::vector<TagId> TaggedGraph::vocabulary() const {
  std::vector<TagId> vocab(parts_.tags);
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  return vocab;
}

namespace {

// Appends edges in ascending key order and collects their endpoints.
class SortedAssembler {
 public:
  explicit SortedAssembler(std::size_t edge_hint = 0) {
    parts_.edges.reserve(edge_hint);
    parts_.tag_offsets.reserve(edge_hint + 1);
  }

  void add(EdgeKey key, std::span<const TagId> tags) {
    assert(parts_.edges.empty() || parts_.edges.back() < key);
    parts_.edges.push_back(key);
    parts_.tags.insert(parts_.tags.end(), tags.begin(), tags.end());
    parts_.tag_offsets.push_back(static_cast<std::uint32_t>(parts_.tags.size()));
  }

  template <typename Range>
  void add(EdgeKey key, const Range& tags) {
    add(key, std::span<const TagId>(tags.data(), tags.size()));
  }

  void add_node(NodeId node) { extra_nodes_.push_back(node); }

  TaggedGraph finish(std::shared_ptr<const Universe> universe) && {
    auto& nodes = parts_.nodes;
    nodes.reserve(parts_.edges.size() * 2 + extra_nodes_.size());
    for (const auto& e : parts_.edges) {
      nodes.push_back(e.src);
      nodes.push_back(e.dst);
    }
    nodes.insert(nodes.end(), extra_nodes_.begin(), extra_nodes_.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return TaggedGraph(std::move(universe), std::move(parts_));
  }

 private:
  GraphParts parts_;
  std::vector<NodeId> extra_nodes_;
};

void require_same_universe(const TaggedGraph& a, const TaggedGraph& b) {
  if (a.shared_universe() != b.shared_universe()) {
    throw ParameterError("graph algebra requires graphs sharing one universe");
  }
}

}  // namespace

TaggedGraph TaggedGraph::with_edges(std::span<const EdgeKey> sorted_keys) const {
  SortedAssembler out(sorted_keys.size());
  auto cursor = parts_.edges.begin();
  for (const auto& key : sorted_keys) {
    cursor = std::lower_bound(cursor, parts_.edges.end(), key);
    if (cursor == parts_.edges.end() || *cursor != key) {
      throw ParameterError("with_edges: key is not an edge of the graph");
    }
    out.add(key, edge_tags(static_cast<std::size_t>(cursor - parts_.edges.begin())));
  }
  return std::move(out).finish(universe_);
}

bool operator==(const TaggedGraph& a, const TaggedGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count() ||
      a.label_count() != b.label_count()) {
    return false;
  }
  if (a.universe_ == b.universe_) {
    return a.parts_.nodes == b.parts_.nodes && a.parts_.edges == b.parts_.edges &&
           a.parts_.tag_offsets == b.parts_.tag_offsets && a.parts_.tags == b.parts_.tags;
  }
  // Different universes: compare by names.
  auto node_names = [](const TaggedGraph& g) {
    std::vector<std::string_view> out;
    for (NodeId n : g.nodes()) out.push_back(g.user_name(n));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto edge_names = [](const TaggedGraph& g) {
    std::vector<std::tuple<std::string_view, std::string_view, std::vector<std::string_view>>> out;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      std::vector<std::string_view> tags;
      for (TagId t : g.edge_tags(i)) tags.push_back(g.tag_name(t));
      std::sort(tags.begin(), tags.end());
      out.emplace_back(g.user_name(g.edges()[i].src), g.user_name(g.edges()[i].dst),
                       std::move(tags));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return node_names(a) == node_names(b) && edge_names(a) == edge_names(b);
}

// ---------------------------------------------------------------------------

GraphBuilder::GraphBuilder() : GraphBuilder(std::make_shared<Universe>()) {}

GraphBuilder::GraphBuilder(std::shared_ptr<Universe> universe)
    : universe_(std::move(universe)) {}

NodeId GraphBuilder::add_node(std::string_view user) {
  if (user.empty()) throw ParameterError("user id must be non-empty");
  const NodeId id = universe_->users.intern(user);
  nodes_.push_back(id);
  return id;
}

void GraphBuilder::add_edge(std::string_view src, std::string_view dst,
                            std::span<const std::string> tags) {
  const NodeId s = add_node(src);
  const NodeId d = add_node(dst);
  for (const auto& raw : tags) {
    auto tag = normalize_tag(raw);
    if (tag.empty()) continue;
    labels_.emplace_back(EdgeKey{s, d}, universe_->tags.intern(tag));
  }
}

void GraphBuilder::add_edge(std::string_view src, std::string_view dst,
                            std::initializer_list<std::string_view> tags) {
  std::vector<std::string> owned(tags.begin(), tags.end());
  add_edge(src, dst, owned);
}

void GraphBuilder::add_edge(NodeId src, NodeId dst, std::span<const TagId> tags) {
  nodes_.push_back(src);
  nodes_.push_back(dst);
  for (TagId t : tags) labels_.emplace_back(EdgeKey{src, dst}, t);
}

TaggedGraph GraphBuilder::build() const {
  auto labels = labels_;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  SortedAssembler out(labels.size());
  std::vector<TagId> run;
  for (std::size_t i = 0; i < labels.size();) {
    const EdgeKey key = labels[i].first;
    run.clear();
    for (; i < labels.size() && labels[i].first == key; ++i) run.push_back(labels[i].second);
    out.add(key, run);
  }
  for (NodeId n : nodes_) out.add_node(n);
  return std::move(out).finish(universe_);
}

// ---------------------------------------------------------------------------

TaggedGraph tag_subgraph(const TaggedGraph& g, std::string_view tag) {
  auto id = g.universe().tags.find(normalize_tag(tag));
  if (!id) return TaggedGraph(g.shared_universe());
  return tag_subgraph(g, *id);
}

TaggedGraph tag_subgraph(const TaggedGraph& g, TagId tag) {
  SortedAssembler out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto tags = g.edge_tags(i);
    if (std::binary_search(tags.begin(), tags.end(), tag)) out.add(g.edges()[i], tags);
  }
  return std::move(out).finish(g.shared_universe());
}

TaggedGraph edge_intersection(const TaggedGraph& a, const TaggedGraph& b) {
  require_same_universe(a, b);
  SortedAssembler out;
  std::vector<TagId> common;
  const auto ea = a.edges();
  const auto eb = b.edges();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i] < eb[j]) {
      ++i;
    } else if (eb[j] < ea[i]) {
      ++j;
    } else {
      auto ta = a.edge_tags(i);
      auto tb = b.edge_tags(j);
      common.clear();
      std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(),
                            std::back_inserter(common));
      out.add(ea[i], common);
      ++i;
      ++j;
    }
  }
  return std::move(out).finish(a.shared_universe());
}

TaggedGraph edge_union(const TaggedGraph& a, const TaggedGraph& b) {
  require_same_universe(a, b);
  SortedAssembler out(a.edge_count() + b.edge_count());
  std::vector<TagId> merged;
  const auto ea = a.edges();
  const auto eb = b.edges();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i] < eb[j])) {
      out.add(ea[i], a.edge_tags(i));
      ++i;
    } else if (i == ea.size() || eb[j] < ea[i]) {
      out.add(eb[j], b.edge_tags(j));
      ++j;
    } else {
      auto ta = a.edge_tags(i);
      auto tb = b.edge_tags(j);
      merged.clear();
      std::set_union(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(merged));
      out.add(ea[i], merged);
      ++i;
      ++j;
    }
  }
  // Isolated nodes of the operands do not survive: N' is the endpoint set.
  return std::move(out).finish(a.shared_universe());
}

TaggedGraph conjunction(const TaggedGraph& g, const Facet& facet) {
  TaggedGraph acc = tag_subgraph(g, facet.tags().front());
  for (std::size_t i = 1; i < facet.size(); ++i) {
    acc = edge_intersection(acc, tag_subgraph(g, facet.tags()[i]));
  }
  return acc;
}

TaggedGraph disjunction(const TaggedGraph& g, const Facet& facet) {
  TaggedGraph acc = tag_subgraph(g, facet.tags().front());
  for (std::size_t i = 1; i < facet.size(); ++i) {
    acc = edge_union(acc, tag_subgraph(g, facet.tags()[i]));
  }
  return acc;
}

TaggedGraph induced_subgraph(const TaggedGraph& g, std::span<const NodeId> users) {
  std::vector<NodeId> keep(users.begin(), users.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  auto member = [&](NodeId n) { return std::binary_search(keep.begin(), keep.end(), n); };

  SortedAssembler out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    if (member(e.src) && member(e.dst)) out.add(e, g.edge_tags(i));
  }
  for (NodeId n : keep) {
    if (g.has_node(n)) out.add_node(n);
  }
  return std::move(out).finish(g.shared_universe());
}

TaggedGraph induced_subgraph(const TaggedGraph& g, std::span<const std::string> users) {
  std::vector<NodeId> ids;
  for (const auto& name : users) {
    if (auto id = g.universe().users.find(name)) ids.push_back(*id);
  }
  return induced_subgraph(g, ids);
}

}  // namespace facetrank
