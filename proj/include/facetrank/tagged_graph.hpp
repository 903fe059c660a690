#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace facetrank {

using NodeId = std::uint32_t;
using TagId = std::uint32_t;

/// Dense interning of strings to consecutive integer ids. Append-only.
class SymbolTable {
 public:
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> ids_;
};

/// User and tag symbol tables shared by a graph and every graph, index,
/// centrality vector and store derived from it. Ids stay valid forever;
/// interning new names never invalidates existing ones.
struct Universe {
  SymbolTable users;
  SymbolTable tags;
};

struct EdgeKey {
  NodeId src = 0;
  NodeId dst = 0;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Lowercase (ASCII) and trim surrounding whitespace. May return "".
std::string normalize_tag(std::string_view raw);

/// Non-empty list of distinct normalized tags, in query order.
class Facet {
 public:
  /// Normalizes every tag. Throws ParameterError when the list is empty, a
  /// tag normalizes to "", or a tag repeats.
  explicit Facet(std::vector<std::string> tags);

  /// Comma-separated list, e.g. "blues,jazz".
  static Facet parse(std::string_view comma_list);

  const std::vector<std::string>& tags() const noexcept { return tags_; }
  std::size_t size() const noexcept { return tags_.size(); }

 private:
  std::vector<std::string> tags_;
};

/// Raw arrays backing a TaggedGraph. `nodes` sorted and unique, `edges`
/// sorted and unique, every endpoint listed in `nodes`, `tag_offsets` has
/// edges.size()+1 entries and each edge's tag run is sorted by id.
struct GraphParts {
  std::vector<NodeId> nodes;
  std::vector<EdgeKey> edges;
  std::vector<std::uint32_t> tag_offsets{0};
  std::vector<TagId> tags;
};

/// Simple directed graph with a tag set on every edge. Immutable.
class TaggedGraph {
 public:
  TaggedGraph();
  explicit TaggedGraph(std::shared_ptr<const Universe> universe);
  TaggedGraph(std::shared_ptr<const Universe> universe, GraphParts parts);

  const Universe& universe() const noexcept { return *universe_; }
  const std::shared_ptr<const Universe>& shared_universe() const noexcept { return universe_; }

  std::span<const NodeId> nodes() const noexcept { return parts_.nodes; }
  std::span<const EdgeKey> edges() const noexcept { return parts_.edges; }
  std::span<const TagId> edge_tags(std::size_t edge_pos) const;

  std::size_t node_count() const noexcept { return parts_.nodes.size(); }
  std::size_t edge_count() const noexcept { return parts_.edges.size(); }
  /// Sum over edges of |T(e)|.
  std::size_t label_count() const noexcept { return parts_.tags.size(); }
  bool empty() const noexcept { return parts_.nodes.empty(); }

  bool has_node(NodeId node) const;
  std::optional<std::size_t> find_edge(EdgeKey key) const;
  /// T(e); empty when e is not an edge.
  std::span<const TagId> tags_of(EdgeKey key) const;

  const std::string& user_name(NodeId node) const { return universe_->users.name(node); }
  const std::string& tag_name(TagId tag) const { return universe_->tags.name(tag); }

  /// Distinct tags carried by at least one edge, ascending id.
  std::vector<TagId> vocabulary() const;

  /// Subgraph with exactly the given edges (sorted, each an edge of this
  /// graph), full tag sets, and their endpoints as nodes.
  TaggedGraph with_edges(std::span<const EdgeKey> sorted_keys) const;

  /// Structural equality by names; graphs need not share a universe.
  friend bool operator==(const TaggedGraph& a, const TaggedGraph& b);

 private:
  std::shared_ptr<const Universe> universe_;
  GraphParts parts_;
};

/// Incremental construction. Repeated edges merge their tag sets.
class GraphBuilder {
 public:
  GraphBuilder();
  explicit GraphBuilder(std::shared_ptr<Universe> universe);

  NodeId add_node(std::string_view user);
  void add_edge(std::string_view src, std::string_view dst,
                std::span<const std::string> tags);
  void add_edge(std::string_view src, std::string_view dst,
                std::initializer_list<std::string_view> tags);
  void add_edge(NodeId src, NodeId dst, std::span<const TagId> tags);

  Universe& universe() noexcept { return *universe_; }
  TaggedGraph build() const;

 private:
  std::shared_ptr<Universe> universe_;
  std::vector<NodeId> nodes_;
  std::vector<std::pair<EdgeKey, TagId>> labels_;
};

/// Edges carrying `tag`, with their endpoints. Unknown tag gives an empty graph.
TaggedGraph tag_subgraph(const TaggedGraph& g, std::string_view tag);
TaggedGraph tag_subgraph(const TaggedGraph& g, TagId tag);

/// E' = E1 ∩ E2, T'(e) = T1(e) ∩ T2(e). Both graphs must share a universe.
TaggedGraph edge_intersection(const TaggedGraph& a, const TaggedGraph& b);

/// E' = E1 ∪ E2, T'(e) = T1(e) ∪ T2(e). Both graphs must share a universe.
TaggedGraph edge_union(const TaggedGraph& a, const TaggedGraph& b);

/// Left fold of edge_intersection over the facet's tag subgraphs.
TaggedGraph conjunction(const TaggedGraph& g, const Facet& facet);

/// Left fold of edge_union over the facet's tag subgraphs.
TaggedGraph disjunction(const TaggedGraph& g, const Facet& facet);

/// Maximal subgraph on `users` ∩ N(g); isolated members are kept.
TaggedGraph induced_subgraph(const TaggedGraph& g, std::span<const NodeId> users);
TaggedGraph induced_subgraph(const TaggedGraph& g, std::span<const std::string> users);

}  // namespace facetrank
