#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "facetrank/centrality.hpp"
#include "facetrank/tag_index.hpp"
#include "facetrank/tagged_graph.hpp"

namespace facetrank {

/// One tag's offline product: the top of its PageRank ranking plus the full
/// node set N(G(t)).
class TagRanking {
 public:
  TagRanking() = default;
  /// `ranked`/`centrality` in rank order; `members` any order, must contain
  /// every ranked node.
  TagRanking(std::vector<NodeId> ranked, std::vector<double> centrality,
             std::vector<NodeId> members, std::size_t edge_count, bool converged);

  /// From a full ranking of the tag subgraph, keeping the first `depth` entries.
  static TagRanking from_ranking(const Ranking& ranking, std::optional<std::size_t> depth,
                                 std::size_t edge_count, bool converged);

  std::span<const NodeId> ranked() const noexcept { return ranked_; }
  std::span<const double> centrality() const noexcept { return centrality_; }
  std::span<const NodeId> members() const noexcept { return members_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool converged() const noexcept { return converged_; }
  bool truncated() const noexcept { return ranked_.size() < members_.size(); }

  bool contains(NodeId node) const;
  /// 1-based rank; nullopt when absent or beyond the truncation depth.
  std::optional<std::uint32_t> rank_of(NodeId node) const;
  std::optional<double> centrality_of(NodeId node) const;

 private:
  std::vector<NodeId> ranked_;
  std::vector<double> centrality_;
  std::vector<NodeId> members_;             // ascending
  std::vector<std::uint32_t> member_rank_;  // aligned with members_, 0 = unranked
  std::size_t edge_count_ = 0;
  bool converged_ = true;
};

struct StoreMetadata {
  std::string graph_fingerprint;
  PageRankParams params;
  /// Truncation depth; nullopt = unlimited.
  std::optional<std::size_t> depth;
  /// Whether the graph was pruned of dangling leaves before indexing.
  bool pruned = false;
  /// Free-form; left empty by build_store so builds stay reproducible.
  std::string built_at;
};

/// Per-tag rankings, keyed by tag name, plus the complete-graph ranking.
class RankStore {
 public:
  RankStore() = default;
  RankStore(std::shared_ptr<const Universe> universe, StoreMetadata metadata);

  const StoreMetadata& metadata() const noexcept { return metadata_; }
  const Universe& universe() const noexcept { return *universe_; }
  const std::shared_ptr<const Universe>& shared_universe() const noexcept { return universe_; }

  void insert(std::string tag, TagRanking entry);
  void set_global(TagRanking entry) { global_ = std::move(entry); }

  const TagRanking* find(std::string_view tag) const;
  /// Throws MissingTagError.
  const TagRanking& at(std::string_view tag) const;
  const std::optional<TagRanking>& global() const noexcept { return global_; }

  const std::map<std::string, TagRanking, std::less<>>& tags() const noexcept { return tags_; }
  std::size_t tag_count() const noexcept { return tags_.size(); }

 private:
  std::shared_ptr<const Universe> universe_;
  StoreMetadata metadata_;
  std::map<std::string, TagRanking, std::less<>> tags_;
  std::optional<TagRanking> global_;
};

struct StoreBuildReport {
  std::size_t tags_processed = 0;
  std::size_t edges_indexed = 0;
  /// Σ_t |E(G(t))|; equals Σ_e |T(e)| of the source graph.
  std::size_t tag_edge_total = 0;
  std::size_t label_total = 0;
  std::size_t non_converged = 0;
  std::vector<std::pair<std::string, double>> seconds_per_tag;  // sorted by tag
  double global_seconds = 0.0;
};

struct StoreBuild {
  RankStore store;
  StoreBuildReport report;
};

struct StoreBuildOptions {
  PageRankParams params;
  std::optional<std::size_t> depth;  // w; nullopt = unlimited
  bool pruned = false;               // recorded in metadata only
  bool include_global = true;
  unsigned threads = 1;
};

/// PageRank of every tag subgraph, truncated to the requested depth.
/// Throws Error if the Σ_t |E(G(t))| = Σ_e |T(e)| identity fails.
StoreBuild build_store(const TaggedGraph& g, const TagIndex& index,
                       const StoreBuildOptions& options = {});

struct TopEntry {
  NodeId node = 0;
  std::uint32_t rank = 0;
  double centrality = 0.0;
};

/// First min(w, stored) entries of a tag's ranking. Throws MissingTagError.
std::vector<TopEntry> top(const RankStore& store, std::string_view tag, std::size_t w);

inline constexpr int kStoreFormatVersion = 1;

void write_store(std::ostream& out, const RankStore& store);
void save_store(const std::filesystem::path& path, const RankStore& store);

/// Reads a store into a fresh universe.
RankStore read_store(std::istream& in);
RankStore load_store(const std::filesystem::path& path);

/// Reads a store whose users and tags must already exist in `universe`
/// (typically the graph it was built from); an unknown name raises
/// FingerprintMismatchError.
RankStore read_store(std::istream& in, std::shared_ptr<const Universe> universe);
RankStore load_store(const std::filesystem::path& path, std::shared_ptr<const Universe> universe);

/// Header only; cheap compatibility checks before a full load.
StoreMetadata read_store_metadata(const std::filesystem::path& path);

/// Throws FingerprintMismatchError unless the store was built from `g`.
void check_compatible(const RankStore& store, const TaggedGraph& g);

/// Same tags, ranks, members and flags by name; centralities equal within a
/// relative tolerance.
bool equivalent(const RankStore& a, const RankStore& b, double rel_tol = 0.0);

}  // namespace facetrank
