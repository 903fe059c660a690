#include "facetrank/graph_build.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>

namespace facetrank {

namespace {

struct ContentInfo {
  std::string_view uploader;
  std::vector<std::string> tags;  // normalized, sorted, unique
};

}  // namespace

GraphBuild build_graph(std::span<const TaggedContent> contents,
                       std::span<const Recommendation> recs, const BuildOptions& options) {
  GraphBuildReport report;
  report.contents_read = contents.size();
  report.recommendations_read = recs.size();

  std::vector<std::string> stop;
  for (const auto& s : options.stop_tags) stop.push_back(normalize_tag(s));
  std::sort(stop.begin(), stop.end());

  std::unordered_map<std::string_view, ContentInfo> by_id;
  std::vector<std::string_view> users;
  std::vector<std::string> tag_names;

  for (const auto& c : contents) {
    if (c.uploader.empty() || c.content.empty()) {
      ++report.malformed_contents;
      continue;
    }
    if (by_id.contains(c.content)) {
      ++report.duplicate_contents;
      continue;
    }
    ContentInfo info{c.uploader, {}};
    for (const auto& raw : c.tags) {
      auto tag = normalize_tag(raw);
      if (tag.empty()) continue;
      if (std::binary_search(stop.begin(), stop.end(), tag)) {
        ++report.stop_tags_removed;
        continue;
      }
      info.tags.push_back(std::move(tag));
    }
    std::sort(info.tags.begin(), info.tags.end());
    info.tags.erase(std::unique(info.tags.begin(), info.tags.end()), info.tags.end());
    tag_names.insert(tag_names.end(), info.tags.begin(), info.tags.end());
    users.push_back(c.uploader);
    by_id.emplace(c.content, std::move(info));
    ++report.contents_used;
  }

  for (const auto& r : recs) {
    if (r.recommender.empty() || r.content.empty()) continue;
    users.push_back(r.recommender);
  }

  // Intern in lexicographic order for record-order independence.
  auto universe = std::make_shared<Universe>();
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  for (auto u : users) universe->users.intern(u);
  std::sort(tag_names.begin(), tag_names.end());
  tag_names.erase(std::unique(tag_names.begin(), tag_names.end()), tag_names.end());
  for (const auto& t : tag_names) universe->tags.intern(t);

  GraphBuilder builder(universe);
  for (auto u : users) builder.add_node(u);

  std::vector<TagId> tag_ids;
  for (const auto& r : recs) {
    if (r.recommender.empty() || r.content.empty()) {
      ++report.malformed_recommendations;
      continue;
    }
    auto it = by_id.find(r.content);
    if (it == by_id.end()) {
      ++report.unknown_content;
      continue;
    }
    if (it->second.tags.empty()) {
      ++report.untagged_content;
      continue;
    }
    tag_ids.clear();
    for (const auto& t : it->second.tags) tag_ids.push_back(*universe->tags.find(t));
    builder.add_edge(*universe->users.find(r.recommender), *universe->users.find(it->second.uploader),
                     tag_ids);
    ++report.recommendations_used;
  }

  return GraphBuild{builder.build(), report};
}

}  // namespace facetrank
