#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "facetrank/graph_build.hpp"
#include "facetrank/tagged_graph.hpp"

namespace facetrank {

template <typename Record>
struct ParsedRecords {
  std::vector<Record> records;
  std::size_t malformed_lines = 0;
};

/// `user \t content_id \t tag1,tag2,...`; the tag field may be empty or absent.
ParsedRecords<TaggedContent> read_contents(std::istream& in);
/// `recommender \t content_id`.
ParsedRecords<Recommendation> read_recommendations(std::istream& in);

/// One `src \t dst \t tags` line per edge, sorted by (src, dst) name, tags
/// sorted and comma-joined. Nodes without incident edges follow as
/// single-field lines, sorted.
void write_graph(std::ostream& out, const TaggedGraph& g);
std::string export_graph(const TaggedGraph& g);

/// Inverse of write_graph. Lines starting with '#' are comments. Users and
/// tags are interned in lexicographic order. Throws ParseError.
TaggedGraph read_graph(std::istream& in);

/// 16 hex digits of FNV-1a/64 over export_graph(g).
std::string graph_fingerprint(const TaggedGraph& g);

/// File wrappers; throw IoError when the file cannot be opened.
ParsedRecords<TaggedContent> load_contents(const std::filesystem::path& path);
ParsedRecords<Recommendation> load_recommendations(const std::filesystem::path& path);
TaggedGraph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const TaggedGraph& g,
                const std::vector<std::string>& header_comments = {});

}  // namespace facetrank
