#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "facetrank/tagged_graph.hpp"
#include "oracles.hpp"

namespace fixtures {

std::filesystem::path data_path(const std::string& name);

/// The four-user example: contents by A-D, six favorites.
facetrank::TaggedGraph four_users();

/// Random tagged digraph: users v00.., each edge gets 1..max_tags tags from
/// t0..t{vocabulary-1}.
facetrank::TaggedGraph random_graph(std::uint64_t seed, std::size_t nodes, double edge_probability,
                                    std::size_t vocabulary, std::size_t max_tags);

/// "src>dst" for every edge, in graph order.
std::vector<std::string> edge_names(const facetrank::TaggedGraph& g);

/// Edges of g as positions into g.nodes().
oracle::EdgeList positional_edges(const facetrank::TaggedGraph& g);

/// Fresh temporary directory, removed by the destructor.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& p);

}  // namespace fixtures
