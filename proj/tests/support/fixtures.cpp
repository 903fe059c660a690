#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "facetrank/graph_build.hpp"
#include "facetrank/graph_io.hpp"

namespace fixtures {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(FACETRANK_TEST_DATA) / name;
}

facetrank::TaggedGraph four_users() {
  const auto contents = facetrank::load_contents(data_path("four_users_contents.tsv"));
  const auto recs = facetrank::load_recommendations(data_path("four_users_recs.tsv"));
  return facetrank::build_graph(contents.records, recs.records).graph;
}

facetrank::TaggedGraph random_graph(std::uint64_t seed, std::size_t nodes, double edge_probability,
                                    std::size_t vocabulary, std::size_t max_tags) {
  std::mt19937_64 rng(seed);
  facetrank::GraphBuilder builder;
  auto name = [](char prefix, std::size_t i) {
    std::string s = std::to_string(i);
    if (s.size() < 2) s.insert(0, 2 - s.size(), '0');
    return prefix + s;
  };
  for (std::size_t i = 0; i < nodes; ++i) builder.add_node(name('v', i));
  std::uniform_int_distribution<std::size_t> tag_count(1, max_tags);
  std::uniform_int_distribution<std::size_t> tag_pick(0, vocabulary - 1);
  for (const auto& [s, t] : oracle::random_edges(rng, nodes, edge_probability)) {
    std::vector<std::string> tags;
    const auto k = tag_count(rng);
    for (std::size_t i = 0; i < k; ++i) tags.push_back("t" + std::to_string(tag_pick(rng)));
    builder.add_edge(name('v', s), name('v', t), tags);
  }
  return builder.build();
}

std::vector<std::string> edge_names(const facetrank::TaggedGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) out.push_back(g.user_name(e.src) + ">" + g.user_name(e.dst));
  return out;
}

oracle::EdgeList positional_edges(const facetrank::TaggedGraph& g) {
  const auto nodes = g.nodes();
  auto pos = [&](facetrank::NodeId id) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  oracle::EdgeList out;
  for (const auto& e : g.edges()) out.emplace_back(pos(e.src), pos(e.dst));
  return out;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("facetrank-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fixtures
