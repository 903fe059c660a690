#include "facetrank/graph_io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <tuple>

#include "facetrank/errors.hpp"
#include "facetrank/text.hpp"

namespace facetrank {

ParsedRecords<TaggedContent> read_contents(std::istream& in) {
  ParsedRecords<TaggedContent> out;
  std::string line;
  while (std::getline(in, line)) {
    auto view = text::chomp(line);
    if (view.empty()) continue;
    auto fields = text::split(view, '\t');
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty()) {
      ++out.malformed_lines;
      continue;
    }
    TaggedContent c{std::string(fields[0]), std::string(fields[1]), {}};
    if (fields.size() == 3 && !fields[2].empty()) {
      for (auto tag : text::split(fields[2], ',')) c.tags.emplace_back(tag);
    }
    out.records.push_back(std::move(c));
  }
  return out;
}

ParsedRecords<Recommendation> read_recommendations(std::istream& in) {
  ParsedRecords<Recommendation> out;
  std::string line;
  while (std::getline(in, line)) {
    auto view = text::chomp(line);
    if (view.empty()) continue;
    auto fields = text::split(view, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      ++out.malformed_lines;
      continue;
    }
    out.records.push_back({std::string(fields[0]), std::string(fields[1])});
  }
  return out;
}

void write_graph(std::ostream& out, const TaggedGraph& g) {
  using Row = std::tuple<std::string_view, std::string_view, std::size_t>;
  std::vector<Row> rows;
  rows.reserve(g.edge_count());
  std::vector<bool> touched(g.universe().users.size(), false);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    rows.emplace_back(g.user_name(e.src), g.user_name(e.dst), i);
    touched[e.src] = true;
    touched[e.dst] = true;
  }
  std::sort(rows.begin(), rows.end());

  std::vector<std::string_view> tags;
  for (const auto& [src, dst, pos] : rows) {
    tags.clear();
    for (TagId t : g.edge_tags(pos)) tags.push_back(g.tag_name(t));
    std::sort(tags.begin(), tags.end());
    out << src << '\t' << dst << '\t';
    for (std::size_t k = 0; k < tags.size(); ++k) {
      if (k) out << ',';
      out << tags[k];
    }
    out << '\n';
  }

  std::vector<std::string_view> isolated;
  for (NodeId n : g.nodes()) {
    if (!touched[n]) isolated.push_back(g.user_name(n));
  }
  std::sort(isolated.begin(), isolated.end());
  for (auto name : isolated) out << name << '\n';
}

std::string export_graph(const TaggedGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

TaggedGraph read_graph(std::istream& in) {
  struct Row {
    std::string src;
    std::string dst;
    std::vector<std::string> tags;
  };
  std::vector<Row> rows;
  std::vector<std::string> isolated;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = text::chomp(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = text::split(view, '\t');
    if (fields.size() == 1) {
      isolated.emplace_back(fields[0]);
      continue;
    }
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw ParseError("graph line " + std::to_string(line_no) + ": expected src\\tdst\\ttags");
    }
    Row row{std::string(fields[0]), std::string(fields[1]), {}};
    for (auto tag : text::split(fields[2], ',')) {
      auto norm = normalize_tag(tag);
      if (norm.empty()) {
        throw ParseError("graph line " + std::to_string(line_no) + ": empty tag");
      }
      row.tags.push_back(std::move(norm));
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::string_view> users(isolated.begin(), isolated.end());
  std::vector<std::string_view> tags;
  for (const auto& r : rows) {
    users.push_back(r.src);
    users.push_back(r.dst);
    tags.insert(tags.end(), r.tags.begin(), r.tags.end());
  }
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());

  auto universe = std::make_shared<Universe>();
  for (auto u : users) universe->users.intern(u);
  for (auto t : tags) universe->tags.intern(t);

  GraphBuilder builder(universe);
  for (const auto& name : isolated) builder.add_node(name);
  for (const auto& r : rows) builder.add_edge(r.src, r.dst, r.tags);
  return builder.build();
}

std::string graph_fingerprint(const TaggedGraph& g) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : export_graph(g)) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

ParsedRecords<TaggedContent> load_contents(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_contents(in);
}

ParsedRecords<Recommendation> load_recommendations(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_recommendations(in);
}

TaggedGraph load_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_graph(in);
}

void save_graph(const std::filesystem::path& path, const TaggedGraph& g,
                const std::vector<std::string>& header_comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& c : header_comments) out << "# " << c << '\n';
  write_graph(out, g);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace facetrank
