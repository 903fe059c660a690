#include "facetrank/rank_index.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "facetrank/errors.hpp"
#include "facetrank/graph_io.hpp"
#include "facetrank/text.hpp"
#include "parallel.hpp"

namespace facetrank {

TagRanking::TagRanking(std::vector<NodeId> ranked, std::vector<double> centrality,
                       std::vector<NodeId> members, std::size_t edge_count, bool converged)
    : ranked_(std::move(ranked)),
      centrality_(std::move(centrality)),
      members_(std::move(members)),
      edge_count_(edge_count),
      converged_(converged) {
  if (ranked_.size() != centrality_.size()) {
    throw ParameterError("ranked nodes and centralities differ in length");
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  member_rank_.assign(members_.size(), 0);
  for (std::size_t i = 0; i < ranked_.size(); ++i) {
    auto it = std::lower_bound(members_.begin(), members_.end(), ranked_[i]);
    if (it == members_.end() || *it != ranked_[i]) {
      throw ParameterError("ranked node missing from member set");
    }
    member_rank_[static_cast<std::size_t>(it - members_.begin())] =
        static_cast<std::uint32_t>(i + 1);
  }
}

TagRanking TagRanking::from_ranking(const Ranking& ranking, std::optional<std::size_t> depth,
                                    std::size_t edge_count, bool converged) {
  std::vector<NodeId> members = ranking.nodes();
  const std::size_t keep = depth ? std::min(*depth, ranking.size()) : ranking.size();
  std::vector<NodeId> ranked(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(keep));
  std::vector<double> centrality;
  centrality.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) centrality.push_back(ranking.entries[i].score);
  return TagRanking(std::move(ranked), std::move(centrality), std::move(members), edge_count,
                    converged);
}

bool TagRanking::contains(NodeId node) const {
  return std::binary_search(members_.begin(), members_.end(), node);
}

std::optional<std::uint32_t> TagRanking::rank_of(NodeId node) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), node);
  if (it == members_.end() || *it != node) return std::nullopt;
  const auto r = member_rank_[static_cast<std::size_t>(it - members_.begin())];
  if (r == 0) return std::nullopt;
  return r;
}

std::optional<double> TagRanking::centrality_of(NodeId node) const {
  if (auto r = rank_of(node)) return centrality_[*r - 1];
  return std::nullopt;
}

// ---------------------------------------------------------------------------

RankStore::RankStore(std::shared_ptr<const Universe> universe, StoreMetadata metadata)
    : universe_(std::move(universe)), metadata_(std::move(metadata)) {}

void RankStore::insert(std::string tag, TagRanking entry) {
  tags_.insert_or_assign(std::move(tag), std::move(entry));
}

const TagRanking* RankStore::find(std::string_view tag) const {
  auto it = tags_.find(normalize_tag(tag));
  return it == tags_.end() ? nullptr : &it->second;
}

const TagRanking& RankStore::at(std::string_view tag) const {
  if (const auto* entry = find(tag)) return *entry;
  throw MissingTagError(std::string(tag));
}

// ---------------------------------------------------------------------------

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

StoreBuild build_store(const TaggedGraph& g, const TagIndex& index,
                       const StoreBuildOptions& options) {
  options.params.validate();
  if (options.depth && *options.depth == 0) throw ParameterError("truncation depth must be positive");

  StoreMetadata meta;
  meta.graph_fingerprint = graph_fingerprint(g);
  meta.params = options.params;
  meta.depth = options.depth;
  meta.pruned = options.pruned;

  const auto& vocab = index.vocabulary();
  std::vector<TagRanking> entries(vocab.size());
  std::vector<double> seconds(vocab.size(), 0.0);

  detail::parallel_for(vocab.size(), options.threads, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const TaggedGraph sub = tag_subgraph(g, index, vocab[i]);
    const CentralityVector c = pagerank(sub, options.params);
    entries[i] = TagRanking::from_ranking(rank_of(c), options.depth, sub.edge_count(), c.converged);
    seconds[i] = seconds_since(start);
  });

  StoreBuild out{RankStore(g.shared_universe(), std::move(meta)), {}};
  auto& report = out.report;
  report.edges_indexed = g.edge_count();
  report.label_total = g.label_count();
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto& name = g.tag_name(vocab[i]);
    report.tag_edge_total += entries[i].edge_count();
    if (!entries[i].converged()) ++report.non_converged;
    report.seconds_per_tag.emplace_back(name, seconds[i]);
    out.store.insert(name, std::move(entries[i]));
  }
  report.tags_processed = vocab.size();
  std::sort(report.seconds_per_tag.begin(), report.seconds_per_tag.end());
  if (report.tag_edge_total != report.label_total) {
    throw Error("tag postings total " + std::to_string(report.tag_edge_total) +
                " differs from label total " + std::to_string(report.label_total));
  }

  if (options.include_global && !g.empty()) {
    const auto start = std::chrono::steady_clock::now();
    const CentralityVector c = pagerank(g, options.params);
    out.store.set_global(TagRanking::from_ranking(rank_of(c), options.depth, g.edge_count(),
                                                  c.converged));
    report.global_seconds = seconds_since(start);
  }
  return out;
}

std::vector<TopEntry> top(const RankStore& store, std::string_view tag, std::size_t w) {
  const TagRanking& entry = store.at(tag);
  const std::size_t n = std::min(w, entry.ranked().size());
  std::vector<TopEntry> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({entry.ranked()[i], static_cast<std::uint32_t>(i + 1), entry.centrality()[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr std::string_view kMagic = "#facetrank-store v";

void write_entry(std::ostream& out, const Universe& u, std::string_view header,
                 const TagRanking& entry) {
  out << header << ' ' << entry.members().size() << ' ' << entry.edge_count() << ' '
      << (entry.converged() ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < entry.ranked().size(); ++i) {
    out << (i + 1) << '\t' << u.users.name(entry.ranked()[i]) << '\t'
        << text::format_double(entry.centrality()[i]) << '\n';
  }
  if (entry.truncated()) {
    std::vector<std::string_view> rest;
    for (NodeId n : entry.members()) {
      if (!entry.rank_of(n)) rest.push_back(u.users.name(n));
    }
    std::sort(rest.begin(), rest.end());
    for (auto name : rest) out << "-\t" << name << '\n';
  }
}

std::string params_line(const StoreMetadata& m) {
  std::string line = "#damping=" + text::format_double(m.params.damping) +
                     " epsilon=" + text::format_double(m.params.epsilon) +
                     " w=" + (m.depth ? std::to_string(*m.depth) : std::string("all")) +
                     " max_iterations=" + std::to_string(m.params.max_iterations) +
                     " prune=" + (m.pruned ? "1" : "0");
  return line;
}

}  // namespace

void write_store(std::ostream& out, const RankStore& store) {
  const auto& m = store.metadata();
  out << kMagic << kStoreFormatVersion << '\n';
  out << params_line(m) << '\n';
  out << "#graph-fingerprint=" << m.graph_fingerprint << '\n';
  if (!m.built_at.empty()) out << "#built=" << m.built_at << '\n';
  if (store.global()) write_entry(out, store.universe(), "global", *store.global());
  for (const auto& [tag, entry] : store.tags()) {
    write_entry(out, store.universe(), "tag " + tag, entry);
  }
  out << "#end tags=" << store.tag_count() << '\n';
}

void save_store(const std::filesystem::path& path, const RankStore& store) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_store(out, store);
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

class StoreParser {
 public:
  using Resolver = std::function<NodeId(std::string_view)>;

  explicit StoreParser(std::istream& in) : in_(in) {}

  StoreMetadata parse_header() {
    std::string_view line;
    if (!next(line)) corrupt("empty file");
    if (!line.starts_with(kMagic)) corrupt("missing store magic");
    auto version = text::parse_size(line.substr(kMagic.size()));
    if (!version) corrupt("unreadable format version");
    if (*version != static_cast<std::size_t>(kStoreFormatVersion)) {
      throw StoreVersionError("store format v" + std::to_string(*version) +
                              " is not supported (expected v" +
                              std::to_string(kStoreFormatVersion) + ")");
    }
    StoreMetadata meta;
    if (!next(line) || !line.starts_with("#damping=")) corrupt("missing parameter line");
    for (auto field : text::split(line.substr(1), ' ')) {
      auto eq = field.find('=');
      if (eq == std::string_view::npos) corrupt("bad parameter field");
      auto key = field.substr(0, eq);
      auto value = field.substr(eq + 1);
      if (key == "damping") {
        meta.params.damping = require(text::parse_double(value), "damping");
      } else if (key == "epsilon") {
        meta.params.epsilon = require(text::parse_double(value), "epsilon");
      } else if (key == "w") {
        if (value != "all") meta.depth = require(text::parse_size(value), "w");
      } else if (key == "max_iterations") {
        meta.params.max_iterations = require(text::parse_size(value), "max_iterations");
      } else if (key == "prune") {
        meta.pruned = value == "1";
      } else {
        corrupt("unknown parameter " + std::string(key));
      }
    }
    if (!next(line) || !line.starts_with("#graph-fingerprint=")) corrupt("missing fingerprint");
    meta.graph_fingerprint = std::string(line.substr(std::string_view("#graph-fingerprint=").size()));
    if (peek_prefix("#built=")) {
      next(line);
      meta.built_at = std::string(line.substr(7));
    }
    return meta;
  }

  struct Section {
    std::string tag;  // empty for the global section
    TagRanking entry;
  };

  // Returns false at the trailer.
  bool parse_section(const Resolver& resolve, Section& out, std::size_t& trailer_count) {
    std::string_view line;
    if (!next(line)) corrupt("unexpected end of file (missing trailer)");
    if (line.starts_with("#end tags=")) {
      trailer_count = require(text::parse_size(line.substr(10)), "trailer");
      if (next(line)) corrupt("data after trailer");
      return false;
    }
    auto words = text::split(line, ' ');
    if (words.size() < 4) corrupt("bad section header");
    const auto n = require(text::parse_size(words[words.size() - 3]), "|N|");
    const auto m = require(text::parse_size(words[words.size() - 2]), "|E|");
    if (words.back() != "0" && words.back() != "1") corrupt("bad converged flag");
    const bool converged = words.back() == "1";
    if (words[0] == "global") {
      if (words.size() != 4) corrupt("bad global header");
      out.tag.clear();
    } else if (words[0] == "tag") {
      const auto name_begin = words[1].data();
      const auto name_end = words[words.size() - 3].data() - 1;
      out.tag.assign(name_begin, name_end);
      if (out.tag.empty()) corrupt("empty tag name");
    } else {
      corrupt("unknown section " + std::string(words[0]));
    }

    std::vector<NodeId> ranked;
    std::vector<double> centrality;
    std::vector<NodeId> members;
    members.reserve(n);
    while (members.size() < n) {
      if (!next(line)) corrupt("unexpected end of file inside section");
      auto fields = text::split(line, '\t');
      if (fields.size() == 3) {
        if (ranked.size() != members.size()) corrupt("ranked line after member line");
        const auto rank = require(text::parse_size(fields[0]), "rank");
        if (rank != ranked.size() + 1) corrupt("ranks out of sequence");
        const NodeId node = resolve(fields[1]);
        ranked.push_back(node);
        centrality.push_back(require(text::parse_double(fields[2]), "centrality"));
        members.push_back(node);
      } else if (fields.size() == 2 && fields[0] == "-") {
        members.push_back(resolve(fields[1]));
      } else {
        corrupt("bad entry line");
      }
    }
    out.entry = TagRanking(std::move(ranked), std::move(centrality), std::move(members), m,
                           converged);
    if (out.entry.members().size() != n) corrupt("duplicate users in section");
    return true;
  }

  [[noreturn]] void corrupt(const std::string& why) const {
    throw StoreCorruptError("corrupt store (line " + std::to_string(line_no_) + "): " + why);
  }

 private:
  template <typename T>
  T require(std::optional<T> v, const char* what) const {
    if (!v) corrupt(std::string("unreadable ") + what);
    return *v;
  }

  bool next(std::string_view& line) {
    if (has_peeked_) {
      has_peeked_ = false;
    } else if (!std::getline(in_, buffer_)) {
      return false;
    }
    ++line_no_;
    line = text::chomp(buffer_);
    return true;
  }

  bool peek_prefix(std::string_view prefix) {
    if (!has_peeked_) {
      if (!std::getline(in_, buffer_)) return false;
      has_peeked_ = true;
    }
    return std::string_view(buffer_).starts_with(prefix);
  }

  std::istream& in_;
  std::string buffer_;
  bool has_peeked_ = false;
  std::size_t line_no_ = 0;
};

RankStore parse_store(std::istream& in, std::shared_ptr<const Universe> universe,
                      const StoreParser::Resolver& resolve_user,
                      const std::function<void(const std::string&)>& check_tag) {
  StoreParser parser(in);
  StoreMetadata meta = parser.parse_header();
  RankStore store(std::move(universe), std::move(meta));
  StoreParser::Section section;
  std::size_t trailer = 0;
  std::string previous_tag;
  bool seen_tag = false;
  while (parser.parse_section(resolve_user, section, trailer)) {
    if (section.tag.empty()) {
      if (seen_tag || store.global()) parser.corrupt("misplaced global section");
      store.set_global(std::move(section.entry));
      continue;
    }
    if (seen_tag && section.tag <= previous_tag) parser.corrupt("tags not sorted");
    check_tag(section.tag);
    previous_tag = section.tag;
    seen_tag = true;
    store.insert(section.tag, std::move(section.entry));
  }
  if (trailer != store.tag_count()) parser.corrupt("tag count does not match trailer");
  return store;
}

}  // namespace

RankStore read_store(std::istream& in) {
  // Ids follow first appearance in the file.
  auto universe = std::make_shared<Universe>();
  Universe* u = universe.get();
  return parse_store(
      in, universe, [u](std::string_view name) { return u->users.intern(name); },
      [u](const std::string& tag) { u->tags.intern(tag); });
}

RankStore read_store(std::istream& in, std::shared_ptr<const Universe> universe) {
  const Universe* u = universe.get();
  return parse_store(
      in, universe,
      [u](std::string_view name) {
        auto id = u->users.find(name);
        if (!id) throw FingerprintMismatchError("store user '" + std::string(name) + "' is not in the graph");
        return *id;
      },
      [u](const std::string& tag) {
        if (!u->tags.find(tag)) throw FingerprintMismatchError("store tag '" + tag + "' is not in the graph");
      });
}

namespace {

std::ifstream open_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreMissingError("cannot open store " + path.string());
  return in;
}

}  // namespace

RankStore load_store(const std::filesystem::path& path) {
  auto in = open_store(path);
  return read_store(in);
}

RankStore load_store(const std::filesystem::path& path, std::shared_ptr<const Universe> universe) {
  auto in = open_store(path);
  return read_store(in, std::move(universe));
}

StoreMetadata read_store_metadata(const std::filesystem::path& path) {
  auto in = open_store(path);
  StoreParser parser(in);
  return parser.parse_header();
}

void check_compatible(const RankStore& store, const TaggedGraph& g) {
  const auto actual = graph_fingerprint(g);
  if (store.metadata().graph_fingerprint != actual) {
    throw FingerprintMismatchError("store fingerprint " + store.metadata().graph_fingerprint +
                                   " does not match graph fingerprint " + actual);
  }
}

namespace {

bool same_entry(const Universe& ua, const TagRanking& a, const Universe& ub, const TagRanking& b,
                double rel_tol) {
  if (a.edge_count() != b.edge_count() || a.converged() != b.converged() ||
      a.ranked().size() != b.ranked().size() || a.members().size() != b.members().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.ranked().size(); ++i) {
    if (ua.users.name(a.ranked()[i]) != ub.users.name(b.ranked()[i])) return false;
    const double x = a.centrality()[i];
    const double y = b.centrality()[i];
    if (std::abs(x - y) > rel_tol * std::max(std::abs(x), std::abs(y))) return false;
  }
  auto names = [](const Universe& u, std::span<const NodeId> nodes) {
    std::vector<std::string_view> out;
    for (NodeId n : nodes) out.push_back(u.users.name(n));
    std::sort(out.begin(), out.end());
    return out;
  };
  return names(ua, a.members()) == names(ub, b.members());
}

}  // namespace

bool equivalent(const RankStore& a, const RankStore& b, double rel_tol) {
  const auto& ma = a.metadata();
  const auto& mb = b.metadata();
  if (ma.graph_fingerprint != mb.graph_fingerprint || ma.depth != mb.depth ||
      ma.pruned != mb.pruned || ma.params.max_iterations != mb.params.max_iterations ||
      text::format_double(ma.params.damping) != text::format_double(mb.params.damping) ||
      text::format_double(ma.params.epsilon) != text::format_double(mb.params.epsilon)) {
    return false;
  }
  if (a.global().has_value() != b.global().has_value()) return false;
  if (a.global() && !same_entry(a.universe(), *a.global(), b.universe(), *b.global(), rel_tol)) {
    return false;
  }
  if (a.tag_count() != b.tag_count()) return false;
  auto ia = a.tags().begin();
  auto ib = b.tags().begin();
  for (; ia != a.tags().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!same_entry(a.universe(), ia->second, b.universe(), ib->second, rel_tol)) return false;
  }
  return true;
}

}  // namespace facetrank
