#include "facetrank/eval_harness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "facetrank/errors.hpp"
#include "facetrank/graph_io.hpp"
#include "facetrank/similarity.hpp"
#include "facetrank/text.hpp"
#include "parallel.hpp"

namespace facetrank {

void ExperimentConfig::validate() const {
  if (top_tag_count < 2) throw ParameterError("top_tag_count must be at least 2");
  if (windows.empty()) throw ParameterError("at least one window is required");
  for (auto n : windows) {
    if (n == 0) throw ParameterError("windows must be positive");
  }
  if (w == 0) throw ParameterError("w must be positive");
  if (references.empty() || candidates.empty()) {
    throw ParameterError("references and candidates must be non-empty");
  }
  if (grid_max_window == 0) throw ParameterError("grid_max_window must be positive");
  params.validate();
}

std::vector<std::string> top_tags(const TaggedGraph& g, std::size_t k,
                                  const std::vector<std::string>& stop_tags) {
  std::vector<std::size_t> usage(g.universe().tags.size(), 0);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    for (TagId t : g.edge_tags(i)) ++usage[t];
  }
  std::vector<std::string> stop;
  for (const auto& s : stop_tags) stop.push_back(normalize_tag(s));
  std::sort(stop.begin(), stop.end());

  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (TagId t = 0; t < usage.size(); ++t) {
    if (usage[t] == 0) continue;
    const auto& name = g.tag_name(t);
    if (std::binary_search(stop.begin(), stop.end(), name)) continue;
    ranked.emplace_back(usage[t], name);
  }
  if (ranked.size() < k) {
    throw InsufficientVocabularyError("need " + std::to_string(k) + " tags, graph has " +
                                      std::to_string(ranked.size()) + " after exclusions");
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::move(ranked[i].second));
  return out;
}

const SimilarityRow* SimilarityTable::find(Algorithm reference, Algorithm candidate) const {
  for (const auto& row : rows) {
    if (row.reference == reference && row.candidate == candidate) return &row;
  }
  return nullptr;
}

PreparedExperiment prepare_experiment(const TaggedGraph& g, const ExperimentConfig& config) {
  config.validate();
  TaggedGraph graph = config.prune_dangling ? prune_dangling(g) : g;
  TagIndex index(graph);
  StoreBuildOptions options;
  options.params = config.params;
  options.pruned = config.prune_dangling;
  options.threads = config.threads;
  auto built = build_store(graph, index, options);
  return {std::move(graph), std::move(index), std::move(built.store)};
}

namespace {

struct Score {
  double osim = 0.0;
  double ksim = 0.0;
};

// Results of one reference against one candidate for a single pair.
struct Comparison {
  std::vector<std::optional<Score>> table;  // per table window
  std::vector<std::optional<Score>> grid;   // per grid window
};

struct PairOutcome {
  // Per reference: reference size, nullopt when skipped or failed.
  std::vector<std::optional<std::size_t>> reference_size;
  // [reference][candidate]
  std::vector<std::vector<std::optional<Comparison>>> comparisons;
  std::vector<PairFailure> failures;
};

std::vector<std::size_t> powers_of_two_up_to(std::size_t max_window) {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= max_window; n *= 2) out.push_back(n);
  return out;
}

int log2_floor(std::size_t v) {
  int b = -1;
  while (v > 0) {
    v >>= 1;
    ++b;
  }
  return b;
}

Score compare(const std::vector<NodeId>& candidate, const std::vector<NodeId>& reference,
              std::size_t n) {
  auto top = [n](const std::vector<NodeId>& v) {
    return std::vector<NodeId>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size())));
  };
  const auto a = top(candidate);
  const auto b = top(reference);
  Score s;
  s.osim = osim(a, b, n);
  s.ksim = a.empty() ? 0.0 : ksim(a, b);
  return s;
}

class PairEvaluator {
 public:
  PairEvaluator(const TaggedGraph& g, const TagIndex& index, const RankStore& store,
                const ExperimentConfig& config)
      : g_(g), index_(index), store_(store), config_(config),
        grid_windows_(powers_of_two_up_to(config.grid_max_window)) {}

  PairOutcome evaluate(const std::string& first, const std::string& second) const {
    const Facet facet({first, second});
    std::map<Algorithm, std::optional<std::vector<NodeId>>> cache;
    PairOutcome out;

    auto ranking = [&](Algorithm a) -> const std::optional<std::vector<NodeId>>& {
      auto it = cache.find(a);
      if (it != cache.end()) return it->second;
      std::optional<std::vector<NodeId>> nodes;
      try {
        nodes = run(a, facet).nodes();
      } catch (const Error& e) {
        out.failures.push_back({first, second, std::string(algorithm_name(a)), e.what()});
      }
      return cache.emplace(a, std::move(nodes)).first->second;
    };

    for (Algorithm ref : config_.references) {
      const auto& reference = ranking(ref);
      std::vector<std::optional<Comparison>> row(config_.candidates.size());
      if (!reference || reference->empty()) {
        out.reference_size.emplace_back();
        out.comparisons.push_back(std::move(row));
        continue;
      }
      out.reference_size.push_back(reference->size());
      for (std::size_t c = 0; c < config_.candidates.size(); ++c) {
        const auto& candidate = ranking(config_.candidates[c]);
        if (!candidate) continue;
        Comparison cmp;
        for (auto n : config_.windows) {
          cmp.table.push_back(reference->size() >= n
                                  ? std::optional<Score>(compare(*candidate, *reference, n))
                                  : std::nullopt);
        }
        for (auto n : grid_windows_) {
          cmp.grid.push_back(reference->size() >= n
                                 ? std::optional<Score>(compare(*candidate, *reference, n))
                                 : std::nullopt);
        }
        row[c] = std::move(cmp);
      }
      out.comparisons.push_back(std::move(row));
    }
    return out;
  }

  const std::vector<std::size_t>& grid_windows() const { return grid_windows_; }

 private:
  Ranking run(Algorithm a, const Facet& facet) const {
    const auto& p = config_.params;
    switch (a) {
      case Algorithm::e_intersection: return e_intersection_rank(g_, index_, facet, p);
      case Algorithm::e_union_n_intersection:
        return e_union_n_intersection_rank(g_, index_, facet, p);
      case Algorithm::single: return single_rank(store_, facet);
      case Algorithm::pr_product: return pr_product_rank(store_, facet);
      case Algorithm::r_sum: return r_sum_rank(store_, facet);
      case Algorithm::tau_n_intersection:
        return tau_n_intersection_rank(g_, index_, store_, facet, config_.w, p);
    }
    throw ParameterError("unknown algorithm");
  }

  const TaggedGraph& g_;
  const TagIndex& index_;
  const RankStore& store_;
  const ExperimentConfig& config_;
  std::vector<std::size_t> grid_windows_;
};

struct Sum {
  double osim = 0.0;
  double ksim = 0.0;
  std::size_t count = 0;

  void add(const Score& s) {
    osim += s.osim;
    ksim += s.ksim;
    ++count;
  }
};

std::string fixed(double v, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, end);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

std::string join(const std::vector<Algorithm>& algorithms) {
  std::vector<std::string> names;
  for (auto a : algorithms) names.emplace_back(algorithm_name(a));
  return join(names);
}

std::string join(const std::vector<std::size_t>& values) {
  std::vector<std::string> names;
  for (auto v : values) names.push_back(std::to_string(v));
  return join(names);
}

std::string_view metric_name(SimilarityMetric m) {
  return m == SimilarityMetric::osim ? "osim" : "ksim";
}

}  // namespace

ExperimentResult run_experiment(const TaggedGraph& g, const RankStore& store,
                                const ExperimentConfig& config) {
  const TagIndex index(g);
  return run_experiment(g, index, store, config);
}

ExperimentResult run_experiment(const TaggedGraph& g, const TagIndex& index,
                                const RankStore& store, const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.graph_fingerprint = graph_fingerprint(g);
  result.tags = top_tags(g, config.top_tag_count, config.stop_tags);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < result.tags.size(); ++i) {
    for (std::size_t j = i + 1; j < result.tags.size(); ++j) pairs.emplace_back(i, j);
  }

  const PairEvaluator evaluator(g, index, store, config);
  std::vector<PairOutcome> outcomes(pairs.size());
  detail::parallel_for(pairs.size(), config.threads, [&](std::size_t p) {
    outcomes[p] = evaluator.evaluate(result.tags[pairs[p].first], result.tags[pairs[p].second]);
  });

  const auto nr = config.references.size();
  const auto nc = config.candidates.size();
  const auto& gw = evaluator.grid_windows();
  std::vector<std::vector<std::vector<Sum>>> table_sums(
      nr, std::vector<std::vector<Sum>>(nc, std::vector<Sum>(config.windows.size())));
  std::vector<std::vector<std::map<std::pair<int, int>, Sum>>> grid_sums(
      nr, std::vector<std::map<std::pair<int, int>, Sum>>(nc));

  // Pair order is fixed, so the sums do not depend on scheduling.
  for (const auto& outcome : outcomes) {
    for (std::size_t r = 0; r < nr; ++r) {
      if (!outcome.reference_size[r]) {
        ++result.skipped[std::string(algorithm_name(config.references[r]))];
        continue;
      }
      const int size_bin = log2_floor(*outcome.reference_size[r]);
      for (std::size_t c = 0; c < nc; ++c) {
        const auto& cmp = outcome.comparisons[r][c];
        if (!cmp) continue;
        for (std::size_t k = 0; k < cmp->table.size(); ++k) {
          if (cmp->table[k]) table_sums[r][c][k].add(*cmp->table[k]);
        }
        for (std::size_t k = 0; k < cmp->grid.size(); ++k) {
          if (cmp->grid[k]) grid_sums[r][c][{size_bin, log2_floor(gw[k])}].add(*cmp->grid[k]);
        }
      }
    }
    result.failures.insert(result.failures.end(), outcome.failures.begin(),
                           outcome.failures.end());
  }

  result.table.windows = config.windows;
  result.table.pair_count = pairs.size();
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      SimilarityRow row{config.references[r], config.candidates[c], {}};
      for (const auto& s : table_sums[r][c]) {
        if (s.count == 0) {
          row.cells.emplace_back();
          continue;
        }
        const auto n = static_cast<double>(s.count);
        row.cells.push_back(SimilarityCell{s.osim / n, s.ksim / n, s.count});
      }
      result.table.rows.push_back(std::move(row));

      for (auto metric : {SimilarityMetric::osim, SimilarityMetric::ksim}) {
        SimilarityGrid grid{config.references[r], config.candidates[c], metric, {}};
        for (const auto& [key, s] : grid_sums[r][c]) {
          const double total = metric == SimilarityMetric::osim ? s.osim : s.ksim;
          grid.cells[key] = {total / static_cast<double>(s.count), s.count};
        }
        result.grids.push_back(std::move(grid));
      }
    }
  }
  return result;
}

void write_table(std::ostream& out, const SimilarityTable& table, int digits) {
  out << "reference\talgorithm";
  for (auto n : table.windows) out << "\ttop" << n;
  out << '\n';
  auto number = [digits](double v) {
    return digits < 0 ? text::format_double(v, 17) : fixed(v, digits);
  };
  for (const auto& row : table.rows) {
    out << algorithm_name(row.reference) << '\t' << algorithm_name(row.candidate);
    for (const auto& cell : row.cells) {
      out << '\t';
      if (cell) {
        out << number(cell->osim) << '|' << number(cell->ksim);
      } else {
        out << '-';
      }
    }
    out << '\n';
  }
}

SimilarityTable read_table(std::istream& in) {
  SimilarityTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("similarity table: missing header");
  const auto header = text::split(text::chomp(line), '\t');
  if (header.size() < 2 || header[0] != "reference" || header[1] != "algorithm") {
    throw ParseError("similarity table: bad header");
  }
  for (std::size_t i = 2; i < header.size(); ++i) {
    auto col = header[i];
    std::optional<std::size_t> n;
    if (col.starts_with("top")) n = text::parse_size(col.substr(3));
    if (!n) throw ParseError("similarity table: bad window column '" + std::string(col) + "'");
    table.windows.push_back(*n);
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = text::chomp(line);
    if (view.empty()) continue;
    const auto fields = text::split(view, '\t');
    auto fail = [&](const std::string& what) {
      throw ParseError("similarity table line " + std::to_string(line_no) + ": " + what);
    };
    if (fields.size() != header.size()) fail("wrong field count");
    const auto ref = parse_algorithm(fields[0]);
    const auto cand = parse_algorithm(fields[1]);
    if (!ref || !cand) fail("unknown algorithm");
    SimilarityRow row{*ref, *cand, {}};
    for (std::size_t i = 2; i < fields.size(); ++i) {
      if (fields[i] == "-") {
        row.cells.emplace_back();
        continue;
      }
      const auto parts = text::split(fields[i], '|');
      if (parts.size() != 2) fail("bad cell");
      const auto o = text::parse_double(parts[0]);
      const auto k = text::parse_double(parts[1]);
      if (!o || !k) fail("bad number");
      row.cells.push_back(SimilarityCell{*o, *k, 0});
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_grids(std::ostream& out, const std::vector<SimilarityGrid>& grids) {
  out << "reference\talgorithm\tmetric\tsize_lo\tsize_hi\twindow\tmean\tcount\n";
  for (const auto& grid : grids) {
    for (const auto& [key, cell] : grid.cells) {
      const auto lo = std::size_t{1} << key.first;
      out << algorithm_name(grid.reference) << '\t' << algorithm_name(grid.candidate) << '\t'
          << metric_name(grid.metric) << '\t' << lo << '\t' << (2 * lo - 1) << '\t'
          << (std::size_t{1} << key.second) << '\t' << text::format_double(cell.mean, 17) << '\t'
          << cell.count << '\n';
    }
  }
}

void write_manifest(std::ostream& out, const ExperimentResult& result,
                    const ExperimentConfig& config) {
  out << "graph_fingerprint=" << result.graph_fingerprint << '\n'
      << "top_tag_count=" << config.top_tag_count << '\n'
      << "stop_tags=" << join(config.stop_tags) << '\n'
      << "windows=" << join(config.windows) << '\n'
      << "w=" << config.w << '\n'
      << "damping=" << text::format_double(config.params.damping) << '\n'
      << "epsilon=" << text::format_double(config.params.epsilon) << '\n'
      << "max_iterations=" << config.params.max_iterations << '\n'
      << "prune_dangling=" << (config.prune_dangling ? 1 : 0) << '\n'
      << "references=" << join(config.references) << '\n'
      << "candidates=" << join(config.candidates) << '\n'
      << "grid_max_window=" << config.grid_max_window << '\n'
      << "tags=" << join(result.tags) << '\n'
      << "pairs=" << result.table.pair_count << '\n';
  for (auto ref : config.references) {
    const std::string name(algorithm_name(ref));
    auto it = result.skipped.find(name);
    out << "skipped." << name << '=' << (it == result.skipped.end() ? 0 : it->second) << '\n';
  }
  out << "failures=" << result.failures.size() << '\n';
  for (const auto& f : result.failures) {
    out << "failure=" << f.first << ',' << f.second << '\t' << f.algorithm << '\t' << f.message
        << '\n';
  }
}

void emit_results(const std::filesystem::path& stem, const ExperimentResult& result,
                  const ExperimentConfig& config) {
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot write " + p.string());
    return f;
  };
  auto with_suffix = [&](std::string_view suffix) {
    auto p = stem;
    p += std::string(suffix);
    return p;
  };
  const std::pair<std::string_view, int> tables[] = {{".tsv", 2}, {".full.tsv", -1}};
  for (const auto& [suffix, digits] : tables) {
    auto f = open(with_suffix(suffix));
    write_table(f, result.table, digits);
    if (!f) throw IoError("write failed: " + with_suffix(suffix).string());
  }
  {
    auto f = open(with_suffix(".grids.tsv"));
    write_grids(f, result.grids);
    if (!f) throw IoError("write failed: " + with_suffix(".grids.tsv").string());
  }
  {
    auto f = open(with_suffix(".manifest"));
    write_manifest(f, result, config);
    if (!f) throw IoError("write failed: " + with_suffix(".manifest").string());
  }
}

}  // namespace facetrank
