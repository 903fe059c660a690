#include "facetrank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "facetrank/errors.hpp"
#include "facetrank/text.hpp"

namespace facetrank {

namespace {

long bin_index(double x, std::size_t per_decade) {
  // The small offset keeps exact bin edges such as 10 or 100 in the upper bin.
  return static_cast<long>(std::floor(std::log10(x) * static_cast<double>(per_decade) + 1e-9));
}

double bin_edge(long index, std::size_t per_decade) {
  return std::pow(10.0, static_cast<double>(index) / static_cast<double>(per_decade));
}

// Smallest positive integer whose bin index is at least `index`.
double first_integer_from(long index, std::size_t per_decade) {
  double k = std::max(1.0, std::floor(bin_edge(index, per_decade)) - 1.0);
  while (bin_index(k, per_decade) < index) k += 1.0;
  return k;
}

struct Accumulator {
  std::size_t count = 0;
  double sample_sum = 0.0;
  double value_sum = 0.0;
};

std::size_t local_index(std::span<const NodeId> nodes, NodeId id) {
  return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
}

void check_bins(std::size_t per_decade) {
  if (per_decade == 0) throw ParameterError("bins_per_decade must be positive");
}

}  // namespace

BinnedDistribution log_binned(std::span<const double> samples, bool integer_valued,
                              std::size_t bins_per_decade) {
  check_bins(bins_per_decade);
  BinnedDistribution d;
  d.bins_per_decade = bins_per_decade;
  d.total = samples.size();

  std::map<long, Accumulator> acc;
  for (double x : samples) {
    if (!(x >= 0.0)) throw ParameterError("log binning needs non-negative samples");
    if (x == 0.0) {
      ++d.zero_count;
      continue;
    }
    auto& a = acc[bin_index(x, bins_per_decade)];
    ++a.count;
    a.sample_sum += x;
  }

  for (const auto& [index, a] : acc) {
    Bin b;
    b.lower = bin_edge(index, bins_per_decade);
    b.upper = bin_edge(index + 1, bins_per_decade);
    b.center = a.sample_sum / static_cast<double>(a.count);
    b.count = a.count;
    const double width = integer_valued ? first_integer_from(index + 1, bins_per_decade) -
                                              first_integer_from(index, bins_per_decade)
                                        : b.upper - b.lower;
    b.value = static_cast<double>(a.count) / (static_cast<double>(d.total) * width);
    d.bins.push_back(b);
  }
  return d;
}

std::vector<std::size_t> degrees(const TaggedGraph& g, DegreeDirection direction) {
  const auto nodes = g.nodes();
  std::vector<std::size_t> out(nodes.size(), 0);
  for (const auto& e : g.edges()) {
    ++out[local_index(nodes, direction == DegreeDirection::in ? e.dst : e.src)];
  }
  return out;
}

std::map<std::size_t, std::size_t> degree_histogram(const TaggedGraph& g,
                                                    DegreeDirection direction) {
  std::map<std::size_t, std::size_t> h;
  for (auto k : degrees(g, direction)) ++h[k];
  return h;
}

BinnedDistribution degree_distribution(const TaggedGraph& g, DegreeDirection direction,
                                       std::size_t bins_per_decade) {
  if (g.empty()) throw EmptyGraphError();
  const auto k = degrees(g, direction);
  std::vector<double> samples(k.begin(), k.end());
  return log_binned(samples, true, bins_per_decade);
}

BinnedDistribution neighbor_indegree_correlation(const TaggedGraph& g,
                                                 std::size_t bins_per_decade) {
  check_bins(bins_per_decade);
  if (g.empty()) throw EmptyGraphError();
  const auto nodes = g.nodes();
  const auto indegree = degrees(g, DegreeDirection::in);

  std::vector<double> neighbor_sum(nodes.size(), 0.0);
  for (const auto& e : g.edges()) {
    neighbor_sum[local_index(nodes, e.dst)] +=
        static_cast<double>(indegree[local_index(nodes, e.src)]);
  }

  BinnedDistribution d;
  d.bins_per_decade = bins_per_decade;
  d.total = nodes.size();
  std::map<long, Accumulator> acc;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (indegree[i] == 0) {
      ++d.zero_count;
      continue;
    }
    const auto k = static_cast<double>(indegree[i]);
    auto& a = acc[bin_index(k, bins_per_decade)];
    ++a.count;
    a.sample_sum += k;
    a.value_sum += neighbor_sum[i] / k;
  }
  for (const auto& [index, a] : acc) {
    const auto n = static_cast<double>(a.count);
    d.bins.push_back({bin_edge(index, bins_per_decade), bin_edge(index + 1, bins_per_decade),
                      a.sample_sum / n, a.value_sum / n, a.count});
  }
  return d;
}

TagsPerEdge tags_per_edge_histogram(const TaggedGraph& g) {
  TagsPerEdge t;
  t.edge_count = g.edge_count();
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto k = g.edge_tags(i).size();
    ++t.histogram[k];
    t.label_total += k;
  }
  if (t.edge_count > 0) {
    t.mean = static_cast<double>(t.label_total) / static_cast<double>(t.edge_count);
  }
  return t;
}

BinnedDistribution pagerank_distribution(const TaggedGraph& g, const PageRankParams& params,
                                         std::size_t bins_per_decade) {
  const auto c = pagerank(g, params);
  return log_binned(c.values, false, bins_per_decade);
}

PowerLawFit fit_power_law(const BinnedDistribution& d, std::size_t min_count) {
  std::vector<std::pair<double, double>> points;
  for (const auto& b : d.bins) {
    if (b.center > 0.0 && b.value > 0.0 && b.count >= min_count) {
      points.emplace_back(std::log10(b.center), std::log10(b.value));
    }
  }
  if (points.size() < 3) {
    throw TooFewBinsError("power-law fit needs at least 3 occupied bins, got " +
                          std::to_string(points.size()));
  }
  const auto n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw TooFewBinsError("power-law fit needs distinct bin centers");

  PowerLawFit fit;
  fit.points = points.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.exponent = -fit.slope;
  double ss_res = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

void write_distribution(std::ostream& out, const BinnedDistribution& d) {
  for (const auto& b : d.bins) {
    out << text::format_double(b.center) << '\t' << text::format_double(b.value) << '\n';
  }
}

void write_histogram(std::ostream& out, const std::map<std::size_t, std::size_t>& histogram) {
  for (const auto& [k, count] : histogram) out << k << '\t' << count << '\n';
}

}  // namespace facetrank
