#pragma once

// Reference implementations used only by tests. They favor obviousness over
// speed and share no code with the library.

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

struct DenseResult {
  std::vector<double> values;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Power iteration on the explicit n×n Google matrix: dangling rows spread
/// uniformly, teleport uniform, max-norm stopping rule.
DenseResult dense_pagerank(std::size_t n, const EdgeList& edges, double damping, double epsilon,
                           std::size_t max_iterations);

/// Stationary vector of the same Google matrix by Gaussian elimination.
std::vector<double> exact_pagerank(std::size_t n, const EdgeList& edges, double damping);

/// Ordered-pair enumeration over the union, each list extended with the
/// elements it lacks as a tied tail.
double brute_ksim(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// |set(top n of a) ∩ set(top n of b)| / n.
double brute_osim(const std::vector<std::string>& a, const std::vector<std::string>& b,
                  std::size_t n);

using IdList = std::vector<std::size_t>;

/// Every pair of duplicate-free lists with lengths 1..max_length, up to
/// relabeling: the first list is 0..la-1, the second draws from 0..la+lb-1.
void for_each_list_pair(std::size_t max_length,
                        const std::function<void(const IdList&, const IdList&)>& visit);

/// Two duplicate-free lists with lengths 1..max_length over a shared pool
/// small enough that they usually overlap.
std::pair<IdList, IdList> random_list_pair(std::mt19937_64& rng, std::size_t max_length);

/// Random simple digraph without self-loops on n nodes.
EdgeList random_edges(std::mt19937_64& rng, std::size_t n, double p);

}  // namespace oracle
