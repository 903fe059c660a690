#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "facetrank/tagged_graph.hpp"

namespace facetrank {

/// Best-first list of distinct users.
using TopList = std::vector<NodeId>;

/// |top_n(a) ∩ top_n(b)| / n. Lists shorter than n still divide by n.
/// Throws DomainError for n == 0.
double osim(std::span<const NodeId> a, std::span<const NodeId> b, std::size_t n);

/// Fraction of ordered pairs (u,v), u≠v, of U = a ∪ b ordered the same way by
/// both lists, where each list is extended with the elements it lacks as a
/// tied tail. Throws DomainError when either list is empty.
double ksim(std::span<const NodeId> a, std::span<const NodeId> b);

}  // namespace facetrank
