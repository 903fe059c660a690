#include "facetrank/similarity.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "facetrank/errors.hpp"

namespace facetrank {

double osim(std::span<const NodeId> a, std::span<const NodeId> b, std::size_t n) {
  if (n == 0) throw DomainError("osim window must be positive");
  const auto ta = a.first(std::min(n, a.size()));
  const auto tb = b.first(std::min(n, b.size()));
  std::unordered_set<NodeId> in_a(ta.begin(), ta.end());
  std::size_t shared = 0;
  for (NodeId x : tb) shared += in_a.count(x);
  return static_cast<double>(shared) / static_cast<double>(n);
}

namespace {

// Inversions in `seq` by merge sort.
std::uint64_t count_inversions(std::vector<std::uint32_t>& seq) {
  std::vector<std::uint32_t> buffer(seq.size());
  std::uint64_t inversions = 0;
  for (std::size_t width = 1; width < seq.size(); width *= 2) {
    for (std::size_t lo = 0; lo < seq.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, seq.size());
      const std::size_t hi = std::min(lo + 2 * width, seq.size());
      std::size_t i = lo;
      std::size_t j = mid;
      std::size_t k = lo;
      while (i < mid && j < hi) {
        if (seq[j] < seq[i]) {
          inversions += mid - i;
          buffer[k++] = seq[j++];
        } else {
          buffer[k++] = seq[i++];
        }
      }
      while (i < mid) buffer[k++] = seq[i++];
      while (j < hi) buffer[k++] = seq[j++];
    }
    seq.swap(buffer);
  }
  return inversions;
}

}  // namespace

// Unordered pairs of U fall into classes:
//   both in a∩b          agree iff the two lists order them alike
//   one in a∩b, one a-only   both lists rank the common one first in b; agree
//                           iff a also ranks the common one first
//   one in a∩b, one b-only   symmetric
//   any other pair          one list orders them, the other ties them or
//                           orders them oppositely: never agree
double ksim(std::span<const NodeId> a, std::span<const NodeId> b) {
  if (a.empty() || b.empty()) throw DomainError("ksim needs non-empty lists");

  std::unordered_map<NodeId, std::uint32_t> pos_b;
  pos_b.reserve(b.size());
  for (std::uint32_t i = 0; i < b.size(); ++i) pos_b.emplace(b[i], i);

  std::vector<std::uint32_t> common_in_b;  // b-positions of common elements, in a order
  std::uint64_t agree = 0;
  std::uint64_t common_seen = 0;
  std::size_t only_a = 0;
  for (NodeId x : a) {
    if (auto it = pos_b.find(x); it != pos_b.end()) {
      common_in_b.push_back(it->second);
      ++common_seen;
    } else {
      agree += common_seen;  // common elements ahead of this a-only element
      ++only_a;
    }
  }

  std::unordered_set<NodeId> in_a(a.begin(), a.end());
  common_seen = 0;
  std::size_t only_b = 0;
  for (NodeId x : b) {
    if (in_a.count(x)) {
      ++common_seen;
    } else {
      agree += common_seen;
      ++only_b;
    }
  }

  const std::uint64_t c = common_in_b.size();
  const std::uint64_t common_pairs = c > 0 ? c * (c - 1) / 2 : 0;
  agree += common_pairs - count_inversions(common_in_b);

  const std::uint64_t u = c + only_a + only_b;
  if (u < 2) return 1.0;
  return static_cast<double>(agree) / (static_cast<double>(u) * static_cast<double>(u - 1) / 2.0);
}

}  // namespace facetrank
