#include "tz/hierarchy.hpp"

#include <algorithm>

#include "tz/error.hpp"
#include "tz/fft.hpp"

namespace tz {

ClusterTree ClusterTree::build(std::size_t n, std::size_t n_min) {
  require(is_power_of_two(n) && is_power_of_two(n_min), errc::invalid_size,
          "build_tree: n and n_min must be powers of two");
  require(n_min >= 2 && n_min <= n / 2, errc::invalid_size,
          "build_tree: need 2 <= n_min <= n/2");
  ClusterTree t;
  t.n_ = n;
  t.n_min_ = n_min;
  std::size_t depth = 0;
  for (std::size_t w = n; w > n_min; w /= 2) ++depth;
  t.depth_ = depth;
  const std::size_t count = (std::size_t{2} << depth) - 1;  // 2^(depth+1) - 1
  t.ranges_.resize(count);
  t.ranges_[0] = IndexRange{0, n};
  for (std::size_t v = 0; left_child(v) < count; ++v) {
    const IndexRange r = t.ranges_[v];
    t.ranges_[left_child(v)] = IndexRange{r.offset, r.size / 2};
    t.ranges_[right_child(v)] = IndexRange{r.offset + r.size / 2, r.size / 2};
  }
  return t;
}

std::size_t ClusterTree::level(std::size_t v) const {
  std::size_t lvl = 0;
  while (v > 0) {
    v = parent(v);
    ++lvl;
  }
  return lvl;
}

std::vector<std::size_t> ClusterTree::level_vertices(std::size_t level) const {
  const std::size_t first = (std::size_t{1} << level) - 1;
  const std::size_t count = std::size_t{1} << level;
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

ClusterTree build_tree(std::size_t n, std::size_t n_min) { return ClusterTree::build(n, n_min); }

std::optional<BlockClass> classify(const std::vector<std::size_t>& J,
                                   const std::vector<std::size_t>& K, std::size_t n) {
  if (J.empty() || K.empty()) return std::nullopt;
  // sep: minimum cyclic distance between the sets; 0 means overlap.
  std::size_t sep = n;
  for (std::size_t j : J) {
    for (std::size_t k : K) {
      const std::size_t d = j > k ? j - k : k - j;
      sep = std::min(sep, std::min(d, n - d));
    }
  }
  if (sep == 0) return std::nullopt;
  // m: smallest cyclic window of consecutive indices covering K.
  std::vector<std::size_t> ks(K);
  std::sort(ks.begin(), ks.end());
  std::size_t max_gap = n - (ks.back() - ks.front());
  for (std::size_t i = 0; i + 1 < ks.size(); ++i)
    max_gap = std::max(max_gap, ks[i + 1] - ks[i]);
  return BlockClass{n - max_gap + 1, sep};
}

}  // namespace tz
