#ifndef TZ_HIERARCHY_HPP
#define TZ_HIERARCHY_HPP
//
// Project : tzsolve
// Module  : hierarchy
// Perfectly balanced binary cluster tree over {0..n-1} with level-order
// vertex numbering, and (m, sep) classification of submatrices.
//

#include <cstddef>
#include <optional>
#include <vector>

#include "tz/types.hpp"

namespace tz {

/// Vertex v has children 2v+1 and 2v+2; the sibling of v is v-1 when v is
/// even, v+1 when v is odd. Root is 0.
class ClusterTree {
 public:
  static ClusterTree build(std::size_t n, std::size_t n_min);

  std::size_t n() const noexcept { return n_; }
  std::size_t n_min() const noexcept { return n_min_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t vertex_count() const noexcept { return ranges_.size(); }

  IndexRange range(std::size_t v) const { return ranges_[v]; }
  bool is_leaf(std::size_t v) const { return level(v) == depth_; }
  std::size_t level(std::size_t v) const;
  static std::size_t parent(std::size_t v) { return (v - 1) / 2; }
  static std::size_t left_child(std::size_t v) { return 2 * v + 1; }
  static std::size_t right_child(std::size_t v) { return 2 * v + 2; }
  static std::size_t sibling(std::size_t v) { return (v % 2 == 0) ? v - 1 : v + 1; }

  /// Vertices of one level, left to right. Level 0 is the root.
  std::vector<std::size_t> level_vertices(std::size_t level) const;
  std::vector<std::size_t> leaves() const { return level_vertices(depth_); }

 private:
  std::size_t n_{0}, n_min_{0}, depth_{0};
  std::vector<IndexRange> ranges_;
};

ClusterTree build_tree(std::size_t n, std::size_t n_min);

struct BlockClass {
  std::size_t m{0};
  std::size_t sep{0};
};

/// Classifies the (J, K) block: minimal m such that K fits in m cyclically
/// consecutive columns, and maximal sep = min cyclic distance between J and
/// K. Returns nullopt (not admissible) when the sets overlap or touch.
std::optional<BlockClass> classify(const std::vector<std::size_t>& J,
                                   const std::vector<std::size_t>& K, std::size_t n);

}  // namespace tz

#endif
