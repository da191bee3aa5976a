#ifndef DIHOM_PASTING_HPP
#define DIHOM_PASTING_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace dihom {

/// A finite planar rooted tree encoding a globular pasting shape.
///
/// The single node is the point, the linear tree of height n is the n-cell
/// shape D^n, and a root with n leaf children is the n-fold horizontal
/// chain [n].  Child order is significant.  A tree with root children
/// T_1,...,T_m encodes the shape obtained by gluing m cells of the shapes
/// encoded by S(T_1),...,S(T_m) end-to-start along m+1 objects.
class PastingTree {
public:
  PastingTree() = default;
  explicit PastingTree(std::vector<PastingTree> children);

  const std::vector<PastingTree>& children() const { return children_; }
  bool is_leaf() const { return children_.empty(); }

  /// Height of the tree; the dimension of the encoded shape.
  std::size_t height() const { return height_; }
  /// Total number of edges; the cell budget of the shape.
  std::size_t edge_count() const { return edge_count_; }
  /// Total number of nodes (edge_count() + 1).
  std::size_t node_count() const { return edge_count_ + 1; }

  bool operator==(const PastingTree& other) const;
  bool operator!=(const PastingTree& other) const { return !(*this == other); }

  /// Nested-bracket text, e.g. "[]", "[[]]", "[[],[]]".  Coincides with the
  /// JSON array-of-arrays form.
  std::string to_text() const;
  nlohmann::json to_json() const;

  static PastingTree parse(std::string_view text);
  static PastingTree from_json(const nlohmann::json& j);

private:
  std::vector<PastingTree> children_;
  std::size_t height_ = 0;
  std::size_t edge_count_ = 0;
};

/// The linear tree of height n (the shape of a single n-cell).
PastingTree tree_disk(std::size_t n);

/// The root with n leaf children (the horizontal chain [n]).
PastingTree tree_chain(std::size_t n);

/// Dimension of the encoded shape; equal to the tree height.
std::size_t dimension(const PastingTree& t);

/// Catalog order: first by edge count, then recursively lexicographic on
/// child lists.  Total and independent of any enumeration bounds, so
/// enumerations under nested bounds are sub-lists of one another.
bool catalog_less(const PastingTree& a, const PastingTree& b);

/// All planar rooted trees with height <= max_dim and edge count
/// <= max_edges, in catalog order, without duplicates.
std::vector<PastingTree> enumerate_trees(std::size_t max_dim,
                                         std::size_t max_edges);

} // namespace dihom

#endif
