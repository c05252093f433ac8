#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsity/alphabet.hpp"

namespace sparsity {

/// A finite Σ-labelled binary tree (possibly empty).
///
/// Nodes are stored in preorder together with the sizes of their left and
/// right subtrees, so the layout is canonical: two trees are equal exactly when
/// their node arrays are equal, and the subtree rooted at preorder index i
/// occupies the contiguous range [i, i + subtree_size(i)).
///
/// Node addresses in the {l,r}* sense are available through addresses(); every
/// constructor produces a prefix-closed address set by construction.
class LabelledBinaryTree {
public:
  struct Node {
    Symbol label;
    std::uint32_t left_size;
    std::uint32_t right_size;
    bool operator==(const Node&) const = default;
  };

  LabelledBinaryTree() = default;

  static LabelledBinaryTree leaf(Symbol label);

  /// conc_a(left, right): root labelled `label` with the given subtrees.
  static LabelledBinaryTree join(Symbol label, const LabelledBinaryTree& left,
                                 const LabelledBinaryTree& right);

  /// Builds a tree from an address → label map. Throws std::invalid_argument
  /// if the address set is not prefix closed or uses characters other than
  /// 'l' and 'r'.
  static LabelledBinaryTree from_addresses(const std::map<std::string, Symbol>& labels);

  /// Builds a tree directly from a preorder node array. Throws
  /// std::invalid_argument if the recorded subtree sizes are inconsistent.
  static LabelledBinaryTree from_preorder(std::vector<Node> nodes);

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }

  std::span<const Node> nodes() const noexcept { return nodes_; }

  Symbol root_label() const { return nodes_.at(0).label; }

  /// Size of the subtree rooted at preorder index i.
  std::size_t subtree_size(std::size_t i) const {
    return 1 + nodes_[i].left_size + nodes_[i].right_size;
  }

  /// Induced subtree T(u) for the node at preorder index i.
  LabelledBinaryTree subtree(std::size_t i) const;

  LabelledBinaryTree left() const;
  LabelledBinaryTree right() const;

  /// Address ({l,r}-string) → label for every node.
  std::map<std::string, Symbol> addresses() const;

  bool operator==(const LabelledBinaryTree&) const = default;

private:
  explicit LabelledBinaryTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  std::vector<Node> nodes_;
};

using Tree = LabelledBinaryTree;

/// Unranked tree: a labelled root with an ordered list of children.
struct UnrankedTree {
  Symbol label = 0;
  std::vector<UnrankedTree> children;

  std::size_t size() const;
  bool operator==(const UnrankedTree&) const = default;
};

/// |t|
inline std::size_t size(const Tree& t) { return t.size(); }

/// conc_a(left, right); throws std::invalid_argument if `label` is not in the
/// alphabet or a subtree uses a foreign label.
Tree conc(const Alphabet& alphabet, Symbol label, const Tree& left, const Tree& right);

/// S ⪯ T. The empty tree is a subtree of every tree.
bool is_subtree(const Tree& s, const Tree& t);

/// Number of nodes u of t with t(u) = s. Throws std::invalid_argument if s is empty.
std::size_t count_occurrences(const Tree& s, const Tree& t);

/// Canonical order: by size, then by shape (preorder sequence of left-subtree
/// sizes, lexicographically), then by the preorder label sequence. This is
/// the order in which enumerate() yields trees.
int compare_canonical(const Tree& a, const Tree& b);

inline constexpr std::size_t kDefaultEnumerationCap = 12;

/// Calls `visit` on every tree in B^Σ_n exactly once, in canonical order.
/// Throws CapExceeded if n > cap. Returning false from `visit` stops early.
void for_each_tree(std::size_t alphabet_size, std::size_t n,
                   const std::function<bool(const Tree&)>& visit,
                   std::size_t cap = kDefaultEnumerationCap);

/// All trees of B^Σ_n in canonical order; count is C_n·|Σ|^n.
std::vector<Tree> enumerate(const Alphabet& alphabet, std::size_t n,
                            std::size_t cap = kDefaultEnumerationCap);

/// All shapes (unlabelled trees, every label 0) with n nodes, in canonical order.
std::vector<Tree> enumerate_shapes(std::size_t n);

/// First-child / next-sibling encoding.
Tree encode_unranked(const UnrankedTree& tree);

/// Inverse of encode_unranked. Throws std::invalid_argument for the empty
/// tree or a root with a right child.
UnrankedTree decode_unranked(const Tree& tree);

/// Tree literal: "()" for the empty tree, "a" for a leaf, "a(L,R)" otherwise.
/// No whitespace is emitted.
std::string format_tree(const Alphabet& alphabet, const Tree& tree);

/// Parses the tree literal grammar
///   tree := "()" | label | label "(" tree "," tree ")"
/// with insignificant whitespace. Throws FormatError.
Tree parse_tree(const Alphabet& alphabet, std::string_view text);

}  // namespace sparsity
