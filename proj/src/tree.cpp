#include "sparsity/tree.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "sparsity/errors.hpp"

namespace sparsity {

using Node = LabelledBinaryTree::Node;

LabelledBinaryTree LabelledBinaryTree::leaf(Symbol label) {
  return LabelledBinaryTree({Node{label, 0, 0}});
}

LabelledBinaryTree LabelledBinaryTree::join(Symbol label, const LabelledBinaryTree& left,
                                            const LabelledBinaryTree& right) {
  std::vector<Node> nodes;
  nodes.reserve(1 + left.size() + right.size());
  nodes.push_back(Node{label, static_cast<std::uint32_t>(left.size()),
                       static_cast<std::uint32_t>(right.size())});
  nodes.insert(nodes.end(), left.nodes_.begin(), left.nodes_.end());
  nodes.insert(nodes.end(), right.nodes_.begin(), right.nodes_.end());
  return LabelledBinaryTree(std::move(nodes));
}

LabelledBinaryTree LabelledBinaryTree::from_preorder(std::vector<Node> nodes) {
  const std::size_t n = nodes.size();
  if (n > 0 && 1 + std::size_t{nodes[0].left_size} + nodes[0].right_size != n) {
    throw std::invalid_argument("root subtree size does not match node count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = nodes[i].left_size;
    const std::size_t r = nodes[i].right_size;
    if (i + 1 + l + r > n) throw std::invalid_argument("subtree extends past the node array");
    if (l > 0 && 1 + std::size_t{nodes[i + 1].left_size} + nodes[i + 1].right_size != l) {
      throw std::invalid_argument("inconsistent left subtree size");
    }
    if (r > 0) {
      const auto& rc = nodes[i + 1 + l];
      if (1 + std::size_t{rc.left_size} + rc.right_size != r) {
        throw std::invalid_argument("inconsistent right subtree size");
      }
    }
  }
  return LabelledBinaryTree(std::move(nodes));
}

LabelledBinaryTree LabelledBinaryTree::subtree(std::size_t i) const {
  if (i >= nodes_.size()) return {};
  auto first = nodes_.begin() + static_cast<std::ptrdiff_t>(i);
  return LabelledBinaryTree(
      std::vector<Node>(first, first + static_cast<std::ptrdiff_t>(subtree_size(i))));
}

LabelledBinaryTree LabelledBinaryTree::left() const {
  if (empty() || nodes_[0].left_size == 0) return {};
  return subtree(1);
}

LabelledBinaryTree LabelledBinaryTree::right() const {
  if (empty() || nodes_[0].right_size == 0) return {};
  return subtree(1 + nodes_[0].left_size);
}

std::map<std::string, Symbol> LabelledBinaryTree::addresses() const {
  std::map<std::string, Symbol> out;
  if (empty()) return out;
  std::vector<std::pair<std::size_t, std::string>> stack{{0, ""}};
  while (!stack.empty()) {
    auto [i, address] = std::move(stack.back());
    stack.pop_back();
    const Node& node = nodes_[i];
    if (node.right_size > 0) stack.emplace_back(i + 1 + node.left_size, address + "r");
    if (node.left_size > 0) stack.emplace_back(i + 1, address + "l");
    out.emplace(std::move(address), node.label);
  }
  return out;
}

static LabelledBinaryTree build_from_addresses(const std::map<std::string, Symbol>& labels,
                                               const std::string& address) {
  auto it = labels.find(address);
  if (it == labels.end()) return {};
  return LabelledBinaryTree::join(it->second, build_from_addresses(labels, address + "l"),
                                  build_from_addresses(labels, address + "r"));
}

LabelledBinaryTree LabelledBinaryTree::from_addresses(const std::map<std::string, Symbol>& labels) {
  for (const auto& [address, label] : labels) {
    if (address.find_first_not_of("lr") != std::string::npos) {
      throw std::invalid_argument("address '" + address + "' uses letters other than l and r");
    }
    if (!address.empty() && !labels.contains(address.substr(0, address.size() - 1))) {
      throw std::invalid_argument("address set is not prefix closed at '" + address + "'");
    }
  }
  return build_from_addresses(labels, "");
}

std::size_t UnrankedTree::size() const {
  std::size_t total = 1;
  for (const auto& child : children) total += child.size();
  return total;
}

Tree conc(const Alphabet& alphabet, Symbol label, const Tree& left, const Tree& right) {
  if (!alphabet.contains(label)) throw std::invalid_argument("unknown symbol index");
  for (const Tree* sub : {&left, &right}) {
    for (const auto& node : sub->nodes()) {
      if (!alphabet.contains(node.label)) throw std::invalid_argument("subtree uses a foreign label");
    }
  }
  return Tree::join(label, left, right);
}

static bool matches_at(const Tree& s, const Tree& t, std::size_t i) {
  if (t.subtree_size(i) != s.size()) return false;
  auto sn = s.nodes();
  auto tn = t.nodes().subspan(i, s.size());
  return std::equal(sn.begin(), sn.end(), tn.begin());
}

bool is_subtree(const Tree& s, const Tree& t) {
  if (s.empty()) return true;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (matches_at(s, t, i)) return true;
  }
  return false;
}

std::size_t count_occurrences(const Tree& s, const Tree& t) {
  if (s.empty()) throw std::invalid_argument("count_occurrences: pattern must be non-empty");
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (matches_at(s, t, i)) ++count;
  }
  return count;
}

int compare_canonical(const Tree& a, const Tree& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  auto an = a.nodes();
  auto bn = b.nodes();
  for (std::size_t i = 0; i < an.size(); ++i) {
    if (an[i].left_size != bn[i].left_size) return an[i].left_size < bn[i].left_size ? -1 : 1;
  }
  for (std::size_t i = 0; i < an.size(); ++i) {
    if (an[i].label != bn[i].label) return an[i].label < bn[i].label ? -1 : 1;
  }
  return 0;
}

std::vector<Tree> enumerate_shapes(std::size_t n) {
  std::vector<std::vector<Tree>> by_size(n + 1);
  by_size[0].push_back(Tree{});
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t k = 0; k < m; ++k) {
      for (const auto& l : by_size[k]) {
        for (const auto& r : by_size[m - 1 - k]) by_size[m].push_back(Tree::join(0, l, r));
      }
    }
  }
  return std::move(by_size[n]);
}

void for_each_tree(std::size_t alphabet_size, std::size_t n,
                   const std::function<bool(const Tree&)>& visit, std::size_t cap) {
  if (n > cap) {
    throw CapExceeded("enumeration size " + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
  }
  if (alphabet_size == 0) throw std::invalid_argument("empty alphabet");
  for (const auto& shape : enumerate_shapes(n)) {
    std::vector<Node> nodes(shape.nodes().begin(), shape.nodes().end());
    std::vector<Symbol> digits(n, 0);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) nodes[i].label = digits[i];
      if (!visit(Tree::from_preorder(nodes))) return;
      std::size_t pos = n;
      while (pos > 0 && digits[pos - 1] + 1 == alphabet_size) {
        digits[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
      ++digits[pos - 1];
    }
  }
}

std::vector<Tree> enumerate(const Alphabet& alphabet, std::size_t n, std::size_t cap) {
  std::vector<Tree> out;
  for_each_tree(alphabet.size(), n, [&](const Tree& t) {
    out.push_back(t);
    return true;
  }, cap);
  return out;
}

// First child becomes the left subtree, next sibling the right subtree.
static Tree encode_forest(std::span<const UnrankedTree> forest) {
  if (forest.empty()) return {};
  const auto& head = forest.front();
  return Tree::join(head.label, encode_forest(head.children), encode_forest(forest.subspan(1)));
}

Tree encode_unranked(const UnrankedTree& tree) {
  return encode_forest(std::span<const UnrankedTree>(&tree, 1));
}

static std::vector<UnrankedTree> decode_forest(const Tree& tree, std::size_t i, std::size_t count) {
  std::vector<UnrankedTree> forest;
  auto nodes = tree.nodes();
  while (count > 0) {
    const auto& node = nodes[i];
    UnrankedTree u;
    u.label = node.label;
    u.children = decode_forest(tree, i + 1, node.left_size);
    forest.push_back(std::move(u));
    count = node.right_size;
    i = i + 1 + node.left_size;
  }
  return forest;
}

UnrankedTree decode_unranked(const Tree& tree) {
  if (tree.empty()) throw std::invalid_argument("decode_unranked: empty tree has no unranked preimage");
  if (tree.nodes()[0].right_size != 0) {
    throw std::invalid_argument("decode_unranked: root has a right child");
  }
  return std::move(decode_forest(tree, 0, tree.size()).front());
}

std::string format_tree(const Alphabet& alphabet, const Tree& tree) {
  if (tree.empty()) return "()";
  std::string out;
  auto nodes = tree.nodes();
  // Entries are node indices, or one of the punctuation markers below.
  constexpr std::size_t kOpen = SIZE_MAX, kComma = SIZE_MAX - 1, kClose = SIZE_MAX - 2,
                        kEmpty = SIZE_MAX - 3;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t top = stack.back();
    stack.pop_back();
    switch (top) {
      case kOpen: out += '('; continue;
      case kComma: out += ','; continue;
      case kClose: out += ')'; continue;
      case kEmpty: out += "()"; continue;
      default: break;
    }
    const auto& node = nodes[top];
    out += alphabet.name(node.label);
    if (node.left_size == 0 && node.right_size == 0) continue;
    stack.push_back(kClose);
    stack.push_back(node.right_size ? top + 1 + node.left_size : kEmpty);
    stack.push_back(kComma);
    stack.push_back(node.left_size ? top + 1 : kEmpty);
    stack.push_back(kOpen);
  }
  return out;
}

namespace {

class TreeParser {
public:
  TreeParser(const Alphabet& alphabet, std::string_view text) : alphabet_(alphabet), text_(text) {}

  Tree parse() {
    Tree t = parse_tree();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw FormatError("<tree literal>", 1, reason + " at column " + std::to_string(pos_ + 1));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  Tree parse_tree() {
    if (consume('(')) {
      expect(')');
      return {};
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == ',' || std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a label or \"()\"");
    const std::string_view token = text_.substr(start, pos_ - start);
    auto label = alphabet_.find(token);
    if (!label) {
      pos_ = start;
      fail("unknown label '" + std::string(token) + "'");
    }
    if (!consume('(')) return Tree::leaf(*label);
    Tree left = parse_tree();
    expect(',');
    Tree right = parse_tree();
    expect(')');
    return Tree::join(*label, left, right);
  }

  const Alphabet& alphabet_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_tree(const Alphabet& alphabet, std::string_view text) {
  return TreeParser(alphabet, text).parse();
}

}  // namespace sparsity
