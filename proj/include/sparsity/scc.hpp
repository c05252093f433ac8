#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sparsity {

/// Directed graph in compressed adjacency form. Vertices are 0..vertex_count-1.
class Digraph {
public:
  Digraph() = default;

  /// Builds from an edge list; duplicate edges are dropped and each
  /// successor list is sorted.
  Digraph(std::size_t vertex_count, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const std::uint32_t> successors(std::uint32_t v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  bool has_edge(std::uint32_t from, std::uint32_t to) const;

private:
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

struct SccDecomposition {
  /// component[v] is the component id of vertex v.
  std::vector<std::uint32_t> component;
  /// Members of each component, sorted ascending. Components are numbered by
  /// their smallest member.
  std::vector<std::vector<std::uint32_t>> members;
  /// True if no edge leaves the component.
  std::vector<bool> closed;
};

/// Tarjan's algorithm, iterative so that deep graphs do not exhaust the stack.
/// Runs in O(V + E).
SccDecomposition strongly_connected_components(const Digraph& graph);

}  // namespace sparsity
