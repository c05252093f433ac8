#include "sparsity/scc.hpp"

#include <algorithm>
#include <limits>

namespace sparsity {

Digraph::Digraph(std::size_t vertex_count, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  // Bucket by source, then sort and dedupe each (short) successor list.
  std::vector<std::uint32_t> start(vertex_count + 1, 0);
  for (const auto& [from, to] : edges) ++start[from + 1];
  for (std::size_t v = 0; v < vertex_count; ++v) start[v + 1] += start[v];
  std::vector<std::uint32_t> raw(edges.size());
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (const auto& [from, to] : edges) raw[fill[from]++] = to;
  }
  offsets_.assign(vertex_count + 1, 0);
  targets_.reserve(raw.size());
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto first = raw.begin() + start[v], last = raw.begin() + start[v + 1];
    std::sort(first, last);
    targets_.insert(targets_.end(), first, std::unique(first, last));
    offsets_[v + 1] = static_cast<std::uint32_t>(targets_.size());
  }
}

bool Digraph::has_edge(std::uint32_t from, std::uint32_t to) const {
  auto succ = successors(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

SccDecomposition strongly_connected_components(const Digraph& graph) {
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const auto n = static_cast<std::uint32_t>(graph.vertex_count());

  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::uint32_t> raw_component(n, kUnvisited);
  std::uint32_t next_index = 0;
  std::uint32_t component_count = 0;

  struct Frame {
    std::uint32_t vertex;
    std::uint32_t next_edge;
  };
  std::vector<Frame> call_stack;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const std::uint32_t v = frame.vertex;
      auto succ = graph.successors(v);
      if (frame.next_edge < succ.size()) {
        const std::uint32_t w = succ[frame.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw_component[w] = component_count;
        } while (w != v);
        ++component_count;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const std::uint32_t parent = call_stack.back().vertex;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }

  // Renumber components by smallest member.
  SccDecomposition out;
  std::vector<std::uint32_t> renumber(component_count, kUnvisited);
  std::uint32_t next = 0;
  out.component.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    auto& id = renumber[raw_component[v]];
    if (id == kUnvisited) id = next++;
    out.component[v] = id;
  }
  out.members.resize(component_count);
  for (std::uint32_t v = 0; v < n; ++v) out.members[out.component[v]].push_back(v);
  out.closed.assign(component_count, true);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t w : graph.successors(v)) {
      if (out.component[w] != out.component[v]) out.closed[out.component[v]] = false;
    }
  }
  return out;
}

}  // namespace sparsity
