#pragma once

// Minimal witness trees for bottom-up automata.
//
// A generalised Dijkstra over the transition hypergraph: states are finalised
// level by level (level = witness size). A state's witness is the smallest
// conc(a, W(l), W(r)) over transitions (l, r, a) → q whose children are already
// finalised; ties at equal size are broken by the canonical tree order, which
// decomposes over (shape rank of l, shape rank of r, a, rank of l, rank of r)
// because children witnesses are themselves canonical minima.
//
// Default targets of a sparse deterministic table are handled by searching
// the smallest pair (l, r) that is not covered by an explicit entry.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sparsity/tree_automaton.hpp"

namespace sparsity::detail {

struct WitnessEntry {
  std::uint64_t size = 0;
  Symbol label = 0;
  StateId left = kBottom;
  StateId right = kBottom;
  /// Position in the canonical order of all finalised witnesses (⊥ is 0).
  std::uint32_t rank = 0;
  /// Dense rank of the witness shape (⊥ is 0).
  std::uint32_t shape_rank = 0;
};

class WitnessTable {
public:
  explicit WitnessTable(std::size_t state_count) : hot_(state_count), cold_(state_count) {}

  bool reachable(StateId q) const { return q == kBottom || hot_[q].rank != 0; }
  WitnessEntry entry(StateId q) const {
    const auto& h = hot_[q];
    const auto& c = cold_[q];
    return {h.size, c.label, c.left, c.right, h.rank, h.shape_rank};
  }

  std::uint64_t size_of(StateId q) const { return q == kBottom ? 0 : hot_[q].size; }
  std::uint32_t rank_of(StateId q) const { return q == kBottom ? 0 : hot_[q].rank; }
  std::uint32_t shape_rank_of(StateId q) const { return q == kBottom ? 0 : hot_[q].shape_rank; }

  /// Reachable states in canonical order of their witnesses.
  const std::vector<StateId>& order() const noexcept { return order_; }
  std::size_t reachable_count() const noexcept { return order_.size(); }

  /// Materialises the witness tree. Throws CapExceeded beyond `max_nodes`.
  Tree tree(StateId q, std::uint64_t max_nodes = std::uint64_t{1} << 24) const;

private:
  friend class WitnessSearch;
  // Split so the fields read during the search stay dense in cache.
  // rank 0 marks a state that has no witness yet.
  struct Hot {
    std::uint64_t size = 0;
    std::uint32_t rank = 0;
    std::uint32_t shape_rank = 0;
  };
  struct Cold {
    Symbol label = 0;
    StateId left = kBottom;
    StateId right = kBottom;
  };
  void set(StateId q, const WitnessEntry& e) {
    hot_[q] = {e.size, e.rank, e.shape_rank};
    cold_[q] = {e.label, e.left, e.right};
  }
  std::vector<Hot> hot_;
  std::vector<Cold> cold_;
  std::vector<StateId> order_;
};

using ExplicitPredicate = std::function<bool(StateId, StateId, Symbol)>;

/// `transitions` may be nondeterministic. `defaults[a]`, when set, is the
/// target of every pair (l, r) for which `is_explicit(l, r, a)` is false.
WitnessTable compute_witnesses(std::size_t state_count, std::span<const TreeTransition> transitions,
                               std::span<const std::optional<StateId>> defaults = {},
                               const ExplicitPredicate& is_explicit = {});

WitnessTable compute_witnesses(const TreeAutomaton& aut);
WitnessTable compute_witnesses(const Dta& aut);

}  // namespace sparsity::detail
