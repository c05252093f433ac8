#include "witness_engine.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "sparsity/errors.hpp"

namespace sparsity::detail {

Tree WitnessTable::tree(StateId q, std::uint64_t max_nodes) const {
  if (q == kBottom) return {};
  if (!reachable(q)) throw std::invalid_argument("state has no witness (unreachable)");
  if (size_of(q) > max_nodes) {
    throw CapExceeded("witness tree has " + std::to_string(size_of(q)) + " nodes, cap is " +
                      std::to_string(max_nodes));
  }
  std::vector<Tree::Node> nodes;
  nodes.reserve(size_of(q));
  std::vector<StateId> stack{q};
  while (!stack.empty()) {
    const StateId x = stack.back();
    stack.pop_back();
    if (x == kBottom) continue;
    const auto e = entry(x);
    nodes.push_back({e.label, static_cast<std::uint32_t>(size_of(e.left)),
                     static_cast<std::uint32_t>(size_of(e.right))});
    stack.push_back(e.right);
    stack.push_back(e.left);
  }
  return Tree::from_preorder(std::move(nodes));
}

namespace {

constexpr std::uint64_t kSizeLimit = std::uint64_t{1} << 62;

struct Candidate {
  StateId target = kBottom;
  Symbol label = 0;
  StateId left = kBottom;
  StateId right = kBottom;
};

}  // namespace

class WitnessSearch {
public:
  WitnessSearch(std::size_t state_count, std::span<const TreeTransition> transitions,
                std::span<const std::optional<StateId>> defaults, const ExplicitPredicate& is_explicit)
      : table_(state_count),
        transitions_(transitions),
        defaults_(defaults),
        is_explicit_(is_explicit),
        default_cursor_(defaults.size(), 0),
        slot_(state_count, kNoSlot) {}

  WitnessTable run() {
    build_adjacency();
    by_size_[0].push_back(kBottom);
    sizes_.push_back(0);

    std::uint64_t current_level = 0;
    while (true) {
      std::optional<std::uint64_t> next_level;
      if (!buckets_.empty()) next_level = buckets_.begin()->first;

      std::vector<std::pair<std::uint64_t, Candidate>> default_candidates;
      for (Symbol a = 0; a < defaults_.size(); ++a) {
        if (!defaults_[a] || table_.reachable(*defaults_[a])) continue;
        if (auto found = search_default(a, current_level)) {
          default_candidates.push_back(*found);
          if (!next_level || found->first < *next_level) next_level = found->first;
        }
      }
      if (!next_level) break;
      current_level = *next_level;

      std::vector<Candidate> best;
      auto offer = [&](const Candidate& c) {
        if (table_.reachable(c.target)) return;
        std::uint32_t& slot = slot_[c.target];
        if (slot == kNoSlot) {
          slot = static_cast<std::uint32_t>(best.size());
          best.push_back(c);
        } else if (less(c, best[slot])) {
          best[slot] = c;
        }
      };
      if (auto bucket = buckets_.find(current_level); bucket != buckets_.end()) {
        for (const auto& c : bucket->second) offer(c);
        buckets_.erase(bucket);
      }
      for (const auto& [level, c] : default_candidates) {
        if (level == current_level) offer(c);
      }
      finalize_level(current_level, best);
    }
    return std::move(table_);
  }

private:
  auto key(const Candidate& c) const {
    return std::make_tuple(table_.shape_rank_of(c.left), table_.shape_rank_of(c.right), c.label,
                           table_.rank_of(c.left), table_.rank_of(c.right));
  }
  bool less(const Candidate& a, const Candidate& b) const { return key(a) < key(b); }

  void build_adjacency() {
    const std::size_t n = table_.hot_.size();
    adjacency_offsets_.assign(n + 1, 0);
    pending_.assign(transitions_.size(), 0);
    for (const auto& tr : transitions_) {
      if (tr.left != kBottom) ++adjacency_offsets_[tr.left + 1];
      if (tr.right != kBottom) ++adjacency_offsets_[tr.right + 1];
    }
    for (std::size_t i = 0; i < n; ++i) adjacency_offsets_[i + 1] += adjacency_offsets_[i];
    adjacency_.resize(adjacency_offsets_[n]);
    std::vector<std::uint32_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
    for (std::uint32_t t = 0; t < transitions_.size(); ++t) {
      const auto& tr = transitions_[t];
      if (tr.left != kBottom) {
        adjacency_[fill[tr.left]++] = t;
        ++pending_[t];
      }
      if (tr.right != kBottom) {
        adjacency_[fill[tr.right]++] = t;
        ++pending_[t];
      }
      if (pending_[t] == 0) buckets_[1].push_back({tr.target, tr.symbol, tr.left, tr.right});
    }
  }

  void finalize_level(std::uint64_t level, std::vector<Candidate>& fresh) {
    for (const auto& c : fresh) slot_[c.target] = kNoSlot;
    // Keys are looked up once; comparing through the table thrashes the cache.
    struct Keyed {
      std::uint64_t shapes, label_left;
      std::uint32_t right, index;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(fresh.size());
    for (std::uint32_t i = 0; i < fresh.size(); ++i) {
      const auto& c = fresh[i];
      keyed.push_back({std::uint64_t{table_.shape_rank_of(c.left)} << 32 | table_.shape_rank_of(c.right),
                       std::uint64_t{c.label} << 32 | table_.rank_of(c.left), table_.rank_of(c.right), i});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
      return std::tie(a.shapes, a.label_left, a.right) < std::tie(b.shapes, b.label_left, b.right);
    });
    std::vector<Candidate> sorted;
    sorted.reserve(fresh.size());
    for (const auto& k : keyed) sorted.push_back(fresh[k.index]);
    fresh = std::move(sorted);

    auto& bucket = by_size_[level];
    std::pair<std::uint32_t, std::uint32_t> previous_shape{UINT32_MAX, UINT32_MAX};
    for (const auto& c : fresh) {
      const std::pair shape{table_.shape_rank_of(c.left), table_.shape_rank_of(c.right)};
      if (shape != previous_shape) {
        ++shape_counter_;
        previous_shape = shape;
      }
      WitnessEntry e;
      e.size = level;
      e.label = c.label;
      e.left = c.left;
      e.right = c.right;
      e.rank = ++rank_counter_;
      e.shape_rank = shape_counter_;
      table_.set(c.target, e);
      table_.order_.push_back(c.target);
      bucket.push_back(c.target);
    }
    if (!fresh.empty()) sizes_.push_back(level);

    // Propagation order is irrelevant; state order keeps the adjacency walk sequential.
    std::vector<StateId> done(bucket.end() - static_cast<std::ptrdiff_t>(fresh.size()), bucket.end());
    std::sort(done.begin(), done.end());
    for (const StateId q : done) {
      for (auto i = adjacency_offsets_[q]; i < adjacency_offsets_[q + 1]; ++i) {
        const std::uint32_t t = adjacency_[i];
        if (--pending_[t] != 0) continue;
        const auto& tr = transitions_[t];
        if (table_.reachable(tr.target)) continue;
        buckets_[combined_level(tr.left, tr.right)].push_back({tr.target, tr.symbol, tr.left, tr.right});
      }
    }
  }

  std::uint64_t combined_level(StateId l, StateId r) const {
    const std::uint64_t sum = table_.size_of(l) + table_.size_of(r);
    if (sum >= kSizeLimit) throw CapExceeded("witness size overflow");
    return sum + 1;
  }

  // Smallest achievable sum of two finalised sizes that is >= s.
  std::optional<std::uint64_t> next_sum(std::uint64_t s) const {
    std::optional<std::uint64_t> best;
    for (std::uint64_t i : sizes_) {
      const std::uint64_t need = i >= s ? 0 : s - i;
      auto it = std::lower_bound(sizes_.begin(), sizes_.end(), need);
      if (it == sizes_.end()) continue;
      const std::uint64_t sum = i + *it;
      if (!best || sum < *best) best = sum;
    }
    return best;
  }

  // Pairs (l, r) with |W(l)| + |W(r)| = s in canonical order, first one that
  // the explicit table does not cover.
  std::optional<std::pair<StateId, StateId>> first_uncovered_pair(Symbol a, std::uint64_t s) const {
    for (std::uint64_t i : sizes_) {
      if (i > s) break;
      auto right_it = by_size_.find(s - i);
      if (right_it == by_size_.end()) continue;
      const auto& lefts = by_size_.at(i);
      const auto& rights = right_it->second;
      // Group by shape rank; within a group, by rank.
      for (std::size_t lg = 0; lg < lefts.size();) {
        std::size_t lg_end = lg;
        while (lg_end < lefts.size() &&
               table_.shape_rank_of(lefts[lg_end]) == table_.shape_rank_of(lefts[lg])) {
          ++lg_end;
        }
        for (std::size_t rg = 0; rg < rights.size();) {
          std::size_t rg_end = rg;
          while (rg_end < rights.size() &&
                 table_.shape_rank_of(rights[rg_end]) == table_.shape_rank_of(rights[rg])) {
            ++rg_end;
          }
          for (std::size_t x = lg; x < lg_end; ++x) {
            for (std::size_t y = rg; y < rg_end; ++y) {
              if (!is_explicit_(lefts[x], rights[y], a)) return std::pair{lefts[x], rights[y]};
            }
          }
          rg = rg_end;
        }
        lg = lg_end;
      }
    }
    return std::nullopt;
  }

  std::optional<std::pair<std::uint64_t, Candidate>> search_default(Symbol a,
                                                                     std::uint64_t current_level) {
    const std::uint64_t limit = 2 * sizes_.back();
    auto s = next_sum(default_cursor_[a]);
    while (s && *s <= limit) {
      if (auto pair = first_uncovered_pair(a, *s)) {
        if (*s >= kSizeLimit) throw CapExceeded("witness size overflow");
        return std::pair{*s + 1, Candidate{*defaults_[a], a, pair->first, pair->second}};
      }
      // Sums up to the current level cannot gain new pairs later.
      if (*s <= current_level) default_cursor_[a] = *s + 1;
      s = next_sum(*s + 1);
    }
    return std::nullopt;
  }

  WitnessTable table_;
  std::span<const TreeTransition> transitions_;
  std::span<const std::optional<StateId>> defaults_;
  const ExplicitPredicate& is_explicit_;

  std::vector<std::uint32_t> adjacency_offsets_;
  std::vector<std::uint32_t> adjacency_;
  std::vector<std::uint32_t> pending_;
  std::map<std::uint64_t, std::vector<Candidate>> buckets_;
  std::map<std::uint64_t, std::vector<StateId>> by_size_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> default_cursor_;
  // Index of a state's candidate in the level being built.
  static constexpr std::uint32_t kNoSlot = UINT32_MAX;
  std::vector<std::uint32_t> slot_;
  std::uint32_t rank_counter_ = 0;
  std::uint32_t shape_counter_ = 0;
};

WitnessTable compute_witnesses(std::size_t state_count, std::span<const TreeTransition> transitions,
                               std::span<const std::optional<StateId>> defaults,
                               const ExplicitPredicate& is_explicit) {
  bool any_default = std::any_of(defaults.begin(), defaults.end(),
                                 [](const auto& d) { return d.has_value(); });
  if (any_default && !is_explicit) {
    throw std::invalid_argument("default targets need an explicit-entry predicate");
  }
  return WitnessSearch(state_count, transitions, defaults, is_explicit).run();
}

WitnessTable compute_witnesses(const TreeAutomaton& aut) {
  return compute_witnesses(aut.state_count(), aut.transitions());
}

WitnessTable compute_witnesses(const Dta& aut) {
  ExplicitPredicate pred = [&aut](StateId l, StateId r, Symbol a) { return aut.is_explicit(l, r, a); };
  return compute_witnesses(aut.state_count(), aut.explicit_transitions(), aut.default_targets(), pred);
}

}  // namespace sparsity::detail
