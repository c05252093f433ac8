#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "sparsity/errors.hpp"
#include "sparsity/tree_automaton.hpp"
#include "witness_engine.hpp"

namespace sparsity {

namespace {

std::map<StateId, Tree> materialise(const detail::WitnessTable& table) {
  std::map<StateId, Tree> out;
  for (StateId q : table.order()) out.emplace(q, table.tree(q));
  return out;
}

Digraph state_graph(const Dta& aut, const detail::WitnessTable& table) {
  const std::size_t n = aut.state_count();
  const std::size_t sigma = aut.alphabet().size();
  auto usable = [&](StateId s) { return table.reachable(s); };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  const bool any_default = std::any_of(aut.default_targets().begin(), aut.default_targets().end(),
                                       [](const auto& d) { return d.has_value(); });
  // Explicit entries per (state, symbol, position) over usable partners; a
  // state has a default edge for (a, position) iff some partner is missing.
  std::vector<std::uint32_t> covered(any_default ? n * sigma * 2 : 0, 0);

  for (const auto& t : aut.explicit_transitions()) {
    if (!usable(t.left) || !usable(t.right)) continue;
    if (t.left != kBottom) edges.emplace_back(t.left, t.target);
    if (t.right != kBottom) edges.emplace_back(t.right, t.target);
    if (!any_default) continue;
    if (t.left != kBottom) ++covered[(std::size_t{t.left} * sigma + t.symbol) * 2];
    if (t.right != kBottom) ++covered[(std::size_t{t.right} * sigma + t.symbol) * 2 + 1];
  }

  if (any_default) {
    const std::uint64_t partners = table.reachable_count() + 1;
    for (StateId q : table.order()) {
      for (Symbol a = 0; a < sigma; ++a) {
        const auto& d = aut.default_targets()[a];
        if (!d) continue;
        const std::size_t base = (std::size_t{q} * sigma + a) * 2;
        if (covered[base] < partners || covered[base + 1] < partners) {
          edges.emplace_back(q, *d);
        }
      }
    }
  }
  return Digraph(n, std::move(edges));
}

std::vector<std::vector<StateId>> find_sinks(const Dta& aut, const detail::WitnessTable& table) {
  auto scc = strongly_connected_components(state_graph(aut, table));
  std::vector<std::vector<StateId>> sinks;
  for (std::size_t c = 0; c < scc.members.size(); ++c) {
    if (!scc.closed[c] || !table.reachable(scc.members[c].front())) continue;
    sinks.push_back(scc.members[c]);
  }
  return sinks;
}

std::vector<std::string> names_of(const Dta& aut, const std::vector<StateId>& states) {
  std::vector<std::string> out;
  for (StateId q : states) out.push_back(aut.state_name(q));
  return out;
}

}  // namespace

std::map<StateId, Tree> reachable_witnesses(const TreeAutomaton& aut) {
  return materialise(detail::compute_witnesses(aut));
}

std::map<StateId, Tree> reachable_witnesses(const Dta& aut) {
  return materialise(detail::compute_witnesses(aut));
}

Digraph state_graph(const Dta& aut) { return state_graph(aut, detail::compute_witnesses(aut)); }

std::vector<std::vector<StateId>> find_sinks(const Dta& aut) {
  return find_sinks(aut, detail::compute_witnesses(aut));
}

DensityVerdict decide_density(const Dta& aut) {
  const auto table = detail::compute_witnesses(aut);
  const auto sinks = find_sinks(aut, table);

  const std::vector<StateId>* best_sink = nullptr;
  StateId best_state = kBottom;
  bool saw_zero = false, saw_one = false;
  for (const auto& sink : sinks) {
    const bool all_accepting = std::all_of(sink.begin(), sink.end(), [&](StateId q) { return aut.is_accepting(q); });
    const bool none_accepting = std::none_of(sink.begin(), sink.end(), [&](StateId q) { return aut.is_accepting(q); });
    if (!all_accepting && !none_accepting) continue;
    saw_zero |= none_accepting;
    saw_one |= all_accepting;
    for (StateId q : sink) {
      if (best_state == kBottom || table.rank_of(q) < table.rank_of(best_state)) {
        best_state = q;
        best_sink = &sink;
      }
    }
  }
  if (saw_zero && saw_one) throw std::logic_error("automaton has both a rejecting and an accepting sink");

  DensityVerdict verdict;
  if (!best_sink) return verdict;
  verdict.kind = saw_zero ? DensityKind::zero : DensityKind::one;
  verdict.witness = table.tree(best_state);
  verdict.sink = names_of(aut, *best_sink);
  return verdict;
}

DensityVerdict decide_density(const TreeAutomaton& aut, std::size_t max_states) {
  return decide_density(determinize(aut, max_states));
}

// Unranked trees. A binary node of T^♭ with label a and left subtree B is the
// root of the unranked subtree whose encoding is conc(a, B, ∅). So L misses
// some unranked subtree iff some (a, B) never sits below a label-a node in an
// accepted tree. The product below tracks, besides the deterministic state,
// whether the right child is empty, so that the complement within the
// encoding domain is expressible as well.
namespace {

struct Product {
  Dta dta;
  std::vector<StateId> base;  // product state -> deterministic state
  std::vector<bool> right_empty;
};

Product build_product(const Dta& d, const detail::WitnessTable& table) {
  const std::size_t n = d.state_count();
  const std::size_t sigma = d.alphabet().size();
  std::vector<StateId> partners{kBottom};
  for (StateId q : table.order()) partners.push_back(q);

  // Index of (p, flag) in the product; assigned in discovery order.
  std::vector<StateId> id(2 * n, kBottom);
  std::vector<StateId> base;
  std::vector<bool> right_empty;
  std::vector<std::string> names;
  auto intern = [&](StateId p, bool flag) {
    auto& slot = id[2 * p + (flag ? 1 : 0)];
    if (slot == kBottom) {
      slot = static_cast<StateId>(base.size());
      base.push_back(p);
      right_empty.push_back(flag);
      names.push_back(d.state_name(p) + (flag ? "/1" : "/0"));
    }
    return slot;
  };
  for (StateId l : partners) {
    for (StateId r : partners) {
      for (Symbol a = 0; a < sigma; ++a) intern(d.step(l, r, a), r == kBottom);
    }
  }

  const std::size_t m = base.size();
  std::vector<StateId> pstates{kBottom};
  for (StateId x = 0; x < m; ++x) pstates.push_back(x);
  std::vector<TreeTransition> transitions;
  transitions.reserve((m + 1) * (m + 1) * sigma);
  for (StateId x : pstates) {
    for (StateId y : pstates) {
      const StateId l = x == kBottom ? kBottom : base[x];
      const StateId r = y == kBottom ? kBottom : base[y];
      for (Symbol a = 0; a < sigma; ++a) {
        transitions.push_back({x, y, a, id[2 * d.step(l, r, a) + (r == kBottom ? 1 : 0)]});
      }
    }
  }
  std::vector<bool> accepting(m, false);
  for (StateId x = 0; x < m; ++x) accepting[x] = d.is_accepting(base[x]);
  return {Dta(d.alphabet(), std::move(names), std::move(accepting), std::move(transitions)), std::move(base),
          std::move(right_empty)};
}

struct MissingPair {
  Symbol label;
  StateId left;  // product state or kBottom
};

// Smallest (a, B) such that no tree with root in `target` contains a label-a
// node whose left subtree is B.
std::optional<MissingPair> find_missing_pair(const Product& product, const detail::WitnessTable& table,
                                             const std::vector<bool>& target) {
  const auto& p = product.dta;
  const std::size_t m = p.state_count();
  const std::size_t sigma = p.alphabet().size();
  std::vector<StateId> partners{kBottom};
  for (StateId x : table.order()) partners.push_back(x);

  std::vector<bool> useful(m, false);
  for (StateId x : table.order()) useful[x] = target[x];
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId x : partners) {
      for (StateId y : partners) {
        for (Symbol a = 0; a < sigma; ++a) {
          if (!useful[p.step(x, y, a)]) continue;
          for (StateId c : {x, y}) {
            if (c != kBottom && !useful[c]) {
              useful[c] = true;
              changed = true;
            }
          }
        }
      }
    }
  }

  std::optional<MissingPair> best;
  auto key = [&](const MissingPair& mp) {
    return std::make_tuple(table.size_of(mp.left), table.shape_rank_of(mp.left), mp.label,
                           table.rank_of(mp.left));
  };
  for (StateId q : partners) {
    for (Symbol a = 0; a < sigma; ++a) {
      const bool occurs = std::any_of(partners.begin(), partners.end(),
                                      [&](StateId r) { return useful[p.step(q, r, a)]; });
      if (occurs) continue;
      MissingPair candidate{a, q};
      if (!best || key(candidate) < key(*best)) best = candidate;
    }
  }
  return best;
}

}  // namespace

DensityVerdict decide_unranked(const TreeAutomaton& aut, std::size_t max_states) {
  const Dta d = determinize(aut, max_states);
  const auto d_table = detail::compute_witnesses(d);
  std::vector<StateId> partners{kBottom};
  for (StateId q : d_table.order()) partners.push_back(q);
  for (StateId l : partners) {
    for (StateId r : d_table.order()) {
      for (Symbol a = 0; a < d.alphabet().size(); ++a) {
        if (d.is_accepting(d.step(l, r, a))) {
          throw std::invalid_argument(
              "automaton accepts a tree whose root has a right child (not an unranked encoding)");
        }
      }
    }
  }

  const Product product = build_product(d, d_table);
  const auto table = detail::compute_witnesses(product.dta);
  const std::size_t m = product.dta.state_count();
  // Only flag-1 states can be roots of encodings.
  std::vector<bool> members(m), non_members(m);
  for (StateId x = 0; x < m; ++x) {
    const bool root_ok = product.right_empty[x];
    const bool acc = d.is_accepting(product.base[x]);
    members[x] = root_ok && acc;
    non_members[x] = root_ok && !acc;
  }

  auto zero = find_missing_pair(product, table, members);
  auto one = find_missing_pair(product, table, non_members);
  if (zero && one) throw std::logic_error("unranked language and its complement both miss a subtree");

  DensityVerdict verdict;
  const auto& hit = zero ? zero : one;
  if (!hit) return verdict;
  verdict.kind = zero ? DensityKind::zero : DensityKind::one;
  verdict.witness = Tree::join(hit->label, table.tree(hit->left), Tree{});
  return verdict;
}

}  // namespace sparsity
