#pragma once

// Brute-force reference implementations and random instance generators used
// by the unit and acceptance tests. Nothing here shares code with the
// decision procedures beyond the basic data types.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sparsity/counting.hpp"
#include "sparsity/dfa.hpp"
#include "sparsity/tree.hpp"
#include "sparsity/tree_automaton.hpp"

namespace oracle {

using namespace sparsity;

inline std::string corpus(const std::string& name) { return std::string(SPARSITY_CORPUS_DIR) + "/" + name; }

// --- trees -----------------------------------------------------------------

/// Subtrees by address, computed from the address map only.
inline std::vector<Tree> all_subtrees(const Tree& t) {
  const auto addr = t.addresses();
  std::vector<Tree> out;
  for (const auto& [u, label] : addr) {
    std::map<std::string, Symbol> sub;
    for (const auto& [v, l] : addr) {
      if (v.compare(0, u.size(), u) == 0) sub.emplace(v.substr(u.size()), l);
    }
    out.push_back(Tree::from_addresses(sub));
  }
  return out;
}

inline bool contains(const Tree& t, const Tree& s) {
  if (s.empty()) return true;
  for (const auto& sub : all_subtrees(t)) {
    if (sub == s) return true;
  }
  return false;
}

/// Trees of size n without subtree s, by enumeration.
inline BigInt brute_avoiding(const Tree& s, std::size_t n, std::size_t sigma) {
  BigInt count = 0;
  for_each_tree(sigma, n, [&](const Tree& t) {
    if (!is_subtree(s, t)) ++count;
    return true;
  });
  return count;
}

/// Run of a deterministic automaton evaluated recursively over addresses.
inline StateId address_run(const Dta& aut, const std::map<std::string, Symbol>& addr, const std::string& u) {
  auto it = addr.find(u);
  if (it == addr.end()) return kBottom;
  return aut.step(address_run(aut, addr, u + "l"), address_run(aut, addr, u + "r"), it->second);
}

inline bool address_accepts(const Dta& aut, const Tree& t) {
  return aut.is_accepting(address_run(aut, t.addresses(), ""));
}

template <class Aut>
BigInt brute_accepted(const Aut& aut, std::size_t n) {
  BigInt count = 0;
  for_each_tree(aut.alphabet().size(), n, [&](const Tree& t) {
    if (accepts(aut, t)) ++count;
    return true;
  });
  return count;
}

// --- random automata -------------------------------------------------------

inline std::vector<std::string> names(std::size_t n, const std::string& prefix = "q") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline Alphabet letters(std::size_t sigma) {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < sigma; ++i) s.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet(s);
}

/// Nondeterministic, possibly incomplete; each tuple present with probability p.
inline TreeAutomaton random_nta(std::mt19937_64& rng, std::size_t states, std::size_t sigma, double p) {
  std::bernoulli_distribution keep(p), acc(0.4);
  std::vector<StateId> children{kBottom};
  for (StateId q = 0; q < states; ++q) children.push_back(q);
  std::vector<TreeTransition> tr;
  for (StateId l : children) {
    for (StateId r : children) {
      for (Symbol a = 0; a < sigma; ++a) {
        for (StateId q = 0; q < states; ++q) {
          if (keep(rng)) tr.push_back({l, r, a, q});
        }
      }
    }
  }
  std::vector<StateId> accepting;
  for (StateId q = 0; q < states; ++q) {
    if (acc(rng)) accepting.push_back(q);
  }
  return TreeAutomaton(letters(sigma), names(states), accepting, tr);
}

/// Complete deterministic with a dense table.
inline Dta random_dta(std::mt19937_64& rng, std::size_t states, std::size_t sigma) {
  std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(states - 1));
  std::bernoulli_distribution acc(0.5);
  std::vector<StateId> children{kBottom};
  for (StateId q = 0; q < states; ++q) children.push_back(q);
  std::vector<TreeTransition> tr;
  for (StateId l : children) {
    for (StateId r : children) {
      for (Symbol a = 0; a < sigma; ++a) tr.push_back({l, r, a, pick(rng)});
    }
  }
  std::vector<bool> accepting(states);
  for (std::size_t q = 0; q < states; ++q) accepting[q] = acc(rng);
  return Dta(letters(sigma), names(states), accepting, tr);
}

/// Same automaton with every explicit entry equal to the default removed.
inline Dta sparsify(const Dta& d, const std::vector<StateId>& defaults) {
  std::vector<TreeTransition> kept;
  for (const auto& t : d.explicit_transitions()) {
    if (t.target != defaults[t.symbol]) kept.push_back(t);
  }
  std::vector<std::optional<StateId>> def(defaults.begin(), defaults.end());
  return Dta(d.alphabet(), d.state_names(), d.accepting(), kept, def);
}

inline Dfa random_dfa(std::mt19937_64& rng, std::size_t states, std::size_t sigma) {
  std::uniform_int_distribution<DfaState> pick(0, static_cast<DfaState>(states - 1));
  std::bernoulli_distribution acc(0.3);
  std::vector<DfaState> delta(states * sigma);
  for (auto& t : delta) t = pick(rng);
  std::vector<bool> accepting(states);
  for (std::size_t q = 0; q < states; ++q) accepting[q] = acc(rng);
  return Dfa(letters(sigma), names(states), 0, accepting, delta);
}

// --- words -----------------------------------------------------------------

/// Infix completeness by propagating the set {δ̂(p, w) : p reachable} over
/// all words w: the language misses an infix iff some reachable set has no
/// state from which an accepting state is reachable.
inline bool infix_complete_by_subsets(const Dfa& d) {
  const std::size_t n = d.state_count();
  const std::size_t sigma = d.alphabet().size();
  // Co-reachability of A.
  std::vector<bool> coreach(n, false);
  for (DfaState q = 0; q < n; ++q) coreach[q] = d.is_accepting(q);
  for (bool changed = true; changed;) {
    changed = false;
    for (DfaState q = 0; q < n; ++q) {
      if (coreach[q]) continue;
      for (Symbol a = 0; a < sigma; ++a) {
        if (coreach[d.step(q, a)]) {
          coreach[q] = changed = true;
          break;
        }
      }
    }
  }
  // Reachable states by plain search.
  std::set<DfaState> reach{d.initial()};
  for (bool changed = true; changed;) {
    changed = false;
    for (DfaState q : std::set<DfaState>(reach)) {
      for (Symbol a = 0; a < sigma; ++a) changed |= reach.insert(d.step(q, a)).second;
    }
  }
  std::set<std::set<DfaState>> seen{reach};
  std::vector<std::set<DfaState>> queue{reach};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto cur = queue[i];
    if (std::none_of(cur.begin(), cur.end(), [&](DfaState q) { return coreach[q]; })) return false;
    for (Symbol a = 0; a < sigma; ++a) {
      std::set<DfaState> next;
      for (DfaState q : cur) next.insert(d.step(q, a));
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return true;
}

/// All words of length exactly n, shortlex order.
inline std::vector<Word> words_of_length(std::size_t sigma, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (Symbol a = 0; a < sigma; ++a) {
        Word x = w;
        x.push_back(a);
        next.push_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// w ∈ L(d)* by splitting DP.
inline bool in_star(const Dfa& d, const Word& w) {
  std::vector<bool> ok(w.size() + 1, false);
  ok[0] = true;
  for (std::size_t j = 1; j <= w.size(); ++j) {
    for (std::size_t i = 0; i < j && !ok[j]; ++i) {
      if (ok[i] && accepts(d, Word(w.begin() + i, w.begin() + j))) ok[j] = true;
    }
  }
  return ok[w.size()];
}

// --- unranked ----------------------------------------------------------------

// trees[n] = all unranked trees with exactly n nodes.
inline void trees_by_size(std::size_t sigma, std::size_t max_nodes, std::vector<std::vector<UnrankedTree>>& trees) {
  std::vector<std::vector<std::vector<UnrankedTree>>> forests(max_nodes + 1);
  trees.assign(max_nodes + 1, {});
  forests[0].push_back({});
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    for (const auto& kids : forests[n - 1]) {
      for (Symbol a = 0; a < sigma; ++a) trees[n].push_back({a, kids});
    }
    for (std::size_t k = 1; k <= n; ++k) {
      for (const auto& first : trees[k]) {
        for (const auto& rest : forests[n - k]) {
          std::vector<UnrankedTree> f{first};
          f.insert(f.end(), rest.begin(), rest.end());
          forests[n].push_back(std::move(f));
        }
      }
    }
  }
}

/// All unranked trees with 1..max_nodes nodes.
inline std::vector<UnrankedTree> unranked_trees(std::size_t sigma, std::size_t max_nodes) {
  std::vector<std::vector<UnrankedTree>> trees;
  trees_by_size(sigma, max_nodes, trees);
  std::vector<UnrankedTree> out;
  for (const auto& level : trees) out.insert(out.end(), level.begin(), level.end());
  return out;
}

inline void unranked_subtrees(const UnrankedTree& t, std::vector<UnrankedTree>& out) {
  out.push_back(t);
  for (const auto& c : t.children) unranked_subtrees(c, out);
}

struct UnrankedOracle {
  bool sparse = false;   // some small tree occurs in no accepted tree
  bool dense = false;    // some small tree occurs in no rejected tree
  std::set<std::vector<std::uint32_t>> in_members;  // keys of subtrees occurring in members
  std::set<std::vector<std::uint32_t>> in_non_members;
};

/// Flattened preorder (label, left size, right size) triples.
inline std::vector<std::uint32_t> key(const Tree& t) {
  std::vector<std::uint32_t> out;
  for (const auto& v : t.nodes()) out.insert(out.end(), {v.label, v.left_size, v.right_size});
  return out;
}

/// Searches all unranked trees with at most `max_nodes` nodes; a subtree
/// candidate must have at most `probe_nodes` nodes.
inline UnrankedOracle unranked_oracle(const TreeAutomaton& aut, std::size_t max_nodes, std::size_t probe_nodes) {
  UnrankedOracle o;
  const std::size_t sigma = aut.alphabet().size();
  for (const auto& t : unranked_trees(sigma, max_nodes)) {
    const bool member = accepts(aut, encode_unranked(t));
    std::vector<UnrankedTree> subs;
    unranked_subtrees(t, subs);
    for (const auto& s : subs) (member ? o.in_members : o.in_non_members).insert(key(encode_unranked(s)));
  }
  for (const auto& s : unranked_trees(sigma, probe_nodes)) {
    const auto k = key(encode_unranked(s));
    if (!o.in_members.count(k)) o.sparse = true;
    if (!o.in_non_members.count(k)) o.dense = true;
  }
  return o;
}

}  // namespace oracle
