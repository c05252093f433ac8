#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sparsity/alphabet.hpp"
#include "sparsity/scc.hpp"
#include "sparsity/tree.hpp"

namespace sparsity {

using StateId = std::uint32_t;

/// ⊥: the "state" of an absent child. Never a transition target.
inline constexpr StateId kBottom = std::numeric_limits<StateId>::max();

/// (left child, right child, label) → target. Children may be kBottom.
struct TreeTransition {
  StateId left;
  StateId right;
  Symbol symbol;
  StateId target;

  bool operator==(const TreeTransition&) const = default;
};

/// Bottom-up (possibly nondeterministic, possibly incomplete) tree automaton.
class TreeAutomaton {
public:
  /// Throws std::invalid_argument if a transition mentions an undeclared
  /// state or symbol, targets ⊥, or appears twice.
  TreeAutomaton(Alphabet alphabet, std::vector<std::string> states,
                std::vector<StateId> accepting, std::vector<TreeTransition> transitions);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::vector<std::string>& state_names() const noexcept { return states_; }
  std::optional<StateId> find_state(std::string_view name) const;
  bool is_accepting(StateId q) const { return accepting_.at(q); }
  const std::vector<TreeTransition>& transitions() const noexcept { return transitions_; }

private:
  Alphabet alphabet_;
  std::vector<std::string> states_;
  std::vector<bool> accepting_;
  std::vector<TreeTransition> transitions_;
};

/// Complete deterministic bottom-up tree automaton.
///
/// The transition function is stored sparsely: an explicit table plus an
/// optional default target per symbol that covers every (left, right) pair
/// not listed explicitly. A symbol without a default must have all
/// (|Q|+1)² pairs in the explicit table.
class DeterministicTreeAutomaton {
public:
  /// Throws std::invalid_argument on duplicate keys, undeclared states or
  /// symbols, or an incomplete transition function.
  DeterministicTreeAutomaton(Alphabet alphabet, std::vector<std::string> states,
                             std::vector<bool> accepting, std::vector<TreeTransition> table,
                             std::vector<std::optional<StateId>> default_targets = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::vector<std::string>& state_names() const noexcept { return states_; }
  std::optional<StateId> find_state(std::string_view name) const;
  bool is_accepting(StateId q) const { return q != kBottom && accepting_[q]; }
  const std::vector<bool>& accepting() const noexcept { return accepting_; }

  /// δ(left, right, a).
  StateId step(StateId left, StateId right, Symbol a) const;

  /// Explicit entries sorted by (left, right, symbol); kBottom sorts last.
  std::span<const TreeTransition> explicit_transitions() const noexcept { return table_; }
  const std::vector<std::optional<StateId>>& default_targets() const noexcept { return defaults_; }

  bool is_explicit(StateId left, StateId right, Symbol a) const;

private:
  const TreeTransition* lookup(StateId left, StateId right, Symbol a) const;

  Alphabet alphabet_;
  std::vector<std::string> states_;
  std::vector<bool> accepting_;
  std::vector<TreeTransition> table_;
  std::vector<std::optional<StateId>> defaults_;
};

using Dta = DeterministicTreeAutomaton;

// ---------------------------------------------------------------------------
// Runs

/// State reached at the root; kBottom exactly for the empty tree. Throws
/// std::invalid_argument on a foreign label.
StateId run(const Dta& aut, const Tree& t);

/// The empty tree is never accepted.
bool accepts(const Dta& aut, const Tree& t);

/// All states some run of a nondeterministic automaton can end in, sorted.
/// Empty for the empty tree.
std::vector<StateId> run_states(const TreeAutomaton& aut, const Tree& t);

bool accepts(const TreeAutomaton& aut, const Tree& t);

// ---------------------------------------------------------------------------
// Constructions

inline constexpr std::size_t kDefaultSubsetCap = std::size_t{1} << 16;

/// Reachable-subset construction. The result's states are exactly the
/// reachable subsets of Q, named after their members: a singleton keeps the
/// original name, the empty subset is "{}", larger subsets "{p|q}". Throws
/// CapExceeded beyond `max_states` subsets.
Dta determinize(const TreeAutomaton& aut, std::size_t max_states = kDefaultSubsetCap);

/// Minimal-size tree for every reachable state (ties broken by the canonical
/// tree order); unreachable states are absent. Minimality implies the
/// 2^|Q|-1 size bound.
std::map<StateId, Tree> reachable_witnesses(const TreeAutomaton& aut);
std::map<StateId, Tree> reachable_witnesses(const Dta& aut);

/// Edge q → q' iff δ(s,q,a) = q' or δ(q,s,a) = q' for some symbol a and some
/// s that is reachable or ⊥. Vertices are all states; unreachable states have
/// no edges.
Digraph state_graph(const Dta& aut);

/// Closed strongly connected components of the state graph restricted to
/// reachable states, each sorted, ordered by smallest member.
std::vector<std::vector<StateId>> find_sinks(const Dta& aut);

// ---------------------------------------------------------------------------
// Density verdicts

enum class DensityKind { zero, one, intermediate };

std::string to_string(DensityKind kind);

struct DensityVerdict {
  DensityKind kind = DensityKind::intermediate;
  /// Zero: every tree containing the witness is rejected.
  /// One: every tree containing the witness is accepted.
  std::optional<Tree> witness;
  /// Names of the sink states (of the deterministic automaton analysed).
  std::optional<std::vector<std::string>> sink;
};

/// Asymptotic density of L(aut) under the uniform distribution on B^Σ_n:
/// zero, one, or neither.
DensityVerdict decide_density(const TreeAutomaton& aut, std::size_t max_states = kDefaultSubsetCap);

/// Same for an automaton that is already deterministic. Unreachable states
/// are ignored.
DensityVerdict decide_density(const Dta& aut);

/// Density of an unranked tree language L given an automaton for its
/// first-child/next-sibling encoding L^♭. A zero verdict carries the
/// encoding conc(a, B, ∅) of an unranked tree that occurs in no member of L;
/// a one verdict carries one that occurs in no non-member. Throws
/// std::invalid_argument if the automaton accepts a tree whose root has a
/// right child.
DensityVerdict decide_unranked(const TreeAutomaton& aut, std::size_t max_states = kDefaultSubsetCap);

// ---------------------------------------------------------------------------
// Text format
//
//   alphabet: a,b
//   states: q0,q1
//   accepting: q1
//   trans: _,_,a -> q0      (one tuple per line; _ is ⊥)
//
// '#' starts a comment.

TreeAutomaton parse_tree_automaton(std::istream& in, const std::string& source);
TreeAutomaton load_tree_automaton(const std::string& path);

}  // namespace sparsity
