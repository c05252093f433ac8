#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsity/alphabet.hpp"

namespace sparsity {

using DfaState = std::uint32_t;

/// Complete deterministic finite automaton over words.
class Dfa {
public:
  /// `delta` is row-major: delta[q * |Σ| + a]. Throws std::invalid_argument
  /// on size mismatches or undeclared targets.
  Dfa(Alphabet alphabet, std::vector<std::string> states, DfaState initial, std::vector<bool> accepting,
      std::vector<DfaState> delta);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::string& state_name(DfaState q) const { return states_.at(q); }
  const std::vector<std::string>& state_names() const noexcept { return states_; }
  std::optional<DfaState> find_state(std::string_view name) const;
  DfaState initial() const noexcept { return initial_; }
  bool is_accepting(DfaState q) const { return accepting_.at(q); }
  const std::vector<bool>& accepting() const noexcept { return accepting_; }
  DfaState step(DfaState q, Symbol a) const { return delta_[q * alphabet_.size() + a]; }
  const std::vector<DfaState>& delta() const noexcept { return delta_; }

private:
  Alphabet alphabet_;
  std::vector<std::string> states_;
  DfaState initial_;
  std::vector<bool> accepting_;
  std::vector<DfaState> delta_;
};

/// δ̂(from, w). Throws std::invalid_argument on a foreign letter.
DfaState run_dfa(const Dfa& d, const Word& w, std::optional<DfaState> from = std::nullopt);
bool accepts(const Dfa& d, const Word& w);

/// States reachable from the initial state, in state order.
std::vector<bool> reachable_states(const Dfa& d);

/// Shortlex-least word leading from `from` to a state satisfying `goal`.
template <class Pred>
std::optional<Word> shortest_word(const Dfa& d, DfaState from, Pred goal);

struct ReachabilityPartition {
  /// Classes of reachable states, each sorted, numbered by smallest member.
  std::vector<std::vector<DfaState>> classes;
  std::vector<bool> closed;
  /// Class of each state, or kNoClass for unreachable states.
  std::vector<std::uint32_t> class_of;
  static constexpr std::uint32_t kNoClass = UINT32_MAX;
};

ReachabilityPartition reachability_partition(const Dfa& d);

/// Closed classes computed over all states, reachable or not.
ReachabilityPartition full_partition(const Dfa& d);

bool is_infix_complete(const Dfa& d);

struct UniversalPrefix {
  Word x;
  std::size_t k = 0;
  std::uint32_t target_class = 0;
  DfaState target_state = 0;
};

/// Throws std::invalid_argument if `d` is not infix complete.
UniversalPrefix universal_prefix(const Dfa& d);

/// Shortlex-least y with x·v·y ∈ L(d).
Word completing_suffix(const Dfa& d, const UniversalPrefix& up, const Word& v);

/// v such that δ̂(q, v) lies in a closed class for every state q.
Word trapping_word(const Dfa& d);

inline constexpr std::size_t kDefaultStarCap = std::size_t{1} << 16;

/// DFA for L(d)*. State 0 is initial and accepting. Throws CapExceeded
/// beyond `max_states` subsets.
Dfa star_dfa(const Dfa& d, std::size_t max_states = kDefaultStarCap);

// Text format
//
//   alphabet: a,b
//   states: q0,q1,dead
//   initial: q0
//   accepting: q0
//   trans: q0,a -> q1       (one per line, total map required)

Dfa parse_dfa(std::istream& in, const std::string& source);
Dfa load_dfa(const std::string& path);

// ---------------------------------------------------------------------------

template <class Pred>
std::optional<Word> shortest_word(const Dfa& d, DfaState from, Pred goal) {
  const std::size_t n = d.state_count();
  constexpr DfaState kNone = UINT32_MAX;
  std::vector<DfaState> parent(n, kNone);
  std::vector<Symbol> via(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<DfaState> queue{from};
  seen[from] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const DfaState q = queue[head];
    if (goal(q)) {
      Word w;
      for (DfaState x = q; x != from; x = parent[x]) w.push_back(via[x]);
      return Word(w.rbegin(), w.rend());
    }
    for (Symbol a = 0; a < d.alphabet().size(); ++a) {
      const DfaState t = d.step(q, a);
      if (seen[t]) continue;
      seen[t] = true;
      parent[t] = q;
      via[t] = a;
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

}  // namespace sparsity
