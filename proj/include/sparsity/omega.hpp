#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsity/dfa.hpp"

namespace sparsity {

/// ⋃ U_i V_i^ω over a common alphabet.
class OmegaLanguage {
public:
  /// Throws std::invalid_argument on an empty list or mismatched alphabets.
  explicit OmegaLanguage(std::vector<std::pair<Dfa, Dfa>> pairs);

  const std::vector<std::pair<Dfa, Dfa>>& pairs() const noexcept { return pairs_; }
  const Alphabet& alphabet() const { return pairs_.front().first.alphabet(); }

private:
  std::vector<std::pair<Dfa, Dfa>> pairs_;
};

/// A′: V* plus states tracking the letters of w from q̃. `marked` is q′_ℓ,
/// or q̃ itself when w is empty.
struct LoopAutomaton {
  Dfa automaton;
  DfaState marked;
  DfaState q_tilde;
  Word w;
};

struct CylinderWitness {
  std::size_t pair_index = 0;
  Word u;
  Word w;
  Word x;  // u·w
  LoopAutomaton loop;
  std::string guarantee;
};

enum class MeasureKind { zero, positive };

std::string to_string(MeasureKind kind);

struct MeasureVerdict {
  MeasureKind kind = MeasureKind::zero;
  std::optional<CylinderWitness> witness;
};

MeasureVerdict decide_measure(const OmegaLanguage& language, std::size_t max_states = kDefaultStarCap);

/// Throws std::invalid_argument if L(U) is empty or V* is not infix complete.
CylinderWitness witness_prefix(const Dfa& u, const Dfa& v, std::size_t max_states = kDefaultStarCap);

/// Throws std::invalid_argument unless δ̂(q0, w) lies in a closed class with
/// an accepting state, and, for empty w, q0 is that class's first accepting
/// state.
LoopAutomaton loop_automaton(const Dfa& vstar, const Word& w);

struct MarkovChainView {
  /// Reachable states in state order; indices below refer to this list.
  std::vector<DfaState> states;
  /// p[i][j] = (#letters a with δ(states[i], a) = states[j]) / |Σ|.
  std::vector<std::vector<double>> p;
  /// Closed classes, as lists of indices into `states`.
  std::vector<std::vector<std::size_t>> closed_classes;
};

MarkovChainView markov_view(const Dfa& d);

/// Concatenation of x·v·y ∈ L(V*) over all v ∈ Σ^{≤budget} in shortlex
/// order. Throws std::invalid_argument if V* is not infix complete.
Word rich_prefix_stream(const Dfa& v, std::size_t budget, std::size_t max_states = kDefaultStarCap);

// File format: one "pair: <U.dfa>, <V.dfa>" per line, '#' comments. Paths
// are relative to the directory of the omega file.
OmegaLanguage load_omega(const std::string& path);

}  // namespace sparsity
