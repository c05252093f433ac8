#pragma once

#include <cstdint>
#include <random>

#include "sparsity/alphabet.hpp"
#include "sparsity/omega.hpp"
#include "sparsity/tree.hpp"
#include "sparsity/tree_automaton.hpp"

namespace sparsity {

/// The generator behind every sampler: 64-bit Mersenne twister.
using Rng = std::mt19937_64;

/// Stream-split rule: trial (or worker) i of a run with master seed s uses
/// seed derive_seed(s, i), a splitmix64 finaliser of s and i.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

inline constexpr std::size_t kDefaultSampleCap = 1'000'000;

/// Exactly uniform over B^Σ_n. Throws CapExceeded above `cap`.
Tree sample_uniform_tree(const Alphabet& alphabet, std::size_t n, Rng& rng, std::size_t cap = kDefaultSampleCap);
Tree sample_uniform_tree(const Alphabet& alphabet, std::size_t n, std::uint64_t seed,
                         std::size_t cap = kDefaultSampleCap);

/// Random binary search tree shape with iid labels. Throws
/// std::invalid_argument for n = 0, CapExceeded above `cap`.
Tree sample_bst(const Alphabet& alphabet, std::size_t n, Rng& rng, std::size_t cap = kDefaultSampleCap);
Tree sample_bst(const Alphabet& alphabet, std::size_t n, std::uint64_t seed, std::size_t cap = kDefaultSampleCap);

Word sample_word(const Alphabet& alphabet, std::size_t n, Rng& rng);
Word sample_word(const Alphabet& alphabet, std::size_t n, std::uint64_t seed);

struct EstimateReport {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double point = 0.0;
  double standard_error = 0.0;
};

/// Adds up counts and recomputes point and standard error.
EstimateReport merge(const EstimateReport& a, const EstimateReport& b);
EstimateReport make_report(std::uint64_t trials, std::uint64_t successes);

enum class TreeDistribution { uniform, bst };

/// Trials [first, first + count) of the run with the given master seed.
/// Splitting a run into consecutive ranges and merging gives the same counts.
EstimateReport estimate_tree_density_range(const Dta& aut, std::size_t n, std::uint64_t first, std::uint64_t count,
                                           std::uint64_t seed, TreeDistribution dist);

/// `jobs` threads; the result does not depend on `jobs`.
EstimateReport estimate_tree_density(const Dta& aut, std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                     TreeDistribution dist, unsigned jobs = 1);

/// Fraction of trials in which A′, after reading `prefix`, visits its marked
/// state at least twice while reading `horizon` random letters.
EstimateReport estimate_marked_recurrence(const LoopAutomaton& loop, const Word& prefix, std::size_t horizon,
                                          std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

}  // namespace sparsity
