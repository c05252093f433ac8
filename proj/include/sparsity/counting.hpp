#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "sparsity/dfa.hpp"
#include "sparsity/tree_automaton.hpp"

namespace sparsity {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt catalan(std::size_t n);

/// Number of trees of size n over σ labels avoiding a fixed subtree of size
/// m: a_0 = 1, a_n = σ·Σ a_j a_{n-1-j} − [n = m].
/// Throws std::invalid_argument if m or sigma is 0.
BigInt count_avoiding(std::size_t m, std::size_t n, std::size_t sigma);

/// All of a_0..a_n.
std::vector<BigInt> avoiding_sequence(std::size_t m, std::size_t n, std::size_t sigma);

/// |L(aut) ∩ B^Σ_n|. The empty tree is never accepted, so n = 0 gives 0.
BigInt count_accepted_trees(const Dta& aut, std::size_t n);

/// |L(d) ∩ Σ^n|.
BigInt count_accepted_words(const Dfa& d, std::size_t n);

struct DensityPoint {
  std::size_t n = 0;
  BigInt accepted;
  BigInt total;
  Rational ratio;
};

inline constexpr std::size_t kDefaultProfileCap = 200;

/// Exact Prob_n for n = 0..n_max. Throws CapExceeded if n_max > cap.
std::vector<DensityPoint> density_profile(const Dta& aut, std::size_t n_max,
                                          std::size_t cap = kDefaultProfileCap);

}  // namespace sparsity
