#include "sparsity/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <exception>
#include <mutex>
#include <thread>

#include "sparsity/counting.hpp"
#include "sparsity/dfa.hpp"
#include "sparsity/errors.hpp"

namespace sparsity {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Largest size sampled by exact Catalan splits; Rémy's growth process takes
// over above it (also exactly uniform, but without big integers).
constexpr std::size_t kCatalanSplitLimit = 256;

const std::vector<BigInt>& catalan_table() {
  static const std::vector<BigInt> table = [] {
    std::vector<BigInt> t;
    for (std::size_t i = 0; i <= kCatalanSplitLimit; ++i) t.push_back(catalan(i));
    return t;
  }();
  return table;
}

BigInt random_below(const BigInt& bound, Rng& rng) {
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  while (true) {
    BigInt x = 0;
    for (std::size_t got = 0; got < bits; got += 64) x = (x << 64) | BigInt(rng());
    x &= (BigInt(1) << bits) - 1;
    if (x < bound) return x;
  }
}

Symbol random_label(const Alphabet& alphabet, Rng& rng) {
  return std::uniform_int_distribution<Symbol>(0, static_cast<Symbol>(alphabet.size() - 1))(rng);
}

template <class ChooseLeft>
Tree grow_by_splits(const Alphabet& alphabet, std::size_t n, Rng& rng, ChooseLeft choose_left) {
  std::vector<Tree::Node> nodes;
  nodes.reserve(n);
  std::vector<std::size_t> pending{n};
  while (!pending.empty()) {
    const std::size_t m = pending.back();
    pending.pop_back();
    if (m == 0) continue;
    const std::size_t k = choose_left(m);
    nodes.push_back({random_label(alphabet, rng), static_cast<std::uint32_t>(k),
                     static_cast<std::uint32_t>(m - 1 - k)});
    pending.push_back(m - 1 - k);
    pending.push_back(k);
  }
  return Tree::from_preorder(std::move(nodes));
}

Tree remy(const Alphabet& alphabet, std::size_t n, Rng& rng) {
  // Full binary tree with n internal nodes; ids < 2n+1, kNone for "no node".
  constexpr std::uint32_t kNone = UINT32_MAX;
  const std::size_t total = 2 * n + 1;
  std::vector<std::uint32_t> left(total, kNone), right(total, kNone), parent(total, kNone);
  std::uint32_t root = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto x = static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, 2 * k - 2)(rng));
    const auto inner = static_cast<std::uint32_t>(2 * k - 1);
    const auto leaf = static_cast<std::uint32_t>(2 * k);
    const std::uint32_t p = parent[x];
    if (p == kNone) {
      root = inner;
    } else if (left[p] == x) {
      left[p] = inner;
    } else {
      right[p] = inner;
    }
    parent[inner] = p;
    if (rng() & 1) {
      left[inner] = x;
      right[inner] = leaf;
    } else {
      left[inner] = leaf;
      right[inner] = x;
    }
    parent[x] = parent[leaf] = inner;
  }
  // Internal-node counts below each node, then a preorder walk.
  std::vector<std::uint32_t> internal(total, 0);
  std::vector<std::uint32_t> order;
  order.reserve(total);
  std::vector<std::uint32_t> stack{root};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    order.push_back(v);
    if (left[v] != kNone) {
      stack.push_back(right[v]);
      stack.push_back(left[v]);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (left[*it] != kNone) internal[*it] = 1 + internal[left[*it]] + internal[right[*it]];
  }
  std::vector<Tree::Node> nodes;
  nodes.reserve(n);
  for (auto v : order) {
    if (left[v] == kNone) continue;
    nodes.push_back({random_label(alphabet, rng), internal[left[v]], internal[right[v]]});
  }
  return Tree::from_preorder(std::move(nodes));
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw CapExceeded("sample size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

}  // namespace

Tree sample_uniform_tree(const Alphabet& alphabet, std::size_t n, Rng& rng, std::size_t cap) {
  check_cap(n, cap);
  if (n > kCatalanSplitLimit) return remy(alphabet, n, rng);
  const auto& c = catalan_table();
  return grow_by_splits(alphabet, n, rng, [&](std::size_t m) {
    BigInt r = random_below(c[m], rng);
    for (std::size_t k = 0;; ++k) {
      const BigInt weight = c[k] * c[m - 1 - k];
      if (r < weight) return k;
      r -= weight;
    }
  });
}

Tree sample_uniform_tree(const Alphabet& alphabet, std::size_t n, std::uint64_t seed, std::size_t cap) {
  Rng rng(seed);
  return sample_uniform_tree(alphabet, n, rng, cap);
}

Tree sample_bst(const Alphabet& alphabet, std::size_t n, Rng& rng, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("BST sample size must be >= 1");
  check_cap(n, cap);
  return grow_by_splits(alphabet, n, rng, [&](std::size_t m) {
    return std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
  });
}

Tree sample_bst(const Alphabet& alphabet, std::size_t n, std::uint64_t seed, std::size_t cap) {
  Rng rng(seed);
  return sample_bst(alphabet, n, rng, cap);
}

Word sample_word(const Alphabet& alphabet, std::size_t n, Rng& rng) {
  Word w(n);
  for (auto& a : w) a = random_label(alphabet, rng);
  return w;
}

Word sample_word(const Alphabet& alphabet, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_word(alphabet, n, rng);
}

EstimateReport make_report(std::uint64_t trials, std::uint64_t successes) {
  EstimateReport r;
  r.trials = trials;
  r.successes = successes;
  if (trials > 0) {
    r.point = static_cast<double>(successes) / static_cast<double>(trials);
    r.standard_error = std::sqrt(r.point * (1.0 - r.point) / static_cast<double>(trials));
  }
  return r;
}

EstimateReport merge(const EstimateReport& a, const EstimateReport& b) {
  return make_report(a.trials + b.trials, a.successes + b.successes);
}

namespace {

template <class Trial>
EstimateReport parallel_trials(std::uint64_t trials, unsigned jobs, Trial trial_range) {
  if (jobs <= 1 || trials < 2) return trial_range(0, trials);
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, trials));
  std::vector<EstimateReport> parts(jobs);
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::uint64_t first = trials * j / jobs;
    const std::uint64_t last = trials * (j + 1) / jobs;
    workers.emplace_back([&, j, first, last] {
      try {
        parts[j] = trial_range(first, last - first);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  EstimateReport total;
  for (const auto& p : parts) total = merge(total, p);
  return total;
}

}  // namespace

EstimateReport estimate_tree_density_range(const Dta& aut, std::size_t n, std::uint64_t first, std::uint64_t count,
                                           std::uint64_t seed, TreeDistribution dist) {
  std::uint64_t hits = 0;
  for (std::uint64_t t = first; t < first + count; ++t) {
    Rng rng(derive_seed(seed, t));
    const Tree tree = dist == TreeDistribution::uniform ? sample_uniform_tree(aut.alphabet(), n, rng)
                                                        : sample_bst(aut.alphabet(), n, rng);
    if (accepts(aut, tree)) ++hits;
  }
  return make_report(count, hits);
}

EstimateReport estimate_tree_density(const Dta& aut, std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                     TreeDistribution dist, unsigned jobs) {
  return parallel_trials(trials, jobs, [&](std::uint64_t first, std::uint64_t count) {
    return estimate_tree_density_range(aut, n, first, count, seed, dist);
  });
}

EstimateReport estimate_marked_recurrence(const LoopAutomaton& loop, const Word& prefix, std::size_t horizon,
                                          std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  const Dfa& a = loop.automaton;
  const DfaState start = run_dfa(a, prefix);
  return parallel_trials(trials, jobs, [&](std::uint64_t first, std::uint64_t count) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = first; t < first + count; ++t) {
      Rng rng(derive_seed(seed, t));
      DfaState q = start;
      std::size_t visits = 0;
      for (std::size_t h = 0; h < horizon && visits < 2; ++h) {
        q = a.step(q, random_label(a.alphabet(), rng));
        if (q == loop.marked) ++visits;
      }
      if (visits >= 2) ++hits;
    }
    return make_report(count, hits);
  });
}

}  // namespace sparsity
