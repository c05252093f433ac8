#include "sparsity/counting.hpp"

#include <stdexcept>
#include <string>

#include "sparsity/errors.hpp"

namespace sparsity {

BigInt catalan(std::size_t n) {
  BigInt c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<BigInt> avoiding_sequence(std::size_t m, std::size_t n, std::size_t sigma) {
  if (m == 0) throw std::invalid_argument("avoided tree must be non-empty (m >= 1)");
  if (sigma == 0) throw std::invalid_argument("alphabet size must be >= 1");
  std::vector<BigInt> a(n + 1);
  a[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    BigInt sum = 0;
    for (std::size_t j = 0; j < k; ++j) sum += a[j] * a[k - 1 - j];
    a[k] = sum * sigma;
    if (k == m) a[k] -= 1;
  }
  return a;
}

BigInt count_avoiding(std::size_t m, std::size_t n, std::size_t sigma) {
  return avoiding_sequence(m, n, sigma)[n];
}

namespace {

// counts[k][q] = number of trees of size k whose run ends in q.
std::vector<std::vector<BigInt>> state_counts(const Dta& aut, std::size_t n_max) {
  const std::size_t n = aut.state_count();
  const std::size_t sigma = aut.alphabet().size();
  std::vector<std::vector<BigInt>> counts(n_max + 1, std::vector<BigInt>(n));
  std::vector<BigInt> totals(n_max + 1);  // all trees of size k, ⊥ included at k = 0
  totals[0] = 1;
  const BigInt zero = 0, one = 1;
  auto count = [&](StateId q, std::size_t k) -> const BigInt& {
    if (q == kBottom) return k == 0 ? one : zero;
    return counts[k][q];
  };
  const auto& defaults = aut.default_targets();
  for (std::size_t k = 1; k <= n_max; ++k) {
    auto& row = counts[k];
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = k - 1 - i;
      std::vector<BigInt> explicit_sum(sigma);
      for (const auto& t : aut.explicit_transitions()) {
        const BigInt& l = count(t.left, i);
        if (l.is_zero()) continue;
        const BigInt& r = count(t.right, j);
        if (r.is_zero()) continue;
        const BigInt ways = l * r;
        row[t.target] += ways;
        explicit_sum[t.symbol] += ways;
      }
      for (Symbol a = 0; a < sigma; ++a) {
        if (defaults[a]) row[*defaults[a]] += totals[i] * totals[j] - explicit_sum[a];
      }
    }
    for (const auto& c : row) totals[k] += c;
  }
  return counts;
}

}  // namespace

BigInt count_accepted_trees(const Dta& aut, std::size_t n) {
  const auto counts = state_counts(aut, n);
  BigInt out = 0;
  for (StateId q = 0; q < aut.state_count(); ++q) {
    if (aut.is_accepting(q)) out += counts[n][q];
  }
  return out;
}

BigInt count_accepted_words(const Dfa& d, std::size_t n) {
  std::vector<BigInt> cur(d.state_count()), next(d.state_count());
  cur[d.initial()] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (auto& x : next) x = 0;
    for (DfaState q = 0; q < d.state_count(); ++q) {
      if (cur[q] == 0) continue;
      for (Symbol a = 0; a < d.alphabet().size(); ++a) next[d.step(q, a)] += cur[q];
    }
    std::swap(cur, next);
  }
  BigInt out = 0;
  for (DfaState q = 0; q < d.state_count(); ++q) {
    if (d.is_accepting(q)) out += cur[q];
  }
  return out;
}

std::vector<DensityPoint> density_profile(const Dta& aut, std::size_t n_max, std::size_t cap) {
  if (n_max > cap) {
    throw CapExceeded("profile length " + std::to_string(n_max) + " exceeds cap " + std::to_string(cap));
  }
  const auto counts = state_counts(aut, n_max);
  std::vector<DensityPoint> out;
  BigInt power = 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    DensityPoint p;
    p.n = n;
    for (StateId q = 0; q < aut.state_count(); ++q) {
      if (aut.is_accepting(q)) p.accepted += counts[n][q];
    }
    p.total = catalan(n) * power;
    p.ratio = Rational(p.accepted, p.total);
    out.push_back(std::move(p));
    power *= aut.alphabet().size();
  }
  return out;
}

}  // namespace sparsity
