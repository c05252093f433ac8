#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>

#include "oracles.hpp"
#include "sparsity/counting.hpp"
#include "sparsity/errors.hpp"
#include "sparsity/sampling.hpp"

using namespace sparsity;

namespace {

const Alphabet ab({"a", "b"});

/// Pearson statistic against equal expected counts must stay below the
/// 1 - alpha quantile.
bool chi_square_uniform(const std::map<std::string, std::uint64_t>& counts, std::size_t outcomes,
                        std::uint64_t samples, double alpha = 1e-3) {
  if (counts.size() != outcomes) return false;
  if (outcomes == 1) return true;
  const double expected = static_cast<double>(samples) / static_cast<double>(outcomes);
  double stat = 0;
  for (const auto& [k, c] : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(outcomes - 1));
  return stat < boost::math::quantile(boost::math::complement(dist, alpha));
}

double ratio_as_double(const Rational& r) { return r.convert_to<double>(); }

Dta load_det(const std::string& name) { return determinize(load_tree_automaton(oracle::corpus(name))); }

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("uniform sampler: small sizes") {
    CHECK(sample_uniform_tree(ab, 0, 1).empty());
    CHECK_THROWS_AS(sample_uniform_tree(ab, 11, 1, 10), CapExceeded);
    std::map<std::string, std::uint64_t> counts;
    Rng rng(61);
    for (int i = 0; i < 10000; ++i) ++counts[format_tree(ab, sample_uniform_tree(ab, 1, rng))];
    CHECK(chi_square_uniform(counts, 2, 10000));
  }

  TEST_CASE("uniform sampler: full census up to size 4") {
    Rng rng(62);
    for (std::size_t sigma = 1; sigma <= 2; ++sigma) {
      const Alphabet al = oracle::letters(sigma);
      for (std::size_t n = 1; n <= 4; ++n) {
        const std::size_t outcomes = static_cast<std::size_t>(catalan(n)) << (sigma == 2 ? n : 0);
        const std::uint64_t samples = 1000 * outcomes;
        std::map<std::string, std::uint64_t> counts;
        for (std::uint64_t i = 0; i < samples; ++i) ++counts[format_tree(al, sample_uniform_tree(al, n, rng))];
        CAPTURE(n);
        CAPTURE(sigma);
        CHECK(chi_square_uniform(counts, outcomes, samples));
      }
    }
  }

  TEST_CASE("large trees use the growth process and stay uniform in shape") {
    // P(root has empty left subtree) = C_{n-1}/C_n.
    const std::size_t n = 300;
    const double exact = ratio_as_double(Rational(catalan(n - 1), catalan(n)));
    const std::uint64_t trials = 20000;
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const Tree tree = sample_uniform_tree(ab, n, derive_seed(63, t));
      REQUIRE(tree.size() == n);
      hits += tree.left().empty();
    }
    const auto r = make_report(trials, hits);
    CHECK(std::abs(r.point - exact) <= 4 * r.standard_error);
  }

  TEST_CASE("bst sampler") {
    CHECK_THROWS_AS(sample_bst(ab, 0, 1), std::invalid_argument);
    CHECK(sample_bst(ab, 1, 3).size() == 1);
    Rng rng(64);
    std::uint64_t left_chain = 0;
    for (int i = 0; i < 10000; ++i) left_chain += sample_bst(ab, 2, rng).right().empty();
    const auto r = make_report(10000, left_chain);
    CHECK(std::abs(r.point - 0.5) <= 4 * r.standard_error);
  }

  TEST_CASE("bst left-size marginal is uniform") {
    Rng rng(65);
    std::map<std::string, std::uint64_t> counts;
    for (int i = 0; i < 40000; ++i) ++counts[std::to_string(sample_bst(ab, 20, rng).left().size())];
    CHECK(chi_square_uniform(counts, 20, 40000));
  }

  TEST_CASE("words") {
    CHECK(sample_word(ab, 0, 7).empty());
    CHECK(sample_word(ab, 50, 7) == sample_word(ab, 50, 7));
    std::uint64_t as = 0;
    const std::uint64_t total = 1000000;
    for (std::uint64_t t = 0; t < 1000; ++t) {
      for (Symbol x : sample_word(ab, 1000, derive_seed(66, t))) as += x == 0;
    }
    const auto r = make_report(total, as);
    CHECK(std::abs(r.point - 0.5) <= 5 * r.standard_error);
  }

  TEST_CASE("determinism") {
    CHECK(sample_uniform_tree(ab, 30, 123) == sample_uniform_tree(ab, 30, 123));
    CHECK(sample_bst(ab, 30, 123) == sample_bst(ab, 30, 123));
    CHECK(sample_uniform_tree(ab, 400, 5) == sample_uniform_tree(ab, 400, 5));
    CHECK_FALSE(sample_uniform_tree(ab, 30, 123) == sample_uniform_tree(ab, 30, 124));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  }

  TEST_CASE("report") {
    const auto r = make_report(4, 1);
    CHECK(r.point == 0.25);
    CHECK(r.standard_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 4)));
    const auto m = merge(make_report(10, 3), make_report(30, 7));
    CHECK(m.trials == 40);
    CHECK(m.successes == 10);
    CHECK(make_report(0, 0).point == 0.0);
  }

  TEST_CASE("estimates match the exact ratio") {
    for (const auto& name : {"avoid_leaf_a.ta", "contains_leaf_a.ta", "empty_left.ta", "size_parity.ta",
                             "all_trees.ta", "empty_language.ta"}) {
      const Dta d = load_det(name);
      const auto profile = density_profile(d, 40);
      for (std::size_t n : {10, 40}) {
        CAPTURE(name);
        CAPTURE(n);
        const double exact = ratio_as_double(profile[n].ratio);
        const auto r = estimate_tree_density(d, n, 4000, 67, TreeDistribution::uniform);
        if (exact == 0.0 || exact == 1.0) {
          CHECK(r.point == exact);
        } else {
          CHECK(std::abs(r.point - exact) <= 4 * r.standard_error);
        }
      }
    }
  }

  TEST_CASE("all trees: point is exactly one") {
    const Dta d = load_det("all_trees.ta");
    CHECK(estimate_tree_density(d, 25, 500, 1, TreeDistribution::uniform).point == 1.0);
    CHECK(estimate_tree_density(d, 25, 500, 1, TreeDistribution::bst).point == 1.0);
  }

  TEST_CASE("example R under both distributions") {
    const Dta r = load_det("empty_left.ta");
    const double exact = ratio_as_double(Rational(catalan(39), catalan(40)));
    const auto uni = estimate_tree_density(r, 40, 20000, 68, TreeDistribution::uniform);
    CHECK(std::abs(uni.point - exact) <= 3 * uni.standard_error);
    const auto bst = estimate_tree_density(r, 50, 20000, 69, TreeDistribution::bst);
    CHECK(std::abs(bst.point - 0.02) <= 3 * bst.standard_error);
  }

  TEST_CASE("splitting trials does not change totals") {
    const Dta r = load_det("empty_left.ta");
    const auto single = estimate_tree_density(r, 20, 999, 70, TreeDistribution::bst, 1);
    for (unsigned jobs : {2u, 3u, 7u}) {
      const auto multi = estimate_tree_density(r, 20, 999, 70, TreeDistribution::bst, jobs);
      CHECK(multi.successes == single.successes);
      CHECK(multi.trials == single.trials);
    }
    const auto parts = merge(estimate_tree_density_range(r, 20, 0, 400, 70, TreeDistribution::bst),
                             merge(estimate_tree_density_range(r, 20, 400, 1, 70, TreeDistribution::bst),
                                   estimate_tree_density_range(r, 20, 401, 598, 70, TreeDistribution::bst)));
    CHECK(parts.successes == single.successes);
  }
}
