#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sparsity/alphabet.hpp"
#include "sparsity/counting.hpp"
#include "sparsity/errors.hpp"
#include "sparsity/tree.hpp"

using namespace sparsity;

namespace {

const Alphabet ab({"a", "b"});
const Alphabet abc({"a", "b", "c"});

Tree lit(const std::string& s, const Alphabet& al = ab) { return parse_tree(al, s); }

Tree random_tree(std::mt19937_64& rng, std::size_t max_n, std::size_t sigma) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_n)(rng);
  if (n == 0) return Tree{};
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  const Symbol a = std::uniform_int_distribution<Symbol>(0, static_cast<Symbol>(sigma - 1))(rng);
  return Tree::join(a, random_tree(rng, k, sigma), random_tree(rng, n - 1 - k, sigma));
}

UnrankedTree random_unranked(std::mt19937_64& rng, std::size_t& budget, std::size_t sigma) {
  UnrankedTree t{std::uniform_int_distribution<Symbol>(0, static_cast<Symbol>(sigma - 1))(rng), {}};
  --budget;
  while (budget > 0 && std::bernoulli_distribution(0.45)(rng)) t.children.push_back(random_unranked(rng, budget, sigma));
  return t;
}

}  // namespace

TEST_SUITE("trees") {
  TEST_CASE("conc builds nodes") {
    CHECK(conc(ab, 0, {}, {}) == Tree::leaf(0));
    const Tree t = conc(ab, 0, Tree::leaf(1), {});
    const std::map<std::string, Symbol> want{{"", 0}, {"l", 1}};
    CHECK(t.addresses() == want);
    CHECK_THROWS_AS(conc(ab, 7, {}, {}), std::invalid_argument);
  }

  TEST_CASE("size of conc") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      const Tree s = random_tree(rng, 8, 2), t = random_tree(rng, 8, 2);
      CHECK(conc(ab, 1, s, t).size() == 1 + s.size() + t.size());
    }
  }

  TEST_CASE("is_subtree examples") {
    CHECK(is_subtree(lit("a"), lit("a(a,())")));
    CHECK(is_subtree(lit("a(b,a)"), lit("a(b,a)")));
    CHECK_FALSE(is_subtree(lit("a"), lit("a(b,())")));
    CHECK(is_subtree(Tree{}, lit("b")));
    CHECK(is_subtree(Tree{}, Tree{}));
  }

  TEST_CASE("count_occurrences examples") {
    CHECK(count_occurrences(lit("a"), lit("b(a,a)")) == 2);
    CHECK(count_occurrences(lit("a"), lit("a")) == 1);
    CHECK(count_occurrences(lit("a"), lit("b")) == 0);
    CHECK_THROWS_AS(count_occurrences(Tree{}, lit("b")), std::invalid_argument);
  }

  TEST_CASE("is_subtree agrees with the address oracle") {
    for (std::size_t n = 0; n <= 4; ++n) {
      for (const auto& t : enumerate(ab, n)) {
        for (std::size_t m = 1; m <= 3; ++m) {
          for (const auto& s : enumerate(ab, m)) CHECK(is_subtree(s, t) == oracle::contains(t, s));
        }
      }
    }
  }

  TEST_CASE("is_subtree is reflexive and transitive") {
    std::mt19937_64 rng(12);
    int chains = 0;
    for (int i = 0; i < 200; ++i) {
      const Tree t = random_tree(rng, 8, 2);
      CHECK(is_subtree(t, t));
      if (t.empty()) continue;
      // Pick s ⪯ t and r ⪯ s at random positions; then r ⪯ t must hold.
      const Tree s = t.subtree(std::uniform_int_distribution<std::size_t>(0, t.size() - 1)(rng));
      const Tree r = s.subtree(std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng));
      const Tree u = random_tree(rng, 3, 2);
      CHECK(is_subtree(s, t));
      CHECK(is_subtree(r, t));
      if (is_subtree(u, s)) {
        CHECK(is_subtree(u, t));
        ++chains;
      }
    }
    CHECK(chains > 0);
  }

  TEST_CASE("occurrences exist iff subtree") {
    for (std::size_t n = 0; n <= 6; ++n) {
      for (const auto& t : enumerate(ab, n)) {
        for (std::size_t m = 1; m <= 2; ++m) {
          for (const auto& s : enumerate(ab, m)) CHECK((count_occurrences(s, t) >= 1) == is_subtree(s, t));
        }
      }
    }
  }

  TEST_CASE("occurrence recurrence") {
    const std::vector<Tree> patterns{lit("a"), lit("a(b,())"), lit("b((),a)")};
    for (const auto& s : patterns) {
      for (std::size_t n = 1; n <= 8; ++n) {
        for_each_tree(2, n, [&](const Tree& t) {
          const std::size_t expected =
              count_occurrences(s, t.left()) + count_occurrences(s, t.right()) + (t == s ? 1 : 0);
          CHECK(count_occurrences(s, t) == expected);
          return true;
        });
      }
    }
  }

  TEST_CASE("enumeration counts and order") {
    CHECK(enumerate(ab, 0) == std::vector<Tree>{Tree{}});
    CHECK(enumerate(ab, 2).size() == 8);
    CHECK(enumerate(Alphabet({"a"}), 3).size() == 5);
    for (std::size_t n = 0; n <= 10; ++n) {
      BigInt count = 0;
      for_each_tree(2, n, [&](const Tree&) {
        ++count;
        return true;
      });
      CHECK(count == catalan(n) * (BigInt(1) << n));
    }
    // Strictly increasing in canonical order, hence no duplicates.
    const auto trees = enumerate(ab, 5);
    for (std::size_t i = 1; i < trees.size(); ++i) CHECK(compare_canonical(trees[i - 1], trees[i]) < 0);
    CHECK_THROWS_AS(enumerate(ab, 13), CapExceeded);
  }

  TEST_CASE("canonical order: left size first") {
    const auto shapes = enumerate_shapes(2);
    REQUIRE(shapes.size() == 2);
    CHECK(shapes[0].left().empty());
    CHECK(shapes[1].right().empty());
    const auto trees = enumerate(ab, 1);
    CHECK(trees == std::vector<Tree>{lit("a"), lit("b")});
  }

  TEST_CASE("unranked encoding") {
    CHECK(encode_unranked({0, {}}) == Tree::leaf(0));
    const Tree t = encode_unranked({0, {{1, {}}, {2, {}}}});
    const std::map<std::string, Symbol> want{{"", 0}, {"l", 1}, {"lr", 2}};
    CHECK(t.addresses() == want);
    CHECK_THROWS_AS(decode_unranked(lit("a((),b)")), std::invalid_argument);
    CHECK_THROWS_AS(decode_unranked(Tree{}), std::invalid_argument);
  }

  TEST_CASE("unranked round trip") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
      std::size_t budget = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
      const UnrankedTree u = random_unranked(rng, budget, 3);
      const Tree b = encode_unranked(u);
      CHECK(b.size() == u.size());
      CHECK(b.right().empty());
      CHECK(decode_unranked(b) == u);
    }
  }

  TEST_CASE("literal round trip") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
      const Tree t = random_tree(rng, 12, 3);
      const std::string s = format_tree(abc, t);
      CHECK(s.find(' ') == std::string::npos);
      CHECK(parse_tree(abc, s) == t);
    }
    CHECK(format_tree(ab, Tree{}) == "()");
    CHECK(format_tree(ab, lit("a((),())")) == "a");
    CHECK(parse_tree(ab, " a ( b , ( ) ) ") == lit("a(b,())"));
    CHECK_THROWS_AS(parse_tree(ab, "c"), FormatError);
    CHECK_THROWS_AS(parse_tree(ab, "a(b)"), FormatError);
    CHECK_THROWS_AS(parse_tree(ab, "a(b,())x"), FormatError);
  }

  TEST_CASE("address maps must be prefix closed") {
    CHECK_THROWS_AS(Tree::from_addresses({{"", 0}, {"ll", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Tree::from_addresses({{"l", 0}}), std::invalid_argument);
    const Tree t = Tree::from_addresses({{"", 0}, {"r", 1}, {"rl", 0}});
    CHECK(format_tree(ab, t) == "a((),b(a,()))");
    for (const auto& [u, label] : t.addresses()) {
      if (!u.empty()) CHECK(t.addresses().count(u.substr(0, u.size() - 1)) == 1);
    }
  }
}
