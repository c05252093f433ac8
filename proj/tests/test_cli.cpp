#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result sparsity_cli(std::vector<std::string> args) {
  for (auto& a : args) {
    if (a.starts_with("@")) a = oracle::corpus(a.substr(1));
  }
  std::ostringstream out, err;
  const int code = sparsity::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("documented examples") {
    auto r = sparsity_cli({"tree", "density", "@avoid_leaf_a.ta"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"kind\":\"zero\",\"witness\":\"a\",\"sink\":[\"dead\"]}\n");

    r = sparsity_cli({"word", "infix-complete", "@contains_ab.dfa"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"infix_complete\":true,\"x\":\"ab\",\"k\":0}\n");

    r = sparsity_cli({"tree", "density", "missing.ta"});
    CHECK(r.code == 2);
    CHECK(r.err.find("missing.ta") != std::string::npos);
    CHECK(r.out.empty());
  }

  TEST_CASE("verdict outputs") {
    CHECK(sparsity_cli({"tree", "density", "@empty_left.ta"}).out ==
          "{\"kind\":\"intermediate\",\"witness\":null,\"sink\":null}\n");
    CHECK(sparsity_cli({"unranked", "density", "@unranked_no_a_leaf.ta"}).out ==
          "{\"kind\":\"zero\",\"witness\":\"a\",\"sink\":null}\n");
    CHECK(sparsity_cli({"word", "infix-complete", "@ab_star.dfa"}).out == "{\"infix_complete\":false}\n");
    CHECK(sparsity_cli({"word", "universal-prefix", "@ends_ab.dfa", "--word", "a"}).out ==
          "{\"x\":\"ab\",\"k\":2,\"state\":\"e2\",\"v\":\"a\",\"y\":\"b\"}\n");
    CHECK(sparsity_cli({"omega", "measure", "@ab_infinitely_often.omega"}).out ==
          "{\"kind\":\"positive\",\"pair\":0,\"x\":\"a\"}\n");
    CHECK(sparsity_cli({"omega", "measure", "@aa_blocks.omega"}).out == "{\"kind\":\"zero\",\"pair\":null,\"x\":null}\n");

    const auto w = lines(sparsity_cli({"tree", "witness", "@empty_left.ta"}).out);
    REQUIRE(w.size() == 4);
    CHECK(w[3] == "{\"state\":\"q2\",\"witness\":\"a((),a)\",\"size\":2}");
  }

  TEST_CASE("csv profile") {
    const auto r = sparsity_cli({"tree", "density", "@avoid_leaf_a.ta", "--exact-upto", "3"});
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "n,accepted,total,ratio");
    CHECK(l[1] == "0,0,1,0/1|0.0000000000000000e+00");
    CHECK(l[3] == "2,4,8,1/2|5.0000000000000000e-01");
    // Enumeration and DP print the same table.
    CHECK(sparsity_cli({"tree", "count", "@empty_left.ta", "--exact-upto", "6"}).out ==
          sparsity_cli({"tree", "count", "@empty_left.ta", "--exact-upto", "6", "--enumerate"}).out);
  }

  TEST_CASE("sampling outputs") {
    const auto r = sparsity_cli({"tree", "sample", "--size", "7", "--alphabet", "a,b", "--count", "5", "--seed", "3"});
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    const sparsity::Alphabet ab({"a", "b"});
    for (const auto& t : l) CHECK(sparsity::parse_tree(ab, t).size() == 7);

    const auto one = sparsity_cli({"tree", "density", "@empty_left.ta", "--mc", "3000,30,9", "--jobs", "1"});
    const auto four = sparsity_cli({"tree", "density", "@empty_left.ta", "--mc", "3000,30,9", "--jobs", "4"});
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
  }

  TEST_CASE("exit codes") {
    CHECK(sparsity_cli({"tree", "density", "@avoid_leaf_a.ta", "--exact-upto", "500"}).code == 3);
    CHECK(sparsity_cli({"tree", "count", "@avoid_leaf_a.ta", "--exact-upto", "13", "--enumerate"}).code == 3);
    CHECK(sparsity_cli({"tree", "sample", "--size", "2000000", "--alphabet", "a"}).code == 3);
    CHECK(sparsity_cli({"tree", "density", "@unranked_no_a_leaf.ta", "--max-states", "1"}).code == 3);
    CHECK(sparsity_cli({"word", "universal-prefix", "@ab_star.dfa"}).code == 1);
    CHECK(sparsity_cli({"unranked", "density", "@all_trees.ta"}).code == 1);
    CHECK(sparsity_cli({"tree", "density", "@avoid_leaf_a.ta", "--mc", "1,2"}).code == 2);
    CHECK(sparsity_cli({"tree", "density", "@avoid_leaf_a.ta", "--bogus"}).code == 2);
    CHECK(sparsity_cli({"tree", "frobnicate"}).code == 2);
    CHECK(sparsity_cli({"word", "trap", "@avoid_leaf_a.ta"}).code == 2);
    CHECK(sparsity_cli({"tree", "sample", "--size", "3", "--alphabet", "a", "--dist", "poisson"}).code == 2);
  }

  TEST_CASE("json lines round trip") {
    const std::vector<std::vector<std::string>> invocations{
        {"tree", "density", "@contains_leaf_a.ta"},
        {"tree", "witness", "@size_parity.ta"},
        {"tree", "density", "@empty_left.ta", "--mc", "500,12,1", "--dist", "bst"},
        {"unranked", "density", "@unranked_root_a.ta"},
        {"word", "trap", "@ab_star.dfa"},
        {"omega", "witness", "@ab_infinitely_often.omega", "--validate", "100,50,2"},
        {"omega", "witness", "@aa_blocks.omega"},
    };
    for (const auto& args : invocations) {
      const auto first = sparsity_cli(args);
      CHECK(first.code == 0);
      CHECK(first.out == sparsity_cli(args).out);
      for (const auto& line : lines(first.out)) {
        const auto j = nlohmann::ordered_json::parse(line);
        CHECK(j.is_object());
        CHECK(j.dump() == line);
      }
    }
  }

  TEST_CASE("help and README document every command and flag") {
    const auto inv = sparsity::cli::inventory();
    REQUIRE(inv.size() == 10);
    const std::string readme = read_file(std::string(SPARSITY_SOURCE_DIR) + "/README.md");
    const std::string top = sparsity_cli({"--help"}).out;
    for (const auto& cmd : inv) {
      CAPTURE(cmd.path);
      CHECK(readme.find(cmd.path) != std::string::npos);
      const auto first = cmd.path.substr(0, cmd.path.find(' '));
      CHECK(top.find(first) != std::string::npos);
      std::vector<std::string> args;
      std::istringstream words(cmd.path);
      for (std::string w; words >> w;) args.push_back(w);
      args.push_back("--help");
      const auto help = sparsity_cli(args);
      CHECK(help.code == 0);
      for (const auto& flag : cmd.flags) {
        CAPTURE(flag);
        CHECK(cmd.help.find(flag) != std::string::npos);
        CHECK(help.out.find(flag) != std::string::npos);
        if (flag != "--help") CHECK(readme.find(flag) != std::string::npos);
      }
    }
  }
}
