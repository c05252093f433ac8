#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <memory>
#include <ostream>
#include <sstream>

#include "sparsity/counting.hpp"
#include "sparsity/dfa.hpp"
#include "sparsity/errors.hpp"
#include "sparsity/omega.hpp"
#include "sparsity/sampling.hpp"
#include "sparsity/tree.hpp"
#include "sparsity/tree_automaton.hpp"

namespace sparsity::cli {

namespace {

using json = nlohmann::ordered_json;

/// Bad flag values; reported like parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string mc;
  std::string validate;
  std::string dist = "uniform";
  std::string alphabet;
  std::optional<std::size_t> exact_upto;
  std::size_t size = 0;
  std::size_t count = 1;
  std::string word;
  bool enumerate = false;
  std::size_t max_states = kDefaultSubsetCap;
  std::size_t max_profile = kDefaultProfileCap;
  std::size_t max_size = kDefaultSampleCap;
  std::size_t max_enum = kDefaultEnumerationCap;
};

std::vector<std::uint64_t> parse_triple(const std::string& text, const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::uint64_t v = 0;
    const char* b = text.data() + start;
    const char* e = text.data() + comma;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (b == e || ec != std::errc() || ptr != e) throw UsageError(flag + " expects three integers a,b,c");
    out.push_back(v);
    start = comma + 1;
  }
  if (out.size() != 3) throw UsageError(flag + " expects three integers a,b,c");
  return out;
}

TreeDistribution parse_dist(const std::string& s) {
  if (s == "uniform") return TreeDistribution::uniform;
  if (s == "bst") return TreeDistribution::bst;
  throw UsageError("--dist must be uniform or bst");
}

json verdict_json(const Alphabet& alphabet, const DensityVerdict& v) {
  json j;
  j["kind"] = to_string(v.kind);
  j["witness"] = v.witness ? json(format_tree(alphabet, *v.witness)) : json(nullptr);
  j["sink"] = v.sink ? json(*v.sink) : json(nullptr);
  return j;
}

json report_json(const EstimateReport& r) {
  json j;
  j["trials"] = r.trials;
  j["successes"] = r.successes;
  j["point"] = r.point;
  j["stderr"] = r.standard_error;
  return j;
}

std::string ratio_field(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", r.convert_to<double>());
  std::ostringstream s;
  s << numerator(r) << '/' << denominator(r) << '|' << buf;
  return s.str();
}

void write_profile(std::ostream& out, const std::vector<DensityPoint>& points) {
  out << "n,accepted,total,ratio\n";
  for (const auto& p : points) out << p.n << ',' << p.accepted << ',' << p.total << ',' << ratio_field(p.ratio) << '\n';
}

class Cli {
public:
  Cli(std::ostream& out) : out_(out) { build(); }

  CLI::App& app() { return app_; }
  const std::function<int()>& action() const { return action_; }

private:
  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, std::function<int()> body) {
    auto* sub = parent->add_subcommand(name, help);
    sub->callback([this, body] { action_ = body; });
    return sub;
  }

  void add_file(CLI::App* sub, const std::string& what) {
    sub->add_option("file", o_.file, what)->required();
  }
  void add_seed(CLI::App* sub) { sub->add_option("--seed", o_.seed, "Master seed (default 0)"); }
  void add_jobs(CLI::App* sub) {
    sub->add_option("--jobs", o_.jobs, "Worker threads for Monte-Carlo estimation; results do not depend on it")
        ->check(CLI::PositiveNumber);
  }
  void add_max_states(CLI::App* sub) {
    sub->add_option("--max-states", o_.max_states, "Cap on subset-construction states (default 65536)");
  }

  void build() {
    app_.description("Decide sparseness of regular tree languages and regular omega-languages.");
    app_.require_subcommand(1);

    auto* tree = app_.add_subcommand("tree", "Binary tree languages given by bottom-up tree automata");
    tree->require_subcommand(1);
    auto* density = leaf(tree, "density", "Density verdict (zero, one, intermediate) as JSON", [this] { return tree_density(); });
    add_file(density, "Tree automaton file");
    density->add_option("--exact-upto", o_.exact_upto, "Print the exact density profile for n = 0..N as CSV instead");
    density->add_option("--mc", o_.mc, "Monte-Carlo estimate instead: trials,N,seed");
    density->add_option("--dist", o_.dist, "Sampling distribution for --mc: uniform or bst");
    density->add_option("--max-profile", o_.max_profile, "Cap on --exact-upto (default 200)");
    density->add_option("--max-size", o_.max_size, "Cap on the sampled tree size (default 1000000)");
    add_jobs(density);
    add_max_states(density);

    auto* witness = leaf(tree, "witness", "Verdict plus a minimal witness tree for every reachable state", [this] { return tree_witness(); });
    add_file(witness, "Tree automaton file");
    add_max_states(witness);

    auto* count = leaf(tree, "count", "Exact counts of accepted trees per size as CSV", [this] { return tree_count(); });
    add_file(count, "Tree automaton file");
    count->add_option("--exact-upto", o_.exact_upto, "Largest size N (default 10)");
    count->add_flag("--enumerate", o_.enumerate, "Count by brute-force enumeration instead of dynamic programming");
    count->add_option("--max-profile", o_.max_profile, "Cap on --exact-upto (default 200)");
    count->add_option("--max-enum", o_.max_enum, "Cap on the size for --enumerate (default 12)");
    add_max_states(count);

    auto* sample = leaf(tree, "sample", "Random trees, one tree literal per line", [this] { return tree_sample(); });
    sample->add_option("--size", o_.size, "Number of nodes")->required();
    sample->add_option("--alphabet", o_.alphabet, "Comma-separated labels")->required();
    sample->add_option("--dist", o_.dist, "uniform or bst");
    sample->add_option("--count", o_.count, "Number of trees (default 1)");
    sample->add_option("--max-size", o_.max_size, "Cap on --size (default 1000000)");
    add_seed(sample);

    auto* unranked = app_.add_subcommand("unranked", "Unranked tree languages given through their binary encoding");
    unranked->require_subcommand(1);
    auto* udensity = leaf(unranked, "density", "Density verdict for the unranked language", [this] { return unranked_density(); });
    add_file(udensity, "Tree automaton for the first-child/next-sibling encoding");
    add_max_states(udensity);

    auto* word = app_.add_subcommand("word", "Finite-word DFAs");
    word->require_subcommand(1);
    auto* infix = leaf(word, "infix-complete", "Whether every word is an infix of the language", [this] { return word_infix(); });
    add_file(infix, "DFA file");
    auto* trap = leaf(word, "trap", "A word that drives every state into a closed class", [this] { return word_trap(); });
    add_file(trap, "DFA file");
    auto* prefix = leaf(word, "universal-prefix", "Universal prefix x and bound k; with --word also the completing suffix", [this] { return word_prefix(); });
    add_file(prefix, "DFA file");
    prefix->add_option("--word", o_.word, "Word v to complete: x v y is accepted");

    auto* omega = app_.add_subcommand("omega", "Omega-languages given as unions of U V^omega");
    omega->require_subcommand(1);
    auto* measure = leaf(omega, "measure", "Whether the language has positive measure", [this] { return omega_measure(); });
    add_file(measure, "Omega file (pair: U.dfa, V.dfa per line)");
    add_max_states(measure);
    auto* owitness = leaf(omega, "witness", "Cylinder witness and loop automaton", [this] { return omega_witness(); });
    add_file(owitness, "Omega file (pair: U.dfa, V.dfa per line)");
    owitness->add_option("--validate", o_.validate, "Empirical marked-state recurrence: trials,horizon,seed");
    add_jobs(owitness);
    add_max_states(owitness);
  }

  void emit(const json& j) { out_ << j.dump() << '\n'; }

  int tree_density() {
    const auto aut = load_tree_automaton(o_.file);
    if (o_.exact_upto && !o_.mc.empty()) throw UsageError("--exact-upto and --mc are mutually exclusive");
    if (o_.exact_upto) {
      write_profile(out_, density_profile(determinize(aut, o_.max_states), *o_.exact_upto, o_.max_profile));
      return kOk;
    }
    if (!o_.mc.empty()) {
      const auto t = parse_triple(o_.mc, "--mc");
      const auto dist = parse_dist(o_.dist);
      if (t[1] > o_.max_size) throw CapExceeded("sample size " + std::to_string(t[1]) + " exceeds cap " + std::to_string(o_.max_size));
      const Dta d = determinize(aut, o_.max_states);
      emit(report_json(estimate_tree_density(d, t[1], t[0], t[2], dist, o_.jobs)));
      return kOk;
    }
    emit(verdict_json(aut.alphabet(), decide_density(aut, o_.max_states)));
    return kOk;
  }

  int tree_witness() {
    const auto aut = load_tree_automaton(o_.file);
    emit(verdict_json(aut.alphabet(), decide_density(aut, o_.max_states)));
    for (const auto& [q, t] : reachable_witnesses(aut)) {
      json j;
      j["state"] = aut.state_name(q);
      j["witness"] = format_tree(aut.alphabet(), t);
      j["size"] = t.size();
      emit(j);
    }
    return kOk;
  }

  int tree_count() {
    const auto aut = load_tree_automaton(o_.file);
    const std::size_t n_max = o_.exact_upto.value_or(10);
    if (!o_.enumerate) {
      write_profile(out_, density_profile(determinize(aut, o_.max_states), n_max, o_.max_profile));
      return kOk;
    }
    if (n_max > o_.max_enum) {
      throw CapExceeded("enumeration size " + std::to_string(n_max) + " exceeds cap " + std::to_string(o_.max_enum));
    }
    std::vector<DensityPoint> points;
    BigInt power = 1;
    for (std::size_t n = 0; n <= n_max; ++n) {
      DensityPoint p;
      p.n = n;
      for_each_tree(aut.alphabet().size(), n, [&](const Tree& t) {
        if (accepts(aut, t)) ++p.accepted;
        return true;
      }, o_.max_enum);
      p.total = catalan(n) * power;
      p.ratio = Rational(p.accepted, p.total);
      points.push_back(std::move(p));
      power *= aut.alphabet().size();
    }
    write_profile(out_, points);
    return kOk;
  }

  int tree_sample() {
    Alphabet alphabet;
    try {
      alphabet = Alphabet::from_list(o_.alphabet);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--alphabet: ") + e.what());
    }
    const auto dist = parse_dist(o_.dist);
    Rng rng(o_.seed);
    for (std::size_t i = 0; i < o_.count; ++i) {
      const Tree t = dist == TreeDistribution::uniform ? sample_uniform_tree(alphabet, o_.size, rng, o_.max_size)
                                                       : sample_bst(alphabet, o_.size, rng, o_.max_size);
      out_ << format_tree(alphabet, t) << '\n';
    }
    return kOk;
  }

  int unranked_density() {
    const auto aut = load_tree_automaton(o_.file);
    emit(verdict_json(aut.alphabet(), decide_unranked(aut, o_.max_states)));
    return kOk;
  }

  int word_infix() {
    const Dfa d = load_dfa(o_.file);
    json j;
    j["infix_complete"] = is_infix_complete(d);
    if (j["infix_complete"].get<bool>()) {
      const auto up = universal_prefix(d);
      j["x"] = format_word(d.alphabet(), up.x);
      j["k"] = up.k;
    }
    emit(j);
    return kOk;
  }

  int word_trap() {
    const Dfa d = load_dfa(o_.file);
    emit(json{{"v", format_word(d.alphabet(), trapping_word(d))}});
    return kOk;
  }

  int word_prefix() {
    const Dfa d = load_dfa(o_.file);
    const auto up = universal_prefix(d);
    json j;
    j["x"] = format_word(d.alphabet(), up.x);
    j["k"] = up.k;
    j["state"] = d.state_name(up.target_state);
    if (!o_.word.empty()) {
      Word v;
      try {
        v = parse_word(d.alphabet(), o_.word);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--word: ") + e.what());
      }
      j["v"] = format_word(d.alphabet(), v);
      j["y"] = format_word(d.alphabet(), completing_suffix(d, up, v));
    }
    emit(j);
    return kOk;
  }

  json measure_json(const Alphabet& alphabet, const MeasureVerdict& v) {
    json j;
    j["kind"] = to_string(v.kind);
    j["pair"] = v.witness ? json(v.witness->pair_index) : json(nullptr);
    j["x"] = v.witness ? json(format_word(alphabet, v.witness->x)) : json(nullptr);
    return j;
  }

  int omega_measure() {
    const auto lang = load_omega(o_.file);
    emit(measure_json(lang.alphabet(), decide_measure(lang, o_.max_states)));
    return kOk;
  }

  int omega_witness() {
    const auto lang = load_omega(o_.file);
    const auto verdict = decide_measure(lang, o_.max_states);
    json j = measure_json(lang.alphabet(), verdict);
    if (verdict.witness) {
      const auto& w = *verdict.witness;
      const auto& a = w.loop.automaton;
      j["u"] = format_word(lang.alphabet(), w.u);
      j["w"] = format_word(lang.alphabet(), w.w);
      j["marked"] = a.state_name(w.loop.marked);
      j["q_tilde"] = a.state_name(w.loop.q_tilde);
      j["loop_states"] = a.state_count();
      j["guarantee"] = w.guarantee;
      if (!o_.validate.empty()) {
        const auto t = parse_triple(o_.validate, "--validate");
        j["validation"] = report_json(estimate_marked_recurrence(w.loop, w.w, t[1], t[0], t[2], o_.jobs));
      }
    }
    emit(j);
    return kOk;
  }

  std::ostream& out_;
  Options o_;
  CLI::App app_{"", "sparsity"};
  std::function<int()> action_;
};

void collect(const CLI::App* app, const std::string& prefix, std::vector<CommandInfo>& out) {
  auto subs = app->get_subcommands([](const CLI::App*) { return true; });
  const std::string path = prefix.empty() ? app->get_name() : prefix + " " + app->get_name();
  if (subs.empty()) {
    CommandInfo info;
    info.path = path;
    for (const auto* opt : app->get_options()) {
      for (const auto& name : opt->get_lnames()) info.flags.push_back("--" + name);
    }
    info.help = app->help();
    out.push_back(std::move(info));
    return;
  }
  for (const auto* sub : subs) collect(sub, path, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out);
  auto& app = cli.app();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kFormatError;
  }
  try {
    return cli.action()();
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kFormatError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kFormatError;
  } catch (const CapExceeded& e) {
    err << "error: resource cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

std::vector<CommandInfo> inventory() {
  std::ostringstream sink;
  Cli cli(sink);
  std::vector<CommandInfo> out;
  for (const auto* sub : cli.app().get_subcommands([](const CLI::App*) { return true; })) collect(sub, "", out);
  return out;
}

}  // namespace sparsity::cli
