#include "sparsity/omega.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sparsity/errors.hpp"
#include "text_format.hpp"

namespace sparsity {

OmegaLanguage::OmegaLanguage(std::vector<std::pair<Dfa, Dfa>> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw std::invalid_argument("omega language needs at least one pair");
  const Alphabet& sigma = pairs_.front().first.alphabet();
  for (const auto& [u, v] : pairs_) {
    if (!(u.alphabet() == sigma) || !(v.alphabet() == sigma)) {
      throw std::invalid_argument("alphabet mismatch between component DFAs");
    }
  }
}

std::string to_string(MeasureKind kind) { return kind == MeasureKind::zero ? "zero" : "positive"; }

namespace {

bool language_empty(const Dfa& d) {
  const auto reach = reachable_states(d);
  for (DfaState q = 0; q < d.state_count(); ++q) {
    if (reach[q] && d.is_accepting(q)) return false;
  }
  return true;
}

std::string fresh_name(const Dfa& d, std::size_t i) {
  std::string name = "w" + std::to_string(i);
  while (d.find_state(name)) name += "'";
  return name;
}

}  // namespace

LoopAutomaton loop_automaton(const Dfa& vstar, const Word& w) {
  const auto partition = reachability_partition(vstar);
  const DfaState landing = run_dfa(vstar, w);
  const auto c = partition.class_of[landing];
  const auto& cls = partition.classes[c];
  auto acc = std::find_if(cls.begin(), cls.end(), [&](DfaState q) { return vstar.is_accepting(q); });
  if (!partition.closed[c] || acc == cls.end()) {
    throw std::invalid_argument("w does not lead into a closed class with an accepting state");
  }
  const DfaState q_tilde = *acc;
  if (w.empty()) {
    if (q_tilde != vstar.initial()) {
      throw std::invalid_argument("empty w needs the initial state to be the marked accepting state");
    }
    return {vstar, q_tilde, q_tilde, w};
  }

  const std::size_t n = vstar.state_count();
  const std::size_t sigma = vstar.alphabet().size();
  const std::size_t ell = w.size();
  std::vector<std::string> names = vstar.state_names();
  for (std::size_t i = 1; i <= ell; ++i) names.push_back(fresh_name(vstar, i));
  std::vector<bool> accepting = vstar.accepting();
  accepting.resize(n + ell, false);
  std::vector<DfaState> delta = vstar.delta();
  delta.resize((n + ell) * sigma);
  auto fresh = [&](std::size_t i) { return static_cast<DfaState>(n + i - 1); };  // q'_i, 1-based

  delta[q_tilde * sigma + w[0]] = fresh(1);
  Word read(w.begin(), w.begin());
  for (std::size_t i = 1; i <= ell; ++i) {
    read.push_back(w[i - 1]);  // read = a_1..a_i
    for (Symbol a = 0; a < sigma; ++a) {
      DfaState target;
      if (i < ell && a == w[i]) {
        target = fresh(i + 1);
      } else if (i == ell) {
        target = vstar.step(landing, a);
      } else {
        Word probe = read;
        probe.push_back(a);
        target = run_dfa(vstar, probe, q_tilde);
      }
      delta[fresh(i) * sigma + a] = target;
    }
  }
  Dfa automaton(vstar.alphabet(), std::move(names), vstar.initial(), std::move(accepting), std::move(delta));
  return {std::move(automaton), fresh(ell), q_tilde, w};
}

CylinderWitness witness_prefix(const Dfa& u, const Dfa& v, std::size_t max_states) {
  if (!(u.alphabet() == v.alphabet())) throw std::invalid_argument("alphabet mismatch between U and V");
  auto u_word = shortest_word(u, u.initial(), [&](DfaState q) { return u.is_accepting(q); });
  if (!u_word) throw std::invalid_argument("L(U) is empty");
  const Dfa vstar = star_dfa(v, max_states);
  const auto partition = reachability_partition(vstar);
  auto good = [&](DfaState q) {
    const auto c = partition.class_of[q];
    if (!partition.closed[c]) return false;
    const auto& cls = partition.classes[c];
    return std::any_of(cls.begin(), cls.end(), [&](DfaState s) { return vstar.is_accepting(s); });
  };
  auto w = shortest_word(vstar, vstar.initial(), good);
  if (!w) throw std::invalid_argument("V* is not infix complete");

  CylinderWitness out{0, *u_word, *w, *u_word, loop_automaton(vstar, *w), {}};
  out.x.insert(out.x.end(), w->begin(), w->end());
  out.guarantee =
      "almost every infinite word extending x lies in U V^omega: after u, every visit of the loop "
      "automaton to its marked state closes a block of V*, and the marked state is recurrent";
  return out;
}

MeasureVerdict decide_measure(const OmegaLanguage& language, std::size_t max_states) {
  const auto& pairs = language.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [u, v] = pairs[i];
    if (language_empty(u)) continue;
    if (!is_infix_complete(star_dfa(v, max_states))) continue;
    MeasureVerdict verdict{MeasureKind::positive, witness_prefix(u, v, max_states)};
    verdict.witness->pair_index = i;
    return verdict;
  }
  return {};
}

MarkovChainView markov_view(const Dfa& d) {
  const auto partition = reachability_partition(d);
  MarkovChainView view;
  std::vector<std::size_t> position(d.state_count(), SIZE_MAX);
  for (DfaState q = 0; q < d.state_count(); ++q) {
    if (partition.class_of[q] == ReachabilityPartition::kNoClass) continue;
    position[q] = view.states.size();
    view.states.push_back(q);
  }
  const std::size_t m = view.states.size();
  const double share = 1.0 / static_cast<double>(d.alphabet().size());
  view.p.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (Symbol a = 0; a < d.alphabet().size(); ++a) view.p[i][position[d.step(view.states[i], a)]] += share;
  }
  for (std::size_t c = 0; c < partition.classes.size(); ++c) {
    if (!partition.closed[c]) continue;
    std::vector<std::size_t> cls;
    for (DfaState q : partition.classes[c]) cls.push_back(position[q]);
    view.closed_classes.push_back(std::move(cls));
  }
  return view;
}

Word rich_prefix_stream(const Dfa& v, std::size_t budget, std::size_t max_states) {
  const Dfa vstar = star_dfa(v, max_states);
  const UniversalPrefix up = universal_prefix(vstar);
  const std::size_t sigma = vstar.alphabet().size();
  Word out;
  Word factor;  // odometer over Σ^len
  for (std::size_t len = 0; len <= budget; ++len) {
    factor.assign(len, 0);
    while (true) {
      const Word y = completing_suffix(vstar, up, factor);
      out.insert(out.end(), up.x.begin(), up.x.end());
      out.insert(out.end(), factor.begin(), factor.end());
      out.insert(out.end(), y.begin(), y.end());
      std::size_t pos = len;
      while (pos > 0 && factor[pos - 1] + 1 == sigma) factor[--pos] = 0;
      if (pos == 0) break;
      ++factor[pos - 1];
    }
  }
  return out;
}

OmegaLanguage load_omega(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, 0, "cannot open file");
  detail::KeyValueReader reader(in, path);
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<std::pair<Dfa, Dfa>> pairs;
  while (auto entry = reader.next()) {
    if (entry->key != "pair") reader.fail(entry->line, "unknown key '" + entry->key + "'");
    const auto comma = entry->value.find(',');
    if (comma == std::string::npos) reader.fail(entry->line, "expected 'pair: <U-dfa>, <V-dfa>'");
    const auto u_path = detail::trim_copy(entry->value.substr(0, comma));
    const auto v_path = detail::trim_copy(entry->value.substr(comma + 1));
    if (u_path.empty() || v_path.empty()) reader.fail(entry->line, "empty DFA path");
    auto resolve = [&](const std::string& p) {
      const std::filesystem::path fp(p);
      return (fp.is_absolute() ? fp : base / fp).string();
    };
    pairs.emplace_back(load_dfa(resolve(u_path)), load_dfa(resolve(v_path)));
  }
  if (pairs.empty()) reader.fail(reader.line_count(), "no 'pair' lines");
  try {
    return OmegaLanguage(std::move(pairs));
  } catch (const std::invalid_argument& e) {
    reader.fail(reader.line_count(), e.what());
  }
}

}  // namespace sparsity
