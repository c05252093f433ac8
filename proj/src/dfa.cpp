#include "sparsity/dfa.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "sparsity/errors.hpp"
#include "sparsity/scc.hpp"
#include "text_format.hpp"

namespace sparsity {

Dfa::Dfa(Alphabet alphabet, std::vector<std::string> states, DfaState initial, std::vector<bool> accepting,
         std::vector<DfaState> delta)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      initial_(initial),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  if (alphabet_.empty()) throw std::invalid_argument("DFA needs a non-empty alphabet");
  if (states_.empty()) throw std::invalid_argument("DFA needs at least one state");
  std::set<std::string_view> seen;
  for (const auto& s : states_) {
    if (!is_valid_token(s)) throw std::invalid_argument("invalid state name '" + s + "'");
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate state '" + s + "'");
  }
  if (initial_ >= states_.size()) throw std::invalid_argument("undeclared initial state");
  if (accepting_.size() != states_.size()) throw std::invalid_argument("accepting flags do not match states");
  if (delta_.size() != states_.size() * alphabet_.size()) throw std::invalid_argument("transition map is not total");
  for (DfaState t : delta_) {
    if (t >= states_.size()) throw std::invalid_argument("undeclared transition target");
  }
}

std::optional<DfaState> Dfa::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<DfaState>(it - states_.begin());
}

DfaState run_dfa(const Dfa& d, const Word& w, std::optional<DfaState> from) {
  DfaState q = from.value_or(d.initial());
  for (Symbol a : w) {
    if (!d.alphabet().contains(a)) throw std::invalid_argument("foreign letter");
    q = d.step(q, a);
  }
  return q;
}

bool accepts(const Dfa& d, const Word& w) { return d.is_accepting(run_dfa(d, w)); }

std::vector<bool> reachable_states(const Dfa& d) {
  std::vector<bool> seen(d.state_count(), false);
  std::vector<DfaState> stack{d.initial()};
  seen[d.initial()] = true;
  while (!stack.empty()) {
    const DfaState q = stack.back();
    stack.pop_back();
    for (Symbol a = 0; a < d.alphabet().size(); ++a) {
      const DfaState t = d.step(q, a);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

namespace {

ReachabilityPartition partition(const Dfa& d, const std::vector<bool>& keep) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (DfaState q = 0; q < d.state_count(); ++q) {
    if (!keep[q]) continue;
    for (Symbol a = 0; a < d.alphabet().size(); ++a) edges.emplace_back(q, d.step(q, a));
  }
  const auto scc = strongly_connected_components(Digraph(d.state_count(), std::move(edges)));
  ReachabilityPartition out;
  out.class_of.assign(d.state_count(), ReachabilityPartition::kNoClass);
  for (std::size_t c = 0; c < scc.members.size(); ++c) {
    if (!keep[scc.members[c].front()]) continue;
    const auto id = static_cast<std::uint32_t>(out.classes.size());
    for (DfaState q : scc.members[c]) out.class_of[q] = id;
    out.classes.push_back(scc.members[c]);
    out.closed.push_back(scc.closed[c]);
  }
  return out;
}

}  // namespace

ReachabilityPartition reachability_partition(const Dfa& d) { return partition(d, reachable_states(d)); }

ReachabilityPartition full_partition(const Dfa& d) {
  return partition(d, std::vector<bool>(d.state_count(), true));
}

namespace {

std::optional<std::uint32_t> first_accepting_closed_class(const Dfa& d, const ReachabilityPartition& p) {
  for (std::uint32_t c = 0; c < p.classes.size(); ++c) {
    if (!p.closed[c]) continue;
    const auto& cls = p.classes[c];
    if (std::any_of(cls.begin(), cls.end(), [&](DfaState q) { return d.is_accepting(q); })) return c;
  }
  return std::nullopt;
}

}  // namespace

bool is_infix_complete(const Dfa& d) {
  return first_accepting_closed_class(d, reachability_partition(d)).has_value();
}

UniversalPrefix universal_prefix(const Dfa& d) {
  const auto p = reachability_partition(d);
  const auto c = first_accepting_closed_class(d, p);
  if (!c) throw std::invalid_argument("DFA is not infix complete");
  UniversalPrefix up;
  up.target_class = *c;
  const auto& cls = p.classes[*c];
  up.target_state = *std::find_if(cls.begin(), cls.end(), [&](DfaState q) { return d.is_accepting(q); });
  const DfaState target = up.target_state;
  up.x = *shortest_word(d, d.initial(), [&](DfaState q) { return q == target; });
  for (DfaState q : cls) {
    up.k = std::max(up.k, shortest_word(d, q, [&](DfaState s) { return s == target; })->size());
  }
  return up;
}

Word completing_suffix(const Dfa& d, const UniversalPrefix& up, const Word& v) {
  const DfaState from = run_dfa(d, v, run_dfa(d, up.x));
  auto y = shortest_word(d, from, [&](DfaState q) { return d.is_accepting(q); });
  if (!y) throw std::logic_error("no completing suffix (prefix does not come from this DFA)");
  return *y;
}

Word trapping_word(const Dfa& d) {
  const auto p = full_partition(d);
  auto in_closed = [&](DfaState q) { return p.closed[p.class_of[q]]; };
  Word v;
  for (DfaState q = 0; q < d.state_count(); ++q) {
    const DfaState now = run_dfa(d, v, q);
    const Word step = *shortest_word(d, now, in_closed);
    v.insert(v.end(), step.begin(), step.end());
  }
  return v;
}

Dfa star_dfa(const Dfa& d, std::size_t max_states) {
  const std::size_t sigma = d.alphabet().size();
  // A fresh accepting start is needed only when ε ∉ L(d).
  const bool fresh_start = !d.is_accepting(d.initial());
  constexpr DfaState kStart = UINT32_MAX;  // marker for the fresh start

  using Subset = std::vector<DfaState>;
  std::map<Subset, DfaState> index;
  std::vector<Subset> subsets;
  std::vector<DfaState> delta;

  auto intern = [&](Subset s) {
    auto [it, inserted] = index.emplace(s, static_cast<DfaState>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= max_states) {
        throw CapExceeded("star construction exceeds " + std::to_string(max_states) + " subset states");
      }
      subsets.push_back(std::move(s));
    }
    return it->second;
  };
  intern(fresh_start ? Subset{kStart} : Subset{d.initial()});

  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Symbol a = 0; a < sigma; ++a) {
      Subset next;
      for (DfaState p : subsets[i]) {
        const DfaState t = d.step(p == kStart ? d.initial() : p, a);
        next.push_back(t);
        if (d.is_accepting(t)) next.push_back(d.initial());
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      delta.push_back(intern(std::move(next)));
    }
  }

  std::vector<std::string> names;
  std::vector<bool> accepting;
  for (const auto& s : subsets) {
    std::string name = "{";
    bool acc = false;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j) name += '|';
      if (s[j] == kStart) {
        name += '^';
        acc = true;
      } else {
        name += d.state_name(s[j]);
        acc = acc || d.is_accepting(s[j]);
      }
    }
    names.push_back(name + "}");
    accepting.push_back(acc);
  }
  return Dfa(d.alphabet(), std::move(names), 0, std::move(accepting), std::move(delta));
}

Dfa parse_dfa(std::istream& in, const std::string& source) {
  detail::KeyValueReader reader(in, source);
  std::optional<Alphabet> alphabet;
  std::optional<std::vector<std::string>> states;
  std::optional<std::pair<std::string, std::size_t>> initial;
  std::optional<std::pair<std::vector<std::string>, std::size_t>> accepting;
  std::vector<std::pair<std::string, std::size_t>> trans_lines;

  while (auto entry = reader.next()) {
    const auto& [key, value, line] = *entry;
    if (key == "alphabet") {
      if (alphabet) reader.fail(line, "duplicate 'alphabet' declaration");
      alphabet = reader.alphabet(value, line);
    } else if (key == "states") {
      if (states) reader.fail(line, "duplicate 'states' declaration");
      states = reader.token_list(value, line);
      if (states->empty()) reader.fail(line, "no states declared");
    } else if (key == "initial") {
      if (initial) reader.fail(line, "duplicate 'initial' declaration");
      initial.emplace(value, line);
    } else if (key == "accepting") {
      if (accepting) reader.fail(line, "duplicate 'accepting' declaration");
      accepting.emplace(reader.token_list(value, line), line);
    } else if (key == "trans") {
      trans_lines.emplace_back(value, line);
    } else {
      reader.fail(line, "unknown key '" + key + "'");
    }
  }
  const std::size_t end = reader.line_count();
  if (!alphabet) reader.fail(end, "missing 'alphabet' declaration");
  if (!states) reader.fail(end, "missing 'states' declaration");
  if (!initial) reader.fail(end, "missing 'initial' declaration");

  auto state_index = [&](const std::string& name, std::size_t line) -> DfaState {
    auto it = std::find(states->begin(), states->end(), name);
    if (it == states->end()) reader.fail(line, "undeclared state '" + name + "'");
    return static_cast<DfaState>(it - states->begin());
  };

  const std::size_t n = states->size();
  const std::size_t sigma = alphabet->size();
  const DfaState init = state_index(initial->first, initial->second);
  std::vector<bool> acc(n, false);
  if (accepting) {
    for (const auto& name : accepting->first) acc[state_index(name, accepting->second)] = true;
  }
  constexpr DfaState kUnset = UINT32_MAX;
  std::vector<DfaState> delta(n * sigma, kUnset);
  for (const auto& [value, line] : trans_lines) {
    auto [lhs, rhs] = reader.arrow(value, line);
    auto parts = reader.token_list(lhs, line);
    if (parts.size() != 2) reader.fail(line, "expected 'state,symbol -> target'");
    const DfaState q = state_index(parts[0], line);
    auto a = alphabet->find(parts[1]);
    if (!a) reader.fail(line, "unknown symbol '" + parts[1] + "'");
    auto& slot = delta[q * sigma + *a];
    if (slot != kUnset) reader.fail(line, "duplicate transition for (" + parts[0] + "," + parts[1] + ")");
    slot = state_index(rhs, line);
  }
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] == kUnset) {
      reader.fail(end, "missing transition for (" + (*states)[i / sigma] + "," + alphabet->name(i % sigma) + ")");
    }
  }
  try {
    return Dfa(*alphabet, *states, init, std::move(acc), std::move(delta));
  } catch (const std::invalid_argument& e) {
    reader.fail(end, e.what());
  }
}

Dfa load_dfa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, 0, "cannot open file");
  return parse_dfa(in, path);
}

}  // namespace sparsity
