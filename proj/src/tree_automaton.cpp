#include "sparsity/tree_automaton.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "sparsity/errors.hpp"
#include "text_format.hpp"

namespace sparsity {

namespace {

auto transition_key(const TreeTransition& t) { return std::tie(t.left, t.right, t.symbol); }

std::optional<StateId> find_name(const std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<StateId>(it - names.begin());
}

void check_states(const std::vector<std::string>& states) {
  std::set<std::string_view> seen;
  for (const auto& s : states) {
    if (!is_valid_token(s) || s == "_") throw std::invalid_argument("invalid state name '" + s + "'");
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate state '" + s + "'");
  }
  if (states.size() >= kBottom) throw std::invalid_argument("too many states");
}

void check_transition(const TreeTransition& t, std::size_t n, const Alphabet& alphabet) {
  auto child_ok = [n](StateId c) { return c == kBottom || c < n; };
  if (!child_ok(t.left) || !child_ok(t.right)) throw std::invalid_argument("undeclared child state");
  if (t.target == kBottom) throw std::invalid_argument("transition targets bottom");
  if (t.target >= n) throw std::invalid_argument("undeclared target state");
  if (!alphabet.contains(t.symbol)) throw std::invalid_argument("undeclared symbol");
}

}  // namespace

TreeAutomaton::TreeAutomaton(Alphabet alphabet, std::vector<std::string> states,
                             std::vector<StateId> accepting, std::vector<TreeTransition> transitions)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      accepting_(states_.size(), false),
      transitions_(std::move(transitions)) {
  if (alphabet_.empty()) throw std::invalid_argument("tree automaton needs a non-empty alphabet");
  check_states(states_);
  for (StateId q : accepting) {
    if (q >= states_.size()) throw std::invalid_argument("undeclared accepting state");
    accepting_[q] = true;
  }
  for (const auto& t : transitions_) check_transition(t, states_.size(), alphabet_);
  auto sorted = transitions_;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::tie(a.left, a.right, a.symbol, a.target) < std::tie(b.left, b.right, b.symbol, b.target);
  });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate transition");
  }
}

std::optional<StateId> TreeAutomaton::find_state(std::string_view name) const {
  return find_name(states_, name);
}

DeterministicTreeAutomaton::DeterministicTreeAutomaton(Alphabet alphabet, std::vector<std::string> states,
                                                       std::vector<bool> accepting,
                                                       std::vector<TreeTransition> table,
                                                       std::vector<std::optional<StateId>> default_targets)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      accepting_(std::move(accepting)),
      table_(std::move(table)),
      defaults_(std::move(default_targets)) {
  if (alphabet_.empty()) throw std::invalid_argument("tree automaton needs a non-empty alphabet");
  check_states(states_);
  const std::size_t n = states_.size();
  if (accepting_.size() != n) throw std::invalid_argument("accepting flags do not match state count");
  if (defaults_.empty()) defaults_.resize(alphabet_.size());
  if (defaults_.size() != alphabet_.size()) throw std::invalid_argument("one default slot per symbol");
  for (const auto& d : defaults_) {
    if (d && *d >= n) throw std::invalid_argument("undeclared default target");
  }
  for (const auto& t : table_) check_transition(t, n, alphabet_);
  std::sort(table_.begin(), table_.end(),
            [](const auto& a, const auto& b) { return transition_key(a) < transition_key(b); });
  for (std::size_t i = 1; i < table_.size(); ++i) {
    if (transition_key(table_[i - 1]) == transition_key(table_[i])) {
      throw std::invalid_argument("nondeterministic transition table (duplicate key)");
    }
  }
  std::vector<std::size_t> per_symbol(alphabet_.size(), 0);
  for (const auto& t : table_) ++per_symbol[t.symbol];
  const std::size_t pairs = (n + 1) * (n + 1);
  for (Symbol a = 0; a < alphabet_.size(); ++a) {
    if (!defaults_[a] && per_symbol[a] != pairs) {
      throw std::invalid_argument("incomplete transition table for symbol '" + alphabet_.name(a) + "'");
    }
  }
}

std::optional<StateId> DeterministicTreeAutomaton::find_state(std::string_view name) const {
  return find_name(states_, name);
}

const TreeTransition* DeterministicTreeAutomaton::lookup(StateId left, StateId right, Symbol a) const {
  const TreeTransition probe{left, right, a, 0};
  auto it = std::lower_bound(table_.begin(), table_.end(), probe, [](const auto& x, const auto& y) {
    return transition_key(x) < transition_key(y);
  });
  if (it != table_.end() && transition_key(*it) == transition_key(probe)) return &*it;
  return nullptr;
}

bool DeterministicTreeAutomaton::is_explicit(StateId left, StateId right, Symbol a) const {
  return lookup(left, right, a) != nullptr;
}

StateId DeterministicTreeAutomaton::step(StateId left, StateId right, Symbol a) const {
  if (const auto* t = lookup(left, right, a)) return t->target;
  return defaults_.at(a).value();
}

StateId run(const Dta& aut, const Tree& t) {
  if (t.empty()) return kBottom;
  auto nodes = t.nodes();
  std::vector<StateId> state(nodes.size());
  for (std::size_t i = nodes.size(); i-- > 0;) {
    const auto& node = nodes[i];
    if (!aut.alphabet().contains(node.label)) throw std::invalid_argument("foreign label in tree");
    const StateId l = node.left_size ? state[i + 1] : kBottom;
    const StateId r = node.right_size ? state[i + 1 + node.left_size] : kBottom;
    state[i] = aut.step(l, r, node.label);
  }
  return state[0];
}

bool accepts(const Dta& aut, const Tree& t) { return aut.is_accepting(run(aut, t)); }

std::vector<StateId> run_states(const TreeAutomaton& aut, const Tree& t) {
  if (t.empty()) return {};
  auto nodes = t.nodes();
  std::vector<std::vector<StateId>> states(nodes.size());
  const std::vector<StateId> bottom{kBottom};
  for (std::size_t i = nodes.size(); i-- > 0;) {
    const auto& node = nodes[i];
    if (!aut.alphabet().contains(node.label)) throw std::invalid_argument("foreign label in tree");
    const auto& ls = node.left_size ? states[i + 1] : bottom;
    const auto& rs = node.right_size ? states[i + 1 + node.left_size] : bottom;
    std::vector<StateId> out;
    for (const auto& tr : aut.transitions()) {
      if (tr.symbol != node.label) continue;
      if (std::find(ls.begin(), ls.end(), tr.left) == ls.end()) continue;
      if (std::find(rs.begin(), rs.end(), tr.right) == rs.end()) continue;
      out.push_back(tr.target);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    states[i] = std::move(out);
  }
  return states[0];
}

bool accepts(const TreeAutomaton& aut, const Tree& t) {
  for (StateId q : run_states(aut, t)) {
    if (aut.is_accepting(q)) return true;
  }
  return false;
}

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::zero: return "zero";
    case DensityKind::one: return "one";
    case DensityKind::intermediate: return "intermediate";
  }
  return "intermediate";
}

TreeAutomaton parse_tree_automaton(std::istream& in, const std::string& source) {
  detail::KeyValueReader reader(in, source);
  std::optional<Alphabet> alphabet;
  std::optional<std::vector<std::string>> states;
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
    } else if (key == "accepting") {
      if (accepting) reader.fail(line, "duplicate 'accepting' declaration");
      accepting.emplace(reader.token_list(value, line), line);
    } else if (key == "trans") {
      trans_lines.emplace_back(value, line);
    } else {
      reader.fail(line, "unknown key '" + key + "'");
    }
  }
  if (!alphabet) reader.fail(reader.line_count(), "missing 'alphabet' declaration");
  if (!states) reader.fail(reader.line_count(), "missing 'states' declaration");

  auto state_index = [&](const std::string& name, std::size_t line) -> StateId {
    if (auto q = find_name(*states, name)) return *q;
    reader.fail(line, "undeclared state '" + name + "'");
  };

  std::vector<StateId> accepting_ids;
  if (accepting) {
    for (const auto& name : accepting->first) accepting_ids.push_back(state_index(name, accepting->second));
  }

  std::vector<TreeTransition> transitions;
  std::set<std::tuple<StateId, StateId, Symbol, StateId>> seen;
  for (const auto& [value, line] : trans_lines) {
    auto [lhs, rhs] = reader.arrow(value, line);
    auto parts = reader.token_list(lhs, line);
    if (parts.size() != 3) reader.fail(line, "expected 'left,right,symbol -> target'");
    auto child = [&](const std::string& tok) { return tok == "_" ? kBottom : state_index(tok, line); };
    TreeTransition t{child(parts[0]), child(parts[1]), 0, 0};
    auto sym = alphabet->find(parts[2]);
    if (!sym) reader.fail(line, "unknown symbol '" + parts[2] + "'");
    t.symbol = *sym;
    if (rhs == "_") reader.fail(line, "bottom cannot be a transition target");
    t.target = state_index(rhs, line);
    if (!seen.emplace(t.left, t.right, t.symbol, t.target).second) {
      reader.fail(line, "duplicate transition");
    }
    transitions.push_back(t);
  }
  try {
    return TreeAutomaton(*alphabet, *states, accepting_ids, std::move(transitions));
  } catch (const std::invalid_argument& e) {
    reader.fail(reader.line_count(), e.what());
  }
}

TreeAutomaton load_tree_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, 0, "cannot open file");
  return parse_tree_automaton(in, path);
}

}  // namespace sparsity
