#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "sparsity/errors.hpp"
#include "sparsity/tree_automaton.hpp"

namespace sparsity {

namespace {

using Subset = std::vector<StateId>;

class SubsetConstruction {
public:
  SubsetConstruction(const TreeAutomaton& aut, std::size_t cap) : aut_(aut), cap_(cap) {
    const std::size_t n = aut.state_count();
    const std::size_t sigma = aut.alphabet().size();
    // by_left_[a][l + 1] lists (right, target); slot 0 is ⊥.
    by_left_.assign(sigma, std::vector<std::vector<std::pair<StateId, StateId>>>(n + 1));
    for (const auto& t : aut.transitions()) {
      by_left_[t.symbol][slot(t.left)].emplace_back(t.right, t.target);
    }
  }

  Dta run() {
    const Subset bottom{kBottom};
    const std::size_t sigma = aut_.alphabet().size();
    for (Symbol a = 0; a < sigma; ++a) record(bottom, bottom, kBottom, kBottom, a);
    for (std::size_t i = 0; i < subsets_.size(); ++i) {
      const auto si = static_cast<StateId>(i);
      // Partners: ⊥ first, then every subset discovered so far up to i.
      for (std::size_t j = 0; j <= i + 1; ++j) {
        const StateId partner = j == 0 ? kBottom : static_cast<StateId>(j - 1);
        for (Symbol a = 0; a < sigma; ++a) {
          record(members(si), members(partner), si, partner, a);
          if (partner != si) record(members(partner), members(si), partner, si, a);
        }
      }
    }
    return build();
  }

private:
  static std::size_t slot(StateId q) { return q == kBottom ? 0 : q + 1; }

  Subset members(StateId id) const { return id == kBottom ? Subset{kBottom} : subsets_[id]; }

  Subset target(const Subset& left, const Subset& right, Symbol a) const {
    Subset out;
    for (StateId l : left) {
      for (const auto& [r, q] : by_left_[a][slot(l)]) {
        if (std::binary_search(right.begin(), right.end(), r)) out.push_back(q);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  StateId intern(Subset s) {
    auto [it, inserted] = index_.emplace(s, static_cast<StateId>(subsets_.size()));
    if (inserted) {
      if (subsets_.size() >= cap_) {
        throw CapExceeded("determinization exceeds " + std::to_string(cap_) + " subset states");
      }
      subsets_.push_back(std::move(s));
    }
    return it->second;
  }

  void record(const Subset& left, const Subset& right, StateId l, StateId r, Symbol a) {
    const StateId q = intern(target(left, right, a));
    table_.push_back({l, r, a, q});
  }

  std::string name(const Subset& s) const {
    if (s.size() == 1) return aut_.state_name(s.front());
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += '|';
      out += aut_.state_name(s[i]);
    }
    return out + "}";
  }

  Dta build() {
    std::vector<std::string> names;
    std::vector<bool> accepting;
    for (const auto& s : subsets_) {
      names.push_back(name(s));
      accepting.push_back(std::any_of(s.begin(), s.end(), [&](StateId q) { return aut_.is_accepting(q); }));
    }
    return Dta(aut_.alphabet(), std::move(names), std::move(accepting), std::move(table_));
  }

  const TreeAutomaton& aut_;
  std::size_t cap_;
  std::vector<std::vector<std::vector<std::pair<StateId, StateId>>>> by_left_;
  std::map<Subset, StateId> index_;
  std::vector<Subset> subsets_;
  std::vector<TreeTransition> table_;
};

}  // namespace

Dta determinize(const TreeAutomaton& aut, std::size_t max_states) {
  return SubsetConstruction(aut, max_states).run();
}

}  // namespace sparsity
