#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sparsity {

/// Index of a symbol in its Alphabet.
using Symbol = std::uint32_t;

/// A finite word, stored as symbol indices.
using Word = std::vector<Symbol>;

/// Ordered finite set of labels. The declaration order is the tie-breaking
/// order used by every search in the library.
class Alphabet {
public:
  Alphabet() = default;

  /// Throws std::invalid_argument if the list is empty, contains duplicates,
  /// or a token is empty or contains whitespace, ',', '(' or ')'.
  explicit Alphabet(std::vector<std::string> symbols);

  /// Parses "a,b,c" (whitespace around tokens is ignored).
  static Alphabet from_list(std::string_view comma_separated);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }

  const std::string& name(Symbol s) const { return symbols_.at(s); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  std::optional<Symbol> find(std::string_view token) const;

  /// Like find() but throws std::invalid_argument for unknown tokens.
  Symbol at(std::string_view token) const;

  bool contains(Symbol s) const noexcept { return s < symbols_.size(); }

  /// True when every token is a single character, so words print without
  /// separators.
  bool single_character() const noexcept;

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
};

/// True if the token can serve as a symbol or state name.
bool is_valid_token(std::string_view token);

/// Concatenated tokens for single-character alphabets, space separated
/// otherwise. The empty word prints as "".
std::string format_word(const Alphabet& alphabet, const Word& word);

/// Inverse of format_word. Throws std::invalid_argument on unknown letters.
Word parse_word(const Alphabet& alphabet, std::string_view text);

}  // namespace sparsity
