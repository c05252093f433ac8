#include "sparsity/alphabet.hpp"

#include <cctype>
#include <stdexcept>

#include "sparsity/errors.hpp"

namespace sparsity {

FormatError::FormatError(std::string source, std::size_t line, std::string reason)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + reason),
      source_(std::move(source)),
      line_(line),
      reason_(std::move(reason)) {}

bool is_valid_token(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')') {
      return false;
    }
  }
  return true;
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet must contain at least one symbol");
  for (Symbol i = 0; i < symbols_.size(); ++i) {
    if (!is_valid_token(symbols_[i])) {
      throw std::invalid_argument("invalid symbol token '" + symbols_[i] + "'");
    }
    if (!index_.emplace(symbols_[i], i).second) {
      throw std::invalid_argument("duplicate symbol '" + symbols_[i] + "'");
    }
  }
}

static std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Alphabet Alphabet::from_list(std::string_view comma_separated) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    auto comma = comma_separated.find(',', start);
    auto piece = comma_separated.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - start);
    tokens.emplace_back(trim(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Alphabet(std::move(tokens));
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view token) const {
  if (auto s = find(token)) return *s;
  throw std::invalid_argument("unknown symbol '" + std::string(token) + "'");
}

bool Alphabet::single_character() const noexcept {
  for (const auto& s : symbols_) {
    if (s.size() != 1) return false;
  }
  return true;
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
  std::string out;
  const bool compact = alphabet.single_character();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word word;
  if (alphabet.single_character()) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      word.push_back(alphabet.at(std::string_view(&c, 1)));
    }
    return word;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) word.push_back(alphabet.at(text.substr(i, j - i)));
    i = j;
  }
  return word;
}

}  // namespace sparsity
