#pragma once

// Line-based "key: value" reader shared by the automaton file formats.

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsity/alphabet.hpp"
#include "sparsity/errors.hpp"

namespace sparsity::detail {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line;
};

class KeyValueReader {
public:
  KeyValueReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  /// Next non-blank, non-comment line split at the first ':'.
  std::optional<KeyValue> next();

  [[noreturn]] void fail(std::size_t line, const std::string& reason) const {
    throw FormatError(source_, line, reason);
  }

  std::size_t line_count() const noexcept { return line_; }
  const std::string& source() const noexcept { return source_; }

  Alphabet alphabet(const std::string& value, std::size_t line) const;

  /// Comma-separated tokens; each must be a valid token. An empty value
  /// yields an empty list.
  std::vector<std::string> token_list(const std::string& value, std::size_t line) const;

  /// Splits "lhs -> rhs", both trimmed.
  std::pair<std::string, std::string> arrow(const std::string& value, std::size_t line) const;

private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

std::string trim_copy(const std::string& s);

}  // namespace sparsity::detail
