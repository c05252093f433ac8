#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsity {

/// Malformed input text: automaton files, tree literals, word literals.
/// `source` is a file path or a short description such as "<tree literal>".
class FormatError : public std::runtime_error {
public:
  FormatError(std::string source, std::size_t line, std::string reason);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::string source_;
  std::size_t line_;
  std::string reason_;
};

/// A configured resource cap (enumeration size, subset states, profile length,
/// sample size) would be exceeded.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace sparsity
