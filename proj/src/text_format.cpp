#include "text_format.hpp"

#include <cctype>
#include <stdexcept>

namespace sparsity::detail {

std::string trim_copy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::optional<KeyValue> KeyValueReader::next() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string text = trim_copy(raw);
    if (text.empty()) continue;
    auto colon = text.find(':');
    if (colon == std::string::npos) fail(line_, "expected 'key: value'");
    return KeyValue{trim_copy(text.substr(0, colon)), trim_copy(text.substr(colon + 1)), line_};
  }
  return std::nullopt;
}

Alphabet KeyValueReader::alphabet(const std::string& value, std::size_t line) const {
  try {
    return Alphabet::from_list(value);
  } catch (const std::invalid_argument& e) {
    fail(line, e.what());
  }
}

std::vector<std::string> KeyValueReader::token_list(const std::string& value, std::size_t line) const {
  std::vector<std::string> out;
  if (trim_copy(value).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = value.find(',', start);
    std::string tok = trim_copy(value.substr(start, comma == std::string::npos ? std::string::npos
                                                                               : comma - start));
    if (!is_valid_token(tok)) fail(line, "invalid token '" + tok + "'");
    out.push_back(std::move(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::pair<std::string, std::string> KeyValueReader::arrow(const std::string& value,
                                                          std::size_t line) const {
  auto pos = value.find("->");
  if (pos == std::string::npos) fail(line, "expected '->'");
  auto rhs = trim_copy(value.substr(pos + 2));
  if (rhs.empty()) fail(line, "missing target after '->'");
  return {trim_copy(value.substr(0, pos)), rhs};
}

}  // namespace sparsity::detail
