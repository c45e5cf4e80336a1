#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "fphase/error.hpp"

namespace fphase {

// Shared cursor for the canonical text parsers.  All parse errors carry the
// byte offset of the failure.
struct TextCursor {
  std::string_view s;
  size_t pos = 0;

  explicit TextCursor(std::string_view sv) : s(sv) {}

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  char take() {
    if (done()) fail_here("unexpected end of input");
    return s[pos++];
  }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool try_eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool try_eat(std::string_view word) {
    if (s.substr(pos, word.size()) == word) {
      pos += word.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_eat(c)) fail_here(std::string("expected '") + c + "'");
  }
  void expect(std::string_view word) {
    if (!try_eat(word)) fail_here("expected \"" + std::string(word) + "\"");
  }
  [[noreturn]] void fail_here(const std::string& msg) const {
    fail(ErrorKind::parse, msg + " at offset " + std::to_string(pos) + " in \"" +
                               std::string(s.substr(0, 96)) + (s.size() > 96 ? "..." : "") + "\"");
  }

  long long integer() {
    skip_ws();
    size_t start = pos;
    if (peek() == '+' || peek() == '-') ++pos;
    size_t digits = pos;
    while (!done() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) fail_here("expected integer");
    return std::stoll(std::string(s.substr(start, pos - start)));
  }
};

}  // namespace fphase
