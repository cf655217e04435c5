// Whitespace-insensitive token scanner shared by the text parsers.

#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "qaslopes/errors.hpp"
#include "qaslopes/rational.hpp"

namespace qaslopes::detail {

class Scanner {
 public:
  explicit Scanner(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }
  }

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  bool accept(std::string_view token) {
    if (s_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  BigInt integer() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    std::string tok = s_.substr(start, pos_ - start);
    if (tok[0] == '+') tok.erase(0, 1);
    return BigInt(tok);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace qaslopes::detail
