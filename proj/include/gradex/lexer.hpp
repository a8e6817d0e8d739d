#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gradex/span.hpp"

namespace gradex {

enum class TokenKind {
  Keyword,
  Identifier,  // lower-case names and capitalized module aliases
  Atom,        // lexeme excludes the leading colon
  Integer,
  Float,
  String,      // lexeme is the unescaped contents
  Operator,
  Punctuation,
  Newline,
  Eof,
};

struct Token {
  TokenKind kind;
  std::string lexeme;
  Span span;
  bool space_before = false;  // whitespace or a newline precedes the token

  [[nodiscard]] bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
  [[nodiscard]] bool is_op(std::string_view text) const { return is(TokenKind::Operator, text); }
  [[nodiscard]] bool is_punct(std::string_view text) const { return is(TokenKind::Punctuation, text); }
  [[nodiscard]] bool is_keyword(std::string_view text) const { return is(TokenKind::Keyword, text); }
};

/// Raised for malformed input; carries the offending span.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string message, Span span, bool lexical)
      : std::runtime_error(std::move(message)), span_(span), lexical_(lexical) {}
  [[nodiscard]] const Span& span() const { return span_; }
  [[nodiscard]] bool lexical() const { return lexical_; }

 private:
  Span span_;
  bool lexical_;
};

/// Splits source into tokens. Comments and blank space are dropped; line
/// breaks survive as Newline tokens (consecutive ones collapse). The stream
/// always ends with Eof. Throws SyntaxError (lexical) on bad input.
std::vector<Token> tokenize(std::string_view source);

}  // namespace gradex
