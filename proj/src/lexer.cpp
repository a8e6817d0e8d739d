#include "gradex/lexer.hpp"

#include <array>
#include <charconv>

#include <fmt/format.h>

namespace gradex {

namespace {

constexpr std::array kKeywords = {
    "defmodule", "def", "do", "end", "else", "if", "case", "cond", "fn",
    "true",      "false", "nil", "and", "or", "not", "when",
};

// Longest first so that `===` never splits into `==` `=`.
constexpr std::array<std::string_view, 23> kOperators = {
    "===", "!==", "==", "!=", "<=", ">=", "<>", "++", "--", "::", "=>", "->",
    "+",   "-",   "*",  "/",  "<",  ">",  "=",  "|",  "^",  ".",  "@",
};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool is_alias_start(char c) { return c >= 'A' && c <= 'Z'; }
bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    bool space = true;
    while (true) {
      space |= skip_blank();
      if (pos_ >= src_.size()) break;
      char c = src_[pos_];
      if (c == '\n') {
        Mark m = mark();
        advance();
        if (tokens_.empty() || tokens_.back().kind != TokenKind::Newline) {
          push(TokenKind::Newline, "\n", m, true);
        }
        space = true;
        continue;
      }
      lex_one(space);
      space = false;
    }
    Mark m = mark();
    push(TokenKind::Eof, "", m, true);
    return std::move(tokens_);
  }

 private:
  struct Mark {
    std::size_t pos;
    int line;
    int col;
  };

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Token> tokens_;

  Mark mark() const { return {pos_, line_, col_}; }

  Span span_from(const Mark& m) const { return Span{m.pos, pos_, m.line, m.col, line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg, const Mark& m) {
    if (pos_ == m.pos && pos_ < src_.size()) advance();
    throw SyntaxError(msg, span_from(m), /*lexical=*/true);
  }

  void push(TokenKind kind, std::string lexeme, const Mark& m, bool space) {
    tokens_.push_back(Token{kind, std::move(lexeme), span_from(m), space});
  }

  // Spaces, tabs, carriage returns and comments. Newlines are tokens.
  bool skip_blank() {
    bool skipped = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        skipped = true;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        skipped = true;
      } else {
        break;
      }
    }
    return skipped;
  }

  void lex_one(bool space) {
    Mark m = mark();
    char c = peek();
    if (is_ident_start(c) || is_alias_start(c)) {
      while (is_ident_char(peek())) advance();
      if (is_ident_start(c) && (peek() == '?' || peek() == '!') && peek(1) != '=') advance();
      std::string word(src_.substr(m.pos, pos_ - m.pos));
      bool keyword = false;
      for (const char* k : kKeywords) keyword |= word == k;
      push(keyword ? TokenKind::Keyword : TokenKind::Identifier, std::move(word), m, space);
      return;
    }
    if (is_digit(c)) {
      lex_number(m, space);
      return;
    }
    if (c == '"') {
      lex_string(m, space);
      return;
    }
    if (c == ':' && (is_ident_start(peek(1)) || is_alias_start(peek(1)))) {
      advance();
      std::size_t start = pos_;
      while (is_ident_char(peek()) || peek() == '@') advance();
      if (peek() == '?' || peek() == '!') advance();
      push(TokenKind::Atom, std::string(src_.substr(start, pos_ - start)), m, space);
      return;
    }
    if (c == '%' && peek(1) == '{') {
      advance();
      advance();
      push(TokenKind::Punctuation, "%{", m, space);
      return;
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',' || c == ';') {
      advance();
      push(TokenKind::Punctuation, std::string(1, c), m, space);
      return;
    }
    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        push(TokenKind::Operator, std::string(op), m, space);
        return;
      }
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      fail("unexpected non-ASCII character", m);
    }
    fail(fmt::format("unexpected character '{}'", c), m);
  }

  void lex_number(const Mark& m, bool space) {
    while (is_digit(peek())) advance();
    bool is_float = false;
    if (peek() == '.' && is_digit(peek(1))) {
      is_float = true;
      advance();
      while (is_digit(peek())) advance();
    }
    std::string text(src_.substr(m.pos, pos_ - m.pos));
    if (is_float) {
      push(TokenKind::Float, std::move(text), m, space);
      return;
    }
    std::int64_t value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{}) {
      throw SyntaxError("integer literal out of range", span_from(m), true);
    }
    push(TokenKind::Integer, std::move(text), m, space);
  }

  void lex_string(const Mark& m, bool space) {
    advance();  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= src_.size()) {
        throw SyntaxError("unterminated string literal", span_from(m), true);
      }
      char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        Mark esc = mark();
        advance();
        char e = peek();
        switch (e) {
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          default:
            if (pos_ < src_.size()) advance();
            throw SyntaxError(fmt::format("unsupported escape sequence '\\{}'", e), span_from(esc), true);
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    push(TokenKind::String, std::move(value), m, space);
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace gradex
