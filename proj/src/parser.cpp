#include "gradex/parser.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <fmt/format.h>

namespace gradex {

namespace {

struct OpInfo {
  BinaryOp op;
  int prec;
  bool right_assoc;
};

// Loosest to tightest: or, and, comparisons, list/string ops, additive,
// multiplicative. Unary operators bind tighter than all of these and `=`
// looser than all of them.
std::optional<OpInfo> binary_op(const Token& t) {
  if (t.is_keyword("or")) return OpInfo{BinaryOp::Or, 1, false};
  if (t.is_keyword("and")) return OpInfo{BinaryOp::And, 2, false};
  if (t.kind != TokenKind::Operator) return std::nullopt;
  const std::string& s = t.lexeme;
  if (s == "<") return OpInfo{BinaryOp::Lt, 3, false};
  if (s == ">") return OpInfo{BinaryOp::Gt, 3, false};
  if (s == "<=") return OpInfo{BinaryOp::Le, 3, false};
  if (s == ">=") return OpInfo{BinaryOp::Ge, 3, false};
  if (s == "==") return OpInfo{BinaryOp::Eq, 3, false};
  if (s == "!=") return OpInfo{BinaryOp::Ne, 3, false};
  if (s == "===") return OpInfo{BinaryOp::StrictEq, 3, false};
  if (s == "!==") return OpInfo{BinaryOp::StrictNe, 3, false};
  if (s == "++") return OpInfo{BinaryOp::ListAppend, 4, true};
  if (s == "--") return OpInfo{BinaryOp::ListRemove, 4, true};
  if (s == "<>") return OpInfo{BinaryOp::Concat, 4, true};
  if (s == "+") return OpInfo{BinaryOp::Add, 5, false};
  if (s == "-") return OpInfo{BinaryOp::Sub, 5, false};
  if (s == "*") return OpInfo{BinaryOp::Mul, 6, false};
  if (s == "/") return OpInfo{BinaryOp::Div, 6, false};
  return std::nullopt;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::Eof: return "end of input";
    case TokenKind::Newline: return "end of line";
    case TokenKind::String: return "string literal";
    case TokenKind::Atom: return "atom :" + t.lexeme;
    default: return "'" + t.lexeme + "'";
  }
}

bool is_alias(const Token& t) {
  return t.kind == TokenKind::Identifier && !t.lexeme.empty() && t.lexeme[0] >= 'A' && t.lexeme[0] <= 'Z';
}

bool is_name(const Token& t) {
  return t.kind == TokenKind::Identifier && !is_alias(t);
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {
    if (toks_.empty() || toks_.back().kind != TokenKind::Eof) {
      throw std::invalid_argument("token stream must end with Eof");
    }
  }

  Program program() {
    Program prog;
    prog.items = items(/*in_module=*/false);
    expect_kind(TokenKind::Eof, "end of input");
    return prog;
  }

  SpecDecl spec_only() {
    SpecDecl s = spec();
    skip_separators();
    expect_kind(TokenKind::Eof, "end of input");
    return s;
  }

  Expr expression_only() {
    skip_separators();
    Expr e = block({});
    skip_separators();
    expect_kind(TokenKind::Eof, "end of input");
    return e;
  }

  Type type_only() {
    Type t = type();
    skip_separators();
    expect_kind(TokenKind::Eof, "end of input");
    return t;
  }

 private:
  std::span<const Token> toks_;
  std::size_t pos_ = 0;
  int nesting_ = 0;  // > 0 inside (), [], {}, %{}: line breaks are insignificant
  Span last_{};

  // -- token plumbing -------------------------------------------------------

  const Token& peek() {
    if (nesting_ > 0) {
      while (toks_[pos_].kind == TokenKind::Newline) ++pos_;
    }
    return toks_[pos_];
  }

  const Token& peek_at(std::size_t ahead) {
    peek();
    std::size_t i = pos_;
    while (ahead > 0 && i + 1 < toks_.size()) {
      ++i;
      if (nesting_ > 0) {
        while (i + 1 < toks_.size() && toks_[i].kind == TokenKind::Newline) ++i;
      }
      --ahead;
    }
    return toks_[i];
  }

  const Token& next() {
    const Token& t = peek();
    if (t.kind != TokenKind::Eof) ++pos_;
    last_ = t.span;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, const Span& span) {
    throw SyntaxError(msg, span, /*lexical=*/false);
  }

  [[noreturn]] void fail_expected(std::string_view what) {
    const Token& t = peek();
    fail(fmt::format("expected {}, found {}", what, describe(t)), t.span);
  }

  const Token& expect_kind(TokenKind kind, std::string_view what) {
    if (peek().kind != kind) fail_expected(what);
    return next();
  }

  const Token& expect_punct(std::string_view p) {
    if (!peek().is_punct(p)) fail_expected(fmt::format("'{}'", p));
    return next();
  }

  const Token& expect_op(std::string_view p) {
    if (!peek().is_op(p)) fail_expected(fmt::format("'{}'", p));
    return next();
  }

  const Token& expect_keyword(std::string_view k) {
    if (!peek().is_keyword(k)) fail_expected(fmt::format("'{}'", k));
    return next();
  }

  bool accept_punct(std::string_view p) {
    if (!peek().is_punct(p)) return false;
    next();
    return true;
  }

  void skip_newlines() {
    while (toks_[pos_].kind == TokenKind::Newline) ++pos_;
  }

  void skip_separators() {
    while (toks_[pos_].kind == TokenKind::Newline || toks_[pos_].is_punct(";")) ++pos_;
  }

  bool at_separator() {
    const Token& t = peek();
    return t.kind == TokenKind::Newline || t.is_punct(";");
  }

  Span from(const Span& start) const {
    return Span{start.begin, last_.end, start.line, start.col, last_.end_line, last_.end_col};
  }

  // Line breaks are significant again inside do-blocks and fn bodies, even
  // when those sit inside brackets.
  struct BlockScope {
    Parser& p;
    int saved;
    explicit BlockScope(Parser& parser) : p(parser), saved(parser.nesting_) { p.nesting_ = 0; }
    ~BlockScope() { p.nesting_ = saved; }
  };

  struct Nested {
    Parser& p;
    explicit Nested(Parser& parser) : p(parser) { ++p.nesting_; }
    ~Nested() { --p.nesting_; }
  };

  // -- items ----------------------------------------------------------------

  static Expr fold_sequence(std::vector<Expr> exprs) {
    Expr acc = std::move(exprs.back());
    for (std::size_t i = exprs.size() - 1; i-- > 0;) {
      Span span = Span::cover(exprs[i].span, acc.span);
      acc = Expr{SeqExpr{std::move(exprs[i]), std::move(acc)}, span};
    }
    return acc;
  }

  void expect_statement_end() {
    const Token& t = peek();
    if (t.kind == TokenKind::Newline || t.kind == TokenKind::Eof || t.is_punct(";") ||
        t.is_keyword("end") || t.is_keyword("else")) {
      return;
    }
    fail(fmt::format("unexpected {} after expression", describe(t)), t.span);
  }

  std::vector<Item> items(bool in_module) {
    std::vector<Item> out;
    std::vector<Expr> run;
    auto flush = [&] {
      if (!run.empty()) {
        out.push_back(Item{fold_sequence(std::move(run))});
        run.clear();
      }
    };
    while (true) {
      skip_separators();
      const Token& t = peek();
      if (t.kind == TokenKind::Eof) break;
      if (t.is_keyword("end")) {
        if (in_module) break;
        fail("unexpected 'end'", t.span);
      }
      if (t.is_keyword("defmodule")) {
        flush();
        out.push_back(Item{Box<Module>(module())});
      } else if (t.is_op("@")) {
        flush();
        out.push_back(Item{spec()});
      } else if (t.is_keyword("def")) {
        flush();
        out.push_back(Item{function_clause()});
      } else {
        run.push_back(expr());
      }
      expect_statement_end();
    }
    flush();
    return out;
  }

  Module module() {
    Span start = next().span;  // defmodule
    Module m;
    m.name.push_back(expect_alias());
    while (peek().is_op(".")) {
      next();
      m.name.push_back(expect_alias());
    }
    expect_keyword("do");
    {
      BlockScope scope(*this);
      m.body = items(/*in_module=*/true);
      expect_keyword("end");
    }
    m.span = from(start);
    return m;
  }

  std::string expect_alias() {
    if (!is_alias(peek())) fail_expected("module name");
    return next().lexeme;
  }

  std::string expect_name(std::string_view what) {
    if (!is_name(peek())) fail_expected(what);
    return next().lexeme;
  }

  SpecDecl spec() {
    Span start = expect_op("@").span;
    const Token& attr = peek();
    if (!attr.is(TokenKind::Identifier, "spec")) {
      fail("only @spec module attributes are supported", attr.span);
    }
    next();
    SpecDecl s;
    s.name = expect_name("function name");
    if (peek().is_punct("(")) {
      Nested n(*this);
      next();
      if (!peek().is_punct(")")) {
        s.params.push_back(type());
        while (accept_punct(",")) s.params.push_back(type());
      }
      expect_punct(")");
    }
    expect_op("::");
    s.result = type();
    s.span = from(start);
    return s;
  }

  FunctionClause function_clause() {
    Span start = next().span;  // def
    FunctionClause f{};
    f.name = expect_name("function name");
    if (peek().is_punct("(")) {
      Nested n(*this);
      next();
      if (!peek().is_punct(")")) {
        f.params.push_back(pattern());
        while (accept_punct(",")) f.params.push_back(pattern());
      }
      expect_punct(")");
    }
    if (peek().is_keyword("when")) fail("guards are not supported", peek().span);
    expect_keyword("do");
    {
      BlockScope scope(*this);
      f.body = block({"end"});
      expect_keyword("end");
    }
    f.span = from(start);
    return f;
  }

  // -- blocks ---------------------------------------------------------------

  bool at_stop(const std::vector<std::string_view>& stops) {
    const Token& t = peek();
    if (t.kind == TokenKind::Eof) return true;
    return std::any_of(stops.begin(), stops.end(), [&](std::string_view s) { return t.is_keyword(s); });
  }

  // Statements separated by newlines or `;`, up to one of `stops`.
  Expr block(const std::vector<std::string_view>& stops) {
    std::vector<Expr> exprs;
    skip_separators();
    while (!at_stop(stops)) {
      exprs.push_back(expr());
      expect_statement_end();
      skip_separators();
    }
    if (exprs.empty()) fail_expected("expression");
    return fold_sequence(std::move(exprs));
  }

  // Scans ahead for a `->` at bracket depth zero before the next statement
  // separator: the following statement opens a new case/cond clause.
  bool starts_clause() {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Eof) return false;
      if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{") || t.is_punct("%{") ||
          t.is_keyword("do") || t.is_keyword("fn")) {
        ++depth;
      } else if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}") || t.is_keyword("end")) {
        if (depth == 0) return false;
        --depth;
      } else if (depth == 0 && (t.kind == TokenKind::Newline || t.is_punct(";"))) {
        return false;
      } else if (depth == 0 && t.is_op("->")) {
        return true;
      }
    }
    return false;
  }

  Expr clause_body() {
    std::vector<Expr> exprs;
    skip_separators();
    while (!at_stop({"end"})) {
      exprs.push_back(expr());
      expect_statement_end();
      skip_separators();
      if (starts_clause()) break;
    }
    if (exprs.empty()) fail_expected("expression");
    return fold_sequence(std::move(exprs));
  }

  // -- expressions ----------------------------------------------------------

  bool may_start_pattern(const Token& t) {
    switch (t.kind) {
      case TokenKind::Identifier: return !is_alias(t);
      case TokenKind::Integer:
      case TokenKind::Float:
      case TokenKind::String:
      case TokenKind::Atom: return true;
      case TokenKind::Keyword: return t.lexeme == "true" || t.lexeme == "false" || t.lexeme == "nil";
      case TokenKind::Operator: return t.lexeme == "^" || t.lexeme == "-";
      case TokenKind::Punctuation: return t.lexeme == "{" || t.lexeme == "[" || t.lexeme == "%{";
      default: return false;
    }
  }

  // `p = e`, right-associative and loosest. The left side is read as a
  // pattern; if what follows is not `=`, it is re-read as an expression.
  Expr expr() {
    if (may_start_pattern(peek())) {
      std::size_t saved_pos = pos_;
      int saved_nesting = nesting_;
      Span saved_last = last_;
      std::optional<Pattern> lhs;
      try {
        lhs = pattern();
      } catch (const SyntaxError&) {
        lhs.reset();
      }
      if (lhs && peek().is_op("=")) {
        next();
        skip_newlines();
        Expr rhs = expr();
        Span span = Span::cover(lhs->span, rhs.span);
        return Expr{MatchExpr{std::move(*lhs), std::move(rhs)}, span};
      }
      pos_ = saved_pos;
      nesting_ = saved_nesting;
      last_ = saved_last;
    }
    Expr e = binary(1);
    if (peek().is_op("=")) fail("left side of '=' is not a valid pattern", e.span);
    return e;
  }

  Expr binary(int min_prec) {
    Expr lhs = unary();
    while (true) {
      const Token& t = peek();
      auto info = binary_op(t);
      if (!info || info->prec < min_prec) break;
      next();
      skip_newlines();
      Expr rhs = binary(info->right_assoc ? info->prec : info->prec + 1);
      Span span = Span::cover(lhs.span, rhs.span);
      lhs = Expr{BinaryExpr{info->op, std::move(lhs), std::move(rhs)}, span};
    }
    return lhs;
  }

  Expr unary() {
    const Token& t = peek();
    if (t.is_op("-") || t.is_keyword("not")) {
      Span start = next().span;
      UnaryOp op = t.is_op("-") ? UnaryOp::Neg : UnaryOp::Not;
      Expr operand = unary();
      Span span = Span::cover(start, operand.span);
      return Expr{UnaryExpr{op, std::move(operand)}, span};
    }
    return postfix();
  }

  Expr postfix() {
    Expr e = primary();
    while (peek().is_punct("[") && !peek().space_before) {
      next();
      Key key;
      {
        Nested n(*this);
        key = map_key();
        expect_punct("]");
      }
      Span span = from(e.span);
      e = Expr{MapAccessExpr{std::move(e), std::move(key)}, span};
    }
    return e;
  }

  std::vector<Expr> call_args() {
    Nested n(*this);
    expect_punct("(");
    std::vector<Expr> args;
    if (!peek().is_punct(")")) {
      args.push_back(expr());
      while (accept_punct(",")) args.push_back(expr());
    }
    expect_punct(")");
    return args;
  }

  Literal literal_of(const Token& t) {
    switch (t.kind) {
      case TokenKind::Integer: {
        std::int64_t v = 0;
        std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), v);
        return Literal{v};
      }
      case TokenKind::Float: {
        double v = 0;
        std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), v);
        return Literal{v};
      }
      case TokenKind::String: return Literal{Str{t.lexeme}};
      case TokenKind::Atom: return Literal{Atom{t.lexeme}};
      default:
        if (t.lexeme == "true") return Literal{true};
        if (t.lexeme == "false") return Literal{false};
        return Literal{Atom{"nil"}};
    }
  }

  static bool is_literal_token(const Token& t) {
    return t.kind == TokenKind::Integer || t.kind == TokenKind::Float || t.kind == TokenKind::String ||
           t.kind == TokenKind::Atom || t.is_keyword("true") || t.is_keyword("false") ||
           t.is_keyword("nil");
  }

  Expr primary() {
    const Token& t = peek();
    if (is_literal_token(t)) {
      next();
      return Expr{LiteralExpr{literal_of(t)}, t.span};
    }
    if (is_alias(t)) return remote_call();
    if (t.kind == TokenKind::Identifier) {
      next();
      if (peek().is_op(".") && peek_at(1).is_punct("(")) {
        next();
        auto args = call_args();
        return Expr{VarCallExpr{t.lexeme, std::move(args)}, from(t.span)};
      }
      if (peek().is_punct("(")) {
        auto args = call_args();
        return Expr{CallExpr{{}, t.lexeme, std::move(args)}, from(t.span)};
      }
      if (t.lexeme == "_") fail("'_' can only be used in patterns", t.span);
      return Expr{VarExpr{t.lexeme}, t.span};
    }
    if (t.is_punct("(")) return parenthesized();
    if (t.is_punct("{")) return tuple_expr();
    if (t.is_punct("[")) return list_expr();
    if (t.is_punct("%{")) return map_expr();
    if (t.is_keyword("if")) return if_expr();
    if (t.is_keyword("case")) return case_expr();
    if (t.is_keyword("cond")) return cond_expr();
    if (t.is_keyword("fn")) return fn_expr();
    if (t.is_op("^")) fail("pin operator '^' can only be used in patterns", t.span);
    fail_expected("expression");
  }

  Expr remote_call() {
    Span start = peek().span;
    std::vector<std::string> qualifier;
    qualifier.push_back(next().lexeme);
    while (true) {
      expect_op(".");
      if (is_alias(peek())) {
        qualifier.push_back(next().lexeme);
        continue;
      }
      std::string name = expect_name("function name");
      auto args = call_args();
      return Expr{CallExpr{std::move(qualifier), std::move(name), std::move(args)}, from(start)};
    }
  }

  Expr parenthesized() {
    Nested n(*this);
    Span start = next().span;
    std::vector<Expr> exprs;
    exprs.push_back(expr());
    while (accept_punct(";")) exprs.push_back(expr());
    expect_punct(")");
    Expr e = fold_sequence(std::move(exprs));
    e.span = from(start);
    return e;
  }

  Expr tuple_expr() {
    Nested n(*this);
    Span start = next().span;
    std::vector<Expr> elems;
    if (!peek().is_punct("}")) {
      elems.push_back(expr());
      while (accept_punct(",")) elems.push_back(expr());
    }
    expect_punct("}");
    return Expr{TupleExpr{std::move(elems)}, from(start)};
  }

  // `[]`, `[h | t]`, `[a, b]`, `[a, b | t]`; the comma forms desugar to
  // nested cons cells.
  Expr list_expr() {
    Nested n(*this);
    Span start = next().span;
    if (accept_punct("]")) return Expr{EmptyListExpr{}, from(start)};
    std::vector<Expr> heads;
    heads.push_back(expr());
    while (accept_punct(",")) heads.push_back(expr());
    std::optional<Expr> tail;
    if (peek().is_op("|")) {
      next();
      tail = expr();
    }
    const Span close = expect_punct("]").span;
    Expr acc = tail ? std::move(*tail) : Expr{EmptyListExpr{}, close};
    for (std::size_t i = heads.size(); i-- > 0;) {
      Span span = Span::cover(heads[i].span, close);
      if (i == 0) span = Span::cover(start, close);
      acc = Expr{ConsExpr{std::move(heads[i]), std::move(acc)}, span};
    }
    return acc;
  }

  Key map_key() {
    const Token& t = peek();
    if (t.kind == TokenKind::Atom) return Key::atom(next().lexeme);
    if (t.is_keyword("true") || t.is_keyword("false")) return Key::boolean(next().lexeme == "true");
    if (t.is_keyword("nil")) {
      next();
      return Key::atom("nil");
    }
    bool negative = false;
    if (t.is_op("-") && peek_at(1).kind == TokenKind::Integer) {
      next();
      negative = true;
    }
    if (peek().kind == TokenKind::Integer) {
      Literal lit = literal_of(next());
      auto v = std::get<std::int64_t>(lit.value);
      return Key::integer(negative ? -v : v);
    }
    fail("map keys must be atoms, booleans or integers", peek().span);
  }

  template <typename Entry, typename ParseValue>
  std::vector<Entry> map_entries(ParseValue parse_value) {
    std::vector<Entry> entries;
    std::set<Key> seen;
    if (peek().is_punct("}")) return entries;
    while (true) {
      Span key_span = peek().span;
      Key key = map_key();
      if (!seen.insert(key).second) fail("duplicate map key " + to_string(key), from(key_span));
      expect_op("=>");
      entries.push_back(Entry{std::move(key), parse_value()});
      if (!accept_punct(",")) break;
    }
    return entries;
  }

  Expr map_expr() {
    Nested n(*this);
    Span start = next().span;
    auto entries = map_entries<MapExprEntry>([this] { return expr(); });
    expect_punct("}");
    return Expr{MapExpr{std::move(entries)}, from(start)};
  }

  Expr if_expr() {
    Span start = next().span;  // if
    Expr cond = expr();
    expect_keyword("do");
    BlockScope scope(*this);
    Expr then_branch = block({"else", "end"});
    std::optional<Expr> else_branch;
    if (peek().is_keyword("else")) {
      next();
      else_branch = block({"end"});
    }
    expect_keyword("end");
    bool implicit = !else_branch.has_value();
    Expr otherwise = implicit ? Expr{LiteralExpr{Literal{Atom{"nil"}}}, start} : std::move(*else_branch);
    return Expr{IfExpr{std::move(cond), std::move(then_branch), std::move(otherwise), implicit}, from(start)};
  }

  Expr case_expr() {
    Span start = next().span;  // case
    Expr scrutinee = expr();
    expect_keyword("do");
    BlockScope scope(*this);
    std::vector<CaseClause> clauses;
    skip_separators();
    while (!peek().is_keyword("end")) {
      Pattern p = pattern();
      expect_op("->");
      Expr body = clause_body();
      clauses.push_back(CaseClause{std::move(p), std::move(body)});
    }
    if (clauses.empty()) fail_expected("case clause");
    expect_keyword("end");
    return Expr{CaseExpr{std::move(scrutinee), std::move(clauses)}, from(start)};
  }

  Expr cond_expr() {
    Span start = next().span;  // cond
    expect_keyword("do");
    BlockScope scope(*this);
    std::vector<CondClause> clauses;
    skip_separators();
    while (!peek().is_keyword("end")) {
      Expr c = expr();
      expect_op("->");
      Expr body = clause_body();
      clauses.push_back(CondClause{std::move(c), std::move(body)});
    }
    if (clauses.empty()) fail_expected("cond clause");
    expect_keyword("end");
    return Expr{CondExpr{std::move(clauses)}, from(start)};
  }

  Expr fn_expr() {
    Span start = next().span;  // fn
    std::vector<Pattern> params;
    if (peek().is_punct("(")) {
      Nested n(*this);
      next();
      if (!peek().is_punct(")")) {
        params.push_back(pattern());
        while (accept_punct(",")) params.push_back(pattern());
      }
      expect_punct(")");
    } else if (!peek().is_op("->")) {
      params.push_back(pattern());
      while (accept_punct(",")) params.push_back(pattern());
    }
    expect_op("->");
    BlockScope scope(*this);
    Expr body = block({"end"});
    expect_keyword("end");
    return Expr{FnExpr{std::move(params), std::move(body)}, from(start)};
  }

  // -- patterns -------------------------------------------------------------

  Pattern pattern() {
    const Token& t = peek();
    if (t.kind == TokenKind::Identifier && !is_alias(t)) {
      next();
      if (peek().is_punct("(") || (peek().is_op(".") && !is_alias(peek_at(1)))) {
        fail("function call in pattern", t.span);
      }
      if (t.lexeme[0] == '_') return Pattern{WildcardPattern{}, t.span};
      return Pattern{VarPattern{t.lexeme}, t.span};
    }
    if (is_literal_token(t)) {
      next();
      return Pattern{LiteralPattern{literal_of(t)}, t.span};
    }
    if (t.is_op("-")) {
      const Token& num = peek_at(1);
      if (num.kind != TokenKind::Integer && num.kind != TokenKind::Float) fail_expected("pattern");
      Span start = next().span;
      Literal lit = literal_of(next());
      if (auto* i = std::get_if<std::int64_t>(&lit.value)) *i = -*i;
      if (auto* d = std::get_if<double>(&lit.value)) *d = -*d;
      return Pattern{LiteralPattern{std::move(lit)}, from(start)};
    }
    if (t.is_op("^")) {
      Span start = next().span;
      std::string name = expect_name("variable after '^'");
      return Pattern{PinPattern{std::move(name)}, from(start)};
    }
    if (t.is_punct("{")) {
      Nested n(*this);
      Span start = next().span;
      std::vector<Pattern> elems;
      if (!peek().is_punct("}")) {
        elems.push_back(pattern());
        while (accept_punct(",")) elems.push_back(pattern());
      }
      expect_punct("}");
      return Pattern{TuplePattern{std::move(elems)}, from(start)};
    }
    if (t.is_punct("[")) {
      Nested n(*this);
      Span start = next().span;
      if (accept_punct("]")) return Pattern{EmptyListPattern{}, from(start)};
      std::vector<Pattern> heads;
      heads.push_back(pattern());
      while (accept_punct(",")) heads.push_back(pattern());
      std::optional<Pattern> tail;
      if (peek().is_op("|")) {
        next();
        tail = pattern();
      }
      const Span close = expect_punct("]").span;
      Pattern acc = tail ? std::move(*tail) : Pattern{EmptyListPattern{}, close};
      for (std::size_t i = heads.size(); i-- > 0;) {
        Span span = i == 0 ? Span::cover(start, close) : Span::cover(heads[i].span, close);
        acc = Pattern{ConsPattern{std::move(heads[i]), std::move(acc)}, span};
      }
      return acc;
    }
    if (t.is_punct("%{")) {
      Nested n(*this);
      Span start = next().span;
      auto entries = map_entries<MapPatternEntry>([this] { return pattern(); });
      expect_punct("}");
      return Pattern{MapPattern{std::move(entries)}, from(start)};
    }
    fail_expected("pattern");
  }

  // -- types ----------------------------------------------------------------

  Type type() {
    const Token& t = peek();
    if (t.kind == TokenKind::Identifier && !is_alias(t)) {
      next();
      std::optional<Type> base;
      const std::string& n = t.lexeme;
      if (n == "integer") base = Type::integer();
      else if (n == "float") base = Type::floating();
      else if (n == "boolean") base = Type::boolean();
      else if (n == "string") base = Type::string();
      else if (n == "atom") base = Type::atom();
      else if (n == "term") base = Type::term();
      else if (n == "any") base = Type::any();
      else if (n == "none") base = Type::none();
      if (!base) fail("unknown type '" + n + "'", t.span);
      if (peek().is_punct("(") && !peek().space_before && peek_at(1).is_punct(")")) {
        next();
        next();
      }
      return *base;
    }
    if (t.kind == TokenKind::Atom) {
      next();
      return Type::atom_literal(t.lexeme);
    }
    if (t.is_keyword("nil")) {
      next();
      return Type::atom_literal("nil");
    }
    if (t.is_punct("[")) {
      Nested n(*this);
      next();
      Type elem = type();
      expect_punct("]");
      return Type::list(std::move(elem));
    }
    if (t.is_punct("{")) {
      Nested n(*this);
      next();
      std::vector<Type> elems;
      if (!peek().is_punct("}")) {
        elems.push_back(type());
        while (accept_punct(",")) elems.push_back(type());
      }
      expect_punct("}");
      return Type::tuple(std::move(elems));
    }
    if (t.is_punct("%{")) {
      Nested n(*this);
      Span start = next().span;
      std::vector<MapField> fields;
      std::set<Key> seen;
      if (!peek().is_punct("}")) {
        while (true) {
          Span key_span = peek().span;
          Key key = map_key();
          if (!seen.insert(key).second) fail("duplicate map key " + to_string(key) + " in map type", from(key_span));
          expect_op("=>");
          fields.push_back(MapField{std::move(key), type()});
          if (!accept_punct(",")) break;
        }
      }
      expect_punct("}");
      (void)start;
      return Type::map(std::move(fields));
    }
    if (t.is_punct("(")) return function_type();
    fail_expected("type");
  }

  // `(t, ...) -> t`, also accepting the `(t, ... -> t)` spelling and plain
  // grouping `(t)`.
  Type function_type() {
    std::vector<Type> params;
    {
      Nested n(*this);
      next();
      if (!peek().is_punct(")")) {
        params.push_back(type());
        while (accept_punct(",")) params.push_back(type());
      }
      if (peek().is_op("->")) {
        next();
        Type result = type();
        expect_punct(")");
        return Type::function(std::move(params), std::move(result));
      }
      expect_punct(")");
    }
    if (peek().is_op("->")) {
      next();
      Type result = type();
      return Type::function(std::move(params), std::move(result));
    }
    if (params.size() == 1) return params.front();
    fail_expected("'->'");
  }
};

}  // namespace

Program parse_program(std::span<const Token> tokens) { return Parser(tokens).program(); }

SpecDecl parse_spec(std::span<const Token> tokens) { return Parser(tokens).spec_only(); }

Program parse_program_text(std::string_view source) {
  auto toks = tokenize(source);
  return parse_program(toks);
}

Expr parse_expression_text(std::string_view source) {
  auto toks = tokenize(source);
  return Parser(toks).expression_only();
}

Type parse_type_text(std::string_view source) {
  auto toks = tokenize(source);
  return Parser(toks).type_only();
}

ParseOutcome parse_file(const SourceFile& file) {
  ParseOutcome out;
  try {
    auto toks = tokenize(file.text());
    out.program = parse_program(toks);
  } catch (const SyntaxError& e) {
    out.error = Diagnostic{e.lexical() ? Code::Lex : Code::Parse, e.what(), file.name(), e.span(), {},
                           std::nullopt, std::nullopt};
  }
  return out;
}

}  // namespace gradex
