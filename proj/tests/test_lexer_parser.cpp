#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "gradex/lexer.hpp"
#include "gradex/parser.hpp"
#include "support.hpp"

using namespace gradex;
using testing::T;

namespace {

std::vector<std::string> lexemes(std::string_view src) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(src)) {
    if (t.kind != TokenKind::Eof) out.push_back(t.lexeme);
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(GRADEX_CORPUS_DIR)) {
    if (e.path().extension() == ".ex") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Calls `f(parent_span, child_span)` for every parent/child node pair.
struct SpanWalker {
  std::function<void(const Span&, const Span&)> f;

  void pattern(const Pattern& p) {
    auto child = [&](const Pattern& c) {
      f(p.span, c.span);
      pattern(c);
    };
    std::visit(overloaded{
                   [&](const TuplePattern& t) { for (const auto& e : t.elements) child(e); },
                   [&](const ConsPattern& c) {
                     child(*c.head);
                     child(*c.tail);
                   },
                   [&](const MapPattern& m) { for (const auto& e : m.entries) child(e.value); },
                   [](const auto&) {},
               },
               p.node);
  }

  void expr(const Expr& e) {
    auto child = [&](const Expr& c) {
      f(e.span, c.span);
      expr(c);
    };
    auto pat = [&](const Pattern& p) {
      f(e.span, p.span);
      pattern(p);
    };
    std::visit(overloaded{
                   [&](const TupleExpr& t) { for (const auto& x : t.elements) child(x); },
                   [&](const ConsExpr& c) {
                     child(*c.head);
                     child(*c.tail);
                   },
                   [&](const MapExpr& m) { for (const auto& x : m.entries) child(x.value); },
                   [&](const MapAccessExpr& a) { child(*a.target); },
                   [&](const BinaryExpr& b) {
                     child(*b.lhs);
                     child(*b.rhs);
                   },
                   [&](const UnaryExpr& u) { child(*u.operand); },
                   [&](const IfExpr& i) {
                     child(*i.condition);
                     child(*i.then_branch);
                     child(*i.else_branch);
                   },
                   [&](const CaseExpr& c) {
                     child(*c.scrutinee);
                     for (const auto& cl : c.clauses) {
                       pat(cl.pattern);
                       child(cl.body);
                     }
                   },
                   [&](const CondExpr& c) {
                     for (const auto& cl : c.clauses) {
                       child(cl.condition);
                       child(cl.body);
                     }
                   },
                   [&](const CallExpr& c) { for (const auto& a : c.args) child(a); },
                   [&](const VarCallExpr& c) { for (const auto& a : c.args) child(a); },
                   [&](const FnExpr& fn) {
                     for (const auto& p : fn.params) pat(p);
                     child(*fn.body);
                   },
                   [&](const MatchExpr& m) {
                     pat(m.pattern);
                     child(*m.value);
                   },
                   [&](const SeqExpr& s) {
                     child(*s.first);
                     child(*s.second);
                   },
                   [](const auto&) {},
               },
               e.node);
  }

  void items(const std::vector<Item>& items, const Span* parent) {
    for (const auto& item : items) {
      Span s = span_of(item);
      if (parent != nullptr) f(*parent, s);
      std::visit(overloaded{
                     [&](const Box<Module>& m) { this->items(m->body, &m->span); },
                     [&](const FunctionClause& fc) {
                       for (const auto& p : fc.params) {
                         f(fc.span, p.span);
                         pattern(p);
                       }
                       f(fc.span, fc.body.span);
                       expr(fc.body);
                     },
                     [&](const Expr& e) { expr(e); },
                     [](const SpecDecl&) {},
                 },
                 item.node);
    }
  }
};

// Random well-formed expressions for round-trip testing.
class Generator {
 public:
  explicit Generator(unsigned seed) : rng_(seed) {}

  Expr expr(int depth) {
    int pick = depth <= 0 ? roll(3) : roll(19);
    switch (pick) {
      case 0: return mk(LiteralExpr{literal()});
      case 1: return mk(VarExpr{name()});
      case 2: return mk(EmptyListExpr{});
      case 3: return mk(TupleExpr{exprs(depth, 3)});
      case 4: return mk(ConsExpr{expr(depth - 1), expr(depth - 1)});
      case 5: {
        std::vector<MapExprEntry> entries;
        for (const auto& k : keys()) entries.push_back(MapExprEntry{k, expr(depth - 1)});
        return mk(MapExpr{std::move(entries)});
      }
      case 6: return mk(MapAccessExpr{expr(depth - 1), keys().empty() ? Key::atom("k") : key()});
      case 7:
      case 8: return mk(BinaryExpr{static_cast<BinaryOp>(roll(17)), expr(depth - 1), expr(depth - 1)});
      case 9: return mk(UnaryExpr{roll(2) == 0 ? UnaryOp::Neg : UnaryOp::Not, expr(depth - 1)});
      case 10: {
        bool implicit = roll(3) == 0;
        Expr otherwise = implicit ? mk(LiteralExpr{Literal{Atom{"nil"}}}) : expr(depth - 1);
        return mk(IfExpr{expr(depth - 1), block(depth), std::move(otherwise), implicit});
      }
      case 11: {
        std::vector<CaseClause> clauses;
        for (int i = 0, n = 1 + roll(3); i < n; ++i) clauses.push_back(CaseClause{pattern(2), block(depth)});
        return mk(CaseExpr{expr(depth - 1), std::move(clauses)});
      }
      case 12: {
        std::vector<CondClause> clauses;
        for (int i = 0, n = 1 + roll(3); i < n; ++i) clauses.push_back(CondClause{expr(depth - 1), block(depth)});
        return mk(CondExpr{std::move(clauses)});
      }
      case 13: {
        std::vector<std::string> q;
        if (roll(2) == 0) q = {"Base", "Math"};
        return mk(CallExpr{std::move(q), "f", exprs(depth, 3)});
      }
      case 14: return mk(VarCallExpr{name(), exprs(depth, 2)});
      case 15: {
        std::vector<Pattern> params;
        for (int i = 0, n = roll(3); i < n; ++i) params.push_back(pattern(2));
        return mk(FnExpr{std::move(params), block(depth)});
      }
      case 16:
      case 17: return mk(MatchExpr{pattern(2), expr(depth - 1)});
      default: return mk(SeqExpr{expr(depth - 1), block(depth)});
    }
  }

  Pattern pattern(int depth) {
    auto mkp = [](auto node) { return Pattern{std::move(node), Span{}}; };
    switch (depth <= 0 ? roll(4) : roll(8)) {
      case 0: return mkp(WildcardPattern{});
      case 1: return mkp(LiteralPattern{literal()});
      case 2: return mkp(VarPattern{name()});
      case 3: return mkp(PinPattern{name()});
      case 4: {
        std::vector<Pattern> elems;
        for (int i = 0, n = roll(3); i < n; ++i) elems.push_back(pattern(depth - 1));
        return mkp(TuplePattern{std::move(elems)});
      }
      case 5: return mkp(EmptyListPattern{});
      case 6: return mkp(ConsPattern{pattern(depth - 1), pattern(depth - 1)});
      default: {
        std::vector<MapPatternEntry> entries;
        for (const auto& k : keys()) entries.push_back(MapPatternEntry{k, pattern(depth - 1)});
        return mkp(MapPattern{std::move(entries)});
      }
    }
  }

 private:
  std::mt19937 rng_;

  int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  static Expr mk(Expr::Node node) { return Expr{std::move(node), Span{}}; }

  Expr block(int depth) { return expr(depth - 1); }

  std::vector<Expr> exprs(int depth, int max) {
    std::vector<Expr> out;
    for (int i = 0, n = roll(max + 1); i < n; ++i) out.push_back(expr(depth - 1));
    return out;
  }

  std::string name() { return std::vector<std::string>{"x", "y", "zs"}[static_cast<std::size_t>(roll(3))]; }

  Key key() {
    switch (roll(3)) {
      case 0: return Key::atom("k");
      case 1: return Key::boolean(true);
      default: return Key::integer(roll(2) == 0 ? 9 : -2);
    }
  }

  std::vector<Key> keys() {
    std::vector<Key> all = {Key::atom("k"), Key::boolean(true), Key::integer(9)};
    std::vector<Key> out;
    for (const auto& k : all) {
      if (roll(2) == 0) out.push_back(k);
    }
    return out;
  }

  Literal literal() {
    switch (roll(6)) {
      case 0: return Literal{std::int64_t{roll(100)}};
      case 1: return Literal{0.5 * roll(9)};
      case 2: return Literal{Str{roll(2) == 0 ? "hi" : "a \"q\"\n"}};
      case 3: return Literal{roll(2) == 0};
      case 4: return Literal{Atom{"nil"}};
      default: return Literal{Atom{"ok"}};
    }
  }
};

}  // namespace

TEST_CASE("tokenize") {
  auto toks = tokenize(":ok");
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].kind == TokenKind::Atom);
  CHECK(toks[0].lexeme == "ok");

  CHECK(lexemes("a===b") == std::vector<std::string>{"a", "===", "b"});
  CHECK(lexemes("1.5+x") == std::vector<std::string>{"1.5", "+", "x"});
  CHECK(tokenize("1.5+x")[0].kind == TokenKind::Float);
  CHECK(lexemes("a<>b++c--d::e=>f->g<=h>=i!=j!==k") ==
        std::vector<std::string>{"a", "<>", "b", "++", "c", "--", "d", "::", "e", "=>", "f", "->", "g",
                                 "<=", "h", ">=", "i", "!=", "j", "!==", "k"});
  CHECK(lexemes("x # comment\ny") == std::vector<std::string>{"x", "\n", "y"});
  CHECK(lexemes("\"a\\\"b\"")[0] == "a\"b");
  CHECK(tokenize("1.")[0].kind == TokenKind::Integer);
}

TEST_CASE("tokenize reports lexical errors with spans") {
  auto lex_error = [](std::string_view src) -> std::optional<Span> {
    try {
      tokenize(src);
    } catch (const SyntaxError& e) {
      CHECK(e.lexical());
      return e.span();
    }
    return std::nullopt;
  };
  auto s = lex_error("x = \"open");
  REQUIRE(s);
  CHECK(s->col == 5);
  CHECK(lex_error("x $ y")->col == 3);
  CHECK(lex_error("\"bad \\q\""));
  CHECK(lex_error("99999999999999999999"));
  CHECK(lex_error("x ! y"));
}

TEST_CASE("spans are recorded for tokens and nodes") {
  auto toks = tokenize("hello");
  CHECK(toks[0].span == Span{0, 5, 1, 1, 1, 6});
  Program p = parse_program_text("x + 1\n  foo(2)");
  Span s = span_of(p.items.at(0));
  CHECK(s.begin == 0);
  CHECK(s.end_line == 2);
}

TEST_CASE("parse_program") {
  Expr e = parse_expression_text("x = 10 * 9\nx + 10");
  Expr expected = parse_expression_text("(x = (10 * 9)); (x + 10)");
  CHECK(e == expected);
  REQUIRE(std::holds_alternative<SeqExpr>(e.node));
  CHECK(std::holds_alternative<MatchExpr>(std::get<SeqExpr>(e.node).first->node));

  CHECK(parse_expression_text("1 + 2 * 3") == parse_expression_text("1 + (2 * 3)"));
  CHECK(parse_expression_text("a - b - c") == parse_expression_text("(a - b) - c"));
  CHECK(parse_expression_text("a ++ b ++ c") == parse_expression_text("a ++ (b ++ c)"));
  CHECK(parse_expression_text("a or b and c") == parse_expression_text("a or (b and c)"));
  CHECK(parse_expression_text("not a == b") == parse_expression_text("(not a) == b"));
  CHECK(parse_expression_text("-x * 2") == parse_expression_text("(-x) * 2"));
  CHECK(parse_expression_text("a < b <> c") == parse_expression_text("a < (b <> c)"));
  CHECK(parse_expression_text("x = y = 3") == parse_expression_text("x = (y = 3)"));
  CHECK(parse_expression_text("[1, 2 | t]") == parse_expression_text("[1 | [2 | t]]"));
  CHECK(parse_expression_text("[1, 2]") == parse_expression_text("[1 | [2 | []]]"));
  CHECK(parse_expression_text("m[:a][1]") == parse_expression_text("(m[:a])[1]"));

  Program nested = parse_program_text(
      "defmodule Base do\n  defmodule Math do\n    def dec(x) do x - 1 end\n  end\nend\n");
  REQUIRE(nested.items.size() == 1);
  const auto& base = std::get<Box<Module>>(nested.items[0].node);
  CHECK(base->name == std::vector<std::string>{"Base"});
  REQUIRE(base->body.size() == 1);
  CHECK(std::get<Box<Module>>(base->body[0].node)->name == std::vector<std::string>{"Math"});
}

TEST_CASE("statements are grouped between declarations") {
  Program p = parse_program_text("a = 1\nb = 2\n@spec f() :: integer\ndef f() do 1 end\nc\n");
  REQUIRE(p.items.size() == 4);
  CHECK(std::holds_alternative<Expr>(p.items[0].node));
  CHECK(std::holds_alternative<SeqExpr>(std::get<Expr>(p.items[0].node).node));
  CHECK(std::holds_alternative<SpecDecl>(p.items[1].node));
  CHECK(std::holds_alternative<FunctionClause>(p.items[2].node));
}

TEST_CASE("line breaks inside brackets, after operators and between clauses") {
  CHECK(parse_expression_text("{1,\n 2}") == parse_expression_text("{1, 2}"));
  CHECK(parse_expression_text("1 +\n 2") == parse_expression_text("1 + 2"));
  CHECK(parse_expression_text("f(\n1,\n2\n)") == parse_expression_text("f(1, 2)"));
  Expr c = parse_expression_text("case x do\n  1 ->\n    a = 2\n    a\n  _ -> 3\nend");
  const auto& cs = std::get<CaseExpr>(c.node);
  REQUIRE(cs.clauses.size() == 2);
  CHECK(std::holds_alternative<SeqExpr>(cs.clauses[0].body.node));
  Expr inner = parse_expression_text("{fn (x) ->\n y = x\n y\n end}");
  CHECK(std::holds_alternative<TupleExpr>(inner.node));
}

TEST_CASE("parse_spec") {
  auto spec = [](std::string_view src) { return parse_spec(tokenize(src)); };
  SpecDecl s = spec("@spec func(integer) :: float");
  CHECK(s.name == "func");
  CHECK(s.params == std::vector<Type>{Type::integer()});
  CHECK(s.result == Type::floating());
  CHECK(spec("@spec length([any]) :: integer").params == std::vector<Type>{Type::list(Type::any())});
  CHECK(spec("@spec f((integer) -> integer) :: integer").params ==
        std::vector<Type>{Type::function({Type::integer()}, Type::integer())});
  CHECK(spec("@spec f((integer -> integer)) :: integer").params == spec("@spec f((integer) -> integer) :: integer").params);
  CHECK(spec("@spec f() :: %{:a => {integer(), :ok}, 1 => [term]}").result ==
        T("%{1 => [term], :a => {integer, :ok}}"));
  CHECK(T("(integer) -> (float) -> atom") == Type::function({Type::integer()}, T("(float) -> atom")));
  CHECK(T("((integer) -> float)") == T("(integer) -> float"));
  CHECK_THROWS_AS(spec("@spec f(%{:a => integer, :a => float}) :: integer"), SyntaxError);
  CHECK_THROWS_AS(spec("@spec f(number) :: integer"), SyntaxError);
}

TEST_CASE("syntax errors") {
  auto fails = [](std::string_view src) {
    try {
      parse_program_text(src);
    } catch (const SyntaxError& e) {
      return !e.lexical();
    }
    return false;
  };
  CHECK(fails("1 + "));
  CHECK(fails("x + 1 = 3"));
  CHECK(fails("f(x) = 3"));
  CHECK(fails("if x do 1"));
  CHECK(fails("m[x]"));
  CHECK(fails("%{:a => 1, :a => 2}"));
  CHECK(fails("case x do end"));
  CHECK(fails("@doc f() :: integer"));
  CHECK(fails("def f(x) when x do 1 end"));
  CHECK(fails("x y"));
  CHECK(fails("_ + 1"));

  SourceFile file("bad.ex", "x = (1 +\n");
  ParseOutcome out = parse_file(file);
  REQUIRE(out.error);
  CHECK(out.error->code == Code::Parse);
  CHECK(out.error->file == "bad.ex");
  CHECK(parse_file(SourceFile("lex.ex", "x = $")).error->code == Code::Lex);
}

TEST_CASE("patterns") {
  Expr e = parse_expression_text("{^x, _y, [h | t], %{:a => 1}, -2} = v");
  const auto& m = std::get<MatchExpr>(e.node);
  const auto& tup = std::get<TuplePattern>(m.pattern.node);
  REQUIRE(tup.elements.size() == 5);
  CHECK(std::holds_alternative<PinPattern>(tup.elements[0].node));
  CHECK(std::holds_alternative<WildcardPattern>(tup.elements[1].node));
  CHECK(std::holds_alternative<ConsPattern>(tup.elements[2].node));
  CHECK(std::holds_alternative<MapPattern>(tup.elements[3].node));
  CHECK(std::get<LiteralPattern>(tup.elements[4].node).value == Literal{std::int64_t{-2}});
  CHECK(std::get<LiteralPattern>(std::get<MatchExpr>(parse_expression_text("nil = x").node).pattern.node).value ==
        Literal{Atom{"nil"}});
  CHECK(std::get<LiteralPattern>(std::get<MatchExpr>(parse_expression_text("true = x").node).pattern.node).value ==
        Literal{true});
}

TEST_CASE("else-less if gets a synthetic nil branch at the if keyword") {
  Expr e = parse_expression_text("  if c do 1 end");
  const auto& i = std::get<IfExpr>(e.node);
  CHECK(i.implicit_else);
  CHECK(*i.else_branch == Expr{LiteralExpr{Literal{Atom{"nil"}}}, {}});
  CHECK(i.else_branch->span == Span{2, 4, 1, 3, 1, 5});
}

TEST_CASE("corpus files parse, spans nest and index the source") {
  auto files = corpus_files();
  REQUIRE(files.size() >= 30);
  for (const auto& path : files) {
    CAPTURE(path.filename().string());
    std::string text = read_file(path);
    Program p = parse_program_text(text);
    std::size_t bad = 0;
    SpanWalker walker{[&](const Span& parent, const Span& child) {
      bad += !parent.contains(child) || child.end > text.size() || child.begin > child.end;
    }};
    walker.items(p.items, nullptr);
    CHECK(bad == 0);
  }
}

TEST_CASE("printing and re-parsing yields the same tree") {
  for (const auto& path : corpus_files()) {
    CAPTURE(path.filename().string());
    Program p = parse_program_text(read_file(path));
    std::string printed = to_source(p);
    CHECK(parse_program_text(printed) == p);
    CHECK(to_source(parse_program_text(printed)) == printed);
  }
  Generator gen(20261018);
  int failures = 0;
  for (int i = 0; i < 3000; ++i) {
    Expr e = gen.expr(4);
    std::string src = to_source(e);
    try {
      Expr back = parse_expression_text(src);
      if (!(back == e)) {
        if (++failures <= 3) MESSAGE("mismatch: " << src << "\n   got: " << to_source(back));
      }
    } catch (const SyntaxError& err) {
      if (++failures <= 3) MESSAGE("parse failure: " << err.what() << " in " << src);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("parsed spans nest for generated programs") {
  Generator gen(7);
  for (int i = 0; i < 500; ++i) {
    std::string src = to_source(gen.expr(4));
    Expr e = parse_expression_text(src);
    std::size_t bad = 0;
    SpanWalker walker{[&](const Span& parent, const Span& child) { bad += !parent.contains(child); }};
    walker.expr(e);
    CHECK(bad == 0);
    CHECK(e.span.end <= src.size());
  }
}
