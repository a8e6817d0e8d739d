#pragma once

// Abstract syntax of the analyzable Elixir fragment.
//
// Every node records the source span it was parsed from. Equality on nodes is
// structural and ignores spans, so a parsed tree can be compared against a
// re-parse of its printed form.

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gradex/literal.hpp"
#include "gradex/span.hpp"
#include "gradex/types.hpp"

namespace gradex {

/// Owning pointer with value semantics: copies deep-copy the pointee and
/// equality compares pointees.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(implicit)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// Patterns

struct Pattern;

struct WildcardPattern {
  friend bool operator==(const WildcardPattern&, const WildcardPattern&) = default;
};
struct LiteralPattern {
  Literal value;
  friend bool operator==(const LiteralPattern&, const LiteralPattern&) = default;
};
struct VarPattern {
  std::string name;
  friend bool operator==(const VarPattern&, const VarPattern&) = default;
};
struct PinPattern {
  std::string name;
  friend bool operator==(const PinPattern&, const PinPattern&) = default;
};
struct TuplePattern {
  std::vector<Pattern> elements;
  friend bool operator==(const TuplePattern&, const TuplePattern&) = default;
};
struct EmptyListPattern {
  friend bool operator==(const EmptyListPattern&, const EmptyListPattern&) = default;
};
struct ConsPattern {
  Box<Pattern> head;
  Box<Pattern> tail;
  friend bool operator==(const ConsPattern&, const ConsPattern&) = default;
};
struct MapPatternEntry;
struct MapPattern {
  std::vector<MapPatternEntry> entries;  // source order; keys distinct
  friend bool operator==(const MapPattern& a, const MapPattern& b);
};

struct Pattern {
  using Node = std::variant<WildcardPattern, LiteralPattern, VarPattern, PinPattern, TuplePattern,
                            EmptyListPattern, ConsPattern, MapPattern>;
  Node node;
  Span span;

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.node == b.node; }
};

struct MapPatternEntry {
  Key key;
  Pattern value;
};

// ---------------------------------------------------------------------------
// Expressions

enum class BinaryOp {
  Add, Sub, Mul, Div,
  And, Or,
  Lt, Gt, Le, Ge, Eq, Ne, StrictEq, StrictNe,
  Concat, ListAppend, ListRemove,
};

enum class UnaryOp { Neg, Not };

std::string_view spelling(BinaryOp op);
std::string_view spelling(UnaryOp op);

struct Expr;

struct LiteralExpr {
  Literal value;
  friend bool operator==(const LiteralExpr&, const LiteralExpr&) = default;
};
struct VarExpr {
  std::string name;
  friend bool operator==(const VarExpr&, const VarExpr&) = default;
};
struct TupleExpr {
  std::vector<Expr> elements;
  friend bool operator==(const TupleExpr&, const TupleExpr&) = default;
};
struct EmptyListExpr {
  friend bool operator==(const EmptyListExpr&, const EmptyListExpr&) = default;
};
struct ConsExpr {
  Box<Expr> head;
  Box<Expr> tail;
  friend bool operator==(const ConsExpr&, const ConsExpr&) = default;
};
struct MapExprEntry;
struct MapExpr {
  std::vector<MapExprEntry> entries;  // source order; keys distinct
  friend bool operator==(const MapExpr& a, const MapExpr& b);
};
struct MapAccessExpr {
  Box<Expr> target;
  Key key;
  friend bool operator==(const MapAccessExpr&, const MapAccessExpr&) = default;
};
struct BinaryExpr {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const BinaryExpr&, const BinaryExpr&) = default;
};
struct UnaryExpr {
  UnaryOp op;
  Box<Expr> operand;
  friend bool operator==(const UnaryExpr&, const UnaryExpr&) = default;
};
/// `if c do a else b end`. An `if` written without `else` gets a synthetic
/// `:nil` else branch spanning the `if` keyword.
struct IfExpr {
  Box<Expr> condition;
  Box<Expr> then_branch;
  Box<Expr> else_branch;
  bool implicit_else = false;
  friend bool operator==(const IfExpr&, const IfExpr&) = default;
};
struct CaseClause;
struct CaseExpr {
  Box<Expr> scrutinee;
  std::vector<CaseClause> clauses;
  friend bool operator==(const CaseExpr&, const CaseExpr&) = default;
};
struct CondClause;
struct CondExpr {
  std::vector<CondClause> clauses;
  friend bool operator==(const CondExpr&, const CondExpr&) = default;
};
/// `A.B.f(args)`; `qualifier` is empty for local calls.
struct CallExpr {
  std::vector<std::string> qualifier;
  std::string name;
  std::vector<Expr> args;
  friend bool operator==(const CallExpr&, const CallExpr&) = default;
};
/// `x.(args)`
struct VarCallExpr {
  std::string var;
  std::vector<Expr> args;
  friend bool operator==(const VarCallExpr&, const VarCallExpr&) = default;
};
struct FnExpr {
  std::vector<Pattern> params;
  Box<Expr> body;
  friend bool operator==(const FnExpr&, const FnExpr&) = default;
};
struct MatchExpr {
  Pattern pattern;
  Box<Expr> value;
  friend bool operator==(const MatchExpr&, const MatchExpr&) = default;
};
struct SeqExpr {
  Box<Expr> first;
  Box<Expr> second;
  friend bool operator==(const SeqExpr&, const SeqExpr&) = default;
};

struct Expr {
  using Node = std::variant<LiteralExpr, VarExpr, TupleExpr, EmptyListExpr, ConsExpr, MapExpr,
                            MapAccessExpr, BinaryExpr, UnaryExpr, IfExpr, CaseExpr, CondExpr,
                            CallExpr, VarCallExpr, FnExpr, MatchExpr, SeqExpr>;
  Node node;
  Span span;

  friend bool operator==(const Expr& a, const Expr& b) { return a.node == b.node; }
};

struct MapExprEntry {
  Key key;
  Expr value;
};

struct CaseClause {
  Pattern pattern;
  Expr body;
  friend bool operator==(const CaseClause&, const CaseClause&) = default;
};

struct CondClause {
  Expr condition;
  Expr body;
  friend bool operator==(const CondClause&, const CondClause&) = default;
};

// ---------------------------------------------------------------------------
// Declarations

/// `@spec name(t1, ..., tn) :: t`
struct SpecDecl {
  std::string name;
  std::vector<Type> params;
  Type result;
  Span span;

  friend bool operator==(const SpecDecl& a, const SpecDecl& b) {
    return a.name == b.name && a.params == b.params && a.result == b.result;
  }
};

/// `def name(p1, ..., pn) do body end`
struct FunctionClause {
  std::string name;
  std::vector<Pattern> params;
  Expr body;
  Span span;

  friend bool operator==(const FunctionClause& a, const FunctionClause& b) {
    return a.name == b.name && a.params == b.params && a.body == b.body;
  }
};

struct Module;

/// One element of a module body or of a program. Consecutive expression
/// statements are grouped into a single sequence expression.
struct Item {
  std::variant<Box<Module>, SpecDecl, FunctionClause, Expr> node;
  friend bool operator==(const Item&, const Item&) = default;
};

struct Module {
  std::vector<std::string> name;  // `A.B` is written as one defmodule
  std::vector<Item> body;
  Span span;

  friend bool operator==(const Module& a, const Module& b) {
    return a.name == b.name && a.body == b.body;
  }
};

struct Program {
  std::vector<Item> items;
  friend bool operator==(const Program&, const Program&) = default;
};

Span span_of(const Expr& e);
Span span_of(const Pattern& p);
Span span_of(const Item& item);
Span span_of(const Module& m);
Span span_of(const SpecDecl& s);
Span span_of(const FunctionClause& f);

/// Prints parseable source. Operators are fully parenthesized; parsing the
/// output yields a structurally equal tree.
std::string to_source(const Program& program);
std::string to_source(const Expr& expr);
std::string to_source(const Pattern& pattern);

/// Indented s-expression dump with spans, used by `gradex parse`.
std::string dump(const Program& program);

}  // namespace gradex
