#include "gradex/ast.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace gradex {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Key-sorted view so map equality ignores written order.
template <typename Entry>
std::vector<const Entry*> by_key(const std::vector<Entry>& entries) {
  std::vector<const Entry*> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](const Entry* a, const Entry* b) { return a->key < b->key; });
  return out;
}

template <typename Entry>
bool same_entries(const std::vector<Entry>& a, const std::vector<Entry>& b) {
  if (a.size() != b.size()) return false;
  auto x = by_key(a);
  auto y = by_key(b);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i]->key == y[i]->key) || !(x[i]->value == y[i]->value)) return false;
  }
  return true;
}

}  // namespace

bool operator==(const MapPattern& a, const MapPattern& b) { return same_entries(a.entries, b.entries); }
bool operator==(const MapExpr& a, const MapExpr& b) { return same_entries(a.entries, b.entries); }

std::string_view spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::StrictEq: return "===";
    case BinaryOp::StrictNe: return "!==";
    case BinaryOp::Concat: return "<>";
    case BinaryOp::ListAppend: return "++";
    case BinaryOp::ListRemove: return "--";
  }
  return "?";
}

std::string_view spelling(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "not"; }

Span span_of(const Expr& e) { return e.span; }
Span span_of(const Pattern& p) { return p.span; }
Span span_of(const Module& m) { return m.span; }
Span span_of(const SpecDecl& s) { return s.span; }
Span span_of(const FunctionClause& f) { return f.span; }
Span span_of(const Item& item) {
  return std::visit(overloaded{[](const Box<Module>& m) { return m->span; },
                               [](const auto& other) { return other.span; }},
                    item.node);
}

// ---------------------------------------------------------------------------
// Source printing

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string print_block(const Expr& e);
std::string print_expr(const Expr& e);

std::string print_pattern(const Pattern& p) {
  return std::visit(
      overloaded{
          [](const WildcardPattern&) -> std::string { return "_"; },
          [](const LiteralPattern& l) { return to_source(l.value); },
          [](const VarPattern& v) { return v.name; },
          [](const PinPattern& v) { return "^" + v.name; },
          [](const TuplePattern& t) {
            std::vector<std::string> parts;
            for (const auto& e : t.elements) parts.push_back(print_pattern(e));
            return "{" + join(parts, ", ") + "}";
          },
          [](const EmptyListPattern&) -> std::string { return "[]"; },
          [](const ConsPattern& c) {
            return "[" + print_pattern(*c.head) + " | " + print_pattern(*c.tail) + "]";
          },
          [](const MapPattern& m) {
            std::vector<std::string> parts;
            for (const auto& e : m.entries) {
              parts.push_back(to_string(e.key) + " => " + print_pattern(e.value));
            }
            return "%{" + join(parts, ", ") + "}";
          },
      },
      p.node);
}

std::string print_args(const std::vector<Expr>& args) {
  std::vector<std::string> parts;
  for (const auto& a : args) parts.push_back(print_expr(a));
  return "(" + join(parts, ", ") + ")";
}

std::string print_expr(const Expr& e) {
  return std::visit(
      overloaded{
          [](const LiteralExpr& l) { return to_source(l.value); },
          [](const VarExpr& v) { return v.name; },
          [](const TupleExpr& t) {
            std::vector<std::string> parts;
            for (const auto& x : t.elements) parts.push_back(print_expr(x));
            return "{" + join(parts, ", ") + "}";
          },
          [](const EmptyListExpr&) -> std::string { return "[]"; },
          [](const ConsExpr& c) {
            return "[" + print_expr(*c.head) + " | " + print_expr(*c.tail) + "]";
          },
          [](const MapExpr& m) {
            std::vector<std::string> parts;
            for (const auto& x : m.entries) parts.push_back(to_string(x.key) + " => " + print_expr(x.value));
            return "%{" + join(parts, ", ") + "}";
          },
          [](const MapAccessExpr& a) { return print_expr(*a.target) + "[" + to_string(a.key) + "]"; },
          [](const BinaryExpr& b) {
            return fmt::format("({} {} {})", print_expr(*b.lhs), spelling(b.op), print_expr(*b.rhs));
          },
          [](const UnaryExpr& u) {
            return u.op == UnaryOp::Neg ? "(-" + print_expr(*u.operand) + ")"
                                        : "(not " + print_expr(*u.operand) + ")";
          },
          [](const IfExpr& i) {
            std::string out = "if " + print_expr(*i.condition) + " do " + print_block(*i.then_branch);
            if (!i.implicit_else) out += " else " + print_block(*i.else_branch);
            return out + " end";
          },
          [](const CaseExpr& c) {
            std::vector<std::string> parts;
            for (const auto& cl : c.clauses) {
              parts.push_back(print_pattern(cl.pattern) + " -> " + print_block(cl.body));
            }
            return "case " + print_expr(*c.scrutinee) + " do " + join(parts, "; ") + " end";
          },
          [](const CondExpr& c) {
            std::vector<std::string> parts;
            for (const auto& cl : c.clauses) {
              parts.push_back(print_expr(cl.condition) + " -> " + print_block(cl.body));
            }
            return "cond do " + join(parts, "; ") + " end";
          },
          [](const CallExpr& c) {
            std::string out;
            for (const auto& q : c.qualifier) out += q + ".";
            return out + c.name + print_args(c.args);
          },
          [](const VarCallExpr& c) { return c.var + "." + print_args(c.args); },
          [](const FnExpr& f) {
            std::vector<std::string> parts;
            for (const auto& p : f.params) parts.push_back(print_pattern(p));
            return "fn (" + join(parts, ", ") + ") -> " + print_block(*f.body) + " end";
          },
          [](const MatchExpr& m) {
            return "(" + print_pattern(m.pattern) + " = " + print_expr(*m.value) + ")";
          },
          [](const SeqExpr& s) { return "(" + print_expr(*s.first) + "; " + print_block(*s.second) + ")"; },
      },
      e.node);
}

// Statement position: a sequence prints flat. Sequences parse
// right-nested, so only the right spine is flattened.
std::string print_block(const Expr& e) {
  if (const auto* s = std::get_if<SeqExpr>(&e.node)) {
    return print_expr(*s->first) + "; " + print_block(*s->second);
  }
  return print_expr(e);
}

void print_items(const std::vector<Item>& items, int indent, std::string& out);

void print_item(const Item& item, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::visit(overloaded{
                 [&](const Box<Module>& m) {
                   out += pad + "defmodule " + join(m->name, ".") + " do\n";
                   print_items(m->body, indent + 1, out);
                   out += pad + "end\n";
                 },
                 [&](const SpecDecl& s) {
                   std::vector<std::string> parts;
                   for (const auto& t : s.params) parts.push_back(to_string(t));
                   out += pad + "@spec " + s.name + "(" + join(parts, ", ") + ") :: " + to_string(s.result) + "\n";
                 },
                 [&](const FunctionClause& f) {
                   std::vector<std::string> parts;
                   for (const auto& p : f.params) parts.push_back(print_pattern(p));
                   out += pad + "def " + f.name + "(" + join(parts, ", ") + ") do " + print_block(f.body) + " end\n";
                 },
                 [&](const Expr& e) { out += pad + print_block(e) + "\n"; },
             },
             item.node);
}

void print_items(const std::vector<Item>& items, int indent, std::string& out) {
  for (const auto& item : items) print_item(item, indent, out);
}

}  // namespace

std::string to_source(const Program& program) {
  std::string out;
  print_items(program.items, 0, out);
  return out;
}

std::string to_source(const Expr& expr) { return print_block(expr); }
std::string to_source(const Pattern& pattern) { return print_pattern(pattern); }

// ---------------------------------------------------------------------------
// S-expression dump

namespace {

class Dumper {
 public:
  std::string out;

  void items(const std::vector<Item>& xs) {
    for (const auto& x : xs) item(x);
  }

 private:
  int depth_ = 0;

  void open(std::string_view head, const Span& span) {
    out += std::string(static_cast<std::size_t>(depth_) * 2, ' ');
    out += fmt::format("({} @{}:{}-{}:{}", head, span.line, span.col, span.end_line, span.end_col);
    ++depth_;
  }
  void close() {
    --depth_;
    if (!out.empty() && out.back() == '\n') out += std::string(static_cast<std::size_t>(depth_) * 2, ' ');
    out += ")";
  }
  void nl() { out += "\n"; }

  void item(const Item& it) {
    std::visit(overloaded{
                   [&](const Box<Module>& m) {
                     open("module " + join(m->name, "."), m->span);
                     nl();
                     items(m->body);
                     close();
                     nl();
                   },
                   [&](const SpecDecl& s) {
                     std::vector<std::string> parts;
                     for (const auto& t : s.params) parts.push_back(to_string(t));
                     open(fmt::format("spec {} ({}) -> {}", s.name, join(parts, ", "), to_string(s.result)),
                          s.span);
                     close();
                     nl();
                   },
                   [&](const FunctionClause& f) {
                     open(fmt::format("def {}/{}", f.name, f.params.size()), f.span);
                     nl();
                     for (const auto& p : f.params) pattern(p);
                     expr(f.body);
                     close();
                     nl();
                   },
                   [&](const Expr& e) { expr(e); },
               },
               it.node);
  }

  void pattern(const Pattern& p) {
    std::visit(overloaded{
                   [&](const WildcardPattern&) { open("pwild", p.span); },
                   [&](const LiteralPattern& l) { open("plit " + to_source(l.value), p.span); },
                   [&](const VarPattern& v) { open("pvar " + v.name, p.span); },
                   [&](const PinPattern& v) { open("ppin " + v.name, p.span); },
                   [&](const TuplePattern& t) {
                     open("ptuple", p.span);
                     nl();
                     for (const auto& e : t.elements) pattern(e);
                   },
                   [&](const EmptyListPattern&) { open("pnil", p.span); },
                   [&](const ConsPattern& c) {
                     open("pcons", p.span);
                     nl();
                     pattern(*c.head);
                     pattern(*c.tail);
                   },
                   [&](const MapPattern& m) {
                     open("pmap", p.span);
                     nl();
                     for (const auto& e : m.entries) {
                       out += std::string(static_cast<std::size_t>(depth_) * 2, ' ') + "key " + to_string(e.key) + "\n";
                       pattern(e.value);
                     }
                   },
               },
               p.node);
    close();
    nl();
  }

  void expr(const Expr& e) {
    std::visit(overloaded{
                   [&](const LiteralExpr& l) { open("lit " + to_source(l.value), e.span); },
                   [&](const VarExpr& v) { open("var " + v.name, e.span); },
                   [&](const TupleExpr& t) {
                     open("tuple", e.span);
                     nl();
                     for (const auto& x : t.elements) expr(x);
                   },
                   [&](const EmptyListExpr&) { open("nil", e.span); },
                   [&](const ConsExpr& c) {
                     open("cons", e.span);
                     nl();
                     expr(*c.head);
                     expr(*c.tail);
                   },
                   [&](const MapExpr& m) {
                     open("map", e.span);
                     nl();
                     for (const auto& x : m.entries) {
                       out += std::string(static_cast<std::size_t>(depth_) * 2, ' ') + "key " + to_string(x.key) + "\n";
                       expr(x.value);
                     }
                   },
                   [&](const MapAccessExpr& a) {
                     open("access " + to_string(a.key), e.span);
                     nl();
                     expr(*a.target);
                   },
                   [&](const BinaryExpr& b) {
                     open(std::string(spelling(b.op)), e.span);
                     nl();
                     expr(*b.lhs);
                     expr(*b.rhs);
                   },
                   [&](const UnaryExpr& u) {
                     open(u.op == UnaryOp::Neg ? "neg" : "not", e.span);
                     nl();
                     expr(*u.operand);
                   },
                   [&](const IfExpr& i) {
                     open(i.implicit_else ? "if-no-else" : "if", e.span);
                     nl();
                     expr(*i.condition);
                     expr(*i.then_branch);
                     expr(*i.else_branch);
                   },
                   [&](const CaseExpr& c) {
                     open("case", e.span);
                     nl();
                     expr(*c.scrutinee);
                     for (const auto& cl : c.clauses) {
                       pattern(cl.pattern);
                       expr(cl.body);
                     }
                   },
                   [&](const CondExpr& c) {
                     open("cond", e.span);
                     nl();
                     for (const auto& cl : c.clauses) {
                       expr(cl.condition);
                       expr(cl.body);
                     }
                   },
                   [&](const CallExpr& c) {
                     std::string name;
                     for (const auto& q : c.qualifier) name += q + ".";
                     open("call " + name + c.name, e.span);
                     nl();
                     for (const auto& a : c.args) expr(a);
                   },
                   [&](const VarCallExpr& c) {
                     open("varcall " + c.var, e.span);
                     nl();
                     for (const auto& a : c.args) expr(a);
                   },
                   [&](const FnExpr& f) {
                     open("fn", e.span);
                     nl();
                     for (const auto& p : f.params) pattern(p);
                     expr(*f.body);
                   },
                   [&](const MatchExpr& m) {
                     open("match", e.span);
                     nl();
                     pattern(m.pattern);
                     expr(*m.value);
                   },
                   [&](const SeqExpr& s) {
                     open("seq", e.span);
                     nl();
                     expr(*s.first);
                     expr(*s.second);
                   },
               },
               e.node);
    close();
    nl();
  }
};

}  // namespace

std::string dump(const Program& program) {
  Dumper d;
  d.items(program.items);
  return d.out;
}

}  // namespace gradex
