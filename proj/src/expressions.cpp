#include "gradex/expressions.hpp"

#include <fmt/format.h>

#include "gradex/patterns.hpp"
#include "gradex/type_relations.hpp"

namespace gradex {

namespace {

void collect_vars(const Pattern& p, VarEnv& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarPattern>) {
          out.try_emplace(n.name, Type::any());
        } else if constexpr (std::is_same_v<T, TuplePattern>) {
          for (const auto& e : n.elements) collect_vars(e, out);
        } else if constexpr (std::is_same_v<T, ConsPattern>) {
          collect_vars(*n.head, out);
          collect_vars(*n.tail, out);
        } else if constexpr (std::is_same_v<T, MapPattern>) {
          for (const auto& e : n.entries) collect_vars(e.value, out);
        }
      },
      p.node);
}

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul;
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Gt:
    case BinaryOp::Le:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::StrictEq:
    case BinaryOp::StrictNe: return true;
    default: return false;
  }
}

class Synthesizer {
 public:
  Synthesizer(const SignatureEnv& sigs, const ModulePrefix& prefix, DiagnosticSink& sink)
      : sigs_(sigs), prefix_(prefix), sink_(sink) {}

  SynthResult synth(const Expr& e, const VarEnv& env) {
    return std::visit([&](const auto& node) { return visit(node, e, env); }, e.node);
  }

 private:
  const SignatureEnv& sigs_;
  const ModulePrefix& prefix_;
  DiagnosticSink& sink_;

  // Reports unless `actual` is acceptable where `expected` is required.
  bool require(const Expr& at, const Type& actual, const Type& expected, std::string_view context) {
    if (fits(actual, expected)) return true;
    sink_.mismatch(Code::TypeMismatch, at.span,
                   fmt::format("{} expects {}, found {}", context, to_string(expected), to_string(actual)),
                   to_string(expected), to_string(actual));
    return false;
  }

  // Element type of something used as a list, or nullopt after reporting.
  std::optional<Type> list_element(const Expr& at, const Type& t, std::string_view context) {
    if (t.is(TypeKind::List)) return t.element();
    if (t.is_any()) return Type::any();
    if (t.is(TypeKind::None)) return Type::none();
    Type expected = Type::list(Type::term());
    sink_.mismatch(Code::TypeMismatch, at.span,
                   fmt::format("{} expects a list, found {}", context, to_string(t)), to_string(expected),
                   to_string(t));
    return std::nullopt;
  }

  // --- leaves ---------------------------------------------------------------

  SynthResult visit(const LiteralExpr& lit, const Expr&, const VarEnv& env) {
    return {literal_type(lit.value), env};
  }

  SynthResult visit(const VarExpr& var, const Expr& e, const VarEnv& env) {
    auto it = env.find(var.name);
    if (it != env.end()) return {it->second, env};
    sink_.report(Code::UnboundVar, e.span, fmt::format("undefined variable {}", var.name));
    return {Type::any(), env};
  }

  // --- data -----------------------------------------------------------------

  SynthResult visit(const TupleExpr& tup, const Expr&, const VarEnv& env) {
    std::vector<Type> elems;
    VarEnv out = env;
    for (const auto& el : tup.elements) {
      auto r = synth(el, env);
      elems.push_back(std::move(r.type));
      out = merge(out, r.env);
    }
    return {Type::tuple(std::move(elems)), std::move(out)};
  }

  SynthResult visit(const EmptyListExpr&, const Expr&, const VarEnv& env) {
    return {Type::list(Type::none()), env};
  }

  SynthResult visit(const ConsExpr& cons, const Expr&, const VarEnv& env) {
    auto head = synth(*cons.head, env);
    auto tail = synth(*cons.tail, env);
    VarEnv out = merge(head.env, tail.env);
    auto elem = list_element(*cons.tail, tail.type, "list tail");
    if (!elem) return {Type::any(), std::move(out)};
    return {Type::list(join(head.type, *elem)), std::move(out)};
  }

  SynthResult visit(const MapExpr& map, const Expr&, const VarEnv& env) {
    std::vector<MapField> fields;
    VarEnv out = env;
    for (const auto& entry : map.entries) {
      auto r = synth(entry.value, env);
      fields.push_back(MapField{entry.key, std::move(r.type)});
      out = merge(out, r.env);
    }
    return {Type::map(std::move(fields)), std::move(out)};
  }

  SynthResult visit(const MapAccessExpr& access, const Expr& e, const VarEnv& env) {
    auto target = synth(*access.target, env);
    const Type& t = target.type;
    if (t.is(TypeKind::Map)) {
      if (const Type* field = t.field(access.key)) return {*field, std::move(target.env)};
      sink_.mismatch(Code::UnknownKey, e.span,
                     fmt::format("key {} is not in map type {}", to_string(access.key), to_string(t)),
                     fmt::format("%{{{} => term}}", to_string(access.key)), to_string(t));
      return {Type::any(), std::move(target.env)};
    }
    if (t.is_any() || t.is(TypeKind::None)) return {t, std::move(target.env)};
    std::string expected = fmt::format("%{{{} => term}}", to_string(access.key));
    sink_.mismatch(Code::TypeMismatch, access.target->span,
                   fmt::format("map access expects a map, found {}", to_string(t)), expected, to_string(t));
    return {Type::any(), std::move(target.env)};
  }

  // --- operators ------------------------------------------------------------

  SynthResult visit(const UnaryExpr& un, const Expr&, const VarEnv& env) {
    auto r = synth(*un.operand, env);
    if (un.op == UnaryOp::Not) {
      bool ok = require(*un.operand, r.type, Type::boolean(), "'not'");
      return {ok ? Type::boolean() : Type::any(), std::move(r.env)};
    }
    if (!require(*un.operand, r.type, Type::floating(), "unary '-'")) return {Type::any(), std::move(r.env)};
    return {r.type.is_any() ? Type::floating() : r.type, std::move(r.env)};
  }

  SynthResult visit(const BinaryExpr& bin, const Expr&, const VarEnv& env) {
    auto lhs = synth(*bin.lhs, env);
    auto rhs = synth(*bin.rhs, env);
    VarEnv out = merge(lhs.env, rhs.env);
    std::string context = fmt::format("'{}'", spelling(bin.op));

    if (is_comparison(bin.op)) return {Type::boolean(), std::move(out)};

    auto both = [&](const Type& expected) {
      bool a = require(*bin.lhs, lhs.type, expected, context);
      bool b = require(*bin.rhs, rhs.type, expected, context);
      return a && b;
    };

    if (is_arithmetic(bin.op)) {
      if (!both(Type::floating())) return {Type::any(), std::move(out)};
      if (lhs.type.is_any() && rhs.type.is_any()) return {Type::floating(), std::move(out)};
      return {join(lhs.type, rhs.type), std::move(out)};
    }
    switch (bin.op) {
      case BinaryOp::Div:
        if (!both(Type::floating())) return {Type::any(), std::move(out)};
        return {Type::floating(), std::move(out)};
      case BinaryOp::And:
      case BinaryOp::Or:
        if (!both(Type::boolean())) return {Type::any(), std::move(out)};
        return {Type::boolean(), std::move(out)};
      case BinaryOp::Concat:
        if (!both(Type::string())) return {Type::any(), std::move(out)};
        return {Type::string(), std::move(out)};
      case BinaryOp::ListAppend:
      case BinaryOp::ListRemove: {
        auto a = list_element(*bin.lhs, lhs.type, context);
        auto b = list_element(*bin.rhs, rhs.type, context);
        if (!a || !b) return {Type::any(), std::move(out)};
        return {Type::list(join(*a, *b)), std::move(out)};
      }
      default: break;
    }
    return {Type::any(), std::move(out)};
  }

  // --- binding and sequencing -----------------------------------------------

  SynthResult visit(const MatchExpr& match, const Expr&, const VarEnv& env) {
    auto value = synth(*match.value, env);
    auto outcome = check_pattern(match.pattern, value.type, env, {}, PatternMode::Match);
    if (!outcome.ok()) {
      report(sink_, *outcome.error);
      return {Type::any(), merge(value.env, bind_as_any(match.pattern))};
    }
    return {value.type, merge(value.env, outcome.env)};
  }

  SynthResult visit(const SeqExpr& seq, const Expr&, const VarEnv& env) {
    auto first = synth(*seq.first, env);
    return synth(*seq.second, first.env);
  }

  SynthResult visit(const FnExpr& fn, const Expr&, const VarEnv& env) {
    std::vector<Type> params;
    VarEnv bindings;
    for (const auto& p : fn.params) {
      auto nat = natural_pattern_type(p, env, bindings);
      if (nat.error) {
        report(sink_, *nat.error);
        bindings = merge(bind_as_any(p), bindings);
      } else {
        bindings = std::move(nat.env);
      }
      params.push_back(std::move(nat.type));
    }
    auto body = synth(*fn.body, merge(env, bindings));
    return {Type::function(std::move(params), std::move(body.type)), env};
  }

  // --- control --------------------------------------------------------------

  SynthResult visit(const IfExpr& ife, const Expr&, const VarEnv& env) {
    auto cond = synth(*ife.condition, env);
    require(*ife.condition, cond.type, Type::boolean(), "'if' condition");
    auto then_r = synth(*ife.then_branch, cond.env);
    auto else_r = synth(*ife.else_branch, cond.env);
    return {join(then_r.type, else_r.type), std::move(cond.env)};
  }

  SynthResult visit(const CaseExpr& c, const Expr&, const VarEnv& env) {
    auto sel = synth(*c.scrutinee, env);
    std::optional<Type> result;
    for (const auto& clause : c.clauses) {
      VarEnv bindings = clause_bindings(clause.pattern, sel.type, sel.env);
      auto body = synth(clause.body, merge(sel.env, bindings));
      result = result ? join(*result, body.type) : body.type;
    }
    return {result.value_or(Type::none()), std::move(sel.env)};
  }

  VarEnv clause_bindings(const Pattern& p, const Type& selector, const VarEnv& sigma) {
    auto outcome = check_pattern(p, selector, sigma, {}, PatternMode::Case);
    if (outcome.ok()) return std::move(outcome.env);
    if (triggers_fallback(outcome.error->code)) {
      auto widened = case_fallback(p, sigma, {});
      if (widened.ok()) {
        sink_.mismatch(Code::UnreachablePattern, p.span,
                       fmt::format("this pattern never matches a value of type {}", to_string(selector)),
                       to_string(selector), outcome.error->actual.value_or(to_source(p)));
        return std::move(widened.env);
      }
      report(sink_, *widened.error);
    } else {
      report(sink_, *outcome.error);
    }
    return bind_as_any(p);
  }

  SynthResult visit(const CondExpr& c, const Expr&, const VarEnv& env) {
    std::optional<Type> result;
    for (const auto& clause : c.clauses) {
      auto cond = synth(clause.condition, env);
      require(clause.condition, cond.type, Type::boolean(), "'cond' condition");
      auto body = synth(clause.body, cond.env);
      result = result ? join(*result, body.type) : body.type;
    }
    return {result.value_or(Type::none()), env};
  }

  // --- calls ----------------------------------------------------------------

  std::pair<std::vector<Type>, VarEnv> synth_args(const std::vector<Expr>& args, const VarEnv& env) {
    std::vector<Type> types;
    VarEnv out = env;
    for (const auto& a : args) {
      auto r = synth(a, env);
      types.push_back(std::move(r.type));
      out = merge(out, r.env);
    }
    return {std::move(types), std::move(out)};
  }

  // Checks arguments against parameters; returns the result type or `any`.
  Type apply(const Type& fn, const std::vector<Expr>& args, const std::vector<Type>& arg_types,
             const std::string& callee) {
    bool ok = true;
    for (std::size_t i = 0; i < args.size(); ++i) {
      ok &= require(args[i], arg_types[i], fn.params()[i], fmt::format("argument {} of {}", i + 1, callee));
    }
    return ok ? fn.result() : Type::any();
  }

  SynthResult visit(const CallExpr& call, const Expr&, const VarEnv& env) {
    auto [types, out] = synth_args(call.args, env);
    std::string name = call.qualifier.empty() ? qualify(prefix_, call.name) : qualify(call.qualifier, call.name);
    const Signature* sig = sigs_.find(name, call.args.size());
    if (sig == nullptr) return {Type::any(), std::move(out)};
    std::string callee = fmt::format("{}/{}", name, call.args.size());
    return {apply(sig->type, call.args, types, callee), std::move(out)};
  }

  SynthResult visit(const VarCallExpr& call, const Expr& e, const VarEnv& env) {
    auto [types, out] = synth_args(call.args, env);
    auto it = env.find(call.var);
    if (it == env.end()) {
      sink_.report(Code::UnboundVar, e.span, fmt::format("undefined variable {}", call.var));
      return {Type::any(), std::move(out)};
    }
    const Type& t = it->second;
    if (t.is_any()) return {Type::any(), std::move(out)};
    if (!t.is(TypeKind::Function)) {
      sink_.mismatch(Code::NotFunction, e.span,
                     fmt::format("{} is not a function, it has type {}", call.var, to_string(t)),
                     to_string(Type::function(std::vector<Type>(call.args.size(), Type::none()), Type::term())),
                     to_string(t));
      return {Type::any(), std::move(out)};
    }
    if (t.arity() != call.args.size()) {
      sink_.mismatch(Code::Arity, e.span,
                     fmt::format("{} takes {} argument(s), called with {}", call.var, t.arity(), call.args.size()),
                     to_string(t), fmt::format("{} argument(s)", call.args.size()));
      return {Type::any(), std::move(out)};
    }
    return {apply(t, call.args, types, call.var), std::move(out)};
  }
};

}  // namespace

SynthResult synthesize(const Expr& e, const CheckContext& ctx, DiagnosticSink& sink) {
  return Synthesizer(ctx.sigs, ctx.prefix, sink).synth(e, ctx.vars);
}

const Expr& result_expr(const Expr& e) {
  const Expr* cur = &e;
  while (const auto* seq = std::get_if<SeqExpr>(&cur->node)) cur = &*seq->second;
  return *cur;
}

VarEnv bind_as_any(const Pattern& p) {
  VarEnv out;
  collect_vars(p, out);
  return out;
}

}  // namespace gradex
