#include "gradex/patterns.hpp"

#include <fmt/format.h>

#include "gradex/type_relations.hpp"

namespace gradex {

namespace {

struct Failure {
  PatternError error;
};

// Structured patterns see through these expected types: each sub-pattern is
// checked against the same type and variables bind it.
bool transparent(const Type& expected, PatternMode mode) {
  switch (expected.kind()) {
    case TypeKind::Any: return true;
    case TypeKind::Term: return mode == PatternMode::Case;
    case TypeKind::None: return mode == PatternMode::Match;
    default: return false;
  }
}

bool compatible(const Type& pattern_type, const Type& expected, PatternMode mode) {
  switch (mode) {
    case PatternMode::Match: return fits(expected, pattern_type);
    case PatternMode::Case: return fits(pattern_type, expected);
    case PatternMode::Spec: return is_more_precise(pattern_type, expected);
  }
  return false;
}

std::string_view shape_name(const Pattern::Node& node) {
  return std::visit(
      [](const auto& n) -> std::string_view {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TuplePattern>) return "tuple";
        else if constexpr (std::is_same_v<T, EmptyListPattern>) return "empty list";
        else if constexpr (std::is_same_v<T, ConsPattern>) return "list";
        else if constexpr (std::is_same_v<T, MapPattern>) return "map";
        else return "pattern";
      },
      node);
}

class Checker {
 public:
  Checker(const VarEnv& sigma, VarEnv gamma, PatternMode mode)
      : sigma_(sigma), gamma_(std::move(gamma)), mode_(mode) {}

  VarEnv run(const Pattern& p, const Type& expected) {
    check(p, expected);
    return std::move(gamma_);
  }

 private:
  const VarEnv& sigma_;
  VarEnv gamma_;
  PatternMode mode_;

  [[noreturn]] void shape_error(const Pattern& p, const Type& expected, std::optional<std::string> actual) {
    Code code = mode_ == PatternMode::Spec ? Code::SpecParamMismatch : Code::PatternType;
    std::string what = actual ? fmt::format("pattern of type {}", *actual)
                              : fmt::format("{} pattern", shape_name(p.node));
    throw Failure{{code, p.span, fmt::format("{} cannot match a value of type {}", what, to_string(expected)),
                   to_string(expected), std::move(actual)}};
  }

  void check(const Pattern& p, const Type& expected) {
    std::visit([&](const auto& node) { visit(node, p, expected); }, p.node);
  }

  void visit(const WildcardPattern&, const Pattern&, const Type&) {}

  void visit(const LiteralPattern& lit, const Pattern& p, const Type& expected) {
    Type t = literal_type(lit.value);
    if (!compatible(t, expected, mode_)) shape_error(p, expected, to_string(t));
  }

  void visit(const VarPattern& var, const Pattern& p, const Type& expected) {
    auto it = gamma_.find(var.name);
    if (it == gamma_.end()) {
      gamma_.emplace(var.name, expected);
      return;
    }
    if (it->second != expected) {
      throw Failure{{Code::NonlinearMismatch, p.span,
                     fmt::format("variable {} is already bound to {} in this pattern", var.name,
                                 to_string(it->second)),
                     to_string(it->second), to_string(expected)}};
    }
  }

  void visit(const PinPattern& pin, const Pattern& p, const Type& expected) {
    auto it = sigma_.find(pin.name);
    if (it == sigma_.end()) {
      throw Failure{{Code::PinUnbound, p.span, fmt::format("pinned variable {} is not bound", pin.name),
                     std::nullopt, std::nullopt}};
    }
    bool ok = mode_ == PatternMode::Match ? fits(expected, it->second) : fits(it->second, expected);
    if (!ok) shape_error(p, expected, to_string(it->second));
  }

  void visit(const TuplePattern& tup, const Pattern& p, const Type& expected) {
    if (transparent(expected, mode_)) {
      for (const auto& e : tup.elements) check(e, expected);
      return;
    }
    if (!expected.is(TypeKind::Tuple) || expected.elements().size() != tup.elements.size()) {
      shape_error(p, expected, std::nullopt);
    }
    for (std::size_t i = 0; i < tup.elements.size(); ++i) check(tup.elements[i], expected.elements()[i]);
  }

  void visit(const EmptyListPattern&, const Pattern& p, const Type& expected) {
    if (transparent(expected, mode_) || expected.is(TypeKind::List)) return;
    shape_error(p, expected, std::nullopt);
  }

  void visit(const ConsPattern& cons, const Pattern& p, const Type& expected) {
    if (transparent(expected, mode_)) {
      check(*cons.head, expected);
      check(*cons.tail, expected);
      return;
    }
    if (!expected.is(TypeKind::List)) shape_error(p, expected, std::nullopt);
    check(*cons.head, expected.element());
    check(*cons.tail, expected);
  }

  void visit(const MapPattern& map, const Pattern& p, const Type& expected) {
    if (transparent(expected, mode_)) {
      for (const auto& entry : map.entries) check(entry.value, expected);
      return;
    }
    if (!expected.is(TypeKind::Map)) shape_error(p, expected, std::nullopt);
    for (const auto& entry : map.entries) {
      const Type* field = expected.field(entry.key);
      if (field == nullptr) {
        Code code = mode_ == PatternMode::Spec ? Code::SpecParamMismatch : Code::UnknownKey;
        throw Failure{{code, entry.value.span,
                       fmt::format("key {} is not in map type {}", to_string(entry.key), to_string(expected)),
                       to_string(expected), std::nullopt}};
      }
      check(entry.value, *field);
    }
  }
};

class Natural {
 public:
  Natural(const VarEnv& sigma, VarEnv gamma) : sigma_(sigma), gamma_(std::move(gamma)) {}

  Type type_of(const Pattern& p) {
    return std::visit([&](const auto& node) { return visit(node, p); }, p.node);
  }

  VarEnv take_env() { return std::move(gamma_); }

 private:
  const VarEnv& sigma_;
  VarEnv gamma_;

  Type visit(const WildcardPattern&, const Pattern&) { return Type::any(); }
  Type visit(const LiteralPattern& lit, const Pattern&) { return literal_type(lit.value); }
  Type visit(const VarPattern& var, const Pattern&) {
    auto [it, inserted] = gamma_.try_emplace(var.name, Type::any());
    return it->second;
  }
  Type visit(const PinPattern& pin, const Pattern& p) {
    auto it = sigma_.find(pin.name);
    if (it == sigma_.end()) {
      throw Failure{{Code::PinUnbound, p.span, fmt::format("pinned variable {} is not bound", pin.name),
                     std::nullopt, std::nullopt}};
    }
    return it->second;
  }
  Type visit(const TuplePattern& tup, const Pattern&) {
    std::vector<Type> elems;
    for (const auto& e : tup.elements) elems.push_back(type_of(e));
    return Type::tuple(std::move(elems));
  }
  Type visit(const EmptyListPattern&, const Pattern&) { return Type::list(Type::any()); }
  Type visit(const ConsPattern& cons, const Pattern&) {
    Type head = type_of(*cons.head);
    Type tail = type_of(*cons.tail);
    if (tail.is(TypeKind::List)) return Type::list(join(head, tail.element()));
    return Type::list(head);
  }
  Type visit(const MapPattern& map, const Pattern&) {
    std::vector<MapField> fields;
    for (const auto& entry : map.entries) fields.push_back(MapField{entry.key, type_of(entry.value)});
    return Type::map(std::move(fields));
  }
};

}  // namespace

PatternOutcome check_pattern(const Pattern& p, const Type& expected, const VarEnv& sigma, const VarEnv& gamma,
                             PatternMode mode) {
  try {
    return PatternOutcome{Checker(sigma, gamma, mode).run(p, expected), std::nullopt};
  } catch (Failure& f) {
    return PatternOutcome{gamma, std::move(f.error)};
  }
}

bool triggers_fallback(Code code) { return code == Code::PatternType || code == Code::UnknownKey; }

PatternOutcome case_fallback(const Pattern& p, const VarEnv& sigma, const VarEnv& gamma) {
  return check_pattern(p, Type::term(), sigma, gamma, PatternMode::Case);
}

NaturalPattern natural_pattern_type(const Pattern& p, const VarEnv& sigma, const VarEnv& gamma) {
  Natural natural(sigma, gamma);
  try {
    Type t = natural.type_of(p);
    return NaturalPattern{std::move(t), natural.take_env(), std::nullopt};
  } catch (Failure& f) {
    return NaturalPattern{Type::any(), gamma, std::move(f.error)};
  }
}

void report(DiagnosticSink& sink, const PatternError& error) {
  Diagnostic& d = sink.report(error.code, error.span, error.message);
  d.expected = error.expected;
  d.actual = error.actual;
}

}  // namespace gradex
