#include "gradex/checker.hpp"

#include <fmt/format.h>

#include "gradex/expressions.hpp"
#include "gradex/patterns.hpp"
#include "gradex/type_relations.hpp"

namespace gradex {

namespace {

void check_items(const std::vector<Item>& items, const SignatureEnv& sigs, ModulePrefix& prefix,
                 DiagnosticSink& sink) {
  for (const auto& item : items) {
    if (const auto* m = std::get_if<Box<Module>>(&item.node)) {
      std::size_t depth = prefix.size();
      prefix.insert(prefix.end(), (*m)->name.begin(), (*m)->name.end());
      check_items((*m)->body, sigs, prefix, sink);
      prefix.resize(depth);
    } else if (const auto* f = std::get_if<FunctionClause>(&item.node)) {
      check_function_clause(*f, sigs, prefix, sink);
    } else if (const auto* e = std::get_if<Expr>(&item.node)) {
      synthesize(*e, CheckContext{sigs, prefix, {}}, sink);
    }
  }
}

}  // namespace

void check_function_clause(const FunctionClause& clause, const SignatureEnv& sigs, const ModulePrefix& prefix,
                           DiagnosticSink& sink) {
  std::string name = qualify(prefix, clause.name);
  const Signature* sig = sigs.find(name, clause.params.size());
  if (sig == nullptr) {
    sink.report(Code::UntypedDef, clause.span,
                fmt::format("{}/{} has no @spec; its body is not checked", name, clause.params.size()));
    return;
  }
  const Type& fn = sig->type;
  VarEnv gamma;
  for (std::size_t i = 0; i < clause.params.size(); ++i) {
    const Pattern& p = clause.params[i];
    auto outcome = check_pattern(p, fn.params()[i], {}, gamma, PatternMode::Spec);
    if (outcome.ok()) {
      gamma = std::move(outcome.env);
      continue;
    }
    report(sink, *outcome.error);
    gamma = merge(bind_as_any(p), gamma);
  }
  auto body = synthesize(clause.body, CheckContext{sigs, prefix, gamma}, sink);
  if (!fits(body.type, fn.result())) {
    sink.mismatch(Code::SpecBodyMismatch, result_expr(clause.body).span,
                  fmt::format("{}/{} returns {} but its @spec declares {}", name, clause.params.size(),
                              to_string(body.type), to_string(fn.result())),
                  to_string(fn.result()), to_string(body.type));
  }
}

CheckResult check_program(std::span<const ProgramUnit> units) {
  Collection collected = collect_signatures(units);
  std::vector<Diagnostic> diags = std::move(collected.diagnostics);
  for (const auto& unit : units) {
    DiagnosticSink sink(unit.file);
    ModulePrefix prefix;
    check_items(unit.program->items, collected.sigs, prefix, sink);
    auto found = sink.take();
    diags.insert(diags.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
  }
  sort_diagnostics(diags);
  return CheckResult{std::move(collected.sigs), std::move(diags)};
}

CheckResult check_program(const Program& program, const std::string& file) {
  ProgramUnit unit{file, &program};
  return check_program(std::span<const ProgramUnit>(&unit, 1));
}

}  // namespace gradex
