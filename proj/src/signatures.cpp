#include "gradex/signatures.hpp"

#include <set>

#include <fmt/format.h>

namespace gradex {

namespace {

class Collector {
 public:
  Collection run(std::span<const ProgramUnit> units) {
    for (const auto& unit : units) {
      sink_.set_file(unit.file);
      ModulePrefix prefix;
      items(unit.program->items, prefix);
    }
    for (const auto& [key, sig] : out_.sigs.entries()) {
      if (defs_.contains(key)) continue;
      sink_.set_file(sig.file);
      sink_.report(Code::SpecNoDef, sig.span,
                   fmt::format("@spec for {}/{} has no matching def", key.name, key.arity));
    }
    out_.diagnostics = sink_.take();
    return std::move(out_);
  }

 private:
  Collection out_;
  DiagnosticSink sink_;
  std::set<SignatureKey> defs_;

  void items(const std::vector<Item>& body, ModulePrefix& prefix) {
    for (const auto& item : body) {
      if (const auto* m = std::get_if<Box<Module>>(&item.node)) {
        std::size_t depth = prefix.size();
        prefix.insert(prefix.end(), (*m)->name.begin(), (*m)->name.end());
        items((*m)->body, prefix);
        prefix.resize(depth);
      } else if (const auto* s = std::get_if<SpecDecl>(&item.node)) {
        Signature sig{Type::function(s->params, s->result), sink_.file(), s->span};
        add_signature(out_.sigs, prefix, s->name, std::move(sig), sink_);
      } else if (const auto* f = std::get_if<FunctionClause>(&item.node)) {
        defs_.insert(SignatureKey{qualify(prefix, f->name), f->params.size()});
      }
    }
  }
};

}  // namespace

Collection collect_signatures(std::span<const ProgramUnit> units) { return Collector().run(units); }

Collection collect_signatures(const Program& program, const std::string& file) {
  ProgramUnit unit{file, &program};
  return collect_signatures(std::span<const ProgramUnit>(&unit, 1));
}

}  // namespace gradex
