#include "gradex/environments.hpp"

#include <fmt/format.h>

namespace gradex {

VarEnv merge(const VarEnv& g1, const VarEnv& g2) {
  VarEnv out = g1;
  for (const auto& [name, type] : g2) out.insert_or_assign(name, type);
  return out;
}

std::string qualify(const ModulePrefix& prefix, const std::string& name) {
  std::string out;
  for (const auto& m : prefix) {
    out += m;
    out += '.';
  }
  return out + name;
}

const Signature* SignatureEnv::add(const ModulePrefix& prefix, const std::string& name, Signature sig) {
  SignatureKey key{qualify(prefix, name), sig.type.arity()};
  auto [it, inserted] = entries_.try_emplace(std::move(key), std::move(sig));
  return inserted ? nullptr : &it->second;
}

const Signature* SignatureEnv::find(const std::string& qualified, std::size_t arity) const {
  auto it = entries_.find(SignatureKey{qualified, arity});
  return it == entries_.end() ? nullptr : &it->second;
}

bool add_signature(SignatureEnv& env, const ModulePrefix& prefix, const std::string& name, Signature sig,
                   DiagnosticSink& sink) {
  Span span = sig.span;
  std::size_t arity = sig.type.arity();
  const Signature* first = env.add(prefix, name, std::move(sig));
  if (first == nullptr) return true;
  Diagnostic& d = sink.report(Code::DupSpec, span,
                              fmt::format("duplicate @spec for {}/{}", qualify(prefix, name), arity));
  d.notes.push_back(Note{first->file, first->span, "first @spec is here"});
  return false;
}

std::string format_signature(const SignatureKey& key, const Signature& sig) {
  return fmt::format("{}/{} :: {}", key.name, key.arity, to_string(sig.type));
}

}  // namespace gradex
