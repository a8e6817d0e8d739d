#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradex/diagnostics.hpp"
#include "gradex/span.hpp"
#include "gradex/types.hpp"

namespace gradex {

/// Variable environment: variable name to type.
using VarEnv = std::map<std::string, Type>;

/// Union of both environments; on a shared name the binding from `g2` wins.
VarEnv merge(const VarEnv& g1, const VarEnv& g2);

/// Enclosing module names, outermost first. Empty at top level.
using ModulePrefix = std::vector<std::string>;

/// `A.B.f` for prefix {A, B} and name f; plain `f` for the empty prefix.
std::string qualify(const ModulePrefix& prefix, const std::string& name);

struct SignatureKey {
  std::string name;  // qualified
  std::size_t arity = 0;
  friend auto operator<=>(const SignatureKey&, const SignatureKey&) = default;
};

struct Signature {
  Type type;  // always a function type
  std::string file;
  Span span;  // of the @spec
};

/// Function signatures gathered from `@spec` declarations.
class SignatureEnv {
 public:
  /// Adds the signature unless the key is taken. On a duplicate the first
  /// entry is kept and a pointer to it is returned.
  const Signature* add(const ModulePrefix& prefix, const std::string& name, Signature sig);

  [[nodiscard]] const Signature* find(const std::string& qualified, std::size_t arity) const;
  [[nodiscard]] const Signature* find(const ModulePrefix& prefix, const std::string& name,
                                      std::size_t arity) const {
    return find(qualify(prefix, name), arity);
  }

  [[nodiscard]] const std::map<SignatureKey, Signature>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

 private:
  std::map<SignatureKey, Signature> entries_;
};

/// Adds a spec signature, reporting E_DUP_SPEC into `sink` on a duplicate.
/// Returns false if the entry already existed.
bool add_signature(SignatureEnv& env, const ModulePrefix& prefix, const std::string& name, Signature sig,
                   DiagnosticSink& sink);

/// `Qualified.name/arity :: (t, ...) -> t`
std::string format_signature(const SignatureKey& key, const Signature& sig);

}  // namespace gradex
